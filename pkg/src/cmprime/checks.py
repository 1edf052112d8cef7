"""Named verification suites behind the check-theorems CLI command.

Each check returns CheckOutcome rather than raising, so the CLI can print
one machine-readable PASS/FAIL line per check and exit nonzero if any
failed.  The same functions back the acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import islice

from . import hverify
from .ecring import RingCurve, RingPoint, double, is_on_curve
from .oracles import FieldCurve, MRResult, affine_group_law, miller_rabin
from .sequence import (S_SET, SETS, composed_s_from_tables,
                       fk_mod_stream, fk_sequence, in_set,
                       predicted_small_divisors)
from .sieve import primes_up_to

_LEMMA_PRIMES = (3, 5, 7, 11, 31, 61)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


def check_sequence_tables() -> CheckOutcome:
    """Set identity S = (lift(T1) & T2) - T3 and table cardinalities."""
    sizes = {name: len(rcs.residues) for name, rcs in SETS.items()}
    identity = composed_s_from_tables() == S_SET.residues
    ok = identity and sizes == {"S": 21, "T1": 26, "T2": 64, "T3": 7}
    return CheckOutcome("set-identity", ok,
                        f"identity={identity}, sizes={sizes}")


def check_recurrence_closed_form(k_max: int = 2000) -> CheckOutcome:
    """Recurrence equals Lucas closed form up to k_max; F_9 pin; F_9 prime.

    fk_sequence verifies the two forms against each other at every step
    (it raises on disagreement), so consuming it is the check.
    """
    values = list(fk_sequence(k_max))
    f9 = values[9].F
    mr = miller_rabin(f9)
    ok = (len(values) == k_max + 1 and f9 == 4191181
          and mr is MRResult.PROBABLE_PRIME)
    return CheckOutcome(
        "recurrence-closed-form", ok,
        f"agreement to k={k_max}; F_9={f9} ({mr.value})")


def check_divisibility_sweep(k_max: int = 5000) -> CheckOutcome:
    """Periodic divisibility, mod-8 and mod-5 behavior, T3 compositeness,
    monotonicity, and exact-vs-streamed residue agreement up to k_max."""
    streams = {p: fk_mod_stream(k_max, p) for p in _LEMMA_PRIMES}
    prev_f = None
    bad = []
    for v in fk_sequence(k_max):
        k, F = v.k, v.F
        divisors = set()
        for p, stream in streams.items():
            sk, residue = next(stream)
            if sk != k or residue != F % p:
                bad.append(f"stream mismatch at k={k}, p={p}")
            if residue == 0:
                divisors.add(p)
        if k >= 1:
            if F % 8 != 5:
                bad.append(f"F_{k} != 5 mod 8")
            if k % 4 != 2 and F % 5 not in (1, 4):
                bad.append(f"F_{k} != +-1 mod 5 with k != 2 mod 4")
            if divisors != predicted_small_divisors(k):
                bad.append(f"divisor set at k={k}: {divisors}")
            if in_set(k, "T3") and not divisors:
                bad.append(f"k={k} in T3 but no small divisor")
            if prev_f is not None and F <= prev_f:
                bad.append(f"F_{k} not increasing")
        prev_f = F
        if len(bad) > 4:
            break
    return CheckOutcome("divisibility-sweep", not bad,
                        f"k <= {k_max}: " + ("; ".join(bad) if bad else "all hold"))


def _random_field_sample(rng: random.Random, primes: list):
    """Random (prime, curve, affine point) with the point on the curve."""
    while True:
        p = primes[rng.randrange(len(primes))]
        a4 = rng.randrange(p)
        x = rng.randrange(p)
        y = rng.randrange(p)
        a6 = (y * y - x * x * x - a4 * x) % p
        if (4 * a4 * a4 * a4 + 27 * a6 * a6) % p == 0:
            continue
        return p, a4, a6, x, y


def check_field_agreement(prime_samples: int = 1000,
                          composite_samples: int = 200,
                          seed: int = 20240915) -> CheckOutcome:
    """Projective doubling vs the affine oracle on random prime fields,
    plus on-curve closure (including composite moduli)."""
    rng = random.Random(seed)
    primes = [p for p in islice(primes_up_to(1 << 20), 100000)]
    primes = [p for p in primes if p > 3]
    bad = []
    for i in range(prime_samples):
        p, a4, a6, x, y = _random_field_sample(rng, primes)
        curve = RingCurve(p, a4, a6)
        P = RingPoint(curve.modulus.reduce(x), curve.modulus.reduce(y),
                      curve.modulus.reduce(1))
        D = double(P, curve)
        if not is_on_curve(D, curve):
            bad.append(f"closure fails: sample {i}")
            break
        oracle = affine_group_law((x, y), (x, y), FieldCurve(p, a4, a6))
        if oracle is None:
            if D.Z % p != 0:
                bad.append(f"oracle says O, double says not: sample {i}")
                break
        else:
            ox, oy = oracle
            if (D.X - ox * D.Z) % p != 0 or (D.Y - oy * D.Z) % p != 0:
                bad.append(f"double != affine oracle: sample {i}")
                break
    for i in range(composite_samples):
        n = (rng.randrange(3, 1 << 10) | 1) * (rng.randrange(3, 1 << 10) | 1)
        a4 = rng.randrange(n)
        x = rng.randrange(n)
        y = rng.randrange(n)
        a6 = (y * y - x * x * x - a4 * x) % n
        curve = RingCurve(n, a4, a6)
        P = RingPoint(curve.modulus.reduce(x), curve.modulus.reduce(y),
                      curve.modulus.reduce(1))
        if not is_on_curve(double(P, curve), curve):
            bad.append(f"composite-modulus closure fails: sample {i}, n={n}")
            break
    return CheckOutcome(
        "ecring-field-agreement", not bad,
        bad[0] if bad else (f"{prime_samples} prime and {composite_samples} "
                            f"composite-modulus samples agree"))


def check_hverify_report(k: int) -> list:
    """verify_structure_checks(k) mapped into CheckOutcome entries."""
    try:
        report = hverify.verify_structure_checks(k)
    except Exception as exc:  # surfaced as a failing check, not a crash
        return [CheckOutcome(f"hverify-k{k}", False, f"error: {exc}")]
    return [CheckOutcome(f"hverify-k{k}-{c.name}", c.passed, c.detail)
            for c in report.checks]


def check_count_points() -> CheckOutcome:
    n = hverify.count_points(9)
    return CheckOutcome("count-points-k9", n == 4 ** 11,
                        f"|E(F_F9)| = {n}, expected 4^11 = {4 ** 11}")


def run_all(hverify_ks=(9, 123)) -> list:
    outcomes = [
        check_sequence_tables(),
        check_recurrence_closed_form(),
        check_divisibility_sweep(),
        check_field_agreement(),
    ]
    for k in hverify_ks:
        outcomes.extend(check_hverify_report(k))
    outcomes.append(check_count_points())
    return outcomes
