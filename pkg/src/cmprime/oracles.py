"""Independent reference implementations, used only by tests and checks.

Nothing here touches the gmpy2-backed kernel: these routines run on plain
Python integers and stdlib pow/random, so that an agreement between a
prover and its oracle crosses both an algorithmic and an arithmetic-backend
boundary.  They are deliberately not exported through the CLI.
"""

from __future__ import annotations

import enum
import random
from typing import NamedTuple, Optional


class MRResult(enum.Enum):
    PROBABLE_PRIME = "probable-prime"
    COMPOSITE = "composite"


class ProthResult(enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    INCONCLUSIVE = "inconclusive"


# The first 13 primes are a deterministic witness set below this bound.
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_RANDOM_ROUNDS = 64


def _is_strong_witness(a: int, d: int, s: int, n: int) -> bool:
    """True when a proves n composite (n - 1 = d * 2^s, d odd)."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def miller_rabin(n: int) -> MRResult:
    """Strong probable-prime test.

    Deterministic below _MR_DETERMINISTIC_BOUND; above it, 64 witnesses
    drawn from a generator seeded by n itself, so the answer for a given n
    is reproducible run to run.
    """
    if n < 2:
        raise ValueError("miller_rabin requires n >= 2")
    if n in (2, 3):
        return MRResult.PROBABLE_PRIME
    if n % 2 == 0:
        return MRResult.COMPOSITE
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_BOUND:
        bases = [a for a in _MR_DETERMINISTIC_BASES if a % n != 0]
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_MR_RANDOM_ROUNDS)]
    for a in bases:
        if _is_strong_witness(a, d, s, n):
            return MRResult.COMPOSITE
    return MRResult.PROBABLE_PRIME


def _jacobi(a: int, n: int) -> int:
    # Local copy of the binary Jacobi algorithm: the oracle must not share
    # code with the kernel it is used to check.
    if n < 1 or n % 2 == 0:
        raise ValueError("jacobi requires odd n >= 1")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def proth_oracle(h: int, n: int) -> ProthResult:
    """Classical Proth test for N = h * 2^n + 1 with odd h < 2^n.

    Searches a <= 100 with (a/N) = -1; then a^((N-1)/2) = -1 proves N
    prime, and any other value proves N composite.  If no nonresidue is
    found the test is inconclusive and the caller should fall back to
    miller_rabin.
    """
    if h < 1 or h % 2 == 0:
        raise ValueError("h must be a positive odd integer")
    if n < 1 or h >= 1 << n:
        raise ValueError("proth_oracle requires h < 2^n")
    N = h * (1 << n) + 1
    for a in range(2, 101):
        j = _jacobi(a, N)
        if j == 0:
            return ProthResult.COMPOSITE  # a < N shares a factor with N
        if j != -1:
            continue
        t = pow(a, (N - 1) // 2, N)
        if t == N - 1:
            return ProthResult.PRIME
        if t == 1:
            # Impossible for prime N with (a/N) = -1; let Miller-Rabin rule.
            if miller_rabin(N) is MRResult.COMPOSITE:
                return ProthResult.COMPOSITE
            return ProthResult.INCONCLUSIVE
        return ProthResult.COMPOSITE
    return ProthResult.INCONCLUSIVE


class FieldCurve(NamedTuple):
    """y^2 = x^3 + a4 x + a6 over the prime field F_p (small p)."""

    p: int
    a4: int
    a6: int


FieldPoint = Optional[tuple]  # None is the identity, otherwise (x, y)


def on_field_curve(P: FieldPoint, curve: FieldCurve) -> bool:
    if P is None:
        return True
    x, y = P
    return (y * y - (x * x * x + curve.a4 * x + curve.a6)) % curve.p == 0


def affine_group_law(P: FieldPoint, Q: FieldPoint, curve: FieldCurve) -> FieldPoint:
    """Textbook chord-tangent addition with field inversion, p prime."""
    p, a4, _ = curve
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        m = (3 * x1 * x1 + a4) * pow(2 * y1, -1, p) % p
    else:
        m = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (m * m - x1 - x2) % p
    y3 = (m * (x1 - x3) - y1) % p
    return (x3, y3)


def is_prime_trial(n: int) -> bool:
    """Trial division, exact for any n >= 0 (meant for n up to ~10^12)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_prime_factor(n: int) -> int:
    """Least prime factor of n >= 2 by trial division."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n
