"""Deterministic primality test for F_k, k in S, via the CM curve E_d.

For k in S the number F_k is prime exactly when the point

    P_d = (0, -10179930516 + 4552603328 d)

on  E_d : y^2 = x^3 + a4(d) x + a6(d)  over Z/F_k,  with d a square root
of 5 mod F_k, satisfies: 2^(2k+1) P_d = [x : y : z] with y = 0 mod F_k and
gcd(z, F_k) = 1.  The witness point doubles once more to the zero point,
i.e. P_d has order 2^(2k+2), which is too large for any proper prime
divisor of F_k to accommodate (Hasse bound), so the final point is both
the verdict and a succinct certificate of primality, checkable by anyone
in quasi-quadratic time by replaying the doubling chain.

A composite verdict is never silent about why: the exact exit (Fermat-type
nonresidue at step 1, failed square root at step 4, wrong final point,
revealed factor, degenerate triple) is recorded on the Verdict, and any
gcd strictly between 1 and F_k is reported as an explicit factor.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Optional

from .ecring import DegeneratePointError, RingCurve, RingPoint, double_chain, is_on_curve
from .modarith import Modulus, NotInvertible, gcd, mod_inv, sqrt_mod
from .sequence import fk_exact, in_set

CERT_FORMAT = "cm15-cert-v1"

# Curve family and base point, as linear polynomials in d (= sqrt(5) mod F):
#   a4 = -3234 (16195646845 - 7242913457 d)
#   a6 = 38416 (5395199151946361 - 2412806411180256 d)
#   y0 = -10179930516 + 4552603328 d
_A4_SCALE = -3234
_A4_CONST, _A4_D = 16195646845, -7242913457
_A6_SCALE = 38416
_A6_CONST, _A6_D = 5395199151946361, -2412806411180256
_Y0_CONST, _Y0_D = -10179930516, 4552603328

# The final point 2^(2k+1) P_d is 2-torsion; its x-coordinate is one of the
# x-coordinates of the curve's 2-torsion points predicted by the CM
# structure.  In the field H = Q(sqrt(-3), sqrt(5)) these are
#
#   x = 2643963 sqrt(5) - 5912081                       (in Q(sqrt 5)), and
#   x = 7 (11933 sqrt(-15) - 377709 sqrt(5) - 26683 sqrt(-3) + 844583) / 2
#
# together with the H/Q(sqrt 5)-conjugate of the latter.  Empirically (and
# verifiably for every certified prime here) the chain lands on the second
# kind: the two conjugate embeddings sqrt(-3) -> +-t give the observed x.
# The Q(sqrt 5) form is retained among the accepted values because parts of
# the literature attribute the landing to it; the conjugate-kernel labels
# there do not survive direct computation.
TORSION_X_CONST, TORSION_X_D = -5912081, 2643963
_TORSION_H = {"r1": 844583 * 7, "d": -377709 * 7, "t": -26683 * 7, "u": 11933 * 7}


class Outcome(enum.Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    DOMAIN_ERROR = "domain-error"


class Reason(enum.Enum):
    STEP1_NONRESIDUE = "step1-nonresidue"
    STEP4_SQRT_FAIL = "step4-sqrt-fail"
    FINAL_Y_NONZERO = "final-y-nonzero"
    FINAL_Z_NOT_COPRIME = "final-z-not-coprime"
    FACTOR_FOUND = "factor-found"
    DEGENERATE_POINT = "degenerate-point"


@dataclass(frozen=True)
class Certificate:
    """Replayable proof that F_k is prime; all residues reduced mod F."""

    k: int
    F: int
    d: int
    a4: int
    a6: int
    Py: int
    doublings: int
    final_x: int
    final_z: int
    format: str = CERT_FORMAT

    def to_json(self) -> str:
        doc = {
            "format": self.format,
            "k": self.k,
            "F": str(self.F),
            "d": str(self.d),
            "a4": str(self.a4),
            "a6": str(self.a6),
            "Py": str(self.Py),
            "doublings": self.doublings,
            "final_x": str(self.final_x),
            "final_z": str(self.final_z),
        }
        return json.dumps(doc, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        for key in ("k", "doublings"):
            if not isinstance(doc.get(key), int):
                raise CertificateFormatError(f"field {key!r} must be a JSON number")
        if doc.get("format") != CERT_FORMAT:
            raise CertificateFormatError(f"unknown certificate format {doc.get('format')!r}")
        big = {}
        for key in ("F", "d", "a4", "a6", "Py", "final_x", "final_z"):
            raw = doc.get(key)
            if not isinstance(raw, str) or not re.fullmatch(r"[0-9]+", raw):
                raise CertificateFormatError(
                    f"field {key!r} must be a decimal string")
            big[key] = int(raw)
        return Certificate(k=doc["k"], doublings=doc["doublings"], **big)

    def write(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.to_json())

    @staticmethod
    def load(path) -> "Certificate":
        with open(path, "r", encoding="ascii") as fh:
            return Certificate.from_json(fh.read())


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    k: int
    F: Optional[int] = None
    reason: Optional[Reason] = None
    factor: Optional[int] = None
    detail: str = ""
    certificate: Optional[Certificate] = None

    @property
    def is_prime(self) -> bool:
        return self.outcome is Outcome.PRIME

    @property
    def is_composite(self) -> bool:
        return self.outcome is Outcome.COMPOSITE

    @property
    def is_domain_error(self) -> bool:
        return self.outcome is Outcome.DOMAIN_ERROR


@dataclass
class CertificateCheck:
    """Outcome of verify_certificate: ok plus which invariants broke."""

    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def curve_for_d(modulus: Modulus, d) -> RingCurve:
    a4 = modulus.reduce(_A4_SCALE * (_A4_CONST + _A4_D * d))
    a6 = modulus.reduce(_A6_SCALE * (_A6_CONST + _A6_D * d))
    return RingCurve(modulus, a4, a6)


def base_point_for_d(modulus: Modulus, d) -> RingPoint:
    return RingPoint(modulus.reduce(0), modulus.reduce(_Y0_CONST + _Y0_D * d),
                     modulus.reduce(1))


def test15(k: int) -> Verdict:
    """Decide the primality of F_k for k in S.

    Steps: (1) r = 5^((F-1)/4) must be +-1; (2) e = (F-5)/8, exact since
    F = 5 mod 8; (3) d = 5^(e+1) if r = 1 else 2^(2e+1) 5^(e+1);
    (4) d^2 must be 5; (5) reduce P_d; (6) 2k+1 doublings; (7) prime iff
    the final y is 0 mod F and z is a unit.
    """
    if k < 0 or not in_set(k, "S"):
        return Verdict(Outcome.DOMAIN_ERROR, k,
                       detail=f"k = {k} is not in S (k mod 240 = {k % 240})")
    F = fk_exact(k).F
    M = Modulus(F)

    def composite(reason: Reason, factor: Optional[int] = None, detail: str = "") -> Verdict:
        return Verdict(Outcome.COMPOSITE, k, int(F), reason=reason,
                       factor=factor, detail=detail)

    r = M.pow(5, (F - 1) // 4)
    if r != 1 and r != F - 1:
        return composite(Reason.STEP1_NONRESIDUE,
                         detail="5^((F-1)/4) is not +-1 mod F")
    e = (F - 5) // 8
    if r == 1:
        d = M.pow(5, e + 1)
    else:
        d = M.pow(2, 2 * e + 1) * M.pow(5, e + 1) % M.n
    if M.reduce(d * d - 5) != 0:
        return composite(Reason.STEP4_SQRT_FAIL, detail="d^2 != 5 mod F")

    # The exponentiation pins one of the two square roots of 5 mod F, but
    # a prime F only guarantees the order-2^(2k+2) point structure on the
    # curve of the root that reduces the Hilbert-field prime above F
    # correctly (concretely: F_123 is prime, yet the chain below fails on
    # the root the exponentiation happens to produce there).  Soundness is
    # root-independent, so run the chain on d first and fall back to F - d
    # before concluding compositeness.
    last = None
    for root, tag in ((d, ""), (M.reduce(-d), "conjugate root F - d")):
        curve = curve_for_d(M, root)
        g = curve.discriminant_gcd()
        if g != 1:
            return composite(Reason.FACTOR_FOUND,
                             factor=g if 1 < g < F else None,
                             detail="curve discriminant shares a factor with F")
        P = base_point_for_d(M, root)
        if not is_on_curve(P, curve):
            raise RuntimeError(
                "P_d not on E_d despite d^2 = 5: curve constants corrupt")
        try:
            Q = double_chain(P, 2 * k + 1, curve)
        except DegeneratePointError as exc:
            last = composite(Reason.DEGENERATE_POINT,
                             detail=f"all-zero point after {exc.step} doublings")
            continue
        if Q.Y != 0:
            last = composite(Reason.FINAL_Y_NONZERO,
                             detail="final point is not 2-torsion")
            continue
        g = int(gcd(Q.Z, F))
        if g != 1:
            last = composite(Reason.FINAL_Z_NOT_COPRIME,
                             factor=g if g < F else None,
                             detail="final z is not a unit mod F")
            continue
        cert = Certificate(k=k, F=int(F), d=int(root), a4=int(curve.a4),
                           a6=int(curve.a6), Py=int(P.Y), doublings=2 * k + 1,
                           final_x=int(Q.X), final_z=int(Q.Z))
        return Verdict(Outcome.PRIME, k, int(F), certificate=cert,
                       detail=tag and f"accepted via {tag}")
    return last


def verify_certificate(cert: Certificate) -> CertificateCheck:
    """Recompute every certificate invariant from scratch.

    Replays the full doubling chain, so this costs as much as test15 minus
    the exponentiations; it shares no state with certificate generation.
    """
    failures = []
    if cert.format != CERT_FORMAT:
        failures.append("format-tag")
    if cert.k < 0 or not in_set(cert.k, "S"):
        failures.append("k-not-in-S")
        return CertificateCheck(False, failures)
    if cert.F != fk_exact(cert.k).F:
        failures.append("F-mismatch")
        return CertificateCheck(False, failures)
    F = cert.F
    M = Modulus(F)
    if cert.doublings != 2 * cert.k + 1:
        failures.append("doubling-count")
    for name in ("d", "a4", "a6", "Py", "final_x", "final_z"):
        if not 0 <= getattr(cert, name) < F:
            failures.append(f"{name}-out-of-range")
    if M.reduce(cert.d * cert.d - 5) != 0:
        failures.append("d-squared-not-5")
    curve = curve_for_d(M, cert.d)
    if curve.a4 != cert.a4:
        failures.append("a4-mismatch")
    if curve.a6 != cert.a6:
        failures.append("a6-mismatch")
    if M.reduce(_Y0_CONST + _Y0_D * cert.d) != cert.Py:
        failures.append("Py-mismatch")
    if int(gcd(cert.final_z, F)) != 1:
        failures.append("final-z-not-unit")
    if failures:
        return CertificateCheck(False, failures)

    P = RingPoint(M.reduce(0), M.reduce(cert.Py), M.reduce(1))
    try:
        Q = double_chain(P, cert.doublings, curve)
    except DegeneratePointError:
        failures.append("chain-degenerate")
        return CertificateCheck(False, failures)
    if Q.Y != 0:
        failures.append("final-y-nonzero")
    if int(gcd(Q.Z, F)) != 1:
        failures.append("replayed-z-not-unit")
    # Projective equality of (X : 0 : Z) pairs: cross-multiplication.
    if M.reduce(Q.X * cert.final_z - cert.final_x * Q.Z) != 0:
        failures.append("final-point-mismatch")
    return CertificateCheck(not failures, failures)


def predicted_torsion_x(cert: Certificate) -> dict:
    """The structurally predicted 2-torsion landing x-coordinates, by form.

    Keys: "k2+" and "k2-" for 2643963 d - 5912081 with d = cert.d and
    F - cert.d; "h+" and "h-" for the Hilbert-field point under the two
    embeddings sqrt(-3) -> +-t (with sqrt(-15) -> d * (+-t)).  The h forms
    need a square root of -3 mod F and are omitted when none exists (F
    composite; certificates never verify then anyway).
    """
    F = cert.F
    M = Modulus(F)
    d = cert.d
    out = {
        "k2+": int(M.reduce(TORSION_X_CONST + TORSION_X_D * d)),
        "k2-": int(M.reduce(TORSION_X_CONST - TORSION_X_D * d)),
    }
    t = sqrt_mod(-3, F)
    if t is not None:
        inv2 = mod_inv(2, F)
        for tag, tau in (("h+", t), ("h-", M.reduce(-t))):
            u = M.reduce(d * tau)
            val = _TORSION_H["r1"] + _TORSION_H["d"] * d + \
                _TORSION_H["t"] * tau + _TORSION_H["u"] * u
            out[tag] = int(M.reduce(val * inv2))
    return out


def strict_torsion_check(cert: Certificate) -> bool:
    """Is the final point one of the predicted 2-torsion landing points?

    Diagnostic only: the primality verdict never depends on it.  All four
    sign/conjugation conventions of the predicted x-coordinate are
    accepted (see predicted_torsion_x); in every certified run observed so
    far the chain lands on an "h" form, never on the bare Q(sqrt 5) form.
    """
    M = Modulus(cert.F)
    try:
        x_aff = int(M.reduce(cert.final_x * mod_inv(cert.final_z, cert.F)))
    except NotInvertible:
        return False
    return x_aff in predicted_torsion_x(cert).values()
