"""Deterministic primality test for F_k = 1 + 9*2^k with k = 1 mod 8.

Second instantiation of the same framework, on the curve

    E : y^2 = x^3 - 78030 x - 7428456

with CM by Q(sqrt(-2)).  Writing k = 2m + 1, the residue

    s = -(3 * (-2)^m)^(-1)  mod F

is the image of sqrt(-2) whenever F is prime (from 1 + 3 sqrt(-2)^k = 0 at
the prime above F), and the base point reduces to

    P = (125 s - 604, -9190 s - 6700).

F is prime iff 2^((k-1)/2) (3P) is strongly nonzero mod F and one more
doubling kills it.  The proven regime requires F > 5184, i.e. k >= 17;
k = 9 (F_9 = 4609 = 11 * 419) falls outside it and is rejected as a domain
error rather than guessed at.

No certificate format is defined for this sequence; a prime verdict
carries the final 2-torsion point in its detail string as informal
evidence.
"""

from __future__ import annotations

from typing import NamedTuple

from .ecring import (DegeneratePointError, FactorRevealedError, RingCurve,
                     classify, double, double_chain, is_on_curve, add_affine)
from .modarith import Modulus, NotInvertible, mod_inv
from .oracles import smallest_prime_factor
from .prover15 import Outcome, Reason, Verdict

E2_A4 = -78030
E2_A6 = -7428456
_PX_CONST, _PX_S = -604, 125
_PY_CONST, _PY_S = -6700, -9190

_MIN_K = 17  # smallest k = 1 mod 8 with F_k above the proven bound 16*(9*2)^2


def f2_value(k: int) -> int:
    """F_k = 1 + 9*2^k (the k odd case; even k gives a square)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1 + 9 * (1 << k)


class SqrtM2Embedding(NamedTuple):
    """Candidate image of sqrt(-2) in Z/F for F = 1 + 9*2^k, k = 2m+1.

    s = -(3*(-2)^m)^(-1) mod F; if F is prime then s^2 = -2 mod F, and the
    test rejects F as composite whenever that fails.
    """

    k: int
    F: int
    s: int

    @property
    def is_valid(self) -> bool:
        return (self.s * self.s + 2) % self.F == 0


def sqrt_m2_embedding(k: int) -> SqrtM2Embedding:
    """Closed-form candidate square root of -2 mod 1 + 9*2^k (k odd)."""
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and >= 1")
    F = f2_value(k)
    m = (k - 1) // 2
    base = 3 * pow(-2, m, F) % F
    # gcd(6, F) = 1 always (F is odd and 1 mod 3), so base is invertible
    s = -mod_inv(base, F) % F
    return SqrtM2Embedding(k=k, F=F, s=int(s))


def test2(k: int) -> Verdict:
    """Decide the primality of 1 + 9*2^k for k = 1 mod 8, k >= 17.

    Reason mapping mirrors the F_k prover: a failed sqrt(-2) embedding is
    step4-sqrt-fail; the strongly-nonzero check at 2^((k-1)/2)(3P) failing
    is final-z-not-coprime (with the factor when the gcd is proper); the
    final point surviving its last doubling is final-y-nonzero; any factor
    revealed by point arithmetic is factor-found.
    """
    if k % 8 != 1 or k < _MIN_K:
        detail = f"k = {k} is not 1 mod 8 or is below {_MIN_K}"
        if k >= 1 and k % 8 == 1:
            F = f2_value(k)
            p = smallest_prime_factor(F)
            if p != F:
                detail += (f" (outside the proven bound; trial division: "
                           f"F = {F} = {p} * {F // p}, composite)")
        return Verdict(Outcome.DOMAIN_ERROR, k, detail=detail)
    F = f2_value(k)
    M = Modulus(F)

    def composite(reason: Reason, factor=None, detail: str = "") -> Verdict:
        return Verdict(Outcome.COMPOSITE, k, F, reason=reason, factor=factor,
                       detail=detail)

    try:
        embedding = sqrt_m2_embedding(k)
    except NotInvertible as exc:  # gcd(6, F) = 1 always, so never proper here
        return composite(Reason.FACTOR_FOUND, factor=exc.gcd,
                         detail="3*(-2)^((k-1)/2) not invertible")
    if not embedding.is_valid:
        return composite(Reason.STEP4_SQRT_FAIL, detail="s^2 != -2 mod F")
    s = embedding.s

    curve = RingCurve(M, E2_A4, E2_A6)
    g = curve.discriminant_gcd()
    if g != 1:
        return composite(Reason.FACTOR_FOUND, factor=g if 1 < g < F else None,
                         detail="curve discriminant shares a factor with F")
    P = curve.point(_PX_CONST + _PX_S * s, _PY_CONST + _PY_S * s)
    if not is_on_curve(P, curve):
        raise RuntimeError("P not on E despite s^2 = -2: curve constants corrupt")

    # Q = 3P = 2P + P, then (k-1)/2 doublings must stay strongly nonzero
    # and one more doubling must reach the zero point: total scalar
    # 2^((k+1)/2) * 3.
    try:
        P2 = double(P, curve)
        if M.reduce(P2.Z) == 0:
            Q = P  # 2P = O would make 3P = P
        else:
            Q = add_affine(P2, P, curve)
    except FactorRevealedError as exc:
        return composite(Reason.FACTOR_FOUND, factor=exc.factor,
                         detail="factor revealed while forming 3P")
    try:
        R = double_chain(Q, (k - 1) // 2, curve)
    except DegeneratePointError as exc:
        return composite(Reason.DEGENERATE_POINT,
                         detail=f"all-zero point after {exc.step} doublings")
    c = classify(R, M)
    if c.kind == "degenerate":
        return composite(Reason.DEGENERATE_POINT)
    if c.kind != "strongly-nonzero":
        return composite(Reason.FINAL_Z_NOT_COPRIME, factor=c.factor,
                         detail="2^((k-1)/2)(3P) is not strongly nonzero")
    final = double(R, curve)
    fc = classify(final, M)
    if fc.kind == "zero":
        witness = f"2^((k-1)/2)(3P) = ({int(R.X)} : {int(R.Y)} : {int(R.Z)})"
        return Verdict(Outcome.PRIME, k, F, detail=witness)
    if fc.kind == "degenerate":
        return composite(Reason.DEGENERATE_POINT)
    if fc.kind == "factor-revealed":
        return composite(Reason.FACTOR_FOUND, factor=fc.factor,
                         detail="final doubling revealed a factor")
    return composite(Reason.FINAL_Y_NONZERO,
                     detail="2^((k+1)/2)(3P) is not the zero point")
