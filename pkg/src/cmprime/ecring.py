"""Short-Weierstrass point arithmetic over Z/NZ, N possibly composite.

Only what the provers need: the projective doubling formula (a polynomial
map, well defined over the ring whether or not N is prime), one affine
chord addition, and the classification of a projective point against the
modulus.  Arithmetic failures are never swallowed: a non-invertible
denominator or an all-zero projective triple is evidence that N is
composite, and is surfaced as such.

All point coordinates are canonical residues in [0, N).
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Union

from .modarith import IntLike, Modulus, NotInvertible, gcd


class RingPoint(NamedTuple):
    """Projective point (X : Y : Z); (0 : 1 : 0) is the zero point."""

    X: IntLike
    Y: IntLike
    Z: IntLike


class DegeneratePointError(Exception):
    """A doubling produced (0, 0, 0): impossible over a field."""

    def __init__(self, step: int):
        super().__init__(f"degenerate point after {step} doublings")
        self.step = step


class FactorRevealedError(Exception):
    """Point arithmetic exposed a nontrivial factor g of the modulus."""

    def __init__(self, factor: IntLike):
        super().__init__(f"modulus factor revealed: {factor}")
        self.factor = int(factor)


class PointClass(NamedTuple):
    kind: str  # "zero" | "strongly-nonzero" | "factor-revealed" | "degenerate"
    factor: Optional[int] = None


ZERO = PointClass("zero")
STRONGLY_NONZERO = PointClass("strongly-nonzero")
DEGENERATE = PointClass("degenerate")


class RingCurve:
    """y^2 = x^3 + a4 x + a6 over Z/NZ, coefficients stored canonically."""

    __slots__ = ("modulus", "a4", "a6")

    def __init__(self, modulus: Union[Modulus, IntLike], a4: IntLike, a6: IntLike):
        if not isinstance(modulus, Modulus):
            modulus = Modulus(modulus)
        self.modulus = modulus
        self.a4 = modulus.reduce(a4)
        self.a6 = modulus.reduce(a6)

    def discriminant_gcd(self) -> int:
        """gcd of -16(4 a4^3 + 27 a6^2) with N; != 1 is surfaced by provers."""
        a4, a6 = self.a4, self.a6
        disc = self.modulus.reduce(-16 * (4 * a4 * a4 * a4 + 27 * a6 * a6))
        return int(gcd(disc, self.modulus.n))

    def point(self, x: IntLike, y: IntLike, z: IntLike = 1) -> RingPoint:
        red = self.modulus.reduce
        return RingPoint(red(x), red(y), red(z))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RingCurve)
                and self.modulus == other.modulus
                and self.a4 == other.a4 and self.a6 == other.a6)

    def __repr__(self) -> str:
        return f"RingCurve(N={self.modulus.n}, a4={self.a4}, a6={self.a6})"


def is_on_curve(P: RingPoint, curve: RingCurve) -> bool:
    """Homogeneous curve equation: Y^2 Z = X^3 + a4 X Z^2 + a6 Z^3 mod N."""
    red = curve.modulus.reduce
    X, Y, Z = P
    lhs = Y * Y * Z
    rhs = X * X * X + curve.a4 * X * Z * Z + curve.a6 * Z * Z * Z
    return red(lhs - rhs) == 0


def double(P: RingPoint, curve: RingCurve) -> RingPoint:
    """One projective doubling; a polynomial map, no inversions.

    W = a4 Z^2 + 3 X^2,  S = Y Z,  B = X Y S,  H = W^2 - 8 B,
    X' = 2 H S,  Y' = W (4 B - H) - 8 (Y S)^2,  Z' = 8 S^3.

    The zero point is special-cased (the polynomial map sends (0:1:0) to
    the all-zero triple, but 2*O = O); a genuinely degenerate (0, 0, 0)
    output stays representable and is classified downstream.
    """
    X, Y, Z = P
    if X == 0 and Z == 0:
        return RingPoint(0, 1, 0)  # 2*O = O, kept away from the (0,0,0) pit
    red = curve.modulus.reduce
    # products are ordered so GMP sees x*x squarings, and the two triple
    # products are reduced pairwise (cheaper than folding a 3n-bit value)
    W = red(curve.a4 * red(Z * Z) + 3 * red(X * X))
    S = red(Y * Z)
    B = red(red(X * Y) * S)
    H = red(W * W - 8 * B)
    X3 = red(2 * H * S)
    YS = red(Y * S)
    Y3 = red(W * (4 * B - H) - 8 * red(YS * YS))
    Z3 = red(8 * red(S * S) * S)
    return RingPoint(X3, Y3, Z3)


def double_chain(P: RingPoint, n: int, curve: RingCurve) -> RingPoint:
    """n successive doublings of P.

    Raises DegeneratePointError as soon as an intermediate reduces to
    (0, 0, 0) mod N -- impossible over a field, hence compositeness
    evidence for the provers.
    """
    if n < 0:
        raise ValueError("doubling count must be >= 0")
    for step in range(n):
        if P.X == 0 and P.Y == 0 and P.Z == 0:
            raise DegeneratePointError(step)
        P = double(P, curve)
    if P.X == 0 and P.Y == 0 and P.Z == 0:
        raise DegeneratePointError(n)
    return P


def add_affine(P: RingPoint, Q: RingPoint, curve: RingCurve) -> RingPoint:
    """Chord-law addition of two affine points (Z a unit).

    Returns the canonical zero point for P + (-P); delegates x1 == x2,
    y1 == y2 to the doubling formula.  A non-invertible denominator with
    1 < gcd < N raises FactorRevealedError.
    """
    M = curve.modulus
    red = M.reduce

    def affine(R: RingPoint) -> tuple:
        if R.Z == 1:
            return R.X, R.Y
        try:
            zi = M.inv(R.Z)
        except NotInvertible as exc:
            if exc.gcd == M.n:
                raise ValueError("add_affine requires Z to be a unit") from exc
            raise FactorRevealedError(exc.gcd) from exc
        return red(R.X * zi), red(R.Y * zi)

    x1, y1 = affine(P)
    x2, y2 = affine(Q)
    if x1 == x2:
        if red(y1 + y2) == 0:
            return RingPoint(0, 1, 0)  # P + (-P) = O
        if y1 == y2:
            return double(RingPoint(x1, y1, red(1)), curve)
        # y1*y1 = y2*y2 on the curve, so (y1 - y2)(y1 + y2) = 0 mod N with
        # neither factor zero: the gcd is a proper factor.
        raise FactorRevealedError(gcd(red(y1 - y2), M.n))
    try:
        slope = red((y2 - y1) * M.inv(x2 - x1))
    except NotInvertible as exc:
        raise FactorRevealedError(exc.gcd) from exc
    x3 = red(slope * slope - x1 - x2)
    y3 = red(slope * (x1 - x3) - y1)
    return RingPoint(x3, y3, red(1))


def classify(P: RingPoint, modulus: Union[Modulus, IntLike]) -> PointClass:
    """Classify a projective point against the modulus.

    degenerate if X = Y = Z = 0; zero if Z = 0; strongly nonzero if
    gcd(Z, N) = 1; otherwise the gcd is a revealed factor.
    """
    if not isinstance(modulus, Modulus):
        modulus = Modulus(modulus)
    red = modulus.reduce
    x, y, z = red(P.X), red(P.Y), red(P.Z)
    if x == 0 and y == 0 and z == 0:
        return DEGENERATE
    if z == 0:
        return ZERO
    g = gcd(z, modulus.n)
    if g == 1:
        return STRONGLY_NONZERO
    return PointClass("factor-revealed", int(g))
