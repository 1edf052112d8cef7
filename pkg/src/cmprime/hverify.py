"""Verification-grade arithmetic in the residue realization of O_H/(p_k).

For a certified prime F_k, the ring of integers of H = Q(sqrt(-3), sqrt 5)
maps onto Z/F_k by sending sqrt(5) and sqrt(-3) to residues d and t whose
signs are pinned by requiring 1 + 2 beta^k = 0 for beta = (d + t)/2 (that
is the prime above F_k).  In that realization beta^2 = alpha = (1 + u)/2
with u = d t the image of sqrt(-15), and the quartic-over-cubic x-map of
the degree-4 endomorphism alpha becomes computable mod F_k.

This module rebuilds that context from scratch and uses x-only arithmetic
(the alpha x-map plus (X : Z) doubling) to re-verify the structural claims
behind the prover: the annihilation 4 alpha^k P = O with 8 alpha^(k-1) P
strongly nonzero, the equivalence with the pure doubling chain 2^(2k+2)
versus 2^(2k+1), the identity of the final 2-torsion landing point, and
(for F_9, by exhaustive counting) the group order 4^(k+2).

One convention is not recoverable from printed sources alone: which of the
two conjugate degree-4 isogenies the x-map coefficients describe, i.e.
whether their sqrt(-3) / sqrt(-15) symbols mean (t, d t) in our pinned
context or the conjugate (-t, -d t).  build_context tries the candidate
substitutions and records the one under which the annihilation checks
hold, rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import prover15
from .ecring import RingCurve, RingPoint, double_chain
from .modarith import Modulus, gcd, mod_inv, sqrt_mod

# Coefficients of the alpha x-map  x(alpha Q) = f(x)/g(x), deg f = 4,
# deg g = 3.  Each entry is (rational, sqrt(-3), sqrt(5), sqrt(-15), halved):
# the coefficient is (a + b sqrt(-3) + c sqrt(5) + e sqrt(-15)) / (2 if
# halved else 1).  Degree-descending order.
_F_COEFFS = (
    (299537289, 0, 133957148, 0, False),
    (646275, -96341, 289023, -43085, True),
    (257691, 185465, -119511, -75313, False),
    (-1639595729268, -1831800977776, 733249501264, 819206301452, False),
    (3260424679620398892, 5199743168890017300,
     -1458106243829837028, -2325395838235649676, False),
)
_G_COEFFS = (
    (-2096761023, 669785740, -937700036, 299537289, True),
    (-1938825, 1059751, -867069, 473935, True),
    (-337071, -275233, 140091, 133721, False),
    (547023393084, 809830063056, -244636298480, -362167014244, False),
)

# Substitution candidates for the map's (sqrt(-3), sqrt(-15)) symbols,
# as (tau_sign, upsilon_sign) with sqrt(-3) -> tau_sign * t and
# sqrt(-15) -> upsilon_sign * d * (tau_sign * t).  The first two are the
# u -> +-d t trials; the last two cover the conjugate-labelled map.
_MAP_TRIALS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class HResidueContext:
    """Images of sqrt5, sqrt(-3), beta, alpha, sqrt(-15) in Z/F_k."""

    k: int
    F: int
    d: int
    t: int
    beta: int
    alpha: int
    u: int
    modulus: Modulus
    curve: RingCurve
    point: RingPoint
    f_poly: tuple
    g_poly: tuple
    map_convention: str  # which substitution realized the alpha x-map


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class HVerifyReport:
    k: int
    F: int
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _embed_poly(coeffs, M: Modulus, d, tau, upsilon) -> tuple:
    inv2 = mod_inv(2, M.n)
    out = []
    for a, b, c, e, halved in coeffs:
        val = M.reduce(a + b * tau + c * d + e * upsilon)
        if halved:
            val = M.reduce(val * inv2)
        out.append(val)
    return tuple(out)


def _eval_poly(poly, x, M: Modulus):
    acc = poly[0]
    for coef in poly[1:]:
        acc = M.reduce(acc * x + coef)
    return acc


def alpha_x(x, ctx: HResidueContext):
    """x-coordinate of alpha Q given x = x(Q), or None at a pole.

    A pole (g(x) = 0) means Q is a nonzero point of ker(alpha).
    """
    M = ctx.modulus
    gv = _eval_poly(ctx.g_poly, x, M)
    if gv == 0:
        return None
    fv = _eval_poly(ctx.f_poly, x, M)
    return M.reduce(fv * mod_inv(gv, M.n))


def _xz_double(X, Z, curve: RingCurve):
    """(X : Z) doubling on y^2 = x^3 + a4 x + a6; zero iff Z' = 0."""
    red = curve.modulus.reduce
    a4, a6 = curve.a4, curve.a6
    XX = red(X * X)
    ZZ = red(Z * Z)
    Xn = red((XX - a4 * ZZ) ** 2 - 8 * a6 * X * Z * ZZ)
    Zn = red(4 * Z * (X * XX + a4 * X * ZZ + a6 * Z * ZZ))
    return Xn, Zn


def _alpha_power_x(x, n: int, ctx: HResidueContext):
    """x(alpha^n Q) from x(Q) by n map applications; None on any pole."""
    for _ in range(n):
        x = alpha_x(x, ctx)
        if x is None:
            return None
    return x


def _annihilation_holds(ctx: HResidueContext) -> bool:
    """4 alpha^k P = O and 8 alpha^(k-1) P strongly nonzero, x-only."""
    M = ctx.modulus
    xk1 = _alpha_power_x(ctx.point.X, ctx.k - 1, ctx)
    if xk1 is None:
        return False
    X, Z = xk1, M.reduce(1)
    for _ in range(3):  # 8 alpha^(k-1) P
        X, Z = _xz_double(X, Z, ctx.curve)
    if gcd(Z, M.n) != 1:
        return False
    xk = alpha_x(xk1, ctx)
    if xk is None:
        return False
    X, Z = xk, M.reduce(1)
    for _ in range(2):  # 4 alpha^k P
        X, Z = _xz_double(X, Z, ctx.curve)
    return Z == 0


def build_context(k: int) -> HResidueContext:
    """Certify F_k prime (through the prover) and pin the embedding.

    Signs of d and t are fixed by 1 + 2 beta^k = 0; the x-map substitution
    is fixed by the annihilation checks.  Failure of either search is a
    fatal inconsistency, not a recoverable condition.
    """
    verdict = prover15.test15(k)
    if not verdict.is_prime:
        raise ValueError(
            f"build_context requires F_k certified prime; test15({k}) says "
            f"{verdict.outcome.value}")
    F = verdict.F
    M = Modulus(F)
    d0 = sqrt_mod(5, F)
    t0 = sqrt_mod(-3, F)
    if d0 is None or t0 is None:
        raise RuntimeError("5 or -3 has no square root mod a certified prime F_k")
    inv2 = mod_inv(2, F)
    chosen = None
    for d in (d0, M.reduce(-d0)):
        for t in (t0, M.reduce(-t0)):
            beta = M.reduce((d + t) * inv2)
            if M.reduce(1 + 2 * M.pow(beta, k)) == 0:
                chosen = (d, t, beta)
                break
        if chosen:
            break
    if chosen is None:
        raise RuntimeError(
            "no sign choice of sqrt(5), sqrt(-3) realizes the prime above F_k")
    d, t, beta = chosen
    alpha = M.reduce(beta * beta)
    u = M.reduce(d * t)
    # Context invariants; each is a theorem given the construction, so a
    # failure means corrupted arithmetic, not bad input.
    assert M.reduce(d * d - 5) == 0
    assert M.reduce(t * t + 3) == 0
    assert M.reduce(u * u + 15) == 0
    assert M.reduce(2 * alpha - 1 - u) == 0
    assert M.reduce(beta * (d - t) * inv2 - 2) == 0

    curve = prover15.curve_for_d(M, d)
    point = prover15.base_point_for_d(M, d)
    base = HResidueContext(k=k, F=int(F), d=int(d), t=int(t), beta=int(beta),
                           alpha=int(alpha), u=int(u), modulus=M, curve=curve,
                           point=point, f_poly=(), g_poly=(),
                           map_convention="")
    for tau_sign, upsilon_sign in _MAP_TRIALS:
        tau = M.reduce(tau_sign * t)
        upsilon = M.reduce(upsilon_sign * d * tau)
        ctx = HResidueContext(
            k=base.k, F=base.F, d=base.d, t=base.t, beta=base.beta,
            alpha=base.alpha, u=base.u, modulus=M, curve=curve, point=point,
            f_poly=_embed_poly(_F_COEFFS, M, d, tau, upsilon),
            g_poly=_embed_poly(_G_COEFFS, M, d, tau, upsilon),
            map_convention=(f"sqrt(-3)->{'+' if tau_sign > 0 else '-'}t, "
                            f"sqrt(-15)->{'+' if upsilon_sign > 0 else '-'}d*tau"))
        if _annihilation_holds(ctx):
            return ctx
    raise RuntimeError(
        "no conjugate substitution of the alpha x-map satisfies the "
        "annihilation checks")


def verify_structure_checks(k: int) -> HVerifyReport:
    """Re-verify the structural claims at a certified prime index k.

    Returns a pass/fail report per check; failures are report entries, not
    exceptions.
    """
    ctx = build_context(k)
    M = ctx.modulus
    F = M.n
    checks = []

    checks.append(CheckResult(
        "context-invariants", True,
        f"embedding pinned by 1 + 2 beta^k = 0; alpha map via "
        f"{ctx.map_convention}"))

    # (b) 4 alpha^k P = O while 8 alpha^(k-1) P is strongly nonzero.
    xk1 = _alpha_power_x(ctx.point.X, k - 1, ctx)
    ok_nonzero = False
    ok_zero = False
    if xk1 is not None:
        X, Z = xk1, M.reduce(1)
        for _ in range(3):
            X, Z = _xz_double(X, Z, ctx.curve)
        ok_nonzero = gcd(Z, F) == 1
        xk = alpha_x(xk1, ctx)
        if xk is not None:
            X, Z = xk, M.reduce(1)
            for _ in range(2):
                X, Z = _xz_double(X, Z, ctx.curve)
            ok_zero = Z == 0
    checks.append(CheckResult("order-annihilation-zero", ok_zero,
                              "4 alpha^k P = O (x-only)"))
    checks.append(CheckResult("order-annihilation-nonzero", ok_nonzero,
                              "8 alpha^(k-1) P strongly nonzero (x-only)"))

    # (c) pure doubling chain: 2^(2k+1) P strongly nonzero, 2^(2k+2) P = O,
    # and the x-only chain agrees with the full projective chain.
    X, Z = ctx.point.X, M.reduce(1)
    for _ in range(2 * k + 1):
        X, Z = _xz_double(X, Z, ctx.curve)
    x_unit = gcd(Z, F) == 1
    X2, Z2 = _xz_double(X, Z, ctx.curve)
    full = double_chain(ctx.point, 2 * k + 1, ctx.curve)
    agree = M.reduce(X * full.Z - full.X * Z) == 0 and full.Y == 0
    checks.append(CheckResult(
        "scalar-chain-equivalence", x_unit and Z2 == 0 and agree,
        "2^(2k+1) P strongly nonzero, 2^(2k+2) P = O, x-only and "
        "projective chains agree"))

    # (d) the 2-torsion landing point.  Operationally: the landing is a
    # pole of the alpha map (it is the nonzero point killed by 2 and by
    # alpha), and its x is one of the four structurally predicted values.
    detail = "landing not computable"
    ok_d = False
    if x_unit:
        x_land = M.reduce(X * mod_inv(Z, F))
        pole = _eval_poly(ctx.g_poly, x_land, M) == 0
        forms = _predicted_landing_forms(ctx)
        matched = [name for name, val in forms.items() if val == x_land]
        ok_d = pole and bool(matched)
        detail = (f"alpha-map pole: {pole}; matched form(s): "
                  f"{', '.join(matched) if matched else 'none'}")
    checks.append(CheckResult("torsion-landing", ok_d, detail))

    return HVerifyReport(k=k, F=int(F), checks=tuple(checks))


def _predicted_landing_forms(ctx: HResidueContext) -> dict:
    """Predicted x of the landing point under each sign convention."""
    M = ctx.modulus
    d, t = ctx.d, ctx.t
    out = {
        "k2+": int(M.reduce(prover15.TORSION_X_CONST + prover15.TORSION_X_D * d)),
        "k2-": int(M.reduce(prover15.TORSION_X_CONST - prover15.TORSION_X_D * d)),
    }
    inv2 = mod_inv(2, M.n)
    h = prover15._TORSION_H
    for tag, tau in (("h+", M.reduce(t)), ("h-", M.reduce(-t))):
        u = M.reduce(d * tau)
        val = h["r1"] + h["d"] * d + h["t"] * tau + h["u"] * u
        out[tag] = int(M.reduce(val * inv2))
    return out


def count_points(k: int) -> int:
    """|E_d(F_{F_k})| by exhaustive x-sweep; only viable for F_k <= 2^24.

    count = 1 + #{x : f(x) = 0} + 2 #{x : f(x) a nonzero square},
    f(x) = x^3 + a4 x + a6.
    """
    ctx = build_context(k)
    F = ctx.F
    if F > 1 << 24:
        raise ValueError(f"F_{k} = {F} exceeds the naive counting budget 2^24")
    p = int(F)
    a4, a6 = int(ctx.curve.a4), int(ctx.curve.a6)
    x = np.arange(p, dtype=np.int64)
    is_square = np.zeros(p, dtype=bool)
    is_square[(x * x) % p] = True  # includes 0
    fx = (x * x) % p
    fx = (fx * x) % p
    fx = (fx + a4 * x) % p
    fx = (fx + a6) % p
    zeros = int(np.count_nonzero(fx == 0))
    squares_or_zero = int(np.count_nonzero(is_square[fx]))
    return 1 + 2 * squares_or_zero - zeros
