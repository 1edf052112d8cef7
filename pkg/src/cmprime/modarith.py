"""Arbitrary-precision modular arithmetic kernel.

Everything else in the package funnels its residue arithmetic through this
module.  Residues are canonical representatives in [0, N); all equality
checks elsewhere rely on that.  The heavy lifting (multiplication, powmod,
extended gcd) is delegated to GMP via gmpy2, which is subquadratic at the
operand sizes we care about.

For moduli of the sparse shape N = 2^m - c with |c| roughly half the bits
of N (every F_k in this package has that shape), ``Modulus.reduce`` folds
the high part instead of dividing: 2^m = c (mod N), so

    x = hi * 2^m + lo  ==>  x = hi * c + lo (mod N),

which replaces a division by one or two half-width multiplications.
"""

from __future__ import annotations

from typing import Optional, Union

import gmpy2
from gmpy2 import mpz

IntLike = Union[int, "mpz"]

_FOLD_MIN_BITS = 512  # below this a plain % is already cheap
_FOLD_SLACK = 32  # require |c| at least this many bits shorter than m


class NotInvertible(Exception):
    """A residue could not be inverted; carries g = gcd(a, N) > 1.

    1 < g < N is a nontrivial factor of N, which callers in the provers
    convert into a composite verdict.
    """

    def __init__(self, g: IntLike):
        super().__init__(f"not invertible, gcd = {g}")
        self.gcd = int(g)


def gcd(a: IntLike, b: IntLike) -> mpz:
    """Greatest common divisor, nonnegative; gcd(0, 0) = 0."""
    return gmpy2.gcd(mpz(a), mpz(b))


def xgcd(a: IntLike, b: IntLike) -> tuple[mpz, mpz, mpz]:
    """Extended gcd: (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    return gmpy2.gcdext(mpz(a), mpz(b))


def mod_pow(base: IntLike, exponent: IntLike, n: IntLike) -> mpz:
    """base**exponent mod n, exponent >= 0."""
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    return gmpy2.powmod(mpz(base), mpz(exponent), mpz(n))


def mod_inv(a: IntLike, n: IntLike) -> mpz:
    """Inverse of a mod n, or raise NotInvertible carrying gcd(a, n)."""
    g, x, _ = gmpy2.gcdext(mpz(a) % n, mpz(n))
    if g != 1:
        raise NotInvertible(g)
    return x % n


def jacobi(a: IntLike, n: IntLike) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by the binary algorithm.

    Deliberately not delegated to gmpy2: the test suite plays this routine
    against Euler's criterion through mod_pow, and the two routes should
    not share an implementation.
    """
    n = mpz(n)
    if n < 1 or n % 2 == 0:
        raise ValueError("jacobi requires odd n >= 1")
    a = mpz(a) % n
    result = 1
    while a:
        while a % 2 == 0:
            a >>= 1
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: IntLike, p: IntLike) -> Optional[mpz]:
    """Square root of a mod p (p prime), or None when (a/p) = -1.

    Tonelli-Shanks.  The caller asserts primality of p; on composite p the
    routine still terminates (the descent is capped) but the result is
    meaningless.
    """
    p = mpz(p)
    a = mpz(a) % p
    if a == 0:
        return mpz(0)
    if p == 2:
        return a
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        return mod_pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q >>= 1
        s += 1
    z = mpz(2)
    while jacobi(z, p) != -1:
        z += 1
    m = s
    c = mod_pow(z, q, p)
    t = mod_pow(a, q, p)
    r = mod_pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
            if i >= m:  # impossible for prime p; bail out on garbage input
                return None
        b = mod_pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


class Modulus:
    """An immutable modulus N >= 2 with a canonical reduction strategy.

    Safe to share across parallel workers: nothing here mutates after
    construction.
    """

    __slots__ = ("n", "_fold_m", "_fold_c", "_fold_c2", "_fold_mask",
                 "_fold_lim")

    def __init__(self, n: IntLike):
        n = mpz(n)
        if n < 2:
            raise ValueError("modulus must be >= 2")
        self.n = n
        self._fold_m = None
        self._fold_c = None
        self._fold_c2 = None
        self._fold_mask = None
        self._fold_lim = None
        bl = n.bit_length()
        if bl >= _FOLD_MIN_BITS:
            best = None
            for m in (bl, bl - 1):
                c = (mpz(1) << m) - n
                if c != 0 and abs(c).bit_length() <= m - _FOLD_SLACK:
                    if best is None or abs(c) < abs(best[1]):
                        best = (m, c)
            if best is not None:
                self._fold_m, self._fold_c = best
                self._fold_c2 = self._fold_c * self._fold_c  # 2^(2m) mod N
                self._fold_mask = (mpz(1) << self._fold_m) - 1
                self._fold_lim = self._fold_m + _FOLD_SLACK

    def reduce(self, x: IntLike) -> mpz:
        """Canonical representative of x in [0, N)."""
        m = self._fold_m
        if m is not None:
            c, mask, lim = self._fold_c, self._fold_mask, self._fold_lim
            if x.bit_length() > lim:
                # one combined pass handles anything a product of two
                # reduced operands can produce: split x at m and 2m, fold
                # the two high parts with 2^m = c and 2^(2m) = c^2
                h = x >> m
                x = (h >> m) * self._fold_c2 + (h & mask) * c + (x & mask)
                while x.bit_length() > lim:
                    x = (x >> m) * c + (x & mask)
        return x % self.n

    def pow(self, base: IntLike, exponent: IntLike) -> mpz:
        return mod_pow(base, exponent, self.n)

    def inv(self, a: IntLike) -> mpz:
        return mod_inv(a, self.n)

    def jacobi(self, a: IntLike) -> int:
        return jacobi(a, self.n)

    def sqrt(self, a: IntLike) -> Optional[mpz]:
        return sqrt_mod(a, self.n)

    def __int__(self) -> int:
        return int(self.n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Modulus) and self.n == other.n

    def __hash__(self) -> int:
        return hash((Modulus, self.n))

    def __repr__(self) -> str:
        return f"Modulus({self.n})"
