import random

import pytest

from cmprime.modarith import (Modulus, NotInvertible, gcd, jacobi, mod_inv,
                              mod_pow, sqrt_mod, xgcd)
from cmprime.sequence import fk_exact, fk_sequence
from cmprime.sieve import primes_up_to

PRIMES_20 = [p for p in primes_up_to(1 << 20)]


def test_mod_pow_examples():
    assert mod_pow(5, 0, 61) == 1
    assert mod_pow(2, 10, 1000) == 24  # 1024 mod 1000
    # 5 is a quartic residue datum for F_1 = 61: 5^((61-1)/4) = -1
    assert mod_pow(5, 15, 61) == 60


def test_mod_pow_rejects_negative_exponent():
    with pytest.raises(ValueError):
        mod_pow(2, -1, 7)


def test_mod_pow_additivity():
    rng = random.Random(101)
    for _ in range(200):
        n = rng.randrange(2, 1 << 64)
        a = rng.randrange(n)
        e1 = rng.randrange(n)
        e2 = rng.randrange(n)
        lhs = mod_pow(a, e1, n) * mod_pow(a, e2, n) % n
        assert lhs == mod_pow(a, e1 + e2, n)


def test_mod_inv_examples():
    assert mod_inv(1, 97) == 1
    assert mod_inv(3, 10) == 7
    with pytest.raises(NotInvertible) as exc:
        mod_inv(6, 9)
    assert exc.value.gcd == 3


def test_mod_inv_iff_coprime():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(2, 1 << 48)
        a = rng.randrange(n)
        g = int(gcd(a, n))
        if g == 1:
            assert a * mod_inv(a, n) % n == 1
        else:
            with pytest.raises(NotInvertible) as exc:
                mod_inv(a, n)
            assert exc.value.gcd == g


def test_gcd_basics():
    assert gcd(0, 7) == 7
    assert gcd(12, 18) == 6
    assert gcd(0, 0) == 0
    assert gcd(35, 97) == 1  # unit mod a prime


def test_xgcd_identity():
    rng = random.Random(13)
    for _ in range(100):
        a = rng.randrange(1 << 80)
        b = rng.randrange(1 << 80)
        g, x, y = xgcd(a, b)
        assert a * x + b * y == g == gcd(a, b)


def test_jacobi_examples():
    for n in (1, 3, 61, 4191181):
        assert jacobi(1, n) == 1
    assert jacobi(5, 61) == 1
    with pytest.raises(ValueError):
        jacobi(3, 10)
    with pytest.raises(ValueError):
        jacobi(3, 0)


def test_jacobi_2_is_minus_one_mod_5_mod_8():
    # every F_k (k >= 1) is 5 mod 8, where (2/n) = -1
    for v in fk_sequence(50):
        if v.k >= 1:
            assert v.F % 8 == 5
            assert jacobi(2, v.F) == -1
    assert jacobi(2, 13) == -1
    assert jacobi(2, 7) == 1


def test_jacobi_matches_euler_criterion():
    rng = random.Random(2024)
    odd_primes = [p for p in PRIMES_20 if p > 2]
    for _ in range(200):
        p = odd_primes[rng.randrange(len(odd_primes))]
        a = rng.randrange(1, p)
        e = mod_pow(a, (p - 1) // 2, p)
        expected = -1 if e == p - 1 else int(e)
        assert jacobi(a, p) == expected


def test_sqrt_mod_basics():
    assert sqrt_mod(0, 61) == 0
    r = sqrt_mod(4, 61)
    assert r in (2, 59)
    assert sqrt_mod(2, 61) is None  # (2/61) = -1 since 61 = 5 mod 8


def test_sqrt_mod_minus_3_mod_f9():
    F9 = fk_exact(9).F
    r = sqrt_mod(-3, F9)
    assert r is not None
    assert r * r % F9 == F9 - 3


def test_sqrt_mod_random_residues():
    rng = random.Random(31337)
    odd_primes = [p for p in PRIMES_20 if p > 2]
    for _ in range(200):
        p = odd_primes[rng.randrange(len(odd_primes))]
        x = rng.randrange(1, p)
        a = x * x % p
        r = sqrt_mod(a, p)
        assert r is not None
        assert r * r % p == a
        assert r in (x, p - x)


def test_modulus_canonical_range():
    M = Modulus(97)
    for x in (-1, 0, 96, 97, 98, 10**30, -(10**30)):
        r = M.reduce(x)
        assert 0 <= r < 97
        assert (x - r) % 97 == 0


def test_modulus_rejects_small():
    with pytest.raises(ValueError):
        Modulus(1)


def test_modulus_fold_agrees_with_plain_mod():
    # F_601 is ~1206 bits with a half-size offset from 2^m: the folding
    # reduction path is active and must agree with % everywhere.
    N = fk_exact(601).F
    M = Modulus(N)
    assert M._fold_m is not None
    rng = random.Random(99)
    for _ in range(300):
        x = rng.randrange(-(N ** 2) * 64, (N ** 2) * 64)
        assert M.reduce(x) == x % N
    # and a modulus without the sparse shape falls back to %
    M2 = Modulus((1 << 600) // 3)
    assert M2._fold_m is None
    assert M2.reduce(-1) == M2.n - 1


def test_modulus_helpers():
    M = Modulus(4191181)
    assert M.pow(5, 3) == 125
    assert M.inv(3) * 3 % M.n == 1
    assert M.jacobi(2) == -1
    r = M.sqrt(4)
    assert r in (2, M.n - 2)
    assert int(M) == 4191181
    assert M == Modulus(4191181) and hash(M) == hash(Modulus(4191181))
