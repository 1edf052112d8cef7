import io

import pytest

from cmprime.oracles import is_prime_trial
from cmprime.sequence import fk_exact, in_set, predicted_small_divisors
from cmprime.sieve import primes_up_to, sieve_candidates


def test_primes_small():
    assert list(primes_up_to(10)) == [2, 3, 5, 7]
    assert list(primes_up_to(2)) == [2]
    assert list(primes_up_to(1)) == []
    assert list(primes_up_to(3)) == [2, 3]
    assert list(primes_up_to(30))[-1] == 29


def test_primes_match_trial_division():
    got = set(primes_up_to(3000))
    want = {n for n in range(2, 3001) if is_prime_trial(n)}
    assert got == want


def test_primes_count_to_1e6():
    assert sum(1 for _ in primes_up_to(10 ** 6)) == 78498


def test_primes_segment_boundaries():
    # boundary values around the segment size must not be dropped
    for bound in (65521, 65537, 131071, 131101):
        ps = list(primes_up_to(bound))
        assert ps[-1] <= bound
        assert is_prime_trial(ps[-1])
        nxt = ps[-1] + 2
        while not is_prime_trial(nxt):
            nxt += 2
        assert nxt > bound


def test_sieve_example_eliminations():
    rep = sieve_candidates(240, 61)
    elim = dict(rep.eliminations)
    assert elim[181] == 61  # 181 = 1 mod 30, so 61 | F_181
    assert elim[173] == 19
    assert 9 in rep.survivors


def test_sieve_partition_invariant():
    rep = sieve_candidates(600, 1000)
    s_members = {k for k in range(1, 601) if in_set(k, "S")}
    surv = set(rep.survivors)
    elim = {k for k, _ in rep.eliminations}
    assert surv | elim == s_members
    assert not (surv & elim)


def test_sieve_soundness_exact_division():
    rep = sieve_candidates(600, 10 ** 4)
    for k, p in rep.eliminations:
        F = fk_exact(k).F
        assert F % p == 0 and 1 < p < F


def test_sieve_completeness_against_lemma():
    # with bound >= 61 every index with a lemma-predicted divisor must fall
    rep = sieve_candidates(1000, 61)
    elim = {k for k, _ in rep.eliminations}
    for k in range(1, 1001):
        if in_set(k, "S") and predicted_small_divisors(k):
            assert k in elim, k


def test_sieve_guard_spares_fk_equal_p():
    # F_k = p is not an elimination (the guard demands F_k > p); no k in S
    # has tiny F_k, so instead check the guard logic on the crossover data
    rep = sieve_candidates(20, 100000)
    for k, p in rep.eliminations:
        assert fk_exact(k).F > p


def test_sieve_survivors_include_known_primes():
    rep = sieve_candidates(2000, 10 ** 5)
    assert 9 in rep.survivors
    assert 123 in rep.survivors


def test_sieve_rejects_bad_args():
    with pytest.raises(ValueError):
        sieve_candidates(5, 100)
    with pytest.raises(ValueError):
        sieve_candidates(100, 2)


def test_report_write_format():
    rep = sieve_candidates(240, 61)
    buf = io.StringIO()
    rep.write(buf, log=True)
    lines = buf.getvalue().splitlines()
    surv = [ln for ln in lines if not ln.startswith("elim")]
    elim = [ln for ln in lines if ln.startswith("elim")]
    assert all(ln.startswith("k=") and ln[2:].isdigit() for ln in surv)
    assert f"k={rep.survivors[0]}" == surv[0]
    assert any(ln == "elim k=181 p=61" for ln in elim)
    assert buf.getvalue().endswith("\n")


def test_stream_consistency_with_module_stream():
    # the vectorized sieve must see exactly the residues fk_mod_stream sees
    from cmprime.sequence import fk_mod_stream
    rep = sieve_candidates(400, 500)
    elim = dict(rep.eliminations)
    for p in (19, 61, 101, 499):
        zero_ks = {k for k, r in fk_mod_stream(400, p) if r == 0 and in_set(k, "S")
                   and fk_exact(k).F > p}
        for k in zero_ks:
            assert k in elim and elim[k] <= p
