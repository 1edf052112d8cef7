"""The integer sequence F_k and the index residue-class sets S, T1, T2, T3.

F_k is the norm of pi_k = 1 - 4*alpha^k where alpha = (1 + sqrt(-15))/2,
so with t_k = alpha^k + conj(alpha)^k (a Lucas sequence: t_0 = 2, t_1 = 1,
t_k = t_{k-1} - 4 t_{k-2}):

    F_k = 1 - 4*t_k + 4^(k+2)
    F_0 = 9,  F_1 = 61,  F_k = F_{k-1} - 4 F_{k-2} + 4^(k+2) + 4.

Every generated value is computed by BOTH recurrences and the two must
agree; a mismatch raises SequenceInconsistency.  This double bookkeeping
exists because at least one published table of the sequence contains a
transcription error at k = 9 (1050139, which is 3 mod 8 and therefore
impossible: F_k = 5 mod 8 for all k >= 1).  The recurrences give
F_9 = 4191181, which is prime.

The residue sets are compiled-in data.  Their one nontrivial internal
check, run at import time, is the identity

    S = (lift_240(T1) & T2) - T3

as residue sets mod 240, where T1 is stated mod 120 and lifts to
{r, r + 120}.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple


class SequenceInconsistency(Exception):
    """Recurrence and closed form disagree: internal fault, never expected."""


class FkValue(NamedTuple):
    """Exact F_k with its index and the Lucas companion t_k."""

    k: int
    F: int
    t: int


class ResidueClassSet(NamedTuple):
    """A modulus and the set of admissible residues, all reduced."""

    modulus: int
    residues: frozenset

    def __contains__(self, k: int) -> bool:
        return k % self.modulus in self.residues


_S_RESIDUES = (
    9, 19, 39, 45, 59, 63, 67, 85, 105, 123, 129, 133, 159,
    169, 173, 181, 183, 221, 223, 225, 229,
)

_T1_RESIDUES = (
    3, 9, 13, 19, 21, 27, 31, 39, 45, 47, 49, 53, 59, 61, 63, 65, 67,
    81, 85, 91, 101, 103, 105, 109, 113, 117,
)

_T2_RESIDUES = (
    1, 5, 7, 9, 17, 19, 23, 27, 31, 35, 39, 41, 43, 45, 51, 55, 59, 63, 67,
    69, 71, 81, 83, 85, 89, 95, 97, 99, 105, 119, 123, 129, 131, 133, 137,
    141, 143, 145, 149, 157, 159, 161, 169, 173, 181, 183, 191, 193, 195,
    197, 199, 201, 209, 211, 213, 215, 221, 223, 225, 227, 229, 235, 237,
    239,
)

_T3_RESIDUES = (27, 31, 81, 141, 201, 211, 237)

S_SET = ResidueClassSet(240, frozenset(_S_RESIDUES))
T1_SET = ResidueClassSet(120, frozenset(_T1_RESIDUES))
T2_SET = ResidueClassSet(240, frozenset(_T2_RESIDUES))
T3_SET = ResidueClassSet(240, frozenset(_T3_RESIDUES))

SETS = {"S": S_SET, "T1": T1_SET, "T2": T2_SET, "T3": T3_SET}

# Expected table sizes, checked at import.
_TABLE_SIZES = {"S": 21, "T1": 26, "T2": 64, "T3": 7}


def lift_t1_mod_240() -> frozenset:
    """T1 lifted from modulus 120 to 240: r maps to {r, r + 120}."""
    return frozenset(r + off for r in _T1_RESIDUES for off in (0, 120))


def composed_s_from_tables() -> frozenset:
    """(lift_240(T1) & T2) - T3 as a residue set mod 240."""
    return (lift_t1_mod_240() & T2_SET.residues) - T3_SET.residues


def _check_tables() -> None:
    for name, rcs in SETS.items():
        listed = {"S": _S_RESIDUES, "T1": _T1_RESIDUES, "T2": _T2_RESIDUES,
                  "T3": _T3_RESIDUES}[name]
        if len(listed) != _TABLE_SIZES[name] or len(rcs.residues) != len(listed):
            raise SequenceInconsistency(f"residue table {name} has wrong size")
        if any(not (0 <= r < rcs.modulus) for r in listed):
            raise SequenceInconsistency(f"residue table {name} not reduced")
        if tuple(sorted(listed)) != listed:
            raise SequenceInconsistency(f"residue table {name} not sorted")
    if composed_s_from_tables() != S_SET.residues:
        raise SequenceInconsistency("S != (lift(T1) & T2) - T3")


_check_tables()


def fk_sequence(k_max: int) -> Iterator[FkValue]:
    """Yield FkValue for k = 0..k_max, O(1) big-int steps per k.

    Each F_k is produced by the value recurrence and confirmed against the
    Lucas closed form 1 - 4 t_k + 4^(k+2).
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    yield FkValue(0, 9, 2)
    if k_max == 0:
        return
    yield FkValue(1, 61, 1)
    t_prev, t = 2, 1
    f_prev, f = 9, 61
    q = 256  # 4^(k+2) for k = 2
    for k in range(2, k_max + 1):
        t_prev, t = t, t - 4 * t_prev
        f_prev, f = f, f - 4 * f_prev + q + 4
        if f != 1 - 4 * t + q:
            raise SequenceInconsistency(
                f"recurrence and closed form disagree at k = {k}")
        q <<= 2
        yield FkValue(k, f, t)


def fk_exact(k: int) -> FkValue:
    """Exact F_k (runs the recurrence from the bottom; O(k) steps)."""
    value = None
    for value in fk_sequence(k):
        pass
    return value


def fk_mod_stream(k_max: int, p: int) -> Iterator[tuple[int, int]]:
    """Yield (k, F_k mod p) for k = 0..k_max using only arithmetic mod p."""
    if p < 2:
        raise ValueError("modulus must be >= 2")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    f_prev, f = 9 % p, 61 % p
    yield (0, f_prev)
    if k_max == 0:
        return
    yield (1, f)
    q = 256 % p
    for k in range(2, k_max + 1):
        f_prev, f = f, (f - 4 * f_prev + q + 4) % p
        q = (q << 2) % p
        yield (k, f)


def in_set(k: int, which: str) -> bool:
    """Membership of k in S, T1, T2 or T3 (by residue mod the set modulus)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return k in SETS[which]


def predicted_small_divisors(k: int) -> set:
    """Primes among {3, 5, 7, 11, 31, 61} that provably divide F_k.

    The divisibility of F_k by each of these primes is periodic in k; the
    congruence conditions are exact (if and only if).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    preds = set()
    if k % 2 == 0:
        preds.add(3)
    if k % 4 == 2:
        preds.add(5)
    if k % 24 == 16:
        preds.add(7)
    if k % 60 == 48:
        preds.add(11)
    if k % 15 in (6, 12):
        preds.add(31)
    if k % 30 == 1:
        preds.add(61)
    return preds
