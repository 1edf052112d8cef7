"""Small-prime pre-filter for the candidate indices k in S.

For each prime p <= B the residues F_k mod p follow the same three-term
recurrence as F_k itself, so one pass of constant work per (k, p) decides
every divisibility F_k = 0 mod p up to k_max.  Candidates k in S whose
F_k has such a divisor (with F_k > p, so the divisor is proper) are
eliminated before the expensive curve test ever runs.

The inner loop is vectorized across primes with numpy: each k-step updates
the whole vector of per-prime states at once, which is the same
prime-partitioned scheme a worker pool would use, merged deterministically.
Residues stay below B <= 2^40 and the update terms below 4B + 260, well
inside int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

from .sequence import fk_sequence, in_set

_PRIME_BLOCK = 4096  # primes per vectorized pass; bounds working memory


def primes_up_to(bound: int) -> Iterator[int]:
    """All primes <= bound, ascending (segmented Eratosthenes)."""
    if bound < 2:
        return
    yield 2
    # odd-only segmented sieve; root primes first
    root = int(bound ** 0.5)
    while (root + 1) * (root + 1) <= bound:
        root += 1
    base = bytearray([1]) * ((root + 1) // 2)  # base[i] ~ 2i+1 prime, i >= 1
    base[0] = 0  # 1 is not prime
    root_primes = []
    for i in range(1, len(base)):
        if base[i]:
            p = 2 * i + 1
            root_primes.append(p)
            if p <= root:
                yield p
            for j in range(p * p // 2, len(base), p):
                base[j] = 0
    seg_size = max(1 << 16, root // 2 + 1)
    low = root + 1 if root % 2 == 0 else root + 2  # first odd above root
    while low <= bound:
        high = min(low + 2 * seg_size - 2, bound)
        seg = bytearray([1]) * ((high - low) // 2 + 1)  # seg[i] ~ low + 2i
        for p in root_primes:
            if p * p > high:
                break
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            for j in range((start - low) // 2, len(seg), p):
                seg[j] = 0
        for i, flag in enumerate(seg):
            if flag:
                yield low + 2 * i
        low = high + 2 if high % 2 == 0 else high + 1
        if low % 2 == 0:
            low += 1


@dataclass(frozen=True)
class SieveReport:
    """Survivors and eliminations over S intersect [1, k_max]."""

    k_max: int
    bound: int
    survivors: tuple  # sorted k
    eliminations: tuple  # sorted (k, p), smallest recorded p per k

    def write(self, out: TextIO, log: bool = False) -> None:
        """One 'k=<decimal>' line per survivor; 'elim k=.. p=..' with log."""
        for k in self.survivors:
            out.write(f"k={k}\n")
        if log:
            for k, p in self.eliminations:
                out.write(f"elim k={k} p={p}\n")


def sieve_candidates(k_max: int, bound: int) -> SieveReport:
    """Eliminate k in S (1 <= k <= k_max) with a proper prime divisor <= bound.

    A candidate is eliminated when F_k = 0 mod p and F_k > p.  The F_k > p
    guard only needs exact F_k while F_k <= bound: the sequence increases
    monotonically, so beyond the first k with F_k > bound the guard is
    automatic.  The smallest eliminating p is recorded per k.
    """
    if k_max < 9:
        raise ValueError("k_max must be >= 9")
    if bound < 3:
        raise ValueError("bound must be >= 3")
    in_s = np.zeros(k_max + 1, dtype=bool)
    for k in range(1, k_max + 1):
        if in_set(k, "S"):
            in_s[k] = True
    s_indices = np.flatnonzero(in_s)

    # Exact F_k for the prefix where F_k <= bound; beyond it F_k > p always.
    small_fk = {}
    crossover = None
    for v in fk_sequence(k_max):
        if v.F > bound:
            crossover = v.k
            break
        small_fk[v.k] = v.F
    if crossover is None:
        crossover = k_max + 1

    smallest: dict = {}
    block = []

    def run_block(ps) -> None:
        p = np.array(ps, dtype=np.int64)
        f_prev = np.full_like(p, 9) % p
        f = np.full_like(p, 61) % p
        q = np.full_like(p, 256) % p
        # k = 0, 1 never land in S; start the recurrence at k = 2.
        for k in range(2, k_max + 1):
            f_prev, f = f, (f - 4 * f_prev + q + 4) % p
            q = (q << 2) % p
            if not in_s[k]:
                continue
            hits = np.flatnonzero(f == 0)
            for idx in hits:
                pi = int(p[idx])
                if k < crossover and small_fk[k] <= pi:
                    continue  # F_k = p itself; not a proper divisor
                best = smallest.get(k)
                if best is None or pi < best:
                    smallest[k] = pi

    for prime in primes_up_to(bound):
        block.append(prime)
        if len(block) >= _PRIME_BLOCK:
            run_block(block)
            block = []
    if block:
        run_block(block)

    survivors = tuple(int(k) for k in s_indices if int(k) not in smallest)
    eliminations = tuple(sorted((k, p) for k, p in smallest.items()))
    return SieveReport(k_max=k_max, bound=bound, survivors=survivors,
                       eliminations=eliminations)
