"""Exact k-subset combinatorics: binomials, colex ranking, enumeration, sampling.

Subsets of [0, n) are represented as strictly increasing tuples of ints.
Ranks are colexicographic: subsets are compared by their largest differing
element, so the rank of a k-subset does not depend on n.  Concretely

    rank({v_0 < v_1 < ... < v_{k-1}}) = sum_j C(v_j, j+1)

which maps the k-subsets of [0, n) bijectively onto [0, C(n, k)).
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ValidationError


class SubsetId(NamedTuple):
    """Colex rank of a k-subset together with its size k."""

    rank: int
    k: int


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); 0 when k > n.

    Python integers are arbitrary precision, so the result never wraps.
    """
    if n < 0 or k < 0:
        raise ValidationError(f"binom requires nonnegative arguments, got ({n}, {k})")
    if k > n:
        return 0
    return math.comb(n, k)


def _check_subset(S: Sequence[int]) -> None:
    for i, v in enumerate(S):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValidationError(f"subset elements must be ints, got {v!r}")
        if v < 0:
            raise ValidationError(f"subset elements must be nonnegative, got {v}")
        if i > 0 and S[i - 1] >= v:
            raise ValidationError(
                f"subset must be strictly increasing, got {tuple(S)}"
            )


def colex_rank(S: Sequence[int]) -> SubsetId:
    """Colex rank of a strictly increasing k-subset."""
    S = tuple(S)
    _check_subset(S)
    rank = sum(math.comb(v, j + 1) for j, v in enumerate(S))
    return SubsetId(rank, len(S))


def colex_unrank(rank: int, k: int, n: int) -> tuple[int, ...]:
    """The k-subset of [0, n) with the given colex rank.

    Inverse of colex_rank: peel off the largest element by binary search
    for the biggest v with C(v, k) <= rank.
    """
    if k < 0 or n < 0:
        raise ValidationError(f"colex_unrank requires k, n >= 0, got k={k}, n={n}")
    total = binom(n, k)
    if not 0 <= rank < total:
        raise ValidationError(
            f"rank {rank} out of range [0, {total}) for k={k}, n={n}"
        )
    out = [0] * k
    while k > 0:
        lo, hi = k - 1, n  # invariant: C(lo, k) <= rank < C(hi, k)
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if math.comb(mid, k) <= rank:
                lo = mid
            else:
                hi = mid
        rank -= math.comb(lo, k)
        k -= 1
        out[k] = lo
        n = lo
    return tuple(out)


def ksubsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of [0, n) in increasing colex rank.

    Colex successor rule: find the smallest i with S[i] + 1 < S[i+1]
    (taking S[k] = n), increment S[i] and reset S[0..i-1] to 0..i-1.
    Yields exactly C(n, k) subsets.
    """
    if k < 0 or n < 0:
        raise ValidationError(f"ksubsets requires k, n >= 0, got k={k}, n={n}")
    if k > n:
        return
    S = list(range(k))
    while True:
        yield tuple(S)
        if k == 0:
            return
        i = 0
        while i + 1 < k and S[i] + 1 == S[i + 1]:
            i += 1
        if i == k - 1 and S[i] + 1 == n:
            return
        S[i] += 1
        for j in range(i):
            S[j] = j


def random_ksubset(n: int, k: int, rng: random.Random) -> tuple[int, ...]:
    """Uniform random k-subset of [0, n), drawn as a uniform colex rank.

    Consumes exactly one rng.randrange(C(n, k)) draw, so the seed-to-stream
    mapping is the documented Mersenne Twister getrandbits stream.
    """
    if k > n:
        raise ValidationError(f"cannot sample a {k}-subset from {n} vertices")
    if k < 0 or n < 0:
        raise ValidationError(f"random_ksubset requires k, n >= 0, got k={k}, n={n}")
    total = math.comb(n, k)
    return colex_unrank(rng.randrange(total), k, n)


def subset_mask(S: Iterable[int]) -> int:
    """Bitmask with bit v set for each vertex v in S."""
    m = 0
    for v in S:
        m |= 1 << v
    return m


def mask_vertices(mask: int) -> tuple[int, ...]:
    """Sorted vertices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)
