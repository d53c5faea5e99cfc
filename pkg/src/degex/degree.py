"""Degree statistics over l-subsets: tables, minima, epsilon-minima, poor sets.

deg(S) for an l-subset S is the number of edges containing S.  The table
over all C(n, l) subsets (colex-indexed) is the substrate for the minimum
l-degree, its epsilon relaxation, and the poor/rich split at a density
threshold p.  All threshold comparisons are exact: p is a Fraction and
degrees are ints, so there is never a float tie at a boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .combinatorics import binom, colex_rank, colex_unrank
from .errors import ValidationError
from .hypergraph import Hypergraph
from .rational import to_fraction


@dataclass(frozen=True)
class DegreeTable:
    """deg(S) for every l-subset S of [0, n), indexed by colex rank."""

    n: int
    r: int
    ell: int
    degrees: tuple[int, ...]

    @property
    def max_possible(self) -> int:
        """Largest achievable degree, C(n - l, r - l)."""
        if self.n < self.ell:
            return 0
        return binom(self.n - self.ell, self.r - self.ell)

    def degree(self, S: Sequence[int]) -> int:
        return self.degrees[colex_rank(S).rank]

    def subsets(self) -> Iterator[tuple[int, ...]]:
        for rank in range(len(self.degrees)):
            yield colex_unrank(rank, self.ell, self.n)

    def histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for d in self.degrees:
            hist[d] = hist.get(d, 0) + 1
        return dict(sorted(hist.items()))

    def csv_rows(self) -> Iterator[tuple[int, str, int]]:
        """Rows (rank, subset, degree) for CSV export."""
        for rank, d in enumerate(self.degrees):
            subset = colex_unrank(rank, self.ell, self.n)
            yield rank, " ".join(str(v) for v in subset), d


@dataclass(frozen=True)
class PoorSetReport:
    """l-subsets with deg(S) strictly below p * C(n - l, r - l)."""

    p: Fraction
    ell: int
    threshold: Fraction  # p * C(n - l, r - l)
    poor: tuple[int, ...]  # colex ranks
    total: int  # C(n, l)

    @property
    def fraction(self) -> Fraction:
        return Fraction(len(self.poor), self.total)

    @property
    def fraction_float(self) -> float:
        return float(self.fraction)


def _check_ell(G: Hypergraph, ell: int) -> None:
    if not 1 <= ell < G.r:
        raise ValidationError(f"need 1 <= ell < r, got ell={ell}, r={G.r}")


def degree_of(G: Hypergraph, S: Sequence[int]) -> int:
    """Number of edges of G containing the l-subset S (l < r)."""
    s = tuple(sorted(S))
    if len(set(s)) != len(s):
        raise ValidationError(f"subset {tuple(S)} repeats a vertex")
    if len(s) >= G.r:
        raise ValidationError(f"subset size {len(s)} must be below r={G.r}")
    if s and (s[0] < 0 or s[-1] >= G.n):
        raise ValidationError(f"subset {s} has a vertex outside [0, {G.n})")
    sset = set(s)
    return sum(1 for e in G.edges if sset.issubset(e))


def degree_table(G: Hypergraph, ell: int) -> DegreeTable:
    """All l-subset degrees in one pass: each edge bumps its C(r, l) sub-subsets."""
    _check_ell(G, ell)
    degrees = [0] * binom(G.n, ell)
    comb = math.comb
    for e in G.edges:
        for sub in itertools.combinations(e, ell):
            rank = 0
            for j, v in enumerate(sub):
                rank += comb(v, j + 1)
            degrees[rank] += 1
    return DegreeTable(G.n, G.r, ell, tuple(degrees))


def min_degree(G: Hypergraph, ell: int) -> int:
    """The minimum l-degree over all l-subsets of V(G)."""
    _check_ell(G, ell)
    if G.n < ell:
        raise ValidationError(f"need at least ell={ell} vertices, got n={G.n}")
    return min(degree_table(G, ell).degrees)


def kth_min_degree(table: DegreeTable, exceptions: int) -> int:
    """Largest d such that all but at most `exceptions` subsets have degree >= d.

    That is the (exceptions+1)-th smallest table entry; when every subset
    may be an exception (exceptions >= table size) the value is capped at
    the maximum possible degree C(n - l, r - l).
    """
    if exceptions >= len(table.degrees):
        return table.max_possible
    return sorted(table.degrees)[exceptions]


def eps_min_degree(G: Hypergraph, ell: int, eps) -> int:
    """The epsilon-relaxed minimum l-degree: floor(eps * C(n, l)) exceptions allowed."""
    eps = to_fraction(eps, "eps")
    if eps < 0:
        raise ValidationError(f"eps must be nonnegative, got {eps}")
    table = degree_table(G, ell)
    k = math.floor(eps * binom(G.n, ell))
    return kth_min_degree(table, k)


def poor_sets(G: Hypergraph, ell: int, p) -> PoorSetReport:
    """Classify l-subsets as poor (deg < p * C(n-l, r-l)) at threshold p."""
    p = to_fraction(p, "p")
    if not 0 <= p <= 1:
        raise ValidationError(f"p must be in [0, 1], got {p}")
    table = degree_table(G, ell)
    threshold = p * table.max_possible
    poor = tuple(
        rank for rank, d in enumerate(table.degrees) if d < threshold
    )
    return PoorSetReport(
        p=p, ell=ell, threshold=threshold, poor=poor, total=len(table.degrees)
    )
