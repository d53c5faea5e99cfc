"""High minimum l-degree subgraph extraction and exact counting audits.

The extraction target: given density p and margin delta, an m-subset X of
V(G) is *good* when the induced subgraph G[X] has minimum l-degree strictly
above (p - delta) * C(m - l, r - l).  (Bad-for-S uses the non-strict <=, so
good is its strict complement; for integer degrees that means
deg >= floor(boundary) + 1, which is what ExtractionReport.threshold holds.)

Three auditors count the quantities behind the extraction guarantee exactly
on small instances:

  * eq3_rich_count  -- m-subsets free of poor l-subsets vs the union bound;
    this inequality is unconditional, so holds=False signals a bug.
  * eq2_phi_bound   -- phi_S, the number of bad (m-l)-extensions of a rich
    l-subset S, vs its martingale tail bound; diagnostic only.
  * bad_total_bound -- sum of phi_S over rich S vs C(n, m)/2; diagnostic
    (the bound is only claimed for m >= m0, far beyond desk scale).
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .combinatorics import binom, ksubsets, random_ksubset, subset_mask
from .degree import degree_of, min_degree, poor_sets
from .errors import DegexError, LimitExceeded, ValidationError
from .hypergraph import Hypergraph
from .rational import to_fraction

DEFAULT_ENUM_BUDGET = 100_000_000


# ---------------------------------------------------------------------------
# Extraction guarantee parameters


@dataclass(frozen=True)
class TheoremParams:
    """Derived constants for the extraction guarantee at accuracy delta."""

    r: int
    ell: int
    delta: Fraction
    m: int
    m0: int
    eps: Fraction  # m^(-l) / 2
    delta_valid: bool


def _ln_bracket(q: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure of ln(q) for rational q > 0.

    decimal's division and ln() are correctly rounded at the context
    precision; a 4-extra-digit margin swallows both rounding steps.
    """
    if q <= 0:
        raise ValidationError(f"ln requires a positive argument, got {q}")
    if q == 1:
        return Fraction(0), Fraction(0)
    with localcontext() as ctx:
        ctx.prec = prec
        y = (Decimal(q.numerator) / Decimal(q.denominator)).ln()
        margin = Decimal(1).scaleb(max(y.adjusted(), 0) - prec + 4)
    approx = Fraction(y)
    pad = Fraction(margin)
    return approx - pad, approx + pad


def _certified_ceil(coeff: Fraction, q: Fraction) -> int:
    """ceil(coeff * ln(q)) exactly (coeff > 0, rational q > 1)."""
    prec = 40
    while prec <= 4000:
        lo, hi = _ln_bracket(q, prec)
        clo, chi = math.ceil(coeff * lo), math.ceil(coeff * hi)
        if clo == chi:
            return clo
        prec *= 2
    raise ArithmeticError(f"cannot certify ceil({coeff} * ln({q}))")


def _certified_ge_ln(lhs: Fraction, coeff: Fraction, q: Fraction) -> bool:
    """Decide lhs >= coeff * ln(q) exactly (coeff > 0, rational q > 1)."""
    prec = 40
    while prec <= 4000:
        lo, hi = _ln_bracket(q, prec)
        if lhs >= coeff * hi:
            return True
        if lhs < coeff * lo:
            return False
        prec *= 2
    raise ArithmeticError(f"cannot separate {lhs} from {coeff} * ln({q})")


def theorem_params(r: int, ell: int, delta, m: int) -> TheoremParams:
    """Compute m0 = ceil(26 l (r-l)^2 delta^-2 ln(1/delta)) and companions.

    ln is the natural logarithm.  delta_valid records whether delta meets
    the two smallness conditions the m0 guarantee is derived under; an
    invalid delta is flagged, not rejected.
    """
    if not 1 <= ell < r:
        raise ValidationError(f"need 1 <= ell < r, got ell={ell}, r={r}")
    delta = to_fraction(delta, "delta")
    if not 0 < delta < 1:
        raise ValidationError(f"need 0 < delta < 1, got {delta}")
    if m < r:
        raise ValidationError(f"need m >= r, got m={m}, r={r}")
    inv = 1 / delta
    scale = 26 * ell * (r - ell) ** 2
    m0 = _certified_ceil(scale * inv * inv, inv)
    # second smallness condition l*ln(1/delta) >= ln 2 is algebraic:
    # it holds iff delta^-l >= 2
    cond_small = _certified_ge_ln(inv, Fraction(scale), inv)
    cond_two = inv**ell >= 2
    return TheoremParams(
        r=r,
        ell=ell,
        delta=delta,
        m=m,
        m0=m0,
        eps=Fraction(1, 2 * m**ell),
        delta_valid=cond_small and cond_two,
    )


# ---------------------------------------------------------------------------
# Good-subset threshold machinery


def good_threshold(p: Fraction, delta: Fraction, m: int, ell: int, r: int) -> tuple[Fraction, int]:
    """Boundary (p - delta) * C(m - l, r - l) and the least integer above it."""
    boundary = (p - delta) * binom(m - ell, r - ell)
    return boundary, math.floor(boundary) + 1


class _LinkTable:
    """Per-(r-1)-subset neighbour bitmasks, for fast induced codegree checks."""

    def __init__(self, G: Hypergraph):
        self.ell = G.r - 1
        masks = [0] * binom(G.n, self.ell)
        comb = math.comb
        for e in G.edges:
            for i in range(G.r):
                sub = e[:i] + e[i + 1 :]
                rank = 0
                for j, v in enumerate(sub):
                    rank += comb(v, j + 1)
                masks[rank] |= 1 << e[i]
        self.masks = masks

    def induced_min_degree(self, X: Sequence[int], xmask: int) -> int:
        comb = math.comb
        best = None
        for sub in itertools.combinations(X, self.ell):
            rank = 0
            for j, v in enumerate(sub):
                rank += comb(v, j + 1)
            d = (self.masks[rank] & xmask).bit_count()
            if best is None or d < best:
                best = d
                if best == 0:
                    break
        return 0 if best is None else best

    def is_good(self, X: Sequence[int], xmask: int, need: int) -> bool:
        if need <= 0:
            return True
        comb = math.comb
        masks = self.masks
        for sub in itertools.combinations(X, self.ell):
            rank = 0
            for j, v in enumerate(sub):
                rank += comb(v, j + 1)
            if (masks[rank] & xmask).bit_count() < need:
                return False
        return True


def _induced_min_degree(G: Hypergraph, X: Sequence[int], ell: int) -> int:
    sub, _ = G.induced(X)
    return min_degree(sub, ell)


def _check_extract_args(G: Hypergraph, ell: int, m: int) -> None:
    if not 1 <= ell < G.r:
        raise ValidationError(f"need 1 <= ell < r, got ell={ell}, r={G.r}")
    if m > G.n:
        raise ValidationError(f"need m <= n, got m={m}, n={G.n}")
    if m < ell:
        raise ValidationError(f"need m >= ell, got m={m}, ell={ell}")


# ---------------------------------------------------------------------------
# Randomized extraction


@dataclass(frozen=True)
class ExtractionReport:
    """Outcome of a randomized extraction run (deterministic given seed)."""

    success: bool
    subset: tuple[int, ...]
    achieved_min_degree: int
    threshold: int
    attempts: int
    seed: int


def _attempt_seed(seed: int, attempt: int) -> int:
    """Substream seed for one attempt: SHA-256 of 'degex-extract:<seed>:<attempt>'."""
    digest = hashlib.sha256(f"degex-extract:{seed}:{attempt}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def extract_random(
    G: Hypergraph,
    ell: int,
    m: int,
    p,
    delta,
    budget: int,
    seed: int,
) -> ExtractionReport:
    """Sample uniform m-subsets until one is good or the budget runs out.

    Attempt i draws its subset from an independent substream derived from
    (seed, i), so parallel and serial schedules see identical samples.  On
    failure the report carries the best subset seen (maximum achieved
    minimum l-degree, ties to the earliest attempt).  The reported degree is
    recomputed on the induced subgraph, never trusted from the search loop.
    """
    _check_extract_args(G, ell, m)
    p = to_fraction(p, "p")
    delta = to_fraction(delta, "delta")
    if budget < 1:
        raise ValidationError(f"budget must be at least 1, got {budget}")
    _, need = good_threshold(p, delta, m, ell, G.r)

    links = _LinkTable(G) if ell == G.r - 1 else None
    best_deg = -1
    best_subset: tuple[int, ...] = ()
    success = False
    attempts = 0
    for attempt in range(1, budget + 1):
        attempts = attempt
        rng = random.Random(_attempt_seed(seed, attempt))
        X = random_ksubset(G.n, m, rng)
        if links is not None:
            achieved = links.induced_min_degree(X, subset_mask(X))
        else:
            achieved = _induced_min_degree(G, X, ell)
        if achieved > best_deg:
            best_deg = achieved
            best_subset = X
        if achieved >= need:
            success = True
            best_subset = X
            break

    verified = _induced_min_degree(G, best_subset, ell)
    if success and verified < need:
        raise DegexError(
            f"internal error: subset {best_subset} failed recheck "
            f"({verified} < {need})"
        )
    return ExtractionReport(
        success=success,
        subset=best_subset,
        achieved_min_degree=verified,
        threshold=need,
        attempts=attempts,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Exhaustive extraction


@dataclass(frozen=True)
class ExhaustiveExtraction:
    """All good m-subsets, as colex ranks in increasing order."""

    m: int
    ell: int
    threshold: int
    good_ranks: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.good_ranks)


def _check_enum_budget(count: int, what: str, budget: int) -> None:
    if count > budget:
        raise LimitExceeded(
            f"{what} requires enumerating {count} subsets, above the budget "
            f"of {budget}; raise the budget to force it"
        )


def extract_exhaustive(
    G: Hypergraph,
    ell: int,
    m: int,
    p,
    delta,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> ExhaustiveExtraction:
    """Exact list of good m-subsets; the finite oracle behind extract_random."""
    _check_extract_args(G, ell, m)
    p = to_fraction(p, "p")
    delta = to_fraction(delta, "delta")
    _check_enum_budget(binom(G.n, m), f"extract_exhaustive with C({G.n}, {m})", enum_budget)
    _, need = good_threshold(p, delta, m, ell, G.r)

    links = _LinkTable(G) if ell == G.r - 1 else None
    good = []
    for rank, X in enumerate(ksubsets(G.n, m)):
        if links is not None:
            ok = links.is_good(X, subset_mask(X), need)
        else:
            ok = _induced_min_degree(G, X, ell) >= need
        if ok:
            good.append(rank)
    return ExhaustiveExtraction(m=m, ell=ell, threshold=need, good_ranks=tuple(good))


# ---------------------------------------------------------------------------
# Auditors


@dataclass(frozen=True)
class AuditReport:
    """Exact left/right sides of one audited counting inequality."""

    inequality_id: str
    lhs: int | Fraction
    rhs: Fraction | float
    holds: bool
    context: dict = field(default_factory=dict)


def _poor_rank_set(G: Hypergraph, ell: int, p: Fraction) -> frozenset[int]:
    return frozenset(poor_sets(G, ell, p).poor)


def _count_poor_free(G: Hypergraph, ell: int, m: int, poor_ranks: frozenset[int]) -> int:
    """m-subsets containing no poor l-subset, by direct enumeration."""
    if not poor_ranks:
        return binom(G.n, m)
    comb = math.comb
    count = 0
    for X in ksubsets(G.n, m):
        ok = True
        for sub in itertools.combinations(X, ell):
            rank = 0
            for j, v in enumerate(sub):
                rank += comb(v, j + 1)
            if rank in poor_ranks:
                ok = False
                break
        if ok:
            count += 1
    return count


def audit_eq3(
    G: Hypergraph,
    ell: int,
    m: int,
    p,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> AuditReport:
    """Poor-free m-subset count against the union bound (must always hold)."""
    _check_extract_args(G, ell, m)
    p = to_fraction(p, "p")
    _check_enum_budget(binom(G.n, m), f"audit_eq3 with C({G.n}, {m})", enum_budget)
    poor_ranks = _poor_rank_set(G, ell, p)
    lhs = _count_poor_free(G, ell, m, poor_ranks)
    eps_eff = Fraction(len(poor_ranks), binom(G.n, ell))
    rhs = (1 - eps_eff * m**ell) * binom(G.n, m)
    return AuditReport(
        inequality_id="eq3_rich_count",
        lhs=lhs,
        rhs=rhs,
        holds=lhs >= rhs,
        context={
            "n": G.n,
            "r": G.r,
            "ell": ell,
            "m": m,
            "p": p,
            "poor_count": len(poor_ranks),
            "eps_eff": eps_eff,
        },
    )


def _neighbour_masks(G: Hypergraph, S: Sequence[int]) -> list[int]:
    """Bitmasks of the (r-l)-sets completing S to an edge."""
    sset = set(S)
    out = []
    for e in G.edges:
        if sset.issubset(e):
            out.append(subset_mask(v for v in e if v not in sset))
    return out


def _phi_count(
    G: Hypergraph,
    S: Sequence[int],
    m: int,
    boundary: Fraction,
) -> int:
    """phi_S: (m-l)-subsets T of V minus S with |N(S) cap T^(r-l)| <= boundary."""
    ell = len(S)
    complement = [v for v in range(G.n) if v not in set(S)]
    if G.r - ell == 1:
        link = 0
        for nm in _neighbour_masks(G, S):
            link |= nm
        cap = math.floor(boundary)  # cnt <= boundary iff cnt <= floor(boundary)
        if cap < 0:
            return 0
        count = 0
        for T in itertools.combinations(complement, m - ell):
            if (link & subset_mask(T)).bit_count() <= cap:
                count += 1
        return count
    nbrs = _neighbour_masks(G, S)
    count = 0
    for T in itertools.combinations(complement, m - ell):
        tmask = subset_mask(T)
        inside = sum(1 for nm in nbrs if nm & tmask == nm)
        if inside <= boundary:
            count += 1
    return count


def _tail_bound_factor(delta: Fraction, m: int, r: int, ell: int) -> float:
    return math.exp(-float(delta * delta * m) / (2 * (r - ell) ** 2))


def audit_eq2_phi(
    G: Hypergraph,
    S: Sequence[int],
    m: int,
    p,
    delta,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> AuditReport:
    """Exact phi_S against the martingale tail bound (diagnostic, not asserted)."""
    S = tuple(sorted(S))
    ell = len(S)
    _check_extract_args(G, ell, m)
    p = to_fraction(p, "p")
    delta = to_fraction(delta, "delta")
    deg = degree_of(G, S)
    rich_floor = p * binom(G.n - ell, G.r - ell)
    if deg < rich_floor:
        raise ValidationError(
            f"S={S} is poor (deg {deg} < {rich_floor}); the bound only covers rich subsets"
        )
    _check_enum_budget(
        binom(G.n - ell, m - ell), f"audit_eq2_phi with C({G.n - ell}, {m - ell})", enum_budget
    )
    boundary, _ = good_threshold(p, delta, m, ell, G.r)
    lhs = _phi_count(G, S, m, boundary)
    rhs = binom(G.n - ell, m - ell) * _tail_bound_factor(delta, m, G.r, ell)
    return AuditReport(
        inequality_id="eq2_phi_bound",
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs,
        context={
            "n": G.n,
            "r": G.r,
            "ell": ell,
            "m": m,
            "p": p,
            "delta": delta,
            "S": S,
            "deg_S": deg,
            "boundary": boundary,
        },
    )


def audit_bad_total(
    G: Hypergraph,
    ell: int,
    m: int,
    p,
    delta,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> AuditReport:
    """Sum of phi_S over rich S against C(n, m)/2 (diagnostic, not asserted)."""
    _check_extract_args(G, ell, m)
    p = to_fraction(p, "p")
    delta = to_fraction(delta, "delta")
    _check_enum_budget(binom(G.n, m), f"audit_bad_total with C({G.n}, {m})", enum_budget)
    _check_enum_budget(
        binom(G.n, ell) * binom(G.n - ell, m - ell),
        f"audit_bad_total with C({G.n}, {ell}) * C({G.n - ell}, {m - ell})",
        enum_budget,
    )
    poor_ranks = _poor_rank_set(G, ell, p)
    boundary, _ = good_threshold(p, delta, m, ell, G.r)
    lhs = 0
    rich_count = 0
    for rank, S in enumerate(ksubsets(G.n, ell)):
        if rank in poor_ranks:
            continue
        rich_count += 1
        lhs += _phi_count(G, S, m, boundary)
    rhs = Fraction(binom(G.n, m), 2)
    intermediate = (
        binom(G.n, m) * binom(m, ell) * _tail_bound_factor(delta, m, G.r, ell)
    )
    return AuditReport(
        inequality_id="bad_total_bound",
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs,
        context={
            "n": G.n,
            "r": G.r,
            "ell": ell,
            "m": m,
            "p": p,
            "delta": delta,
            "rich_count": rich_count,
            "poor_count": len(poor_ranks),
            "intermediate_bound": intermediate,
        },
    )
