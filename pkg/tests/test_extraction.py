import itertools
import math
from fractions import Fraction

import pytest

from degex.combinatorics import binom, colex_unrank
from degex.degree import degree_of
from degex.errors import LimitExceeded, ValidationError
from degex.extraction import (
    audit_bad_total,
    audit_eq2_phi,
    audit_eq3,
    extract_exhaustive,
    extract_random,
    good_threshold,
    theorem_params,
)
from degex.generators import complete, erdos_renyi
from degex.hypergraph import build
from degex.jsonio import dumps, to_jsonable

EXAMPLE = build(5, 3, [(0, 1, 2), (0, 1, 3), (0, 1, 4), (2, 3, 4)])


# ---------------------------------------------------------------------------
# independent oracles


def brute_min_induced_degree(G, X, ell):
    """min l-degree of G[X], from per-subset degree_of calls."""
    H, _ = G.induced(X)
    return min(degree_of(H, S) for S in itertools.combinations(range(H.n), ell))


def brute_poor_pairs(G, ell, p):
    """l-subsets below the density threshold, from scratch."""
    p = Fraction(p)
    cap = binom(G.n - ell, G.r - ell)
    return {
        S
        for S in itertools.combinations(range(G.n), ell)
        if degree_of(G, S) < p * cap
    }


def brute_phi(G, S, m, p, delta):
    """Bad (m-l)-extensions of S, counted with frozensets."""
    ell = len(S)
    boundary = (Fraction(p) - Fraction(delta)) * binom(m - ell, G.r - ell)
    sset = set(S)
    nbrs = [frozenset(e) - sset for e in G.edges if sset <= set(e)]
    rest = [v for v in range(G.n) if v not in sset]
    count = 0
    for T in itertools.combinations(rest, m - ell):
        tset = set(T)
        inside = sum(1 for nb in nbrs if nb <= tset)
        if inside <= boundary:
            count += 1
    return count


# ---------------------------------------------------------------------------
# theorem parameters


class TestTheoremParams:
    def test_frozen_m0_values(self):
        # frozen from a 120-digit decimal evaluation of the ceil formula
        cases = [
            ((3, 2, Fraction(1, 10)), 11974),
            ((3, 2, Fraction(1, 20)), 62312),
            ((3, 2, Fraction(1, 1000)), 359203275),
            ((3, 1, Fraction(1, 10)), 23947),
            ((4, 2, Fraction(1, 10)), 47894),
            ((4, 3, Fraction(1, 20)), 93467),
            ((5, 2, Fraction(1, 4)), 10381),
            ((5, 4, Fraction(1, 100)), 4789377),
            ((4, 1, Fraction(3, 10)), 3131),
            ((6, 3, Fraction(1, 8)), 93426),
        ]
        for (r, ell, delta), expected in cases:
            assert theorem_params(r, ell, delta, m=r).m0 == expected

    def test_delta_one_tenth_not_small_enough(self):
        tp = theorem_params(3, 2, Fraction(1, 10), m=10)
        # 10 < 52 * ln(10) ~ 119.7, so the smallness condition fails
        assert tp.delta_valid is False

    def test_tiny_delta_valid(self):
        tp = theorem_params(3, 2, Fraction(1, 1000), m=10)
        assert tp.delta_valid is True

    def test_validity_boundary_is_algebraic(self):
        # l = 1, delta = 1/2 puts l*ln(1/delta) exactly at ln 2;
        # the non-strict reading keeps that side satisfied
        tp = theorem_params(2, 1, Fraction(1, 2), m=5)
        assert tp.delta_valid is False  # first condition fails: 2 < 26 ln 2
        big = theorem_params(2, 1, Fraction(1, 2) + Fraction(1, 1000), m=5)
        assert big.delta_valid is False  # delta^-1 < 2 fails the ln-2 side

    def test_eps_field(self):
        tp = theorem_params(3, 2, Fraction(1, 10), m=10)
        assert tp.eps == Fraction(1, 200)
        assert float(tp.eps) == 0.005

    def test_float_delta_accepted(self):
        assert theorem_params(3, 2, 0.1, m=10).m0 == 11974

    def test_domain_violations(self):
        with pytest.raises(ValidationError):
            theorem_params(3, 3, Fraction(1, 10), m=10)
        with pytest.raises(ValidationError):
            theorem_params(3, 2, Fraction(0), m=10)
        with pytest.raises(ValidationError):
            theorem_params(3, 2, Fraction(11, 10), m=10)
        with pytest.raises(ValidationError):
            theorem_params(3, 2, Fraction(1, 10), m=2)


class TestGoodThreshold:
    def test_strictly_above_boundary(self):
        # boundary 0.99 * 2 = 1.98 -> need 2
        boundary, need = good_threshold(Fraction(1), Fraction(1, 100), 4, 2, 3)
        assert boundary == Fraction(198, 100)
        assert need == 2

    def test_integer_boundary_needs_more(self):
        # boundary exactly 1: good means strictly above it
        boundary, need = good_threshold(Fraction(1), Fraction(1, 2), 4, 2, 3)
        assert boundary == 1
        assert need == 2

    def test_nonpositive_boundary(self):
        _, need = good_threshold(Fraction(1, 10), Fraction(1, 2), 4, 2, 3)
        assert need <= 0  # everything qualifies when p < delta


# ---------------------------------------------------------------------------
# randomized extraction


class TestExtractRandom:
    def test_complete_graph_first_attempt(self):
        G = complete(9, 3)
        report = extract_random(G, 2, 5, 1, Fraction(1, 10), budget=50, seed=0)
        assert report.success is True
        assert report.attempts == 1
        assert report.achieved_min_degree == 3  # C(5-2, 1)
        assert len(report.subset) == 5

    def test_empty_graph_exhausts_budget(self):
        G = build(8, 3, [])
        report = extract_random(G, 2, 4, Fraction(1, 2), Fraction(1, 10), budget=7, seed=1)
        assert report.success is False
        assert report.achieved_min_degree == 0
        assert report.attempts == 7
        assert len(report.subset) == 4

    def test_er_success_and_recheck(self):
        G = erdos_renyi(16, 3, Fraction(7, 10), seed=5)
        report = extract_random(
            G, 2, 8, Fraction(7, 10), Fraction(1, 4), budget=100, seed=12
        )
        assert report.success is True
        assert brute_min_induced_degree(G, report.subset, 2) == report.achieved_min_degree
        assert report.achieved_min_degree >= report.threshold

    def test_deterministic_reports(self):
        G = erdos_renyi(14, 3, Fraction(1, 2), seed=3)
        a = extract_random(G, 2, 6, Fraction(1, 2), Fraction(1, 5), budget=20, seed=9)
        b = extract_random(G, 2, 6, Fraction(1, 2), Fraction(1, 5), budget=20, seed=9)
        assert a == b
        assert dumps(a) == dumps(b)

    def test_reported_degree_always_rechecked(self):
        for seed in range(5):
            G = erdos_renyi(12, 3, Fraction(2, 5), seed=40 + seed)
            report = extract_random(
                G, 2, 6, Fraction(3, 5), Fraction(1, 10), budget=10, seed=seed
            )
            assert report.achieved_min_degree == brute_min_induced_degree(
                G, report.subset, 2
            )

    def test_m_larger_than_n_rejected(self):
        with pytest.raises(ValidationError):
            extract_random(EXAMPLE, 2, 6, Fraction(1, 2), Fraction(1, 10), 5, 0)

    def test_zero_budget_rejected(self):
        with pytest.raises(ValidationError):
            extract_random(EXAMPLE, 2, 4, Fraction(1, 2), Fraction(1, 10), 0, 0)


class TestExtractExhaustive:
    def test_complete_k5_all_good(self):
        res = extract_exhaustive(complete(5, 3), 2, 4, 1, Fraction(1, 100))
        assert res.threshold == 2
        assert res.good_ranks == (0, 1, 2, 3, 4)
        assert res.count == 5

    def test_empty_graph_none_good(self):
        res = extract_exhaustive(build(6, 3, []), 2, 4, Fraction(1, 2), Fraction(1, 10))
        assert res.good_ranks == ()

    def test_example_graph_frozen(self):
        # threshold (1/2 - 1/10) * C(2,1) = 0.8 -> need codegree >= 1 everywhere;
        # every 4-subset of the example contains a codegree-0 pair
        res = extract_exhaustive(EXAMPLE, 2, 4, Fraction(1, 2), Fraction(1, 10))
        assert res.threshold == 1
        assert res.good_ranks == ()

    def test_matches_per_subset_oracle(self):
        for seed in range(4):
            G = erdos_renyi(9, 3, Fraction(3, 5), seed=60 + seed)
            res = extract_exhaustive(G, 2, 5, Fraction(1, 2), Fraction(1, 5))
            good = {
                rank
                for rank in range(binom(9, 5))
                if brute_min_induced_degree(G, colex_unrank(rank, 5, 9), 2)
                >= res.threshold
            }
            assert set(res.good_ranks) == good

    def test_generic_ell_path_matches_oracle(self):
        # l = 1 on a 3-graph exercises the generic (non-link-table) path
        G = erdos_renyi(8, 3, Fraction(1, 2), seed=21)
        res = extract_exhaustive(G, 1, 5, Fraction(1, 2), Fraction(1, 4))
        good = {
            rank
            for rank in range(binom(8, 5))
            if brute_min_induced_degree(G, colex_unrank(rank, 5, 8), 1)
            >= res.threshold
        }
        assert set(res.good_ranks) == good

    def test_r4_codegree_path(self):
        G = erdos_renyi(8, 4, Fraction(3, 5), seed=22)
        res = extract_exhaustive(G, 3, 6, Fraction(1, 2), Fraction(1, 5))
        good = {
            rank
            for rank in range(binom(8, 6))
            if brute_min_induced_degree(G, colex_unrank(rank, 6, 8), 3)
            >= res.threshold
        }
        assert set(res.good_ranks) == good

    def test_budget_refusal_names_count(self):
        with pytest.raises(LimitExceeded, match=str(binom(10, 5))):
            extract_exhaustive(
                erdos_renyi(10, 3, Fraction(1, 2), seed=0),
                2, 5, Fraction(1, 2), Fraction(1, 10), enum_budget=100,
            )

    def test_random_successes_are_sound(self):
        for seed in range(6):
            G = erdos_renyi(11, 3, Fraction(3, 5), seed=80 + seed)
            res = extract_exhaustive(G, 2, 6, Fraction(1, 2), Fraction(1, 4))
            report = extract_random(
                G, 2, 6, Fraction(1, 2), Fraction(1, 4), budget=40, seed=seed
            )
            if report.success:
                from degex.combinatorics import colex_rank

                assert colex_rank(report.subset).rank in res.good_ranks


# ---------------------------------------------------------------------------
# auditors


class TestAuditEq3:
    def test_no_poor_sets_is_tight(self):
        G = erdos_renyi(8, 3, Fraction(1, 2), seed=30)
        report = audit_eq3(G, 2, 4, 0)
        assert report.lhs == binom(8, 4)
        assert report.rhs == binom(8, 4)
        assert report.holds is True

    def test_k5_minus_edge_frozen(self):
        G = build(5, 3, [e for e in itertools.combinations(range(5), 3) if e != (0, 1, 2)])
        report = audit_eq3(G, 2, 4, 1)
        # poor pairs are exactly the three inside the removed edge, and every
        # 4-subset of [0,5) contains at least one of them
        assert report.context["poor_count"] == 3
        assert report.lhs == 0
        assert report.rhs == Fraction(-19)
        assert report.holds is True

    def test_lhs_matches_brute_force(self):
        for seed in range(5):
            G = erdos_renyi(10, 3, Fraction(1, 2), seed=200 + seed)
            p = Fraction(1, 2)
            report = audit_eq3(G, 2, 5, p)
            poor = brute_poor_pairs(G, 2, p)
            expected = sum(
                1
                for X in itertools.combinations(range(10), 5)
                if not any(set(S) <= set(X) for S in poor)
            )
            assert report.lhs == expected

    def test_holds_on_random_instances(self):
        for seed in range(30):
            n = 10 + seed % 4
            G = erdos_renyi(n, 3, Fraction(1, 2), seed=300 + seed)
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                assert audit_eq3(G, 2, 6, p).holds is True

    def test_budget_refusal(self):
        with pytest.raises(LimitExceeded):
            audit_eq3(erdos_renyi(12, 3, Fraction(1, 2), seed=0), 2, 6, Fraction(1, 2), enum_budget=10)


class TestAuditEq2Phi:
    def test_complete_graph_no_bad_sets(self):
        G = complete(10, 3)
        report = audit_eq2_phi(G, (0, 1), 6, 1, Fraction(1, 10))
        assert report.lhs == 0
        assert report.holds is True

    def test_poor_subset_rejected(self):
        G = build(6, 3, [(0, 1, 2)])
        with pytest.raises(ValidationError, match="poor"):
            audit_eq2_phi(G, (3, 4), 5, Fraction(1, 2), Fraction(1, 10))

    def test_matches_brute_oracle(self):
        G = erdos_renyi(14, 3, Fraction(3, 5), seed=70)
        p, delta = Fraction(11, 20), Fraction(1, 5)
        cap = binom(12, 1)
        rich = [
            S
            for S in itertools.combinations(range(14), 2)
            if degree_of(G, S) >= p * cap
        ]
        assert rich  # the regime should have rich pairs
        for S in rich[:5]:
            report = audit_eq2_phi(G, S, 8, p, delta)
            assert report.lhs == brute_phi(G, S, 8, p, delta)
            assert report.rhs == pytest.approx(
                binom(12, 6) * math.exp(-float(delta) ** 2 * 8 / 2)
            )

    def test_generic_rl_path(self):
        # r - l = 2 exercises the subset-mask neighbourhood path
        G = erdos_renyi(10, 4, Fraction(7, 10), seed=71)
        S = max(
            itertools.combinations(range(10), 2),
            key=lambda s: degree_of(G, s),
        )
        report = audit_eq2_phi(G, S, 7, Fraction(1, 2), Fraction(1, 5))
        assert report.lhs == brute_phi(G, S, 7, Fraction(1, 2), Fraction(1, 5))


class TestAuditBadTotal:
    def test_complete_graph_at_p_equals_delta(self):
        G = complete(8, 3)
        report = audit_bad_total(G, 2, 5, Fraction(1, 4), Fraction(1, 4))
        assert report.lhs == 0
        assert report.holds is True

    def test_all_poor_means_zero(self):
        G = build(7, 3, [])  # every pair has degree 0, poor for any p > 0
        report = audit_bad_total(G, 2, 4, Fraction(1, 2), Fraction(1, 10))
        assert report.context["rich_count"] == 0
        assert report.lhs == 0
        assert report.holds is True

    def test_matches_brute_oracle(self):
        G = erdos_renyi(12, 3, Fraction(3, 5), seed=72)
        p, delta = Fraction(1, 2), Fraction(3, 10)
        report = audit_bad_total(G, 2, 6, p, delta)
        poor = brute_poor_pairs(G, 2, p)
        expected = sum(
            brute_phi(G, S, 6, p, delta)
            for S in itertools.combinations(range(12), 2)
            if S not in poor
        )
        assert report.lhs == expected
        assert report.rhs == Fraction(binom(12, 6), 2)
        assert report.context["intermediate_bound"] == pytest.approx(
            binom(12, 6) * binom(6, 2) * math.exp(-float(delta) ** 2 * 6 / 2)
        )

    def test_good_count_dominates_poorfree_minus_bad(self):
        for seed in range(8):
            G = erdos_renyi(11, 3, Fraction(1, 2), seed=400 + seed)
            p, delta = Fraction(1, 2), Fraction(1, 4)
            good = extract_exhaustive(G, 2, 6, p, delta).count
            poor_free = audit_eq3(G, 2, 6, p).lhs
            bad_sum = audit_bad_total(G, 2, 6, p, delta).lhs
            assert good >= poor_free - bad_sum


class TestReportSerialization:
    def test_rationals_as_num_den(self):
        report = audit_eq3(EXAMPLE, 2, 4, Fraction(1, 2))
        payload = to_jsonable(report)
        assert payload["context"]["p"] == {"num": 1, "den": 2}
        assert payload["inequality_id"] == "eq3_rich_count"
        assert isinstance(payload["holds"], bool)

    def test_extraction_report_fields(self):
        report = extract_random(
            complete(6, 3), 2, 4, 1, Fraction(1, 10), budget=3, seed=5
        )
        payload = to_jsonable(report)
        assert set(payload) == {
            "success", "subset", "achieved_min_degree", "threshold", "attempts", "seed",
        }
        assert payload["seed"] == 5
