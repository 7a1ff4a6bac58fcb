import random

import pytest

from syseval.errors import ScaleMismatchError
from syseval.poset import (
    COUNT_DOMINANCE,
    IDEAL,
    KeyedDominance,
    WORST,
    build_poset_view,
    cover_edges,
    dominates_counts,
    dominates_quality,
    label_D,
    layer_label,
    near_pareto_by_swap,
    pareto_layer,
    peel_layers,
)
from syseval.scales import QualityVector

from helpers import (
    all_count_vectors,
    brute_force_covers,
    improvement_reachable,
)

MINIMIZE = KeyedDominance(lambda v: tuple(-x for x in v), "minimize")


def qv(w, counts, nu=4):
    return QualityVector(w, counts, nu)


class TestDominatesCounts:
    def test_ideal_beats_next(self):
        assert dominates_counts((4, 0, 0), (3, 1, 0))

    def test_example4_stated_domination(self):
        assert dominates_counts((2, 1, 1), (1, 2, 1))

    def test_incomparable_pair(self):
        assert not dominates_counts((2, 1, 1), (1, 3, 0))
        assert not dominates_counts((1, 3, 0), (2, 1, 1))

    def test_irreflexive(self):
        assert not dominates_counts((2, 1, 1), (2, 1, 1))

    def test_length_mismatch(self):
        with pytest.raises(ScaleMismatchError):
            dominates_counts((1, 1), (1, 1, 0))

    def test_sum_mismatch(self):
        with pytest.raises(ScaleMismatchError):
            dominates_counts((2, 1, 0), (1, 1, 0))

    @pytest.mark.parametrize("k,m", [(2, 2), (3, 3), (3, 5), (4, 4), (4, 5)])
    def test_matches_unit_improvement_oracle(self, k, m):
        vectors = all_count_vectors(k, m)
        for a in vectors:
            for b in vectors:
                assert dominates_counts(a, b) == improvement_reachable(a, b), (a, b)


class TestDominatesQuality:
    def test_better_compatibility_same_counts(self):
        assert dominates_quality(qv(2, (3, 0, 0)), qv(1, (3, 0, 0)))

    def test_pareto_points_incomparable(self):
        assert not dominates_quality(qv(2, (3, 0, 0)), qv(3, (1, 1, 1)))
        assert not dominates_quality(qv(3, (1, 1, 1)), qv(2, (3, 0, 0)))

    def test_irreflexive(self):
        assert not dominates_quality(qv(3, (1, 1, 1)), qv(3, (1, 1, 1)))

    def test_nu_mismatch(self):
        with pytest.raises(ScaleMismatchError):
            dominates_quality(qv(2, (3, 0, 0), nu=4), qv(2, (3, 0, 0), nu=3))


FIG6B_POINTS = [
    qv(2, (3, 0, 0)),
    qv(3, (1, 1, 1)),
    qv(4, (0, 2, 1)),
    qv(1, (3, 0, 0)),
    qv(2, (1, 1, 1)),
    qv(3, (0, 2, 1)),
    qv(1, (0, 3, 0)),
    qv(1, (0, 0, 3)),
]


class TestParetoLayer:
    def test_fig6b_pareto_layer(self):
        from syseval.poset import QUALITY_DOMINANCE

        front = pareto_layer(FIG6B_POINTS, QUALITY_DOMINANCE)
        assert front == [qv(2, (3, 0, 0)), qv(3, (1, 1, 1)), qv(4, (0, 2, 1))]

    def test_single_point(self):
        assert pareto_layer([(5, 5)], MINIMIZE) == [(5, 5)]

    def test_example3_sums_minimization(self):
        points = [(5, 5), (9, 8), (9, 7), (8, 8)]
        assert pareto_layer(points, MINIMIZE) == [(5, 5)]

    def test_duplicates_all_returned(self):
        points = [(1, 1), (1, 1), (2, 2)]
        assert pareto_layer(points, MINIMIZE) == [(1, 1), (1, 1)]


class TestPeelLayers:
    def test_example3_layers(self):
        points = [(5, 5), (9, 8), (9, 7), (8, 8)]
        assert peel_layers(points, MINIMIZE) == [1, 3, 2, 2]

    def test_identical_points_share_layer_one(self):
        assert peel_layers([(2, 2)] * 3, MINIMIZE) == [1, 1, 1]

    def test_example4_paper_values(self):
        points = [(4, 0, 0), (1, 2, 1), (2, 1, 1), (2, 1, 1)]
        assert peel_layers(points, COUNT_DOMINANCE) == [1, 3, 2, 2]

    def test_generic_callable_matches_keyed(self):
        rng = random.Random(7)
        for _ in range(25):
            points = [tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(12)]
            keyed = peel_layers(points, MINIMIZE)
            plain = peel_layers(points, lambda a, b: MINIMIZE(a, b))
            assert keyed == plain

    def test_partition_and_adjacent_domination(self):
        rng = random.Random(42)
        for _ in range(100):
            points = [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(rng.randint(1, 14))]
            layers = peel_layers(points, MINIMIZE)
            assert all(k >= 1 for k in layers)
            for i, p in enumerate(points):
                for j, q in enumerate(points):
                    if MINIMIZE(q, p):
                        assert layers[j] < layers[i]
                if layers[i] > 1:
                    assert any(
                        layers[j] == layers[i] - 1 and MINIMIZE(q, p)
                        for j, q in enumerate(points)
                    )


FIG6A_VECTORS = all_count_vectors(3, 3)


class TestCoverEdges:
    def test_fig6a_chain_edges(self):
        edges = cover_edges(FIG6A_VECTORS, COUNT_DOMINANCE)
        assert ((3, 0, 0), (2, 1, 0)) in edges
        assert ((2, 1, 0), (2, 0, 1)) in edges

    def test_two_incomparable_points_no_edges(self):
        assert cover_edges([(1, 2), (2, 1)], MINIMIZE) == []

    def test_p34_cover_and_non_cover(self):
        from helpers import all_interval_multisets

        points = all_interval_multisets(3, 4)
        edges = cover_edges(points, COUNT_DOMINANCE)
        assert ((2, 2, 0), (2, 1, 1)) in edges
        assert ((3, 1, 0), (2, 1, 1)) not in edges  # (2,2,0) lies between

    def test_matches_brute_force_oracle(self):
        from helpers import all_interval_multisets

        for points in (FIG6A_VECTORS, all_interval_multisets(3, 4)):
            edges = set(cover_edges(points, COUNT_DOMINANCE))
            oracle = set(brute_force_covers(points, dominates_counts))
            assert edges == oracle

    def test_transitive_closure_equals_dominance(self):
        from helpers import all_interval_multisets

        for points in (all_interval_multisets(3, 4), FIG6A_VECTORS):
            edges = cover_edges(points, COUNT_DOMINANCE)
            children = {p: [] for p in points}
            for a, b in edges:
                children[a].append(b)

            def descendants(p):
                out = set()
                stack = list(children[p])
                while stack:
                    q = stack.pop()
                    if q not in out:
                        out.add(q)
                        stack.extend(children[q])
                return out

            for a in points:
                reach = descendants(a)
                for b in points:
                    assert (b in reach) == dominates_counts(a, b), (a, b)

    def test_duplicate_keys_rejected(self):
        with pytest.raises(ValueError):
            cover_edges([(1, 1), (1, 1)], MINIMIZE)


class TestPosetView:
    def test_build_and_layer_of(self):
        view = build_poset_view(FIG6A_VECTORS, COUNT_DOMINANCE)
        assert view.layer_of((3, 0, 0)) == 1
        assert view.layer_of((0, 0, 3)) == len(set(view.layers))
        with pytest.raises(KeyError):
            view.layer_of((9, 9, 9))

    def test_layer_one_iff_undominated(self):
        view = build_poset_view(FIG6A_VECTORS, COUNT_DOMINANCE)
        for el, layer in zip(view.elements, view.layers):
            undominated = not any(dominates_counts(o, el) for o in view.elements)
            assert (layer == 1) == undominated


class TestLabelD:
    def test_fig6b_full_ladder(self):
        from syseval.poset import QUALITY_DOMINANCE

        points = [qv(4, (3, 0, 0))] + FIG6B_POINTS
        labels = label_D(points, QUALITY_DOMINANCE, qv(4, (3, 0, 0)), qv(1, (0, 0, 3)))
        by_point = dict(zip(points, labels))
        assert by_point[qv(4, (3, 0, 0))] is IDEAL
        for p in (qv(2, (3, 0, 0)), qv(3, (1, 1, 1)), qv(4, (0, 2, 1))):
            assert by_point[p] == layer_label(1)
        for p in (qv(1, (3, 0, 0)), qv(2, (1, 1, 1)), qv(3, (0, 2, 1))):
            assert by_point[p] == layer_label(2)
        assert by_point[qv(1, (0, 3, 0))] == layer_label(3)
        assert by_point[qv(1, (0, 0, 3))] is WORST

    def test_best_corner_alone(self):
        labels = label_D([(4, 0, 0)], COUNT_DOMINANCE, (4, 0, 0), (0, 0, 4))
        assert labels == [IDEAL]

    def test_example5_paper_values(self):
        points = [(3, 1, 0), (0, 4, 0), (1, 3, 0), (1, 3, 0)]
        labels = label_D(points, COUNT_DOMINANCE, (4, 0, 0), (0, 0, 4))
        assert labels == [layer_label(1), layer_label(3), layer_label(2), layer_label(2)]

    def test_strip_and_repeel_idempotent(self):
        from syseval.poset import QUALITY_DOMINANCE

        points = [qv(4, (3, 0, 0))] + FIG6B_POINTS
        labels = label_D(points, QUALITY_DOMINANCE, qv(4, (3, 0, 0)), qv(1, (0, 0, 3)))
        inner = [p for p, l in zip(points, labels) if l not in (IDEAL, WORST)]
        repeel = peel_layers(inner, QUALITY_DOMINANCE)
        expected = [l.index for l in labels if l.kind == "layer"]
        assert repeel == expected


class TestNearParetoBySwap:
    def _team(self):
        # Fig 19 team: leaf -> (DA, ordinal level) pairs
        return {
            "L": {"L1": 1, "L2": 2},
            "Q": {"Q1": 1, "Q2": 3},
            "G": {"G1": 1, "G2": 2},
            "H": {"H1": 1, "H2": 3},
        }

    def _all_compositions(self, team):
        from itertools import product

        leaves = sorted(team)
        combos = []
        for pick in product(*(sorted(team[l]) for l in leaves)):
            combos.append(tuple(zip(leaves, pick)))
        return combos

    def _evaluate(self, team):
        def ev(comp):
            counts = [0, 0, 0]
            for leaf, da in comp:
                counts[team[leaf][da] - 1] += 1
            return tuple(counts)

        return ev

    def _neighbors(self, team):
        def nb(comp):
            for i, (leaf, da) in enumerate(comp):
                for other in sorted(team[leaf]):
                    if other != da:
                        yield comp[:i] + ((leaf, other),) + comp[i + 1 :]

        return nb

    def test_brute_force_over_sixteen_compositions(self):
        team = self._team()
        comps = self._all_compositions(team)
        ev, nb = self._evaluate(team), self._neighbors(team)
        got = near_pareto_by_swap(comps, ev, COUNT_DOMINANCE, nb)

        # independent expectation: non-Pareto compositions with a one-swap
        # evaluation that no original evaluation strictly dominates
        points = [ev(c) for c in comps]

        def beaten(p):
            return any(improvement_reachable(q, p) for q in points)

        expected = [
            c
            for c, p in zip(comps, points)
            if beaten(p) and any(not beaten(ev(c2)) for c2 in nb(c))
        ]
        assert got == expected
        got_das = {tuple(da for _, da in c) for c in got}
        assert got_das == {
            ("G1", "H2", "L1", "Q1"),
            ("G2", "H1", "L1", "Q1"),
            ("G1", "H1", "L1", "Q2"),
            ("G1", "H1", "L2", "Q1"),
        }

    def test_pareto_composition_excluded(self):
        team = self._team()
        comps = self._all_compositions(team)
        ev, nb = self._evaluate(team), self._neighbors(team)
        got = near_pareto_by_swap(comps, ev, COUNT_DOMINANCE, nb)
        best = tuple(zip(sorted(team), ("G1", "H1", "L1", "Q1")))
        assert ev(best) == (4, 0, 0)
        assert best not in got

    def test_t2_excluded_on_paper_subset(self):
        team = self._team()
        named = {
            "T1": (("G", "G1"), ("H", "H1"), ("L", "L1"), ("Q", "Q1")),
            "T2": (("G", "G2"), ("H", "H2"), ("L", "L2"), ("Q", "Q1")),
            "T3": (("G", "G2"), ("H", "H2"), ("L", "L1"), ("Q", "Q1")),
            "T4": (("G", "G1"), ("H", "H2"), ("L", "L1"), ("Q", "Q2")),
        }
        ev, nb = self._evaluate(team), self._neighbors(team)
        got = near_pareto_by_swap(list(named.values()), ev, COUNT_DOMINANCE, nb)
        assert named["T2"] not in got
