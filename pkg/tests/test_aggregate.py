from fractions import Fraction

import numpy as np
import pytest

import oracles
from dagbag import (
    Dag,
    DimensionMismatch,
    Ensemble,
    SelectionTable,
    aggregate,
    aggregation_score,
    aggregation_score_exact,
    gshd_distance,
    selection_frequencies,
    shd_aggregate,
)


def ens(p, *edge_lists):
    return Ensemble(tuple(Dag.from_edges(p, e) for e in edge_lists), p)


class TestGshdDistance:
    def test_identical_graphs(self):
        g = Dag.from_edges(3, [(0, 1), (1, 2)])
        assert gshd_distance(g, g, 1.0) == 0.0

    @pytest.mark.parametrize("alpha,expect", [(2.0, 2.0), (1.0, 1.0), (0.5, 0.5)])
    def test_single_reversal_costs_alpha(self, alpha, expect):
        g1 = Dag.from_edges(2, [(0, 1)])
        g2 = Dag.from_edges(2, [(1, 0)])
        assert gshd_distance(g1, g2, alpha) == expect

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
    def test_missing_edge_costs_one(self, alpha):
        g1 = Dag.from_edges(3, [(0, 1), (1, 2)])
        g2 = Dag.from_edges(3, [(0, 1)])
        assert gshd_distance(g1, g2, alpha) == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            gshd_distance(Dag.empty(2), Dag.empty(3), 1.0)

    def test_alpha_must_be_positive(self):
        with pytest.raises(ValueError):
            gshd_distance(Dag.empty(2), Dag.empty(2), 0.0)

    def test_matches_pairwise_oracle(self, rng):
        for _ in range(60):
            p = int(rng.integers(2, 8))
            a1 = oracles.random_adjacency(rng, p, 0.4)
            a2 = oracles.random_adjacency(rng, p, 0.4)
            alpha = float(rng.choice([0.5, 1.0, 1.5, 2.0]))
            assert gshd_distance(Dag(a1), Dag(a2), alpha) == pytest.approx(
                oracles.gshd_direct(a1, a2, alpha)
            )

    def test_shd_equals_adjacency_l1(self, rng):
        for _ in range(30):
            p = int(rng.integers(2, 8))
            a1 = oracles.random_adjacency(rng, p, 0.4)
            a2 = oracles.random_adjacency(rng, p, 0.4)
            l1 = np.abs(a1.astype(int) - a2.astype(int)).sum()
            assert gshd_distance(Dag(a1), Dag(a2), 2.0) == pytest.approx(float(l1))


class TestSelectionFrequencies:
    def test_direct_count(self):
        e = ens(3, [(0, 1)], [(0, 1)], [(0, 1)], [(1, 0)])
        table = selection_frequencies(e)
        assert table.sf[0, 1] == 0.75
        assert table.sf[1, 0] == 0.25

    def test_empty_ensemble_graphs(self):
        table = selection_frequencies(ens(3, [], [], []))
        assert table.sf.sum() == 0.0

    def test_gsf_substitution(self):
        e = ens(4, [(0, 1)], [(0, 1)], [(0, 1)], [(1, 0)])
        table = selection_frequencies(e)
        assert table.gsf(1.0)[0, 1] == pytest.approx(0.75 + 0.5 * 0.25)
        assert table.gsf_of(0, 1, Fraction(1)) == Fraction(7, 8)

    def test_invariants_enforced(self):
        counts = np.array([[0, 3], [2, 0]])
        with pytest.raises(ValueError):
            SelectionTable(counts, 4)  # 3 + 2 > B
        with pytest.raises(ValueError):
            SelectionTable(np.array([[1, 0], [0, 0]]), 4)  # self loop


class TestAggregationScore:
    def test_empty_graph_scores_constant(self):
        e = ens(3, [(0, 1), (1, 2)], [(0, 1)])
        table = selection_frequencies(e)
        assert aggregation_score(Dag.empty(3), table, 1.0) == pytest.approx(
            float(table.sf.sum())
        )

    def test_single_member_self_distance(self):
        g = Dag.from_edges(3, [(0, 1), (1, 2)])
        e = Ensemble((g,), 3)
        table = selection_frequencies(e)
        for alpha in (0.5, 1.0, 2.0):
            closed = aggregation_score(g, table, alpha)
            assert closed == pytest.approx(gshd_distance(g, g, alpha), abs=1e-12)

    def test_closed_form_equals_direct_average(self, rng):
        for _ in range(30):
            p = int(rng.integers(2, 7))
            b_count = int(rng.integers(1, 7))
            graphs = tuple(Dag(oracles.random_adjacency(rng, p, 0.4)) for _ in range(b_count))
            e = Ensemble(graphs, p)
            table = selection_frequencies(e)
            g = Dag(oracles.random_adjacency(rng, p, 0.4))
            alpha = float(rng.choice([0.5, 1.0, 1.5, 2.0]))
            direct = np.mean([gshd_distance(g, gb, alpha) for gb in graphs])
            assert aggregation_score(g, table, alpha) == pytest.approx(
                direct, abs=1e-9
            )
            exact = aggregation_score_exact(g.edges, table, Fraction(alpha))
            assert float(exact) == pytest.approx(direct, abs=1e-9)


class TestAggregate:
    def test_unanimous_ensemble_returns_member(self):
        g = Dag.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        e = Ensemble((g,) * 5, 4)
        result = aggregate(e, 1.0)
        assert result.graph == g
        assert result.cyclic_edges == ()
        assert result.certified_optimal

    def test_majority_vote_example(self):
        e = ens(3, [(0, 1), (1, 2)], [(0, 1), (1, 2)], [(2, 0), (0, 1)])
        result = aggregate(e, 2.0)
        assert set(result.graph.edges) == {(0, 1), (1, 2)}
        assert result.cyclic_edges == ()
        assert result.certified_optimal
        # brute force over all 25 DAGs on 3 nodes
        table = result.table
        best = min(
            aggregation_score_exact(np.argwhere(adj), table, Fraction(2))
            for adj in oracles.all_dags(3)
        )
        mine = aggregation_score_exact(result.graph.edges, table, Fraction(2))
        assert mine == best

    def test_rotation_tie_example(self):
        # all three edges tie at sf=2/3; lexicographic order adds (0,1), (1,2)
        # and must reject (2,0)
        e = ens(3, [(0, 1), (1, 2)], [(1, 2), (2, 0)], [(2, 0), (0, 1)])
        result = aggregate(e, 2.0)
        assert set(result.graph.edges) == {(0, 1), (1, 2)}
        assert result.cyclic_edges == ((2, 0),)
        assert result.certified_optimal
        table = result.table
        best = min(
            aggregation_score_exact(np.argwhere(adj), table, Fraction(2))
            for adj in oracles.all_dags(3)
        )
        assert aggregation_score_exact(result.graph.edges, table, Fraction(2)) == best

    def test_shd_aggregate_is_alpha_two(self, rng):
        for seed in range(5):
            gen = np.random.default_rng(seed)
            graphs = tuple(Dag(oracles.random_adjacency(gen, 4, 0.4)) for _ in range(6))
            e = Ensemble(graphs, 4)
            a = shd_aggregate(e)
            b = aggregate(e, 2.0)
            assert a.graph == b.graph
            assert a.cyclic_edges == b.cyclic_edges

    def test_half_threshold_is_strict(self):
        # sf exactly 0.5 must not enter the graph
        e = ens(2, [(0, 1)], [])
        assert shd_aggregate(e).graph.num_edges == 0
        opposed = ens(2, [(0, 1)], [(1, 0)])
        assert shd_aggregate(opposed).graph.num_edges == 0

    def test_greedy_steps_never_improvable(self, rng):
        # along the greedy addition order: deleting an added edge, reversing
        # it, or adding a below-threshold edge never lowers the score
        for seed in range(8):
            gen = np.random.default_rng(100 + seed)
            b_count = 7
            p = 5
            graphs = tuple(Dag(oracles.random_adjacency(gen, p, 0.45)) for _ in range(b_count))
            e = Ensemble(graphs, p)
            alpha = float(gen.choice([0.5, 1.0, 1.5, 2.0]))
            af = Fraction(alpha)
            result = aggregate(e, alpha)
            table = result.table
            from dagbag.aggregate import candidate_edges

            ordered = [(s, t) for _, s, t in candidate_edges(table, af)]
            selected = []
            cyclic = set(result.cyclic_edges)
            steps = 0
            for s, t in ordered:
                if (s, t) in cyclic:
                    continue
                selected.append((s, t))
                steps += 1
                if steps > 20:
                    break
                cur = aggregation_score_exact(selected, table, af)
                adj = np.zeros((p, p), dtype=bool)
                for a, b in selected:
                    adj[a, b] = True
                # deletions
                for k in range(len(selected)):
                    trimmed = selected[:k] + selected[k + 1 :]
                    assert aggregation_score_exact(trimmed, table, af) >= cur
                # reversals that stay acyclic
                for k, (a, b) in enumerate(selected):
                    flipped = selected[:k] + [(b, a)] + selected[k + 1 :]
                    fadj = adj.copy()
                    fadj[a, b] = False
                    fadj[b, a] = True
                    if oracles.dfs_acyclic(fadj):
                        assert aggregation_score_exact(flipped, table, af) >= cur
                # below-threshold additions that stay acyclic
                for a in range(p):
                    for b in range(p):
                        if a == b or adj[a, b] or adj[b, a]:
                            continue
                        if table.gsf_of(a, b, af) > Fraction(1, 2):
                            continue
                        gadj = adj.copy()
                        gadj[a, b] = True
                        if oracles.dfs_acyclic(gadj):
                            assert (
                                aggregation_score_exact(selected + [(a, b)], table, af)
                                >= cur
                            )

    def test_candidate_set_shrinks_with_alpha(self, rng):
        from dagbag.aggregate import candidate_edges

        for seed in range(10):
            gen = np.random.default_rng(200 + seed)
            graphs = tuple(Dag(oracles.random_adjacency(gen, 5, 0.5)) for _ in range(6))
            table = selection_frequencies(Ensemble(graphs, 5))
            previous = None
            for alpha in (0.5, 1.0, 1.5, 2.0):
                current = {(s, t) for _, s, t in candidate_edges(table, Fraction(alpha))}
                if previous is not None:
                    assert current <= previous
                previous = current

    def test_metric_axioms_smoke(self, rng):
        for _ in range(40):
            p = int(rng.integers(2, 8))
            g1 = Dag(oracles.random_adjacency(rng, p, 0.4))
            g2 = Dag(oracles.random_adjacency(rng, p, 0.4))
            g3 = Dag(oracles.random_adjacency(rng, p, 0.4))
            for alpha in (0.5, 1.0, 1.5, 2.0):
                d12 = gshd_distance(g1, g2, alpha)
                d13 = gshd_distance(g1, g3, alpha)
                d23 = gshd_distance(g2, g3, alpha)
                assert d12 >= 0
                assert (d12 == 0) == (g1 == g2)
                assert d12 == gshd_distance(g2, g1, alpha)
                assert d13 <= d12 + d23 + 1e-12
