"""Cut-rank, rank-width DP vs tree enumeration, and the grid family."""

import itertools
import random

import pytest

from circlekit.chords import interlacement_graph
from circlekit.errors import BoundExceeded, InvalidVertexError, PreconditionError, TheoremViolation
from circlekit.graphs import LabeledGraph, delete_vertex, local_complement
from circlekit.rankwidth import (
    RankDecomposition,
    comparability_grid,
    comparability_grid_diagram,
    cut_rank,
    rank_width_by_tree_enumeration,
    rank_width_exact,
    verify_one_third_lemma,
)
from oracles import all_graphs


def random_graph(n, rng, p=0.5):
    pairs = list(itertools.combinations(range(n), 2))
    return LabeledGraph(range(n), [e for e in pairs if rng.random() < p])


def random_tree(n, rng):
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return LabeledGraph(range(n), edges)


# -- cut rank -----------------------------------------------------------------


def test_cut_rank_edgeless():
    g = LabeledGraph(range(4))
    assert cut_rank(g, {0, 2}) == 0


def test_cut_rank_complete():
    for n in (2, 3, 5):
        g = LabeledGraph(range(n), list(itertools.combinations(range(n), 2)))
        for k in range(1, n):
            assert cut_rank(g, set(range(k))) == 1


def test_cut_rank_c5():
    c5 = LabeledGraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    assert cut_rank(c5, {1, 2}) == 2


def test_cut_rank_trivial_sides():
    g = LabeledGraph(range(3), [(0, 1)])
    assert cut_rank(g, set()) == 0
    assert cut_rank(g, {0, 1, 2}) == 0


def test_cut_rank_unknown_vertex():
    with pytest.raises(InvalidVertexError):
        cut_rank(LabeledGraph(range(2)), {9})


def test_cut_rank_symmetry():
    rng = random.Random(23)
    graphs = [g for n in range(1, 5) for g in all_graphs(n)]
    graphs += [random_graph(n, rng) for n in (5, 6) for _ in range(10)]
    for g in graphs:
        labels = g.labels
        for mask in range(1 << g.n):
            x = {labels[i] for i in range(g.n) if mask >> i & 1}
            comp = set(labels) - x
            assert cut_rank(g, x) == cut_rank(g, comp)


# -- rank-width ---------------------------------------------------------------


def test_rank_width_k1():
    w, dec = rank_width_exact(LabeledGraph(("a",)))
    assert w == 0
    assert dec.leaves() == ("a",)
    assert dec.clusters() == []
    dec.check(LabeledGraph(("a",)))


def test_rank_width_empty_graph():
    assert rank_width_exact(LabeledGraph(())) == (0, None)


def test_rank_width_two_vertices():
    w, dec = rank_width_exact(LabeledGraph((0, 1), [(0, 1)]))
    assert w == 1
    assert sorted(map(tuple, dec.clusters())) == [(0,), (1,)]
    w, _ = rank_width_exact(LabeledGraph((0, 1)))
    assert w == 0


def test_rank_width_paths_and_trees():
    p5 = LabeledGraph(range(5), [(i, i + 1) for i in range(4)])
    assert rank_width_exact(p5)[0] == 1
    rng = random.Random(31)
    for n in (2, 4, 6, 7):
        for _ in range(5):
            t = random_tree(n, rng)
            w, dec = rank_width_exact(t)
            assert w <= 1
            dec.check(t)


def test_rank_width_complete_graphs():
    for n in (2, 3, 5):
        g = LabeledGraph(range(n), list(itertools.combinations(range(n), 2)))
        assert rank_width_exact(g)[0] == 1


def test_rank_width_c5():
    c5 = LabeledGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    assert rank_width_exact(c5)[0] == 2
    assert rank_width_by_tree_enumeration(c5) == 2


def test_rank_width_bound():
    with pytest.raises(BoundExceeded):
        rank_width_exact(LabeledGraph(range(13)))
    with pytest.raises(BoundExceeded):
        rank_width_by_tree_enumeration(LabeledGraph(range(8)))


def test_dp_matches_tree_enumeration_exhaustively():
    for n in range(0, 5):
        for g in all_graphs(n):
            w, dec = rank_width_exact(g)
            assert w == rank_width_by_tree_enumeration(g), g.edges()
            if dec is not None:
                dec.check(g)


def test_dp_matches_tree_enumeration_sampled():
    rng = random.Random(41)
    for n in (5, 6, 7):
        for _ in range(8):
            g = random_graph(n, rng)
            assert rank_width_exact(g)[0] == rank_width_by_tree_enumeration(g)


def test_decomposition_cluster_count():
    rng = random.Random(47)
    for n in (2, 3, 5, 7):
        g = random_graph(n, rng)
        _, dec = rank_width_exact(g)
        assert len(dec.clusters()) == 2 * n - 2
        assert sorted(dec.leaves()) == list(g.labels)


def test_decomposition_text_and_json():
    _, dec = rank_width_exact(LabeledGraph((0, 1), [(0, 1)]))
    assert dec.to_text() == "(0,1)"
    assert dec.to_json_obj() == [0, 1]
    _, dec = rank_width_exact(comparability_grid(1, 2))
    assert dec.to_text() in ("((1,1),(1,2))", "((1,2),(1,1))")


def test_decomposition_check_detects_bad_width():
    g = LabeledGraph((0, 1), [(0, 1)])
    bad = RankDecomposition((0, 1), (0, 1), 0)
    with pytest.raises(TheoremViolation):
        bad.check(g)
    wrong_leaves = RankDecomposition(0, (5,), 0)
    with pytest.raises(PreconditionError):
        wrong_leaves.check(g)


def test_rank_width_lc_invariant():
    for n in range(1, 5):
        for g in all_graphs(n):
            w = rank_width_exact(g)[0]
            for u in g.labels:
                assert rank_width_exact(local_complement(g, u))[0] == w
    rng = random.Random(53)
    for n in (5, 6):
        for _ in range(10):
            g = random_graph(n, rng)
            w = rank_width_exact(g)[0]
            u = rng.randrange(n)
            assert rank_width_exact(local_complement(g, u))[0] == w


def test_rank_width_monotone_under_deletion():
    rng = random.Random(59)
    for n in (3, 5, 6):
        for _ in range(10):
            g = random_graph(n, rng)
            w = rank_width_exact(g)[0]
            v = rng.choice(g.labels)
            assert rank_width_exact(delete_vertex(g, v))[0] <= w


# -- comparability grids ------------------------------------------------------


def test_grid_adjacency_rule():
    g = comparability_grid(3, 3)
    assert g.has_edge((1, 1), (2, 2))
    assert not g.has_edge((1, 2), (2, 1))
    assert g.has_edge((1, 1), (1, 2))  # equal first coordinates still compare
    assert g.has_edge((2, 2), (1, 1)) == g.has_edge((1, 1), (2, 2))


def test_grid_one_row_is_complete():
    for n in (1, 2, 4):
        g = comparability_grid(1, n)
        assert g.edge_count() == n * (n - 1) // 2


def test_grid_validation():
    with pytest.raises(PreconditionError):
        comparability_grid(0, 3)
    with pytest.raises(PreconditionError):
        comparability_grid_diagram(0)


def test_grid_diagram_single_chord():
    d = comparability_grid_diagram(1)
    assert d.n == 1
    assert interlacement_graph(d) == comparability_grid(1, 1)


def test_grid_diagram_matches_grid():
    for n in (2, 3, 4):
        d = comparability_grid_diagram(n)
        assert interlacement_graph(d) == comparability_grid(n, n)


def test_grid_rank_width_values():
    # derived by two independent implementations (subset DP and ternary-tree
    # enumeration, the latter for the 2x2 only)
    g2 = comparability_grid(2, 2)
    assert rank_width_exact(g2)[0] == 1
    assert rank_width_by_tree_enumeration(g2) == 1
    g3 = comparability_grid(3, 3)
    w3, dec3 = rank_width_exact(g3)
    assert w3 == 2
    dec3.check(g3)


def test_grid_lower_bound_quarter_n():
    for n in (2, 3):
        w = rank_width_exact(comparability_grid(n, n))[0]
        assert 4 * w >= n


# -- the one-third scan -------------------------------------------------------


def test_one_third_lemma_small():
    r2 = verify_one_third_lemma(2)
    assert r2["subsets"] == 16
    assert r2["violations"] == []
    r3 = verify_one_third_lemma(3)
    assert r3["subsets"] == 512
    assert r3["violations"] == []
    assert r3["elapsed"] >= 0


def test_one_third_lemma_bound():
    with pytest.raises(BoundExceeded):
        verify_one_third_lemma(5)
