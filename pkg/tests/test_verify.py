"""Generator suite and verification-run tests."""

import json
import random

import pytest

from circlekit.errors import PreconditionError
from circlekit.graphs import LabeledGraph
from circlekit.planar import faces
from circlekit.verify import (
    RunReport,
    book_plane,
    fan_plane,
    graph_suite,
    grid_plane,
    orbit_report,
    parallel_map,
    plane_suite,
    random_plane_multigraph,
    run_lemma2,
    run_onethird,
    run_prop5,
    run_remark,
    run_theorem1,
    run_theorem2,
    run_verifier,
    theta_plane,
    thread_count,
)


# -- named families ----------------------------------------------------------


def test_grid_counts():
    p = grid_plane(3, 3)
    assert p.base.n == 9
    assert p.base.edge_count() == 12
    assert len(faces(p)) == 5  # four squares and the outer face


def test_grid_single_vertex():
    p = grid_plane(1, 1)
    assert p.base.n == 1 and p.base.edge_count() == 0
    assert len(faces(p)) == 1


def test_theta_faces():
    assert len(faces(theta_plane(1))) == 1
    for k in range(2, 5):
        assert len(faces(theta_plane(k))) == k


def test_book_faces():
    for k in range(1, 5):
        p = book_plane(k)
        assert p.base.n == k + 2
        assert p.base.edge_count() == 2 * k + 1
        assert len(faces(p)) == k + 1


def test_fan_faces():
    for k in range(2, 6):
        p = fan_plane(k)
        assert p.base.n == k + 1
        assert p.base.edge_count() == 2 * k - 1
        assert len(faces(p)) == k


def test_family_validation():
    with pytest.raises(PreconditionError):
        grid_plane(0, 2)
    with pytest.raises(PreconditionError):
        book_plane(0)
    with pytest.raises(PreconditionError):
        fan_plane(1)
    with pytest.raises(PreconditionError):
        theta_plane(0)


# -- random embeddings -------------------------------------------------------


def test_random_plane_spherical_and_bounded():
    rng = random.Random(11)
    for _ in range(150):
        p = random_plane_multigraph(rng, max_edges=10)
        assert 1 <= p.base.edge_count() <= 10
        faces(p)  # raises on a non-sphere embedding


def test_random_plane_hits_loops_and_parallels():
    rng = random.Random(11)
    loops = parallels = 0
    for _ in range(150):
        p = random_plane_multigraph(rng, max_edges=10)
        pairs = [tuple(sorted(p.base.ends(e))) for e in p.base.edge_ids()]
        loops += sum(1 for u, v in pairs if u == v)
        parallels += sum(1 for q in set(pairs) if q[0] != q[1] and pairs.count(q) > 1)
    assert loops > 10
    assert parallels > 10


def test_random_plane_deterministic_per_seed():
    a = random_plane_multigraph(random.Random(5), 9)
    b = random_plane_multigraph(random.Random(5), 9)
    assert a == b


def test_random_plane_connected():
    rng = random.Random(3)
    for _ in range(40):
        p = random_plane_multigraph(rng, 8)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for e in p.base.incident(v):
                u, w = p.base.ends(e)
                o = w if v == u else u
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        assert seen == set(p.base.vertices)


def test_plane_suite_composition():
    suite = plane_suite(seed=0, random_count=200, max_edges=12)
    assert len(suite) == 9 + 4 + 4 + 4 + 200
    for p in suite:
        faces(p)
    again = plane_suite(seed=0, random_count=200, max_edges=12)
    assert suite == again


# -- graph suite and orbit report --------------------------------------------


def test_graph_suite_exhaustive_small():
    suite = graph_suite(seed=0, per_size=5)
    small = [g for g in suite if g.n <= 4]
    assert len(small) == 1 + 1 + 2 + 8 + 64
    assert len(suite) == len(small) + 10


def test_orbit_report_circle_vs_not():
    c5 = LabeledGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    rep = orbit_report(c5)
    assert rep["is_circle"] is True
    assert rep["lu_orbit"] == rep["lc_orbit"] == 132

    w5 = LabeledGraph(range(6), [(i, (i + 1) % 5) for i in range(5)] + [(5, i) for i in range(5)])
    rep = orbit_report(w5)
    assert rep["is_circle"] is False
    assert rep["lu_orbit"] is None
    assert rep["lc_orbit"] > 0


# -- verification runs --------------------------------------------------------


def test_run_theorem1_small():
    rep = run_theorem1(max_n=4)
    assert rep.status == "ok"
    assert rep.result["graphs"] == 1 + 1 + 2 + 5 + 17
    assert rep.result["valid_images"] > 0


def test_run_theorem2_small():
    rep = run_theorem2(seed=1, random_count=25, max_edges=8)
    assert rep.status == "ok"
    assert rep.result["instances"] == 9 + 4 + 4 + 4 + 25


def test_run_lemma2_small():
    rep = run_lemma2(max_n=5)
    assert rep.status == "ok"
    assert rep.result["instances"] > 100


def test_run_prop5_small():
    rep = run_prop5(max_n=4)
    assert rep.status == "ok"
    assert rep.result["instances"] == 1 + 2 + 5 + 17
    assert rep.result["max_added"] == 1


def test_run_onethird():
    rep = run_onethird(n=2)
    assert rep.status == "ok"
    assert rep.result["subsets"] == 16
    assert rep.result["violations"] == []


def test_run_remark_small():
    rep = run_remark(seed=2, count=6, max_edges=6)
    assert rep.status == "ok"
    assert rep.result["instances"] == 6
    assert rep.result["tree_pairs"] >= 6


def test_run_verifier_dispatch():
    rep = run_verifier("onethird", n=2)
    assert rep.command == "onethird"
    with pytest.raises(PreconditionError):
        run_verifier("no-such-check")


def test_report_json_shape():
    rep = run_onethird(n=2)
    payload = json.loads(rep.to_json())
    assert set(payload) == {"command", "inputs", "result", "elapsed_ms", "status"}
    assert payload["status"] == "ok"


# -- worker pool --------------------------------------------------------------


def test_thread_count_env(monkeypatch):
    monkeypatch.delenv("CIRCLEKIT_THREADS", raising=False)
    assert thread_count() == 1
    monkeypatch.setenv("CIRCLEKIT_THREADS", "4")
    assert thread_count() == 4
    monkeypatch.setenv("CIRCLEKIT_THREADS", "junk")
    assert thread_count() == 1
    monkeypatch.setenv("CIRCLEKIT_THREADS", "-2")
    assert thread_count() == 1


def test_parallel_map_preserves_order(monkeypatch):
    items = list(range(37))
    monkeypatch.setenv("CIRCLEKIT_THREADS", "4")
    assert parallel_map(lambda x: x * x, items) == [x * x for x in items]
    monkeypatch.setenv("CIRCLEKIT_THREADS", "1")
    assert parallel_map(lambda x: x * x, items) == [x * x for x in items]


def test_runs_deterministic_under_threads(monkeypatch):
    monkeypatch.setenv("CIRCLEKIT_THREADS", "3")
    threaded = run_theorem2(seed=4, random_count=10, max_edges=6)
    monkeypatch.setenv("CIRCLEKIT_THREADS", "1")
    serial = run_theorem2(seed=4, random_count=10, max_edges=6)
    assert threaded.status == serial.status == "ok"
    assert threaded.result == serial.result
