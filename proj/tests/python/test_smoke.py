import random

import pytest

import udgcycles as u


def cloud(n, side, seed):
    rng = random.Random(seed)
    return [(rng.uniform(0, side), rng.uniform(0, side)) for _ in range(n)]


def triangle():
    return [(0.0, 0.0), (1.0, 0.0), (0.5, 0.8)]


def test_build_graph_disk_and_square():
    assert u.build_graph([(0, 0), (2, 0)], "disk") == [(0, 1)]
    assert u.build_graph([(0, 0), (2.01, 0)], "disk") == []
    assert u.build_graph([(0, 0), (1, 1)], "square") == [(0, 1)]


def test_exact_cycle_on_triangle():
    r = u.exact_k_cycle(triangle(), 3)
    assert r["answer"] is True
    assert sorted(r["witness"]) == [0, 1, 2]


def test_exact_cycle_rejects_small_k():
    with pytest.raises(ValueError):
        u.exact_k_cycle(triangle(), 2)


@pytest.mark.parametrize("seed", range(5))
def test_solvers_match_oracles(seed):
    pts = cloud(14, 6.0, seed)
    edges = u.build_graph(pts)
    n = len(pts)
    for k in (3, 4, 5):
        assert u.exact_k_cycle(pts, k)["answer"] == u.oracle.exact_cycle(n, edges, k)
        assert u.longest_cycle(pts, k)["answer"] == (u.oracle.longest_cycle(n, edges) >= k)
        assert u.longest_path(pts, k)["answer"] == (u.oracle.longest_path(n, edges) >= k)
    for k in range(4):
        assert u.fvs(pts, k)["answer"] == (u.oracle.min_fvs(n, edges) <= k)
        assert u.cycle_packing(pts, k)["answer"] == u.oracle.cycle_packing(n, edges, k)


def test_witnesses_verify():
    pts = cloud(16, 5.0, 3)
    edges = u.build_graph(pts)
    n = len(pts)
    r = u.longest_cycle(pts, 4)
    if r["answer"]:
        assert u.verify_witness(n, edges, "longest-cycle", 4, r["witness"])
    r = u.cycle_packing(pts, 2)
    if r["answer"]:
        assert u.verify_witness(n, edges, "cycle-packing", 2, r["witness"])


def test_kernel_and_treewidth():
    pts = cloud(12, 4.0, 1)
    out = u.kernel(pts, 3, "longest-cycle")
    assert out["vertex_bound"] == 4 * 9 * 2
    width, exact = u.treewidth(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert (width, exact) == (2, True)
