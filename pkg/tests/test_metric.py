from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial.distance import cdist

from intrinsic_holder.errors import (
    Asymmetry,
    DisconnectedGraph,
    EmptyFiber,
    InvalidPNorm,
    NegativeDistance,
    NonzeroDiagonal,
    NotASection,
    NotSquare,
    OverlappingFibers,
    ResolutionTooSmall,
    TriangleViolation,
    UncoveredPoint,
    UnknownFiber,
    UnknownPoint,
    ZeroDistanceDistinctPoints,
)
from intrinsic_holder.fixtures import W4_IDS, W4_TABLE, grid_edges, random_graph_space, w4
from intrinsic_holder.metric import (
    HolderParams,
    build_space,
    fiber_distance,
    from_cloud,
    from_graph,
    from_table,
    heisenberg_sample,
    make_quotient,
    make_section,
    validate_metric,
)


def brute_triangle_ok(D, tol=1e-12):
    n = len(D)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if D[x][z] > D[x][y] + D[y][z] + tol:
                    return False
    return True


def bfs_distances(n_nodes, adjacency, source):
    dist = [-1] * n_nodes
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def test_single_point_is_valid():
    S = validate_metric([[0]])
    assert S.n == 1 and S.diameter == 0


def test_w4_valid_and_triangle_oracle():
    S, _ = w4()
    assert S.point_ids == W4_IDS
    assert brute_triangle_ok(W4_TABLE)
    assert S.integral


def test_w4_broken_triangle_names_acd():
    T = [row[:] for row in W4_TABLE]
    T[0][3] = T[3][0] = 4
    assert not brute_triangle_ok(T)
    with pytest.raises(TriangleViolation) as exc:
        validate_metric(T, W4_IDS)
    assert ("a", "c", "d") in exc.value.witnesses


@pytest.mark.parametrize(
    "table, error",
    [
        ([[0, 1]], NotSquare),
        ([[0, -1], [-1, 0]], NegativeDistance),
        ([[1, 1], [1, 0]], NonzeroDiagonal),
        ([[0, 1], [2, 0]], Asymmetry),
        ([[0, 0], [0, 0]], ZeroDistanceDistinctPoints),
    ],
)
def test_axiom_violations(table, error):
    with pytest.raises(error):
        validate_metric(table)


def test_asymmetry_witness():
    with pytest.raises(Asymmetry) as exc:
        validate_metric([[0, 1, 1], [1, 0, 1], [1, 1.5, 0]], ["x", "y", "z"])
    assert set(exc.value.witness) == {"y", "z"}


def test_path_graph():
    S = from_graph([("a", "b"), ("b", "c")])
    assert S.d("a", "c") == 2
    assert S.path_metric


def test_cloud_345():
    S = from_cloud(np.array([[0.0, 0.0], [3.0, 4.0]]), 2)
    assert S.dist[0, 1] == 5


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, np.inf])
def test_cloud_matches_scipy(p):
    rng = np.random.default_rng(3)
    X = rng.normal(size=(9, 3))
    S = from_cloud(X, p)
    ref = cdist(X, X, "chebyshev") if np.isinf(p) else cdist(X, X, "minkowski", p=p)
    np.testing.assert_allclose(S.dist, ref, rtol=1e-12, atol=1e-12)


def test_bad_p_norm():
    with pytest.raises(InvalidPNorm):
        from_cloud(np.zeros((2, 2)) + [[0, 0], [1, 1]], 0.5)


def test_grid_corner_to_corner_matches_bfs():
    ids = [(i, j) for i in range(5) for j in range(5)]
    edges = grid_edges(5, 5)
    S = from_graph(edges, ids)
    assert S.d((0, 0), (4, 4)) == 8
    pos = {p: k for k, p in enumerate(ids)}
    adj = [[] for _ in ids]
    for u, v in edges:
        adj[pos[u]].append(pos[v])
        adj[pos[v]].append(pos[u])
    for s in range(len(ids)):
        assert S.dist[s].tolist() == bfs_distances(len(ids), adj, s)


def test_random_graph_matches_bfs():
    rng = np.random.default_rng(11)
    for _ in range(20):
        S = random_graph_space(rng, int(rng.integers(3, 15)))
        adj = [np.flatnonzero(S.dist[i] == 1).tolist() for i in range(S.n)]
        for s in range(S.n):
            assert S.dist[s].tolist() == bfs_distances(S.n, adj, s)


def test_disconnected_graph():
    with pytest.raises(DisconnectedGraph):
        from_graph([("a", "b"), ("c", "d")])


def test_build_space_dispatch():
    assert build_space({"dist": W4_TABLE, "points": list(W4_IDS)}).d("a", "d") == 3
    assert build_space({"graph": [["a", "b", 2.5]]}).d("a", "b") == 2.5
    assert build_space({"cloud": [[0, 0], [1, 1]], "p": 1}).dist[0, 1] == 2


def test_quotients():
    S, Q = w4()
    assert Q.m == 2
    assert Q.members == {"F1": ("a", "b"), "F2": ("c", "d")}
    ident = make_quotient(S, [[p] for p in S.point_ids])
    assert ident.m == S.n
    with pytest.raises(OverlappingFibers):
        make_quotient(S, [["a"], ["a", "b"]])
    with pytest.raises(UncoveredPoint):
        make_quotient(S, [["a", "b"], ["c"]])
    with pytest.raises(EmptyFiber):
        make_quotient(S, {"F1": ["a", "b", "c", "d"], "F2": []})


def test_fiber_distance_w4():
    S, Q = w4()
    assert fiber_distance(S, Q, "a", "F2") == 1
    assert fiber_distance(S, Q, "a", "F1") == 0
    assert fiber_distance(S, Q, "d", "F1") == 1
    with pytest.raises(UnknownPoint):
        fiber_distance(S, Q, "z", "F1")
    with pytest.raises(UnknownFiber):
        fiber_distance(S, Q, "a", "F9")


def test_section_must_be_right_inverse():
    S, Q = w4()
    with pytest.raises(NotASection):
        make_section(S, Q, {"F1": "c", "F2": "d"})
    with pytest.raises(NotASection):
        make_section(S, Q, {"F1": "a"})
    assert make_section(S, Q, {"F1": "a"}, partial=True).choice == {"F1": "a"}


def test_holder_params_ranges():
    HolderParams(0.1, 1.0)
    with pytest.raises(ValueError):
        HolderParams(0.0, 0.5)
    with pytest.raises(ValueError):
        HolderParams(1.0, 1.5)


def test_heisenberg_resolution_two():
    S, Q = heisenberg_sample(2)
    assert S.n == 8 and Q.m == 4
    assert all(len(m) == 2 for m in Q.members.values())
    assert brute_triangle_ok(S.dist.tolist())


def test_heisenberg_kinds_share_partition():
    for res in (2, 3, 4):
        Sb, Qb = heisenberg_sample(res, "box")
        Se, Qe = heisenberg_sample(res, "euclidean")
        assert Qb.members == Qe.members
        assert not np.allclose(Sb.dist, Se.dist)
        assert len({len(m) for m in Qb.members.values()}) == 1
        assert brute_triangle_ok(Sb.dist.tolist())


def test_heisenberg_too_small():
    with pytest.raises(ResolutionTooSmall):
        heisenberg_sample(1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=2, max_size=10, unique=True))
def test_clouds_pass_exhaustive_triangle_scan(points):
    X = np.array(points)
    if np.min(cdist(X, X) + np.eye(len(X))) < 1e-6:
        return
    S = from_cloud(X, 2.0)
    assert brute_triangle_ok(S.dist.tolist())


def test_csv_import(tmp_path):
    from intrinsic_holder.io import load_space

    p = tmp_path / "w4.csv"
    p.write_text("a,b,c,d\n" + "\n".join(",".join(map(str, r)) for r in W4_TABLE) + "\n")
    S = load_space(p)
    assert S.point_ids == W4_IDS
    assert S.d("b", "c") == 3
