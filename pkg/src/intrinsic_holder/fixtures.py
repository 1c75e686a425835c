"""Named fixtures and seeded random instance generators."""

from __future__ import annotations

import numpy as np

from .metric import (
    from_cloud,
    from_graph,
    from_table,
    make_quotient,
    make_section,
    quotient_from_labels,
)

W4_IDS = ("a", "b", "c", "d")
W4_TABLE = [
    [0, 2, 1, 3],
    [2, 0, 3, 1],
    [1, 3, 0, 2],
    [3, 1, 2, 0],
]


def w4():
    """Four points in two fibers F1={a,b}, F2={c,d}.

    d(a,b)=d(c,d)=2, d(a,c)=d(b,d)=1, d(a,d)=d(b,c)=3.
    """
    space = from_table(W4_TABLE, W4_IDS)
    quotient = make_quotient(space, {"F1": ["a", "b"], "F2": ["c", "d"]})
    return space, quotient


def w4_section(space, quotient, p1, p2):
    return make_section(space, quotient, {"F1": p1, "F2": p2})


def grid_edges(nx: int, ny: int):
    edges = []
    for i in range(nx):
        for j in range(ny):
            if i + 1 < nx:
                edges.append(((i, j), (i + 1, j)))
            if j + 1 < ny:
                edges.append(((i, j), (i, j + 1)))
    return edges


def plane_grid(nx: int, ny: int, metric: str = "path", y0: int = 0):
    """Integer grid ``{0..nx-1} x {y0..y0+ny-1}`` fibered by the first coordinate.

    ``metric="path"`` gives the unit-step grid-graph metric, ``"euclidean"``
    the Euclidean one.
    """
    ids = [(i, j) for i in range(nx) for j in range(y0, y0 + ny)]
    if metric == "path":
        edges = []
        for i, j in ids:
            if i + 1 < nx:
                edges.append(((i, j), (i + 1, j)))
            if j + 1 < y0 + ny:
                edges.append(((i, j), (i, j + 1)))
        space = from_graph(edges, ids)
    elif metric == "euclidean":
        space = from_cloud(np.array(ids, dtype=float), 2.0, ids)
    else:
        raise ValueError(f"unknown grid metric {metric!r}")
    quotient = quotient_from_labels(space, [p[0] for p in ids])
    return space, quotient


def graph_section(space, quotient, heights):
    """Section ``y -> (y, heights[y])`` of a plane grid."""
    return make_section(space, quotient, {y: (y, int(h)) for y, h in zip(quotient.fiber_ids, heights)})


def cycle_quotient(n: int, period: int):
    """Cycle graph on ``n`` vertices, fibers = residues mod ``period`` (``period | n``)."""
    if n % period:
        raise ValueError("period must divide n")
    edges = [(i, (i + 1) % n) for i in range(n)]
    space = from_graph(edges, list(range(n)))
    quotient = quotient_from_labels(space, [i % period for i in range(n)])
    return space, quotient


def transitivity_counterexample():
    """Anchored triple on which composing two strong relations needs more than twice the constant.

    Fibers Y0={x} and Y1={p, q, s}; with alpha=1, p~q and q~s hold at L=1
    while p~s fails at L=2.
    """
    ids = ("x", "p", "q", "s")
    table = [
        [0, 1, 2, 4],
        [1, 0, 2, 5],
        [2, 2, 0, 4],
        [4, 5, 4, 0],
    ]
    space = from_table(table, ids)
    quotient = make_quotient(space, {"Y0": ["x"], "Y1": ["p", "q", "s"]})
    secs = [make_section(space, quotient, {"Y0": "x", "Y1": t}) for t in ("p", "q", "s")]
    return space, quotient, secs


def ball_inclusion_counterexample():
    """A (1, 0.5)-Hölder section whose large-radius ball images break the (L+1) r^alpha inclusion."""
    ids = ("p", "q", "s")
    table = [
        [0, 4, 6],
        [4, 0, 2],
        [6, 2, 0],
    ]
    space = from_table(table, ids)
    quotient = make_quotient(space, {"F1": ["p"], "F2": ["q", "s"]})
    return space, quotient, make_section(space, quotient, {"F1": "p", "F2": "s"})


# random instances -------------------------------------------------------


def random_partition(rng, n: int, m: int) -> np.ndarray:
    """Labels in ``0..m-1`` with every label used at least once."""
    labels = np.concatenate([np.arange(m), rng.integers(0, m, n - m)])
    rng.shuffle(labels)
    return labels


def random_space(rng, n: int, kind: str | None = None):
    """Random metric on ``n`` points: Euclidean/l1 cloud or weighted-graph metric."""
    kind = kind or rng.choice(["euclid", "l1", "graph"])
    if kind == "euclid":
        return from_cloud(rng.uniform(0, 3, size=(n, 2)), 2.0)
    if kind == "l1":
        return from_cloud(rng.uniform(0, 3, size=(n, 3)), 1.0)
    if kind == "graph":
        return random_graph_space(rng, n, unit=False)
    raise ValueError(kind)


def random_graph_space(rng, n: int, unit: bool = True, extra: float = 0.3):
    """Random connected graph metric: a random spanning tree plus extra edges."""
    order = rng.permutation(n)
    edges = []
    for k in range(1, n):
        edges.append((int(order[k]), int(order[rng.integers(0, k)])))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra:
                edges.append((i, j))
    if unit:
        edges = [(u, v, 1.0) for u, v in edges]
    else:
        edges = [(u, v, float(rng.uniform(0.2, 2.0))) for u, v in edges]
    return from_graph(edges, list(range(n)))


def random_instance(rng, n_range=(4, 12), m_range=(2, 6), kind=None):
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    m = int(rng.integers(m_range[0], min(m_range[1], n) + 1))
    space = random_space(rng, n, kind)
    quotient = quotient_from_labels(space, random_partition(rng, n, m))
    # fiber ids are first-seen labels; relabel to sorted ints for readability
    return space, quotient


def random_section(rng, space, quotient, fixed=None):
    """Uniformly random section; ``fixed`` pins ``{fiber_id: point_id}`` entries."""
    members = quotient.members
    choice = {f: members[f][rng.integers(len(members[f]))] for f in quotient.fiber_ids}
    if fixed:
        choice.update(fixed)
    return make_section(space, quotient, choice)
