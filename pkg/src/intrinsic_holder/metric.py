"""Finite metric spaces, quotient structures and sections.

Everything here is immutable after construction.  Points and fibers keep the
caller's opaque identifiers; numerical work is done on integer positions in
the order the identifiers were given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import (
    AlphaOutOfRange,
    Asymmetry,
    DisconnectedGraph,
    EmptyFiber,
    InputError,
    InvalidPNorm,
    NegativeDistance,
    NonzeroDiagonal,
    NotASection,
    NotSquare,
    OverlappingFibers,
    ParameterError,
    ResolutionTooSmall,
    TriangleViolation,
    UncoveredPoint,
    UnknownFiber,
    UnknownPoint,
    ZeroDistanceDistinctPoints,
)

METRIC_TOL = 1e-12
# exhaustive triangle scans above this size are opt-in
TRIANGLE_SCAN_LIMIT = 512
_MAX_WITNESSES = 16


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Points with a validated symmetric distance table.

    ``path_metric`` records that the table came from shortest paths in a
    graph, so every distance is realized by a chain of adjacent steps.
    """

    point_ids: tuple
    dist: np.ndarray = field(repr=False)
    path_metric: bool = False

    @property
    def n(self) -> int:
        return len(self.point_ids)

    @cached_property
    def _position(self) -> dict:
        return {p: i for i, p in enumerate(self.point_ids)}

    def index(self, point) -> int:
        try:
            return self._position[point]
        except (KeyError, TypeError):
            raise UnknownPoint(f"unknown point {point!r}") from None

    def d(self, x, y) -> float:
        return float(self.dist[self.index(x), self.index(y)])

    @cached_property
    def integral(self) -> bool:
        """True when every distance is an integer (exact comparisons apply)."""
        return bool(np.all(self.dist == np.round(self.dist)))

    @cached_property
    def diameter(self) -> float:
        return float(self.dist.max()) if self.n else 0.0


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


def _default_ids(n: int) -> tuple:
    return tuple(range(n))


def validate_metric(
    dist_table,
    point_ids: Sequence[Hashable] | None = None,
    tol: float = METRIC_TOL,
    check_triangle: bool = True,
    path_metric: bool = False,
) -> FiniteMetricSpace:
    """Validate a distance table and wrap it as a :class:`FiniteMetricSpace`.

    Raises the first violated axiom, carrying the witnessing pair or triple.
    Triangle witnesses ``(x, y, z)`` mean ``d(x, z) > d(x, y) + d(y, z)``.
    """
    D = np.asarray(dist_table, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise NotSquare(f"distance table must be square, got shape {D.shape}")
    n = D.shape[0]
    ids = _default_ids(n) if point_ids is None else tuple(point_ids)
    if len(ids) != n:
        raise InputError(f"{len(ids)} point ids for a {n}x{n} table")
    if len(set(ids)) != n:
        raise InputError("point ids are not distinct")
    if not np.all(np.isfinite(D)):
        i, j = np.argwhere(~np.isfinite(D))[0]
        raise NegativeDistance("non-finite distance", (ids[i], ids[j]))
    if np.any(D < 0):
        i, j = np.argwhere(D < 0)[0]
        raise NegativeDistance(f"negative distance d({ids[i]!r},{ids[j]!r})", (ids[i], ids[j]))
    diag = np.abs(np.diag(D)) > tol
    if np.any(diag):
        i = int(np.argmax(diag))
        raise NonzeroDiagonal(f"d({ids[i]!r},{ids[i]!r}) != 0", (ids[i], ids[i]))
    asym = np.abs(D - D.T) > tol
    if np.any(asym):
        i, j = np.argwhere(asym)[0]
        raise Asymmetry(f"d({ids[i]!r},{ids[j]!r}) != d({ids[j]!r},{ids[i]!r})", (ids[i], ids[j]))
    zero = (D <= tol) & ~np.eye(n, dtype=bool)
    if np.any(zero):
        i, j = np.argwhere(zero)[0]
        raise ZeroDistanceDistinctPoints(
            f"distinct points {ids[i]!r}, {ids[j]!r} at distance 0", (ids[i], ids[j])
        )
    if check_triangle:
        found = triangle_violations(D, tol)
        if found:
            named = [(ids[x], ids[y], ids[z]) for x, y, z in found]
            x, y, z = found[0]
            raise TriangleViolation(
                f"d({ids[x]!r},{ids[z]!r}) = {D[x, z]:g} > "
                f"d({ids[x]!r},{ids[y]!r}) + d({ids[y]!r},{ids[z]!r}) = {D[x, y] + D[y, z]:g}",
                named[0],
                named,
            )
    D = 0.5 * (D + D.T)
    np.fill_diagonal(D, 0.0)
    return FiniteMetricSpace(ids, _freeze(D), path_metric)


def triangle_violations(D: np.ndarray, tol: float = METRIC_TOL, limit: int = _MAX_WITNESSES):
    """Triples ``(x, y, z)`` with ``x < z`` and ``D[x,z] > D[x,y] + D[y,z] + tol``.

    Scans intermediate points ``y`` in order, then pairs row-major.
    """
    out = []
    for y in range(D.shape[0]):
        bad = np.triu(D > D[:, [y]] + D[[y], :] + tol, k=1)
        for x, z in np.argwhere(bad):
            out.append((int(x), y, int(z)))
            if len(out) >= limit:
                return out
    return out


def from_table(dist_table, point_ids=None, tol: float = METRIC_TOL) -> FiniteMetricSpace:
    return validate_metric(dist_table, point_ids, tol)


def from_graph(edges: Iterable, point_ids: Sequence | None = None) -> FiniteMetricSpace:
    """Shortest-path metric of an undirected weighted graph.

    ``edges`` holds ``(u, v)`` or ``(u, v, weight)`` items; weights default
    to 1 and must be positive.
    """
    edges = [tuple(e) for e in edges]
    if point_ids is None:
        seen = {}
        for e in edges:
            seen.setdefault(e[0], None)
            seen.setdefault(e[1], None)
        point_ids = tuple(seen)
    ids = tuple(point_ids)
    pos = {p: i for i, p in enumerate(ids)}
    n = len(ids)
    rows, cols, w = [], [], []
    for e in edges:
        if len(e) not in (2, 3):
            raise InputError(f"malformed edge {e!r}")
        u, v = e[0], e[1]
        weight = float(e[2]) if len(e) == 3 else 1.0
        if u not in pos or v not in pos:
            raise UnknownPoint(f"edge {e!r} mentions an unknown point")
        if not weight > 0:
            raise InputError(f"edge {e!r} must have positive weight")
        rows.append(pos[u])
        cols.append(pos[v])
        w.append(weight)
    if n == 0:
        raise InputError("graph has no points")
    # keep the lightest parallel edge
    best = {}
    for i, j, x in zip(rows, cols, w):
        key = (min(i, j), max(i, j))
        if key not in best or x < best[key]:
            best[key] = x
    if best:
        ij = np.array(list(best), dtype=int)
        vals = np.array(list(best.values()))
        g = csr_matrix((vals, (ij[:, 0], ij[:, 1])), shape=(n, n))
    else:
        g = csr_matrix((n, n))
    ncomp, _ = connected_components(g, directed=False)
    if ncomp > 1:
        raise DisconnectedGraph(f"graph has {ncomp} connected components")
    unit = bool(best) and all(x == 1.0 for x in best.values())
    D = shortest_path(g, method="D", directed=False, unweighted=unit)
    return validate_metric(D, ids, check_triangle=n <= TRIANGLE_SCAN_LIMIT, path_metric=True)


def pairwise_pnorm(coords: np.ndarray, p: float) -> np.ndarray:
    coords = np.asarray(coords, dtype=float)
    diff = np.abs(coords[:, None, :] - coords[None, :, :])
    if np.isinf(p):
        return diff.max(axis=-1)
    if p == 2:
        return np.sqrt((diff**2).sum(axis=-1))
    return (diff**p).sum(axis=-1) ** (1.0 / p)


def from_cloud(coords, p: float = 2.0, point_ids=None) -> FiniteMetricSpace:
    """Point cloud under the ``p``-norm distance, ``p >= 1`` (``inf`` allowed)."""
    p = float(p)
    if not p >= 1:
        raise InvalidPNorm(f"p must be >= 1, got {p}")
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    n = coords.shape[0]
    ids = _default_ids(n) if point_ids is None else tuple(point_ids)
    if n > 2048:
        D = np.empty((n, n))
        for s in range(0, n, 512):
            diff = np.abs(coords[s : s + 512, None, :] - coords[None, :, :])
            if np.isinf(p):
                D[s : s + 512] = diff.max(axis=-1)
            else:
                D[s : s + 512] = (diff**p).sum(axis=-1) ** (1.0 / p)
    else:
        D = pairwise_pnorm(coords, p)
    return validate_metric(D, ids, check_triangle=n <= TRIANGLE_SCAN_LIMIT)


def build_space(source) -> FiniteMetricSpace:
    """Build a space from a document: ``dist`` table, ``graph`` edges, or ``cloud`` rows."""
    if isinstance(source, FiniteMetricSpace):
        return source
    if not isinstance(source, Mapping):
        return from_table(source)
    ids = source.get("points")
    if "dist" in source:
        return from_table(source["dist"], ids)
    if "graph" in source:
        return from_graph(source["graph"], ids)
    if "cloud" in source:
        return from_cloud(source["cloud"], source.get("p", 2.0), ids)
    raise InputError("space document needs one of 'dist', 'graph', 'cloud'")


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    """A labeled partition of the points of a space into nonempty fibers."""

    point_ids: tuple
    fiber_ids: tuple
    labels: np.ndarray = field(repr=False)  # point position -> fiber position

    @cached_property
    def _position(self) -> dict:
        return {f: i for i, f in enumerate(self.fiber_ids)}

    @property
    def m(self) -> int:
        return len(self.fiber_ids)

    def fiber_index(self, fiber) -> int:
        try:
            return self._position[fiber]
        except (KeyError, TypeError):
            raise UnknownFiber(f"unknown fiber {fiber!r}") from None

    @cached_property
    def member_positions(self) -> tuple:
        order = np.argsort(self.labels, kind="stable")
        cuts = np.searchsorted(self.labels[order], np.arange(1, self.m))
        return tuple(np.split(order, cuts))

    @property
    def fiber_of(self) -> dict:
        return {p: self.fiber_ids[k] for p, k in zip(self.point_ids, self.labels)}

    @property
    def members(self) -> dict:
        return {
            f: tuple(self.point_ids[i] for i in idx)
            for f, idx in zip(self.fiber_ids, self.member_positions)
        }


def make_quotient(space: FiniteMetricSpace, partition) -> QuotientStructure:
    """Quotient from ``{fiber_id: [point_ids]}`` (or a list of blocks)."""
    if not isinstance(partition, Mapping):
        partition = {i: block for i, block in enumerate(partition)}
    labels = np.full(space.n, -1, dtype=int)
    fiber_ids = tuple(partition)
    for k, f in enumerate(fiber_ids):
        block = list(partition[f])
        if not block:
            raise EmptyFiber(f"fiber {f!r} is empty")
        for p in block:
            i = space.index(p)
            if labels[i] != -1:
                raise OverlappingFibers(
                    f"point {p!r} lies in fibers {fiber_ids[labels[i]]!r} and {f!r}"
                )
            labels[i] = k
    if np.any(labels < 0):
        p = space.point_ids[int(np.argmax(labels < 0))]
        raise UncoveredPoint(f"point {p!r} belongs to no fiber")
    labels.setflags(write=False)
    return QuotientStructure(space.point_ids, fiber_ids, labels)


def quotient_from_labels(space: FiniteMetricSpace, labels: Sequence) -> QuotientStructure:
    """Quotient whose fiber ids are the distinct labels, in first-seen order."""
    blocks: dict = {}
    for p, lab in zip(space.point_ids, labels):
        blocks.setdefault(lab, []).append(p)
    return make_quotient(space, blocks)


def _check_pair(space: FiniteMetricSpace, quotient: QuotientStructure) -> None:
    if space.point_ids != quotient.point_ids:
        raise InputError("quotient was built over a different space")


def fiber_distance_rows(space, quotient, rows) -> np.ndarray:
    """Matrix ``out[i, j] = min(dist(rows[i], members(j)))``."""
    _check_pair(space, quotient)
    rows = np.asarray(rows, dtype=int)
    order = np.concatenate(quotient.member_positions)
    starts = np.concatenate(([0], np.cumsum([len(b) for b in quotient.member_positions])[:-1]))
    sub = space.dist[np.ix_(rows, order)]
    return np.minimum.reduceat(sub, starts, axis=1)


def fiber_distance(space, quotient, x, y) -> float:
    """Distance from point ``x`` to the fiber ``y``."""
    i = space.index(x)
    j = quotient.fiber_index(y)
    _check_pair(space, quotient)
    return float(space.dist[i, quotient.member_positions[j]].min())


@dataclass(frozen=True)
class HolderParams:
    """Intrinsic constant ``L > 0`` and exponent ``alpha`` in (0, 1]."""

    L: float
    alpha: float

    def __post_init__(self):
        if not (np.isfinite(self.L) and self.L > 0):
            raise ParameterError(f"L must be positive, got {self.L}")
        if not (0 < self.alpha <= 1):
            raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {self.alpha}")


def check_alpha(alpha: float) -> float:
    if not (0 < alpha <= 1):
        raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {alpha}")
    return float(alpha)


@dataclass(frozen=True)
class Section:
    """One chosen point per fiber; ``fiber_ids`` may be a subset for partial sections."""

    fiber_ids: tuple
    point_ids: tuple

    @property
    def choice(self) -> dict:
        return dict(zip(self.fiber_ids, self.point_ids))

    def __getitem__(self, fiber):
        try:
            return self.point_ids[self.fiber_ids.index(fiber)]
        except ValueError:
            raise UnknownFiber(f"section is undefined on {fiber!r}") from None

    def key(self) -> tuple:
        return tuple(zip(self.fiber_ids, self.point_ids))


def make_section(space, quotient, choice, partial: bool = False) -> Section:
    """Validate ``{fiber_id: point_id}`` (or a sequence in fiber order) as a section."""
    if not isinstance(choice, Mapping):
        choice = dict(zip(quotient.fiber_ids, choice))
    if not partial:
        missing = [f for f in quotient.fiber_ids if f not in choice]
        if missing:
            raise NotASection(f"section undefined on fiber {missing[0]!r}")
    fibers, points = [], []
    for f in quotient.fiber_ids:  # canonical fiber order
        if f in choice:
            fibers.append(f)
            points.append(choice[f])
    extra = [f for f in choice if f not in set(quotient.fiber_ids)]
    if extra:
        raise NotASection(f"unknown fiber {extra[0]!r} in section")
    sec = Section(tuple(fibers), tuple(points))
    section_positions(space, quotient, sec)
    return sec


def section_positions(space, quotient, section: Section):
    """Return ``(fiber_positions, point_positions)``, checking pi(phi(y)) = y."""
    _check_pair(space, quotient)
    fpos = np.empty(len(section.fiber_ids), dtype=int)
    ppos = np.empty(len(section.fiber_ids), dtype=int)
    for k, (f, p) in enumerate(zip(section.fiber_ids, section.point_ids)):
        fpos[k] = quotient.fiber_index(f)
        try:
            ppos[k] = space.index(p)
        except UnknownPoint:
            raise NotASection(f"section sends {f!r} to unknown point {p!r}") from None
        if quotient.labels[ppos[k]] != fpos[k]:
            raise NotASection(
                f"section sends {f!r} to {p!r}, which lies in fiber "
                f"{quotient.fiber_ids[quotient.labels[ppos[k]]]!r}"
            )
    return fpos, ppos


def full_positions(space, quotient, section: Section) -> np.ndarray:
    """Point positions of a total section in fiber order."""
    fpos, ppos = section_positions(space, quotient, section)
    if len(fpos) != quotient.m:
        raise NotASection("section is only partially defined")
    out = np.empty(quotient.m, dtype=int)
    out[fpos] = ppos
    return out


def heisenberg_sample(resolution: int, distance_kind: str = "box"):
    """Uniform lattice sample of the first Heisenberg group.

    Points are ``(x, y, t)`` in exponential coordinates with each coordinate
    on ``{0, h, ..., 1}``, ``h = 1 / (resolution - 1)``.  The group law is
    ``(x, y, t)(x', y', t') = (x + x', y + y', t + t' + (x y' - y x') / 2)``.
    Fibers are the cosets of the vertical subgroup, i.e. points sharing
    ``(x, y)``.

    ``distance_kind``:

    * ``"box"``: ``d(p, q) = max(|z|, |s| ** 0.5)`` where ``(z, s) = p^-1 q``
      (a left-invariant homogeneous distance);
    * ``"euclidean"``: Euclidean distance of the coordinate triples.
    """
    if resolution < 2:
        raise ResolutionTooSmall(f"resolution must be >= 2, got {resolution}")
    if distance_kind not in ("box", "euclidean"):
        raise ParameterError(f"unknown distance_kind {distance_kind!r}")
    g = np.linspace(0.0, 1.0, resolution)
    X, Y, T = np.meshgrid(g, g, g, indexing="ij")
    P = np.column_stack([X.ravel(), Y.ravel(), T.ravel()])
    ii, jj, kk = np.meshgrid(*(np.arange(resolution),) * 3, indexing="ij")
    ids = tuple(zip(ii.ravel().tolist(), jj.ravel().tolist(), kk.ravel().tolist()))
    if distance_kind == "euclidean":
        D = pairwise_pnorm(P, 2)
    else:
        x, y, t = P[:, 0], P[:, 1], P[:, 2]
        dx = x[None, :] - x[:, None]
        dy = y[None, :] - y[:, None]
        dt = t[None, :] - t[:, None] - 0.5 * (x[:, None] * y[None, :] - y[:, None] * x[None, :])
        D = np.maximum(np.hypot(dx, dy), np.sqrt(np.abs(dt)))
    space = validate_metric(D, ids, tol=1e-12, check_triangle=len(ids) <= TRIANGLE_SCAN_LIMIT)
    blocks: dict = {}
    for pid in ids:
        blocks.setdefault(pid[:2], []).append(pid)
    return space, make_quotient(space, blocks)
