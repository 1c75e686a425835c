"""Intrinsic Hölder inequalities on finite sections.

A section ``phi`` is intrinsically ``(L, alpha)``-Hölder when for every
ordered pair of distinct fibers ``(y1, y2)``

    d(phi(y1), phi(y2)) <= L * D**alpha + D,   D = dist(phi(y1), fiber y2).

All scans run over ordered fiber pairs; ``D > 0`` whenever ``y1 != y2``
because ``phi(y1)`` lies outside fiber ``y2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

import numpy as np

from .errors import (
    AnchorMismatch,
    EpsilonOutOfRange,
    NoConvergentSubsequence,
    ParameterError,
    PremiseFailed,
)
from .metric import (
    HolderParams,
    Section,
    check_alpha,
    fiber_distance_rows,
    full_positions,
    section_positions,
)

REL_TOL = 1e-9


def default_tolerance(space, tol=None) -> float:
    """Relative verdict tolerance: 0 on integer tables, ``1e-9`` otherwise."""
    if tol is not None:
        return float(tol)
    return 0.0 if space.integral else REL_TOL


def holder_bound(L, D, alpha):
    """``L * D**alpha + D`` (elementwise)."""
    return L * np.power(D, alpha) + D


def _pair_tables(space, quotient, section):
    pos = full_positions(space, quotient, section)
    d = space.dist[np.ix_(pos, pos)]
    D = fiber_distance_rows(space, quotient, pos)
    return pos, d, D


def _offdiag(m):
    return ~np.eye(m, dtype=bool)


def _fiber_pair(quotient, flat_index):
    i, j = divmod(int(flat_index), quotient.m)
    return (quotient.fiber_ids[i], quotient.fiber_ids[j])


@dataclass
class HolderCertificate:
    params: HolderParams
    fiber_ids: tuple
    per_pair_slack: np.ndarray = field(repr=False)  # NaN on the diagonal
    minimal_L: float
    worst_pair: tuple | None
    slack_min: float
    tolerance: float
    verdict: bool
    strict_verdict: bool
    failing_pair: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "claim": f"intrinsically ({self.params.L!r}, {self.params.alpha!r})-Hölder",
            "verdict": "pass" if self.verdict else "fail",
            "strict_verdict": "pass" if self.strict_verdict else "fail",
            "minimal_L": self.minimal_L,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "slack_min": self.slack_min,
            "tolerance": self.tolerance,
        }

    def slack_rows(self):
        """``(y1, y2, slack)`` rows over ordered pairs of distinct fibers."""
        m = len(self.fiber_ids)
        for i in range(m):
            for j in range(m):
                if i != j:
                    yield self.fiber_ids[i], self.fiber_ids[j], float(self.per_pair_slack[i, j])


def _minimal_from_tables(d, D, alpha, quotient):
    m = d.shape[0]
    if m < 2:
        return 0.0, None
    ratio = np.full((m, m), -np.inf)
    off = _offdiag(m)
    ratio[off] = (d[off] - D[off]) / np.power(D[off], alpha)
    k = int(np.argmax(ratio))  # first maximum in row-major order
    return max(0.0, float(ratio.flat[k])), _fiber_pair(quotient, k)


def check_holder(space, quotient, section: Section, params: HolderParams, tol=None) -> HolderCertificate:
    """Evaluate the intrinsic Hölder inequality on every ordered fiber pair."""
    _, d, D = _pair_tables(space, quotient, section)
    m = quotient.m
    rel = default_tolerance(space, tol)
    slack = holder_bound(params.L, D, params.alpha) - d
    np.fill_diagonal(slack, np.nan)
    off = _offdiag(m)
    minimal, worst = _minimal_from_tables(d, D, params.alpha, quotient)
    if m < 2:
        return HolderCertificate(params, quotient.fiber_ids, slack, 0.0, None, np.inf, rel, True, True)
    s = np.where(off, slack, np.inf)
    margin = s + rel * (1.0 + np.abs(d))
    ok = bool(np.all(margin >= 0))
    failing = None if ok else _fiber_pair(quotient, int(np.argmin(margin)))
    return HolderCertificate(
        params=params,
        fiber_ids=quotient.fiber_ids,
        per_pair_slack=slack,
        minimal_L=minimal,
        worst_pair=worst,
        slack_min=float(s.min()),
        tolerance=rel,
        verdict=ok,
        strict_verdict=bool(np.all(s >= 0)),
        failing_pair=failing,
    )


def minimal_holder_constant(space, quotient, section, alpha):
    """Smallest ``L >= 0`` making the section pass, with the worst ordered pair.

    Ties resolve to the first pair in fiber order.
    """
    alpha = check_alpha(alpha)
    _, d, D = _pair_tables(space, quotient, section)
    return _minimal_from_tables(d, D, alpha, quotient)


def diameter_bound_k(space, quotient, section) -> float:
    """``max over (y1, y2) of dist(phi(y1), fiber y2)``; the diagonal contributes 0."""
    _, _, D = _pair_tables(space, quotient, section)
    return float(D.max()) if D.size else 0.0


def minimal_global_constant(space, quotient, section, alpha):
    """Smallest ``K`` with ``d <= K * D**alpha`` on every ordered pair of distinct fibers."""
    alpha = check_alpha(alpha)
    _, d, D = _pair_tables(space, quotient, section)
    m = quotient.m
    if m < 2:
        return 0.0, None
    ratio = np.full((m, m), -np.inf)
    off = _offdiag(m)
    ratio[off] = d[off] / np.power(D[off], alpha)
    k = int(np.argmax(ratio))
    return float(ratio.flat[k]), _fiber_pair(quotient, k)


def bound_K_from_L(L, alpha, k) -> float:
    """Global constant implied by a two-term constant ``L`` on a base of spread ``k``."""
    if L < 0 or k < 0:
        raise ParameterError("L and k must be nonnegative")
    check_alpha(alpha)
    return L + 3 * (floor(k) + 1)


# cones ------------------------------------------------------------------


@dataclass
class ConeSpec:
    apex: object
    params: HolderParams
    members: frozenset
    fiber: frozenset = frozenset()  # the apex's fiber

    @property
    def horizontal_members(self) -> frozenset:
        """Members outside the apex's fiber."""
        return self.members - self.fiber

    @property
    def vertical_members(self) -> frozenset:
        """Members in the apex's fiber (always the whole fiber minus the apex)."""
        return self.members & self.fiber


def cone_points(space, quotient, apex, params: HolderParams) -> ConeSpec:
    """Points ``x'`` with ``L * D(x')**alpha + D(x') < dist(x', apex)``,
    ``D`` measured to the apex's fiber (strict, no tolerance)."""
    i = space.index(apex)
    fiber = quotient.labels[i]
    D = fiber_distance_rows(space, quotient, np.arange(space.n))[:, fiber]
    inside = holder_bound(params.L, D, params.alpha) < space.dist[:, i]
    return ConeSpec(
        apex,
        params,
        frozenset(space.point_ids[j] for j in np.flatnonzero(inside)),
        frozenset(space.point_ids[j] for j in quotient.member_positions[fiber]),
    )


@dataclass
class ConeAvoidance:
    holds: bool
    witness: tuple | None  # (apex, offending graph point)

    def __bool__(self):
        return self.holds


def cone_avoidance_check(space, quotient, section, params: HolderParams, tol=None) -> ConeAvoidance:
    """True iff no graph point sits in the cone of another graph point.

    Membership uses the same relative tolerance as :func:`check_holder`, so
    the two verdicts coincide.
    """
    pos = full_positions(space, quotient, section)
    rel = default_tolerance(space, tol)
    all_D = fiber_distance_rows(space, quotient, pos)
    for a, apex in enumerate(pos):
        D = all_D[:, quotient.labels[apex]]
        dd = space.dist[pos, apex]
        excess = dd - holder_bound(params.L, D, params.alpha)
        inside = excess > rel * (1.0 + np.abs(dd))
        if np.any(inside):
            b = int(np.argmax(inside))
            return ConeAvoidance(False, (space.point_ids[apex], space.point_ids[pos[b]]))
    return ConeAvoidance(True, None)


# relations with respect to a base section --------------------------------


@dataclass
class WrtCertificate:
    base: Section
    subject: Section
    anchor: object
    anchor_fiber: object
    params: HolderParams
    mode: str
    fiber_ids: tuple
    lhs: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    tolerance: float
    minimal_L: float

    @property
    def slacks(self) -> np.ndarray:
        return self.rhs - self.lhs

    @property
    def verdict(self) -> bool:
        return bool(np.all(self.slacks + self.tolerance * (1.0 + np.abs(self.lhs)) >= 0))

    @property
    def strict_verdict(self) -> bool:
        return bool(np.all(self.slacks >= 0))

    @property
    def failing_fibers(self) -> list:
        bad = self.slacks + self.tolerance * (1.0 + np.abs(self.lhs)) < 0
        return [self.fiber_ids[i] for i in np.flatnonzero(bad)]

    def to_dict(self) -> dict:
        return {
            "claim": f"{self.mode} ({self.params.L!r}, {self.params.alpha!r}) relation at {self.anchor!r}",
            "verdict": "pass" if self.verdict else "fail",
            "strict_verdict": "pass" if self.strict_verdict else "fail",
            "minimal_L": self.minimal_L,
            "slack_min": float(self.slacks.min()),
            "failing_fibers": self.failing_fibers,
            "tolerance": self.tolerance,
        }


def _anchor(space, quotient, phi, psi, anchor_fiber):
    p = full_positions(space, quotient, phi)
    q = full_positions(space, quotient, psi)
    j = quotient.fiber_index(anchor_fiber)
    if p[j] != q[j]:
        raise AnchorMismatch(
            f"sections disagree at {anchor_fiber!r}: {space.point_ids[p[j]]!r} vs {space.point_ids[q[j]]!r}"
        )
    return p, q, j


def _wrt_terms(space, quotient, phi, psi, anchor_fiber):
    p, q, j = _anchor(space, quotient, phi, psi, anchor_fiber)
    xhat = q[j]
    lhs = space.dist[p, q]
    a = space.dist[xhat, q]  # anchor to base graph
    b = space.dist[xhat, p]  # anchor to subject graph
    return p, q, j, lhs, a, b


def _min_constant(lhs, a, alpha, skip):
    keep = np.ones(len(lhs), dtype=bool)
    keep[skip] = False
    if not np.any(keep):
        return 0.0
    return max(0.0, float(np.max((lhs[keep] - a[keep]) / np.power(a[keep], alpha))))


def check_wrt(space, quotient, phi, psi, anchor_fiber, params: HolderParams, tol=None) -> WrtCertificate:
    """``phi`` relative to base ``psi`` at the shared point over ``anchor_fiber``:

    ``d(phi(y), psi(y)) <= L a**alpha + a`` with ``a = d(psi(anchor), psi(y))``.
    """
    p, q, j, lhs, a, _ = _wrt_terms(space, quotient, phi, psi, anchor_fiber)
    return WrtCertificate(
        base=psi,
        subject=phi,
        anchor=space.point_ids[q[j]],
        anchor_fiber=anchor_fiber,
        params=params,
        mode="weak",
        fiber_ids=quotient.fiber_ids,
        lhs=lhs,
        rhs=holder_bound(params.L, a, params.alpha),
        tolerance=default_tolerance(space, tol),
        minimal_L=_min_constant(lhs, a, params.alpha, j),
    )


def check_wrt_strong(space, quotient, phi, psi, anchor_fiber, params: HolderParams, tol=None) -> WrtCertificate:
    """Symmetric variant: the bound is the smaller of the two one-sided bounds,
    measured from the anchor to ``psi(y)`` and to ``phi(y)``."""
    p, q, j, lhs, a, b = _wrt_terms(space, quotient, phi, psi, anchor_fiber)
    rhs = np.minimum(holder_bound(params.L, a, params.alpha), holder_bound(params.L, b, params.alpha))
    minimal = max(
        _min_constant(lhs, a, params.alpha, j),
        _min_constant(lhs, b, params.alpha, j),
    )
    return WrtCertificate(
        base=psi,
        subject=phi,
        anchor=space.point_ids[q[j]],
        anchor_fiber=anchor_fiber,
        params=params,
        mode="strong",
        fiber_ids=quotient.fiber_ids,
        lhs=lhs,
        rhs=rhs,
        tolerance=default_tolerance(space, tol),
        minimal_L=minimal,
    )


def minimal_wrt_constant(space, quotient, phi, psi, anchor_fiber, alpha, strong=False) -> float:
    alpha = check_alpha(alpha)
    _, _, j, lhs, a, b = _wrt_terms(space, quotient, phi, psi, anchor_fiber)
    c = _min_constant(lhs, a, alpha, j)
    if strong:
        c = max(c, _min_constant(lhs, b, alpha, j))
    return c


@dataclass
class TransitivityReport:
    L1: float
    L2: float
    composed_L: float
    certificate: WrtCertificate
    measured_composed_L: float

    @property
    def verdict(self) -> bool:
        return self.certificate.verdict

    def to_dict(self) -> dict:
        out = self.certificate.to_dict()
        out.update(L1=self.L1, L2=self.L2, composed_L=self.composed_L,
                   measured_composed_L=self.measured_composed_L)
        return out


def strong_transitivity_check(space, quotient, phi, psi, eta, anchor_fiber, L1, L2, alpha, tol=None):
    """Compose ``phi ~ psi`` (at ``L1``) and ``psi ~ eta`` (at ``L2``) into ``phi ~ eta``
    at ``2 max(L1, L2)``.

    Raises :class:`PremiseFailed` unless both strong relations hold.  The
    returned report carries the verdict of the composed relation and the
    smallest constant that would actually make it hold.
    """
    first = check_wrt_strong(space, quotient, phi, psi, anchor_fiber, HolderParams(L1, alpha), tol)
    second = check_wrt_strong(space, quotient, psi, eta, anchor_fiber, HolderParams(L2, alpha), tol)
    if not first.verdict:
        raise PremiseFailed(f"first relation fails at fibers {first.failing_fibers}")
    if not second.verdict:
        raise PremiseFailed(f"second relation fails at fibers {second.failing_fibers}")
    composed = 2 * max(L1, L2)
    cert = check_wrt_strong(space, quotient, phi, eta, anchor_fiber, HolderParams(composed, alpha), tol)
    return TransitivityReport(L1, L2, composed, cert, cert.minimal_L)


def _section_order_key(space, quotient, section):
    return tuple(int(i) for i in full_positions(space, quotient, section))


def equivalence_classes(space, quotient, sections, psi, anchor_fiber, alpha):
    """Partition ``sections`` by "strongly related at some finite constant".

    Returns ``(classes, constants)``: classes are lists of sections in a
    canonical order; ``constants[(i, j)]`` is the minimal strong constant
    between the i-th and j-th canonical sections.
    """
    alpha = check_alpha(alpha)
    unique = {}
    for s in sections:
        _anchor(space, quotient, s, psi, anchor_fiber)
        unique.setdefault(_section_order_key(space, quotient, s), s)
    keys = sorted(unique)
    ordered = [unique[k] for k in keys]
    n = len(ordered)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    constants = {}
    for i in range(n):
        for j in range(n):
            c = minimal_wrt_constant(space, quotient, ordered[i], ordered[j], anchor_fiber, alpha, strong=True)
            constants[(i, j)] = c
            if np.isfinite(c):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(ordered[i])
    return [groups[r] for r in sorted(groups)], constants, ordered


# point bounds ---------------------------------------------------------------


def point_bound_constant(space, quotient, section, anchor_fiber, exponent) -> float:
    """Smallest ``c`` with ``d(x0, phi(y)) <= c * dist(x0, fiber y)**exponent`` for all ``y``."""
    pos = full_positions(space, quotient, section)
    j = quotient.fiber_index(anchor_fiber)
    x0 = pos[j]
    D = fiber_distance_rows(space, quotient, [x0])[0]
    keep = np.arange(quotient.m) != j
    if not np.any(keep):
        return 0.0
    return float(np.max(space.dist[x0, pos[keep]] / np.power(D[keep], exponent)))


@dataclass
class PointBoundReport:
    direction: str
    asserted_constant: float
    asserted_exponent: float
    measured_constant: float
    verdict: bool
    details: dict

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "verdict": "pass" if self.verdict else "fail",
            "asserted_constant": self.asserted_constant,
            "asserted_exponent": self.asserted_exponent,
            "measured_constant": self.measured_constant,
            **self.details,
        }


def wrt_pointbound_equivalence(
    space, quotient, phi, phi0, y0, direction, *, L, alpha,
    L1=None, beta=None, L2=None, gamma=None, tol=None,
) -> PointBoundReport:
    """Pass between the relative form and the anchored point bound.

    ``direction="forward"``: ``phi`` is ``(L1, beta)``-related to the
    ``(L, alpha)``-Hölder base ``phi0`` at ``x0 = phi(y0)``; asserts
    ``d(x0, phi(y)) <= L*K*(L1+1) * dist(x0, fiber y)**(beta*alpha)`` with
    ``K = bound_K_from_L(L, alpha, diameter_bound_k(phi0))``.

    ``direction="reverse"``: ``phi`` satisfies the point bound with
    ``(L2, gamma)``; asserts the weak relation to ``phi0`` at ``(L2, gamma)``.
    """
    if L < 1:
        raise ParameterError(f"base constant L must be >= 1, got {L}")
    base = check_holder(space, quotient, phi0, HolderParams(L, alpha), tol)
    if not base.verdict:
        raise PremiseFailed(f"base section is not ({L}, {alpha})-Hölder (pair {base.failing_pair})")
    _anchor(space, quotient, phi, phi0, y0)
    rel = default_tolerance(space, tol)
    pos = full_positions(space, quotient, phi)
    j = quotient.fiber_index(y0)
    x0 = pos[j]
    D = fiber_distance_rows(space, quotient, [x0])[0]
    lhs = space.dist[x0, pos]
    if direction == "forward":
        if L1 is None or beta is None:
            raise ParameterError("forward direction needs L1 and beta")
        premise = check_wrt(space, quotient, phi, phi0, y0, HolderParams(L1, beta), tol)
        if not premise.verdict:
            raise PremiseFailed(f"relative premise fails at {premise.failing_fibers}")
        k = diameter_bound_k(space, quotient, phi0)
        K = bound_K_from_L(L, alpha, k)
        const = L * K * (L1 + 1)
        expo = beta * alpha
        rhs = const * np.power(D, expo)
        ok = bool(np.all(rhs - lhs + rel * (1.0 + lhs) >= 0))
        measured = point_bound_constant(space, quotient, phi, y0, expo)
        return PointBoundReport("forward", const, expo, measured, ok, {"k": k, "K": K, "L": L, "L1": L1, "beta": beta})
    if direction == "reverse":
        if L2 is None or gamma is None:
            raise ParameterError("reverse direction needs L2 and gamma")
        check_alpha(gamma)
        rhs = L2 * np.power(D, gamma)
        if not np.all(rhs - lhs + rel * (1.0 + lhs) >= 0):
            raise PremiseFailed("point bound premise fails")
        cert = check_wrt(space, quotient, phi, phi0, y0, HolderParams(L2, gamma), tol)
        return PointBoundReport("reverse", L2, gamma, cert.minimal_L, cert.verdict, {"L2": L2, "gamma": gamma})
    raise ParameterError(f"direction must be 'forward' or 'reverse', got {direction!r}")


# continuity and families ------------------------------------------------------


def continuity_modulus(params: HolderParams, epsilon: float) -> float:
    """Radius ``(epsilon / (L + 1)) ** (1 / alpha)``; requires ``0 < epsilon <= L + 1``."""
    if not (0 < epsilon <= params.L + 1):
        raise EpsilonOutOfRange(f"epsilon must lie in (0, L+1] = (0, {params.L + 1}], got {epsilon}")
    return (epsilon / (params.L + 1)) ** (1.0 / params.alpha)


def verify_continuity(space, quotient, section, params, epsilon, tol=None):
    """Check ``d(phi(y), phi(pi(x'))) <= epsilon`` whenever ``d(phi(y), x') <= r(epsilon)``.

    Returns ``(holds, radius, worst)`` where ``worst`` is the largest
    displacement met.
    """
    cert = check_holder(space, quotient, section, params, tol)
    if not cert.verdict:
        raise PremiseFailed("section fails the Hölder check")
    r = continuity_modulus(params, epsilon)
    rel = default_tolerance(space, tol)
    pos = full_positions(space, quotient, section)
    worst = 0.0
    for x in pos:
        near = np.flatnonzero(space.dist[x] <= r)
        moved = space.dist[x, pos[quotient.labels[near]]]
        if moved.size:
            worst = max(worst, float(moved.max()))
    return worst <= epsilon + rel * (1.0 + epsilon), r, worst


@dataclass
class EquiboundReport:
    max_lhs: float
    bound: float
    per_fiber_bound: dict
    verdict: bool

    def to_dict(self):
        return {"verdict": "pass" if self.verdict else "fail", "max_lhs": self.max_lhs,
                "bound": self.bound, "per_fiber_bound": self.per_fiber_bound}


def family_equibound_check(space, quotient, family, params, y0, K, tol=None) -> EquiboundReport:
    """``d(x0, phi(y)) <= diam(K) + (L+1) max_{x in K} max(D(x,y)**alpha, D(x,y))``
    for every member, every fiber ``y`` and every ``x0`` in ``K``."""
    Kpos = np.array(sorted(space.index(x) for x in K), dtype=int)
    if Kpos.size == 0:
        raise PremiseFailed("K is empty")
    j0 = quotient.fiber_index(y0)
    positions = []
    for phi in family:
        cert = check_holder(space, quotient, phi, params, tol)
        if not cert.verdict:
            raise PremiseFailed(f"family member {phi.choice} fails the Hölder check")
        pos = full_positions(space, quotient, phi)
        if pos[j0] not in set(Kpos.tolist()):
            raise PremiseFailed(f"family member {phi.choice} has phi(y0) outside K")
        positions.append(pos)
    diamK = float(space.dist[np.ix_(Kpos, Kpos)].max())
    DK = fiber_distance_rows(space, quotient, Kpos)  # |K| x m
    per_y = diamK + (params.L + 1) * np.max(np.maximum(np.power(DK, params.alpha), DK), axis=0)
    rel = default_tolerance(space, tol)
    max_lhs, ok = 0.0, True
    for pos in positions:
        lhs = space.dist[np.ix_(Kpos, pos)]  # every x0 in K, every y
        max_lhs = max(max_lhs, float(lhs.max()))
        ok &= bool(np.all(lhs <= per_y[None, :] + rel * (1.0 + per_y[None, :])))
    return EquiboundReport(max_lhs, float(per_y.max()), dict(zip(quotient.fiber_ids, per_y.tolist())), ok)


def uniform_openness_radius(space, quotient, K, y, epsilon) -> list:
    """Fibers ``y'`` reachable within ``epsilon`` (strictly) from every point of ``K`` in fiber ``y``."""
    if not epsilon > 0:
        raise EpsilonOutOfRange("epsilon must be positive")
    j = quotient.fiber_index(y)
    Kpos = [space.index(x) for x in K]
    start = [x for x in Kpos if quotient.labels[x] == j]
    if not start:
        return list(quotient.fiber_ids)
    D = fiber_distance_rows(space, quotient, start)
    ok = np.all(D < epsilon, axis=0)
    return [f for f, keep in zip(quotient.fiber_ids, ok) if keep]


@dataclass
class LimitReport:
    limit: Section
    subsequence: list
    certificate: HolderCertificate

    @property
    def verdict(self) -> bool:
        return self.certificate.verdict


def limit_closure_check(space, quotient, sequence, params, tol=None) -> LimitReport:
    """Extract a constant subsequence (most frequent element, earliest on ties)
    and check that its limit is still ``(L, alpha)``-Hölder."""
    sequence = list(sequence)
    if not sequence:
        raise NoConvergentSubsequence("empty sequence")
    counts, first = {}, {}
    for i, s in enumerate(sequence):
        if not check_holder(space, quotient, s, params, tol).verdict:
            raise PremiseFailed(f"sequence element {i} fails the Hölder check")
        k = s.key()
        counts[k] = counts.get(k, 0) + 1
        first.setdefault(k, i)
    best = min(counts, key=lambda k: (-counts[k], first[k]))
    limit = sequence[first[best]]
    sub = [i for i, s in enumerate(sequence) if s.key() == best]
    return LimitReport(limit, sub, check_holder(space, quotient, limit, params, tol))
