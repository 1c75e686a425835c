"""Sections as level sets, and extension of partial sections to global level sets.

Two directions:

* a function that is Hölder and biLipschitz on fibers has level sets that
  are graphs of intrinsic Hölder sections (:func:`section_from_level_set`);
* a partially defined intrinsic Hölder section lies in the zero set of a
  function ``f = max over anchors x0 of f_x0`` built from an auxiliary
  function ``tau`` whose level sets are section graphs
  (:func:`extend_partial_section`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AnchorOffLevel,
    HypothesisViolated,
    LevelAmbiguous,
    LevelMissesFiber,
    ParameterError,
    PremiseFailed,
)
from .holder import REL_TOL, check_holder
from .metric import HolderParams, check_alpha, fiber_distance_rows, section_positions, make_section

LEVEL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class FiberedFunction:
    """Values on the points of a space: reals, or point ids of a target space."""

    values: tuple
    target: object = None  # FiniteMetricSpace when values are target points

    def value_distances(self) -> np.ndarray:
        if self.target is None:
            v = np.asarray(self.values, dtype=float)
            return np.abs(v[:, None] - v[None, :])
        idx = np.array([self.target.index(z) for z in self.values])
        return self.target.dist[np.ix_(idx, idx)]

    @property
    def real(self) -> bool:
        return self.target is None


def fibered_from_mapping(space, mapping, target=None) -> FiberedFunction:
    return FiberedFunction(tuple(mapping[p] for p in space.point_ids), target)


def _holder_ratio(dz, d, exponent):
    off = ~np.eye(d.shape[0], dtype=bool)
    if not np.any(off):
        return 0.0
    return float(np.max(dz[off] / np.power(d[off], exponent)))


def _fiber_bilip(dz, d, labels):
    """Worst distortion ``max(dz/d, d/dz)`` over distinct co-fiber pairs (inf when dz = 0)."""
    same = (labels[:, None] == labels[None, :]) & ~np.eye(len(labels), dtype=bool)
    if not np.any(same):
        return 1.0
    a, b = dz[same], d[same]
    with np.errstate(divide="ignore"):
        inv = np.where(a > 0, b / np.where(a > 0, a, 1.0), np.inf)
    return float(max(np.max(a / b), np.max(inv)))


@dataclass
class FiberedReport:
    holder_constant: float
    fiber_bilip_constant: float
    claimed: tuple
    holder_ok: bool
    bilip_ok: bool

    @property
    def verdict(self) -> bool:
        return self.holder_ok and self.bilip_ok

    def to_dict(self):
        return {"verdict": "pass" if self.verdict else "fail",
                "holder_constant": self.holder_constant,
                "fiber_bilip_constant": self.fiber_bilip_constant,
                "claimed_lambda": self.claimed[0], "claimed_beta": self.claimed[1]}


def verify_fibered_claims(space, quotient, f: FiberedFunction, lam, beta, tol=REL_TOL) -> FiberedReport:
    """Measure the Hölder constant at exponent ``beta`` and the fiber biLipschitz constant."""
    check_alpha(beta)
    dz = f.value_distances()
    h = _holder_ratio(dz, space.dist, beta)
    b = _fiber_bilip(dz, space.dist, quotient.labels)
    slack = tol * (1.0 + lam)
    return FiberedReport(h, b, (lam, beta), h <= lam + slack, b <= lam + slack)


def _level_members(space, f: FiberedFunction, z0) -> np.ndarray:
    if not f.real:
        return np.array([v == z0 for v in f.values])
    v = np.asarray(f.values, dtype=float)
    exact = np.all(v == np.round(v)) and float(z0) == round(float(z0))
    if exact:
        return v == float(z0)
    return np.abs(v - float(z0)) <= LEVEL_TOL


def level_section(space, quotient, f: FiberedFunction, z0):
    """The section whose graph is ``f^-1(z0)``; raises if some fiber meets it 0 or 2+ times."""
    on = _level_members(space, f, z0)
    choice = {}
    for fid, idx in zip(quotient.fiber_ids, quotient.member_positions):
        hit = idx[on[idx]]
        if hit.size == 0:
            raise LevelMissesFiber(f"level {z0!r} misses fiber {fid!r}")
        if hit.size > 1:
            raise LevelAmbiguous(
                f"level {z0!r} meets fiber {fid!r} at {[space.point_ids[i] for i in hit]}"
            )
        choice[fid] = space.point_ids[int(hit[0])]
    return make_section(space, quotient, choice)


@dataclass
class LevelSetResult:
    section: object
    certificate: object
    claims: FiberedReport


def section_from_level_set(space, quotient, f: FiberedFunction, z0, lam, beta, tol=None) -> LevelSetResult:
    """Select ``f^-1(z0)`` as a section and certify it at ``(lam**2, beta)``."""
    claims = verify_fibered_claims(space, quotient, f, lam, beta)
    if not claims.verdict:
        raise PremiseFailed(
            f"f is not ({lam}, {beta})-Hölder and {lam}-biLipschitz on fibers "
            f"(measured {claims.holder_constant:.6g}, {claims.fiber_bilip_constant:.6g})"
        )
    sec = level_section(space, quotient, f, z0)
    cert = check_holder(space, quotient, sec, HolderParams(lam**2, beta), tol)
    return LevelSetResult(sec, cert, claims)


# extension ----------------------------------------------------------------


def kernel_value(dtau, delta, alpha, gamma):
    """Three-piece profile of one anchor, as a function of ``dtau = tau(x) - tau(x0)``.

    With ``E = delta**alpha + delta``: ``2 (dtau - gamma E)`` on the band
    ``|dtau| <= 2 gamma E``, ``dtau`` above it and ``3 dtau`` below it.
    """
    dtau = np.asarray(dtau, dtype=float)
    E = np.power(delta, alpha) + delta
    band = 2 * gamma * E
    return np.where(
        np.abs(dtau) <= band,
        2 * (dtau - gamma * E),
        np.where(dtau > 0, dtau, 3 * dtau),
    )


@dataclass(eq=False)
class ExtensionMachinery:
    space: object
    quotient: object
    tau: np.ndarray = field(repr=False)
    rho: np.ndarray = field(repr=False)
    alpha: float
    L: float
    k: float
    levels: dict = field(repr=False)  # level value -> point positions in fiber order
    measured: dict

    @property
    def gamma(self) -> float:
        return 2 * self.k * self.L + 1

    @property
    def holder_bound(self) -> float:
        return 2 * self.k + 4 * self.gamma * self.k

    def delta(self, x0: int) -> np.ndarray:
        """``rho(x0, level section through x0, evaluated at pi(x))`` for every point ``x``."""
        graph = self.levels[self.tau[x0]]
        return self.rho[x0, graph[self.quotient.labels]]


def build_machinery(space, quotient, tau, alpha, L=1.0, rho=None, k=None, tol=REL_TOL) -> ExtensionMachinery:
    """Check the auxiliary data and fix the common constant ``k``.

    Every attained level of ``tau`` must meet each fiber exactly once.  When
    ``k`` is omitted it is the smallest value (at least 1) that makes all
    measured hypotheses hold; when given, a larger measurement raises
    :class:`HypothesisViolated`.
    """
    alpha = check_alpha(alpha)
    if L < 1:
        raise ParameterError(f"L must be >= 1, got {L}")
    tau = np.asarray([tau[p] for p in space.point_ids] if isinstance(tau, dict) else tau, dtype=float)
    rho = space.dist if rho is None else np.asarray(rho, dtype=float)
    if rho.shape != space.dist.shape or not np.allclose(rho, rho.T):
        raise HypothesisViolated("rho must be a symmetric table over the points")
    off = ~np.eye(space.n, dtype=bool)
    if np.any(np.diag(rho) != 0) or np.any(rho[off] <= 0):
        raise HypothesisViolated("rho must vanish exactly on the diagonal")
    dz = np.abs(tau[:, None] - tau[None, :])
    measured = {
        "tau_holder": _holder_ratio(dz, space.dist, alpha),
        "tau_fiber_bilip": _fiber_bilip(dz, space.dist, quotient.labels),
        "rho_equivalence": float(np.max(np.maximum(rho[off] / space.dist[off], space.dist[off] / rho[off])))
        if np.any(off) else 1.0,
    }
    levels, level_L = {}, 0.0
    f = FiberedFunction(tuple(tau.tolist()))
    for value in np.unique(tau):
        try:
            sec = level_section(space, quotient, f, value)
        except (LevelMissesFiber, LevelAmbiguous) as exc:
            raise HypothesisViolated(f"level set is not a section graph: {exc}") from None
        _, ppos = section_positions(space, quotient, sec)
        levels[float(value)] = ppos
        level_L = max(level_L, check_holder(space, quotient, sec, HolderParams(1.0, alpha)).minimal_L)
    measured["level_sections_holder"] = level_L
    need = max([1.0] + list(measured.values()))
    if k is None:
        k = need
    elif need > k * (1 + tol):
        worst = max(measured, key=measured.get)
        raise HypothesisViolated(f"{worst} = {measured[worst]:.6g} exceeds k = {k}")
    return ExtensionMachinery(space, quotient, tau, rho, alpha, float(L), float(k), levels, measured)


def build_extension_kernel(machinery: ExtensionMachinery, x0, tau0, x) -> float:
    """Value at ``x`` of the profile anchored at ``x0``, which must lie on level ``tau0``."""
    S = machinery.space
    i = S.index(x0)
    if machinery.tau[i] != tau0:
        raise AnchorOffLevel(f"tau({x0!r}) = {machinery.tau[i]!r}, not {tau0!r}")
    j = S.index(x)
    delta = machinery.delta(i)[j]
    return float(kernel_value(machinery.tau[j] - machinery.tau[i], delta, machinery.alpha, machinery.gamma))


def kernel_table(machinery: ExtensionMachinery, x0: int) -> np.ndarray:
    dtau = machinery.tau - machinery.tau[x0]
    return kernel_value(dtau, machinery.delta(x0), machinery.alpha, machinery.gamma)


@dataclass
class ExtensionResult:
    anchors: list
    values: np.ndarray = field(repr=False)
    point_ids: tuple = field(repr=False)
    measured: dict = field(default_factory=dict)
    asserted: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def zero_set(self) -> list:
        return [p for p, v in zip(self.point_ids, self.values) if v == 0]

    @property
    def verdict(self) -> bool:
        return all(self.checks.values())

    def to_dict(self):
        return {
            "anchors": list(self.anchors),
            "values": {str(p): float(v) for p, v in zip(self.point_ids, self.values)},
            "zero_set": [str(p) for p in self.zero_set],
            "measured_constants": self.measured,
            "asserted_bounds": self.asserted,
            "checks": {k: "pass" if v else "fail" for k, v in self.checks.items()},
        }


def partial_holder_constant(space, quotient, phi, alpha) -> float:
    """Minimal two-term constant of a possibly partial section over its own fibers."""
    fpos, anchors = section_positions(space, quotient, phi)
    if len(anchors) < 2:
        return 0.0
    d = space.dist[np.ix_(anchors, anchors)]
    D = fiber_distance_rows(space, quotient, anchors)[:, fpos]
    off = ~np.eye(len(anchors), dtype=bool)
    return max(0.0, float(np.max((d[off] - D[off]) / np.power(D[off], alpha))))


def extend_partial_section(machinery: ExtensionMachinery, phi, tol=REL_TOL) -> ExtensionResult:
    """Tabulate ``f = max over anchors of the anchored profiles`` on all points.

    ``phi`` may be partial; it must be intrinsically ``(L, alpha)``-Hölder
    over the fibers where it is defined.
    """
    S, Q = machinery.space, machinery.quotient
    alpha, L, k = machinery.alpha, machinery.L, machinery.k
    _, anchors = section_positions(S, Q, phi)
    if len(anchors) == 0:
        raise PremiseFailed("partial section is empty")
    need = partial_holder_constant(S, Q, phi, alpha)
    if need > L * (1 + tol) + tol:
        raise PremiseFailed(f"partial section is not ({L}, {alpha})-Hölder on its domain (needs {need:.6g})")

    profiles = np.empty((len(anchors), S.n))
    delta_lip = 0.0
    delta_fiberwise = True
    for r, x0 in enumerate(anchors):
        delta = machinery.delta(x0)
        delta_fiberwise &= all(np.all(delta[idx] == delta[idx[0]]) for idx in Q.member_positions)
        on = np.flatnonzero(np.abs(machinery.tau) <= delta)
        if on.size > 1:
            dd = S.dist[np.ix_(on, on)]
            o = ~np.eye(on.size, dtype=bool)
            delta_lip = max(delta_lip, float(np.max(np.abs(delta[on][:, None] - delta[on][None, :])[o] / dd[o])))
        profiles[r] = kernel_table(machinery, x0)
    if delta_lip > k * (1 + tol):
        raise HypothesisViolated(f"anchor distance map is {delta_lip:.6g}-Lipschitz, above k = {k}")

    f = profiles.max(axis=0)
    dz = np.abs(f[:, None] - f[None, :])
    holder_f = _holder_ratio(dz, S.dist, alpha)
    holder_profiles = max(_holder_ratio(np.abs(p[:, None] - p[None, :]), S.dist, alpha) for p in profiles)
    bound = machinery.holder_bound
    at_anchors = profiles[:, anchors]  # profile r evaluated at every anchor
    measured = {
        "k": k,
        "gamma": machinery.gamma,
        "holder_constant": holder_f,
        "max_profile_holder_constant": holder_profiles,
        "fiber_bilip_constant": _fiber_bilip(dz, S.dist, Q.labels),
        "anchor_map_lipschitz": delta_lip,
        "max_profile_at_anchors": float(at_anchors.max()),
        **{f"hypothesis_{name}": v for name, v in machinery.measured.items()},
    }
    asserted = {"holder_bound": bound}
    checks = {
        "anchors_in_zero_set": bool(np.all(f[anchors] == 0)),
        "profiles_vanish_at_own_anchor": bool(np.all(np.diag(at_anchors) == 0)),
        "profiles_nonpositive_on_anchors": bool(np.all(at_anchors <= 0)),
        "delta_constant_on_fibers": bool(delta_fiberwise),
        "fiber_bilip_finite": bool(np.isfinite(measured["fiber_bilip_constant"])),
        "max_keeps_holder_constant": holder_f <= holder_profiles * (1 + tol) + tol,
    }
    if S.path_metric:
        asserted["holder_bound_with_slack"] = 2 * bound
        checks["holder_within_slack"] = holder_f <= 2 * bound
    return ExtensionResult(
        anchors=[S.point_ids[i] for i in anchors],
        values=f,
        point_ids=S.point_ids,
        measured=measured,
        asserted=asserted,
        checks=checks,
    )
