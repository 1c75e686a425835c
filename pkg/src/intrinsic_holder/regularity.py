"""Ball images, pushforward measures and Ahlfors-type growth of section graphs.

Balls are closed.  A measure on the base is a weight per fiber; its
pushforward along a section ``phi`` gives a ball around ``x`` in the graph
the total weight of the fibers ``y`` with ``dist(x, phi(y)) <= r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CenterOffGraph, DegenerateMasses, ParameterError, PremiseFailed
from .holder import check_holder
from .metric import HolderParams, check_alpha, full_positions

R0 = 1.0  # radii above this are outside the local regime
TRANSFER_TOL = 1e-12


@dataclass(frozen=True)
class MeasureOnY:
    fiber_ids: tuple
    weights: np.ndarray = field(repr=False)

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    def scaled(self, s: float) -> "MeasureOnY":
        if not s > 0:
            raise ParameterError(f"scale must be positive, got {s}")
        return MeasureOnY(self.fiber_ids, self.weights * s)


def make_measure(quotient, weights=None) -> MeasureOnY:
    """Weights per fiber id; ``None`` gives counting measure."""
    if weights is None:
        w = np.ones(quotient.m)
    else:
        missing = [f for f in quotient.fiber_ids if f not in weights]
        if missing:
            raise ParameterError(f"measure has no weight for fibers {missing!r}")
        w = np.array([float(weights[f]) for f in quotient.fiber_ids])
    if np.any(~np.isfinite(w)) or np.any(w < 0):
        raise ParameterError("measure weights must be finite and nonnegative")
    if w.sum() <= 0:
        raise ParameterError("measure has zero total mass")
    w.setflags(write=False)
    return MeasureOnY(tuple(quotient.fiber_ids), w)


def _graph_center(space, quotient, section, x):
    pos = full_positions(space, quotient, section)
    i = space.index(x)
    if i not in set(pos.tolist()):
        raise CenterOffGraph(f"{x!r} is not on the graph of the section")
    return pos, i


def pushforward_ball_mass(space, quotient, section, mu: MeasureOnY, x, r) -> float:
    """Weight of the fibers ``y`` with ``dist(x, phi(y)) <= r``."""
    if not r > 0:
        raise ParameterError(f"radius must be positive, got {r}")
    pos, i = _graph_center(space, quotient, section, x)
    return float(mu.weights[space.dist[i, pos] <= r].sum())


def ball_masses(space, quotient, section, mu, x, radii) -> np.ndarray:
    pos, i = _graph_center(space, quotient, section, x)
    d = space.dist[i, pos]
    radii = np.asarray(radii, dtype=float)
    return np.array([mu.weights[d <= r].sum() for r in radii])


def ball_image(space, quotient, x: int, r: float) -> frozenset:
    """Fiber ids met by the closed ball ``B(x, r)``; ``x`` is a position."""
    inside = space.dist[x] <= r
    return frozenset(quotient.fiber_ids[k] for k in np.unique(quotient.labels[inside]))


@dataclass
class BallInclusion:
    center: object
    r: float
    radius: float  # (L + 1) r**alpha
    sharp_radius: float  # L r**alpha + r, valid for every r
    ball_image: frozenset  # pi(B(p, r))
    graph_image: frozenset  # pi(B(p, radius) & graph)
    full_image: frozenset  # pi(B(p, radius))
    sharp_graph_image: frozenset  # pi(B(p, sharp_radius) & graph)

    @property
    def first(self) -> bool:
        return self.ball_image <= self.graph_image

    @property
    def second(self) -> bool:
        return self.graph_image <= self.full_image

    @property
    def sharp(self) -> bool:
        return self.ball_image <= self.sharp_graph_image

    @property
    def verdict(self) -> bool:
        return self.first and self.second

    def missing(self) -> list:
        return sorted(self.ball_image - self.graph_image, key=repr)


def check_ball_inclusion(space, quotient, section, params: HolderParams, p, r, tol=None) -> BallInclusion:
    """Compare the fiber sets ``pi(B(p, r))``, ``pi(B(p, R) & graph)`` and ``pi(B(p, R))``.

    ``R = (L + 1) r**alpha``.  Both containments are exact set comparisons.
    The first one is only guaranteed for ``r <= 1``; the report also carries
    the image at ``L r**alpha + r``, which contains ``pi(B(p, r))`` for every
    ``r``.
    """
    if not r > 0:
        raise ParameterError(f"radius must be positive, got {r}")
    cert = check_holder(space, quotient, section, params, tol)
    if not cert.verdict:
        raise PremiseFailed(f"section is not ({params.L}, {params.alpha})-Hölder")
    pos, i = _graph_center(space, quotient, section, p)
    L, a = params.L, params.alpha
    R = (L + 1) * r**a
    Rs = L * r**a + r
    d = space.dist[i, pos]
    on_graph = lambda rad: frozenset(quotient.fiber_ids[k] for k in np.flatnonzero(d <= rad))
    return BallInclusion(
        center=p,
        r=float(r),
        radius=float(R),
        sharp_radius=float(Rs),
        ball_image=ball_image(space, quotient, i, r),
        graph_image=on_graph(R),
        full_image=ball_image(space, quotient, i, R),
        sharp_graph_image=on_graph(Rs),
    )


# measure compatibility ----------------------------------------------------


def image_masses(space, quotient, mu, r) -> np.ndarray:
    """``mu(pi(B(x, r)))`` for every point ``x``."""
    inside = space.dist <= r
    hits = np.zeros((space.n, quotient.m), dtype=bool)
    for k, idx in enumerate(quotient.member_positions):
        hits[:, k] = inside[:, idx].any(axis=1)
    return hits.astype(float) @ mu.weights


@dataclass
class Compatibility:
    C: float
    worst: tuple | None  # (x, x', r)
    per_radius: dict


def measure_compatibility(space, quotient, mu, r_grid) -> Compatibility:
    """Smallest ``C`` with ``mu(pi(B(x, r))) <= C mu(pi(B(x', r)))`` over co-fiber pairs and radii."""
    radii = [float(r) for r in r_grid]
    if not radii or any(not r > 0 for r in radii):
        raise ParameterError("r_grid must be a nonempty set of positive radii")
    best, worst, per = 1.0, None, {}
    same = quotient.labels[:, None] == quotient.labels[None, :]
    for r in radii:
        m = image_masses(space, quotient, mu, r)
        num, den = m[:, None], m[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.where(num > 0, np.inf, 1.0))
        ratio = np.where(same, ratio, 0.0)
        flat = int(np.argmax(ratio))
        c = float(ratio.flat[flat])
        per[r] = c
        if c > best:
            a, b = divmod(flat, space.n)
            best, worst = c, (space.point_ids[a], space.point_ids[b], r)
    return Compatibility(best, worst, per)


def measure_compatibility_constant(space, quotient, mu, r_grid) -> float:
    return measure_compatibility(space, quotient, mu, r_grid).C


# growth fits --------------------------------------------------------------


@dataclass
class BallGrowthProfile:
    center: object
    radii: np.ndarray
    masses: np.ndarray
    fitted_Q: float
    fitted_C: float
    residual: float
    r0: float | None = None

    def to_dict(self):
        return {"Q": self.fitted_Q, "C": self.fitted_C, "residual": self.residual, "r0": self.r0}

    def rows(self):
        return [(float(r), float(m)) for r, m in zip(self.radii, self.masses)]


def fit_power_law(radii, masses):
    """OLS fit of ``log(mass) = Q log(r) + log(C)``; returns ``(Q, C, residual)``."""
    X = np.column_stack([np.log(radii), np.ones(len(radii))])
    coef, *_ = np.linalg.lstsq(X, np.log(masses), rcond=None)
    resid = float(np.sum((X @ coef - np.log(masses)) ** 2))
    return float(coef[0]), float(np.exp(coef[1])), resid


def fit_ahlfors_exponent(space, quotient, section, mu, center, r_grid, r0=None) -> BallGrowthProfile:
    """Fit the growth exponent of pushforward ball masses around ``center``."""
    radii = np.asarray(sorted(float(r) for r in r_grid))
    if radii.size < 3 or np.any(radii <= 0) or np.unique(radii).size != radii.size:
        raise DegenerateMasses("need at least 3 distinct positive radii")
    masses = ball_masses(space, quotient, section, mu, center, radii)
    if np.any(masses <= 0):
        raise DegenerateMasses("zero mass at some radius; log-log fit undefined")
    Q, C, res = fit_power_law(radii, masses)
    return BallGrowthProfile(center, radii, masses, Q, C, res, r0)


# transfer -----------------------------------------------------------------


@dataclass
class TransferReport:
    exponent: float  # alpha * (l + 1 - alpha)
    C: float
    c1: dict  # center fiber -> minimal c1 for phi
    radii: list
    rows: list = field(repr=False)  # (fiber, r, mass_psi, bound)
    psi_fit: BallGrowthProfile | None = None

    @property
    def verdict(self) -> bool:
        return all(m <= b * (1 + TRANSFER_TOL) for _, _, m, b in self.rows)

    @property
    def worst(self):
        return max(self.rows, key=lambda t: t[2] / t[3] if t[3] > 0 else np.inf, default=None)

    def to_dict(self):
        out = {"verdict": "pass" if self.verdict else "fail", "exponent": self.exponent,
               "C": self.C, "c1_max": max(self.c1.values()), "radii": self.radii}
        if self.psi_fit is not None:
            out["psi_fit"] = self.psi_fit.to_dict()
        return out


def transfer_regularity_check(space, quotient, phi, psi, params: HolderParams, mu, ell, r_grid,
                              r0=R0, centers=None, tol=None) -> TransferReport:
    """Upper growth bound for ``psi`` derived from ``phi`` through ball images.

    For each center fiber ``y`` and grid radius ``r <= r0`` the bound is
    ``mass_psi(psi(y), r) <= c1 C (L+1)**(l+1-alpha) r**(alpha (l+1-alpha))``
    where ``C`` is the compatibility constant on the grid and ``c1`` the
    smallest constant with ``mass_phi(phi(y), s) <= c1 s**(l+1-alpha)`` at
    every grid radius and every dilated radius ``(L+1) r**alpha``.
    """
    alpha = check_alpha(params.alpha)
    if alpha >= 1:
        raise ParameterError("alpha must lie in (0, 1)")
    L = params.L
    for name, sec in (("phi", phi), ("psi", psi)):
        if not check_holder(space, quotient, sec, params, tol).verdict:
            raise PremiseFailed(f"{name} is not ({L}, {alpha})-Hölder")
    radii = sorted(float(r) for r in r_grid if 0 < r <= r0)
    if not radii:
        raise ParameterError(f"r_grid has no radius in (0, {r0}]")
    comp = measure_compatibility(space, quotient, mu, radii)
    if not np.isfinite(comp.C):
        raise PremiseFailed(f"measure compatibility constant is infinite (at {comp.worst!r})")
    e = ell + 1 - alpha
    if e <= 0:
        raise ParameterError("need l + 1 - alpha > 0")
    dilated = [(L + 1) * r**alpha for r in radii]
    support = np.array(sorted(set(radii) | set(dilated)))
    ppos = full_positions(space, quotient, phi)
    qpos = full_positions(space, quotient, psi)
    fibers = range(quotient.m) if centers is None else [quotient.fiber_index(c) for c in centers]
    c1, rows = {}, []
    for k in fibers:
        fid = quotient.fiber_ids[k]
        mphi = np.array([mu.weights[space.dist[ppos[k], ppos] <= s].sum() for s in support])
        c1[fid] = float(np.max(mphi / support**e))
        for r in radii:
            mass = float(mu.weights[space.dist[qpos[k], qpos] <= r].sum())
            bound = c1[fid] * comp.C * (L + 1) ** e * r ** (alpha * e)
            rows.append((fid, r, mass, bound))
    fit = None
    try:
        fit = fit_ahlfors_exponent(space, quotient, psi, mu, space.point_ids[qpos[next(iter(fibers))]], radii, r0)
    except DegenerateMasses:
        pass
    return TransferReport(alpha * e, comp.C, c1, radii, rows, fit)
