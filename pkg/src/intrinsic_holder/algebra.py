"""Sections of linear quotient maps between finite-dimensional normed spaces.

The base is sampled: a :class:`LinearSection` is a table of ambient points,
one per base sample point, with ``A @ table[i] == base_sample[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import linprog, minimize

from .errors import (
    AnchorMismatch,
    InvalidPNorm,
    IterationDivergence,
    NotASection,
    PremiseFailed,
    RankDeficientMap,
    SampleMismatch,
    ZeroScalar,
)
from .holder import REL_TOL, holder_bound
from .metric import check_alpha

SECTION_TOL = 1e-9
PNORM_TOL = 1e-8


def norm(v, p) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if p == 2:
        return np.sqrt((v * v).sum(axis=-1))
    if np.isinf(p):
        return np.abs(v).max(axis=-1)
    return (np.abs(v) ** p).sum(axis=-1) ** (1.0 / p)


@dataclass(frozen=True, eq=False)
class NormedQuotient:
    A: np.ndarray = field(repr=False)
    base_sample: np.ndarray = field(repr=False)
    p: float = 2.0

    @property
    def ambient_dim(self) -> int:
        return self.A.shape[1]

    @property
    def base_dim(self) -> int:
        return self.A.shape[0]

    @cached_property
    def pinv(self) -> np.ndarray:
        return np.linalg.pinv(self.A)

    @cached_property
    def kernel_basis(self) -> np.ndarray:
        _, _, vt = np.linalg.svd(self.A)
        return vt[self.base_dim :].T  # n x (n - m)

    def scaled(self, lam) -> "NormedQuotient":
        """The map ``A / lam`` over the same base sample."""
        return NormedQuotient(self.A / lam, self.base_sample, self.p)


def make_normed_quotient(A, base_sample, p=2.0) -> NormedQuotient:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    p = float(p)
    if not p >= 1:
        raise InvalidPNorm(f"p must be >= 1, got {p}")
    if np.linalg.matrix_rank(A) < A.shape[0]:
        raise RankDeficientMap(f"map of shape {A.shape} does not have full row rank")
    Y = np.asarray(base_sample, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None] if A.shape[0] == 1 else Y[None, :]
    if Y.shape[1] != A.shape[0]:
        raise SampleMismatch(f"base points have dimension {Y.shape[1]}, map has {A.shape[0]} rows")
    return NormedQuotient(A, Y, p)


@dataclass(frozen=True, eq=False)
class LinearSection:
    table: np.ndarray = field(repr=False)  # one ambient point per base sample point

    def __len__(self):
        return self.table.shape[0]


def _check_section(nq: NormedQuotient, table) -> LinearSection:
    table = np.atleast_2d(np.asarray(table, dtype=float))
    if table.shape != (len(nq.base_sample), nq.ambient_dim):
        raise SampleMismatch(
            f"section table shape {table.shape} does not match "
            f"{len(nq.base_sample)} samples in dimension {nq.ambient_dim}"
        )
    err = np.abs(table @ nq.A.T - nq.base_sample)
    scale = 1.0 + np.abs(nq.base_sample)
    if np.any(err > SECTION_TOL * scale):
        i = int(np.argmax((err / scale).max(axis=1)))
        raise NotASection(f"A maps the section's point {i} to {table[i] @ nq.A.T}, not {nq.base_sample[i]}")
    return LinearSection(table)


def make_linear_section(nq, table) -> LinearSection:
    return _check_section(nq, table)


def section_from_function(nq, fn) -> LinearSection:
    """Tabulate ``fn(y)`` over the base sample."""
    return _check_section(nq, np.array([fn(y) for y in nq.base_sample], dtype=float))


def linear_fiber_distance(nq: NormedQuotient, x, y) -> float:
    """Distance from ``x`` to the affine fiber ``{z : A z = y}``.

    Closed form for ``p = 2``; linear programming for ``p`` in {1, inf};
    numerical minimization over the kernel otherwise.
    """
    x = np.asarray(x, dtype=float)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if nq.p == 2:
        return float(np.linalg.norm(nq.pinv @ (nq.A @ x - y)))
    r0 = x - nq.pinv @ y  # x minus a particular solution
    N = nq.kernel_basis
    if N.shape[1] == 0:
        return float(norm(r0, nq.p))
    return _pnorm_residual(r0, N, nq.p)


def _pnorm_residual(r0, N, p) -> float:
    """``min_z ||r0 - N z||_p``."""
    n, k = N.shape
    if p == 1 or np.isinf(p):
        # variables: z (k), t (n or 1)
        if p == 1:
            c = np.concatenate([np.zeros(k), np.ones(n)])
            A_ub = np.block([[-N, -np.eye(n)], [N, -np.eye(n)]])
        else:
            c = np.concatenate([np.zeros(k), [1.0]])
            A_ub = np.block([[-N, -np.ones((n, 1))], [N, -np.ones((n, 1))]])
        b_ub = np.concatenate([-r0, r0])
        bounds = [(None, None)] * k + [(0, None)] * (len(c) - k)
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if not res.success:
            raise IterationDivergence(f"linear program failed: {res.message}")
        return float(res.fun)
    z0 = np.linalg.lstsq(N, r0, rcond=None)[0]

    def obj(z):
        return float((np.abs(r0 - N @ z) ** p).sum())

    def grad(z):
        r = r0 - N @ z
        return -N.T @ (p * np.abs(r) ** (p - 1) * np.sign(r))

    res = minimize(obj, z0, jac=grad, method="BFGS", options={"gtol": PNORM_TOL})
    if not np.isfinite(res.fun):
        raise IterationDivergence("p-norm projection diverged")
    return float(res.fun ** (1.0 / p))


def _pair_distances(nq, sec: LinearSection):
    """``d[i, j] = ||phi(y_i) - phi(y_j)||`` and ``D[i, j] = dist(phi(y_i), fiber of y_j)``."""
    T = sec.table
    d = norm(T[:, None, :] - T[None, :, :], nq.p)
    if nq.p == 2:
        diff = (T @ nq.A.T)[:, None, :] - nq.base_sample[None, :, :]
        D = np.linalg.norm(diff @ nq.pinv.T, axis=-1)
    else:
        k = len(T)
        D = np.zeros((k, k))
        for i in range(k):
            for j in range(k):
                if i != j:
                    D[i, j] = linear_fiber_distance(nq, T[i], nq.base_sample[j])
    return d, D


def linear_global_constant(nq, sec, alpha) -> float:
    """Smallest ``K`` with ``||phi(y1) - phi(y2)|| <= K * D**alpha`` over sample pairs."""
    alpha = check_alpha(alpha)
    d, D = _pair_distances(nq, sec)
    off = ~np.eye(len(sec), dtype=bool) & (D > 0)
    if not np.any(off):
        return 0.0
    return float(np.max(d[off] / np.power(D[off], alpha)))


def linear_holder_constant(nq, sec, alpha) -> float:
    """Smallest two-term constant ``L`` over sample pairs."""
    alpha = check_alpha(alpha)
    d, D = _pair_distances(nq, sec)
    off = ~np.eye(len(sec), dtype=bool) & (D > 0)
    if not np.any(off):
        return 0.0
    return max(0.0, float(np.max((d[off] - D[off]) / np.power(D[off], alpha))))


def linear_check_global(nq, sec, K, alpha, tol=REL_TOL) -> bool:
    d, D = _pair_distances(nq, sec)
    off = ~np.eye(len(sec), dtype=bool)
    rhs = K * np.power(D, alpha)
    return bool(np.all((rhs - d + tol * (1.0 + d))[off] >= 0))


def _anchor_point(phi, psi, anchor) -> np.ndarray:
    x = psi.table[anchor]
    if not np.allclose(phi.table[anchor], x, rtol=0, atol=SECTION_TOL * (1 + np.abs(x).max())):
        raise AnchorMismatch(f"sections disagree at sample {anchor}")
    return x


@dataclass
class LinearWrt:
    lhs: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    L: float
    alpha: float
    minimal_L: float
    tolerance: float = REL_TOL

    @property
    def verdict(self) -> bool:
        return bool(np.all(self.rhs - self.lhs + self.tolerance * (1.0 + self.lhs) >= 0))

    def to_dict(self):
        return {"verdict": "pass" if self.verdict else "fail", "L": self.L, "alpha": self.alpha,
                "minimal_L": self.minimal_L, "slack_min": float((self.rhs - self.lhs).min())}


def linear_check_wrt(nq, phi, psi, anchor: int, L, alpha) -> LinearWrt:
    """``||phi(y) - psi(y)|| <= L a**alpha + a`` with ``a = ||psi(anchor) - psi(y)||``."""
    alpha = check_alpha(alpha)
    xhat = _anchor_point(phi, psi, anchor)
    lhs = norm(phi.table - psi.table, nq.p)
    a = norm(psi.table - xhat, nq.p)
    keep = a > 0
    minimal = 0.0
    if np.any(keep):
        minimal = max(0.0, float(np.max((lhs[keep] - a[keep]) / np.power(a[keep], alpha))))
    return LinearWrt(lhs, holder_bound(L, a, alpha), L, alpha, minimal)


def linear_minimal_wrt_constant(nq, phi, psi, anchor, alpha) -> float:
    return linear_check_wrt(nq, phi, psi, anchor, 1.0, alpha).minimal_L


def affine_combine(nq, phi: LinearSection, eta: LinearSection, t: float) -> LinearSection:
    """Pointwise ``t phi + (1 - t) eta``; again a section by linearity."""
    if not 0 <= t <= 1:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    if phi.table.shape != eta.table.shape:
        raise SampleMismatch("sections are tabulated on different samples")
    return _check_section(nq, t * phi.table + (1 - t) * eta.table)


@dataclass
class ScaleResult:
    quotient: NormedQuotient
    section: LinearSection
    factor: float  # |lambda| ** (1 - alpha)
    derived_L: float | None


def scale_section(nq, phi, lam, alpha=1.0, L=None) -> ScaleResult:
    """``lam * phi`` as a section of ``A / lam``.

    A global constant ``L`` of ``phi`` turns into ``|lam|**(1 - alpha) * L``.
    """
    if lam == 0:
        raise ZeroScalar("lambda must be nonzero")
    alpha = check_alpha(alpha)
    scaled = nq.scaled(lam)
    factor = abs(lam) ** (1 - alpha)
    return ScaleResult(
        scaled,
        _check_section(scaled, lam * phi.table),
        factor,
        None if L is None else factor * L,
    )


@dataclass
class SumCertificate:
    quotient: NormedQuotient
    section: LinearSection
    base: LinearSection
    L_phi: float
    L_eta: float
    asserted_L: float
    certificate: LinearWrt

    @property
    def verdict(self) -> bool:
        return self.certificate.verdict

    def to_dict(self):
        out = self.certificate.to_dict()
        out.update(L_phi=self.L_phi, L_eta=self.L_eta, asserted_L=self.asserted_L)
        return out


def sum_sections(nq, phi, eta, psi, anchor: int, alpha, L_phi=None, L_eta=None) -> SumCertificate:
    """``phi + eta`` relative to ``2 psi`` for the halved map ``A / 2``.

    Both summands must be related to ``psi`` at the shared anchor; missing
    constants default to the measured minimal ones.  The sum is checked at
    ``2**(1 - alpha) * max(L_phi, L_eta)``.
    """
    alpha = check_alpha(alpha)
    _anchor_point(phi, psi, anchor)
    _anchor_point(eta, psi, anchor)
    if L_phi is None:
        L_phi = linear_minimal_wrt_constant(nq, phi, psi, anchor, alpha)
    if L_eta is None:
        L_eta = linear_minimal_wrt_constant(nq, eta, psi, anchor, alpha)
    for name, sec, L in (("phi", phi, L_phi), ("eta", eta, L_eta)):
        if not linear_check_wrt(nq, sec, psi, anchor, L, alpha).verdict:
            raise PremiseFailed(f"{name} is not related to the base at constant {L}")
    half = nq.scaled(2.0)
    w = _check_section(half, phi.table + eta.table)
    base = _check_section(half, 2 * psi.table)
    asserted = 2 ** (1 - alpha) * max(L_phi, L_eta)
    cert = linear_check_wrt(half, w, base, anchor, asserted, alpha)
    return SumCertificate(half, w, base, L_phi, L_eta, asserted, cert)
