"""Seeded property suite: every checkable claim, run over fixtures and random instances.

Each ``claim_*`` function returns a list of :class:`Claim`; :func:`run_suite`
collects them all.  Brute-force oracles used here are written as plain
loops, independent of the vectorized code paths they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg
from .errors import HypothesisViolated
from .extension import (
    FiberedFunction,
    build_machinery,
    extend_partial_section,
    kernel_value,
    partial_holder_constant,
    section_from_level_set,
    verify_fibered_claims,
)
from .fixtures import (
    graph_section,
    plane_grid,
    random_graph_space,
    random_instance,
    random_partition,
    random_section,
    transitivity_counterexample,
    w4,
    w4_section,
)
from .holder import (
    bound_K_from_L,
    check_holder,
    check_wrt_strong,
    cone_avoidance_check,
    cone_points,
    diameter_bound_k,
    family_equibound_check,
    limit_closure_check,
    minimal_global_constant,
    minimal_holder_constant,
    minimal_wrt_constant,
    point_bound_constant,
    strong_transitivity_check,
    verify_continuity,
    wrt_pointbound_equivalence,
)
from .metric import HolderParams, from_table, make_section, quotient_from_labels
from .regularity import (
    check_ball_inclusion,
    fit_ahlfors_exponent,
    make_measure,
    transfer_regularity_check,
)

ALPHAS = (0.25, 0.5, 0.75)
LS = (0.5, 1.0, 2.0, 4.0)
MAX_WITNESSES = 5


@dataclass
class Claim:
    name: str
    anchor: str
    verdict: bool
    measured: object = None
    asserted_bound: object = None
    witnesses: list = field(default_factory=list)

    def to_dict(self):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "verdict": "pass" if self.verdict else "fail",
            "measured": self.measured,
            "asserted_bound": self.asserted_bound,
            "witnesses": self.witnesses[:MAX_WITNESSES],
        }


def _floor_L(L, eps=0.1):
    """A positive constant at least ``L``; zero constants are lifted to ``eps``."""
    return max(float(L), eps)


# oracles ------------------------------------------------------------------


def brute_fiber_distance(space, quotient, i, k):
    return min(space.dist[i, j] for j in quotient.member_positions[k])


def brute_pairs(space, quotient, section):
    """``(d, D)`` for every ordered pair of distinct fibers, by direct loops."""
    pos = [space.index(section.choice[f]) for f in quotient.fiber_ids]
    out = []
    for a in range(quotient.m):
        for b in range(quotient.m):
            if a != b:
                out.append((space.dist[pos[a], pos[b]], brute_fiber_distance(space, quotient, pos[a], b)))
    return out


def bisect_holder_constant(space, quotient, section, alpha, iters=200):
    pairs = brute_pairs(space, quotient, section)

    def ok(L):
        return all(d <= L * D**alpha + D for d, D in pairs)

    if ok(0.0):
        return 0.0
    hi = 1.0
    while not ok(hi):
        hi *= 2
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        lo, hi = (lo, mid) if ok(mid) else (mid, hi)
    return hi


def ratio_max_global(space, quotient, section, alpha):
    return max((d / D**alpha for d, D in brute_pairs(space, quotient, section)), default=0.0)


# claims -------------------------------------------------------------------


def claim_cone_equivalence(seed=0, n=500):
    rng = np.random.default_rng(seed)
    agree, wit, passes = 0, [], 0
    for t in range(n):
        S, Q = random_instance(rng)
        sec = random_section(rng, S, Q)
        params = HolderParams(float(rng.choice(LS)), float(rng.choice(ALPHAS)))
        v = check_holder(S, Q, sec, params).verdict
        c = cone_avoidance_check(S, Q, sec, params).holds
        passes += v
        if v == c:
            agree += 1
        else:
            wit.append({"trial": t, "holder": v, "cones": c})
    S, Q = w4()
    L, pair = minimal_holder_constant(S, Q, w4_section(S, Q, "a", "d"), 0.5)
    cone = cone_points(S, Q, "a", HolderParams(1.0, 0.5))
    return [
        Claim("cone_equivalence", "Hölder condition iff graph avoids its own cones", agree == n,
              {"agree": agree, "holder_passes": passes}, {"agree": n}, wit),
        Claim("w4_minimal_constant", "closed-form minimal constant on the four-point fixture", L == 2.0,
              L, 2.0, [list(pair)]),
        Claim("w4_cone_horizontal", "cone at a (L=1, alpha=0.5) outside the apex fiber",
              cone.horizontal_members == frozenset({"d"}),
              {"members": sorted(cone.members), "horizontal": sorted(cone.horizontal_members)}, ["d"]),
    ]


def claim_minimal_constants(seed=1, n=200):
    rng = np.random.default_rng(seed)
    worst_L = worst_K = 0.0
    wit = []
    for t in range(n):
        S, Q = random_instance(rng)
        sec = random_section(rng, S, Q)
        a = float(rng.choice(ALPHAS + (1.0,)))
        L, _ = minimal_holder_constant(S, Q, sec, a)
        Lb = bisect_holder_constant(S, Q, sec, a)
        K, _ = minimal_global_constant(S, Q, sec, a)
        Ko = ratio_max_global(S, Q, sec, a)
        worst_L = max(worst_L, abs(L - Lb))
        worst_K = max(worst_K, abs(K - Ko))
        if abs(L - Lb) > 1e-9 or abs(K - Ko) > 1e-9:
            wit.append({"trial": t, "L": L, "bisection": Lb, "K": K, "oracle": Ko})
    return [Claim("minimal_constants_vs_oracles", "closed-form constants match brute force",
                  not wit, {"max_L_gap": worst_L, "max_K_gap": worst_K}, 1e-9, wit)]


def _path_instance(rng):
    n = int(rng.integers(4, 13))
    m = int(rng.integers(2, min(6, n) + 1))
    S = random_graph_space(rng, n, unit=True)
    return S, quotient_from_labels(S, random_partition(rng, n, m))


def claim_bounded_base(seed=2, n=100):
    rng = np.random.default_rng(seed)
    fwd, rev = [], []
    worst = 0.0
    for t in range(n):
        S, Q = _path_instance(rng)
        sec = random_section(rng, S, Q)
        a = float(rng.choice(ALPHAS))
        L, _ = minimal_holder_constant(S, Q, sec, a)
        K, _ = minimal_global_constant(S, Q, sec, a)
        k = diameter_bound_k(S, Q, sec)
        bound = bound_K_from_L(L, a, k)
        worst = max(worst, K / bound)
        if K > bound:
            fwd.append({"trial": t, "K": K, "bound": bound})
        if not check_holder(S, Q, sec, HolderParams(K, a), tol=0.0).verdict:
            rev.append({"trial": t, "K": K})
    return [
        Claim("global_constant_from_two_term", "bounded base: global constant <= L + 3(floor(k)+1)",
              not fwd, {"max_ratio": worst}, 1.0, fwd),
        Claim("two_term_from_global", "global (K, alpha) implies two-term condition at L=K", not rev,
              {"violations": len(rev)}, 0, rev),
    ]


def claim_point_bounds(seed=3, n=100):
    rng = np.random.default_rng(seed)
    fwd, rev = [], []
    done = 0
    while done < n:
        S, Q = random_instance(rng)
        base = random_section(rng, S, Q)
        a = float(rng.choice(ALPHAS))
        L = max(1.0, minimal_holder_constant(S, Q, base, a)[0])
        y0 = Q.fiber_ids[int(rng.integers(Q.m))]
        phi = random_section(rng, S, Q, fixed={y0: base.choice[y0]})
        beta = float(rng.choice(ALPHAS + (1.0,)))
        L1 = _floor_L(minimal_wrt_constant(S, Q, phi, base, y0, beta))
        r = wrt_pointbound_equivalence(S, Q, phi, base, y0, "forward", L=L, alpha=a, L1=L1, beta=beta)
        if not r.verdict:
            fwd.append({"trial": done, **r.to_dict()})
        g = float(rng.choice(ALPHAS + (1.0,)))
        L2 = _floor_L(point_bound_constant(S, Q, phi, y0, g))
        r = wrt_pointbound_equivalence(S, Q, phi, base, y0, "reverse", L=L, alpha=a, L2=L2, gamma=g)
        if not r.verdict:
            rev.append({"trial": done, **r.to_dict()})
        done += 1
    return [
        Claim("point_bound_forward", "relative form implies point bound at L K (L1+1), exponent beta alpha",
              not fwd, {"violations": len(fwd)}, 0, fwd),
        Claim("point_bound_reverse", "point bound (L2, gamma) implies relative form at (L2, gamma)",
              not rev, {"violations": len(rev)}, 0, rev),
    ]


def claim_strong_relation(seed=4, n=200):
    rng = np.random.default_rng(seed)
    asym, viol = [], []
    worst = 0.0
    done = 0
    while done < n:
        S, Q = random_instance(rng)
        y0 = Q.fiber_ids[int(rng.integers(Q.m))]
        psi = random_section(rng, S, Q)
        pin = {y0: psi.choice[y0]}
        phi = random_section(rng, S, Q, fixed=pin)
        eta = random_section(rng, S, Q, fixed=pin)
        a = float(rng.choice(ALPHAS + (1.0,)))
        p = HolderParams(float(rng.choice(LS)), a)
        if check_wrt_strong(S, Q, phi, psi, y0, p).verdict != check_wrt_strong(S, Q, psi, phi, y0, p).verdict:
            asym.append({"trial": done})
        L1 = _floor_L(minimal_wrt_constant(S, Q, phi, psi, y0, a, strong=True))
        L2 = _floor_L(minimal_wrt_constant(S, Q, psi, eta, y0, a, strong=True))
        rep = strong_transitivity_check(S, Q, phi, psi, eta, y0, L1, L2, a)
        worst = max(worst, rep.measured_composed_L / rep.composed_L)
        if not rep.verdict:
            viol.append({"trial": done, "alpha": a, **{k: v for k, v in rep.to_dict().items()
                                                        if k in ("L1", "L2", "composed_L", "measured_composed_L")}})
        done += 1
    S, Q, (p_, q_, s_) = transitivity_counterexample()
    cx = strong_transitivity_check(S, Q, p_, q_, s_, "Y0", 1.0, 1.0, 1.0)
    wit = [{"fixture": "transitivity_counterexample", "composed_L": cx.composed_L,
            "measured_composed_L": cx.measured_composed_L}] + viol
    return [
        Claim("strong_relation_symmetric", "strong relation is symmetric", not asym,
              {"asymmetric": len(asym)}, 0, asym),
        Claim("strong_relation_transitive", "strong relation composes at 2 max(L1, L2)",
              not viol and cx.verdict, {"violations": len(viol), "max_needed_over_asserted": worst,
                                        "fixture_verdict": "pass" if cx.verdict else "fail"}, 0, wit),
    ]


def euclidean_linear_instance(rng, samples=64):
    """Random full-rank ``A`` (k x n), 64 base points, and three related sections.

    ``psi(y) = A^+ y``; ``phi`` and ``eta`` add kernel offsets that vanish at
    the anchor sample and grow like a power of the distance to it.
    """
    k = int(rng.integers(1, 3))
    n = k + int(rng.integers(1, 3))
    A = rng.normal(size=(k, n))
    Y = rng.uniform(-4, 4, size=(samples, k))
    nq = alg.make_normed_quotient(A, Y)
    anchor = int(rng.integers(samples))
    N = nq.kernel_basis
    psi = alg.make_linear_section(nq, Y @ nq.pinv.T)

    def offset(scale, power):
        u = rng.normal(size=N.shape[1])
        u /= np.linalg.norm(u)
        r = np.linalg.norm(Y - Y[anchor], axis=1)
        return psi.table + scale * np.power(r, power)[:, None] * (N @ u)[None, :]

    phi = alg.make_linear_section(nq, offset(rng.uniform(0.5, 3), rng.uniform(0.2, 1)))
    eta = alg.make_linear_section(nq, offset(rng.uniform(0.5, 3), rng.uniform(0.2, 1)))
    return nq, phi, eta, psi, anchor


def claim_section_algebra(seed=5, n=20):
    rng = np.random.default_rng(seed)
    comb, sums, scale = [], [], []
    for t in range(n):
        nq, phi, eta, psi, anchor = euclidean_linear_instance(rng)
        a = float(rng.choice(ALPHAS + (1.0,)))
        Lp = alg.linear_minimal_wrt_constant(nq, phi, psi, anchor, a)
        Le = alg.linear_minimal_wrt_constant(nq, eta, psi, anchor, a)
        for tt in (0.0, 0.25, 0.5, 0.75, 1.0):
            c = alg.affine_combine(nq, phi, eta, tt)
            bound = tt * (Lp - Le) + Le + 1e-9
            if not alg.linear_check_wrt(nq, c, psi, anchor, bound, a).verdict:
                comb.append({"trial": t, "t": tt, "bound": bound,
                             "measured": alg.linear_minimal_wrt_constant(nq, c, psi, anchor, a)})
        s = alg.sum_sections(nq, phi, eta, psi, anchor, a, Lp, Le)
        if not alg.linear_check_wrt(s.quotient, s.section, s.base, anchor, s.asserted_L + 1e-9, a).verdict:
            sums.append({"trial": t, **s.to_dict()})
        K = alg.linear_global_constant(nq, phi, a)
        for lam in (-2.0, -1.0, 0.5, 3.0):
            r = alg.scale_section(nq, phi, lam, a)
            for KK in (K, 0.9 * K):
                v0 = alg.linear_check_global(nq, phi, KK, a)
                v1 = alg.linear_check_global(r.quotient, r.section, r.factor * KK, a)
                if v0 != v1:
                    scale.append({"trial": t, "lambda": lam, "K": KK, "before": v0, "after": v1})
    return [
        Claim("affine_combination", "convex combination related at t(L_phi - L_eta) + L_eta", not comb,
              {"violations": len(comb)}, 0, comb),
        Claim("sum_of_sections", "sum related at 2^(1-alpha) max(L_phi, L_eta)", not sums,
              {"violations": len(sums)}, 0, sums),
        Claim("scaling_invariance", "scaling by lambda keeps verdicts with factor |lambda|^(1-alpha)",
              not scale, {"mismatches": len(scale)}, 0, scale),
    ]


def _level_instance(rng, t):
    """Function with a level set meeting every fiber once, plus its level value."""
    if t % 2 == 0:
        nx, ny = int(rng.integers(3, 7)), int(rng.integers(4, 7))
        S, Q = plane_grid(nx, ny, "path", y0=-(ny // 2))
        g = np.clip(np.cumsum(rng.integers(-1, 2, nx)), -(ny // 2), ny - ny // 2 - 1)
        vals = [float(p[1] - g[p[0]]) for p in S.point_ids]
        return S, Q, FiberedFunction(tuple(vals)), 0.0
    S, Q = random_instance(rng)
    sec = random_section(rng, S, Q)
    on = {S.index(p) for p in sec.choice.values()}
    vals = [0.0 if i in on else float(rng.choice([-1, 1]) * rng.uniform(0.5, 3)) for i in range(S.n)]
    return S, Q, FiberedFunction(tuple(vals)), 0.0


def claim_level_sets(seed=6, n=100):
    rng = np.random.default_rng(seed)
    bad, expo = [], []
    for t in range(n):
        S, Q, f, z0 = _level_instance(rng, t)
        beta = float(rng.choice(ALPHAS + (1.0,)))
        rep = verify_fibered_claims(S, Q, f, 1.0, beta)
        lam = max(1.0, rep.holder_constant, rep.fiber_bilip_constant)
        res = section_from_level_set(S, Q, f, z0, lam, beta)
        if not res.certificate.verdict:
            bad.append({"trial": t, "lambda": lam, "beta": beta, "minimal_L": res.certificate.minimal_L})
        if res.certificate.params.alpha != beta:
            expo.append({"trial": t})
    return [
        Claim("level_set_sections", "level sets of fiber-biLipschitz Hölder maps are (lambda^2, beta) sections",
              not bad, {"violations": len(bad)}, 0, bad),
        Claim("level_set_exponent", "output exponent equals input beta", not expo,
              {"mismatches": len(expo)}, 0, expo),
    ]


def extension_fixtures(seed=7, n=12):
    """Plane grids with tau = height and partial sections over a prefix of the fibers."""
    rng = np.random.default_rng(seed)
    out = []
    for t in range(n):
        nx, ny = int(rng.integers(4, 8)), int(rng.integers(5, 8))
        y0 = -(ny // 2)
        S, Q = plane_grid(nx, ny, "path", y0=y0)
        rho = None if t % 2 else plane_grid(nx, ny, "euclidean", y0=y0)[0].dist
        a = float(rng.choice((0.5, 1.0)))
        tau = {p: p[1] for p in S.point_ids}
        width = int(rng.integers(1, nx))
        start = int(rng.integers(0, nx - width + 1))
        h = int(rng.integers(y0 + 1, y0 + ny - 1))
        steps = rng.integers(-1, 2, width) * (t % 3 == 0)
        heights = np.clip(h + np.cumsum(steps) - steps[0], y0, y0 + ny - 1)
        choice = {start + i: (start + i, int(heights[i])) for i in range(width)}
        phi = make_section(S, Q, choice, partial=True)
        out.append((S, Q, tau, rho, a, phi))
    return out


def claim_extension(seed=7, n=12):
    zero, holder, cont, skipped = [], [], [], []
    worst = 0.0
    for t, (S, Q, tau, rho, a, phi) in enumerate(extension_fixtures(seed, n)):
        L = max(1.0, partial_holder_constant(S, Q, phi, a))
        try:
            m = build_machinery(S, Q, tau, a, L=L, rho=rho)
            res = extend_partial_section(m, phi)
        except HypothesisViolated as exc:
            skipped.append({"fixture": t, "reason": str(exc)})
            continue
        f = dict(zip(S.point_ids, res.values))
        if not all(f[p] == 0 for p in phi.choice.values()) or not res.checks["profiles_vanish_at_own_anchor"]:
            zero.append({"fixture": t})
        ratio = res.measured["holder_constant"] / res.asserted["holder_bound_with_slack"]
        worst = max(worst, ratio)
        if not res.checks["holder_within_slack"]:
            holder.append({"fixture": t, "measured": res.measured["holder_constant"],
                           "bound": res.asserted["holder_bound_with_slack"]})
        for x0 in (S.index(p) for p in phi.choice.values()):
            delta = m.delta(x0)
            for dl in np.unique(delta):
                E = dl**a + dl
                for b in (2 * m.gamma * E, -2 * m.gamma * E):
                    at = float(kernel_value(b, dl, a, m.gamma))
                    for side in (np.nextafter(b, np.inf), np.nextafter(b, -np.inf)):
                        gap = abs(float(kernel_value(side, dl, a, m.gamma)) - at)
                        if gap > 1e-12 * max(1.0, abs(b)):
                            cont.append({"fixture": t, "boundary": b, "gap": gap})
    return [
        Claim("extension_zero_set", "anchors and own-profile values vanish exactly", not zero and not skipped,
              {"violations": len(zero), "skipped": len(skipped)}, 0, zero + skipped),
        Claim("extension_kernel_continuity", "profile is continuous across both band edges", not cont,
              {"violations": len(cont)}, 1e-12, cont),
        Claim("extension_holder_slack", "Hölder constant of the extension within 2 (2k + 4 gamma k)",
              not holder, {"max_ratio": worst}, 1.0, holder),
    ]


def _scaled_instance(rng, scale=0.4):
    """Random instance with distances shrunk so radii in (0, 1] are informative."""
    S, Q = random_instance(rng)
    S2 = from_table(S.dist * scale, S.point_ids)
    return S2, quotient_from_labels(S2, [Q.fiber_ids[k] for k in Q.labels])


RADII = (0.1, 0.25, 0.5, 0.75, 1.0)


def claim_ball_inclusion(seed=8, n=60):
    rng = np.random.default_rng(seed)
    bad, sharp, checked = [], [], 0
    cases = []
    S, Q = w4()
    cases.append((S, Q, w4_section(S, Q, "a", "d"), HolderParams(2.0, 0.5)))
    for _ in range(n):
        S, Q = _scaled_instance(rng)
        sec = random_section(rng, S, Q)
        a = float(rng.choice(ALPHAS))
        cases.append((S, Q, sec, HolderParams(_floor_L(minimal_holder_constant(S, Q, sec, a)[0]), a)))
    for c, (S, Q, sec, p) in enumerate(cases):
        attained = sorted({float(x) for x in S.dist.ravel() if 0 < x <= 1})
        for x in sec.choice.values():
            for r in sorted(set(RADII) | set(attained)):
                b = check_ball_inclusion(S, Q, sec, p, x, r)
                checked += 1
                if not b.verdict:
                    bad.append({"case": c, "center": x, "r": r, "missing": b.missing()})
            for r in (2.0, 4.0, 8.0):
                if not check_ball_inclusion(S, Q, sec, p, x, r).sharp:
                    sharp.append({"case": c, "center": x, "r": r})
    return [
        Claim("ball_inclusion_local", "ball images within (L+1) r^alpha for r in (0, 1]", not bad,
              {"checked": checked, "violations": len(bad)}, 0, bad),
        Claim("ball_inclusion_sharp_radius", "ball images within L r^alpha + r at large radii", not sharp,
              {"violations": len(sharp)}, 0, sharp),
    ]


def claim_regularity(seed=9, n=200, grid=None):
    rng = np.random.default_rng(seed)
    S, Q = grid if grid is not None else plane_grid(64, 64, "path")
    zero = graph_section(S, Q, [0] * 64)
    prof = fit_ahlfors_exponent(S, Q, zero, make_measure(Q), (32, 0), range(2, 17))
    bad, scale_bad = [], []
    done = 0
    while done < n:
        S2, Q2 = _scaled_instance(rng)
        phi = random_section(rng, S2, Q2)
        psi = random_section(rng, S2, Q2)
        a = float(rng.choice(ALPHAS))
        L = _floor_L(max(minimal_holder_constant(S2, Q2, phi, a)[0], minimal_holder_constant(S2, Q2, psi, a)[0]))
        mu = make_measure(Q2, {f: float(rng.uniform(0.5, 2)) for f in Q2.fiber_ids})
        ell = float(rng.choice((0.5, 1.0, 2.0)))
        p = HolderParams(L, a)
        rep = transfer_regularity_check(S2, Q2, phi, psi, p, mu, ell, RADII)
        if not rep.verdict:
            bad.append({"trial": done, "worst": list(rep.worst)})
        s = float(rng.uniform(0.1, 10))
        rep2 = transfer_regularity_check(S2, Q2, phi, psi, p, mu.scaled(s), ell, RADII)
        if rep2.verdict != rep.verdict:
            scale_bad.append({"trial": done, "s": s})
        done += 1
    return [
        Claim("zero_section_growth_exponent", "pushforward ball growth of a line in the grid",
              0.9 <= prof.fitted_Q <= 1.1, prof.to_dict(), [0.9, 1.1]),
        Claim("transfer_upper_bound", "upper growth bound transfers through ball images", not bad,
              {"violations": len(bad)}, 0, bad),
        Claim("transfer_measure_scaling", "verdict invariant under scaling the measure", not scale_bad,
              {"mismatches": len(scale_bad)}, 0, scale_bad),
    ]


def claim_families(seed=10, n=60):
    rng = np.random.default_rng(seed)
    cont, equi, lim = [], [], []
    for t in range(n):
        S, Q = random_instance(rng)
        a = float(rng.choice(ALPHAS + (1.0,)))
        fam = [random_section(rng, S, Q) for _ in range(4)]
        L = _floor_L(max(minimal_holder_constant(S, Q, s, a)[0] for s in fam))
        p = HolderParams(L, a)
        for eps in (0.1 * (L + 1), 0.5 * (L + 1), L + 1):
            holds, r, w = verify_continuity(S, Q, fam[0], p, eps)
            if not holds:
                cont.append({"trial": t, "eps": eps, "r": r, "worst": w})
        y0 = Q.fiber_ids[0]
        K = sorted({s.choice[y0] for s in fam} | {S.point_ids[int(rng.integers(S.n))]}, key=repr)
        rep = family_equibound_check(S, Q, fam, p, y0, K)
        if not rep.verdict:
            equi.append({"trial": t, **rep.to_dict()})
        seq = [fam[int(i)] for i in rng.integers(0, len(fam), 12)]
        lr = limit_closure_check(S, Q, seq, p)
        if not lr.verdict:
            lim.append({"trial": t})
    return [
        Claim("continuity_modulus", "graph displacement <= eps within r(eps)", not cont,
              {"violations": len(cont)}, 0, cont),
        Claim("family_equibound", "uniform bound on graphs of a Hölder family", not equi,
              {"violations": len(equi)}, 0, equi),
        Claim("limit_closure", "limits of Hölder sequences stay Hölder", not lim,
              {"violations": len(lim)}, 0, lim),
    ]


CLAIMS = (
    claim_cone_equivalence,
    claim_minimal_constants,
    claim_bounded_base,
    claim_point_bounds,
    claim_strong_relation,
    claim_section_algebra,
    claim_level_sets,
    claim_extension,
    claim_ball_inclusion,
    claim_regularity,
    claim_families,
)


def run_suite():
    claims = []
    for fn in CLAIMS:
        claims.extend(fn())
    return claims
