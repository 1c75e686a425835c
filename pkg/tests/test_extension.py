import numpy as np
import pytest

from intrinsic_holder.errors import (
    AnchorOffLevel,
    HypothesisViolated,
    LevelAmbiguous,
    LevelMissesFiber,
    PremiseFailed,
)
from intrinsic_holder.extension import (
    FiberedFunction,
    build_extension_kernel,
    build_machinery,
    extend_partial_section,
    kernel_value,
    level_section,
    section_from_level_set,
    verify_fibered_claims,
)
from intrinsic_holder.fixtures import plane_grid
from intrinsic_holder.holder import check_holder, minimal_holder_constant
from intrinsic_holder.metric import HolderParams, make_section


def grid(nx=7, ny=7, metric="path"):
    return plane_grid(nx, ny, metric, y0=-(ny // 2))


def height(S):
    return FiberedFunction(tuple(float(p[1]) for p in S.point_ids))


def test_distance_function_is_one_lipschitz():
    S, Q = grid(4, 4)
    x0 = S.index((1, 1))
    f = FiberedFunction(tuple(S.dist[x0].tolist()))
    assert verify_fibered_claims(S, Q, f, 1, 1).holder_ok


def test_height_is_fiber_isometry():
    S, Q = grid()
    rep = verify_fibered_claims(S, Q, height(S), 1, 1)
    assert rep.verdict
    assert rep.holder_constant == 1 and rep.fiber_bilip_constant == 1


def test_cubed_height_is_not_fiber_bilipschitz():
    S, Q = plane_grid(2, 3, "path", y0=0)
    f = FiberedFunction(tuple(float(p[1]) ** 3 for p in S.point_ids))
    rep = verify_fibered_claims(S, Q, f, 1, 1)
    assert rep.fiber_bilip_constant >= 4
    assert not rep.bilip_ok


def test_zero_level_is_zero_section():
    S, Q = grid()
    res = section_from_level_set(S, Q, height(S), 0, 1, 1)
    assert res.section.choice == {i: (i, 0) for i in range(7)}
    assert res.certificate.minimal_L == 0
    assert res.certificate.params.L == 1 and res.certificate.params.alpha == 1


def test_graph_of_tabulated_function():
    S, Q = grid()
    g = [0, 1, 1, 0, -1, -1, 0]
    f = FiberedFunction(tuple(float(p[1] - g[p[0]]) for p in S.point_ids))
    beta = 1.0
    rep = verify_fibered_claims(S, Q, f, 1, beta)
    lam = max(rep.holder_constant, rep.fiber_bilip_constant)
    res = section_from_level_set(S, Q, f, 0, lam, beta)
    assert res.section.choice == {i: (i, g[i]) for i in range(7)}
    assert res.certificate.verdict
    # pair-scan oracle on the selected graph
    L_needed, _ = minimal_holder_constant(S, Q, res.section, beta)
    assert L_needed <= lam**2


def test_level_errors():
    S, Q = grid(3, 3)
    with pytest.raises(LevelMissesFiber):
        level_section(S, Q, height(S), 5)
    flat = FiberedFunction(tuple(0.0 for _ in S.point_ids))
    with pytest.raises(LevelAmbiguous):
        level_section(S, Q, flat, 0)


def test_level_premise():
    S, Q = grid(3, 3)
    with pytest.raises(PremiseFailed):
        section_from_level_set(S, Q, height(S), 0, 0.5, 1)


def test_float_level_tolerance():
    S, Q = grid(3, 3)
    f = FiberedFunction(tuple(float(p[1]) + 1e-11 for p in S.point_ids))
    assert level_section(S, Q, f, 0.0).choice == {i: (i, 0) for i in range(3)}


def test_kernel_cases():
    # E = delta^alpha + delta; with delta = 1, alpha = 0.5, gamma = 1: 2 gamma E = 4
    assert kernel_value(10.0, 1.0, 0.5, 1.0) == 10
    assert kernel_value(-10.0, 1.0, 0.5, 1.0) == -30
    assert kernel_value(0.0, 0.0, 0.5, 3.0) == 0
    assert kernel_value(1.0, 1.0, 0.5, 1.0) == 2 * (1 - 2)


@pytest.mark.parametrize("delta, alpha, gamma", [(1.0, 0.5, 1.0), (0.3, 0.25, 2.5), (7.0, 1.0, 11.0)])
def test_kernel_continuous_at_band_edges(delta, alpha, gamma):
    E = delta**alpha + delta
    for edge in (2 * gamma * E, -2 * gamma * E):
        inside = float(kernel_value(edge, delta, alpha, gamma))
        for side in (np.nextafter(edge, np.inf), np.nextafter(edge, -np.inf)):
            assert abs(float(kernel_value(side, delta, alpha, gamma)) - inside) <= 1e-12 * max(1, abs(edge))


def test_machinery_measures_k():
    S, Q = grid()
    E, _ = grid(metric="euclidean")
    m = build_machinery(S, Q, height(S).values, 1.0, L=1.0, rho=E.dist)
    assert m.measured["tau_holder"] == 1
    assert m.measured["rho_equivalence"] == pytest.approx(np.sqrt(2))
    assert m.k == pytest.approx(np.sqrt(2))
    assert m.gamma == pytest.approx(2 * m.k + 1)
    with pytest.raises(HypothesisViolated):
        build_machinery(S, Q, height(S).values, 1.0, L=1.0, rho=E.dist, k=1.0)


def test_machinery_rejects_non_section_levels():
    S, Q = grid(3, 3)
    # column 0 meets level 1 twice
    tau = [float(abs(p[1])) if p[0] == 0 else float(p[1]) for p in S.point_ids]
    with pytest.raises(HypothesisViolated):
        build_machinery(S, Q, tau, 1.0)


def test_kernel_anchor_off_level():
    S, Q = grid(3, 3)
    m = build_machinery(S, Q, height(S).values, 1.0)
    assert build_extension_kernel(m, (1, 0), 0.0, (1, 0)) == 0
    with pytest.raises(AnchorOffLevel):
        build_extension_kernel(m, (1, 0), 1.0, (2, 0))


def test_left_half_of_axis_is_zero_set():
    S, Q = grid()
    E, _ = grid(metric="euclidean")
    phi = make_section(S, Q, {i: (i, 0) for i in range(3)}, partial=True)
    m = build_machinery(S, Q, height(S).values, 0.5, L=1.0, rho=E.dist)
    res = extend_partial_section(m, phi)
    assert res.zero_set == [(0, 0), (1, 0), (2, 0)]
    assert res.verdict, res.checks
    assert set(res.to_dict()) >= {"anchors", "values", "zero_set", "measured_constants", "asserted_bounds"}


def test_single_anchor_equals_its_profile():
    S, Q = grid(5, 5)
    m = build_machinery(S, Q, height(S).values, 1.0)
    phi = make_section(S, Q, {2: (2, 1)}, partial=True)
    res = extend_partial_section(m, phi)
    x0 = S.index((2, 1))
    for p, v in zip(S.point_ids, res.values):
        assert v == build_extension_kernel(m, (2, 1), 1.0, p)
    assert res.values[x0] == 0


def test_more_anchors_never_lower_f():
    S, Q = grid(6, 5)
    m = build_machinery(S, Q, height(S).values, 0.5, L=2.0)
    small = make_section(S, Q, {0: (0, 0), 1: (1, 0)}, partial=True)
    big = make_section(S, Q, {0: (0, 0), 1: (1, 0), 4: (4, 1)}, partial=True)
    f1 = extend_partial_section(m, small).values
    f2 = extend_partial_section(m, big).values
    assert np.all(f2 >= f1)


def test_extension_premise_checked():
    S, Q = grid(6, 7)
    m = build_machinery(S, Q, height(S).values, 1.0, L=1.0)
    steep = make_section(S, Q, {0: (0, -3), 1: (1, 3)}, partial=True)
    with pytest.raises(PremiseFailed):
        extend_partial_section(m, steep)


def test_extension_holder_within_slack_on_grids():
    rng = np.random.default_rng(0)
    for _ in range(6):
        nx, ny = int(rng.integers(4, 8)), int(rng.integers(5, 8))
        S, Q = grid(nx, ny)
        a = float(rng.choice([0.5, 1.0]))
        cols = sorted(rng.choice(nx, size=int(rng.integers(1, nx)), replace=False).tolist())
        phi = make_section(S, Q, {c: (c, 0) for c in cols}, partial=True)
        m = build_machinery(S, Q, height(S).values, a, L=1.0)
        res = extend_partial_section(m, phi)
        assert res.checks["holder_within_slack"]
        assert res.measured["holder_constant"] <= res.measured["max_profile_holder_constant"] + 1e-12
        graph = make_section(S, Q, {c: (c, 0) for c in range(nx)})
        assert check_holder(S, Q, graph, HolderParams(1.0, a)).verdict
