import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from intrinsic_holder.errors import AnchorMismatch, EpsilonOutOfRange, ParameterError, PremiseFailed
from intrinsic_holder.fixtures import (
    random_instance,
    random_section,
    transitivity_counterexample,
    w4,
    w4_section,
)
from intrinsic_holder.holder import (
    bound_K_from_L,
    check_holder,
    check_wrt,
    check_wrt_strong,
    cone_avoidance_check,
    cone_points,
    continuity_modulus,
    diameter_bound_k,
    equivalence_classes,
    family_equibound_check,
    limit_closure_check,
    minimal_global_constant,
    minimal_holder_constant,
    minimal_wrt_constant,
    point_bound_constant,
    strong_transitivity_check,
    uniform_openness_radius,
    verify_continuity,
    wrt_pointbound_equivalence,
)
from intrinsic_holder.metric import HolderParams, make_quotient, make_section
from intrinsic_holder.suite import bisect_holder_constant, brute_pairs, ratio_max_global


@pytest.fixture
def W():
    S, Q = w4()
    return S, Q, w4_section(S, Q, "a", "d"), w4_section(S, Q, "a", "c")


def grid_search_L(pairs, alpha, hi=10.0, steps=100001):
    for L in np.linspace(0, hi, steps):
        if all(d <= L * D**alpha + D for d, D in pairs):
            return L
    return math.inf


def test_w4_holder_exact(W):
    S, Q, phi, _ = W
    cert = check_holder(S, Q, phi, HolderParams(2, 0.5))
    assert cert.verdict and cert.strict_verdict
    assert cert.minimal_L == 2
    assert cert.slack_min == 0
    assert cert.worst_pair == ("F1", "F2")
    assert cert.tolerance == 0


def test_w4_holder_fails_below(W):
    S, Q, phi, _ = W
    cert = check_holder(S, Q, phi, HolderParams(1.9, 0.5))
    assert not cert.verdict
    assert cert.worst_pair == ("F1", "F2")


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
def test_w4_minimal_constants_match_grid_search(W, alpha):
    S, Q, phi, psi = W
    L, _ = minimal_holder_constant(S, Q, phi, alpha)
    assert L == 2
    assert abs(grid_search_L(brute_pairs(S, Q, phi), alpha) - 2) < 1e-9
    assert minimal_holder_constant(S, Q, psi, alpha)[0] == 0
    assert minimal_global_constant(S, Q, psi, alpha)[0] == 1


def test_identity_quotient_always_holds():
    rng = np.random.default_rng(5)
    for _ in range(20):
        S, _ = random_instance(rng)
        Q = make_quotient(S, [[p] for p in S.point_ids])
        sec = make_section(S, Q, {Q.fiber_ids[k]: S.point_ids[k] for k in range(S.n)})
        assert minimal_holder_constant(S, Q, sec, 0.5)[0] == 0
        assert check_holder(S, Q, sec, HolderParams(0.01, 0.3)).strict_verdict
        assert abs(minimal_global_constant(S, Q, sec, 1.0)[0] - 1) < 1e-12
        assert diameter_bound_k(S, Q, sec) == S.diameter


def test_diameter_bound_and_K(W):
    S, Q, phi, _ = W
    assert diameter_bound_k(S, Q, phi) == 1
    assert minimal_global_constant(S, Q, phi, 0.5)[0] == 3
    assert bound_K_from_L(2, 0.5, 1) == 8
    assert bound_K_from_L(1, 0.5, 0.5) == 4
    single = make_quotient(S, [list(S.point_ids)])
    assert diameter_bound_k(S, single, make_section(S, single, {0: "a"})) == 0


def test_minimal_constant_vs_bisection_random():
    rng = np.random.default_rng(21)
    for _ in range(60):
        S, Q = random_instance(rng)
        sec = random_section(rng, S, Q)
        a = float(rng.choice([0.25, 0.5, 0.75, 1.0]))
        L, _ = minimal_holder_constant(S, Q, sec, a)
        assert abs(L - bisect_holder_constant(S, Q, sec, a)) <= 1e-9
        K, _ = minimal_global_constant(S, Q, sec, a)
        assert abs(K - ratio_max_global(S, Q, sec, a)) <= 1e-9


def test_monotone_in_L():
    rng = np.random.default_rng(8)
    for _ in range(40):
        S, Q = random_instance(rng)
        sec = random_section(rng, S, Q)
        a = 0.5
        L, _ = minimal_holder_constant(S, Q, sec, a)
        for bigger in (L + 1e-6, 2 * L + 1, 10 * L + 1):
            assert check_holder(S, Q, sec, HolderParams(bigger, a)).verdict


def test_cones_w4(W):
    S, Q, phi, psi = W
    c1 = cone_points(S, Q, "a", HolderParams(1, 0.5))
    assert c1.horizontal_members == {"d"}
    assert c1.vertical_members == {"b"}
    c2 = cone_points(S, Q, "a", HolderParams(2, 0.5))
    assert c2.horizontal_members == frozenset()
    assert "a" not in c1.members


def test_cone_avoidance_w4(W):
    S, Q, phi, psi = W
    av = cone_avoidance_check(S, Q, phi, HolderParams(1, 0.5))
    assert not av.holds and av.witness == ("a", "d")
    assert cone_avoidance_check(S, Q, phi, HolderParams(2, 0.5)).holds
    assert cone_avoidance_check(S, Q, psi, HolderParams(1, 0.5)).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0.25, 0.5, 0.75, 1.0]), st.sampled_from([0.5, 1, 2, 4]))
def test_cone_equivalence_property(seed, alpha, L):
    rng = np.random.default_rng(seed)
    S, Q = random_instance(rng)
    sec = random_section(rng, S, Q)
    p = HolderParams(L, alpha)
    assert check_holder(S, Q, sec, p).verdict == cone_avoidance_check(S, Q, sec, p).holds


def test_wrt_w4(W):
    S, Q, phi, psi = W
    weak = check_wrt(S, Q, phi, psi, "F1", HolderParams(1, 0.5))
    assert weak.verdict and float(weak.slacks.min()) == 0
    bad = check_wrt(S, Q, phi, psi, "F1", HolderParams(0.5, 0.5))
    assert not bad.verdict and bad.failing_fibers == ["F2"]
    strong = check_wrt_strong(S, Q, phi, psi, "F1", HolderParams(1, 0.5))
    assert strong.verdict
    assert check_wrt_strong(S, Q, psi, phi, "F1", HolderParams(1, 0.5)).verdict
    assert check_wrt(S, Q, phi, phi, "F2", HolderParams(0.1, 0.5)).verdict


def test_wrt_anchor_mismatch(W):
    S, Q, phi, psi = W
    with pytest.raises(AnchorMismatch):
        check_wrt(S, Q, phi, psi, "F2", HolderParams(1, 0.5))


def test_strong_symmetric_random():
    rng = np.random.default_rng(31)
    for _ in range(100):
        S, Q = random_instance(rng)
        psi = random_section(rng, S, Q)
        y0 = Q.fiber_ids[0]
        phi = random_section(rng, S, Q, fixed={y0: psi.choice[y0]})
        p = HolderParams(float(rng.choice([0.5, 1, 2])), float(rng.choice([0.5, 1.0])))
        assert check_wrt_strong(S, Q, phi, psi, y0, p).verdict == check_wrt_strong(S, Q, psi, phi, y0, p).verdict


def test_transitivity_trivial_cases(W):
    S, Q, phi, psi = W
    same = strong_transitivity_check(S, Q, phi, phi, phi, "F1", 0.1, 0.1, 0.5)
    assert same.verdict
    L1 = minimal_wrt_constant(S, Q, phi, psi, "F1", 0.5, strong=True)
    rep = strong_transitivity_check(S, Q, phi, psi, psi, "F1", L1, 3.0, 0.5)
    assert rep.verdict


def test_transitivity_counterexample_breaks_doubling():
    # p~q and q~s at L=1 but p~s needs 4 > 2*max(1, 1)
    S, Q, (p, q, s) = transitivity_counterexample()
    one = HolderParams(1.0, 1.0)
    assert check_wrt_strong(S, Q, p, q, "Y0", one).verdict
    assert check_wrt_strong(S, Q, q, s, "Y0", one).verdict
    rep = strong_transitivity_check(S, Q, p, q, s, "Y0", 1.0, 1.0, 1.0)
    assert rep.composed_L == 2.0
    assert not rep.verdict
    assert rep.measured_composed_L == 4.0
    # the smaller side of the min is L d(x,p) + d(x,p) = L + 1, which must reach d(p,s) = 5
    assert S.d("p", "s") == 5 and S.d("x", "p") == 1 and S.d("x", "s") == 4


def test_transitivity_premise_checked(W):
    S, Q, phi, psi = W
    with pytest.raises(PremiseFailed):
        strong_transitivity_check(S, Q, phi, psi, psi, "F1", 0.1, 1.0, 0.5)


def test_equivalence_classes_single_class():
    rng = np.random.default_rng(2)
    S, Q = random_instance(rng, n_range=(8, 10))
    psi = random_section(rng, S, Q)
    y0 = Q.fiber_ids[0]
    secs = [random_section(rng, S, Q, fixed={y0: psi.choice[y0]}) for _ in range(5)]
    classes, consts, ordered = equivalence_classes(S, Q, secs, psi, y0, 0.5)
    assert len(classes) == 1
    assert all(math.isfinite(c) for c in consts.values())
    classes2, consts2, _ = equivalence_classes(S, Q, secs[::-1], psi, y0, 0.5)
    assert [[s.key() for s in c] for c in classes] == [[s.key() for s in c] for c in classes2]
    assert consts == consts2
    alone, _, _ = equivalence_classes(S, Q, [psi], psi, y0, 0.5)
    assert len(alone) == 1


def test_point_bound_w4(W):
    S, Q, phi, psi = W
    L1 = minimal_wrt_constant(S, Q, phi, psi, "F1", 1.0)
    fwd = wrt_pointbound_equivalence(S, Q, phi, psi, "F1", "forward", L=1, alpha=0.5, L1=L1 or 1, beta=1.0)
    assert fwd.verdict
    assert fwd.asserted_constant >= fwd.measured_constant
    assert fwd.asserted_exponent == 0.5
    L2 = point_bound_constant(S, Q, phi, "F1", 0.5)
    rev = wrt_pointbound_equivalence(S, Q, phi, psi, "F1", "reverse", L=1, alpha=0.5, L2=L2, gamma=0.5)
    assert rev.verdict and rev.asserted_constant >= rev.measured_constant


def test_point_bound_alpha_one_keeps_beta(W):
    S, Q, phi, psi = W
    rep = wrt_pointbound_equivalence(S, Q, phi, psi, "F1", "forward", L=1, alpha=1.0, L1=1, beta=0.5)
    assert rep.asserted_exponent == 0.5


def test_point_bound_requires_L_at_least_one(W):
    S, Q, phi, psi = W
    with pytest.raises(ParameterError):
        wrt_pointbound_equivalence(S, Q, phi, psi, "F1", "forward", L=0.5, alpha=0.5, L1=1, beta=1)


def test_point_bound_forward_random():
    rng = np.random.default_rng(17)
    for _ in range(60):
        S, Q = random_instance(rng)
        base = random_section(rng, S, Q)
        a = float(rng.choice([0.25, 0.5, 0.75]))
        L = max(1.0, minimal_holder_constant(S, Q, base, a)[0])
        y0 = Q.fiber_ids[-1]
        phi = random_section(rng, S, Q, fixed={y0: base.choice[y0]})
        beta = float(rng.choice([0.5, 1.0]))
        L1 = max(0.1, minimal_wrt_constant(S, Q, phi, base, y0, beta))
        assert wrt_pointbound_equivalence(S, Q, phi, base, y0, "forward", L=L, alpha=a, L1=L1, beta=beta).verdict


def test_continuity_modulus():
    assert continuity_modulus(HolderParams(1, 0.5), 2) == 1
    assert continuity_modulus(HolderParams(3, 0.25), 4) == 1
    assert continuity_modulus(HolderParams(1, 0.5), 1) == pytest.approx(0.25)
    with pytest.raises(EpsilonOutOfRange):
        continuity_modulus(HolderParams(1, 0.5), 3)


def test_continuity_w4(W):
    S, Q, _, psi = W
    holds, r, worst = verify_continuity(S, Q, psi, HolderParams(1, 0.5), 2)
    assert holds and r == 1 and worst == 1


def test_continuity_requires_premise(W):
    S, Q, phi, _ = W
    with pytest.raises(PremiseFailed):
        verify_continuity(S, Q, phi, HolderParams(1, 0.5), 1)


def test_equibound_w4(W):
    S, Q, phi, psi = W
    rep = family_equibound_check(S, Q, [psi, phi], HolderParams(2, 0.5), "F1", ["a"])
    assert rep.verdict and rep.max_lhs == 3 and rep.bound == 3
    bigger = family_equibound_check(S, Q, [psi, phi], HolderParams(2, 0.5), "F1", ["a", "b"])
    assert bigger.bound >= rep.bound


def test_openness_w4():
    S, Q = w4()
    assert uniform_openness_radius(S, Q, ["a"], "F1", 1.5) == ["F1", "F2"]
    assert uniform_openness_radius(S, Q, ["a", "b"], "F1", 1.5) == ["F1", "F2"]
    assert uniform_openness_radius(S, Q, ["a"], "F1", 0.5) == ["F1"]
    assert uniform_openness_radius(S, Q, ["a"], "F1", 10) == list(Q.fiber_ids)


def test_limit_closure_w4(W):
    S, Q, phi, psi = W
    seq = [psi, phi, psi, phi, psi]
    rep = limit_closure_check(S, Q, seq, HolderParams(2, 0.5))
    assert rep.limit.key() == psi.key()
    assert rep.subsequence == [0, 2, 4]
    assert rep.verdict
    assert limit_closure_check(S, Q, [phi] * 3, HolderParams(2, 0.5)).limit is phi


def test_certificate_json_fields(W):
    S, Q, phi, _ = W
    d = check_holder(S, Q, phi, HolderParams(2, 0.5)).to_dict()
    assert {"claim", "verdict", "minimal_L", "worst_pair", "slack_min", "tolerance"} <= set(d)


def test_float_instances_use_relative_tolerance():
    rng = np.random.default_rng(4)
    S, Q = random_instance(rng, kind="euclid")
    sec = random_section(rng, S, Q)
    L, _ = minimal_holder_constant(S, Q, sec, 0.5)
    cert = check_holder(S, Q, sec, HolderParams(max(L, 1e-9), 0.5))
    assert cert.tolerance == 1e-9 and cert.verdict
