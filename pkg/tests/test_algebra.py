import numpy as np
import pytest
from scipy.linalg import null_space

from intrinsic_holder import algebra as alg
from intrinsic_holder.errors import (
    AnchorMismatch,
    NotASection,
    PremiseFailed,
    RankDeficientMap,
    SampleMismatch,
    ZeroScalar,
)
from intrinsic_holder.suite import euclidean_linear_instance

SAMPLE = np.array([-4.0, -1.0, 0.0, 1.0, 4.0])
PROJ = np.array([[1.0, 0.0]])


def proj_quotient():
    return alg.make_normed_quotient(PROJ, SAMPLE)


def sqrt_section(nq, c=1.0):
    return alg.section_from_function(nq, lambda y: (y[0], c * np.sqrt(abs(y[0]))))


def brute_fiber_distance(A, x, y, p, span=20.0, steps=400001):
    """Distance from x to {A z = y} by scanning a one-dimensional kernel."""
    z0 = np.linalg.lstsq(A, y, rcond=None)[0]
    N = null_space(A)
    assert N.shape[1] == 1
    t = np.linspace(-span, span, steps)
    pts = z0[None, :] + t[:, None] * N[:, 0][None, :]
    return float(np.min(np.linalg.norm(x[None, :] - pts, ord=p, axis=1)))


def test_projection_distance():
    nq = proj_quotient()
    assert alg.linear_fiber_distance(nq, np.array([3.0, 7.0]), np.array([5.0])) == 2
    assert alg.linear_fiber_distance(nq, np.array([5.0, -1.0]), np.array([5.0])) == 0


def test_three_dim_example_and_oracle():
    A = np.array([[1.0, 0, 0], [0, 1.0, 0]])
    nq = alg.make_normed_quotient(A, np.zeros((1, 2)))
    x, y = np.array([1.0, 1, 9]), np.array([4.0, 5])
    assert alg.linear_fiber_distance(nq, x, y) == pytest.approx(5.0, abs=1e-12)
    assert brute_fiber_distance(A, x, y, 2) == pytest.approx(5.0, abs=1e-6)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, np.inf])
def test_pnorm_distance_matches_scan(p):
    rng = np.random.default_rng(0)
    A = rng.normal(size=(1, 2))
    nq = alg.make_normed_quotient(A, np.zeros((1, 1)), p)
    for _ in range(5):
        x, y = rng.normal(size=2), rng.normal(size=1)
        got = alg.linear_fiber_distance(nq, x, y)
        assert got == pytest.approx(brute_fiber_distance(A, x, y, p), abs=1e-4)


def test_rank_deficient():
    with pytest.raises(RankDeficientMap):
        alg.make_normed_quotient(np.array([[1.0, 1.0], [2.0, 2.0]]), np.zeros((1, 2)))


def test_section_invariant_checked():
    nq = proj_quotient()
    with pytest.raises(NotASection):
        alg.make_linear_section(nq, np.array([[0.0, 0.0]] * 5))


def test_combine_endpoints_and_midpoint():
    nq = proj_quotient()
    phi, eta = sqrt_section(nq), sqrt_section(nq, 0.0)
    np.testing.assert_array_equal(alg.affine_combine(nq, phi, eta, 0).table, eta.table)
    np.testing.assert_array_equal(alg.affine_combine(nq, phi, eta, 1).table, phi.table)
    mid = alg.affine_combine(nq, phi, eta, 0.5)
    np.testing.assert_allclose(mid.table[:, 1], np.sqrt(np.abs(SAMPLE)) / 2)


def test_combine_sample_mismatch():
    nq = proj_quotient()
    other = alg.make_normed_quotient(PROJ, SAMPLE[:3])
    with pytest.raises(SampleMismatch):
        alg.affine_combine(nq, sqrt_section(nq), sqrt_section(other), 0.5)


def test_combination_constant():
    nq = proj_quotient()
    psi = sqrt_section(nq, 0.0)
    anchor = 2
    phi, eta = sqrt_section(nq, 3.0), sqrt_section(nq, -1.5)
    for a in (0.5, 1.0):
        Lp = alg.linear_minimal_wrt_constant(nq, phi, psi, anchor, a)
        Le = alg.linear_minimal_wrt_constant(nq, eta, psi, anchor, a)
        assert Lp > 0 and Le > 0
        for t in (0, 0.25, 0.5, 0.75, 1):
            c = alg.affine_combine(nq, phi, eta, t)
            assert alg.linear_minimal_wrt_constant(nq, c, psi, anchor, a) <= t * (Lp - Le) + Le + 1e-9


def test_scale_identity_and_sign():
    nq = proj_quotient()
    phi = sqrt_section(nq)
    one = alg.scale_section(nq, phi, 1.0, 0.5)
    np.testing.assert_array_equal(one.section.table, phi.table)
    assert one.factor == 1
    assert alg.scale_section(nq, phi, -1.0, 1.0).factor == 1
    with pytest.raises(ZeroScalar):
        alg.scale_section(nq, phi, 0.0)


def test_scale_constant_on_small_sample():
    nq = proj_quotient()
    phi = sqrt_section(nq)
    K = alg.linear_global_constant(nq, phi, 0.5)
    r = alg.scale_section(nq, phi, 2.0, 0.5, K)
    K2 = alg.linear_global_constant(r.quotient, r.section, 0.5)
    assert K2 <= 2**0.5 * K * (1 + 1e-12)
    assert r.derived_L == pytest.approx(2**0.5 * K)


def test_scaled_fiber_distance_oracle():
    # dist(lam x, (A/lam)^-1 y) computed two ways
    rng = np.random.default_rng(9)
    A = rng.normal(size=(2, 4))
    nq = alg.make_normed_quotient(A, np.zeros((1, 2)))
    for lam in (-2.0, 0.5, 3.0):
        sc = nq.scaled(lam)
        x, y = rng.normal(size=4), rng.normal(size=2)
        direct = alg.linear_fiber_distance(sc, x, y)
        via = np.linalg.norm(np.linalg.pinv(A) @ (A @ x - lam * y))
        assert direct == pytest.approx(via, rel=1e-10)


def test_sum_cancellation():
    nq = proj_quotient()
    psi = sqrt_section(nq, 0.0)
    s = alg.sum_sections(nq, sqrt_section(nq, 1.0), sqrt_section(nq, -1.0), psi, 2, 0.5)
    np.testing.assert_allclose(s.section.table, 2 * psi.table)
    assert s.verdict


def test_sum_small_sample():
    nq = proj_quotient()
    psi = sqrt_section(nq, 0.0)
    s = alg.sum_sections(nq, sqrt_section(nq, 1.0), sqrt_section(nq, 0.5), psi, 2, 0.5)
    assert s.verdict
    assert s.asserted_L == pytest.approx(2**0.5 * max(s.L_phi, s.L_eta))


def test_sum_premise_and_anchor():
    nq = proj_quotient()
    psi = sqrt_section(nq, 0.0)
    with pytest.raises(PremiseFailed):
        alg.sum_sections(nq, sqrt_section(nq, 3.0), psi, psi, 2, 0.5, L_phi=0.01, L_eta=1)
    shifted = alg.section_from_function(nq, lambda y: (y[0], 1.0))
    with pytest.raises(AnchorMismatch):
        alg.sum_sections(nq, shifted, psi, psi, 2, 0.5)


def test_random_euclidean_instances():
    rng = np.random.default_rng(12)
    for _ in range(5):
        nq, phi, eta, psi, anchor = euclidean_linear_instance(rng)
        assert nq.base_sample.shape[0] == 64
        for a in (0.5, 1.0):
            s = alg.sum_sections(nq, phi, eta, psi, anchor, a)
            assert s.certificate.minimal_L <= s.asserted_L + 1e-9
            K = alg.linear_global_constant(nq, phi, a)
            for lam in (-2.0, -1.0, 0.5, 3.0):
                r = alg.scale_section(nq, phi, lam, a)
                assert alg.linear_check_global(r.quotient, r.section, r.factor * K, a)
                assert not alg.linear_check_global(r.quotient, r.section, 0.9 * r.factor * K, a)
