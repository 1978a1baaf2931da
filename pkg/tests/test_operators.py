import numpy as np
import pytest

from scalex.errors import IllConditioned, NoGap, NotAdmissible, UndefinedAt
from scalex.operators import (
    PiecewiseFunction,
    TruncatedShiftModel,
    classify_properness,
    conjugate_random,
    estimate_spectrum,
    functional_calculus,
    infinite_projection_witness,
    opnorm,
    realize,
    scaling_defect,
    synthesize,
)
from scalex.spectra import Properness, ScalingSpectrum

from conftest import random_positive_definite


def model(d, n, a):
    return TruncatedShiftModel(d, n, np.asarray(a, dtype=complex))


def diag_model(n, *weights):
    return model(len(weights), n, np.diag(weights))


def spectrum(*pairs):
    return ScalingSpectrum.from_intervals(pairs)


def assert_spectrum_close(est, expected_points, tol=1e-9):
    assert len(est.intervals) == len(expected_points)
    for (lo, hi), x in zip(est.intervals, expected_points):
        assert abs(lo - x) <= tol and abs(hi - x) <= tol


class TestRealize:
    def test_two_by_two_shift(self):
        assert np.array_equal(realize(diag_model(2, 1.0)), np.array([[0, 0], [1, 0]], dtype=complex))

    def test_weighted_three_slots(self):
        expected = np.array([[0, 0, 0], [0.5, 0, 0], [0, 1, 0]], dtype=complex)
        assert np.array_equal(realize(diag_model(3, 0.5)), expected)

    def test_block_placement(self):
        x = realize(model(2, 2, np.eye(2)))
        expected = np.zeros((4, 4), dtype=complex)
        expected[2:, :2] = np.eye(2)
        assert np.array_equal(x, expected)

    def test_norm_is_max_of_block_norm_and_one(self, rng):
        for d, n in [(1, 3), (2, 4), (3, 5)]:
            a = random_positive_definite(rng, d, lo=0.2, hi=2.5)
            x = realize(model(d, n, a))
            assert abs(opnorm(x) - max(opnorm(a), 1.0)) <= 1e-10

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [2, 3, 5, 10])
    def test_singular_value_multiset(self, rng, d, n):
        a = random_positive_definite(rng, d, lo=0.2, hi=2.5)
        x = realize(model(d, n, a))
        got = np.sort(np.linalg.svd(x, compute_uv=False))
        expected = np.sort(
            np.concatenate([np.zeros(d), np.linalg.svd(a, compute_uv=False), np.ones((n - 2) * d)])
        )
        assert np.max(np.abs(got - expected)) <= 1e-10


class TestModelValidation:
    def test_rejects_non_hermitian(self):
        with pytest.raises(NotAdmissible):
            model(2, 3, [[1, 1], [0, 1]])

    def test_rejects_singular_block(self):
        with pytest.raises(NotAdmissible):
            diag_model(3, 1.0, 0.0)

    def test_rejects_wrong_shape(self):
        with pytest.raises(NotAdmissible):
            model(2, 3, np.eye(3))

    def test_rejects_shallow_depth(self):
        with pytest.raises(NotAdmissible):
            diag_model(1, 1.0)


class TestScalingDefect:
    def test_unitary_has_none(self, rng):
        w = conjugate_random(np.eye(4, dtype=complex), 7)  # still the identity
        theta = np.exp(2j * np.pi * rng.uniform(size=4))
        u = conjugate_random(np.diag(theta), 11)
        assert scaling_defect(u).residual_norm <= 1e-12

    def test_truncated_model_boundary(self):
        d = scaling_defect(realize(diag_model(3, 0.5)), fiber_dim=1)
        assert abs(d.residual_norm - 1.0) <= 1e-12
        assert d.boundary_localized is True

    def test_residual_row_support(self):
        x = realize(diag_model(3, 0.5))
        r = (x.conj().T @ x) @ x - x
        assert opnorm(r[:2, :]) <= 1e-14  # all rows except the last slot vanish

    def test_zero_matrix(self):
        d = scaling_defect(np.zeros((3, 3)), fiber_dim=1)
        assert d.residual_norm == 0.0 and d.boundary_localized is True

    def test_no_fiber_structure(self):
        assert scaling_defect(np.zeros((3, 3))).boundary_localized is None

    def test_generic_matrix_not_localized(self, rng):
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert scaling_defect(x, fiber_dim=1).boundary_localized is False


class TestEstimateSpectrum:
    def test_pure_shift(self):
        est = estimate_spectrum(realize(diag_model(4, 1.0)), 1e-8)
        assert_spectrum_close(est, [0.0, 1.0])

    def test_weight_half(self):
        est = estimate_spectrum(realize(diag_model(4, 0.5)), 1e-8)
        assert_spectrum_close(est, [0.0, 0.5, 1.0])

    def test_weight_two(self):
        est = estimate_spectrum(realize(diag_model(4, 2.0)), 1e-8)
        assert_spectrum_close(est, [0.0, 1.0, 2.0])

    def test_coarse_tolerance_merges(self):
        est = estimate_spectrum(realize(diag_model(4, 0.5)), 0.6)
        assert len(est.intervals) == 1


class TestSynthesize:
    def test_bare_spectrum_gives_pure_shift(self):
        m = synthesize(spectrum((0, 0), (1, 1)), Properness.PROPER, 4, 1)
        assert m.fiber_dim == 1
        assert np.array_equal(m.A, np.array([[1.0]], dtype=complex))

    def test_nonproper_middle_point(self):
        m = synthesize(spectrum((0, 0), (0.5, 0.5), (1, 1)), Properness.NON_PROPER, 4, 1)
        assert np.array_equal(m.A, np.array([[0.5]], dtype=complex))

    def test_nonproper_rejected_when_inadmissible(self):
        with pytest.raises(NotAdmissible):
            synthesize(spectrum((0, 0), (0.5, 1)), Properness.NON_PROPER, 6)

    def test_depth_floor(self):
        with pytest.raises(NotAdmissible):
            synthesize(spectrum((0, 0), (1, 1)), Properness.PROPER, 2)

    def test_deterministic_per_seed(self):
        s = spectrum((0, 0), (0.25, 0.75), (1, 1))
        m1 = synthesize(s, Properness.PROPER, 5, 6, seed=42)
        m2 = synthesize(s, Properness.PROPER, 5, 6, seed=42)
        assert np.array_equal(m1.A, m2.A)

    def test_endpoints_always_sampled(self):
        s = spectrum((0, 0), (0.25, 0.75), (1, 1))
        m = synthesize(s, Properness.NON_PROPER, 5, 4, seed=3)
        eigs = np.diag(m.A).real
        assert 0.25 in eigs and 0.75 in eigs
        assert 0.0 not in eigs and 1.0 not in eigs

    @pytest.mark.parametrize("flag", [Properness.PROPER, Properness.NON_PROPER])
    def test_roundtrip_spectrum(self, flag):
        s = spectrum((0, 0), (0.3, 0.6), (1, 1))
        m = synthesize(s, flag, 6, 5, seed=9)
        est = estimate_spectrum(realize(m), 1e-8)
        # every estimated point lies in the requested set, endpoints inclusive
        for lo, hi in est.intervals:
            assert s.set.contains(round(lo, 12)) or s.set.contains(lo)
            assert s.set.contains(round(hi, 12)) or s.set.contains(hi)
        # every sampled weight is recovered, as are the requested extreme points
        for v in np.diag(m.A).real:
            assert est.contains(float(v))
        assert est.contains(0.0) and est.contains(0.3) and est.contains(0.6)


class TestClassifyProperness:
    def test_pure_shift_is_proper(self):
        v = classify_properness(realize(diag_model(6, 1.0)), fiber_dim=1)
        assert v.verdict is Properness.PROPER
        assert v.projection_distance >= 0.9

    def test_weight_half_is_nonproper(self):
        v = classify_properness(realize(diag_model(6, 0.5)), fiber_dim=1)
        assert v.verdict is Properness.NON_PROPER
        assert v.gap_at_0 and v.gap_at_1
        assert v.projection_distance <= 1e-8

    def test_eigenvalue_one_inside_block_forces_proper(self):
        v = classify_properness(realize(diag_model(6, 0.5, 1.0)), fiber_dim=2)
        assert v.verdict is Properness.PROPER
        assert v.projection_distance >= 0.9

    def test_no_gap_at_one_means_proper(self):
        # weights creep up to 1, so the spectrum minus {0,1} is not compact
        v = classify_properness(realize(diag_model(6, 0.5, 0.93, 0.96, 0.99)), fiber_dim=4)
        assert not v.gap_at_1
        assert v.verdict is Properness.PROPER

    def test_ill_conditioned_band(self):
        with pytest.raises(IllConditioned):
            classify_properness(realize(diag_model(6, 1.0 + 1.5e-8)), tol=1e-8, fiber_dim=1)

    def test_inverts_synthesize_flag(self):
        s = spectrum((0, 0), (0.3, 0.6), (1, 1))
        for flag in (Properness.PROPER, Properness.NON_PROPER):
            m = synthesize(s, flag, 6, 4, seed=1)
            v = classify_properness(realize(m), fiber_dim=m.fiber_dim)
            assert v.verdict is flag


class TestFunctionalCalculus:
    def test_identity_function(self, rng):
        h = random_positive_definite(rng, 4)
        assert opnorm(functional_calculus(h, lambda t: t) - h) <= 1e-12

    def test_constant_one(self, rng):
        h = random_positive_definite(rng, 4)
        assert opnorm(functional_calculus(h, lambda t: 1.0) - np.eye(4)) <= 1e-12

    def test_step_function(self):
        h = np.diag([0.25, 1.0]).astype(complex)
        f = PiecewiseFunction([(-np.inf, 0.5, 0.0), (0.5, np.inf, 1.0)])
        assert opnorm(functional_calculus(h, f) - np.diag([0.0, 1.0])) <= 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotAdmissible):
            functional_calculus(np.array([[0, 1], [0, 0]], dtype=complex), lambda t: t)

    def test_undefined_eigenvalue(self):
        h = np.diag([0.25, 1.0]).astype(complex)
        f = PiecewiseFunction([(0.5, np.inf, 1.0)])
        with pytest.raises(UndefinedAt):
            functional_calculus(h, f)


class TestWitness:
    def test_weight_above_gap(self):
        x = realize(diag_model(6, 0.75))
        u, rep = infinite_projection_witness(x, 0.5, fiber_dim=1)
        assert rep.projection_defect <= 1e-10
        assert rep.dominated
        assert rep.norm_difference >= 0.9

    def test_pure_shift_witness_is_the_shift(self):
        x = realize(diag_model(6, 1.0))
        u, rep = infinite_projection_witness(x, 0.5, fiber_dim=1)
        assert opnorm(u - x) <= 1e-12
        assert rep.norm_difference >= 0.9

    def test_covering_spectrum_refuses(self):
        weights = np.linspace(0.025, 1.0, 40)
        x = realize(diag_model(5, *weights))
        with pytest.raises(NoGap):
            infinite_projection_witness(x, 0.5, cluster_tol=0.05, fiber_dim=40)

    def test_gap_point_outside_unit_interval(self):
        with pytest.raises(NotAdmissible):
            infinite_projection_witness(realize(diag_model(6, 0.75)), 1.5, fiber_dim=1)


class TestConjugateRandom:
    def test_deterministic(self, rng):
        x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert np.array_equal(conjugate_random(x, 123), conjugate_random(x, 123))

    def test_singular_values_invariant(self, rng):
        x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        s0 = np.linalg.svd(x, compute_uv=False)
        s1 = np.linalg.svd(conjugate_random(x, 5), compute_uv=False)
        assert np.max(np.abs(s0 - s1)) <= 1e-10

    def test_defect_invariant(self):
        x = realize(diag_model(5, 0.5))
        d0 = scaling_defect(x).residual_norm
        d1 = scaling_defect(conjugate_random(x, 17)).residual_norm
        assert abs(d0 - d1) <= 1e-10
