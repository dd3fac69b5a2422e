import cmath
import math

import numpy as np
import pytest

from diskdyn import eigen
from diskdyn import orbits as ob
from diskdyn import presets
from diskdyn import selfmap as sm
from diskdyn.geometry import mobius_factor

SAMPLES = eigen.ring_samples(0.4, 16)


@pytest.fixture(scope="module")
def truncations():
    f = presets.example61(0.5)
    return {
        d: ob.grand_orbit(f, 0.0, forward_n=12, backward_depth=d)
        for d in (4, 6, 8)
    }


@pytest.fixture(scope="module")
def deep_b(truncations):
    return eigen.build_truncated_eigenfunction(truncations[8])


class TestBuild:
    def test_zero_multiset_matches_nodes(self, truncations, deep_b):
        tr = truncations[8]
        assert deep_b.product.zeros == tuple(
            (n.point, n.multiplicity) for n in tr.nodes
        )
        assert deep_b.product.gamma == 1.0

    def test_vanishes_at_origin(self, deep_b):
        assert deep_b(0.0) == 0.0

    def test_real_on_the_real_axis(self, deep_b):
        for x in np.linspace(-0.9, 0.9, 19):
            assert abs(deep_b(complex(x)).imag) < 1e-10

    def test_singleton_truncation_is_a_single_factor(self):
        a = 0.3 - 0.2j
        node = ob.GrandOrbitNode(a, 1, 0, 0)
        tr = ob.GrandOrbitTruncation(a, 0, 0, (node,), (1 - abs(a),), False)
        b = eigen.build_truncated_eigenfunction(tr)
        for z in (0.0, 0.5, -0.1 + 0.4j):
            assert b(z) == pytest.approx(mobius_factor(a, z), abs=1e-15)

    def test_empty_truncation_rejected(self):
        tr = ob.GrandOrbitTruncation(0.0, 0, 0, (), (0.0,), False)
        with pytest.raises(ValueError):
            eigen.build_truncated_eigenfunction(tr)


class TestEstimateTau:
    def test_deep_truncation_estimates_minus_one(self, deep_b):
        est = eigen.estimate_tau(deep_b, presets.example61(0.5), SAMPLES)
        assert abs(est.tau - (-1.0)) < 0.1
        assert est.sample_count >= 8

    def test_unimodularity_trend(self, truncations):
        f = presets.example61(0.5)
        gaps = []
        for d in (4, 6, 8):
            b = eigen.build_truncated_eigenfunction(truncations[d])
            est = eigen.estimate_tau(b, f, SAMPLES)
            gaps.append(abs(abs(est.tau) - 1.0))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_exact_eigenfunction_recovered(self):
        t = presets.translation()
        u = eigen.SingularEigenfunction(1.0, eigen.translation_abel_disk)
        est = eigen.estimate_tau(u, t, SAMPLES)
        assert abs(est.tau - cmath.exp(1j)) < 1e-10
        assert est.dispersion < 1e-12

    def test_identity_map_gives_one(self, deep_b):
        est = eigen.estimate_tau(deep_b, sm.identity_map(), SAMPLES)
        assert abs(est.tau - 1.0) < 1e-15
        assert est.dispersion < 1e-15

    def test_inadmissible_samples_rejected(self, deep_b):
        zeros = [z for z, _ in deep_b.product.zeros[:10]]
        with pytest.raises(ValueError, match="sample ring"):
            eigen.estimate_tau(deep_b, presets.example61(0.5), zeros)


class TestEigenResidual:
    def test_exact_pair_is_tiny(self):
        t = presets.translation()
        theta = math.pi / 3
        u = eigen.SingularEigenfunction(theta, eigen.translation_abel_disk)
        res = eigen.eigen_residual(u, t, cmath.exp(1j * theta), SAMPLES)
        assert res < 1e-10

    def test_residual_decreases_with_depth(self, truncations):
        f = presets.example61(0.5)
        res = [
            eigen.eigen_residual(
                eigen.build_truncated_eigenfunction(truncations[d]), f, -1.0, SAMPLES
            )
            for d in (4, 6, 8)
        ]
        assert res[0] > res[1] > res[2]

    def test_constant_candidate_with_unit_tau(self):
        res = eigen.eigen_residual(lambda z: 1.0, presets.example62(), 1.0, SAMPLES)
        assert res == 0.0

    def test_estimator_beats_naive_candidates(self, deep_b):
        f = presets.example61(0.5)
        est = eigen.estimate_tau(deep_b, f, SAMPLES)
        best = eigen.eigen_residual(deep_b, f, est.tau, SAMPLES)
        for naive in (1.0, 1j, -1j):
            assert best <= eigen.eigen_residual(deep_b, f, naive, SAMPLES)


class TestSquareTrick:
    def test_exact_sign_flip_pair_squares_to_invariant(self):
        # theta = pi gives eigenvalue -1, so the square is exactly invariant
        t = presets.translation()
        u = eigen.SingularEigenfunction(math.pi, eigen.translation_abel_disk)
        assert eigen.square_trick_check(u, t, SAMPLES) < 1e-10

    def test_truncation_square_residual_bounded(self, truncations, deep_b):
        f = presets.example61(0.5)
        res_minus1 = eigen.eigen_residual(deep_b, f, -1.0, SAMPLES)
        assert eigen.square_trick_check(deep_b, f, SAMPLES) <= 2.0 * res_minus1

    def test_constant_candidate(self):
        assert eigen.square_trick_check(lambda z: 0.7j, presets.example62(), SAMPLES) == 0.0


class TestUTheta:
    def test_zero_angle_is_constant_one(self):
        u = eigen.SingularEigenfunction(0.0, eigen.translation_abel_disk)
        for z in (0.0, 0.5j, -0.3):
            assert u(z) == 1.0

    def test_bounded_on_random_points(self):
        rng = np.random.default_rng(77)
        u = eigen.SingularEigenfunction(1.3, eigen.translation_abel_disk)
        for _ in range(1000):
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(z) >= 0.98:
                continue
            assert abs(u(z)) <= 1.0

    def test_group_law(self):
        h = eigen.translation_abel_disk
        z = 0.2 + 0.3j
        for t1, t2 in ((0.5, 1.1), (2.0, 3.0), (0.1, 0.05)):
            lhs = eigen.u_theta(t1, h, z) * eigen.u_theta(t2, h, z)
            assert lhs == pytest.approx(eigen.u_theta(t1 + t2, h, z), abs=1e-12)

    def test_tau_property(self):
        u = eigen.SingularEigenfunction(2.5, eigen.translation_abel_disk)
        assert u.tau == cmath.exp(2.5j)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            eigen.u_theta(-0.1, eigen.translation_abel_disk, 0.0)
        with pytest.raises(ValueError):
            eigen.u_theta(7.0, eigen.translation_abel_disk, 0.0)

    def test_unbounded_handle_warns(self):
        lower_handle = lambda z: -eigen.translation_abel_disk(z)
        with pytest.warns(eigen.UnboundedCandidateWarning):
            eigen.u_theta(1.0, lower_handle, 0.3)


class TestFrostmanShift:
    def test_zero_shift_returns_candidate(self):
        u = eigen.SingularEigenfunction(1.0, eigen.translation_abel_disk)
        assert eigen.frostman_shift(u, 0.0) is u

    def test_constant_invariant_stays_invariant(self):
        const = lambda z: 0.4 + 0.1j
        shifted = eigen.frostman_shift(const, 0.25j)
        res = eigen.eigen_residual(shifted, presets.example62(), 1.0, SAMPLES)
        assert res == 0.0

    def test_full_turn_eigenfunction_report(self):
        t = presets.translation()
        u = eigen.SingularEigenfunction(2 * math.pi, eigen.translation_abel_disk)
        rep = eigen.frostman_shift_report(u, 0.3 + 0.2j, t, SAMPLES)
        assert rep.passed
        assert rep.shifted_residual <= rep.bound + 1e-15

    def test_shift_point_validated(self):
        with pytest.raises(ValueError):
            eigen.frostman_shift(lambda z: z, 1.5)


class TestSignAlternation:
    def test_derivative_alternates_at_consecutive_real_zeros(self, deep_b):
        f = presets.example61(0.5)
        z1 = sm.evaluate(f, 0.0).real
        h = 1e-6
        d0 = ((deep_b(h) - deep_b(-h)) / (2 * h)).real
        d1 = ((deep_b(z1 + h) - deep_b(z1 - h)) / (2 * h)).real
        assert d0 * d1 < 0


def test_eigen_report_shape():
    rep = eigen.eigen_report(8, -0.95 + 0.01j, 3e-5, 15, "example61")
    assert rep == {
        "depth": 8,
        "tau_re": -0.95,
        "tau_im": 0.01,
        "residual": 3e-5,
        "sample_count": 15,
        "map_preset": "example61",
    }
