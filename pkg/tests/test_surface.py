import math

import numpy as np
import pytest

from minkruled import (
    AngleTrack,
    RuledSurfaceGrid,
    angles_from_ruling,
    asymptotic_direction,
    curvature_relations,
    dv0_from_n_mu,
    dv0_to_n_mu,
    evaluate_surface,
    frame_derivatives,
    integrate_frenet,
    invariants_analytic,
    invariants_numeric,
    lorentz_inner,
    lvec,
    q_prime_analytic,
    ruling_from_angles,
    striction_curve,
    surface_normal,
)
from minkruled.errors import (
    AllCylindricalError,
    CylindricalRulingError,
    DegenerateAngleError,
    DevelopableRulingError,
    GridMismatchError,
    NotUnitTimelikeError,
    SingularPointError,
    TangentRulingError,
    ThetaSingularityError,
)
from conftest import random_boosted_frame

E1, E2, E3 = lvec(1, 0, 0), lvec(0, 1, 0), lvec(0, 0, 1)


def planar_surface(step=1e-3):
    """Hyperbolic directrix in the x3 = 0 plane with the constant ruling e1."""
    curve = integrate_frenet(1.0, 0.0, s_range=(0.0, 1.0), step=step)
    q = np.tile(E1, (curve.n_samples, 1))
    return RuledSurfaceGrid(directrix=curve, q=q)


class TestRulingFromAngles:
    def test_theta_zero_gives_tangent(self):
        for phi in (0.0, 1.0, 4.0):
            q, _, _ = ruling_from_angles(E1, E2, E3, 0.0, phi)
            assert np.allclose(q, E1)

    def test_phi_zero(self):
        a = 0.8
        q, A, m = ruling_from_angles(E1, E2, E3, a, 0.0)
        assert np.allclose(q, math.cosh(a) * E1 + math.sinh(a) * E3)
        assert np.allclose(m, E2)
        assert np.allclose(A, E3)

    def test_theta_one_phi_half_pi(self):
        q, A, m = ruling_from_angles(E1, E2, E3, 1.0, math.pi / 2)
        assert np.allclose(A, -E2)
        assert np.allclose(q, math.cosh(1) * E1 - math.sinh(1) * E2)
        assert np.allclose(m, E3)

    def test_unit_and_orthogonality(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            T, N, B = random_boosted_frame(rng)
            theta = rng.uniform(-2, 2)
            phi = rng.uniform(0, 2 * math.pi)
            q, A, m = ruling_from_angles(T, N, B, theta, phi)
            assert lorentz_inner(q, q) == pytest.approx(-1.0, abs=1e-12)
            assert lorentz_inner(m, m) == pytest.approx(1.0, abs=1e-12)
            assert lorentz_inner(A, A) == pytest.approx(1.0, abs=1e-12)
            assert abs(lorentz_inner(q, m)) < 1e-12

    def test_vectorized_over_grid(self):
        T = np.tile(E1, (5, 1))
        N = np.tile(E2, (5, 1))
        B = np.tile(E3, (5, 1))
        theta = np.linspace(0.2, 1.0, 5)
        q, _, _ = ruling_from_angles(T, N, B, theta, np.zeros(5))
        assert q.shape == (5, 3)
        assert np.allclose(lorentz_inner(q, q), -1.0)


class TestAnglesFromRuling:
    def test_inverse_of_phi_zero(self):
        q = math.cosh(1) * E1 + math.sinh(1) * E3
        theta, phi = angles_from_ruling(E1, E2, E3, q)
        assert theta == pytest.approx(1.0)
        assert phi == pytest.approx(0.0, abs=1e-12)

    def test_tangent_ruling_rejected(self):
        with pytest.raises(TangentRulingError):
            angles_from_ruling(E1, E2, E3, E1)

    def test_non_unit_rejected(self):
        with pytest.raises(NotUnitTimelikeError):
            angles_from_ruling(E1, E2, E3, 1.5 * E1)

    def test_round_trip(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            T, N, B = random_boosted_frame(rng)
            theta = rng.uniform(1e-3, 2.0)
            phi = rng.uniform(0, 2 * math.pi)
            q, _, _ = ruling_from_angles(T, N, B, theta, phi)
            theta_back, phi_back = angles_from_ruling(T, N, B, q)
            assert theta_back == pytest.approx(theta, abs=1e-10)
            assert phi_back % (2 * math.pi) == pytest.approx(phi % (2 * math.pi), abs=1e-9)


class TestEvaluateSurface:
    def test_base_curve(self):
        surf = planar_surface(step=1e-2)
        assert np.array_equal(evaluate_surface(surf, 3, 0.0), surf.directrix.k[3])

    def test_unit_ruling_offset(self):
        surf = planar_surface(step=1e-2)
        assert np.allclose(evaluate_surface(surf, 0, 1.0), [1, 0, 0])

    def test_negative_parameter(self):
        surf = planar_surface(step=1e-2)
        expected = surf.directrix.k[5] - 2.0 * surf.q[5]
        assert np.allclose(evaluate_surface(surf, 5, -2.0), expected)

    def test_index_out_of_range(self):
        surf = planar_surface(step=1e-2)
        with pytest.raises(IndexError):
            evaluate_surface(surf, surf.n_samples, 0.0)


class TestSurfaceNormal:
    def test_planar_surface_normal(self):
        surf = planar_surface()
        m = surface_normal(surf, surf.n_samples - 1, 0.0)  # s = 1
        assert np.allclose(np.abs(m), [0, 0, 1], atol=1e-6)

    def test_singular_at_tangent_ruling(self):
        surf = planar_surface()
        with pytest.raises(SingularPointError):
            surface_normal(surf, 0, 0.0)  # T(0) = q there

    def test_orthogonal_to_partials(self):
        surf = planar_surface()
        h = surf.step
        for i in (100, 500, 900):
            for v in (0.0, 0.7):
                m = surface_normal(surf, i, v)
                r = surf.directrix.k + v * surf.q
                r_s = (r[i + 1] - r[i - 1]) / (2 * h)
                assert abs(lorentz_inner(m, r_s)) < 1e-6
                assert abs(lorentz_inner(m, surf.q[i])) < 1e-6


class TestAsymptoticDirection:
    def boost_field_surface(self):
        curve = integrate_frenet(1.0, 0.0, s_range=(0.0, 0.5), step=1e-3)
        q = np.stack([np.cosh(curve.s), np.sinh(curve.s), np.zeros_like(curve.s)], axis=1)
        return RuledSurfaceGrid(directrix=curve, q=q)

    def test_cylindrical_rejected(self):
        surf = planar_surface()
        with pytest.raises(CylindricalRulingError):
            asymptotic_direction(surf, 10)

    def test_boost_field_at_zero(self):
        surf = self.boost_field_surface()
        a = asymptotic_direction(surf, 0)
        assert np.allclose(a, [0, 0, 1], atol=1e-5)

    def test_orthogonal_to_ruling_and_derivative(self):
        surf = self.boost_field_surface()
        h = surf.step
        for i in (50, 200, 400):
            a = asymptotic_direction(surf, i)
            qp = (surf.q[i + 1] - surf.q[i - 1]) / (2 * h)
            assert abs(lorentz_inner(a, surf.q[i])) < 1e-8
            assert abs(lorentz_inner(a, qp)) < 1e-8


class TestFrameDerivatives:
    def test_line_of_curvature_slope(self):
        k1, k2 = 0.7, 0.3
        m_prime, _ = frame_derivatives(E1, E2, E3, 0.0, -k2, k1, k2)
        assert np.allclose(m_prime, k1 * E1)

    def test_vanishing_limit(self):
        m_prime, A_prime = frame_derivatives(E1, E2, E3, 0.4, -0.3, 0.0, 0.3)
        assert np.allclose(m_prime, 0.0)
        assert np.allclose(A_prime, 0.0)

    def test_unit_vector_derivative_orthogonality(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            T, N, B = random_boosted_frame(rng)
            phi = rng.uniform(0, 2 * math.pi)
            pp, k1, k2 = rng.uniform(-2, 2, 3)
            m_prime, A_prime = frame_derivatives(T, N, B, phi, pp, k1, k2)
            m = math.cos(phi) * N + math.sin(phi) * B
            A = -math.sin(phi) * N + math.cos(phi) * B
            assert abs(lorentz_inner(m_prime, m)) < 1e-12
            assert abs(lorentz_inner(A_prime, A)) < 1e-12


class TestQPrimeAnalytic:
    def test_cylinder_conditions_zero_everything(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            theta = rng.uniform(0.2, 2.0)
            phi = rng.uniform(0, 2 * math.pi)
            k1, k2 = rng.uniform(0.1, 2.0, 2)
            theta_p = k1 * math.sin(phi)
            phi_p = -k2 + k1 * math.cos(phi) * math.cosh(theta) / math.sinh(theta)
            qp, nsq = q_prime_analytic(E1, E2, E3, theta, phi, theta_p, phi_p, k1, k2)
            assert np.max(np.abs(qp)) < 1e-12
            assert abs(nsq) < 1e-12

    def test_zero_theta_prime_phi_zero(self):
        theta, phi_p, k1, k2 = 0.9, 0.4, 1.3, 0.2
        qp, nsq = q_prime_analytic(E1, E2, E3, theta, 0.0, 0.0, phi_p, k1, k2)
        coeff = k1 * math.cosh(theta) - (phi_p + k2) * math.sinh(theta)
        assert np.allclose(qp, coeff * E2, atol=1e-14)
        assert nsq == pytest.approx(coeff**2)

    def test_slice_value(self):
        # theta'=2, phi=pi/2, theta=1, phi'+k2=1, k1=1
        _, nsq = q_prime_analytic(E1, E2, E3, 1.0, math.pi / 2, 2.0, 0.7, 1.0, 0.3)
        assert nsq == pytest.approx(1.0 + math.sinh(1.0) ** 2, abs=1e-12)

    def test_closed_form_matches_assembled_norm(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            T, N, B = random_boosted_frame(rng)
            theta = rng.uniform(0.1, 2.0)
            phi = rng.uniform(0, 2 * math.pi)
            tp, pp, k1, k2 = rng.uniform(-2, 2, 4)
            qp, nsq = q_prime_analytic(T, N, B, theta, phi, tp, pp, k1, k2)
            assert lorentz_inner(qp, qp) == pytest.approx(nsq, abs=1e-10)


def linear_theta_track(s, theta_at_mid, slope, phi_const):
    mid = 0.5 * (s[0] + s[-1])
    return AngleTrack(
        s=s,
        theta=theta_at_mid + slope * (s - mid),
        phi=np.full_like(s, phi_const),
        theta_prime=np.full_like(s, slope),
        phi_prime=np.zeros_like(s),
    )


class TestInvariants:
    def example_setup(self):
        """theta = 1 + 2(s - 0.2), phi = pi/2, k1 = 1, k2 = 1 (so phi'+k2 = 1)."""
        curve = integrate_frenet(1.0, 1.0, s_range=(0.0, 0.4), step=1e-3)
        track = linear_theta_track(curve.s, 1.0, 2.0, math.pi / 2)
        return curve, track

    def test_analytic_example_values(self):
        curve, track = self.example_setup()
        inv = invariants_analytic(track, curve)
        i = 200  # s = 0.2, where theta = 1
        v0_expected = math.sinh(1) / math.cosh(1) ** 2  # ~0.4936
        d_expected = -math.tanh(1) ** 2  # ~-0.5800
        assert inv.v0[i] == pytest.approx(v0_expected, abs=1e-12)
        assert inv.d[i] == pytest.approx(d_expected, abs=1e-12)
        assert v0_expected == pytest.approx(0.4936, abs=1e-4)
        assert d_expected == pytest.approx(-0.5800, abs=1e-4)

    def test_v0_vanishes_when_theta_prime_matches(self):
        curve = integrate_frenet(1.0, 0.2, s_range=(0.0, 0.2), step=1e-3)
        phi = 0.7
        track = linear_theta_track(curve.s, 0.8, math.sin(phi), phi)  # theta' = k1 sin(phi)
        inv = invariants_analytic(track, curve)
        assert np.max(np.abs(inv.v0)) < 1e-12

    def test_cylinder_conditions_rejected(self):
        curve = integrate_frenet(1.0, 0.0, s_range=(0.0, 0.2), step=1e-2)
        theta = np.full_like(curve.s, 0.9)
        phi = np.zeros_like(curve.s)
        track = AngleTrack(
            s=curve.s,
            theta=theta,
            phi=phi,
            theta_prime=np.zeros_like(curve.s),
            phi_prime=1.0 * np.cosh(0.9) / np.sinh(0.9) * np.ones_like(curve.s),
        )
        with pytest.raises(CylindricalRulingError):
            invariants_analytic(track, curve)

    def test_numeric_cross_checks_analytic(self):
        curve, track = self.example_setup()
        inv_a = invariants_analytic(track, curve)
        from minkruled import build_surface

        surf = build_surface(track, curve)
        inv_n = invariants_numeric(surf)
        sl = slice(1, -1)
        assert np.max(np.abs(inv_n.d[sl] - inv_a.d[sl]) / np.abs(inv_a.d[sl])) < 1e-4
        assert np.max(np.abs(inv_n.v0[sl] - inv_a.v0[sl]) / np.abs(inv_a.v0[sl])) < 1e-4

    def test_numeric_converges_quadratically(self):
        discrepancies = []
        for step in (2e-3, 1e-3):
            curve = integrate_frenet(1.0, 1.0, s_range=(0.0, 0.4), step=step)
            track = linear_theta_track(curve.s, 1.0, 2.0, math.pi / 2)
            from minkruled import build_surface

            surf = build_surface(track, curve)
            inv_a = invariants_analytic(track, curve)
            inv_n = invariants_numeric(surf)
            sl = slice(1, -1)
            discrepancies.append(float(np.max(np.abs(inv_n.d[sl] - inv_a.d[sl]))))
        assert 3.5 <= discrepancies[0] / discrepancies[1] <= 4.5

    def test_all_cylindrical_rejected(self):
        surf = planar_surface(step=1e-2)
        with pytest.raises(AllCylindricalError):
            invariants_numeric(surf)

    def test_internal_consistency_of_relations(self):
        curve, track = self.example_setup()
        inv = invariants_analytic(track, curve)
        denom = inv.d**2 + inv.v0**2
        assert np.max(np.abs(inv.K - inv.d**2 / denom**2)) < 1e-12
        assert np.max(np.abs(inv.n - denom / inv.d)) < 1e-12

    def test_striction_orthogonality(self):
        curve, track = self.example_setup()
        from minkruled import build_surface
        from minkruled.surface import finite_difference

        surf = build_surface(track, curve)
        inv = invariants_numeric(surf)
        c = striction_curve(surf, inv)
        h = surf.step
        cp = finite_difference(c, h)
        qp = finite_difference(surf.q, h)
        vals = np.abs(lorentz_inner(cp, qp))[2:-2]
        assert np.max(vals) < 1e-4

    def test_striction_orthogonality_second_order(self):
        from minkruled import build_surface
        from minkruled.surface import finite_difference

        worst = []
        for step in (2e-3, 1e-3):
            curve = integrate_frenet(1.0, 1.0, s_range=(0.0, 0.4), step=step)
            track = linear_theta_track(curve.s, 1.0, 2.0, math.pi / 2)
            surf = build_surface(track, curve)
            inv = invariants_numeric(surf)
            c = striction_curve(surf, inv)
            cp = finite_difference(c, step)
            qp = finite_difference(surf.q, step)
            worst.append(float(np.max(np.abs(lorentz_inner(cp, qp))[2:-2])))
        assert 3.5 <= worst[0] / worst[1] <= 4.5


class TestTrackAndGridValidation:
    def test_theta_min_guard(self):
        s = np.linspace(0.0, 1.0, 11)
        with pytest.raises(ThetaSingularityError):
            AngleTrack(s=s, theta=s - 0.5, phi=s, theta_prime=s, phi_prime=s)

    def test_non_unit_ruling_rejected(self):
        curve = integrate_frenet(1.0, 0.0, s_range=(0.0, 0.1), step=1e-2)
        q = np.tile(lvec(1.1, 0, 0), (curve.n_samples, 1))
        with pytest.raises(NotUnitTimelikeError):
            RuledSurfaceGrid(directrix=curve, q=q)

    def test_grid_mismatch_rejected(self):
        curve = integrate_frenet(1.0, 0.0, s_range=(0.0, 0.1), step=1e-2)
        q = np.tile(lvec(1, 0, 0), (curve.n_samples - 1, 1))
        with pytest.raises(GridMismatchError):
            RuledSurfaceGrid(directrix=curve, q=q)


class TestCurvatureRelations:
    def test_unit_distribution(self):
        assert curvature_relations(1.0, 0.0) == (
            pytest.approx(0.0),
            pytest.approx(1.0),
            pytest.approx(1.0),
        )

    def test_equal_pair(self):
        mu, K, n = curvature_relations(1.0, 1.0)
        assert mu == pytest.approx(math.pi / 4)
        assert K == pytest.approx(0.25)
        assert n == pytest.approx(2.0)

    def test_developable_rejected(self):
        with pytest.raises(DevelopableRulingError):
            curvature_relations(0.0, 1.0)

    def test_n_is_inverse_sqrt_K_for_positive_d(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            d = rng.uniform(0.05, 3.0)
            v0 = rng.uniform(-3.0, 3.0)
            _, K, n = curvature_relations(d, v0)
            assert n == pytest.approx(1.0 / math.sqrt(K), rel=1e-12)


class TestNMuMap:
    def test_right_angle(self):
        assert dv0_from_n_mu(2.0, math.pi / 2) == (pytest.approx(2.0), pytest.approx(0.0, abs=1e-12))

    def test_quarter_angle(self):
        d, v0 = dv0_from_n_mu(2.0, math.pi / 4)
        assert d == pytest.approx(1.0)
        assert v0 == pytest.approx(1.0)

    def test_degenerate_angle_rejected(self):
        with pytest.raises(DegenerateAngleError):
            dv0_from_n_mu(2.0, 0.0)

    def test_round_trip_via_relations(self):
        rng = np.random.default_rng(13)
        for _ in range(300):
            n = rng.uniform(1e-6, 10.0)
            mu = rng.uniform(0.1, math.pi - 0.1)
            d, v0 = dv0_from_n_mu(n, mu)
            _, _, n_back = curvature_relations(d, v0)
            assert abs(n_back - n) < 1e-12 * max(1.0, n)

    def test_inverse_map(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            n = rng.uniform(0.1, 5.0)
            mu = rng.uniform(0.1, math.pi - 0.1)
            d, v0 = dv0_from_n_mu(n, mu)
            n_back, mu_back = dv0_to_n_mu(d, v0)
            assert n_back == pytest.approx(n, rel=1e-12)
            assert mu_back == pytest.approx(mu, rel=1e-12)
