import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conjconics.lines import (LineABCD, abcd_from_john, abcd_from_plucker, john_coords, john_from_abcd,
                              plucker_from_abcd)
from conjconics.quadrature import QuadratureSpec, adaptive_gk
from conjconics.uhe import (Cosine, Gaussian, GaussianBlob, InvalidSolution, Monomial, PlaneWave, Quadratic, Sum,
                            XRayGaussianMix, builtin_plane_waves, builtin_quadratics, builtin_solutions,
                            builtin_xray_mixes, gaussian_decay_solutions, laplacian_residual, mean_value_solutions,
                            null_vector, solution_from_dict, solution_from_json, solution_to_json, uhe_certificate,
                            xray_u)

SQRT_PI = np.sqrt(np.pi)


def numeric_line_integral(mix, l: LineABCD):
    """Independent route: adaptive quadrature of the mixture density along the line in z."""
    def density(z):
        P = l.point(z)
        out = np.zeros_like(z)
        for g in mix.components:
            d = P - np.asarray(g.center)
            out += g.weight * np.exp(-np.sum(d * d, axis=-1) / g.sigma ** 2)
        return out
    # the density is negligible beyond 12 widths of the farthest component
    reach = 12 * max(g.sigma for g in mix.components) + max(np.abs(g.center).max() for g in mix.components)
    z0 = -(l.A * l.B + l.C * l.D) / (l.A ** 2 + l.C ** 2 + 1)
    return adaptive_gk(density, z0 - reach, z0 + reach, QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300), 64).value


class TestEvaluation:
    def test_quadratic(self):
        u = Quadratic(np.diag([1.0, 0, 1, 0]))
        assert u.eval([1, 0, 0, 0]) == 1.0 and u.eval([0, 0, 1, 0]) == 1.0

    def test_plane_wave(self):
        u = PlaneWave([0, 1, 0, 1], Gaussian())
        assert u.eval([0, 3, 0, 3]) == 1.0
        assert u.eval([0, 1, 0, 0]) == pytest.approx(np.exp(-1))

    def test_profiles(self):
        t = np.linspace(-2, 2, 9)
        np.testing.assert_allclose(Cosine(1.5)(t), np.cos(1.5 * t))
        np.testing.assert_allclose(Monomial(3)(t), t ** 3)
        np.testing.assert_allclose(Monomial(3, 0.5)(t), (t + 0.5) ** 3)
        with pytest.raises(InvalidSolution):
            Monomial(5)

    def test_xray_origin(self):
        mix = XRayGaussianMix([GaussianBlob((0, 0, 0), 1.0, 1.0)])
        assert xray_u(mix, np.zeros(4)) == pytest.approx(SQRT_PI, rel=1e-15)

    def test_xray_offset_line(self):
        mix = XRayGaussianMix([GaussianBlob((0, 0, 0), 1.0, 1.0)])
        x = john_from_abcd(LineABCD(0, 2, 0, 0))
        assert xray_u(mix, x) == pytest.approx(SQRT_PI * np.exp(-4), rel=1e-14)

    def test_xray_linearity(self):
        a = GaussianBlob((0.3, -0.2, 0.1), 0.8, 1.0)
        b = GaussianBlob((-0.5, 0.4, 0.0), 0.8, 1.0)
        x = np.array([0.2, -0.7, 1.1, 0.4])
        both = xray_u(XRayGaussianMix([a, b]), x)
        assert both == pytest.approx(xray_u(XRayGaussianMix([a]), x) + xray_u(XRayGaussianMix([b]), x), rel=1e-15)

    def test_xray_against_numeric_quadrature(self):
        gen = np.random.default_rng(14)
        mixes = builtin_xray_mixes()
        for i in range(1000):
            mix = mixes[i % len(mixes)]
            x = gen.uniform(-2, 2, 4)
            l = abcd_from_john(x)
            closed = xray_u(mix, x)
            numeric = numeric_line_integral(mix, l)
            assert closed == pytest.approx(numeric, rel=1e-10, abs=1e-14)

    def test_chart_roundtrip_invariance(self):
        gen = np.random.default_rng(15)
        mix = builtin_xray_mixes()[3]
        for _ in range(100):
            l = LineABCD(*gen.uniform(-2, 2, 4))
            l2 = abcd_from_plucker(plucker_from_abcd(l))
            x1 = john_from_abcd(l)
            x2 = john_coords(plucker_from_abcd(l2))
            assert xray_u(mix, x1) == pytest.approx(xray_u(mix, x2), rel=1e-12)

    @settings(max_examples=50)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_superposition(self, seed):
        X = np.random.default_rng(seed).uniform(-2, 2, (10, 4))
        parts = builtin_solutions()[::4]
        total = Sum(parts)
        want = np.zeros(10)
        for u in parts:
            want = want + u.eval(X)
        np.testing.assert_array_equal(total.eval(X), want)


class TestValidation:
    def test_non_null_plane_wave(self):
        with pytest.raises(InvalidSolution):
            PlaneWave([1, 0, 0, 0])

    def test_trace_checked(self):
        with pytest.raises(InvalidSolution):
            Quadratic(np.diag([1.0, 0, 0, 0]))

    def test_null_vectors(self):
        from conjconics.neutral import norm22
        for t in np.linspace(-3, 3, 7):
            assert abs(norm22(null_vector(t, 2 * t, 1.7))) < 1e-14

    def test_bad_blob(self):
        with pytest.raises(InvalidSolution):
            GaussianBlob((0, 0, 0), 0.0)


class TestResidual:
    def test_quadratics_exact(self):
        X = np.random.default_rng(0).uniform(-2, 2, (50, 4))
        for u in builtin_quadratics():
            assert np.max(np.abs(laplacian_residual(u, X, 1e-2))) <= 1e-9

    def test_plane_wave_second_order(self):
        u = PlaneWave(null_vector(0.3, 1.1), Gaussian())
        x = np.array([0.2, 0.1, -0.3, 0.05])
        r1 = abs(laplacian_residual(u, x, 1e-2))
        r2 = abs(laplacian_residual(u, x, 5e-3))
        assert np.log2(r1 / r2) == pytest.approx(2.0, abs=0.2)

    def test_non_null_negative_control(self):
        u = PlaneWave._unchecked([1.0, 0, 0, 0])
        # the residual is f''(x1) = (4 x1^2 - 2) exp(-x1^2)
        assert abs(laplacian_residual(u, np.zeros(4), 1e-2)) == pytest.approx(2.0, rel=1e-3)


class TestCertificate:
    def test_xray_mixes(self):
        for u in builtin_xray_mixes():
            c = uhe_certificate(u, 200, seed=1)
            assert c.max_residual <= 1e-4
            assert c.order == pytest.approx(2.0, abs=0.2)

    def test_quadratic(self):
        assert uhe_certificate(builtin_quadratics()[4]).max_residual <= 1e-9

    def test_sum_of_kinds(self):
        u = Sum([builtin_quadratics()[2], builtin_plane_waves()[0], builtin_xray_mixes()[1]])
        assert uhe_certificate(u).max_residual <= 1e-4

    def test_deterministic(self):
        u = builtin_xray_mixes()[0]
        assert uhe_certificate(u, 50, 3).max_residual == uhe_certificate(u, 50, 3).max_residual


class TestBuiltins:
    def test_counts(self):
        assert len(builtin_quadratics()) == 5
        assert len(builtin_plane_waves()) == 10
        assert len(builtin_xray_mixes()) == 5
        assert len(builtin_solutions()) == 20
        assert len(mean_value_solutions()) == 10
        names = [u.name for u in builtin_solutions()]
        assert len(set(names)) == 20

    def test_gaussian_decay_set(self):
        for u in gaussian_decay_solutions():
            assert isinstance(u, PlaneWave) and isinstance(u.profile, Gaussian)


class TestJson:
    def test_documented_shapes(self):
        u = solution_from_dict({"kind": "plane_wave", "k": [0, 1, 0, 1], "profile": {"gaussian": {}}})
        assert u.eval([0, 3, 0, 3]) == 1.0
        u = solution_from_dict({"kind": "xray_gaussians", "components": [{"c": [0, 0, 0], "sigma": 1, "w": 1}]})
        assert u.eval(np.zeros(4)) == pytest.approx(SQRT_PI)

    def test_roundtrip_all(self):
        X = np.random.default_rng(3).uniform(-1, 1, (5, 4))
        for u in builtin_solutions() + [Sum(builtin_solutions()[:3])]:
            v = solution_from_json(solution_to_json(u))
            np.testing.assert_array_equal(v.eval(X), u.eval(X))

    def test_unknown_kind(self):
        with pytest.raises(InvalidSolution):
            solution_from_dict({"kind": "wavelet"})
