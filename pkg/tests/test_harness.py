import numpy as np
import pytest

from conjconics import harness as H
from conjconics.conformal import random_map
from conjconics.conics import (PairClass, apply_map, classify_by_lambda, classify_pair, extract_case2_data,
                               pair_from_basis, parabola_pair, standard_pair)
from conjconics.quadrature import QuadratureSpec, Status
from conjconics.uhe import Cosine, Gaussian, PlaneWave, Quadratic, builtin_solutions, mean_value_solutions

HYPERBOLA_V = [[0.0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]
SQRT_PI = np.sqrt(np.pi)
ONE = Quadratic(np.zeros((4, 4)), const=1.0)
X1X1_X3X3 = Quadratic(np.diag([1.0, 0, 1, 0]))


class TestIntegrateConic:
    def test_circumference(self):
        r = H.integrate_conic(ONE, standard_pair().S)
        assert r.ok and r.value == pytest.approx(2 * np.pi, rel=1e-13)

    def test_quadratic_on_standard_circles(self):
        pair = standard_pair()
        for side in (pair.S, pair.Sperp):
            assert H.integrate_conic(X1X1_X3X3, side).value == pytest.approx(np.pi, abs=1e-10)

    def test_parabola_gaussian(self):
        pair = parabola_pair()
        u = PlaneWave([0, 1, 0, 1], Gaussian())
        for side in (pair.S, pair.Sperp):
            r = H.integrate_conic(u, side)
            assert r.ok and r.value == pytest.approx(SQRT_PI, abs=1e-9)

    def test_divergent_polynomial_on_hyperbola(self):
        # x2^2 + x4^2 grows along the side x2^2 - x4^2 = 1; x1^2 + x3^2 vanishes identically there
        pair = pair_from_basis(HYPERBOLA_V)
        u = Quadratic(np.diag([0.0, 1, 0, 1]))
        assert H.integrate_conic(u, pair.S).status is Status.NOT_INTEGRABLE
        assert H.integrate_conic(X1X1_X3X3, pair.Sperp).status is Status.NOT_INTEGRABLE

    def test_line_empty_side(self):
        from conjconics.conics import line_pair
        pair = line_pair()
        sides = [pair.S, pair.Sperp]
        statuses = {H.integrate_conic(ONE, s).status for s in sides}
        assert Status.NOT_INTEGRABLE in statuses

    def test_convergence_under_tighter_tolerance(self):
        pairs = H.generate_pairs(11, 5, "hyperbolae") + H.generate_pairs(12, 5, "parabolae")
        u = PlaneWave([np.sqrt(2), 0, 1, 1], Gaussian())
        checked = 0
        for pair in pairs:
            coarse = H.integrate_conic(u, pair.S, QuadratureSpec(rel_tol=1e-8))
            fine = H.integrate_conic(u, pair.S, QuadratureSpec(rel_tol=5e-9))
            if not (coarse.ok and fine.ok):
                continue
            checked += 1
            assert abs(fine.value - coarse.value) <= max(coarse.error, 1e-15)
        assert checked >= 8


class TestAsgeirsson:
    def test_analytic_anchor(self):
        r = H.asgeirsson_check(X1X1_X3X3, 0, 0, 0, 0, 1)
        assert r.ok
        assert r.I_S == pytest.approx(np.pi, abs=1e-10) and r.I_Sp == pytest.approx(np.pi, abs=1e-10)

    def test_cosine_wave(self):
        gen = np.random.default_rng(0)
        u = PlaneWave([1, 0, 1, 0], Cosine())
        for _ in range(10):
            r = H.asgeirsson_check(u, *gen.uniform(-2, 2, 4), 0.5)
            assert r.ok and r.rel_diff <= 1e-10

    def test_odd_solution_at_origin(self):
        # both sides vanish; compare absolutely since rel_diff of two round-off values is meaningless
        r = H.asgeirsson_check(Quadratic(np.zeros((4, 4)), linear=[1, 0, 0, 0]), 0, 0, 0, 0, 1)
        assert r.ok and abs(r.I_S) < 1e-14 and abs(r.I_Sp) < 1e-14

    def test_radius_checked(self):
        with pytest.raises(ValueError):
            H.asgeirsson_check(ONE, 0, 0, 0, 0, 0.0)

    def test_circle_pair_geometry(self):
        pair = H.circle_pair(1.0, -2.0, 0.5, 3.0, 0.25)
        assert H.integrate_conic(ONE, pair.S).value == pytest.approx(2 * np.pi * 0.25, rel=1e-13)
        assert H.integrate_conic(ONE, pair.Sperp).value == pytest.approx(2 * np.pi * 0.25, rel=1e-13)


class TestMeanValueCheck:
    def test_standard_pair_builtins(self):
        for u in builtin_solutions():
            r = H.mean_value_check(u, standard_pair())
            assert r.ok and r.rel_diff <= 1e-9, u.name

    def test_parabola_anchor(self):
        r = H.mean_value_check(PlaneWave([0, 1, 0, 1], Gaussian()), parabola_pair())
        assert r.ok and r.rel_diff <= 1e-9
        assert r.I_S == pytest.approx(SQRT_PI, abs=1e-9)

    def test_hyperbola_pair(self):
        r = H.mean_value_check(PlaneWave([np.sqrt(2), 0, 1, 1], Gaussian()), pair_from_basis(HYPERBOLA_V))
        assert r.ok and r.rel_diff <= 1e-8
        assert r.pair_class == "hyperbolae"

    def test_line_empty_skipped(self):
        from conjconics.conics import line_pair
        r = H.mean_value_check(ONE, line_pair())
        assert r.status == H.SKIPPED_LINE_EMPTY

    def test_not_integrable_reported(self):
        r = H.mean_value_check(X1X1_X3X3, pair_from_basis(HYPERBOLA_V))
        assert r.status == "NotIntegrable" and np.isnan(r.rel_diff)

    def test_conformal_invariance_of_verdict(self):
        u = PlaneWave([np.sqrt(2), 0, 1, 1], Gaussian())
        base = H.generate_pairs(21, 6, "hyperbolae") + H.generate_pairs(22, 4, "circles")
        for i, pair in enumerate(base):
            r = H.mean_value_check(u, pair)
            if not r.ok:
                continue
            moved = apply_map(random_map(i, 3, 0x77), pair)
            r2 = H.mean_value_check(u, moved)
            assert r2.status == "NotIntegrable" or r2.rel_diff <= 1e-6


class TestGeneratePairs:
    def test_circles(self):
        pairs = H.generate_pairs(1, 10, "circles")
        assert len(pairs) == 10
        assert all(classify_pair(p).cls is PairClass.CIRCLES for p in pairs)

    def test_parabolae(self):
        pairs = H.generate_pairs(1, 5, "parabolae")
        for p in pairs:
            assert classify_pair(p).cls is PairClass.PARABOLAE
            assert classify_by_lambda(p.S).roots == 1
            extract_case2_data(p)

    def test_line_empty(self):
        for p in H.generate_pairs(1, 5, "LineEmpty"):
            assert classify_pair(p).cls is PairClass.LINE_EMPTY

    def test_empty(self):
        assert H.generate_pairs(1, 0) == []

    def test_deterministic(self):
        a = H.generate_pairs(7, 3, "hyperbolae")
        b = H.generate_pairs(7, 3, "hyperbolae")
        for p, q in zip(a, b):
            np.testing.assert_array_equal(p.V.basis, q.V.basis)

    def test_bad_filter(self):
        with pytest.raises(Exception):
            H.generate_pairs(1, 1, "ellipses")


class TestReports:
    def test_csv_deterministic(self):
        pairs = H.generate_pairs(3, 2, "circles")
        sols = mean_value_solutions()[:3]
        a = H.report_csv(H.run_grid(pairs, sols))
        b = H.report_csv(H.run_grid(pairs, sols))
        assert a == b
        lines = a.splitlines()
        assert lines[0] == ",".join(H.REPORT_HEADER)
        assert len(lines) == 1 + 6

    def test_timestamp_line(self):
        text = H.report_csv([], timestamp="2020-01-01T00:00:00")
        assert text.startswith("# generated 2020-01-01T00:00:00")

    def test_seventeen_digits(self):
        rows = H.run_grid([standard_pair()], [X1X1_X3X3])
        field = H.report_csv(rows).splitlines()[1].split(",")[3]
        assert float(field) == rows[0].I_S
