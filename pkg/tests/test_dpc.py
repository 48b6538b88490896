import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conjconics.dpc import (Hypersphere, Kind, classify_dpc, complementary_hyperplane_points, dpc_from_hypersphere,
                            dpc_from_json, dpc_to_json, hypersphere_from_dpc, hypersphere_from_json,
                            hypersphere_to_json, in_q1, normalize_dpc, orthogonality_oracle, phi, point_on,
                            same_hypersphere, separation)
from conjconics.errors import EmptyHypersphere, ZeroVector
from conjconics.neutral import inner33

from factories import orthogonal_pair, point_on_hypersphere, random_hypersphere

point = arrays(np.float64, 4, elements=st.floats(-5, 5))


class TestConstructor:
    @pytest.mark.parametrize("H, want", [
        (Hypersphere.proper((0, 0, 0, 0), 1.0), (1, 0, 0, 0, 0, 0)),
        (Hypersphere.proper((0, 0, 0, 0), -1.0), (0, 0, 0, 0, 0, 1)),
        (Hypersphere.plane((0, 0, 1, 0), 0.0), (0, 0, 0, 1, 0, 0)),
        (Hypersphere.proper((1, 0, 0, 0), 1.0), (0.5, 1, 0, 0, 0, 0.5)),
    ])
    def test_examples(self, H, want):
        np.testing.assert_allclose(dpc_from_hypersphere(H), want, atol=1e-15)

    def test_empty_rejected(self):
        with pytest.raises(EmptyHypersphere):
            dpc_from_hypersphere(Hypersphere.empty())

    def test_zero_normal_rejected(self):
        with pytest.raises(ZeroVector):
            Hypersphere.plane((0, 0, 0, 0), 1.0)


class TestPhi:
    @pytest.mark.parametrize("p, want", [
        ((0, 0, 0, 0), (0.5, 0, 0, 0, 0, 0.5)),
        ((1, 0, 0, 0), (0, 1, 0, 0, 0, 1)),
        ((1, 0, 1, 0), (0.5, 1, 0, 1, 0, 0.5)),
    ])
    def test_examples(self, p, want):
        np.testing.assert_allclose(phi(p), want, atol=1e-15)

    @given(point)
    def test_lands_in_q1(self, p):
        s = phi(p)
        assert in_q1(s)
        assert s[0] + s[5] == pytest.approx(1.0, abs=1e-12)

    def test_rowwise(self):
        P = np.random.default_rng(0).normal(size=(7, 4))
        np.testing.assert_allclose(phi(P), np.array([phi(p) for p in P]))


class TestClassify:
    def test_table(self):
        assert classify_dpc((1, 0, 0, 0, 0, 0)) is Kind.PROPER
        assert classify_dpc((-2.0, 0.3, 1, 0, 0, 2.0)) is Kind.PLANE
        assert classify_dpc((1, 0, 0, 0, 0, -1)) is Kind.EMPTY

    def test_zero(self):
        with pytest.raises(ZeroVector):
            classify_dpc(np.zeros(6))


class TestInverse:
    def test_examples(self):
        H = hypersphere_from_dpc((1, 0, 0, 0, 0, 0))
        assert H.kind is Kind.PROPER and H.radius_sq == 1.0 and not np.any(H.center)
        H = hypersphere_from_dpc((0.5, 1, 0, 0, 0, 0.5))
        np.testing.assert_allclose(H.center, (1, 0, 0, 0))
        assert H.radius_sq == pytest.approx(1.0)
        H = hypersphere_from_dpc((0, 0, 0, 1, 0, 0))
        assert H.kind is Kind.PLANE
        np.testing.assert_allclose(H.normal, (0, 0, 1, 0))
        assert H.offset == 0.0

    def test_roundtrip(self):
        gen = np.random.default_rng(5)
        for _ in range(2000):
            H = random_hypersphere(gen)
            assert same_hypersphere(hypersphere_from_dpc(dpc_from_hypersphere(H)), H)

    @settings(max_examples=200)
    @given(st.floats(1e-6, 1e6), st.booleans(), st.integers(0, 2 ** 32 - 1))
    def test_projective_invariance(self, c, neg, seed):
        gen = np.random.default_rng(seed)
        H = random_hypersphere(gen)
        s = dpc_from_hypersphere(H)
        t = (-c if neg else c) * s
        assert classify_dpc(t) is classify_dpc(s)
        assert same_hypersphere(hypersphere_from_dpc(t), hypersphere_from_dpc(s), 1e-8)
        x = point_on_hypersphere(gen, H)
        if x is not None:
            assert point_on(t, x) and point_on(s, x)

    def test_normalize_plane_branch(self):
        u = normalize_dpc((-3.0, 0, 0, -4.0, 0, 3.0))
        assert np.linalg.norm(u) == pytest.approx(1.0)
        assert u[0] > 0


class TestMembership:
    def test_examples(self):
        unit = dpc_from_hypersphere(Hypersphere.proper(np.zeros(4), 1.0))
        assert point_on(unit, (1, 0, 0, 0))
        assert not point_on(unit, (2, 0, 0, 0))
        assert inner33(phi((2, 0, 0, 0)), unit) == pytest.approx(-1.5)
        plane = dpc_from_hypersphere(Hypersphere.plane((0, 0, 1, 0), 0.0))
        assert point_on(plane, (1, 1, 0, 3))

    def test_complementary_hyperplane_examples(self):
        th = np.linspace(0, 2 * np.pi, 17)
        X = np.stack([np.cos(th), np.sin(th), 0 * th, 0 * th], axis=1)
        assert all(complementary_hyperplane_points((1, 0, 0, 0, 0, 0), X))
        assert complementary_hyperplane_points((0, 0, 0, 0, 0, 1), [(0, 0, 1, 0)]) == [True]

    def test_complementary_hyperplane_agrees_with_point_on(self):
        gen = np.random.default_rng(8)
        for _ in range(500):
            H = random_hypersphere(gen)
            s = dpc_from_hypersphere(H)
            xs = [gen.uniform(-2, 2, 4)]
            x = point_on_hypersphere(gen, H)
            if x is not None:
                xs.append(x)
            got = complementary_hyperplane_points(s, xs)
            assert got == [point_on(s, x) for x in xs]
            if x is not None:
                assert got[-1]


class TestSeparation:
    def test_examples(self):
        assert separation((0, 0, 0, 0), (1, 0, 1, 0)) == 0.0
        assert inner33(phi((0, 0, 0, 0)), phi((1, 0, 1, 0))) == 0.0
        assert separation((0, 0, 0, 0), (1, 0, 0, 0)) == 1.0
        assert -2 * inner33(phi((0, 0, 0, 0)), phi((1, 0, 0, 0))) == 1.0
        assert separation((3, 1, 4, 1), (3, 1, 4, 1)) == 0.0

    @given(point, point)
    def test_identity(self, a, b):
        lhs = separation(a, b)
        rhs = -2 * inner33(phi(a), phi(b))
        assert abs(lhs - rhs) <= 1e-12 * (1 + np.dot(a, a) + np.dot(b, b)) ** 2


class TestOrthogonality:
    def test_examples(self):
        v = orthogonality_oracle(Hypersphere.cone(np.zeros(4)), Hypersphere.cone((1, 0, 1, 0)))
        assert v.by_dpc and v.by_geometry and v.clause == "iii"
        v = orthogonality_oracle(Hypersphere.proper(np.zeros(4), 1.0), Hypersphere.cone((1, 0, 0, 0)))
        assert v.by_dpc and v.by_geometry and v.clause == "ii"
        v = orthogonality_oracle(Hypersphere.plane((0, 0, 1, 0), 0.0), Hypersphere.proper((0, 0, 5, 0), 1.0))
        assert not v.by_dpc and not v.by_geometry and v.clause == "v"

    @pytest.mark.parametrize("clause", ["i", "ii", "iii", "iv", "v"])
    def test_constructed_cases_agree(self, clause):
        gen = np.random.default_rng(["i", "ii", "iii", "iv", "v"].index(clause))
        for _ in range(200):
            H, K = orthogonal_pair(gen, clause)
            v = orthogonality_oracle(H, K)
            assert v.clause == clause
            assert v.by_dpc and v.by_geometry
            # against an unrelated partner the two readings still agree
            w = orthogonality_oracle(H, random_hypersphere(gen))
            assert w.by_dpc == w.by_geometry

    def test_empty_rejected(self):
        with pytest.raises(EmptyHypersphere):
            orthogonality_oracle(Hypersphere.empty(), Hypersphere.cone(np.zeros(4)))


class TestJson:
    def test_hypersphere_roundtrip(self):
        gen = np.random.default_rng(2)
        for _ in range(50):
            H = random_hypersphere(gen)
            text = hypersphere_to_json(H)
            assert set(json.loads(text)) >= {"kind", "dpc"}
            assert same_hypersphere(hypersphere_from_json(text), H, 1e-15)

    def test_dpc_roundtrip(self):
        s = np.array([0.1, 1 / 3, -2.5, 1e-17, 7.0, np.pi])
        np.testing.assert_array_equal(dpc_from_json(dpc_to_json(s)), s)

    def test_dpc_shape_checked(self):
        with pytest.raises(ValueError):
            dpc_from_json('{"dpc": [1, 2, 3]}')
