import numpy as np
import pytest

from projcurv import dual as gm
from projcurv import curvature as cv
from projcurv.charts import ComplexChart, RealChart
from projcurv.errors import ValidationError
from projcurv.fields import HermitianMetricField, RiemannianMetricField

from conftest import conformal_real_rule


class TestChernCurvature:
    def test_flat_zero(self, flat2):
        t = cv.chern_curvature(flat2, [0.2 + 0.1j, -0.3j])
        assert np.max(np.abs(t.array)) < 1e-12

    def test_fubini_study_value(self, fs1):
        # hand expansion h = 1 - 2|z|^2 + O(|z|^4) gives R_1111(0) = 2
        t = cv.chern_curvature(fs1, [0.0])
        assert t.array[0, 0, 0, 0] == pytest.approx(2.0, abs=1e-8)

    def test_poincare_value(self, poincare1):
        t = cv.chern_curvature(poincare1, [0.0])
        assert t.array[0, 0, 0, 0] == pytest.approx(-2.0, abs=1e-8)

    def test_hermitian_symmetry_invariant(self, fs2):
        rng = np.random.default_rng(2)
        for _ in range(5):
            t = cv.chern_curvature(fs2, fs2.chart.sample(rng))
            assert t.hermitian_defect() < 1e-8

    def test_kahler_symmetry(self, fs2):
        rng = np.random.default_rng(4)
        for _ in range(5):
            t = cv.chern_curvature(fs2, fs2.chart.sample(rng))
            assert t.kahler_defect() < 1e-6

    def test_hopf_is_not_kahler(self):
        chart = ComplexChart(dim=2, center=[1.0, 0.3], radius=[0.25, 0.25])

        def hopf(z):
            r2 = gm.abs2(z[0]) + gm.abs2(z[1])
            return [[(1 if a == b else 0) / r2 for b in range(2)] for a in range(2)]

        field = HermitianMetricField(chart, hopf, name="hopf")
        t = cv.chern_curvature(field, [1.0, 0.3])
        assert t.kahler_defect() > 1e-2
        assert t.hermitian_defect() < 1e-8


class TestSectionalCurvatures:
    def test_hsc_flat(self, flat2):
        assert cv.holomorphic_sectional_curvature(flat2, [0.1, 0.2j],
                                                  [1, 1j]) == pytest.approx(0.0, abs=1e-12)

    def test_hsc_constant_fubini_study(self, fs1):
        rng = np.random.default_rng(7)
        for _ in range(10):
            z = fs1.chart.sample(rng, 0.55)
            v = rng.standard_normal(1) + 1j * rng.standard_normal(1)
            assert cv.holomorphic_sectional_curvature(fs1, z, v) == \
                pytest.approx(2.0, abs=1e-6)

    def test_hsc_constant_poincare(self, poincare1):
        rng = np.random.default_rng(8)
        for _ in range(10):
            z = poincare1.chart.sample(rng, 0.6)
            v = rng.standard_normal(1) + 1j * rng.standard_normal(1)
            assert cv.holomorphic_sectional_curvature(poincare1, z, v) == \
                pytest.approx(-2.0, abs=1e-6)

    @pytest.mark.parametrize("lam", [2.0, 1j, 1 + 1j])
    def test_hsc_scale_invariance(self, fs2, lam):
        z = [0.2 + 0.1j, -0.15j]
        v = np.array([1.0, 0.5 - 0.2j])
        a = cv.holomorphic_sectional_curvature(fs2, z, v)
        b = cv.holomorphic_sectional_curvature(fs2, z, lam * v)
        assert abs(a - b) < 1e-10

    def test_hsc_zero_vector(self, fs1):
        with pytest.raises(ValidationError):
            cv.holomorphic_sectional_curvature(fs1, [0.0], [0.0])

    def test_bisectional_cross_term(self, fs2):
        val = cv.holomorphic_bisectional_curvature(fs2, [0, 0], [1, 0], [0, 1])
        assert val == pytest.approx(1.0, abs=1e-8)

    def test_bisectional_reduces_to_hsc(self, fs2):
        z = [0.1 + 0.2j, 0.05]
        v = [1.0, 0.3j]
        bi = cv.holomorphic_bisectional_curvature(fs2, z, v, v)
        hsc = cv.holomorphic_sectional_curvature(fs2, z, v)
        assert bi == pytest.approx(hsc, abs=1e-8)


class TestChristoffels:
    def test_euclidean_zero(self, euclidean2):
        G = cv.levi_civita_christoffels(euclidean2, [0.3, -0.4])
        assert np.max(np.abs(G)) < 1e-12

    def test_hyperbolic_origin(self, hyperbolic2):
        G = cv.levi_civita_christoffels(hyperbolic2, [0.0, 0.0])
        assert np.max(np.abs(G)) < 1e-10

    def test_sphere_conformal_oracle(self, sphere2):
        # conformal metric e^{2p} delta: Gamma^i_jk = d_ij p_k + d_ik p_j - d_jk p_i
        # with p = log 2 - log(1+r^2): p_i = -2 x_i / (1+r^2)
        G = cv.levi_civita_christoffels(sphere2, [0.2, 0.0],
                                        check_compatibility=True)
        p1 = -0.4 / 1.04
        assert G[0, 0, 0] == pytest.approx(p1, abs=1e-9)
        assert G[0, 1, 1] == pytest.approx(-p1, abs=1e-9)
        assert G[1, 0, 1] == pytest.approx(p1, abs=1e-9)
        assert G[1, 1, 0] == pytest.approx(p1, abs=1e-9)
        assert G[0, 0, 1] == pytest.approx(0.0, abs=1e-9)
        assert G[1, 0, 0] == pytest.approx(0.0, abs=1e-9)
        assert G[1, 1, 1] == pytest.approx(0.0, abs=1e-9)

    def test_symmetry_lower_indices(self, sphere2):
        rng = np.random.default_rng(9)
        G = cv.levi_civita_christoffels(sphere2, sphere2.chart.sample(rng))
        assert np.max(np.abs(G - G.transpose(0, 2, 1))) < 1e-12


class TestRiemannCurvature:
    def test_euclidean_zero(self, euclidean2):
        t = cv.riemann_curvature(euclidean2, [0.5, 0.2])
        assert np.max(np.abs(t.array)) < 1e-12

    def test_sphere_sectional(self, sphere2):
        rng = np.random.default_rng(10)
        for _ in range(8):
            x = sphere2.chart.sample(rng, 0.5)
            assert cv.riemannian_sectional_curvature(sphere2, x, [1, 0], [0, 1]) == \
                pytest.approx(1.0, abs=1e-5)

    def test_hyperbolic_sectional(self, hyperbolic2):
        rng = np.random.default_rng(12)
        for _ in range(8):
            x = hyperbolic2.chart.sample(rng, 0.6)
            X = rng.standard_normal(2)
            Y = rng.standard_normal(2)
            if abs(X[0] * Y[1] - X[1] * Y[0]) < 0.1:
                continue
            assert cv.riemannian_sectional_curvature(hyperbolic2, x, X, Y) == \
                pytest.approx(-1.0, abs=1e-5)

    def test_tensor_symmetries(self, sphere2, hyperbolic2):
        rng = np.random.default_rng(13)
        for metric in (sphere2, hyperbolic2):
            t = cv.riemann_curvature(metric, metric.chart.sample(rng, 0.5))
            assert t.antisymmetry_defect() < 1e-6
            assert t.pair_symmetry_defect() < 1e-6
            assert t.bianchi_defect() < 1e-6

    def test_plane_basis_invariance(self, sphere2):
        x = [0.1, 0.3]
        a = cv.riemannian_sectional_curvature(sphere2, x, [1, 0], [0, 1])
        b = cv.riemannian_sectional_curvature(sphere2, x, [2, 1], [1, 1])
        assert a == pytest.approx(b, abs=1e-6)

    def test_dependent_vectors_rejected(self, sphere2):
        with pytest.raises(ValidationError):
            cv.riemannian_sectional_curvature(sphere2, [0, 0], [1, 1], [2, 2])

    def test_product_mixed_plane_flat(self):
        chart = RealChart(dim=3, radius=[0.9] * 3)

        def rule(x):
            r2 = x[0] * x[0] + x[1] * x[1]
            lam = 4 / (1 + r2) ** 2
            z = 0 * lam
            return [[lam, z, z], [z, lam, z], [z, z, 1.0 + z]]

        metric = RiemannianMetricField(chart, rule, name="sphere-line")
        rng = np.random.default_rng(14)
        for _ in range(5):
            x = chart.sample(rng, 0.5)
            K = cv.riemannian_sectional_curvature(metric, x, [1, 0, 0], [0, 0, 1])
            assert abs(K) < 1e-6


class TestComplexSectional:
    def test_euclidean_zero(self, euclidean2):
        assert cv.complex_sectional_curvature(euclidean2, [0.1, 0.2],
                                              [1, 1j], [1j, 1]) == \
            pytest.approx(0.0, abs=1e-12)

    def test_real_reduction(self, sphere2):
        x = [0.2, -0.1]
        X = np.array([1.0, 0.4])
        Y = np.array([-0.3, 1.0])
        t = cv.riemann_curvature(sphere2, x)
        numerator = float(np.real(t.contract(X, Y, Y, X)))
        csc = cv.complex_sectional_curvature(sphere2, x, X, Y)
        assert csc == pytest.approx(numerator, abs=1e-10)

    def test_hyperbolic3_nonpositive_and_bruteforce(self):
        chart = RealChart(dim=3, radius=[0.8] * 3)
        metric = RiemannianMetricField(
            chart, conformal_real_rule(3, lambda r2: 4 / (1 - r2) ** 2), name="h3")
        rng = np.random.default_rng(15)
        Z = np.array([1.0, 1j, 0.0])
        W = np.array([0.0, 0.0, 1.0])
        val0 = cv.complex_sectional_curvature(metric, [0.0, 0.0, 0.0], Z, W)
        # constant curvature -1 with g(0) = 4 delta: -(4*8 - 0) = -32
        assert val0 == pytest.approx(-32.0, abs=1e-6)
        for _ in range(5):
            x = chart.sample(rng, 0.4)
            Z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            W = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            val = cv.complex_sectional_curvature(metric, x, Z, W)
            assert val <= 1e-10
            # brute-force expansion of the complexification into 16 real-slot
            # contractions of R(Z, Wbar, W, Zbar)
            R = cv.riemann_curvature(metric, x)
            X1, X2 = Z.real, Z.imag
            Y1, Y2 = W.real, W.imag
            expansion = sum(
                c1 * c2 * c3 * c4 * float(np.real(R.contract(V1, V2, V3, V4)))
                for c1, V1 in ((1, X1), (1j, X2))
                for c2, V2 in ((1, Y1), (-1j, Y2))
                for c3, V3 in ((1, Y1), (1j, Y2))
                for c4, V4 in ((1, X1), (-1j, X2)))
            assert val == pytest.approx(float(np.real(expansion)), abs=1e-8)


class TestKey3:
    def test_euclidean(self, euclidean2):
        assert cv.key3_check(euclidean2, [0.3, 0.1]) < 1e-12

    def test_sphere_normal_chart(self):
        chart = RealChart(dim=2, radius=[0.9, 0.9])
        metric = RiemannianMetricField(
            chart, conformal_real_rule(2, lambda r2: 1 / (1 + r2 / 4) ** 2),
            name="sphere-normal")
        assert cv.key3_check(metric, [0.0, 0.0]) < 1e-6

    def test_hyperbolic_normal_chart(self):
        chart = RealChart(dim=2, radius=[0.9, 0.9])
        metric = RiemannianMetricField(
            chart, conformal_real_rule(2, lambda r2: 1 / (1 - r2 / 4) ** 2),
            name="hyperbolic-normal")
        assert cv.key3_check(metric, [0.0, 0.0]) < 1e-6

    def test_precondition_enforced(self, sphere2):
        # 4 delta at the origin violates g = identity
        with pytest.raises(ValidationError):
            cv.key3_check(sphere2, [0.0, 0.0])


class TestNormalCoordinates:
    def test_flat_identity_transformation(self, flat2):
        frame = cv.hermitian_normal_coordinates(flat2, [0.2, 0.1j])
        assert np.allclose(frame.linear, np.eye(2), atol=1e-12)
        assert np.max(np.abs(frame.quadratic)) < 1e-12

    def test_fs_at_origin(self, fs2):
        frame = cv.hermitian_normal_coordinates(fs2, [0.0, 0.0])
        assert np.allclose(frame.linear, np.eye(2), atol=1e-10)
        assert np.max(np.abs(frame.quadratic)) < 1e-10

    def test_perturbed_metric_postconditions(self):
        chart = ComplexChart(dim=2, radius=[0.9, 0.9])
        B = np.array([[1.0, 0.5], [-0.3, 1.2]])

        def rule(z):
            v = [B[0, 0] * z[0] + B[0, 1] * z[1], B[1, 0] * z[0] + B[1, 1] * z[1]]
            return [[(1 if a == b else 0) + 0.1 * v[a] * gm.conj(v[b])
                     for b in range(2)] for a in range(2)]

        metric = HermitianMetricField(chart, rule, name="perturbed")
        # post-conditions are checked inside the constructor call
        frame = cv.hermitian_normal_coordinates(metric, [0.2, -0.1 + 0.1j])
        H0 = frame.metric.matrix(np.zeros(2))
        assert np.allclose(H0, np.eye(2), atol=1e-10)

    def test_point_roundtrip(self, fs2):
        frame = cv.hermitian_normal_coordinates(fs2, [0.2 + 0.1j, -0.3j])
        assert np.allclose(frame.to_old_point(np.zeros(2)),
                           [0.2 + 0.1j, -0.3j], atol=1e-14)

    def test_riemannian_normal(self, sphere2):
        frame = cv.riemannian_normal_coordinates(sphere2, [0.2, -0.1])
        G0 = frame.metric.matrix(np.zeros(2))
        assert np.allclose(G0, np.eye(2), atol=1e-10)
        # key3 now holds at the image point
        assert cv.key3_check(frame.metric, np.zeros(2)) < 1e-6


class TestRCPositiveRiemannian:
    def test_sphere_positive(self, sphere2):
        grid = cv.unit_sphere_grid(2, 8)
        reports = cv.rc_positive_riemannian(sphere2, [[0.0, 0.0], [0.2, 0.1]], grid)
        assert all(r["rc_positive"] for r in reports)

    def test_euclidean_all_zero(self, euclidean2):
        grid = cv.unit_sphere_grid(2, 8)
        reports = cv.rc_positive_riemannian(euclidean2, [[0.1, 0.2]], grid)
        assert not reports[0]["rc_positive"]
        assert np.max(np.abs(reports[0]["sup_per_z"])) < 1e-12

    def test_product_flat_direction(self):
        chart = RealChart(dim=3, radius=[0.9] * 3)

        def rule(x):
            r2 = x[0] * x[0] + x[1] * x[1]
            lam = 4 / (1 + r2) ** 2
            z = 0 * lam
            return [[lam, z, z], [z, lam, z], [z, z, 1.0 + z]]

        metric = RiemannianMetricField(chart, rule, name="sphere-line")
        z_grid = np.array([[0.0, 0.0, 1.0]])     # the line factor
        w_grid = cv.unit_sphere_grid(3, 16)
        reports = cv.rc_positive_riemannian(metric, [[0.0, 0.0, 0.0]], z_grid, w_grid)
        assert not reports[0]["rc_positive"]
        assert reports[0]["sup_per_z"][0] == pytest.approx(0.0, abs=1e-10)

    def test_empty_grid_rejected(self, sphere2):
        with pytest.raises(ValidationError):
            cv.rc_positive_riemannian(sphere2, [[0.0, 0.0]], np.empty((0, 2)))
