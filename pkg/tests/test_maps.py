import numpy as np
import pytest

from projcurv import dual as gm
from projcurv import maps as mp
from projcurv import sympow
from projcurv.bundle import BundlePoint
from projcurv.charts import RealChart
from projcurv.errors import ValidationError
from projcurv.fields import RiemannianMetricField

from conftest import conformal_real_rule, identity_map


def square_map(flat1):
    return mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (z[0] ** 2,),
                         holomorphic=True, name="square")


class TestChartedMap:
    def test_holomorphic_flag_violation_is_constructor_error(self, flat1):
        with pytest.raises(ValidationError):
            mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (gm.conj(z[0]),),
                          holomorphic=True, name="conj")

    def test_anti_derivatives_vanish_for_holomorphic(self, flat1):
        f = square_map(flat1)
        rng = np.random.default_rng(1)
        for _ in range(5):
            _, anti = f.jacobians(flat1.chart.sample(rng))
            assert np.max(np.abs(anti)) < 1e-8

    def test_real_target_values_real(self, flat1, euclidean2):
        f = mp.ChartedMap(flat1.chart, euclidean2.chart,
                          lambda z: (gm.real(z[0]), gm.imag(z[0])), name="realify")
        v = f.value([0.3 + 0.4j])
        assert v.dtype.kind == "f"
        assert np.allclose(v, [0.3, 0.4])

    def test_second_mixed_of_abs2(self, flat1, euclidean2):
        chart1r = RealChart(dim=1, radius=[9.0])
        eucl1 = RiemannianMetricField(chart1r, lambda x: [[1.0]], name="e1")
        f = mp.ChartedMap(flat1.chart, chart1r, lambda z: (gm.abs2(z[0]),),
                          name="abs2")
        sec = f.second_mixed([0.5 - 0.2j])
        assert sec[0, 0, 0] == pytest.approx(1.0, abs=1e-9)


class TestClassicalDensity:
    def test_constant_map(self, fs1, flat1):
        f = mp.ChartedMap(fs1.chart, flat1.chart, lambda z: (0.3 + 0j,),
                          holomorphic=True, name="const")
        assert mp.classical_energy_density(f, fs1, flat1, [0.2]) == \
            pytest.approx(0.0, abs=1e-14)

    def test_identity_flat_gives_dimension(self, flat2):
        f = identity_map(flat2, flat2)
        assert mp.classical_energy_density(f, flat2, flat2, [0.1, 0.2j]) == \
            pytest.approx(2.0, abs=1e-12)

    def test_doubling_map(self, flat1):
        f = mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (2 * z[0],),
                          holomorphic=True, name="2z")
        assert mp.classical_energy_density(f, flat1, flat1, [0.3]) == \
            pytest.approx(4.0, abs=1e-12)


class TestGeneralizedY:
    def test_constant_map_vanishes_on_fiber(self, flat2):
        f = mp.ChartedMap(flat2.chart, flat2.chart, lambda z: (0.1 + 0j, 0.2j),
                          holomorphic=True, name="const")
        rng = np.random.default_rng(2)
        for _ in range(5):
            W = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            P = BundlePoint.make([0.1, 0.2], W)
            assert mp.generalized_Y(f, flat2, flat2, P) == pytest.approx(0.0, abs=1e-14)

    def test_identity_same_metric_is_one(self, fs2):
        f = identity_map(fs2, fs2)
        rng = np.random.default_rng(3)
        for _ in range(5):
            P = BundlePoint.make(fs2.chart.sample(rng, 0.5),
                                 rng.standard_normal(2) + 1j * rng.standard_normal(2))
            assert mp.generalized_Y(f, fs2, fs2, P) == pytest.approx(1.0, abs=1e-10)

    def test_square_map_value(self, flat1):
        f = square_map(flat1)
        P = BundlePoint.make([0.5], [1.0])
        assert mp.generalized_Y(f, flat1, flat1, P) == pytest.approx(1.0, abs=1e-12)

    def test_projective_invariance(self, fs2, flat2):
        f = mp.ChartedMap(fs2.chart, flat2.chart,
                          lambda z: (z[0] + 0.5 * z[1] ** 2, z[1]),
                          holomorphic=True)
        z = [0.2 + 0.1j, -0.3j]
        W = np.array([1.0, 0.7 - 0.2j])
        vals = [mp.generalized_Y(f, fs2, flat2, BundlePoint.make(z, lam * W,
                                                                 chart_index=0))
                for lam in (1.0, 2.0, 1j, 0.3 - 0.8j)]
        assert np.ptp(vals) < 1e-10


class TestY1Y2:
    def test_y1_values(self, flat1, flat2):
        f = mp.ChartedMap(flat1.chart, flat2.chart, lambda z: (z[0], 2 * z[0]),
                          holomorphic=True, name="(z,2z)")
        Q = BundlePoint.make([0.2], [0.0, 1.0])    # X = e_2
        assert mp.generalized_Y1(f, flat1, flat2, Q) == pytest.approx(4.0, abs=1e-10)
        fid = identity_map(flat2, flat2)
        Q2 = BundlePoint.make([0.1, 0.1], [1.0, 0.0])
        assert mp.generalized_Y1(fid, flat2, flat2, Q2) == pytest.approx(1.0, abs=1e-10)

    def test_y1_scale_invariance(self, fs1, fs2):
        f = mp.ChartedMap(fs1.chart, fs2.chart, lambda z: (z[0], 0.3 * z[0] ** 2),
                          holomorphic=True)
        z = [0.2 - 0.3j]
        X = np.array([0.5, 1.0 + 0.5j])
        vals = [mp.generalized_Y1(f, fs1, fs2, BundlePoint.make(z, lam * X,
                                                                chart_index=1))
                for lam in (1.0, 3.0, 1j)]
        assert np.ptp(vals) < 1e-10

    def test_y2_values(self, flat1, flat2):
        fid = identity_map(flat2, flat2)
        R = mp.NestedBundlePoint.make([0.1, 0.2], [1.0, 0.0], [1.0, 0.0])
        assert mp.generalized_Y2(fid, flat2, flat2, R) == pytest.approx(1.0, abs=1e-10)
        f2 = mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (2 * z[0],),
                           holomorphic=True)
        R1 = mp.NestedBundlePoint.make([0.3], [1.0], [1.0])
        assert mp.generalized_Y2(f2, flat1, flat1, R1) == pytest.approx(4.0, abs=1e-10)

    def test_y2_biscale_invariance(self, flat2):
        fid = identity_map(flat2, flat2)
        z = [0.1, -0.2j]
        W = np.array([1.0, 0.4 + 0.1j])
        X = np.array([0.3 - 0.2j, 1.0])
        vals = []
        for lw in (1.0, 2j):
            for lx in (1.0, 0.5 - 0.5j):
                R = mp.NestedBundlePoint.make(z, lw * W, lx * X)
                vals.append(mp.generalized_Y2(fid, flat2, flat2, R))
        assert np.ptp(vals) < 1e-10


class TestSymmetricPower:
    def test_induced_metric_norm_identity(self):
        rng = np.random.default_rng(5)
        for n, k in ((1, 3), (2, 2), (2, 3), (3, 2)):
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            g = A @ A.conj().T + n * np.eye(n)
            Gk = sympow.induced_metric(g, k)
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            vec = sympow.sym_power_vector(v, n, k)
            lhs = np.einsum("IJ,I,J->", Gk, vec, vec.conj())
            rhs = np.einsum("ij,i,j->", g, v, v.conj()) ** k
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_yk_reduces_to_y_at_k1(self, fs2, flat2):
        f = mp.ChartedMap(fs2.chart, flat2.chart, lambda z: (z[0] ** 2, z[0] * z[1]),
                          holomorphic=True)
        P = BundlePoint.make([0.2 + 0.1j, -0.3j], [1.0, 0.5])
        y1 = mp.generalized_Y_k(f, fs2, flat2, P, 1)
        y = mp.generalized_Y(f, fs2, flat2, P)
        assert y1 == pytest.approx(y, rel=1e-12)

    def test_yk_doubling_map(self, flat1):
        f = mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (2 * z[0],),
                          holomorphic=True)
        P = BundlePoint.make([0.3], [1.0])
        assert mp.generalized_Y_k(f, flat1, flat1, P, 3) == \
            pytest.approx(64.0, abs=1e-10)   # |f'|^{2k} = 4^3

    def test_yk_power_relation_rank_one(self, flat1):
        f = square_map(flat1)
        P = BundlePoint.make([0.4 - 0.2j], [1.0])
        y = mp.generalized_Y(f, flat1, flat1, P)
        for k in (2, 3):
            yk = mp.generalized_Y_k(f, flat1, flat1, P, k)
            assert yk == pytest.approx(y ** k, rel=1e-8)

    def test_yk_m2_hand_contraction(self, fs2, flat2):
        # Sym^2 of a genuine 2 x 2 Jacobian against the tensor-power identity
        # |(J W)^{x2}|^2 / H^2 = (|J W|^2 / H)^2 for the induced metric
        f = mp.ChartedMap(fs2.chart, flat2.chart,
                          lambda z: (z[0] ** 2 + 0.5 * z[1], z[0] * z[1]),
                          holomorphic=True)
        P = BundlePoint.make([0.2 + 0.1j, -0.3j], [1.0, 0.6 - 0.2j])
        holo, _ = f.jacobians(P.z)
        JW = holo @ P.W_affine
        H = np.einsum("gd,g,d->", fs2.matrix(P.z), P.W_affine,
                      P.W_affine.conj()).real
        expected = (float(np.vdot(JW, JW).real) / H) ** 2
        val = mp.generalized_Y_k(f, fs2, flat2, P, 2)
        assert val == pytest.approx(expected, rel=1e-10)

    def test_constant_map_and_bad_k(self, flat1):
        f = mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (0.5 + 0j,),
                          holomorphic=True)
        P = BundlePoint.make([0.1], [1.0])
        assert mp.generalized_Y_k(f, flat1, flat1, P, 2) == pytest.approx(0.0, abs=1e-14)
        with pytest.raises(ValidationError):
            mp.generalized_Y_k(f, flat1, flat1, P, 0)

    def test_user_supplied_gk(self, flat1):
        f = mp.ChartedMap(flat1.chart, flat1.chart, lambda z: (2 * z[0],),
                          holomorphic=True)
        P = BundlePoint.make([0.3], [1.0])
        val = mp.generalized_Y_k(f, flat1, flat1, P, 2,
                                 g_k=lambda fz: [[0.5]])
        assert val == pytest.approx(8.0, abs=1e-10)  # 0.5 * 16


class TestConformalY:
    def test_zero_weight(self, fs1, poincare1):
        f = identity_map(fs1, poincare1)
        P = BundlePoint.make([0.2], [1.0])
        y = mp.generalized_Y(f, fs1, poincare1, P)
        assert mp.conformal_Y(f, fs1, poincare1, P, lambda z, W: 0.0) == \
            pytest.approx(y, rel=1e-14)

    def test_log2_weight_doubles(self, fs1, poincare1):
        f = identity_map(fs1, poincare1)
        P = BundlePoint.make([0.2], [1.0])
        y = mp.generalized_Y(f, fs1, poincare1, P)
        assert mp.conformal_Y(f, fs1, poincare1, P,
                              lambda z, W: np.log(2.0)) == pytest.approx(2 * y,
                                                                         rel=1e-12)

    def test_constant_map_stays_zero(self, fs1, poincare1):
        f = mp.ChartedMap(fs1.chart, poincare1.chart, lambda z: (0.1 + 0j,),
                          holomorphic=True)
        P = BundlePoint.make([0.2], [1.0])
        assert mp.conformal_Y(f, fs1, poincare1, P, lambda z, W: 5.0) == \
            pytest.approx(0.0, abs=1e-14)

    def test_field_route_matches_pointwise_route(self, fs1, poincare1):
        from conftest import identity_map as _id
        f = _id(fs1, poincare1)
        phi = lambda zs, Ws: 0.3 * gm.real(zs[0]) + 0.1 * gm.abs2(zs[0])
        P = BundlePoint.make([0.25 - 0.15j], [1.0])
        field = mp.Y_phi_field(f, fs1, poincare1, P.chart_index, phi)
        direct = mp.conformal_Y(f, fs1, poincare1, P, phi)
        assert np.real(field(P.combined())) == pytest.approx(direct, rel=1e-12)


class TestEnergyDensityKind:
    def test_dispatch_matches_direct_ops(self, fs2, flat2):
        f = mp.ChartedMap(fs2.chart, flat2.chart,
                          lambda z: (z[0] + 0.3 * z[1] ** 2, z[1]),
                          holomorphic=True)
        z = np.array([0.2 + 0.1j, -0.3j])
        P = BundlePoint.make(z, [1.0, 0.4 - 0.2j])
        Q = BundlePoint.make(z, [0.5, 1.0])
        R = mp.NestedBundlePoint.make(z, [1.0, 0.4], [0.5, 1.0])
        phi = lambda zs, Ws: 0.2
        cases = [
            (mp.EnergyDensityKind("classical_u"), z,
             mp.classical_energy_density(f, fs2, flat2, z)),
            (mp.EnergyDensityKind("Y"), P, mp.generalized_Y(f, fs2, flat2, P)),
            (mp.EnergyDensityKind("Y1"), Q, mp.generalized_Y1(f, fs2, flat2, Q)),
            (mp.EnergyDensityKind("Y2"), R, mp.generalized_Y2(f, fs2, flat2, R)),
            (mp.EnergyDensityKind("Y_phi", phi=phi), P,
             mp.conformal_Y(f, fs2, flat2, P, phi)),
            (mp.EnergyDensityKind("Y_k", k=2), P,
             mp.generalized_Y_k(f, fs2, flat2, P, 2)),
        ]
        for kind, point, expected in cases:
            assert mp.density_value(kind, f, fs2, flat2, point) == \
                pytest.approx(expected, rel=1e-12)

    def test_invalid_kinds(self):
        with pytest.raises(ValidationError):
            mp.EnergyDensityKind("Y9")
        with pytest.raises(ValidationError):
            mp.EnergyDensityKind("Y_k", k=0)
        with pytest.raises(ValidationError):
            mp.EnergyDensityKind("Y_phi")


class TestHarmonicResiduals:
    def test_constant_map(self, fs1, euclidean2):
        f = mp.ChartedMap(fs1.chart, euclidean2.chart, lambda z: (0.3, -0.1),
                          name="const")
        res = mp.pluriharmonic_residual(f, euclidean2, [0.2])
        assert np.max(np.abs(res)) < 1e-14

    def test_holomorphic_into_flat(self, flat1):
        chart3 = RealChart(dim=3, radius=[9.0] * 3)
        eucl3 = RiemannianMetricField(chart3, lambda x: np.eye(3).tolist(), name="e3")
        f = mp.ChartedMap(flat1.chart, chart3,
                          lambda z: (gm.real(z[0] ** 2), gm.imag(z[0] ** 2),
                                     gm.real(z[0])), name="holo-parts")
        res = mp.pluriharmonic_residual(f, eucl3, [0.4 - 0.1j])
        assert np.max(np.abs(res)) < 1e-9

    def test_identity_into_poincare_riem(self, flat1):
        chart2 = RealChart(dim=2, radius=[0.9, 0.9])
        poinr = RiemannianMetricField(
            chart2, conformal_real_rule(2, lambda r2: 2 / (1 - r2) ** 2),
            name="poincare-riem")
        f = mp.ChartedMap(flat1.chart, chart2,
                          lambda z: (gm.real(z[0]), gm.imag(z[0])), name="realify")
        res = mp.pluriharmonic_residual(f, poinr, [0.3 - 0.2j])
        assert np.max(np.abs(res)) < 1e-6

    def test_chern_connection_variant(self, fs1, poincare1):
        # holomorphic maps into complex targets are pluri-harmonic for the
        # Chern-connection definition
        f = identity_map(fs1, poincare1)
        res = mp.pluriharmonic_residual(f, poincare1, [0.25 + 0.1j])
        assert np.max(np.abs(res)) < 1e-8

    def test_hermitian_harmonic_trace(self, fs1):
        chart1r = RealChart(dim=1, radius=[9.0])
        eucl1 = RiemannianMetricField(chart1r, lambda x: [[1.0]], name="e1")
        f = mp.ChartedMap(fs1.chart, chart1r, lambda z: (gm.real(z[0]),),
                          name="re")
        v = mp.hermitian_harmonic_residual(f, fs1, eucl1, [0.3 + 0.2j])
        assert np.max(np.abs(v)) < 1e-10

    def test_hermitian_harmonic_without_pluriharmonic(self, flat2):
        # |z1|^2 - |z2|^2 has f_{1 1bar} = -f_{2 2bar} = 1: the trace against
        # the flat metric vanishes while the full residual does not
        chart1r = RealChart(dim=1, radius=[9.0])
        eucl1 = RiemannianMetricField(chart1r, lambda x: [[1.0]], name="e1")
        f = mp.ChartedMap(flat2.chart, chart1r,
                          lambda z: (gm.abs2(z[0]) - gm.abs2(z[1]),),
                          name="saddle")
        z = [0.2 + 0.1j, -0.3j]
        trace = mp.hermitian_harmonic_residual(f, flat2, eucl1, z)
        full = mp.pluriharmonic_residual(f, eucl1, z)
        assert np.max(np.abs(trace)) < 1e-10
        assert np.max(np.abs(full)) > 0.9


class TestConstraintAndHatC:
    def test_euclidean_target_zero(self, flat1):
        chart3 = RealChart(dim=3, radius=[9.0] * 3)
        eucl3 = RiemannianMetricField(chart3, lambda x: np.eye(3).tolist(), name="e3")
        f = mp.ChartedMap(flat1.chart, chart3,
                          lambda z: (gm.real(z[0] ** 2), gm.imag(z[0] ** 2),
                                     gm.real(z[0])))
        out = mp.constraint_D_check(f, eucl3, [0.3])
        assert out["applicable"]
        assert out["max_residual"] < 1e-12
        assert mp.hatC_value(f, flat1, eucl3, [0.3]) == pytest.approx(0.0, abs=1e-12)

    def test_pluriharmonic_into_poincare(self, flat1):
        chart2 = RealChart(dim=2, radius=[0.9, 0.9])
        poinr = RiemannianMetricField(
            chart2, conformal_real_rule(2, lambda r2: 2 / (1 - r2) ** 2),
            name="poincare-riem")
        f = mp.ChartedMap(flat1.chart, chart2,
                          lambda z: (gm.real(z[0]), gm.imag(z[0])))
        out = mp.constraint_D_check(f, poinr, [0.2 + 0.3j])
        assert out["applicable"]
        assert out["max_residual"] < 1e-6
        assert abs(mp.hatC_value(f, flat1, poinr, [0.2 + 0.3j])) < 1e-6

    def test_not_applicable_reported(self, flat1):
        chart2 = RealChart(dim=2, radius=[2.0, 2.0])
        # curved target and a non-pluri-harmonic smooth map
        hyp = RiemannianMetricField(
            RealChart(dim=2, radius=[0.9, 0.9]),
            conformal_real_rule(2, lambda r2: 4 / (1 - r2) ** 2), name="hyp")
        f = mp.ChartedMap(flat1.chart, hyp.chart,
                          lambda z: (0.3 * gm.abs2(z[0]), gm.real(z[0])),
                          name="bump")
        out = mp.constraint_D_check(f, hyp, [0.4 + 0.1j])
        assert not out["applicable"]
        assert out["max_residual"] is None

    def test_hatC_nonpositive_into_hyperbolic(self, flat1):
        hyp = RiemannianMetricField(
            RealChart(dim=2, radius=[0.9, 0.9]),
            conformal_real_rule(2, lambda r2: 4 / (1 - r2) ** 2), name="hyp")
        rng = np.random.default_rng(6)
        f = mp.ChartedMap(flat1.chart, hyp.chart,
                          lambda z: (0.3 * gm.abs2(z[0]), gm.real(z[0]) * 0.5),
                          name="bump")
        for _ in range(5):
            z = flat1.chart.sample(rng, 0.4)
            assert mp.hatC_value(f, flat1, hyp, z) <= 1e-8
