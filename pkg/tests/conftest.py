import pytest

from projcurv import dual as gm
from projcurv.charts import ComplexChart, RealChart
from projcurv.fields import HermitianMetricField, RiemannianMetricField
from projcurv.maps import ChartedMap


def fs_rule(m):
    def rule(z):
        s = 1
        for a in range(m):
            s = s + gm.abs2(z[a])
        return [[(1 if a == b else 0) / s - gm.conj(z[a]) * z[b] / (s * s)
                 for b in range(m)] for a in range(m)]
    return rule


def conformal_real_rule(n, factor):
    def rule(x):
        r2 = 0
        for i in range(n):
            r2 = r2 + x[i] * x[i]
        lam = factor(r2)
        return [[lam if i == j else 0 * lam for j in range(n)] for i in range(n)]
    return rule


@pytest.fixture
def disc():
    return ComplexChart(dim=1, radius=[0.9], name="disc")


@pytest.fixture
def fs1(disc):
    return HermitianMetricField(disc, fs_rule(1), name="fs1")


@pytest.fixture
def poincare1():
    chart = ComplexChart(dim=1, radius=[0.55], name="poincare")
    return HermitianMetricField(
        chart, lambda z: [[1 / (1 - gm.abs2(z[0])) ** 2]], name="poincare")


@pytest.fixture
def flat1():
    chart = ComplexChart(dim=1, radius=[2.0], name="flat1")
    return HermitianMetricField(chart, lambda z: [[1.0 + 0j]], name="flat1")


@pytest.fixture
def flat2():
    chart = ComplexChart(dim=2, radius=[1.0, 1.0], name="flat2")
    return HermitianMetricField(chart, lambda z: [[1, 0], [0, 1]], name="flat2")


@pytest.fixture
def fs2():
    chart = ComplexChart(dim=2, radius=[0.9, 0.9], name="fs2")
    return HermitianMetricField(chart, fs_rule(2), name="fs2")


@pytest.fixture
def euclidean2():
    chart = RealChart(dim=2, radius=[2.0, 2.0])
    return RiemannianMetricField(chart, lambda x: [[1, 0], [0, 1]], name="euclidean2")


@pytest.fixture
def sphere2():
    chart = RealChart(dim=2, radius=[0.9, 0.9])
    return RiemannianMetricField(
        chart, conformal_real_rule(2, lambda r2: 4 / (1 + r2) ** 2), name="sphere")


@pytest.fixture
def hyperbolic2():
    chart = RealChart(dim=2, radius=[0.5, 0.5])
    return RiemannianMetricField(
        chart, conformal_real_rule(2, lambda r2: 4 / (1 - r2) ** 2), name="hyperbolic")


def identity_map(h, g):
    return ChartedMap(h.chart, g.chart, lambda z: tuple(z), holomorphic=True,
                      name="identity")
