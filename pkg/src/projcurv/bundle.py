r"""The projectivized tangent bundle in affine fiber charts.

A point of P(T_M) is held as a base point z together with homogeneous fiber
coordinates [W^1 : ... : W^m]; the affine chart is selected by the
largest-modulus rule, which keeps the affine coordinates bounded by one.

The tautological metric on the line bundle O(-1) over P(T_M) is

    H(z, [W]) = h_{g dbar}(z) W^g Wbar^d        (optionally H e^{-phi})

and its curvature -ddbar log H is computed on the combined (z, w) chart by
the differentiation engine.  Fiberwise integration against the normalized
Fubini-Study volume uses the exact simplex-times-torus parametrization of
the unit-sphere measure, pulled to general h by a linear change of fiber
frame; reduction is by compensated summation so the node order cannot move
results at the 1e-12 level.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import diffops
from .charts import ComplexChart, fiber_chart
from .errors import QuadratureError, ValidationError
from .fields import Form11, HermitianMetricField, ScalarField


@dataclass(frozen=True)
class BundlePoint:
    """A point (z, [W]) of P(T_M) in the affine chart of its largest coordinate."""

    z: np.ndarray
    W: np.ndarray          # homogeneous representative as given
    chart_index: int

    @staticmethod
    def make(z, W, chart_index: int | None = None) -> "BundlePoint":
        z = np.asarray(z, complex)
        W = np.asarray(W, complex)
        if np.max(np.abs(W)) == 0:
            raise ValidationError("fiber coordinates must be a nonzero vector")
        idx = int(np.argmax(np.abs(W))) if chart_index is None else int(chart_index)
        if W[idx] == 0:
            raise ValidationError(f"chart index {idx} has zero coordinate")
        return BundlePoint(z=z, W=W, chart_index=idx)

    @property
    def m(self) -> int:
        return self.W.size

    @property
    def W_affine(self) -> np.ndarray:
        """Representative scaled so the chart coordinate equals one."""
        return self.W / self.W[self.chart_index]

    @property
    def w(self) -> np.ndarray:
        """Affine fiber coordinates (the chart coordinate removed)."""
        return np.delete(self.W_affine, self.chart_index)

    def combined(self) -> np.ndarray:
        return np.concatenate([self.z, self.w])

    def rechart(self, chart_index: int) -> "BundlePoint":
        return BundlePoint.make(self.z, self.W, chart_index)


def reconstruct_W(w_scalars, chart_index: int, m: int) -> list:
    """Homogeneous W from affine fiber scalars, generically typed."""
    W = []
    k = 0
    for a in range(m):
        if a == chart_index:
            W.append(1.0)
        else:
            W.append(w_scalars[k])
            k += 1
    return W


@dataclass(frozen=True)
class TautologicalMetric:
    """h_{g dbar} W^g Wbar^d on O(-1) over P(T_M), with optional conformal weight.

    ``weight``, when present, is a callable phi(z_scalars, W_scalars) -> real,
    invariant under W -> lambda W; the metric becomes H e^{-phi}.

    The same machinery serves the covector bundle P(f*T*_N): feed it the
    pulled-back inverse target metric (whose matrix dimension differs from
    the base chart dimension) and W plays the role of the covector X.
    """

    h: HermitianMetricField
    weight: object = None

    @property
    def m(self) -> int:
        """Homogeneous fiber dimension (the pairing-matrix size)."""
        return self.h.dim

    @property
    def base_dim(self) -> int:
        return self.h.chart.dim

    def combined_chart(self, chart_index: int) -> ComplexChart:
        if self.m == 1:
            return self.h.chart
        return self.h.chart.product(fiber_chart(self.m - 1))

    def H_raw(self, P: BundlePoint) -> float:
        H = self.h.matrix(P.z)
        W = P.W_affine
        val = np.einsum("gd,g,d->", H, W, W.conj())
        return float(val.real)

    def H_value(self, P: BundlePoint) -> float:
        """Metric of the tautological bundle at P (weight applied)."""
        v = self.H_raw(P)
        if self.weight is not None:
            v *= math.exp(-float(np.real(self.weight(tuple(P.z), tuple(P.W_affine)))))
        return v

    def log_H_field(self, chart_index: int) -> ScalarField:
        """log of the (weighted) metric as a field on the combined (z, w) chart."""
        m = self.m
        base_d = self.base_dim
        h = self.h
        weight = self.weight

        def rule(zs, _m=m, _d=base_d, _idx=chart_index):
            z = zs[:_d]
            W = reconstruct_W(zs[_d:], _idx, _m)
            Hm = h.matrix_generic(z)
            acc = 0.0
            for g in range(_m):
                for d in range(_m):
                    acc = acc + Hm[g][d] * W[g] * _gconj(W[d])
            out = _glog(acc)
            if weight is not None:
                out = out - weight(z, tuple(W))
            return out

        return ScalarField(self.combined_chart(chart_index), rule,
                           backend=h.backend, name="log_tautological_metric")


def _gconj(x):
    return x.conjugate() if hasattr(x, "conjugate") else x


def _glog(x):
    from . import dual
    return dual.log(x)


def tautological_H(tm: TautologicalMetric, P: BundlePoint) -> float:
    """The pairing h_{g dbar} W^g Wbar^d for the affine representative at P."""
    v = tm.H_raw(P)
    if v <= 0:
        raise ValidationError(f"tautological metric not positive at {P}")
    return v


def tautological_curvature(tm: TautologicalMetric, P: BundlePoint,
                           backend: str = "fd") -> Form11:
    """Curvature -ddbar log(H e^{-phi}) on the combined (z, w) chart at P."""
    field = tm.log_H_field(P.chart_index)
    hess = diffops.wirtinger_hessian(field, P.combined(), backend=backend)
    return Form11(-hess.matrix)


def _check_base_normal(tm: TautologicalMetric, z, tol: float = 1e-6):
    H = tm.h.matrix(z)
    m = tm.m
    if float(np.max(np.abs(H - np.eye(m)))) > tol:
        raise ValidationError(
            "horizontal curvature value needs base-normal coordinates "
            "(metric must be the identity at the base point); "
            "use hermitian_normal_coordinates first")


def horizontal_curvature_value(tm: TautologicalMetric, P: BundlePoint) -> float:
    """(ddbar log H^{-1})(u, ubar) at u = (W, 0) in base-normal coordinates.

    Equals the four-fold curvature contraction R(W, Wbar, W, Wbar)/|W|^2 of
    the base metric, which is the holomorphic sectional curvature scaled by
    |W|_h^2.
    """
    _check_base_normal(tm, P.z)
    unweighted = TautologicalMetric(tm.h, weight=None)
    form = tautological_curvature(unweighted, P)
    W = P.W_affine
    u = np.zeros(P.m + max(P.m - 1, 0), complex)
    u[:P.m] = W
    return form.evaluate(u)


def rc_positive_line_bundle(tm: TautologicalMetric, points, tol: float = 1e-8):
    """Sampled RC-positivity of (O(-1), H e^{-phi}) over P(T_M).

    Per point: the largest eigenvalue of the curvature form (the point is an
    RC-positive witness iff it is positive), plus the base-block largest
    eigenvalue.  The summary value is the sampled min over points of the max
    eigenvalue, the grid analogue of a uniform positivity constant.
    """
    points = list(points)
    if not points:
        raise ValidationError("rc_positive_line_bundle needs a nonempty sample")
    m = tm.base_dim
    per_point = []
    for P in points:
        form = tautological_curvature(tm, P)
        base_block = form.matrix[:m, :m]
        max_eig = form.max_eigenvalue()
        base_max = float(np.linalg.eigvalsh(0.5 * (base_block + base_block.conj().T))[-1])
        per_point.append({
            "point": P,
            "max_eigenvalue": max_eig,
            "base_max_eigenvalue": base_max,
            "rc_positive": bool(max_eig > tol),
        })
    summary = {
        "min_max_eigenvalue": min(r["max_eigenvalue"] for r in per_point),
        "all_rc_positive": all(r["rc_positive"] for r in per_point),
    }
    return per_point, summary


# ---------------------------------------------------------------------------
# fiberwise integration

def _sphere_nodes(m: int, order: int):
    """Nodes and weights integrating the uniform measure on the unit sphere
    of C^m, reduced by the global phase.

    Radial part: the squared moduli t of a uniform sphere point are uniform
    on the simplex; stick-breaking coordinates with Gauss-Legendre nodes.
    Angular part: one full phase per coordinate after the first; trapezoid
    nodes are exact for the trigonometric polynomials that arise.
    """
    x, wgl = np.polynomial.legendre.leggauss(order)
    s_nodes = 0.5 * (x + 1.0)
    s_weights = 0.5 * wgl
    thetas = 2.0 * np.pi * np.arange(order) / order
    nodes = []
    for radial in itertools.product(*[range(order)] * (m - 1)):
        t = []
        rema = 1.0    # unallocated stick length; also the jacobian dt_j/ds_j
        wt = math.factorial(m - 1)
        for j, idx in enumerate(radial):
            s = s_nodes[idx]
            wt *= s_weights[idx] * rema
            t.append(rema * s)
            rema = rema * (1.0 - s)
        t.append(rema)
        nodes.append((np.array(t), wt))
    return nodes, thetas


def _fiber_nodes(m: int, order: int):
    """Flattened (V, weight) list over radial times angular grids."""
    radial_nodes, thetas = _sphere_nodes(m, order)
    out_V = []
    out_w = []
    for t, wt in radial_nodes:
        root_t = np.sqrt(t)
        for angles in itertools.product(*[range(order)] * (m - 1)):
            V = np.empty(m, complex)
            V[0] = root_t[0]
            for j, aidx in enumerate(angles):
                V[j + 1] = root_t[j + 1] * np.exp(1j * thetas[aidx])
            out_V.append(V)
            out_w.append(wt / order ** (m - 1))
    return np.asarray(out_V), np.asarray(out_w)


def _fiber_integral_once(h: HermitianMetricField, density, z, order: int) -> float:
    m = h.dim
    H = h.matrix(z)
    lam, U = np.linalg.eigh(H.conj())
    S_inv = U @ np.diag(lam ** -0.5) @ U.conj().T   # H(S^{-1} V) = |V|^2
    Vs, ws = _fiber_nodes(m, order)
    Ws = Vs @ S_inv.T
    terms = []
    for Wk, wk in zip(Ws, ws):
        P = BundlePoint.make(z, Wk)
        terms.append(wk * float(density(P)))
    return math.fsum(terms)


def fiber_integrate(h: HermitianMetricField, density, z, order: int = 8,
                    tol: float = 1e-6, return_orders: bool = False):
    """Integral of a fiber density over P(T_zM) against the normalized
    Fubini-Study volume of h(z); constants integrate to themselves.

    The density is a callable on BundlePoint, invariant under W -> lambda W.
    Convergence is certified by order doubling; disagreement beyond ``tol``
    raises QuadratureError.
    """
    if order < 2:
        raise ValidationError("quadrature order must be at least 2")
    m = h.dim
    if m == 1:
        val = float(density(BundlePoint.make(z, np.array([1.0 + 0j]))))
        return (val, val, val) if return_orders else val
    i1 = _fiber_integral_once(h, density, z, order)
    i2 = _fiber_integral_once(h, density, z, 2 * order)
    if abs(i2 - i1) > tol * max(1.0, abs(i2)):
        raise QuadratureError(
            f"fiber quadrature did not converge: order {order} gives {i1!r}, "
            f"order {2 * order} gives {i2!r}")
    return (i2, i1, i2) if return_orders else i2


def pushforward_energy_check(f, h: HermitianMetricField, g, z,
                             order: int = 8, tol: float = 1e-6):
    """Compare m times the fiber integral of the generalized density with the
    classical energy density at a base point.

    Returns (m_pi_Y, u, residual) with residual = |m pi_*(Y) - u|.
    """
    from . import maps as maps_mod

    m = h.dim

    def density(P: BundlePoint) -> float:
        return maps_mod.generalized_Y(f, h, g, P)

    pushed = m * fiber_integrate(h, density, z, order=order, tol=tol)
    u = maps_mod.classical_energy_density(f, h, g, z)
    return pushed, u, abs(pushed - u)
