r"""Charted maps and the energy densities attached to them.

A ChartedMap carries a source complex chart, a target chart (complex or
real) and a component rule; all of its derivatives come from the
differentiation engine, none are stored.  The five density variants:

    u           classical: g_{ij} h^{a bbar} f^i_a conj(f^j_b)
    Y           g_{ij} f^i_a conj(f^j_b) W^a Wbar^b / H          on P(T_M)
    Y1          h^{a bbar} f^i_a conj(f^j_b) X_i Xbar_j / H1     on P(f*T*_N)
    Y2          f^i_a conj(f^j_b) X_i Xbar_j W^a Wbar^b / (H1 H) on the nested bundle
    Y_phi       e^phi Y
    Y_k         degree-k symmetric-power variant with target metric g_k

with H = h_{g dbar} W^g Wbar^d and H1 = g^{k lbar} X_k Xbar_l.  Everything is
projectively invariant in the fiber coordinates, which the tests enforce.

Residual operators for the harmonic-map side:

    pluriharmonic:      f^i_{a bbar} + Gamma^i_{jk} f^j_{bbar} f^k_a
    Hermitian harmonic: its trace against h^{a bbar}
    constraint:         R_{ikjl} f^i_a f^j_{bbar} f^k_g
    hatC:               R_{iklj} E^{ij} E^{kl},  E^{ij} = h^{a bbar} f^i_a f^j_{bbar}
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diffops, dual as gm, sympow
from .bundle import BundlePoint, TautologicalMetric, reconstruct_W
from .charts import ComplexChart
from .curvature import levi_civita_christoffels, riemann_curvature
from .errors import ValidationError
from .fields import HermitianMetricField, RiemannianMetricField, ScalarField

HOLO_FLAG_TOL = 1e-8


@dataclass(frozen=True)
class ChartedMap:
    """Map between charts with engine-backed Wirtinger derivatives."""

    source: ComplexChart
    target: object                  # ComplexChart or RealChart
    rule: object
    holomorphic: bool = False
    backend: str = "dual"
    name: str = ""
    validate_on_init: bool = True

    def __post_init__(self):
        if self.validate_on_init and self.holomorphic:
            rng = np.random.default_rng(20250809)
            pts = [self.source.center] + [self.source.sample(rng) for _ in range(4)]
            for z in pts:
                _, anti = self.jacobians(z)
                defect = float(np.max(np.abs(anti)))
                if defect > HOLO_FLAG_TOL:
                    raise ValidationError(
                        f"map {self.name!r} flagged holomorphic but "
                        f"max |df/dzbar| = {defect:.3e} at {z}")

    @property
    def m(self) -> int:
        return self.source.dim

    @property
    def n(self) -> int:
        return self.target.dim

    @property
    def target_is_complex(self) -> bool:
        return isinstance(self.target, ComplexChart)

    def value(self, z) -> np.ndarray:
        out = np.asarray(self.rule(tuple(np.asarray(z, complex))), complex)
        return out if self.target_is_complex else out.real

    def jacobians(self, z):
        """(holo, anti): holo[i, a] = df^i/dz^a, anti[i, a] = df^i/dzbar^a."""
        self.source.require_margin(z, 2 * diffops.step_for(self.source))
        return diffops.jacobian_pair(self.rule, np.asarray(z, complex),
                                     self.m, self.n, backend=self.backend,
                                     step=diffops.step_for(self.source))

    def _component_field(self, i: int) -> ScalarField:
        return ScalarField(self.source, lambda zs, i=i: self.rule(zs)[i],
                           backend=self.backend, name=f"{self.name}[{i}]")

    def second_mixed(self, z) -> np.ndarray:
        """f^i_{a bbar} = d^2 f^i / dz^a dzbar^b, shape (n, m, m)."""
        out = np.empty((self.n, self.m, self.m), complex)
        for i in range(self.n):
            _, _, _, mixed, _ = diffops.complex_jet2(
                self._component_field(i), z, backend=self.backend)
            out[i] = mixed
        return out

    def second_holo(self, z) -> np.ndarray:
        """f^i_{ab} = d^2 f^i / dz^a dz^b, shape (n, m, m)."""
        out = np.empty((self.n, self.m, self.m), complex)
        for i in range(self.n):
            _, _, _, _, holo2 = diffops.complex_jet2(
                self._component_field(i), z, backend=self.backend)
            out[i] = holo2
        return out


def _target_matrix(g, fz):
    """Target metric matrix at a target point, complex or real."""
    return g.matrix(np.asarray(fz))


# ---------------------------------------------------------------------------
# densities, numeric entry points

def classical_energy_density(f: ChartedMap, h: HermitianMetricField, g, z) -> float:
    """u = g_{ij} h^{a bbar} f^i_a conj(f^j_b); zero exactly when df vanishes."""
    holo, _ = f.jacobians(z)
    G = _target_matrix(g, f.value(z))
    hup = h.inverse_up(z)
    u = np.einsum("ij,ab,ia,jb->", G, hup, holo, holo.conj())
    return float(np.real(u))


def generalized_Y(f: ChartedMap, h: HermitianMetricField, g, P: BundlePoint) -> float:
    """Fiberwise Rayleigh quotient g(df W, df W) / H at a bundle point."""
    holo, _ = f.jacobians(P.z)
    W = P.W_affine
    F = holo @ W
    G = _target_matrix(g, f.value(P.z))
    num = np.einsum("ij,i,j->", G, F, F.conj())
    H = np.einsum("gd,g,d->", h.matrix(P.z), W, W.conj())
    return float(np.real(num) / np.real(H))


def generalized_Y1(f: ChartedMap, h: HermitianMetricField,
                   g: HermitianMetricField, Q: BundlePoint) -> float:
    """Covector-bundle density h^{a bbar} f^i_a conj(f^j_b) X_i Xbar_j / H1."""
    if not f.target_is_complex:
        raise ValidationError("Y1 requires a complex target")
    holo, _ = f.jacobians(Q.z)
    X = Q.W_affine
    hup = h.inverse_up(Q.z)
    G = _target_matrix(g, f.value(Q.z))
    gup = np.linalg.inv(G).conj()       # g^{k lbar}
    num = np.einsum("ab,ia,jb,i,j->", hup, holo, holo.conj(), X, X.conj())
    H1 = np.einsum("kl,k,l->", gup, X, X.conj())
    return float(np.real(num) / np.real(H1))


@dataclass(frozen=True)
class NestedBundlePoint:
    """Point of the bundle over P(T_M) carrying both [W] and [X] fibers."""

    P: BundlePoint
    X: np.ndarray
    x_chart_index: int

    @staticmethod
    def make(z, W, X) -> "NestedBundlePoint":
        P = BundlePoint.make(z, W)
        X = np.asarray(X, complex)
        if np.max(np.abs(X)) == 0:
            raise ValidationError("nested fiber coordinates must be nonzero")
        return NestedBundlePoint(P=P, X=X, x_chart_index=int(np.argmax(np.abs(X))))

    @property
    def X_affine(self) -> np.ndarray:
        return self.X / self.X[self.x_chart_index]

    @property
    def x(self) -> np.ndarray:
        return np.delete(self.X_affine, self.x_chart_index)

    def combined(self) -> np.ndarray:
        return np.concatenate([self.P.combined(), self.x])


def generalized_Y2(f: ChartedMap, h: HermitianMetricField,
                   g: HermitianMetricField, R: NestedBundlePoint) -> float:
    """Doubled density f^i_a conj(f^j_b) X_i Xbar_j W^a Wbar^b / (H1 H)."""
    if not f.target_is_complex:
        raise ValidationError("Y2 requires a complex target")
    holo, _ = f.jacobians(R.P.z)
    W = R.P.W_affine
    X = R.X_affine
    F = holo @ W
    num = np.einsum("i,j,i,j->", F, F.conj(), X, X.conj())
    H = np.einsum("gd,g,d->", h.matrix(R.P.z), W, W.conj())
    G = _target_matrix(g, f.value(R.P.z))
    gup = np.linalg.inv(G).conj()
    H1 = np.einsum("kl,k,l->", gup, X, X.conj())
    return float(np.real(num) / (np.real(H) * np.real(H1)))


def generalized_Y_k(f: ChartedMap, h: HermitianMetricField, g, P: BundlePoint,
                    k: int, g_k=None) -> float:
    """Degree-k symmetric-power density g_k(Sym^k(df) W^k, .) / H^k.

    ``g_k`` is an optional callable mapping a target point to the metric
    matrix on degree-k symmetric tensors in the monomial (multiset) basis;
    by default the metric induced by g is used, for which the density equals
    Y^k identically.
    """
    if k < 1:
        raise ValidationError("symmetric power degree k must be >= 1")
    if not f.target_is_complex:
        raise ValidationError("Y_k requires a complex target")
    holo, _ = f.jacobians(P.z)
    W = P.W_affine
    JW = holo @ W
    vec = sympow.sym_power_vector(JW, f.n, k)
    fz = f.value(P.z)
    Gk = (sympow.induced_metric(_target_matrix(g, fz), k)
          if g_k is None else np.asarray(g_k(fz), complex))
    num = np.einsum("IJ,I,J->", Gk, vec, vec.conj())
    H = np.einsum("gd,g,d->", h.matrix(P.z), W, W.conj())
    return float(np.real(num) / np.real(H) ** k)


def conformal_Y(f: ChartedMap, h: HermitianMetricField, g, P: BundlePoint,
                phi) -> float:
    """Conformally weighted density e^{phi} Y; exact multiple by construction."""
    w = float(np.real(phi(tuple(P.z), tuple(P.W_affine))))
    return float(np.exp(w)) * generalized_Y(f, h, g, P)


DENSITY_TAGS = ("classical_u", "Y", "Y1", "Y2", "Y_phi", "Y_k")


@dataclass(frozen=True)
class EnergyDensityKind:
    """Selector for one of the density variants, with its parameters.

    ``phi`` is the conformal weight for the Y_phi variant; ``k`` and ``g_k``
    parametrize the symmetric-power variant (g_k defaults to the metric
    induced by the target metric).
    """

    tag: str
    phi: object = None
    k: int = 1
    g_k: object = None

    def __post_init__(self):
        if self.tag not in DENSITY_TAGS:
            raise ValidationError(
                f"unknown density tag {self.tag!r}; known: {', '.join(DENSITY_TAGS)}")
        if self.k < 1:
            raise ValidationError("symmetric power degree k must be >= 1")
        if self.tag == "Y_phi" and self.phi is None:
            raise ValidationError("Y_phi needs a weight phi")


def density_value(kind: EnergyDensityKind, f: ChartedMap,
                  h: HermitianMetricField, g, point) -> float:
    """Evaluate the selected density variant at the matching point kind.

    ``point`` is a base point for classical_u, a BundlePoint for Y / Y_phi /
    Y_k, a covector BundlePoint for Y1 and a NestedBundlePoint for Y2.
    """
    if kind.tag == "classical_u":
        return classical_energy_density(f, h, g, point)
    if kind.tag == "Y":
        return generalized_Y(f, h, g, point)
    if kind.tag == "Y1":
        return generalized_Y1(f, h, g, point)
    if kind.tag == "Y2":
        return generalized_Y2(f, h, g, point)
    if kind.tag == "Y_phi":
        return conformal_Y(f, h, g, point, kind.phi)
    return generalized_Y_k(f, h, g, point, kind.k, g_k=kind.g_k)


def covector_metric_field(f: ChartedMap, g: HermitianMetricField) -> HermitianMetricField:
    """The pairing matrix g^{k lbar}(f(z)) as a metric field on the source chart.

    Feeding this to TautologicalMetric realizes the covector-bundle metric H1
    with the same machinery as H; the algebra is identical.
    """
    if not f.target_is_complex:
        raise ValidationError("covector metric needs a complex target")
    n = f.n

    def rule(zs):
        G = g.matrix_generic(f.rule(zs))
        return _generic_inverse_up(G, n)

    return HermitianMetricField(f.source, rule, backend=f.backend,
                                name=f"inverse-{g.name or 'target'}-pullback",
                                validate_on_init=False)


# ---------------------------------------------------------------------------
# density fields on combined charts (for black-box Hessians)

def Y_field(f: ChartedMap, h: HermitianMetricField, g,
            chart_index: int) -> ScalarField:
    """The generalized density as a scalar field on the (z, w) chart."""
    m, n = f.m, f.n
    tm = TautologicalMetric(h)

    def rule(zs):
        z = zs[:m]
        W = reconstruct_W(zs[m:], chart_index, m)
        holo, _ = diffops.jacobian_pair_generic(f.rule, z, m, n)
        fz = f.rule(z)
        G = g.matrix_generic(fz)
        F = [sum(holo[i][a] * W[a] for a in range(m)) for i in range(n)]
        num = 0.0
        for i in range(n):
            for j in range(n):
                num = num + G[i][j] * F[i] * gm.conj(F[j])
        Hm = h.matrix_generic(z)
        H = 0.0
        for a in range(m):
            for b in range(m):
                H = H + Hm[a][b] * W[a] * gm.conj(W[b])
        return gm.real(num) / gm.real(H)

    return ScalarField(tm.combined_chart(chart_index), rule,
                       backend=f.backend, name="generalized_density")


def Y_phi_field(f: ChartedMap, h: HermitianMetricField, g, chart_index: int,
                phi) -> ScalarField:
    base = Y_field(f, h, g, chart_index)
    m = f.m

    def rule(zs):
        W = reconstruct_W(zs[m:], chart_index, m)
        return gm.exp(gm.real(phi(zs[:m], tuple(W)))) * base.rule(zs)

    return ScalarField(base.chart, rule, backend=f.backend,
                       name="weighted_generalized_density")


def Y1_field(f: ChartedMap, h: HermitianMetricField, g: HermitianMetricField,
             x_chart_index: int) -> ScalarField:
    """Y1 as a scalar field on the (z, x) chart of P(f*T*_N)."""
    m, n = f.m, f.n

    def rule(zs):
        z = zs[:m]
        X = reconstruct_W(zs[m:], x_chart_index, n)
        holo, _ = diffops.jacobian_pair_generic(f.rule, z, m, n)
        fz = f.rule(z)
        G = g.matrix_generic(fz)
        gup = _generic_inverse_up(G, n)
        Hm = h.matrix_generic(z)
        hup = _generic_inverse_up(Hm, m)
        num = 0.0
        for a in range(m):
            for b in range(m):
                for i in range(n):
                    for j in range(n):
                        num = num + hup[a][b] * holo[i][a] * gm.conj(holo[j][b]) \
                            * X[i] * gm.conj(X[j])
        H1 = 0.0
        for k in range(n):
            for l in range(n):
                H1 = H1 + gup[k][l] * X[k] * gm.conj(X[l])
        return gm.real(num) / gm.real(H1)

    if n == 1:
        chart = f.source
    else:
        from .charts import fiber_chart
        chart = f.source.product(fiber_chart(n - 1))
    return ScalarField(chart, rule, backend=f.backend, name="covector_density")


def Y2_field(f: ChartedMap, h: HermitianMetricField, g: HermitianMetricField,
             w_chart_index: int, x_chart_index: int) -> ScalarField:
    """Y2 as a scalar field on the (z, w, x) chart of the nested bundle."""
    m, n = f.m, f.n

    def rule(zs):
        z = zs[:m]
        W = reconstruct_W(zs[m:m + m - 1], w_chart_index, m)
        X = reconstruct_W(zs[m + m - 1:], x_chart_index, n)
        holo, _ = diffops.jacobian_pair_generic(f.rule, z, m, n)
        F = [sum(holo[i][a] * W[a] for a in range(m)) for i in range(n)]
        num = 0.0
        for i in range(n):
            for j in range(n):
                num = num + F[i] * gm.conj(F[j]) * X[i] * gm.conj(X[j])
        Hm = h.matrix_generic(z)
        H = 0.0
        for a in range(m):
            for b in range(m):
                H = H + Hm[a][b] * W[a] * gm.conj(W[b])
        G = g.matrix_generic(f.rule(z))
        gup = _generic_inverse_up(G, n)
        H1 = 0.0
        for k in range(n):
            for l in range(n):
                H1 = H1 + gup[k][l] * X[k] * gm.conj(X[l])
        return gm.real(num) / (gm.real(H) * gm.real(H1))

    chart = f.source
    from .charts import fiber_chart
    if m > 1:
        chart = chart.product(fiber_chart(m - 1))
    if n > 1:
        chart = chart.product(fiber_chart(n - 1))
    return ScalarField(chart, rule, backend=f.backend, name="nested_density")


def u_field(f: ChartedMap, h: HermitianMetricField, g) -> ScalarField:
    """Classical energy density as a scalar field on the source chart."""
    m, n = f.m, f.n

    def rule(zs):
        holo, _ = diffops.jacobian_pair_generic(f.rule, zs, m, n)
        G = g.matrix_generic(f.rule(zs))
        Hm = h.matrix_generic(zs)
        hup = _generic_inverse_up(Hm, m)
        u = 0.0
        for i in range(n):
            for j in range(n):
                for a in range(m):
                    for b in range(m):
                        u = u + G[i][j] * hup[a][b] * holo[i][a] * gm.conj(holo[j][b])
        return gm.real(u)

    return ScalarField(f.source, rule, backend=f.backend, name="classical_density")


def _generic_inverse_up(M, n: int):
    """Raised-index inverse metric entries M^{a bbar} = conj(inv(M))[a][b].

    Adjugate formulas up to n = 3 keep the arithmetic generic so dual
    backends can flow through; larger sizes fall back to numpy (numeric only).
    """
    if n == 1:
        return [[gm.conj(1.0 / M[0][0])]]
    if n == 2:
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        inv = [[M[1][1] / det, -M[0][1] / det],
               [-M[1][0] / det, M[0][0] / det]]
    elif n == 3:
        det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
               - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
               + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
        inv = [[(M[1][1] * M[2][2] - M[1][2] * M[2][1]) / det,
                -(M[0][1] * M[2][2] - M[0][2] * M[2][1]) / det,
                (M[0][1] * M[1][2] - M[0][2] * M[1][1]) / det],
               [-(M[1][0] * M[2][2] - M[1][2] * M[2][0]) / det,
                (M[0][0] * M[2][2] - M[0][2] * M[2][0]) / det,
                -(M[0][0] * M[1][2] - M[0][2] * M[1][0]) / det],
               [(M[1][0] * M[2][1] - M[1][1] * M[2][0]) / det,
                -(M[0][0] * M[2][1] - M[0][1] * M[2][0]) / det,
                (M[0][0] * M[1][1] - M[0][1] * M[1][0]) / det]]
    else:
        inv = np.linalg.inv(np.asarray(M, complex)).tolist()
    return [[gm.conj(inv[a][b]) for b in range(n)] for a in range(n)]


# ---------------------------------------------------------------------------
# harmonic-map residuals

def pluriharmonic_residual(f: ChartedMap, g, z) -> np.ndarray:
    """Residual array f^i_{a bbar} + Gamma^i_{jk} f^j_{bbar} f^k_a, shape (n, m, m).

    For Riemannian targets Gamma is the Levi-Civita connection of g at f(z);
    for complex targets the Chern connection version
    f^i_{a bbar} + Gamma^i_{jk} f^j_a f^k_{bbar} is used.
    """
    holo, anti = f.jacobians(z)
    mixed = f.second_mixed(z)
    fz = f.value(z)
    if isinstance(g, RiemannianMetricField):
        Gamma = levi_civita_christoffels(g, fz)
        corr = np.einsum("ijk,jb,ka->iab", Gamma, anti, holo)
    else:
        Gamma = _chern_christoffels(g, fz)
        corr = np.einsum("ijk,ja,kb->iab", Gamma, holo, anti)
    return mixed + corr


def _chern_christoffels(g: HermitianMetricField, z) -> np.ndarray:
    """Gamma^i_{jk} = g^{i lbar} d g_{k lbar} / dz^j of the Chern connection."""
    n = g.dim
    dz = np.empty((n, n, n), complex)
    for a in range(n):
        for b in range(n):
            entry = ScalarField(g.chart, lambda zs, a=a, b=b: g.matrix_generic(zs)[a][b],
                                backend=g.backend)
            dz[:, a, b] = diffops.wirtinger_gradient(entry, z, backend="dual"
                                                     if g.backend != "fd" else "fd")
    gup = g.inverse_up(z)   # g^{i lbar} = conj(inv)[i, l]
    return np.einsum("il,jkl->ijk", gup, dz)


def hermitian_harmonic_residual(f: ChartedMap, h: HermitianMetricField, g, z) -> np.ndarray:
    """Trace of the pluriharmonic residual against h^{a bbar}; an n-vector."""
    res = pluriharmonic_residual(f, g, z)
    hup = h.inverse_up(z)
    return np.einsum("ab,iab->i", hup, res)


def is_pluriharmonic(f: ChartedMap, g, z, tol: float = 1e-6) -> bool:
    return float(np.max(np.abs(pluriharmonic_residual(f, g, z)))) <= tol


def constraint_D_check(f: ChartedMap, g: RiemannianMetricField, z,
                       pluri_tol: float = 1e-6) -> dict:
    """Max-abs residual of R_{ikjl} f^i_a f^j_{bbar} f^k_g over all indices.

    Reported as not applicable when f is not pluri-harmonic at z; a vacuous
    check is never conflated with a violated one.
    """
    pluri = float(np.max(np.abs(pluriharmonic_residual(f, g, z))))
    if pluri > pluri_tol:
        return {"applicable": False, "pluriharmonic_residual": pluri,
                "max_residual": None}
    holo, anti = f.jacobians(z)
    R = riemann_curvature(g, f.value(z)).array
    eqn = np.einsum("ikjl,ia,jb,kg->abgl", R, holo, anti, holo)
    return {"applicable": True, "pluriharmonic_residual": pluri,
            "max_residual": float(np.max(np.abs(eqn)))}


def hatC_value(f: ChartedMap, h: HermitianMetricField,
               g: RiemannianMetricField, z) -> float:
    """The doubled curvature contraction R_{iklj} E^{ij} E^{kl} with
    E^{ij} = h^{a bbar} f^i_a f^j_{bbar}; vanishes for pluri-harmonic maps and
    is nonpositive when the target has nonpositive complex sectional curvature.
    """
    holo, anti = f.jacobians(z)
    hup = h.inverse_up(z)
    E = np.einsum("ab,ia,jb->ij", hup, holo, anti)
    R = riemann_curvature(g, f.value(z)).array
    val = np.einsum("iklj,ij,kl->", R, E, E)
    if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
        raise ValidationError(f"hatC not real: imaginary part {val.imag:.3e}")
    return float(val.real)
