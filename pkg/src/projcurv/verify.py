r"""Assembly and certification of the Hessian estimates and exact identities.

Every suite builds both sides of one display as Form11 matrices (or scalars
for the trace variants) and certifies the verdict spectrally: a form
inequality LHS >= RHS passes at a point when the smallest eigenvalue of
LHS - RHS clears -tol * scale with scale = max(1, ||LHS||).

Suite catalog (applicability in parentheses):

    S1        ddbar Y  >=  (ddbar log H^{-1}) Y - [target curvature]/H   (holomorphic)
    S_minus1  ddbar Y  >=  (ddbar log H^{-1}) Y                          (holomorphic function, n = 1)
    S01       Chern-Lu form inequality for ddbar u on the base           (holomorphic)
    S02       trace of S01 against h^{a bbar}                            (holomorphic)
    S2        covector-bundle estimate for Y1 with source curvature      (holomorphic)
    S3        nested-bundle estimate for Y2                              (holomorphic)
    S03       conformal variant of S1 for Y_phi and H_phi                (holomorphic)
    S11       pluri-harmonic analogue of S1 with Riemann curvature       (pluri-harmonic)
    hessian   pluri-harmonic analogue of S01                             (pluri-harmonic)
    hessian2  trace of hessian                                           (pluri-harmonic)
    exact_holo   the full identity behind S1, both routes compared       (holomorphic)
    exact_pluri  the full identity behind S11                            (pluri-harmonic)
    W_psd     semi-positivity of the assembled (1,1)-form W              (either)
    S5_probe  maximum-principle sign pattern at the grid argmax of Y     (holomorphic)

The difference of the two sides of S1/S11 is the Gram-type form W divided by
H, which is why the identities decompose and why the inequality residuals are
singular matrices: their null directions are genuine, not numerical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import diffops, maps as maps_mod
from .bundle import (BundlePoint, TautologicalMetric, horizontal_curvature_value,
                     tautological_H)
from .curvature import chern_curvature, hermitian_normal_coordinates, riemann_curvature
from .errors import NotApplicable, ValidationError
from .fields import Form11, HermitianMetricField, RiemannianMetricField, ScalarField
from .maps import ChartedMap, NestedBundlePoint

SUITE_TAGS = ("S1", "S_minus1", "S01", "S02", "S2", "S3", "S03", "S11",
              "hessian", "hessian2", "exact_holo", "exact_pluri",
              "W_psd", "S5_probe")

FORM_SUITES = ("S1", "S_minus1", "S01", "S2", "S3", "S03", "S11", "hessian")
TRACE_SUITES = ("S02", "hessian2")
EXACT_VARIANTS = ("exact_holo", "exact_pluri")

DEFAULT_TOL_RELATIVE = 1e-6
DEFAULT_TOL_EXACT = 1e-4
W_PSD_TOL = 1e-8


@dataclass(frozen=True)
class PairContext:
    """A resolved (source metric, target metric, map) triple plus metadata."""

    f: ChartedMap
    h: HermitianMetricField
    g: object                    # HermitianMetricField or RiemannianMetricField
    name: str = "pair"
    compact: bool = False
    phi: object = None           # optional conformal weight phi(z, W)

    @property
    def target_is_complex(self) -> bool:
        return isinstance(self.g, HermitianMetricField)


def _pluriharmonic_on_samples(pair: PairContext, rng, tol=1e-6, count=3) -> bool:
    for _ in range(count):
        z = pair.f.source.sample(rng, 0.5)
        if not maps_mod.is_pluriharmonic(pair.f, pair.g, z, tol=tol):
            return False
    return True


def suite_applicable(suite: str, pair: PairContext, rng=None) -> tuple[bool, str]:
    """Routing: which suites make sense for which map/metric types."""
    f = pair.f
    if suite in ("S1", "S01", "S02", "S2", "S3", "S03", "exact_holo", "S5_probe"):
        if not f.holomorphic:
            return False, "requires a holomorphic map"
        if not pair.target_is_complex:
            return False, "requires a complex target"
        return True, ""
    if suite == "S_minus1":
        if not f.holomorphic or not f.target_is_complex or f.n != 1:
            return False, "requires a holomorphic function to C"
        return True, ""
    if suite in ("S11", "hessian", "hessian2", "exact_pluri"):
        if pair.target_is_complex:
            return False, "requires a Riemannian target"
        rng = rng or np.random.default_rng(0)
        if not _pluriharmonic_on_samples(pair, rng):
            return False, "map is not pluri-harmonic"
        return True, ""
    if suite == "W_psd":
        if f.holomorphic and pair.target_is_complex:
            return True, ""
        if not pair.target_is_complex:
            rng = rng or np.random.default_rng(0)
            if _pluriharmonic_on_samples(pair, rng):
                return True, ""
            return False, "map is neither holomorphic nor pluri-harmonic"
        return False, "requires holomorphic or pluri-harmonic input"
    raise ValidationError(f"unknown suite {suite!r}")


# ---------------------------------------------------------------------------
# shared assembly pieces

def _combined_dim(m: int) -> int:
    return m + max(m - 1, 0)

def _grad_backend(field_backend: str) -> str:
    return "fd" if field_backend == "fd" else "dual"


def _log_H_hessian(tm: TautologicalMetric, P: BundlePoint) -> Form11:
    field = tm.log_H_field(P.chart_index)
    return diffops.wirtinger_hessian(field, P.combined(), backend="fd")


def _embed_base_block(C: np.ndarray, m: int, dim: int) -> Form11:
    return Form11.embed(C, list(range(m)), dim)


def _chern_curvature_term(f: ChartedMap, g: HermitianMetricField, P: BundlePoint):
    """C_{a bbar} = R_{k lbar i jbar} f^k_a conj(f^l_b) F^i conj(F^j)."""
    holo, _ = f.jacobians(P.z)
    F = holo @ P.W_affine
    R = chern_curvature(g, f.value(P.z)).array
    C = np.einsum("klij,ka,lb,i,j->ab", R, holo, holo.conj(), F, F.conj())
    _require_hermitian(C, "target curvature term")
    return C


def _riemann_curvature_term(f: ChartedMap, g: RiemannianMetricField, P: BundlePoint):
    """C_{a bbar} = R_{ilkj} f^i_a f^j_{bbar} F^k conj(F^l) for real targets."""
    holo, anti = f.jacobians(P.z)
    F = holo @ P.W_affine
    R = riemann_curvature(g, f.value(P.z)).array
    C = np.einsum("ilkj,ia,jb,k,l->ab", R, holo, anti, F, F.conj())
    _require_hermitian(C, "Riemannian curvature term")
    return C


def riemann_curvature_term_variants(f: ChartedMap, g: RiemannianMetricField,
                                    P: BundlePoint) -> dict:
    """Both Riemannian curvature contractions that the pluri-harmonic identity
    can carry, reported separately.

    When the constraint contraction vanishes (pluri-harmonic input) the
    reduced and unreduced combinations coincide; otherwise the choice is
    ambiguous, so both matrices and their discrepancy are returned and the
    caller can flag it.
    """
    holo, anti = f.jacobians(P.z)
    F = holo @ P.W_affine
    R = riemann_curvature(g, f.value(P.z)).array
    reduced = np.einsum("ilkj,ia,jb,k,l->ab", R, holo, anti, F, F.conj())
    extra = np.einsum("iklj,ia,jb,k,l->ab", R, holo, anti, F, F.conj())
    combined = reduced + extra
    return {
        "reduced": reduced,
        "combined": combined,
        "discrepancy": float(np.max(np.abs(extra))),
    }


def _require_hermitian(C: np.ndarray, what: str, tol: float = 1e-8):
    scale = max(1.0, float(np.max(np.abs(C))))
    defect = float(np.max(np.abs(C - C.conj().T)))
    if defect > tol * scale:
        raise ValidationError(f"{what} is not Hermitian: defect {defect:.3e}")


def _flat_scalar_target():
    """The flat metric on a 1-dimensional complex target."""
    from .charts import ComplexChart
    chart = ComplexChart(dim=1, radius=[1e6], name="C")
    return HermitianMetricField(chart, lambda z: [[1.0 + 0j]], name="flat_C")


# ---------------------------------------------------------------------------
# the W form

def assemble_W_form(f: ChartedMap, h: HermitianMetricField, g, P: BundlePoint,
                    variant: str = "auto", weight=None) -> Form11:
    """The semi-positive (1,1)-form W on P(T_M),

        W = g_{ij} (dF^i + F^i dlog H^{-1} + T^i) wedge conj( ... )

    with F^i = f^i_a W^a and the connection correction T^i built from the
    Chern connection of a complex target (holomorphic variant) or the
    Levi-Civita connection of a Riemannian target (pluri-harmonic variant).
    Positive semidefinite by construction; certified spectrally by callers.
    """
    if variant == "auto":
        variant = "holomorphic" if isinstance(g, HermitianMetricField) else "pluriharmonic"
    if variant == "holomorphic":
        if not (f.holomorphic and isinstance(g, HermitianMetricField)):
            raise ValidationError("holomorphic W-form variant needs a holomorphic "
                                  "map into a complex target")
    elif variant == "pluriharmonic":
        if not isinstance(g, RiemannianMetricField):
            raise ValidationError("pluri-harmonic W-form variant needs a "
                                  "Riemannian target")
    else:
        raise ValidationError(f"unknown W-form variant {variant!r}")

    m, n = f.m, f.n
    dim = _combined_dim(m)
    holo, _ = f.jacobians(P.z)
    sec = f.second_holo(P.z)
    W_aff = P.W_affine
    F = holo @ W_aff
    fz = f.value(P.z)
    G = g.matrix(fz)

    if variant == "holomorphic":
        Gamma = maps_mod._chern_christoffels(g, fz)
    else:
        from .curvature import levi_civita_christoffels
        Gamma = levi_civita_christoffels(g, fz)
    T_base = np.einsum("ipk,k,pa->ia", Gamma, F, holo)

    tm = TautologicalMetric(h, weight=weight)
    logH = tm.log_H_field(P.chart_index)
    dlogH = diffops.wirtinger_gradient(logH, P.combined(),
                                       backend=_grad_backend(h.backend))

    fiber_idx = [a for a in range(m) if a != P.chart_index]
    V = np.zeros((n, dim), complex)
    for i in range(n):
        V[i, :m] = sec[i] @ W_aff + T_base[i]
        for s, a in enumerate(fiber_idx):
            V[i, m + s] = holo[i, a]
        V[i, :] += F[i] * (-dlogH)
    Wmat = np.einsum("ij,iA,jB->AB", G, V, V.conj())
    return Form11(Wmat)


# ---------------------------------------------------------------------------
# exact identities

def verify_exact_identity(variant: str, f: ChartedMap, h: HermitianMetricField,
                          g, P: BundlePoint, weight=None) -> dict:
    """Two-route comparison of the full Hessian identity for the density.

    LHS: black-box mixed Hessian of Y (or Y_phi) on the (z, w) chart.
    RHS: (ddbar log H^{-1}) Y + W/H - [curvature term]/H, assembled from the
    tautological curvature, the W form and a curvature contraction.
    Returns the entrywise residual relative to max(1, ||LHS||).
    """
    if variant not in EXACT_VARIANTS:
        raise ValidationError(f"unknown exact-identity variant {variant!r}")
    if variant == "exact_holo" and not f.holomorphic:
        raise NotApplicable("exact_holo needs a holomorphic map")
    if variant == "exact_pluri" and isinstance(g, HermitianMetricField):
        raise NotApplicable("exact_pluri needs a Riemannian target")

    m = f.m
    dim = _combined_dim(m)
    tm = TautologicalMetric(h, weight=weight)

    if weight is None:
        y_field = maps_mod.Y_field(f, h, g, P.chart_index)
    else:
        y_field = maps_mod.Y_phi_field(f, h, g, P.chart_index, weight)
    lhs = diffops.wirtinger_hessian(y_field, P.combined(), backend="fd")

    H_val = tm.H_value(P)
    y_val = float(np.real(y_field(P.combined())))
    log_hess = _log_H_hessian(tm, P)
    taut = Form11(-log_hess.matrix)

    Wform = assemble_W_form(f, h, g, P, weight=weight,
                            variant="holomorphic" if variant == "exact_holo"
                            else "pluriharmonic")
    if variant == "exact_holo":
        C = _chern_curvature_term(f, g, P)
    else:
        C = _riemann_curvature_term(f, g, P)
    curv = _embed_base_block(C, m, dim)

    rhs = taut.scaled(y_val) + Wform.scaled(1.0 / H_val) + curv.scaled(-1.0 / H_val)
    scale = max(1.0, lhs.max_abs())
    resid = float(np.max(np.abs(lhs.matrix - rhs.matrix))) / scale
    return {
        "residual": resid,
        "scale": scale,
        "lhs": lhs,
        "rhs": rhs,
        "w_min_eigenvalue": Wform.min_eigenvalue(),
    }


# ---------------------------------------------------------------------------
# form inequalities

def _s01_rhs_matrix(f: ChartedMap, h: HermitianMetricField, g, z,
                    target_kind: str) -> np.ndarray:
    """RHS of the base-chart Hessian estimates (S01 and its pluri analogue)."""
    holo, anti = f.jacobians(z)
    fz = f.value(z)
    G = g.matrix(fz)
    hup = h.inverse_up(z)
    Rh = chern_curvature(h, z).array
    if target_kind == "holomorphic":
        P_mat = np.einsum("ij,im,jn->mn", G, holo, holo.conj())
        E = np.einsum("mn,km,ln->kl", hup, holo, holo.conj())
        Rg = chern_curvature(g, fz).array
        second = np.einsum("ijkl,ia,jb,kl->ab", Rg, holo, holo.conj(), E)
    else:
        # P_mat[m, n] = g_{ij} f^i_m f^j_{nbar}
        P_mat = np.einsum("ij,im,jn->mn", G, holo, anti)
        E = np.einsum("gd,kg,ld->kl", hup, holo, anti)
        Rg = riemann_curvature(g, fz).array
        second = np.einsum("ilkj,ia,jb,kl->ab", Rg, holo, anti, E)
    first = np.einsum("abgd,md,gn,mn->ab", Rh, hup, hup, P_mat)
    _require_hermitian(first, "source curvature term")
    _require_hermitian(second, "target curvature term")
    return first - second


def verify_form_inequality(suite: str, f: ChartedMap, h: HermitianMetricField,
                           g, point, phi=None) -> dict:
    """Min eigenvalue of LHS - RHS for one of the form-inequality suites.

    ``point`` is a BundlePoint for the projective-bundle suites (S1 family), a
    NestedBundlePoint for S3 and a base point for S01/hessian.
    """
    if suite not in FORM_SUITES:
        raise ValidationError(f"{suite!r} is not a form-inequality suite")

    if suite in ("S1", "S_minus1", "S03", "S11"):
        P: BundlePoint = point
        m = f.m
        dim = _combined_dim(m)
        weight = phi if suite == "S03" else None
        g_eff = _flat_scalar_target() if suite == "S_minus1" else g
        tm = TautologicalMetric(h, weight=weight)
        if weight is None:
            y_field = maps_mod.Y_field(f, h, g_eff, P.chart_index)
        else:
            y_field = maps_mod.Y_phi_field(f, h, g_eff, P.chart_index, weight)
        lhs = diffops.wirtinger_hessian(y_field, P.combined(), backend="fd")
        y_val = float(np.real(y_field(P.combined())))
        taut = Form11(-_log_H_hessian(tm, P).matrix)
        rhs = taut.scaled(y_val)
        if suite in ("S1", "S03"):
            C = _chern_curvature_term(f, g_eff, P)
            rhs = rhs + _embed_base_block(C, m, dim).scaled(-1.0 / tm.H_value(P))
        elif suite == "S11":
            C = _riemann_curvature_term(f, g_eff, P)
            rhs = rhs + _embed_base_block(C, m, dim).scaled(-1.0 / tm.H_value(P))
        residual = lhs - rhs

    elif suite in ("S01", "hessian"):
        z = np.asarray(point.z if isinstance(point, BundlePoint) else point, complex)
        u_fld = maps_mod.u_field(f, h, g)
        lhs = diffops.wirtinger_hessian(u_fld, z, backend="fd")
        kind = "holomorphic" if suite == "S01" else "pluriharmonic"
        rhs = Form11(_s01_rhs_matrix(f, h, g, z, kind))
        residual = lhs - rhs

    elif suite == "S2":
        Q: BundlePoint = point     # fiber coordinates are the covector X
        n = f.n
        x_idx = Q.chart_index
        y1_field = maps_mod.Y1_field(f, h, g, x_idx)
        coords = np.concatenate([Q.z, Q.w]) if n > 1 else Q.z
        lhs = diffops.wirtinger_hessian(y1_field, coords, backend="fd")
        y1_val = float(np.real(y1_field(coords)))
        logH1 = _log_H1_field(f, h, g, x_idx)
        taut1 = Form11(-diffops.wirtinger_hessian(logH1, coords, backend="fd").matrix)
        holo, _ = f.jacobians(Q.z)
        X = Q.W_affine
        hup = h.inverse_up(Q.z)
        Rh = chern_curvature(h, Q.z).array
        C = np.einsum("abgd,gn,md,km,ln,k,l->ab", Rh, hup, hup,
                      holo, holo.conj(), X, X.conj())
        _require_hermitian(C, "source curvature term")
        H1_val = _H1_value(f, g, Q)
        dim = f.m + max(n - 1, 0)
        rhs = taut1.scaled(y1_val) + _embed_base_block(C, f.m, dim).scaled(1.0 / H1_val)
        residual = lhs - rhs

    elif suite == "S3":
        R: NestedBundlePoint = point
        m, n = f.m, f.n
        y2_field = maps_mod.Y2_field(f, h, g, R.P.chart_index, R.x_chart_index)
        coords = R.combined()
        lhs = diffops.wirtinger_hessian(y2_field, coords, backend="fd")
        y2_val = float(np.real(y2_field(coords)))
        tm = TautologicalMetric(h)
        logH_hess = _log_H_hessian(tm, R.P)
        logH1 = _log_H1_field(f, h, g, R.x_chart_index)
        x_coords = np.concatenate([R.P.z, R.x]) if n > 1 else R.P.z
        logH1_hess = diffops.wirtinger_hessian(logH1, x_coords, backend="fd")
        dim = m + max(m - 1, 0) + max(n - 1, 0)
        zw_idx = list(range(m + max(m - 1, 0)))
        zx_idx = list(range(m)) + list(range(m + max(m - 1, 0), dim))
        taut = Form11.embed(-logH_hess.matrix, zw_idx, dim) \
            + Form11.embed(-logH1_hess.matrix, zx_idx, dim)
        rhs = taut.scaled(y2_val)
        residual = lhs - rhs

    else:
        raise ValidationError(f"unhandled suite {suite!r}")

    scale = max(1.0, lhs.max_abs())
    return {
        "min_eigenvalue": residual.min_eigenvalue(),
        "scale": scale,
        "lhs": lhs,
        "rhs": rhs,
        "residual_form": residual,
    }


def _covector_tautological(f: ChartedMap, g: HermitianMetricField) -> TautologicalMetric:
    """H1 through the same machinery as H, with g^{k lbar}(f(z)) as the input."""
    return TautologicalMetric(maps_mod.covector_metric_field(f, g))


def _H1_value(f: ChartedMap, g: HermitianMetricField, Q: BundlePoint) -> float:
    return _covector_tautological(f, g).H_raw(Q)


def _log_H1_field(f: ChartedMap, h: HermitianMetricField,
                  g: HermitianMetricField, x_chart_index: int) -> ScalarField:
    return _covector_tautological(f, g).log_H_field(x_chart_index)


# ---------------------------------------------------------------------------
# trace inequalities

def verify_trace_inequality(suite: str, f: ChartedMap, h: HermitianMetricField,
                            g, z) -> dict:
    """Signed scalar residual tr(LHS) - tr(RHS) for the trace suites."""
    if suite not in TRACE_SUITES:
        raise ValidationError(f"{suite!r} is not a trace suite")
    z = np.asarray(z, complex)
    u_fld = maps_mod.u_field(f, h, g)
    lhs_form = diffops.wirtinger_hessian(u_fld, z, backend="fd")
    kind = "holomorphic" if suite == "S02" else "pluriharmonic"
    rhs_mat = _s01_rhs_matrix(f, h, g, z, kind)
    hup = h.inverse_up(z)
    lhs = float(np.real(np.einsum("ab,ab->", hup, lhs_form.matrix)))
    rhs = float(np.real(np.einsum("ab,ab->", hup, rhs_mat)))
    scale = max(1.0, abs(lhs), abs(rhs))
    return {"residual": lhs - rhs, "lhs": lhs, "rhs": rhs, "scale": scale}


# ---------------------------------------------------------------------------
# maximum-principle probe

def maximum_principle_probe(f: ChartedMap, h: HermitianMetricField,
                            g: HermitianMetricField, grid, compact: bool = False,
                            vanish_tol: float = 1e-14) -> dict:
    """Locate the grid argmax of Y and evaluate the two terms of the pointwise
    estimate there, in base-normal coordinates.

    Reports the sign pattern only; a rigidity conclusion would need a compact
    manifold, and the probe says so rather than overclaiming.
    """
    if not f.holomorphic:
        raise NotApplicable("the probe needs a holomorphic map")
    grid = list(grid)
    if not grid:
        raise ValidationError("probe needs a nonempty grid")
    best, best_val = None, -math.inf
    for P in grid:
        val = maps_mod.generalized_Y(f, h, g, P)
        if val > best_val:
            best, best_val = P, val
    if best_val <= vanish_tol:
        return {"status": "vacuous", "y_max": best_val, "compact": compact,
                "pattern": "vacuous", "conclusion": "density vanishes on the grid"}

    q = best
    frame = hermitian_normal_coordinates(h, q.z)
    W_new = frame.to_new_vector(q.W_affine)
    P_new = BundlePoint.make(np.zeros(f.m, complex), W_new)
    tm_new = TautologicalMetric(frame.metric)
    term1 = horizontal_curvature_value(tm_new, P_new) * best_val

    holo, _ = f.jacobians(q.z)
    F = holo @ q.W_affine
    Rg = chern_curvature(g, f.value(q.z)).array
    H_val = tautological_H(TautologicalMetric(h), q)
    term2 = float(np.real(np.einsum("klij,k,l,i,j->", Rg, F, F.conj(), F, F.conj()))) / H_val

    if abs(term1) <= 1e-8 and abs(term2) <= 1e-8:
        pattern = "degenerate"
    elif term1 > 0 and term2 < 0:
        pattern = "contradiction-shaped"
    else:
        pattern = "consistent"
    conclusion = None
    if pattern == "contradiction-shaped":
        conclusion = ("sign pattern obstructs an interior maximum"
                      if compact else
                      "sign pattern only; no conclusion on a non-compact chart")
    return {"status": "evaluated", "argmax": q, "y_max": best_val,
            "term1": term1, "term2": term2, "pattern": pattern,
            "compact": compact, "conclusion": conclusion}


# ---------------------------------------------------------------------------
# suite runner

@dataclass
class VerificationReport:
    suite: str
    pair: str
    status: str                  # pass | fail | not_applicable | error
    seed: int
    samples: int
    tolerances: dict
    residuals: list = field(default_factory=list)
    points: list = field(default_factory=list)
    worst: dict = field(default_factory=dict)
    message: str = ""
    runtime_s: float = 0.0

    def to_dict(self) -> dict:
        hist = {}
        if self.residuals:
            counts, edges = np.histogram(np.asarray(self.residuals), bins=10)
            hist = {"counts": counts.tolist(), "edges": [float(e) for e in edges]}
        return {
            "suite": self.suite,
            "pair": self.pair,
            "status": self.status,
            "seed": self.seed,
            "samples": self.samples,
            "tolerances": self.tolerances,
            "residuals": [float(r) for r in self.residuals],
            "points": self.points,
            "histogram": hist,
            "worst": self.worst,
            "message": self.message,
        }


def _sample_bundle_point(pair: PairContext, rng, frac=0.5) -> BundlePoint:
    z = pair.f.source.sample(rng, frac)
    m = pair.f.m
    W = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    while np.linalg.norm(W) < 0.3:
        W = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return BundlePoint.make(z, W)


def _sample_covector_point(pair: PairContext, rng, frac=0.5) -> BundlePoint:
    z = pair.f.source.sample(rng, frac)
    n = pair.f.n
    X = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    while np.linalg.norm(X) < 0.3:
        X = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return BundlePoint.make(z, X)


def _sample_nested_point(pair: PairContext, rng, frac=0.5) -> NestedBundlePoint:
    P = _sample_bundle_point(pair, rng, frac)
    n = pair.f.n
    X = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    while np.linalg.norm(X) < 0.3:
        X = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return NestedBundlePoint.make(P.z, P.W, X)


def _point_coords(pt) -> list:
    if isinstance(pt, BundlePoint):
        return {"z": _c2l(pt.z), "W": _c2l(pt.W)}
    if isinstance(pt, NestedBundlePoint):
        return {"z": _c2l(pt.P.z), "W": _c2l(pt.P.W), "X": _c2l(pt.X)}
    return {"z": _c2l(np.asarray(pt))}


def _c2l(arr) -> list:
    return [[float(np.real(v)), float(np.imag(v))] for v in np.asarray(arr).ravel()]


def _default_phi(zs, Ws):
    from . import dual as gm
    return 0.2 * gm.real(zs[0])


def run_suite(pair: PairContext, suites, samples: int = 50, seed: int = 7,
              quadrature_order: int = 8, tol_relative: float = DEFAULT_TOL_RELATIVE,
              tol_exact: float = DEFAULT_TOL_EXACT, probe_grid_size: int = 5,
              phi=None, workers: int = 1) -> list[VerificationReport]:
    """Run the requested suites on one pair; deterministic given (plan, seed).

    Sample points are drawn up front in a fixed order and may be evaluated by
    a worker pool; results are merged by sample index, so the worker count
    cannot change any reported number.
    """
    if samples < 1:
        raise ValidationError("sample count must be >= 1")
    reports = []
    for suite in suites:
        if suite not in SUITE_TAGS:
            raise ValidationError(f"unknown suite {suite!r}")
        t0 = time.perf_counter()
        ord_idx = SUITE_TAGS.index(suite)
        rng = np.random.default_rng([seed, ord_idx])
        ok, why = suite_applicable(suite, pair, rng=np.random.default_rng([seed, 99]))
        tolerances = {"tol_relative": tol_relative, "tol_exact": tol_exact,
                      "w_psd_tol": W_PSD_TOL,
                      "quadrature_order": quadrature_order}
        rep = VerificationReport(suite=suite, pair=pair.name, status="pass",
                                 seed=seed, samples=samples, tolerances=tolerances)
        if not ok:
            rep.status = "not_applicable"
            rep.message = why
            rep.runtime_s = time.perf_counter() - t0
            reports.append(rep)
            continue
        try:
            _run_one_suite(rep, suite, pair, rng, samples, tol_relative,
                           tol_exact, probe_grid_size, phi, workers)
        except (ValidationError, NotApplicable) as exc:
            rep.status = "error"
            rep.message = str(exc)
        rep.runtime_s = time.perf_counter() - t0
        reports.append(rep)
    return reports


def _draw_points(suite, pair, rng, samples):
    pts = []
    for _ in range(samples):
        if suite == "S2":
            pts.append(_sample_covector_point(pair, rng))
        elif suite == "S3":
            pts.append(_sample_nested_point(pair, rng))
        elif suite in ("S01", "hessian") or suite in TRACE_SUITES:
            pts.append(pair.f.source.sample(rng, 0.5))
        else:
            pts.append(_sample_bundle_point(pair, rng))
    return pts


def _map_points(fn, pts, workers: int):
    """Order-preserving map over sample points, optionally via a thread pool."""
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, pts))
    return [fn(pt) for pt in pts]


def _run_one_suite(rep, suite, pair, rng, samples, tol_relative, tol_exact,
                   probe_grid_size, phi, workers=1):
    f, h, g = pair.f, pair.h, pair.g
    weight = phi if phi is not None else (pair.phi or _default_phi)

    if suite in FORM_SUITES:
        pts = _draw_points(suite, pair, rng, samples)
        outs = _map_points(
            lambda pt: verify_form_inequality(
                suite, f, h, g, pt, phi=weight if suite == "S03" else None),
            pts, workers)
        worst = None
        for pt, out in zip(pts, outs):
            band = -tol_relative * out["scale"]
            rep.residuals.append(out["min_eigenvalue"])
            rep.points.append(_point_coords(pt))
            if out["min_eigenvalue"] < band:
                rep.status = "fail"
            if worst is None or out["min_eigenvalue"] < worst[0]:
                eigvals, eigvecs = np.linalg.eigh(out["residual_form"].matrix)
                worst = (out["min_eigenvalue"], _point_coords(pt),
                         _c2l(eigvecs[:, 0]))
        if worst:
            rep.worst = {"residual": worst[0], "point": worst[1],
                         "eigenvector": worst[2]}

    elif suite in TRACE_SUITES:
        pts = _draw_points(suite, pair, rng, samples)
        outs = _map_points(lambda z: verify_trace_inequality(suite, f, h, g, z),
                           pts, workers)
        worst = None
        for z, out in zip(pts, outs):
            band = -tol_relative * out["scale"]
            rep.residuals.append(out["residual"])
            rep.points.append(_point_coords(z))
            if out["residual"] < band:
                rep.status = "fail"
            if worst is None or out["residual"] < worst[0]:
                worst = (out["residual"], _point_coords(z))
        if worst:
            rep.worst = {"residual": worst[0], "point": worst[1]}

    elif suite in EXACT_VARIANTS:
        pts = _draw_points(suite, pair, rng, samples)
        outs = _map_points(lambda P: verify_exact_identity(suite, f, h, g, P),
                           pts, workers)
        worst = None
        for P, out in zip(pts, outs):
            rep.residuals.append(out["residual"])
            rep.points.append(_point_coords(P))
            if out["residual"] > tol_exact:
                rep.status = "fail"
            if worst is None or out["residual"] > worst[0]:
                worst = (out["residual"], _point_coords(P))
        if worst:
            rep.worst = {"residual": worst[0], "point": worst[1]}

    elif suite == "W_psd":
        pts = _draw_points(suite, pair, rng, samples)
        outs = _map_points(lambda P: assemble_W_form(f, h, g, P).min_eigenvalue(),
                           pts, workers)
        worst = None
        for P, mineig in zip(pts, outs):
            rep.residuals.append(mineig)
            rep.points.append(_point_coords(P))
            if mineig < -W_PSD_TOL:
                rep.status = "fail"
            if worst is None or mineig < worst[0]:
                worst = (mineig, _point_coords(P))
        if worst:
            rep.worst = {"residual": worst[0], "point": worst[1]}

    elif suite == "S5_probe":
        grid = _probe_grid(pair, probe_grid_size)
        out = maximum_principle_probe(f, h, g, grid, compact=pair.compact)
        rep.residuals = [out.get("term1", 0.0), out.get("term2", 0.0)]
        rep.message = f"pattern={out['pattern']}"
        rep.worst = {k: v for k, v in out.items()
                     if k in ("pattern", "y_max", "term1", "term2", "conclusion",
                              "status")}

    else:
        raise ValidationError(f"unhandled suite {suite!r}")


def _probe_grid(pair: PairContext, size: int) -> list:
    f = pair.f
    m = f.m
    chart = f.source
    axes = []
    for a in range(m):
        r = chart.radius[a] * 0.55
        axes.append(np.linspace(-r, r, size))
    pts = []
    Ws = [np.ones(1, complex)] if m == 1 else _w_directions(m)
    import itertools as it
    for combo in it.product(*([ax for ax in axes] * 2)):
        re = np.array(combo[:m])
        im = np.array(combo[m:])
        z = chart.center + re + 1j * im
        for W in Ws:
            pts.append(BundlePoint.make(z, W))
    return pts


def _w_directions(m: int) -> list:
    dirs = [np.eye(m, dtype=complex)[a] for a in range(m)]
    dirs.append(np.ones(m, complex) / math.sqrt(m))
    dirs.append((np.arange(1, m + 1) + 1j) / np.linalg.norm(np.arange(1, m + 1) + 1j))
    return dirs
