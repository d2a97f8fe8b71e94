r"""Doubly-checked Wirtinger differentiation engine.

Every first and second derivative in the package flows through this module.
Two independent backends are provided:

* ``fd``   -- Richardson-extrapolated central differences, base step
  ``REL_STEP`` times the chart scale.  Primary backend.
* ``dual`` -- second-order forward mode (hyper-dual numbers), exact up to
  rounding.  Cross-check backend, and the default for map Jacobians where
  the exactness keeps nested differentiation honest.

Conventions.  On a complex chart with coordinates zeta^a = x^a + i y^a the
real directions are ordered (x^0..x^{d-1}, y^0..y^{d-1}) and

    d/dzeta^a     = (d/dx^a - i d/dy^a) / 2
    d/dzetabar^a  = (d/dx^a + i d/dy^a) / 2

so for a real jet (grad, hess) of a field F,

    (dF)_a           = (grad[xa] - i grad[ya]) / 2
    (d dbar F)_{ab}  = (H[xa,xb] + H[ya,yb] + i (H[xa,yb] - H[ya,xb])) / 4
    (d d F)_{ab}     = (H[xa,xb] - H[ya,yb] - i (H[xa,yb] + H[ya,xb])) / 4

The mixed matrix of a real-valued field is Hermitian; ``wirtinger_hessian``
symmetrizes it into a :class:`~projcurv.fields.Form11`.
"""

from __future__ import annotations

import numpy as np

from .dual import HyperDual
from .errors import BackendMismatchError
from .fields import Form11, ScalarField

REL_STEP = 1e-3
CROSS_CHECK_RTOL = 1e-5
GRADIENT_MARGIN_STEPS = 2
HESSIAN_MARGIN_STEPS = 3


def step_for(chart) -> float:
    return REL_STEP * chart.scale


# real-jet primitives ------------------------------------------------------

def _real_grad_fd(F, p, s):
    n = p.size
    grad = np.empty(n, complex)
    for a in range(n):
        e = np.zeros(n)
        e[a] = 1.0
        d1 = (F(p + s * e) - F(p - s * e)) / (2 * s)
        d2 = (F(p + 0.5 * s * e) - F(p - 0.5 * s * e)) / s
        grad[a] = (4.0 * d2 - d1) / 3.0
    return grad


def _real_jet2_fd(F, p, s):
    n = p.size
    f0 = F(p)
    ax = {}
    for a in range(n):
        e = np.zeros(n)
        e[a] = 1.0
        for h in (s, 0.5 * s):
            ax[(a, h, +1)] = F(p + h * e)
            ax[(a, h, -1)] = F(p - h * e)
    grad = np.empty(n, complex)
    hess = np.empty((n, n), complex)
    for a in range(n):
        d1 = (ax[(a, s, 1)] - ax[(a, s, -1)]) / (2 * s)
        d2 = (ax[(a, 0.5 * s, 1)] - ax[(a, 0.5 * s, -1)]) / s
        grad[a] = (4.0 * d2 - d1) / 3.0
        h1 = (ax[(a, s, 1)] - 2 * f0 + ax[(a, s, -1)]) / (s * s)
        h2 = (ax[(a, 0.5 * s, 1)] - 2 * f0 + ax[(a, 0.5 * s, -1)]) / (0.25 * s * s)
        hess[a, a] = (4.0 * h2 - h1) / 3.0
    for a in range(n):
        ea = np.zeros(n)
        ea[a] = 1.0
        for b in range(a + 1, n):
            eb = np.zeros(n)
            eb[b] = 1.0

            def cross(h):
                return (F(p + h * (ea + eb)) - F(p + h * (ea - eb))
                        - F(p - h * (ea - eb)) + F(p - h * (ea + eb))) / (4 * h * h)

            c1 = cross(s)
            c2 = cross(0.5 * s)
            hess[a, b] = hess[b, a] = (4.0 * c2 - c1) / 3.0
    return f0, grad, hess


def _dual_value(v):
    return v.f0 if isinstance(v, HyperDual) else v


def _real_jet2_dual(F, p):
    """Full real jet via one hyper-dual evaluation per direction pair."""
    n = p.size
    grad = np.empty(n, complex)
    hess = np.empty((n, n), complex)
    f0 = None
    for a in range(n):
        for b in range(a, n):
            q = list(p)
            if a == b:
                q[a] = HyperDual(p[a], 1.0, 1.0, 0.0)
            else:
                q[a] = HyperDual(p[a], 1.0, 0.0, 0.0)
                q[b] = HyperDual(p[b], 0.0, 1.0, 0.0)
            out = F(np.asarray(q, object))
            f0 = _dual_value(out.f0) if isinstance(out, HyperDual) else out
            if isinstance(out, HyperDual):
                if b == a:
                    grad[a] = _dual_value(out.f1)
                hess[a, b] = hess[b, a] = _dual_value(out.f12)
            else:  # rule ignored the seeds: constant along these directions
                if b == a:
                    grad[a] = 0.0
                hess[a, b] = hess[b, a] = 0.0
    return f0, grad, hess


def _real_grad_dual(F, p):
    n = p.size
    grad = np.empty(n, complex)
    for a in range(n):
        q = list(p)
        q[a] = HyperDual(p[a], 1.0, 0.0, 0.0)
        out = F(np.asarray(q, object))
        grad[a] = _dual_value(out.f1) if isinstance(out, HyperDual) else 0.0
    return grad


# complex-point wrappers ---------------------------------------------------

def _as_real_fn(field: ScalarField):
    d = field.chart.dim

    def Fr(p):
        zs = tuple(p[a] + 1j * p[a + d] for a in range(d))
        return field.value_generic(zs)

    return Fr


def _split_real(z) -> np.ndarray:
    z = np.asarray(z, complex)
    return np.concatenate([z.real, z.imag])


def _wirt_grad_from_real(grad: np.ndarray, d: int) -> np.ndarray:
    return 0.5 * (grad[:d] - 1j * grad[d:])


def _wirt_gradbar_from_real(grad: np.ndarray, d: int) -> np.ndarray:
    return 0.5 * (grad[:d] + 1j * grad[d:])


def _wirt_mixed_from_real(H: np.ndarray, d: int) -> np.ndarray:
    xx = H[:d, :d]
    yy = H[d:, d:]
    xy = H[:d, d:]
    yx = H[d:, :d]
    return 0.25 * ((xx + yy) + 1j * (xy - yx))


def _wirt_holo2_from_real(H: np.ndarray, d: int) -> np.ndarray:
    xx = H[:d, :d]
    yy = H[d:, d:]
    xy = H[:d, d:]
    yx = H[d:, :d]
    return 0.25 * ((xx - yy) - 1j * (xy + yx))


def _require_backend(field: ScalarField, backend: str):
    if backend == "dual" and field.backend == "fd":
        raise ValueError(
            f"field {field.name or ''!r} is tagged fd-only and cannot be "
            "differentiated by the dual backend")


def _jet2(field: ScalarField, z, backend: str):
    _require_backend(field, backend)
    p = _split_real(z)
    F = _as_real_fn(field)
    if backend == "fd":
        return _real_jet2_fd(F, p, step_for(field.chart))
    if backend == "dual":
        return _real_jet2_dual(F, p)
    raise ValueError(f"unknown backend {backend!r}")


def _grad(field: ScalarField, z, backend: str):
    _require_backend(field, backend)
    p = _split_real(z)
    F = _as_real_fn(field)
    if backend == "fd":
        return _real_grad_fd(F, p, step_for(field.chart))
    if backend == "dual":
        return _real_grad_dual(F, p)
    raise ValueError(f"unknown backend {backend!r}")


# public operations --------------------------------------------------------

def wirtinger_gradient(field: ScalarField, z, backend: str = "fd",
                       check: bool = False) -> np.ndarray:
    """Holomorphic Wirtinger gradient (dF/dzeta^a).

    Antiholomorphic derivatives follow from the conjugate rule
    dbar F = conj(d conj(F)); for convenience use
    :func:`wirtinger_gradient_bar`.
    """
    field.chart.require_margin(z, GRADIENT_MARGIN_STEPS * step_for(field.chart))
    d = field.chart.dim
    g = _grad(field, z, backend)
    if check:
        other = "dual" if backend == "fd" else "fd"
        g2 = _grad(field, z, other)
        _assert_close(g, g2, f"gradient of {field.name or 'field'} at {z}")
    return _wirt_grad_from_real(g, d)


def wirtinger_gradient_bar(field: ScalarField, z, backend: str = "fd") -> np.ndarray:
    field.chart.require_margin(z, GRADIENT_MARGIN_STEPS * step_for(field.chart))
    g = _grad(field, z, backend)
    return _wirt_gradbar_from_real(g, field.chart.dim)


def wirtinger_hessian(field: ScalarField, z, backend: str = "fd",
                      check: bool = False) -> Form11:
    """Mixed complex Hessian (d^2 F / dzeta^a dzetabar^b) as a Form11.

    Intended for real-valued fields, whose mixed Hessian is Hermitian; the
    Form11 constructor symmetrizes away the numerical skew part.
    """
    field.chart.require_margin(z, HESSIAN_MARGIN_STEPS * step_for(field.chart))
    d = field.chart.dim
    _, _, H = _jet2(field, z, backend)
    if check:
        other = "dual" if backend == "fd" else "fd"
        _, _, H2 = _jet2(field, z, other)
        _assert_close(H, H2, f"hessian of {field.name or 'field'} at {z}")
    return Form11(_wirt_mixed_from_real(H, d))


def complex_jet2(field: ScalarField, z, backend: str = "fd"):
    """Value, d-gradient, dbar-gradient, mixed and pure-holomorphic Hessians."""
    field.chart.require_margin(z, HESSIAN_MARGIN_STEPS * step_for(field.chart))
    d = field.chart.dim
    f0, g, H = _jet2(field, z, backend)
    return (f0,
            _wirt_grad_from_real(g, d),
            _wirt_gradbar_from_real(g, d),
            _wirt_mixed_from_real(H, d),
            _wirt_holo2_from_real(H, d))


def cross_check(field: ScalarField, z, rtol: float = CROSS_CHECK_RTOL) -> float:
    """Max relative disagreement between the two backends (gradient+Hessian).

    Raises BackendMismatchError beyond ``rtol``; returns the observed defect.
    """
    _, gf, Hf = _jet2(field, z, "fd")
    _, gd, Hd = _jet2(field, z, "dual")
    scale = max(1.0, float(np.max(np.abs(gd))), float(np.max(np.abs(Hd))))
    defect = max(float(np.max(np.abs(gf - gd))), float(np.max(np.abs(Hf - Hd)))) / scale
    if defect > rtol:
        raise BackendMismatchError(
            f"backends disagree on {field.name or 'field'} at {z}: "
            f"relative defect {defect:.3e} > {rtol:.1e}")
    return defect


def _assert_close(a, b, what: str, rtol: float = CROSS_CHECK_RTOL):
    scale = max(1.0, float(np.max(np.abs(b))))
    defect = float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) / scale
    if defect > rtol:
        raise BackendMismatchError(
            f"backends disagree on {what}: relative defect {defect:.3e} > {rtol:.1e}")


# map-component jets (vector-valued rules) ---------------------------------

def jacobian_pair_generic(rule, z, dim: int, n_out: int):
    """Dual-backend Jacobian with generic scalar output.

    Returns nested lists (holo, anti) with holo[i][a] = df^i/dz^a and
    anti[i][a] = df^i/dzbar^a.  The entries stay whatever scalar type the
    inputs carry, so an outer differentiation pass may seed ``z`` with its
    own HyperDuals and the inner Jacobian nests transparently.

    When nesting is detected, every coordinate is lifted into the inner dual
    level (outer jets become components, never peers of the inner seeds);
    mixing levels would silently corrupt the inner derivative slots.
    """
    z = list(z)
    nested = any(isinstance(v, HyperDual) for v in z)
    holo = [[None] * dim for _ in range(n_out)]
    anti = [[None] * dim for _ in range(n_out)]
    for a in range(dim):
        if nested:
            q = [HyperDual(v, 0.0, 0.0, 0.0) for v in z]
        else:
            q = list(z)
        q[a] = HyperDual(z[a], 1.0, 1j, 0.0)
        out = rule(tuple(q))
        for i in range(n_out):
            v = out[i]
            if isinstance(v, HyperDual):
                dx, dy = v.f1, v.f2
            else:
                dx = dy = 0.0
            holo[i][a] = 0.5 * (dx - 1j * dy)
            anti[i][a] = 0.5 * (dx + 1j * dy)
    return holo, anti


def jacobian_pair(rule, z, dim: int, n_out: int, backend: str = "dual",
                  step: float = 1e-3):
    """First Wirtinger derivatives of a vector-valued rule.

    Returns (holo, anti) with holo[i, a] = df^i/dz^a and
    anti[i, a] = df^i/dzbar^a.  The dual backend evaluates the rule once per
    source coordinate with paired (x, y) seeds, which is exact and keeps
    inner derivatives noiseless when the result feeds an outer stencil.
    """
    z = list(z)
    holo = np.empty((n_out, dim), complex)
    anti = np.empty((n_out, dim), complex)
    if backend == "dual":
        hg, ag = jacobian_pair_generic(rule, z, dim, n_out)
        for i in range(n_out):
            for a in range(dim):
                holo[i, a] = complex(hg[i][a])
                anti[i, a] = complex(ag[i][a])
        return holo, anti
    if backend == "fd":
        def central(a, mul, h):
            qp = list(z)
            qm = list(z)
            qp[a] = qp[a] + mul * h
            qm[a] = qm[a] - mul * h
            vp = rule(tuple(qp))
            vm = rule(tuple(qm))
            return np.asarray([(vp[i] - vm[i]) / (2 * h) for i in range(n_out)],
                              complex)

        for a in range(dim):
            dx = (4.0 * central(a, 1.0, step / 2) - central(a, 1.0, step)) / 3.0
            dy = (4.0 * central(a, 1j, step / 2) - central(a, 1j, step)) / 3.0
            holo[:, a] = 0.5 * (dx - 1j * dy)
            anti[:, a] = 0.5 * (dx + 1j * dy)
        return holo, anti
    raise ValueError(f"unknown backend {backend!r}")
