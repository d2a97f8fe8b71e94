"""Scalar and metric fields on charts, and Hermitian (1,1)-form carriers.

Field rules are plain callables written against the generic scalar math in
:mod:`projcurv.dual` (operators plus ``exp``/``log``/``conj``/``abs2``), so a
single rule serves the finite-difference backend (plain complex points), the
dual-number backend (HyperDual points), and direct evaluation.

All fields are immutable after construction and all methods are pure, so
concurrent evaluation needs no synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charts import ComplexChart, RealChart
from .errors import ValidationError

HERMITIAN_DEFECT_TOL = 1e-12


@dataclass(frozen=True)
class ScalarField:
    """A scalar-valued field on a chart.

    ``rule`` maps a sequence of generic scalars (one per chart coordinate) to
    a generic scalar.  ``backend`` records which differentiation backends the
    rule supports: "fd", "dual", or "both".
    """

    chart: ComplexChart
    rule: object
    backend: str = "both"
    name: str = ""

    def __call__(self, z):
        v = self.rule(tuple(np.asarray(z, complex)))
        return complex(v)

    def value_generic(self, scalars):
        return self.rule(tuple(scalars))


class _MetricBase:
    def probe_points(self, rng, count):
        return [self.chart.sample(rng) for _ in range(count)]


@dataclass(frozen=True)
class HermitianMetricField(_MetricBase):
    """Matrix field z -> h_{a bbar}(z), Hermitian positive definite.

    ``rule`` returns an m x m nested sequence; entry [a][b] is the pairing of
    dz^a with dzbar^b.  Construction runs a light validation at the chart
    center; ``validate`` runs the full probe-point check.

    ``matrix_dim`` defaults to the chart dimension; pairing fields that live
    over a different base (the pulled-back inverse target metric on a
    covector bundle) set it explicitly.
    """

    chart: ComplexChart
    rule: object
    backend: str = "both"
    name: str = ""
    validate_on_init: bool = True
    matrix_dim: int = None

    def __post_init__(self):
        if self.matrix_dim is None:
            object.__setattr__(self, "matrix_dim", self.chart.dim)
        if self.validate_on_init:
            self.check_at(self.chart.center)

    @property
    def dim(self) -> int:
        return self.matrix_dim

    def matrix(self, z) -> np.ndarray:
        return np.asarray(self.rule(tuple(np.asarray(z, complex))), complex)

    def matrix_generic(self, scalars):
        return self.rule(tuple(scalars))

    def inverse(self, z) -> np.ndarray:
        return np.linalg.inv(self.matrix(z))

    def inverse_up(self, z) -> np.ndarray:
        """Inverse metric with raised indices: h^{a bbar} = conj(inv(H))[a, b]."""
        return np.linalg.inv(self.matrix(z)).conj()

    def check_at(self, z):
        H = self.matrix(z)
        if H.shape != (self.dim, self.dim):
            raise ValidationError(
                f"metric {self.name!r}: rule returned shape {H.shape}, "
                f"expected ({self.dim}, {self.dim})")
        defect = float(np.max(np.abs(H - H.conj().T)))
        if defect > HERMITIAN_DEFECT_TOL:
            raise ValidationError(
                f"metric {self.name!r} not Hermitian at {z}: defect {defect:.3e}")
        lam = np.linalg.eigvalsh(H)
        if lam[0] <= 0:
            raise ValidationError(
                f"metric {self.name!r} not positive definite at {z}: "
                f"min eigenvalue {lam[0]:.3e}")

    def validate(self, rng, count: int = 100):
        for z in self.probe_points(rng, count):
            self.check_at(z)


@dataclass(frozen=True)
class RiemannianMetricField(_MetricBase):
    """Matrix field x -> g_{ij}(x), symmetric positive definite."""

    chart: RealChart
    rule: object
    backend: str = "both"
    name: str = ""
    validate_on_init: bool = True

    def __post_init__(self):
        if self.validate_on_init:
            self.check_at(self.chart.center)

    @property
    def dim(self) -> int:
        return self.chart.dim

    def matrix(self, x) -> np.ndarray:
        G = np.asarray(self.rule(tuple(np.asarray(x, float))), complex)
        return G.real

    def matrix_generic(self, scalars):
        return self.rule(tuple(scalars))

    def inverse(self, x) -> np.ndarray:
        return np.linalg.inv(self.matrix(x))

    def check_at(self, x):
        G = np.asarray(self.rule(tuple(np.asarray(x, float))), complex)
        if G.shape != (self.dim, self.dim):
            raise ValidationError(
                f"metric {self.name!r}: rule returned shape {G.shape}, "
                f"expected ({self.dim}, {self.dim})")
        if float(np.max(np.abs(G.imag))) > HERMITIAN_DEFECT_TOL:
            raise ValidationError(f"metric {self.name!r} has complex entries at {x}")
        defect = float(np.max(np.abs(G.real - G.real.T)))
        if defect > HERMITIAN_DEFECT_TOL:
            raise ValidationError(
                f"metric {self.name!r} not symmetric at {x}: defect {defect:.3e}")
        lam = np.linalg.eigvalsh(G.real)
        if lam[0] <= 0:
            raise ValidationError(
                f"metric {self.name!r} not positive definite at {x}: "
                f"min eigenvalue {lam[0]:.3e}")

    def validate(self, rng, count: int = 100):
        for x in self.probe_points(rng, count):
            self.check_at(x)


class Form11:
    """Coefficient matrix A of a real (1,1)-form sqrt(-1) A_{a bbar} dz^a dzbar^b.

    The sqrt(-1) factor is kept out of the stored matrix, so positivity of the
    form is exactly positive semidefiniteness of A.  The matrix is Hermitian
    by construction: the constructor symmetrizes (A + A^dagger)/2.
    """

    __slots__ = ("matrix", "dim")

    def __init__(self, matrix):
        A = np.asarray(matrix, complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValidationError(f"Form11 expects a square matrix, got {A.shape}")
        self.matrix = 0.5 * (A + A.conj().T)
        self.dim = A.shape[0]

    def __add__(self, other):
        return Form11(self.matrix + other.matrix)

    def __sub__(self, other):
        return Form11(self.matrix - other.matrix)

    def scaled(self, c: float) -> "Form11":
        return Form11(self.matrix * c)

    def evaluate(self, u) -> float:
        """Pairing with (u, ubar): sum A[a, b] u^a conj(u^b).

        The first matrix index is the holomorphic one, matching every tensor
        contraction in the package; Hermiticity makes the value real.
        """
        u = np.asarray(u, complex)
        if u.shape != (self.dim,):
            raise ValidationError(
                f"vector of length {u.shape} against form of dimension {self.dim}")
        return float(np.real(u @ self.matrix @ u.conj()))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def max_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[-1])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    @staticmethod
    def embed(sub: np.ndarray, index_map, dim: int) -> "Form11":
        """Place a sub-block into an otherwise zero form of size ``dim``."""
        A = np.zeros((dim, dim), complex)
        idx = np.asarray(index_map, int)
        A[np.ix_(idx, idx)] = sub
        return Form11(A)

    def __repr__(self):
        return f"Form11(dim={self.dim}, min_eig={self.min_eigenvalue():.3e})"


def evaluate_form11(form: Form11, u) -> float:
    """Evaluate the form on a tangent vector: real number u^dagger A u."""
    return form.evaluate(u)


def min_eigenvalue(form: Form11) -> float:
    """Smallest eigenvalue of the Hermitian coefficient matrix."""
    return form.min_eigenvalue()
