"""Second-order forward-mode scalars (hyper-dual numbers) and generic math.

A ``HyperDual`` carries a value together with two directional first
derivatives and the mixed second derivative along those directions:

    x = f0 + f1*e1 + f2*e2 + f12*e1*e2,   e1**2 = e2**2 = 0.

Propagating this truncated Taylor form through arithmetic gives, in a single
evaluation of a composite expression, the exact values of D_u f, D_v f and
D_u D_v f (up to rounding).  Components may be complex, and may themselves be
HyperDual, which nests the construction for higher derivative orders.

The module also provides generic elementary functions (``exp``, ``log``,
``conj``, ``abs2``, ...) that dispatch on plain numbers and HyperDuals alike.
Field and map rules written with these primitives evaluate unchanged under
either differentiation backend.

The perturbation directions are always *real* chart directions, so complex
conjugation acts componentwise, which is what makes Wirtinger calculus on
non-holomorphic expressions work with this representation.
"""

from __future__ import annotations

import cmath
import math

__all__ = ["HyperDual", "exp", "log", "sqrt", "conj", "real", "imag", "abs2"]


class HyperDual:
    __slots__ = ("f0", "f1", "f2", "f12")

    def __init__(self, f0, f1=0.0, f2=0.0, f12=0.0):
        self.f0 = f0
        self.f1 = f1
        self.f2 = f2
        self.f12 = f12

    def __repr__(self):
        return f"HyperDual({self.f0!r}, {self.f1!r}, {self.f2!r}, {self.f12!r})"

    # arithmetic

    def __add__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.f0 + other.f0, self.f1 + other.f1,
                             self.f2 + other.f2, self.f12 + other.f12)
        return HyperDual(self.f0 + other, self.f1, self.f2, self.f12)

    __radd__ = __add__

    def __neg__(self):
        return HyperDual(-self.f0, -self.f1, -self.f2, -self.f12)

    def __sub__(self, other):
        return self + (-other if isinstance(other, HyperDual) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(
                self.f0 * other.f0,
                self.f0 * other.f1 + self.f1 * other.f0,
                self.f0 * other.f2 + self.f2 * other.f0,
                self.f0 * other.f12 + self.f1 * other.f2
                + self.f2 * other.f1 + self.f12 * other.f0,
            )
        return HyperDual(self.f0 * other, self.f1 * other,
                         self.f2 * other, self.f12 * other)

    __rmul__ = __mul__

    def _reciprocal(self):
        a = self.f0
        inv_a = 1.0 / a
        b = self.f1 * inv_a
        c = self.f2 * inv_a
        d = self.f12 * inv_a
        return HyperDual(inv_a, -b * inv_a, -c * inv_a,
                         (2.0 * b * c - d) * inv_a)

    def __truediv__(self, other):
        if isinstance(other, HyperDual):
            return self * other._reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, HyperDual):
            raise TypeError("HyperDual exponents are not supported")
        if p == 0:
            return HyperDual(self.f0 ** 0)
        v = self.f0
        d1 = p * v ** (p - 1)
        d2 = p * (p - 1) * v ** (p - 2) if p != 1 else 0.0
        return HyperDual(v ** p, d1 * self.f1, d1 * self.f2,
                         d1 * self.f12 + d2 * self.f1 * self.f2)

    # elementary functions; chain rule with f' and f''

    def _lift(self, val, d1, d2):
        return HyperDual(val, d1 * self.f1, d1 * self.f2,
                         d1 * self.f12 + d2 * self.f1 * self.f2)

    def exp(self):
        e = exp(self.f0)
        return self._lift(e, e, e)

    def log(self):
        v = self.f0
        return self._lift(log(v), 1.0 / v, -1.0 / (v * v))

    def sqrt(self):
        r = sqrt(self.f0)
        return self._lift(r, 0.5 / r, -0.25 / (r * self.f0))

    def conjugate(self):
        return HyperDual(conj(self.f0), conj(self.f1),
                         conj(self.f2), conj(self.f12))

    @property
    def real(self):
        return HyperDual(real(self.f0), real(self.f1),
                         real(self.f2), real(self.f12))

    @property
    def imag(self):
        return HyperDual(imag(self.f0), imag(self.f1),
                         imag(self.f2), imag(self.f12))

    # ordering a jet is meaningless; fail loudly instead of comparing values
    def __lt__(self, other):
        raise TypeError("HyperDual values are not ordered")

    __le__ = __gt__ = __ge__ = __lt__


def exp(x):
    if isinstance(x, HyperDual):
        return x.exp()
    if isinstance(x, complex):
        return cmath.exp(x)
    return math.exp(x)


def log(x):
    if isinstance(x, HyperDual):
        return x.log()
    if isinstance(x, complex):
        return cmath.log(x)
    return math.log(x)


def sqrt(x):
    if isinstance(x, HyperDual):
        return x.sqrt()
    if isinstance(x, complex):
        return cmath.sqrt(x)
    return math.sqrt(x) if x >= 0 else cmath.sqrt(x)


def conj(x):
    if isinstance(x, HyperDual):
        return x.conjugate()
    return x.conjugate() if isinstance(x, complex) else x


def real(x):
    if isinstance(x, HyperDual):
        return x.real
    return x.real if isinstance(x, complex) else x


def imag(x):
    if isinstance(x, HyperDual):
        return x.imag
    return x.imag if isinstance(x, complex) else 0.0 * x


def abs2(x):
    """Squared modulus x * conj(x); differentiable, unlike abs."""
    return x * conj(x)
