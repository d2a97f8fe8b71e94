"""Symmetric tensor powers in the monomial (multiset) basis.

Degree-k symmetric tensors over C^n are coordinatized by multisets
I = (i_1 <= ... <= i_k); the coordinate of v^{tensor k} is the monomial
value v^I = prod v^{i_a}.  The metric induced on the symmetric power by a
metric g on C^n is expressed through permanents of g-submatrices; with it,
|v^{tensor k}|^2 = (|v|_g^2)^k exactly, which the tests pin down.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import numpy as np


def multisets(n: int, k: int):
    """All multisets of size k over {0..n-1}, lexicographic."""
    return list(itertools.combinations_with_replacement(range(n), k))


def monomial(v, I) -> complex:
    out = 1.0
    for i in I:
        out = out * v[i]
    return out


def sym_power_vector(v, n: int, k: int) -> np.ndarray:
    """Monomial coordinates of v^{tensor k}."""
    return np.array([monomial(v, I) for I in multisets(n, k)], complex)


def _permanent(M: np.ndarray) -> complex:
    k = M.shape[0]
    if k == 1:
        return M[0, 0]
    total = 0.0
    for perm in itertools.permutations(range(k)):
        p = 1.0
        for a, b in enumerate(perm):
            p = p * M[a, b]
        total = total + p
    return total


def _mult_factorial(I) -> int:
    out = 1
    for c in Counter(I).values():
        out *= math.factorial(c)
    return out


def induced_metric(g: np.ndarray, k: int) -> np.ndarray:
    """Metric matrix of Sym^k in monomial coordinates, induced by g on C^n.

    G_k[I, J] = (k! / mult(I)!) * perm(g[I_a, J_b]) / mult(J)!  which makes
    sum G_k[I, J] v^I conj(u^J) = (g_{i jbar} v^i conj(u^j))^k.
    """
    n = g.shape[0]
    basis = multisets(n, k)
    D = len(basis)
    Gk = np.empty((D, D), complex)
    kfact = math.factorial(k)
    for a, I in enumerate(basis):
        mu_I = kfact // _mult_factorial(I)
        for b, J in enumerate(basis):
            M = g[np.ix_(I, J)]
            Gk[a, b] = mu_I * _permanent(M) / _mult_factorial(J)
    return Gk
