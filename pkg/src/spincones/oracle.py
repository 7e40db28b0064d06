"""Brute-force references for the certification pipeline.

Everything here re-implements its evaluation loop from scratch (sharing
only the SymTensor type), so agreement with the main code path is evidence
rather than tautology.  Grid minima are one-sided: they upper-bound the
true minimum, and the optimizers must never report worse than them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .symtensor import SymTensor

__all__ = [
    "GridSpec",
    "grid_min_full",
    "grid_min_regular",
    "expand_decomposition",
]


@dataclass
class GridSpec:
    points: int = 20000
    kind: str = "FullSphereR4"  # or DirectionSphereR3

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("points must be positive")
        if self.kind not in ("FullSphereR4", "DirectionSphereR3"):
            raise ValueError(f"unknown grid kind {self.kind!r}")


def _perm_count(idx):
    c = {}
    for i in idx:
        c[i] = c.get(i, 0) + 1
    total = math.factorial(len(idx))
    for v in c.values():
        total //= math.factorial(v)
    return total


def _eval_batch(A, X):
    """Form values at the rows of X, by explicit monomial expansion."""
    X = np.asarray(X, dtype=float)
    out = np.zeros(len(X))
    for idx in itertools.combinations_with_replacement(range(A.dim), A.order):
        val = A.entries.get(idx)
        if not val:
            continue
        term = np.ones(len(X))
        for i in idx:
            term = term * X[:, i]
        out += _perm_count(idx) * val * term
    return out


def _halton_sphere(dim, count):
    seq = qmc.Halton(d=dim, scramble=False)
    seq.fast_forward(1)
    g = ndtri(np.clip(seq.random(count), 1e-12, 1 - 1e-12))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _fibonacci_directions(count):
    i = np.arange(count)
    ang = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([r * np.cos(ang), r * np.sin(ang), z])


def grid_min_full(A, g=None):
    """Min of the form over a deterministic net on the unit sphere in R^dim."""
    g = g or GridSpec()
    X = _halton_sphere(A.dim, g.points)
    vals = _eval_batch(A, X)
    k = int(np.argmin(vals))
    return float(vals[k]), X[k]


def grid_min_regular(A, g=None):
    """Min of eval(A, (1, nhat)) over a deterministic direction net."""
    g = g or GridSpec(kind="DirectionSphereR3")
    n = A.dim - 1
    dirs = _fibonacci_directions(g.points) if n == 3 else _halton_sphere(n, g.points)
    X = np.column_stack([np.ones(len(dirs)), dirs])
    vals = _eval_batch(A, X)
    k = int(np.argmin(vals))
    return float(vals[k]), dirs[k]


def expand_decomposition(dec, order=None):
    """Entrywise expansion sum_k alpha_k (1, nhat_k)^{otimes m}, no shortcuts."""
    m = order if order is not None else dec.order
    dim = 1 + (len(dec.terms[0][1]) if dec.terms else 3)
    entries = {}
    for idx in itertools.combinations_with_replacement(range(dim), m):
        total = 0.0
        for alpha, nhat in dec.terms:
            v = [1.0] + [float(c) for c in nhat]
            prod = alpha
            for i in idx:
                prod *= v[i]
            total += prod
        if total != 0.0:
            entries[idx] = total
    return SymTensor(m, dim, entries)
