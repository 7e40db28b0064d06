"""Real symmetric tensors with compressed multiset-index storage.

An order-m, dimension-d symmetric tensor is stored as a map from sorted
multi-indices (i_1 <= ... <= i_m) to entry values; every permutation of a
stored index refers to the same logical entry.  At dimension 4 and order
m <= 8 this is at most C(m+3, 3) = 165 numbers, so all operations are
plain loops over canonical entries (plus a cached dense ndarray for the
contractions that benefit from it).
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter

import numpy as np

__all__ = [
    "SymTensor",
    "make",
    "outer_power",
    "canonical_indices",
    "multiplicity",
]


def canonical_indices(order, dim):
    """All sorted multi-indices of the given order over 0..dim-1."""
    return list(itertools.combinations_with_replacement(range(dim), order))


def multiplicity(idx):
    """Number of distinct permutations of the multiset ``idx``."""
    m = math.factorial(len(idx))
    for c in Counter(idx).values():
        m //= math.factorial(c)
    return m


class SymTensor:
    """Immutable real symmetric tensor of order ``order`` and dimension ``dim``.

    ``entries`` maps canonical (sorted) index tuples to float values; absent
    indices are zero.  Construct through :func:`make`, :func:`outer_power`,
    or the arithmetic operators.
    """

    __slots__ = ("order", "dim", "entries", "_dense")

    def __init__(self, order, dim, entries):
        if order < 0:
            raise ValueError("order must be nonnegative")
        if dim < 2:
            raise ValueError("dim must be at least 2")
        self.order = int(order)
        self.dim = int(dim)
        self.entries = dict(entries)
        self._dense = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, arr):
        arr = np.asarray(arr, dtype=float)
        order = arr.ndim
        dim = arr.shape[0] if order else 2
        entries = {}
        for idx in canonical_indices(order, dim):
            v = float(arr[idx])
            if v != 0.0:
                entries[idx] = v
        t = cls(order, dim, entries)
        return t

    def dense(self):
        """Full ndarray of shape (dim,)*order; cached after first call."""
        if self._dense is None:
            arr = np.zeros((self.dim,) * self.order)
            for idx, val in self.entries.items():
                for perm in set(itertools.permutations(idx)):
                    arr[perm] = val
            self._dense = arr
        return self._dense

    def entry(self, idx):
        """Logical entry a_{i_1...i_m} for any index order."""
        return self.entries.get(tuple(sorted(idx)), 0.0)

    # -- algebra ----------------------------------------------------------

    def eval(self, x):
        """Homogeneous form value: sum over all index tuples of a * x...x."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}")
        t = self.dense()
        for _ in range(self.order):
            t = t @ x
        return float(t)

    def gradient(self, x):
        """Gradient of x -> eval(self, x)."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected vector of length {self.dim}")
        if self.order == 0:
            return np.zeros(self.dim)
        t = self.dense()
        for _ in range(self.order - 1):
            t = t @ x
        return self.order * np.asarray(t, dtype=float)

    def inner(self, other):
        """Full inner product, summing over all (not just canonical) tuples."""
        self._check_shape(other)
        a, b = self.entries, other.entries
        if len(b) < len(a):
            a, b = b, a
        total = 0.0
        for idx, va in a.items():
            vb = b.get(idx)
            if vb is not None:
                total += multiplicity(idx) * va * vb
        return total

    def norm(self):
        return math.sqrt(max(self.inner(self), 0.0))

    def hadamard(self, other):
        """Entrywise product; canonical entries multiply directly."""
        self._check_shape(other)
        entries = {}
        for idx, va in self.entries.items():
            vb = other.entries.get(idx)
            if vb is not None:
                entries[idx] = va * vb
        return SymTensor(self.order, self.dim, entries)

    def row_tensor(self, i):
        """Order m-1 slice a_{i i_2...i_m}; order-0 result for an order-1 input."""
        if not 0 <= i < self.dim:
            raise ValueError("row index out of range")
        if self.order < 1:
            raise ValueError("row tensor needs order >= 1")
        entries = {}
        for jdx in canonical_indices(self.order - 1, self.dim):
            v = self.entry((i,) + jdx)
            if v != 0.0:
                entries[jdx] = v
        return SymTensor(self.order - 1, self.dim, entries)

    def is_regular_symmetric(self, tol=1e-10):
        """Whether a_{00 J} = sum_i a_{ii J} for every trailing multiset J.

        Vacuously true at order < 2.
        """
        return self.regular_symmetry_violation() <= tol

    def regular_symmetry_violation(self):
        """Largest |a_{00 J} - sum_i a_{ii J}| over trailing multisets J."""
        if self.order < 2:
            return 0.0
        worst = 0.0
        for jdx in canonical_indices(self.order - 2, self.dim):
            lhs = self.entry((0, 0) + jdx)
            rhs = sum(self.entry((i, i) + jdx) for i in range(1, self.dim))
            worst = max(worst, abs(lhs - rhs))
        return worst

    def rotate(self, R):
        """Apply diag(1, R)^{otimes m} for an orthogonal (dim-1)x(dim-1) R."""
        R = np.asarray(R, dtype=float)
        n = self.dim - 1
        if R.shape != (n, n):
            raise ValueError(f"expected {n}x{n} rotation matrix")
        if np.abs(R.T @ R - np.eye(n)).max() > 1e-10:
            raise ValueError("matrix is not orthogonal")
        full = np.eye(self.dim)
        full[1:, 1:] = R
        t = self.dense()
        # Mode-by-mode product: each step contracts the leading axis with
        # full's second index and appends the transformed axis at the end,
        # so after m steps every mode is transformed and the order restored.
        for _ in range(self.order):
            t = np.tensordot(t, full, axes=([0], [1]))
        return SymTensor.from_dense(t)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check_shape(other)
        entries = dict(self.entries)
        for idx, v in other.entries.items():
            entries[idx] = entries.get(idx, 0.0) + v
        return SymTensor(self.order, self.dim, entries)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, c):
        c = float(c)
        return SymTensor(self.order, self.dim,
                         {idx: c * v for idx, v in self.entries.items()})

    __rmul__ = __mul__

    def allclose(self, other, tol=1e-10):
        return (self - other).norm() <= tol

    def _check_shape(self, other):
        if self.order != other.order or self.dim != other.dim:
            raise ValueError("tensor shape mismatch")

    # -- serialization ----------------------------------------------------

    def to_dict(self):
        return {
            "order": self.order,
            "dim": self.dim,
            "entries": [{"idx": list(idx), "val": val}
                        for idx, val in sorted(self.entries.items())],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        pairs = [(tuple(e["idx"]), e["val"]) for e in d["entries"]]
        return make(d["order"], d["dim"], pairs)

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))

    def __repr__(self):
        return f"SymTensor(order={self.order}, dim={self.dim}, nnz={len(self.entries)})"


def make(order, dim, entries):
    """Build a SymTensor from (multi-index, value) pairs.

    Indices are auto-sorted into canonical form; two pairs naming the same
    multiset are rejected, as are out-of-range indices and non-finite values.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if dim < 2:
        raise ValueError("dim must be at least 2")
    canon = {}
    for idx, val in entries:
        idx = tuple(int(i) for i in (idx if hasattr(idx, "__len__") else (idx,)))
        if len(idx) != order:
            raise ValueError(f"index {idx} has wrong length for order {order}")
        if any(i < 0 or i >= dim for i in idx):
            raise ValueError(f"index {idx} out of range for dim {dim}")
        key = tuple(sorted(idx))
        if key in canon:
            raise ValueError(f"duplicate multiset index {key}")
        val = float(val)
        if not math.isfinite(val):
            raise ValueError(f"non-finite value for index {key}")
        canon[key] = val
    return SymTensor(order, dim, canon)


def outer_power(v, m):
    """Rank-1 symmetric tensor v^{otimes m}."""
    if m < 1:
        raise ValueError("order must be positive")
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite vector")
    entries = {}
    for idx in canonical_indices(m, len(v)):
        val = float(np.prod(v[list(idx)]))
        if val != 0.0:
            entries[idx] = val
    return SymTensor(m, len(v), entries)
