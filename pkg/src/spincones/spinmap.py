"""Bridge between spin-j density matrices and their representing tensors.

A spin-j system (N = 2j) lives in the symmetric subspace of N qubits,
spanned by the Dicke states |D_N^(k)>, k = 0..N, where k counts the |0>
factors.  Compressing the N-fold Pauli products into that subspace gives a
tight frame of (N+1)x(N+1) Hermitian matrices, and expanding a density
matrix over the frame yields an order-N, dimension-4 real symmetric tensor.
Coherent states map to rank-1 tensors (1, nhat)^{otimes N}.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .symtensor import SymTensor, multiplicity, outer_power

__all__ = [
    "MAX_N",
    "CoherentLabel",
    "DensityMatrix",
    "pauli",
    "dicke_state",
    "s_frame",
    "coherent_vector",
    "bloch_direction",
    "density_to_tensor",
    "tensor_to_density",
    "coherent_tensor",
    "classical_mixture",
]

# Desk-scale cap: the frame is built by direct 2^N-dimensional computation.
MAX_N = 10

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def pauli(i):
    """The 2x2 Pauli matrix sigma_i, i in 0..3 (sigma_0 = identity)."""
    if i not in (0, 1, 2, 3):
        raise ValueError("Pauli index must be 0, 1, 2 or 3")
    return _PAULI[i].copy()


@dataclass(frozen=True)
class CoherentLabel:
    """Bloch-sphere angles of an SU(2) coherent state."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must be in [0, pi]")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError("phi must be in [0, 2*pi)")


def bloch_direction(label):
    """Unit vector (sin t cos p, sin t sin p, cos t) for the label angles."""
    t, p = label.theta, label.phi
    return np.array([math.sin(t) * math.cos(p),
                     math.sin(t) * math.sin(p),
                     math.cos(t)])


def dicke_state(N, k):
    """Dicke state |D_N^(k)> as a 2^N qubit-basis vector; k counts |0> factors."""
    if not 1 <= N <= MAX_N:
        raise ValueError(f"N must be between 1 and {MAX_N}")
    if not 0 <= k <= N:
        raise ValueError("k must be between 0 and N")
    v = np.zeros(2 ** N, dtype=complex)
    for b in range(2 ** N):
        if bin(b).count("1") == N - k:  # bit 1 <-> qubit state |1>
            v[b] = 1.0
    v /= math.sqrt(math.comb(N, k))
    return v


def _dicke_basis(N):
    """2^N x (N+1) matrix whose columns are the Dicke states, k = 0..N."""
    return np.column_stack([dicke_state(N, k) for k in range(N + 1)])


_s_frame_cache = {}


def s_frame(N):
    """Frame matrices S_{i_1...i_N}: Dicke-basis blocks of the Pauli products.

    Returns a dict from canonical multiset (i_1 <= ... <= i_N over 0..3) to
    the (N+1)x(N+1) Hermitian matrix <D^(k)| sigma_{i_1} x ... x sigma_{i_N} |D^(l)>.
    Cached per process.
    """
    if not 1 <= N <= MAX_N:
        raise ValueError(f"N must be between 1 and {MAX_N}")
    if N in _s_frame_cache:
        return _s_frame_cache[N]
    D = _dicke_basis(N)
    frame = {}
    for idx in itertools.combinations_with_replacement(range(4), N):
        X = D.reshape((2,) * N + (N + 1,))
        for pos, i in enumerate(idx):
            if i:
                X = np.moveaxis(
                    np.tensordot(_PAULI[i], X, axes=([1], [pos])), 0, pos)
        frame[idx] = D.conj().T @ X.reshape(2 ** N, N + 1)
    _s_frame_cache[N] = frame
    return frame


def coherent_vector(N, label):
    """Dicke-basis amplitudes of the coherent state |alpha>, unit norm."""
    if N < 1:
        raise ValueError("N must be positive")
    c = math.cos(label.theta / 2)
    s = math.sin(label.theta / 2)
    phase = np.exp(1j * label.phi)
    amps = np.array([
        math.sqrt(math.comb(N, k)) * c ** k * (s * phase) ** (N - k)
        for k in range(N + 1)
    ])
    return amps


class DensityMatrix:
    """Spin-j density matrix in the Dicke basis, k = 0..N (m = k - N/2).

    Hermiticity is always enforced; positivity is validated on ingestion
    unless ``validate_psd=False`` (used when reconstructing operators from
    tensors, where positivity is not guaranteed).  Trace-1 normalization is
    optional: the classicality cones are scale-invariant.
    """

    def __init__(self, N, matrix, *, validate_psd=True):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (N + 1, N + 1):
            raise ValueError(f"expected ({N + 1})x({N + 1}) matrix")
        if not np.all(np.isfinite(matrix.view(float))):
            raise ValueError("non-finite matrix entries")
        scale = max(1.0, np.abs(matrix).max())
        if np.abs(matrix - matrix.conj().T).max() > 1e-10 * scale:
            raise ValueError("matrix is not Hermitian")
        if validate_psd:
            lo = np.linalg.eigvalsh(matrix).min()
            if lo < -1e-10 * scale:
                raise ValueError(f"matrix is not PSD (min eigenvalue {lo:.3e})")
        self.N = int(N)
        self.matrix = matrix

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    def to_dict(self):
        return {
            "N": self.N,
            "matrix": [[[z.real, z.imag] for z in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, d, **kw):
        mat = np.array([[complex(re, im) for re, im in row]
                        for row in d["matrix"]])
        return cls(d["N"], mat, **kw)

    def __repr__(self):
        return f"DensityMatrix(N={self.N}, trace={self.trace:.6g})"


def density_to_tensor(rho):
    """Representing tensor a_{i_1...i_N} = tr(rho S_{i_1...i_N})."""
    frame = s_frame(rho.N)
    scale = max(1.0, abs(rho.trace))
    entries = {}
    for idx, S in frame.items():
        val = complex(np.trace(rho.matrix @ S))
        if abs(val.imag) > 1e-10 * scale:
            raise ValueError(f"coefficient {idx} has imaginary part {val.imag:.3e}")
        if val.real != 0.0:
            entries[idx] = val.real
    return SymTensor(rho.N, 4, entries)


def tensor_to_density(A):
    """Operator sum a_{i_1...i_N} S_{i_1...i_N} / 2^N for a dim-4 tensor.

    Inverts :func:`density_to_tensor` on regular symmetric input; for
    non-regular-symmetric input the operator is still well defined (the
    frame is overcomplete) but the round trip is not exact, so a warning is
    issued and flagged on the result.  Positivity is not checked here.
    """
    if A.dim != 4:
        raise ValueError("representing tensors have dimension 4")
    N = A.order
    frame = s_frame(N)
    rho = np.zeros((N + 1, N + 1), dtype=complex)
    for idx, S in frame.items():
        a = A.entries.get(idx)
        if a:
            rho += multiplicity(idx) * a * S
    rho /= 2 ** N
    rho = (rho + rho.conj().T) / 2
    regular = A.is_regular_symmetric(1e-10 * max(1.0, abs(A.entry((0,) * N))))
    if not regular:
        warnings.warn("tensor is not regular symmetric; operator is a frame "
                      "expansion, not an exact inverse", stacklevel=2)
    dm = DensityMatrix(N, rho, validate_psd=False)
    dm.from_regular_input = regular
    return dm


def coherent_tensor(N, label):
    """Rank-1 representing tensor (1, nhat)^{otimes N} of |alpha><alpha|."""
    if N < 1:
        raise ValueError("N must be positive")
    v = np.concatenate(([1.0], bloch_direction(label)))
    return outer_power(v, N)


def classical_mixture(N, terms):
    """Finite mixture sum w_i |alpha_i><alpha_i| and its representing tensor.

    ``terms`` is a list of (weight, CoherentLabel) with nonnegative weights.
    Returns (DensityMatrix, SymTensor); the two agree under
    :func:`density_to_tensor`.
    """
    if not terms:
        raise ValueError("mixture needs at least one term")
    rho = np.zeros((N + 1, N + 1), dtype=complex)
    tensor = None
    for w, label in terms:
        w = float(w)
        if not math.isfinite(w) or w < 0:
            raise ValueError("weights must be finite and nonnegative")
        psi = coherent_vector(N, label)
        rho += w * np.outer(psi, psi.conj())
        term = w * coherent_tensor(N, label)
        tensor = term if tensor is None else tensor + term
    return DensityMatrix(N, rho), tensor
