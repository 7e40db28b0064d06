"""Classicality certification for spin-j states via symmetric tensor cones."""

from .symtensor import SymTensor, make, outer_power, canonical_indices, multiplicity
from .spinmap import (
    CoherentLabel,
    DensityMatrix,
    pauli,
    dicke_state,
    s_frame,
    coherent_vector,
    bloch_direction,
    density_to_tensor,
    tensor_to_density,
    coherent_tensor,
    classical_mixture,
)
from .certify import (
    SolverConfig,
    RegularDecomposition,
    GramCertificate,
    Witness,
    Verdict,
    min_z_eig,
    restricted_min,
    sos_check,
    regular_decompose,
    check_odd_regular,
    classify,
    dual_pair_sample,
)
from . import oracle

__version__ = "0.1.0"
