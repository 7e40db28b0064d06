"""A tour of the symmetric tensor layer.

Every spin state in this library is represented by a real symmetric tensor
of order N (= 2j) and dimension 4: index 0 is the "time-like" slot, indices
1..3 are the Bloch directions.  This script builds a few tensors by hand
and exercises the core algebra: evaluation, rotation, the entrywise
product, and the regular-symmetry identity that characterises tensors
coming from actual quantum states.
"""

import numpy as np

from spincones import symtensor as st

# --- building blocks ------------------------------------------------------

# A rank-1 "atom": the tensor of a coherent state pointing along nhat.
nhat = np.array([0.6, 0.0, 0.8])
atom = st.outer_power(np.concatenate(([1.0], nhat)), 4)
print("atom entries (stored in compressed multiset form):")
for idx, val in sorted(atom.entries.items())[:5]:
    print(f"  a{idx} = {val:+.4f}   (multiplicity {st.multiplicity(idx)})")
print(f"  ... {len(atom.entries)} stored entries for 4^4 = 256 dense ones\n")

# Evaluation is the homogeneous form A . x^{otimes m}; for a rank-1 tensor
# it collapses to a power of a dot product.
x = np.array([1.0, 0.1, -0.3, 0.9])
print(f"atom.eval(x)          = {atom.eval(x):.6f}")
print(f"(v . x)^4             = {(np.concatenate(([1.0], nhat)) @ x) ** 4:.6f}\n")

# --- mixtures and regular symmetry ---------------------------------------

# Convex sums of atoms are the tensors of classical (separable) states.
up = st.outer_power([1, 0, 0, 1.0], 4)
down = st.outer_power([1, 0, 0, -1.0], 4)
mix = 0.5 * up + 0.5 * down
print(f"antipodal mixture is regular symmetric: {mix.is_regular_symmetric(1e-12)}")

# The diagonal identity tensor is NOT regular symmetric: no quantum state
# maps to it, even though its form is positive on the whole sphere.
diag = st.make(2, 4, [((i, i), 1.0) for i in range(4)])
print(f"diagonal identity violation: {diag.regular_symmetry_violation():.3f}\n")

# --- rotation covariance --------------------------------------------------

# A rotation R of the Bloch sphere acts on tensors through diag(1, R).
# Atoms transform by rotating their direction - nothing else moves.
theta = np.pi / 3
R = np.array([[np.cos(theta), -np.sin(theta), 0],
              [np.sin(theta), np.cos(theta), 0],
              [0, 0, 1.0]])
rotated = atom.rotate(R)
check = st.outer_power(np.concatenate(([1.0], R @ nhat)), 4)
print(f"rotate(atom) == atom at R nhat: {rotated.allclose(check, 1e-12)}")

# --- the entrywise (Hadamard) product ------------------------------------

# Entrywise products of rank-1 tensors are rank-1 tensors of the entrywise
# product vectors, so decomposable tensors are closed under it.
a2 = st.outer_power([1, 1, 0, 0.0], 4)
had = atom.hadamard(a2)
check = st.outer_power(np.concatenate(([1.0], nhat)) * np.array([1, 1, 0, 0.0]), 4)
print(f"hadamard of two atoms is the atom of the product: "
      f"{had.allclose(check, 1e-12)}")

# --- serialization --------------------------------------------------------

doc = mix.to_json()
print(f"\nJSON round trip ok: {st.SymTensor.from_json(doc).allclose(mix, 0.0)}")
