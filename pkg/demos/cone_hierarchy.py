"""The cone hierarchy behind the classifier.

Even-order symmetric tensors sit in a chain of convex cones:

    regularly decomposable  c  completely decomposable  c  SOS  c  PSD

Membership in the smallest cone is what "classical" means; membership
failures further up the chain give cheap refutations.  This script builds
tensors on both sides of the fence and shows each certificate type, plus
the duality between the PSD and decomposable cones.
"""

import math

import numpy as np

from spincones import certify, oracle, spinmap
from spincones import symtensor as st

cfg = certify.SolverConfig(grid_size=300, starts=16)
rng = np.random.default_rng(42)

# --- a classical tensor climbs the whole chain ---------------------------

dec_terms = []
for _ in range(3):
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    dec_terms.append((float(rng.uniform(0.2, 1.0)), n))
A = oracle.expand_decomposition(certify.RegularDecomposition(4, dec_terms, 0.0))

val, point = certify.min_z_eig(A, cfg)
print(f"PSD:  min Z-eigenvalue        = {val:.3e}  (>= 0 up to tolerance)")

status, cert = certify.sos_check(A, cfg)
print(f"SOS:  Gram search             = {status}, "
      f"min eig {cert.min_eigenvalue:.2e}, residual {cert.constraint_residual:.2e}")

status, dec = certify.regular_decompose(A, cfg)
print(f"RD:   decomposition           = {status}, {len(dec.terms)} terms, "
      f"residual {dec.residual:.2e}")

# A found decomposition also yields an SOS Gram matrix for free: the outer
# products of its weighted monomial vectors satisfy the same constraints.
G = certify.decomposition_gram(dec)
back = certify.gram_to_tensor(G, A.order // 2, 4)
print(f"      decomposition Gram reconstructs A: {back.allclose(A, 1e-8)}\n")

# --- a PSD tensor that is not regular symmetric --------------------------

# The diagonal identity has a strictly positive form (it is sum x_i^2
# squared away from the sphere) yet represents no quantum state at all.
diag = st.make(2, 4, [((i, i), 1.0) for i in range(4)])
v = certify.classify(diag, cfg)
print(f"diagonal identity: {v.status} ({v.witness.kind})\n")

# --- refutation by negative point ----------------------------------------

psi = np.array([1, 0, 1]) / math.sqrt(2)
E = spinmap.density_to_tensor(spinmap.DensityMatrix(2, np.outer(psi, psi)))
val, point = certify.min_z_eig(E, cfg)
print(f"entangled Dicke state: form dips to {val:.4f} at x = {np.round(point, 4)}")
print(f"grid oracle agrees: {oracle.grid_min_full(E)[0]:.4f} (upper bound)\n")

# --- duality: PSD and decomposable cones pair nonnegatively --------------

report = certify.dual_pair_sample(200, cfg, seed=0, order=4)
print(f"duality sample: {report['count']} (PSD, CD) pairs at order "
      f"{report['order']}, min inner product {report['min_inner']:.3e} "
      f"(all nonnegative: {report['all_nonnegative']})")
