"""Cone-membership pipeline for regular symmetric tensors.

Stages, in the order used by :func:`classify`:

* regular symmetry of the entries (structural necessary condition),
* minimum Z-eigenvalue (PSD test, even order),
* minimum of the form over regular vectors (1, nhat) (both parities),
* SOS Gram feasibility by alternating projections (advisory, even order),
* regular decomposition search: nonnegative least squares over a sphere
  dictionary followed by local Gauss-Newton refinement.

All solvers are heuristic: a negative point is a hard witness of
non-classicality, a found decomposition is a hard certificate of
classicality, and everything else stays Unknown.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares, nnls
from scipy.special import ndtri
from scipy.stats import qmc

from .symtensor import SymTensor, canonical_indices, multiplicity, outer_power

__all__ = [
    "SolverConfig",
    "RegularDecomposition",
    "GramCertificate",
    "Witness",
    "Verdict",
    "min_z_eig",
    "restricted_min",
    "sos_check",
    "regular_decompose",
    "check_odd_regular",
    "classify",
    "dual_pair_sample",
    "fibonacci_sphere",
    "caratheodory_bound",
    "gram_to_tensor",
    "decomposition_gram",
]


@dataclass
class SolverConfig:
    grid_size: int = 400
    starts: int = 64
    max_iter: int = 5000
    tol_psd: float = 1e-8
    tol_sos: float = 1e-8
    tau_dec: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if min(self.grid_size, self.starts, self.max_iter) <= 0:
            raise ValueError("grid_size, starts and max_iter must be positive")
        if min(self.tol_psd, self.tol_sos, self.tau_dec) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class RegularDecomposition:
    """Weighted sum of rank-1 tensors over normalized regular vectors.

    ``terms`` is a list of (alpha > 0, unit nhat); the encoded tensor is
    sum_k alpha_k (1, nhat_k)^{otimes order}.  ``residual`` is the relative
    Frobenius distance to the tensor being decomposed.
    """

    order: int
    terms: list
    residual: float

    def __post_init__(self):
        for alpha, nhat in self.terms:
            if alpha <= 0:
                raise ValueError("weights must be positive")
            if abs(np.linalg.norm(nhat) - 1.0) > 1e-12:
                raise ValueError("directions must be unit vectors")

    def to_dict(self):
        return {
            "terms": [{"alpha": float(a), "nhat": [float(c) for c in n]}
                      for a, n in self.terms],
            "residual": float(self.residual),
        }


@dataclass
class GramCertificate:
    """PSD Gram matrix over the half-order monomial basis witnessing SOS."""

    half_order: int
    basis: list
    G: np.ndarray
    constraint_residual: float
    min_eigenvalue: float


@dataclass
class Witness:
    """Reproducible evidence of non-classicality."""

    kind: str  # NotRegularSymmetric | NegativePoint | NegativeRegularPoint
    point: list
    value: float

    def to_dict(self):
        return {"kind": self.kind,
                "point": [float(p) for p in self.point],
                "value": float(self.value)}


@dataclass
class Verdict:
    status: str  # Classical | NotClassical | Unknown
    stages: list = field(default_factory=list)
    certificate: RegularDecomposition | None = None
    witness: Witness | None = None

    def to_dict(self):
        d = {
            "status": self.status,
            "stages": [{"name": n, "outcome": o, "value": float(v)}
                       for n, o, v in self.stages],
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def caratheodory_bound(order, dim):
    """Term-count cap C(n+m+2, m) + 1 for decompositions in S_{m,n+1}."""
    n = dim - 1
    return math.comb(n + order + 2, order) + 1


# ---------------------------------------------------------------------------
# deterministic point sets


def fibonacci_sphere(count):
    """Near-uniform deterministic grid of ``count`` directions on S^2."""
    i = np.arange(count)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def unit_sphere_net(dim, count):
    """Deterministic low-discrepancy net on the unit sphere in R^dim."""
    if dim == 3:
        return fibonacci_sphere(count)
    h = qmc.Halton(d=dim, scramble=False)
    h.fast_forward(1)  # skip the all-zero point
    u = h.random(count)
    g = ndtri(np.clip(u, 1e-12, 1 - 1e-12))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# sphere minimization


def _minimize_on_sphere(f, grad, x0, max_iter, gtol):
    """Projected gradient descent with Armijo backtracking on the unit sphere."""
    x = np.asarray(x0, dtype=float)
    x = x / np.linalg.norm(x)
    fx = f(x)
    stalls = 0
    for _ in range(max_iter):
        g = grad(x)
        g = g - (g @ x) * x
        gn = np.linalg.norm(g)
        if gn <= gtol * (1.0 + abs(fx)):
            break
        t = 1.0 / max(1.0, gn)
        moved = False
        while t > 1e-16:
            y = x - t * g
            y = y / np.linalg.norm(y)
            fy = f(y)
            if fy <= fx - 0.25 * t * gn * gn:
                moved = True
                break
            t *= 0.5
        if not moved:
            break
        # flat progress counts as converged; avoids zigzag exhaustion
        stalls = stalls + 1 if fx - fy <= 1e-13 * (1.0 + abs(fx)) else 0
        x, fx = y, fy
        if stalls >= 3:
            break
    return fx, x


def _multistart_min(f, grad, dim, cfg, grid_points):
    """Best local minimum from grid, axis and seeded random starts."""
    grid_vals = np.array([f(p) for p in grid_points])
    k = int(np.argmin(grid_vals))
    best_val, best_x = grid_vals[k], grid_points[k].copy()

    starts = [grid_points[k]]
    for i in range(dim):
        for s in (1.0, -1.0):
            e = np.zeros(dim)
            e[i] = s
            starts.append(e)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.starts):
        v = rng.normal(size=dim)
        starts.append(v / np.linalg.norm(v))

    gtol = cfg.tol_psd * 1e-2
    for x0 in starts:
        val, x = _minimize_on_sphere(f, grad, x0, cfg.max_iter, gtol)
        if val < best_val:
            best_val, best_x = val, x
    return float(best_val), best_x


def min_z_eig(A, cfg=None):
    """Heuristic smallest Z-eigenvalue: min of the form over the unit sphere.

    Returns (value, argmin).  For odd order the sphere minimum is just the
    negated maximum (x -> -x antisymmetry); the call is permitted anyway.
    A negative value beyond tolerance refutes PSD membership.
    """
    cfg = cfg or SolverConfig()
    grid = unit_sphere_net(A.dim, cfg.grid_size)
    return _multistart_min(A.eval, A.gradient, A.dim, cfg, grid)


def restricted_min(A, cfg=None):
    """Heuristic min of eval(A, (1, nhat)) over unit directions nhat.

    A regularly decomposable tensor evaluates to
    sum_k alpha_k (1 + nhat_k . nhat)^m >= 0 at every regular point, so a
    negative value refutes regular decomposability at either parity.
    """
    cfg = cfg or SolverConfig()
    n = A.dim - 1

    def f(nh):
        return A.eval(np.concatenate(([1.0], nh)))

    def grad(nh):
        return A.gradient(np.concatenate(([1.0], nh)))[1:]

    if n == 1:
        vals = [(f(np.array([s])), np.array([s])) for s in (1.0, -1.0)]
        return min(vals, key=lambda t: t[0])
    grid = unit_sphere_net(n, cfg.grid_size)
    return _multistart_min(f, grad, n, cfg, grid)


# ---------------------------------------------------------------------------
# SOS feasibility by alternating projections


def _gram_layout(order, dim):
    """Monomial basis and the partition of Gram cells by product multiset."""
    l = order // 2
    basis = canonical_indices(l, dim)
    M = len(basis)
    mus = canonical_indices(order, dim)
    mu_id = {mu: g for g, mu in enumerate(mus)}
    gid = np.empty(M * M, dtype=int)
    for p in range(M):
        for q in range(M):
            gid[p * M + q] = mu_id[tuple(sorted(basis[p] + basis[q]))]
    counts = np.bincount(gid, minlength=len(mus)).astype(float)
    return basis, mus, gid, counts


def sos_check(A, cfg=None):
    """Search for a PSD Gram certificate of the SOS property.

    Alternates the exact least-squares projection onto the matching
    constraints (each constraint group partitions the Gram cells, so the
    projection is a uniform shift per group) with projection onto the PSD
    cone (eigenvalue clipping).  Returns ("Certified", cert) on success;
    "NotCertified" is inconclusive, since alternating projections cannot
    prove infeasibility.
    """
    if A.order % 2:
        raise ValueError("SOS check requires even order")
    cfg = cfg or SolverConfig()
    basis, mus, gid, counts = _gram_layout(A.order, A.dim)
    M = len(basis)
    t_arr = np.array([multiplicity(mu) * A.entry(mu) for mu in mus])
    scale = max(1.0, np.abs(t_arr).max())

    G = np.zeros((M, M))
    for _ in range(cfg.max_iter):
        flat = G.ravel().copy()
        sums = np.bincount(gid, weights=flat, minlength=len(mus))
        flat += ((t_arr - sums) / counts)[gid]
        Ga = flat.reshape(M, M)
        w, V = np.linalg.eigh(Ga)
        G = (V * np.clip(w, 0.0, None)) @ V.T
        G = (G + G.T) / 2
        res = np.abs(np.bincount(gid, weights=G.ravel(),
                                 minlength=len(mus)) - t_arr).max()
        if res <= cfg.tol_sos * scale:
            cert = GramCertificate(A.order // 2, basis, G, float(res),
                                   float(np.linalg.eigvalsh(G).min()))
            return "Certified", cert
    # Alternating projections crawl when the feasible Grams sit on (or very
    # near) a face of the PSD cone; fall back to maximizing the smallest
    # Gram eigenvalue over the affine constraint set with an SDP solver.
    G = _sos_sdp(t_arr, gid, counts, M, len(mus))
    if G is not None:
        # the solver leaves eigenvalue error ~1e-8 at extreme rays, so
        # re-fit a low-rank factor: B B^T is then PSD by construction and
        # only the constraint residual is in question.
        G, res = _rank_polish(G, t_arr, gid, len(mus), M)
        lo = float(np.linalg.eigvalsh(G).min())
        if res <= cfg.tol_sos * scale and lo >= -cfg.tol_sos:
            return "Certified", GramCertificate(A.order // 2, basis, G,
                                                float(res), lo)
    return "NotCertified", None


def _rank_polish(Ga, t_arr, gid, n_groups, M):
    """Refit G = B B^T at the numerical rank of Ga; returns (G, residual)."""
    w, V = np.linalg.eigh(Ga)
    r = max(1, int(np.sum(w > 1e-6 * max(1e-12, w.max()))))

    def violation(G):
        res = np.abs(np.bincount(gid, weights=G.ravel(),
                                 minlength=n_groups) - t_arr).max()
        return float(res), max(res, -np.linalg.eigvalsh(G).min())

    best_res, best_vio = violation(Ga)
    best = Ga
    for rr in (r, min(r + 1, M)):
        B0 = V[:, M - rr:] * np.sqrt(np.clip(w[M - rr:], 0.0, None))

        def resid(b, rr=rr):
            B = b.reshape(M, rr)
            return np.bincount(gid, weights=(B @ B.T).ravel(),
                               minlength=n_groups) - t_arr

        method = "lm" if n_groups >= M * rr else "trf"
        sol = least_squares(resid, B0.ravel(), method=method, xtol=1e-14,
                            ftol=1e-14, gtol=1e-14, max_nfev=500)
        B = sol.x.reshape(M, rr)
        res = float(np.abs(sol.fun).max())
        if res < best_vio:  # B B^T has no negative eigenvalues
            best, best_res, best_vio = B @ B.T, res, res
        if best_vio <= 1e-12:
            break
    return best, best_res


def _sos_sdp(t_arr, gid, counts, M, n_groups):
    """Max-min-eigenvalue SDP over the Gram constraint set; None on failure."""
    try:
        import cvxpy as cp
    except ImportError:  # pragma: no cover
        return None
    G = cp.Variable((M, M), symmetric=True)
    lam = cp.Variable()
    mask = gid.reshape(M, M)
    cons = [G - lam * np.eye(M) >> 0]
    cons += [cp.sum(cp.multiply((mask == g).astype(float), G)) == t_arr[g]
             for g in range(n_groups)]
    try:
        with warnings.catch_warnings():
            # moderate solver accuracy is fine: _rank_polish refits the result
            warnings.simplefilter("ignore", UserWarning)
            cp.Problem(cp.Maximize(lam), cons).solve(solver="CLARABEL")
    except cp.error.SolverError:  # pragma: no cover
        return None
    if G.value is None:
        return None
    # exact least-squares re-projection onto the constraints
    flat = np.asarray(G.value).ravel().copy()
    sums = np.bincount(gid, weights=flat, minlength=n_groups)
    flat += ((t_arr - sums) / counts)[gid]
    Ga = flat.reshape(M, M)
    return (Ga + Ga.T) / 2


def gram_to_tensor(G, half_order, dim):
    """Tensor whose form is z(x)^T G z(x) over the plain monomial basis."""
    basis, mus, gid, _ = _gram_layout(2 * half_order, dim)
    sums = np.bincount(gid, weights=np.asarray(G, dtype=float).ravel(),
                       minlength=len(mus))
    entries = {}
    for g, mu in enumerate(mus):
        v = sums[g] / multiplicity(mu)
        if v != 0.0:
            entries[mu] = v
    return SymTensor(2 * half_order, dim, entries)


def decomposition_gram(dec, dim=4):
    """Gram matrix sum_k alpha_k d(v_k) d(v_k)^T built from a decomposition.

    d(v)_beta = mult(beta) v^beta, so the matching constraints hold exactly
    and the matrix is PSD by construction.  Used as the dual route to
    sos_check on found decompositions.
    """
    if dec.order % 2:
        raise ValueError("Gram construction requires even order")
    basis = canonical_indices(dec.order // 2, dim)
    mult_b = np.array([multiplicity(b) for b in basis], dtype=float)
    G = np.zeros((len(basis), len(basis)))
    for alpha, nhat in dec.terms:
        v = np.concatenate(([1.0], nhat))
        d = mult_b * np.array([np.prod(v[list(b)]) for b in basis])
        G += alpha * np.outer(d, d)
    return G


# ---------------------------------------------------------------------------
# regular decomposition search


def _atom_rows(idx_mat, dirs):
    """Canonical-entry vectors of (1, nhat)^{otimes m} for each direction."""
    V = np.column_stack([np.ones(len(dirs)), dirs])
    return np.prod(V[:, idx_mat], axis=2)  # (n_dirs, n_entries)


def _model(idx_mat, w, alphas, dirs):
    return w * (alphas @ _atom_rows(idx_mat, dirs))


def _refine(idx_mat, w, target, alphas, dirs, max_nfev=None):
    """Joint local refinement of weights and (unnormalized) directions."""
    r = len(alphas)
    n = dirs.shape[1]

    def unpack(p):
        a = p[:r]
        W = p[r:].reshape(r, n)
        norms = np.linalg.norm(W, axis=1)
        norms[norms < 1e-12] = 1.0
        return a, W / norms[:, None]

    def resid(p):
        a, d = unpack(p)
        return _model(idx_mat, w, a, d) - target

    x0 = np.concatenate([alphas, dirs.ravel()])
    lb = np.concatenate([np.zeros(r), np.full(r * n, -np.inf)])
    ub = np.full(r * (n + 1), np.inf)
    sol = least_squares(resid, x0, bounds=(lb, ub), method="trf",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15,
                        max_nfev=max_nfev)
    a, d = unpack(sol.x)
    return a, d, float(np.linalg.norm(sol.fun))


def _merge_atoms(alphas, dirs, angle_tol=1e-3):
    """Merge directions closer than angle_tol radians, summing weights."""
    order = np.argsort(alphas)[::-1]
    out_a, out_d = [], []
    for k in order:
        merged = False
        for j, dj in enumerate(out_d):
            if np.arccos(np.clip(dirs[k] @ dj, -1.0, 1.0)) < angle_tol:
                # weighted mean keeps the merged direction near both atoms
                d = out_a[j] * dj + alphas[k] * dirs[k]
                out_d[j] = d / np.linalg.norm(d)
                out_a[j] += alphas[k]
                merged = True
                break
        if not merged:
            out_a.append(alphas[k])
            out_d.append(dirs[k].copy())
    return np.array(out_a), np.array(out_d)


def regular_decompose(A, cfg=None):
    """Fit A ~ sum_k alpha_k (1, nhat_k)^{otimes m} with alpha_k > 0.

    Phase 1 solves nonnegative least squares over a deterministic sphere
    dictionary (multiplicity-weighted Frobenius metric); phase 2 prunes
    negligible atoms and refines weights and directions jointly; a final
    pass merges near-duplicate atoms and greedily drops atoms that the
    remaining ones can absorb, which keeps certificates minimal.

    Returns ("Found", dec) iff the relative residual is at most
    cfg.tau_dec; ("NotFound", None) is inconclusive.
    """
    cfg = cfg or SolverConfig()
    m, n = A.order, A.dim - 1
    scale0 = max(1.0, abs(A.entry((0,) * m)))
    if not A.is_regular_symmetric(1e-8 * scale0):
        raise ValueError("tensor is not regular symmetric")

    entries = canonical_indices(m, A.dim)
    idx_mat = np.array(entries)
    w = np.sqrt([multiplicity(e) for e in entries])
    target = w * np.array([A.entry(e) for e in entries])
    anorm = np.linalg.norm(target)
    if anorm < 1e-14:
        return "Found", RegularDecomposition(m, [], 0.0)

    dirs = unit_sphere_net(n, cfg.grid_size)
    Phi = _atom_rows(idx_mat, dirs).T  # (n_entries, n_dirs)
    alphas, _ = nnls(Phi, target)

    keep = alphas > 1e-12 * anorm
    if not np.any(keep):
        return "NotFound", None
    alphas, atom_dirs = alphas[keep], dirs[keep]

    alphas, atom_dirs, rnorm = _refine(idx_mat, w, target, alphas, atom_dirs)
    keep = alphas > 1e-12 * anorm
    alphas, atom_dirs = alphas[keep], atom_dirs[keep]
    alphas, atom_dirs = _merge_atoms(alphas, atom_dirs)
    if len(alphas) == 0:
        return "NotFound", None
    alphas, atom_dirs, rnorm = _refine(idx_mat, w, target, alphas, atom_dirs)

    # Greedy sparsification: drop the lightest atom while the rest still fit.
    while len(alphas) > 1:
        k = int(np.argmin(alphas))
        mask = np.arange(len(alphas)) != k
        a_try, d_try, r_try = _refine(idx_mat, w, target,
                                      alphas[mask], atom_dirs[mask])
        if r_try <= 0.5 * cfg.tau_dec * anorm:
            alphas, atom_dirs, rnorm = a_try, d_try, r_try
        else:
            break

    keep = alphas > 1e-12 * anorm
    alphas, atom_dirs = alphas[keep], atom_dirs[keep]
    rel = rnorm / anorm
    if rel > cfg.tau_dec or len(alphas) == 0:
        return "NotFound", None
    if len(alphas) > caratheodory_bound(m, A.dim):
        raise RuntimeError("decomposition exceeds the Caratheodory bound")
    terms = [(float(a), d / np.linalg.norm(d))
             for a, d in zip(alphas, atom_dirs)]
    return "Found", RegularDecomposition(m, terms, float(rel))


def check_odd_regular(A, dec, tol=1e-8):
    """Verify the odd-order row-induction identity against a decomposition.

    For m = 2l+1 and every i = 1..n, the i-th row tensor must equal
    sum_k alpha_k nhat_{k,i} (1, nhat_k)^{otimes 2l}.  This is independent
    verification of the structure the full-tensor fit implies.
    """
    if A.order % 2 == 0 or dec.order != A.order:
        raise ValueError("expected an odd-order tensor with a matching decomposition")
    m = A.order
    entries = canonical_indices(m - 1, A.dim)
    idx_mat = np.array(entries) if m > 1 else np.zeros((1, 0), dtype=int)
    w = np.sqrt([multiplicity(e) for e in entries])
    scale = max(1.0, A.norm())
    for i in range(1, A.dim):
        row = A.row_tensor(i)
        row_vec = w * np.array([row.entry(e) for e in entries])
        model = np.zeros(len(entries))
        for alpha, nhat in dec.terms:
            v = np.concatenate(([1.0], nhat))
            atoms = np.array([np.prod(v[list(e)]) for e in entries])
            model += alpha * nhat[i - 1] * atoms
        if np.linalg.norm(row_vec - w * model) > tol * scale:
            return False
    return True


# ---------------------------------------------------------------------------
# pipeline


def classify(A, cfg=None):
    """Full classicality cascade; deterministic given cfg.seed.

    Only explicit witnesses decide NotClassical and only a found
    decomposition decides Classical; solver failures leave the verdict
    Unknown.
    """
    cfg = cfg or SolverConfig()
    stages = []

    viol = A.regular_symmetry_violation()
    scale0 = max(1.0, abs(A.entry((0,) * A.order)))
    if viol > 1e-10 * scale0:
        stages.append(("regular_symmetric", "fail", viol))
        worst = _worst_regsym_multiset(A)
        return Verdict("NotClassical", stages,
                       witness=Witness("NotRegularSymmetric", list(worst), viol))
    stages.append(("regular_symmetric", "pass", viol))

    even = A.order % 2 == 0
    if even:
        val, point = min_z_eig(A, cfg)
        if val < -cfg.tol_psd:
            stages.append(("min_z_eig", "negative", val))
            return Verdict("NotClassical", stages,
                           witness=Witness("NegativePoint", list(point), val))
        stages.append(("min_z_eig", "nonnegative", val))

    val, nhat = restricted_min(A, cfg)
    if val < -cfg.tol_psd:
        stages.append(("restricted_min", "negative", val))
        point = np.concatenate(([1.0], nhat))
        return Verdict("NotClassical", stages,
                       witness=Witness("NegativeRegularPoint", list(point), val))
    stages.append(("restricted_min", "nonnegative", val))

    if even:
        # Advisory only: NotCertified cannot decide non-classicality.
        status, cert = sos_check(A, cfg)
        stages.append(("sos", status,
                       cert.constraint_residual if cert else math.nan))

    status, dec = regular_decompose(A, cfg)
    if status == "Found":
        stages.append(("regular_decompose", "Found", dec.residual))
        if not even and A.order >= 1:
            ok = check_odd_regular(A, dec)
            stages.append(("odd_row_induction", "pass" if ok else "fail",
                           0.0 if ok else 1.0))
            if not ok:
                return Verdict("Unknown", stages)
        return Verdict("Classical", stages, certificate=dec)
    stages.append(("regular_decompose", "NotFound", math.nan))
    return Verdict("Unknown", stages)


def _worst_regsym_multiset(A):
    worst, worst_j = -1.0, ()
    for jdx in canonical_indices(A.order - 2, A.dim):
        lhs = A.entry((0, 0) + jdx)
        rhs = sum(A.entry((i, i) + jdx) for i in range(1, A.dim))
        if abs(lhs - rhs) > worst:
            worst, worst_j = abs(lhs - rhs), jdx
    return worst_j


def dual_pair_sample(count, cfg=None, seed=0, order=2, dim=4):
    """Sampled check of PSD/CD cone duality at even order.

    Generates ``count`` random (PSD-constructed, CD-constructed) tensor
    pairs and returns a report with the minimum observed inner product;
    duality predicts it is nonnegative up to roundoff.
    """
    if order % 2:
        raise ValueError("duality holds at even order")
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(seed)
    basis = canonical_indices(order // 2, dim)
    M = len(basis)
    min_inner, pairs = math.inf, []
    for _ in range(count):
        # CD side: random sum of rank-1 terms, sometimes regular atoms.
        r = int(rng.integers(1, 6))
        vs = rng.normal(size=(r, dim))
        if rng.random() < 0.5:
            nh = vs[:, 1:] / np.linalg.norm(vs[:, 1:], axis=1, keepdims=True)
            vs = np.column_stack([np.ones(r), nh]) * rng.uniform(0.4, 1.5, size=(r, 1))
        cd = None
        for v in vs:
            t = outer_power(v, order)
            cd = t if cd is None else cd + t
        # PSD side: SOS construction from a random PSD Gram matrix.
        B = rng.normal(size=(M, M))
        psd = gram_to_tensor(B.T @ B, order // 2, dim)
        ip = psd.inner(cd)
        pairs.append(ip)
        min_inner = min(min_inner, ip)
    return {"count": count, "order": order, "min_inner": float(min_inner),
            "all_nonnegative": bool(min_inner >= -1e-8)}
