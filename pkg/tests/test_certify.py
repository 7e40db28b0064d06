import math

import numpy as np
import pytest

from spincones import certify as ct
from spincones import spinmap as sm
from spincones import symtensor as st

CFG = ct.SolverConfig(grid_size=300, starts=8, max_iter=1000)


def diag_identity():
    return st.make(2, 4, [((i, i), 1.0) for i in range(4)])


def entangled_tensor():
    # (|1,1> + |1,-1>)/sqrt(2): Dicke vector (1, 0, 1)/sqrt(2) at N=2
    psi = np.array([1, 0, 1]) / math.sqrt(2)
    rho = sm.DensityMatrix(2, np.outer(psi, psi.conj()))
    return sm.density_to_tensor(rho)


def random_label(rng):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return sm.CoherentLabel(math.acos(np.clip(v[2], -1, 1)),
                            math.atan2(v[1], v[0]) % (2 * math.pi))


def random_mixture_tensor(rng, N, terms=4):
    labels = [(rng.uniform(0.1, 1.0), random_label(rng)) for _ in range(terms)]
    return sm.classical_mixture(N, labels)[1]


def random_rotation(rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


class TestSolverConfig:
    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ct.SolverConfig(grid_size=0)
        with pytest.raises(ValueError):
            ct.SolverConfig(tau_dec=0.0)


class TestMinZEig:
    def test_identity(self):
        val, _ = ct.min_z_eig(diag_identity(), CFG)
        assert val == pytest.approx(1.0, abs=1e-8)

    def test_rank1_psd(self):
        val, _ = ct.min_z_eig(st.outer_power([1, 0, 0, 1], 2), CFG)
        assert -1e-10 <= val <= 1e-8

    def test_entangled_negative(self):
        val, point = ct.min_z_eig(entangled_tensor(), CFG)
        assert val == pytest.approx(-1.0, abs=1e-8)
        # the witness reproduces its value
        assert entangled_tensor().eval(point) == pytest.approx(val, abs=1e-12)

    def test_never_worse_than_grid(self):
        rng = np.random.default_rng(0)
        A = random_mixture_tensor(rng, 4)
        val, _ = ct.min_z_eig(A, CFG)
        grid = ct.unit_sphere_net(4, CFG.grid_size)
        assert val <= min(A.eval(x) for x in grid) + 1e-12


class TestRestrictedMin:
    def test_rank1_odd(self):
        val, _ = ct.restricted_min(st.outer_power([1, 0, 0, 1], 3), CFG)
        assert abs(val) <= 1e-8

    def test_classical_nonnegative(self):
        rng = np.random.default_rng(1)
        for N in (2, 3):
            val, _ = ct.restricted_min(random_mixture_tensor(rng, N), CFG)
            assert val >= -CFG.tol_psd

    def test_overlong_bloch_vector(self):
        A = st.make(1, 4, [((0,), 1.0), ((3,), 1.5)])
        val, nhat = ct.restricted_min(A, CFG)
        assert val == pytest.approx(-0.5, abs=1e-8)
        assert np.allclose(nhat, [0, 0, -1], atol=1e-6)


class TestSosCheck:
    def test_psd_matrix_is_own_gram(self):
        status, cert = ct.sos_check(diag_identity(), CFG)
        assert status == "Certified"
        assert np.allclose(cert.G, np.eye(4))

    def test_rank1_quartic(self):
        n = np.array([0.6, 0.0, 0.8])
        A = st.outer_power(np.concatenate(([1.0], n)), 4)
        status, cert = ct.sos_check(A, CFG)
        assert status == "Certified"
        assert cert.min_eigenvalue >= -CFG.tol_sos

    def test_classical_mixture_m4(self):
        rng = np.random.default_rng(2)
        A = random_mixture_tensor(rng, 4, terms=5)
        status, cert = ct.sos_check(A, CFG)
        assert status == "Certified"
        assert cert.constraint_residual <= CFG.tol_sos * 10

    def test_odd_order_rejected(self):
        with pytest.raises(ValueError):
            ct.sos_check(st.outer_power([1, 0, 0, 1], 3), CFG)

    def test_certificate_reconstructs_tensor(self):
        rng = np.random.default_rng(3)
        A = random_mixture_tensor(rng, 2)
        status, cert = ct.sos_check(A, CFG)
        assert status == "Certified"
        back = ct.gram_to_tensor(cert.G, cert.half_order, 4)
        assert back.allclose(A, 1e-7)


class TestDecompositionGram:
    def test_constraints_and_psd(self):
        rng = np.random.default_rng(4)
        A = random_mixture_tensor(rng, 4, terms=5)
        status, dec = ct.regular_decompose(A, CFG)
        assert status == "Found"
        G = ct.decomposition_gram(dec)
        assert np.linalg.eigvalsh(G).min() >= -1e-12
        back = ct.gram_to_tensor(G, A.order // 2, 4)
        assert back.allclose(A, 1e-10 * max(1.0, A.norm()))


class TestRegularDecompose:
    def test_single_coherent(self):
        status, dec = ct.regular_decompose(st.outer_power([1, 0, 0, 1], 2), CFG)
        assert status == "Found"
        assert len(dec.terms) == 1
        alpha, nhat = dec.terms[0]
        assert alpha == pytest.approx(1.0, abs=1e-8)
        assert np.allclose(nhat, [0, 0, 1], atol=1e-8)
        assert dec.residual <= 1e-10

    def test_antipodal_pair_weights(self):
        A = 0.5 * st.outer_power([1, 0, 0, 1.0], 2) \
            + 0.5 * st.outer_power([1, 0, 0, -1.0], 2)
        status, dec = ct.regular_decompose(A, CFG)
        assert status == "Found"
        from spincones.oracle import expand_decomposition
        assert expand_decomposition(dec).allclose(A, 1e-8)
        assert sum(a for a, _ in dec.terms) == pytest.approx(1.0, abs=1e-8)

    def test_entangled_not_found(self):
        status, dec = ct.regular_decompose(entangled_tensor(), CFG)
        assert status == "NotFound"

    def test_requires_regular_symmetric(self):
        with pytest.raises(ValueError, match="regular symmetric"):
            ct.regular_decompose(diag_identity(), CFG)

    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_random_mixtures_recovered(self, N):
        rng = np.random.default_rng(30 + N)
        A = random_mixture_tensor(rng, N)
        status, dec = ct.regular_decompose(A, CFG)
        assert status == "Found"
        assert dec.residual <= CFG.tau_dec
        assert len(dec.terms) <= (N + 1) ** 2 + 1


class TestCheckOddRegular:
    def test_single_atom(self):
        A = st.outer_power([1, 0, 0, 1], 3)
        dec = ct.RegularDecomposition(3, [(1.0, np.array([0, 0, 1.0]))], 0.0)
        assert ct.check_odd_regular(A, dec)

    def test_antipodal(self):
        A = 0.5 * st.outer_power([1, 0, 0, 1.0], 3) \
            + 0.5 * st.outer_power([1, 0, 0, -1.0], 3)
        dec = ct.RegularDecomposition(3, [(0.5, np.array([0, 0, 1.0])),
                                          (0.5, np.array([0, 0, -1.0]))], 0.0)
        assert ct.check_odd_regular(A, dec)

    def test_perturbed_row_fails(self):
        A = 0.5 * st.outer_power([1, 0, 0, 1.0], 3) \
            + 0.5 * st.outer_power([1, 0, 0, -1.0], 3)
        bad = A + st.make(3, 4, [((1, 2, 3), 0.1)])
        dec = ct.RegularDecomposition(3, [(0.5, np.array([0, 0, 1.0])),
                                          (0.5, np.array([0, 0, -1.0]))], 0.0)
        assert not ct.check_odd_regular(bad, dec)

    def test_parity_mismatch(self):
        dec = ct.RegularDecomposition(2, [(1.0, np.array([0, 0, 1.0]))], 0.0)
        with pytest.raises(ValueError):
            ct.check_odd_regular(st.outer_power([1, 0, 0, 1], 2), dec)


class TestClassify:
    def test_coherent_classical(self):
        A = sm.coherent_tensor(2, sm.CoherentLabel(math.pi / 4, 1.0))
        verdict = ct.classify(A, CFG)
        assert verdict.status == "Classical"
        assert len(verdict.certificate.terms) == 1

    def test_entangled_not_classical(self):
        verdict = ct.classify(entangled_tensor(), CFG)
        assert verdict.status == "NotClassical"
        assert verdict.witness.kind == "NegativePoint"
        assert verdict.witness.value < -1e-3

    def test_maximally_mixed_classical(self):
        A = sm.density_to_tensor(sm.DensityMatrix(2, np.eye(3) / 3))
        assert ct.classify(A, CFG).status == "Classical"

    def test_non_regular_symmetric(self):
        verdict = ct.classify(diag_identity(), CFG)
        assert verdict.status == "NotClassical"
        assert verdict.witness.kind == "NotRegularSymmetric"

    def test_scale_invariance(self):
        rng = np.random.default_rng(5)
        A = random_mixture_tensor(rng, 2)
        assert ct.classify(A, CFG).status == ct.classify(7.5 * A, CFG).status
        E = entangled_tensor()
        assert ct.classify(E, CFG).status == ct.classify(0.3 * E, CFG).status

    def test_rotation_invariance(self):
        rng = np.random.default_rng(6)
        R = random_rotation(rng)
        A = random_mixture_tensor(rng, 2, terms=2)
        assert ct.classify(A.rotate(R), CFG).status == "Classical"
        assert ct.classify(entangled_tensor().rotate(R), CFG).status == "NotClassical"

    def test_deterministic_json(self):
        rng = np.random.default_rng(7)
        A = random_mixture_tensor(rng, 3)
        assert ct.classify(A, CFG).to_json() == ct.classify(A, CFG).to_json()

    def test_verdict_schema(self):
        verdict = ct.classify(entangled_tensor(), CFG)
        doc = verdict.to_dict()
        assert doc["status"] == "NotClassical"
        assert all(set(s) == {"name", "outcome", "value"} for s in doc["stages"])
        assert set(doc["witness"]) == {"kind", "point", "value"}


class TestChainConsistency:
    def test_found_implies_psd_and_sos(self):
        rng = np.random.default_rng(8)
        for m in (2, 4):
            dec = _random_regular_dec(rng, m, 5)
            from spincones.oracle import expand_decomposition
            A = expand_decomposition(dec)
            val, _ = ct.min_z_eig(A, CFG)
            assert val >= -1e-6
            status, _ = ct.sos_check(A, CFG)
            assert status == "Certified"


def _random_regular_dec(rng, order, terms):
    out = []
    for _ in range(terms):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        out.append((float(rng.uniform(0.1, 1.0)), n))
    return ct.RegularDecomposition(order, out, 0.0)


class TestDualPairSample:
    @pytest.mark.parametrize("order", [2, 4])
    def test_all_nonnegative(self, order):
        report = ct.dual_pair_sample(40, CFG, seed=order, order=order)
        assert report["all_nonnegative"]
        assert report["min_inner"] >= -1e-8

    def test_odd_order_rejected(self):
        with pytest.raises(ValueError):
            ct.dual_pair_sample(5, CFG, order=3)


class TestHadamardClosure:
    @pytest.mark.parametrize("m", [2, 4])
    def test_cross_product_reconstruction(self, m):
        rng = np.random.default_rng(9)
        d1 = _random_regular_dec(rng, m, 2)
        d2 = _random_regular_dec(rng, m, 2)
        from spincones.oracle import expand_decomposition
        A = expand_decomposition(d1)
        B = expand_decomposition(d2)
        want = None
        for a1, n1 in d1.terms:
            for a2, n2 in d2.terms:
                u = np.concatenate(([1.0], n1)) * np.concatenate(([1.0], n2))
                t = a1 * a2 * st.outer_power(u, m)
                want = t if want is None else want + t
        assert A.hadamard(B).allclose(want, 1e-8)
