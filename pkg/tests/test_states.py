import numpy as np
import pytest

from lcstates import (DensityMatrix, InvariantError, PureState, SystemShape,
                      basis_state, canonical_state, deterministic_eigh,
                      distance, ghz_state, max_entangled, partial_trace,
                      purify, schmidt_decompose, tensor_product, w_state,
                      z_mixture)
from conftest import random_density, random_pure, random_unitary

Q1 = SystemShape((2,))
Q3 = SystemShape((2, 2, 2))


class TestInvariants:
    def test_shape_validation(self):
        with pytest.raises(InvariantError):
            SystemShape(())
        with pytest.raises(InvariantError):
            SystemShape((2, 0))
        assert SystemShape((2, 3, 4)).total_dim == 24

    def test_pure_norm_enforced(self):
        with pytest.raises(InvariantError):
            PureState(Q1, np.array([1.0, 1.0]))

    def test_density_validation(self):
        with pytest.raises(InvariantError):
            DensityMatrix(Q1, np.array([[0.5, 0.5j], [0.5j, 0.5]]))  # not Hermitian
        with pytest.raises(InvariantError):
            DensityMatrix(Q1, np.array([[1.5, 0], [0, -0.5]]))       # not PSD
        with pytest.raises(InvariantError):
            DensityMatrix(Q1, np.eye(2))                             # trace 2

    def test_states_immutable(self):
        psi = ghz_state()
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0


class TestTensorProduct:
    def test_basis_case(self):
        zero = basis_state(Q1, 0)
        prod = tensor_product(zero, zero)
        assert np.allclose(prod.amplitudes, [1, 0, 0, 0])

    def test_rebuilds_ghz(self):
        zero = basis_state(Q1, 0)
        one = basis_state(Q1, 1)
        v000 = tensor_product(tensor_product(zero, zero), zero).amplitudes
        v111 = tensor_product(tensor_product(one, one), one).amplitudes
        rebuilt = (v000 + v111) / np.sqrt(2)
        assert np.allclose(rebuilt, ghz_state().amplitudes, atol=1e-12)

    def test_dimension_arithmetic(self, rng):
        for dims_a, dims_b in [((2,), (3,)), ((2, 3), (4,)), ((2, 2), (2, 3))]:
            a = random_pure(SystemShape(dims_a), rng)
            b = random_pure(SystemShape(dims_b), rng)
            assert tensor_product(a, b).shape.total_dim == \
                a.shape.total_dim * b.shape.total_dim

    def test_mixed_kinds_rejected(self, rng):
        with pytest.raises(InvariantError):
            tensor_product(ghz_state(), z_mixture(0.5))

    def test_associative(self, rng):
        a = random_pure(SystemShape((2,)), rng)
        b = random_pure(SystemShape((3,)), rng)
        c = random_pure(SystemShape((2,)), rng)
        lhs = tensor_product(tensor_product(a, b), c)
        rhs = tensor_product(a, tensor_product(b, c))
        assert np.max(np.abs(lhs.amplitudes - rhs.amplitudes)) < 1e-12


class TestPartialTrace:
    def test_ghz_single_party(self):
        # oracle: direct index summation over the 8 amplitudes
        amps = ghz_state().amplitudes
        expect = np.zeros((2, 2), dtype=complex)
        for i in range(2):
            for ip in range(2):
                for j in range(2):
                    for k in range(2):
                        expect[i, ip] += amps[4 * i + 2 * j + k] * \
                            np.conj(amps[4 * ip + 2 * j + k])
        got = partial_trace(ghz_state().density(), {0})
        assert np.allclose(got.entries, expect, atol=1e-12)
        assert np.allclose(got.entries, np.eye(2) / 2, atol=1e-12)

    def test_product_state_pure_marginal(self, rng):
        a = random_pure(SystemShape((2,)), rng)
        b = random_pure(SystemShape((3,)), rng)
        rho = tensor_product(a, b).density()
        for keep in ({0}, {1}):
            marg = partial_trace(rho, keep)
            assert abs(marg.purity() - 1.0) < 1e-9

    def test_trace_preserved(self, rng):
        for _ in range(100):
            rho = random_density(SystemShape((2, 3)), rng)
            out = partial_trace(rho, {1})
            assert abs(np.trace(out.entries).real - 1.0) < 1e-12

    def test_marginal_of_product(self, rng):
        a = random_density(SystemShape((2, 2)), rng)
        b = random_density(SystemShape((3,)), rng)
        marg = partial_trace(tensor_product(a, b), {0, 1})
        assert np.max(np.abs(marg.entries - a.entries)) < 1e-10

    def test_errors(self):
        rho = ghz_state().density()
        with pytest.raises(InvariantError):
            partial_trace(rho, set())
        with pytest.raises(InvariantError):
            partial_trace(rho, {3})


class TestDistance:
    def test_identity(self):
        rho = z_mixture(0.4)
        assert distance("trace", rho, rho) == pytest.approx(0, abs=1e-12)

    def test_orthogonal_pure(self):
        a = basis_state(Q1, 0).density()
        b = basis_state(Q1, 1).density()
        assert distance("trace", a, b) == pytest.approx(1, abs=1e-12)

    def test_w_ghz_orthogonal(self):
        # oracle: direct amplitude inner product vanishes
        assert abs(np.vdot(w_state().amplitudes, ghz_state().amplitudes)) == 0
        assert distance("trace", w_state().density(), ghz_state().density()) \
            == pytest.approx(1, abs=1e-9)

    def test_fidelity_endpoints(self):
        rho = z_mixture(0.2)
        assert distance("fidelity", rho, rho) == pytest.approx(1, abs=1e-9)
        a = basis_state(Q1, 0).density()
        b = basis_state(Q1, 1).density()
        assert distance("fidelity", a, b) == pytest.approx(0, abs=1e-12)

    def test_metric_properties(self, rng):
        shape = SystemShape((2, 2))
        for _ in range(50):
            a, b, c = (random_density(shape, rng) for _ in range(3))
            dab = distance("trace", a, b)
            assert abs(dab - distance("trace", b, a)) < 1e-9
            assert dab <= distance("trace", a, c) + distance("trace", c, b) + 1e-9

    def test_shape_mismatch(self):
        with pytest.raises(InvariantError):
            distance("trace", z_mixture(0.5), max_entangled(2).density())

    def test_unknown_metric(self):
        with pytest.raises(InvariantError):
            distance("bures", z_mixture(0.5), z_mixture(0.5))


class TestSchmidt:
    def test_max_entangled(self):
        sf = schmidt_decompose(max_entangled(2), ((0,), (1,)))
        assert np.allclose(sf.coefficients, [1 / np.sqrt(2)] * 2, atol=1e-12)

    def test_product_rank_one(self, rng):
        a = random_pure(SystemShape((2,)), rng)
        b = random_pure(SystemShape((3,)), rng)
        sf = schmidt_decompose(tensor_product(a, b), ((0,), (1,)))
        assert sf.rank() == 1
        assert sf.coefficients[0] == pytest.approx(1, abs=1e-12)

    def test_ghz_cut(self):
        # oracle: reshape amplitudes to 2x4 and take singular values directly
        m = ghz_state().amplitudes.reshape(2, 4)
        sv = np.linalg.svd(m, compute_uv=False)
        sf = schmidt_decompose(ghz_state(), ((0,), (1, 2)))
        assert np.allclose(sf.coefficients, sv, atol=1e-12)
        assert np.allclose(sf.coefficients, [1 / np.sqrt(2)] * 2, atol=1e-12)

    def test_reconstruction(self, rng):
        psi = random_pure(SystemShape((2, 3, 2)), rng)
        cut = ((0, 2), (1,))
        sf = schmidt_decompose(psi, cut)
        # rebuild in cut order, then undo the permutation
        m = sum(c * np.outer(sf.left_basis[:, i], sf.right_basis[:, i])
                for i, c in enumerate(sf.coefficients))
        t = m.reshape(2, 2, 3)                      # (party0, party2, party1)
        rebuilt = np.transpose(t, (0, 2, 1)).reshape(-1)
        assert np.max(np.abs(rebuilt - psi.amplitudes)) < 1e-9
        assert abs(np.sum(sf.coefficients ** 2) - 1) < 1e-9

    def test_local_unitary_invariance(self, rng):
        psi = random_pure(SystemShape((2, 2)), rng)
        base = schmidt_decompose(psi, ((0,), (1,))).coefficients
        for _ in range(20):
            u = random_unitary(2, rng)
            rotated = PureState(psi.shape,
                                np.kron(u, np.eye(2)) @ psi.amplitudes)
            got = schmidt_decompose(rotated, ((0,), (1,))).coefficients
            assert np.max(np.abs(got - base)) < 1e-9

    def test_invalid_cut(self):
        with pytest.raises(InvariantError):
            schmidt_decompose(ghz_state(), ((0,), (1,)))   # party 2 missing
        with pytest.raises(InvariantError):
            schmidt_decompose(ghz_state(), ((0, 1, 2), ()))


class TestCanonicalStates:
    def test_w_amplitudes(self):
        amps = w_state().amplitudes
        assert np.allclose(amps[[1, 2, 4]], 1 / np.sqrt(3), atol=1e-12)
        assert np.allclose(amps[[0, 3, 5, 6, 7]], 0, atol=1e-12)

    def test_ghz_amplitudes(self):
        amps = ghz_state().amplitudes
        assert np.allclose(amps[[0, 7]], 1 / np.sqrt(2), atol=1e-12)
        assert np.allclose(amps[1:7], 0, atol=1e-12)

    def test_max_entangled_2(self):
        amps = max_entangled(2).amplitudes
        assert np.allclose(amps[[0, 3]], 1 / np.sqrt(2), atol=1e-12)
        assert np.allclose(amps[[1, 2]], 0, atol=1e-12)

    def test_dispatcher(self):
        assert canonical_state("ghz", n=4).shape.local_dims == (2, 2, 2, 2)
        with pytest.raises(Exception):
            canonical_state("w", n=4)


class TestZMixture:
    def test_endpoints(self):
        assert np.allclose(z_mixture(0.0).entries,
                           ghz_state().density().entries, atol=1e-12)
        assert np.allclose(z_mixture(1.0).entries,
                           w_state().density().entries, atol=1e-12)

    def test_spectrum(self):
        # W and GHZ are orthogonal, so the spectrum is exactly {p, 1-p, 0...}
        w = np.linalg.eigvalsh(z_mixture(0.3).entries)
        assert np.allclose(sorted(w)[-2:], [0.3, 0.7], atol=1e-12)
        assert np.allclose(sorted(w)[:-2], 0, atol=1e-12)

    def test_range_check(self):
        for bad in (-0.1, 1.1):
            with pytest.raises(InvariantError):
                z_mixture(bad)


class TestPurify:
    def test_z_mixture_form(self):
        p = 0.7
        psi = purify(z_mixture(p), (2,))
        expect = np.sqrt(p) * np.kron(w_state().amplitudes, [1, 0]) \
            + np.sqrt(1 - p) * np.kron(ghz_state().amplitudes, [0, 1])
        fid = abs(np.vdot(expect, psi.amplitudes))
        assert fid == pytest.approx(1, abs=1e-9)

    def test_pure_input(self, rng):
        psi = random_pure(Q3, rng)
        pur = purify(psi.density(), (2,))
        expect = np.kron(psi.amplitudes, [1, 0])
        assert abs(abs(np.vdot(expect, pur.amplitudes)) - 1) < 1e-9

    def test_roundtrip_random(self, rng):
        for _ in range(100):
            rho = random_density(Q3, rng)
            pur = purify(rho, (2, 2, 2))
            back = partial_trace(pur.density(), {0, 1, 2})
            assert np.max(np.abs(back.entries - rho.entries)) < 1e-10

    def test_ancilla_too_small(self, rng):
        rho = random_density(SystemShape((2, 2)), rng)  # rank 4
        with pytest.raises(InvariantError):
            purify(rho, (2,))


class TestDeterministicEigh:
    def test_reproducible_on_degenerate_input(self):
        h = z_mixture(0.5).entries
        w1, v1 = deterministic_eigh(h)
        w2, v2 = deterministic_eigh(h)
        assert np.array_equal(v1, v2)

    def test_recovers_w_ghz_from_equal_mixture(self):
        _, v = deterministic_eigh(z_mixture(0.5).entries)
        top = v[:, -2:]
        assert abs(abs(np.vdot(top[:, 0], w_state().amplitudes)) - 1) < 1e-9
        assert abs(abs(np.vdot(top[:, 1], ghz_state().amplitudes)) - 1) < 1e-9
