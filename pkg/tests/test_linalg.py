"""Tests for phases, transfer matrices and monomial matrices."""

import cmath
from fractions import Fraction

import numpy as np
import pytest
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from errors import DuplicateModeError, IndexOutOfRangeError, NotMonomialError, NotUnitaryError
from fock.basis import enumerate_basis
from fock.simulator import boson_amplitude
from linalg.matrices import compose, direct_sum, embed, fourier_matrix, identity, tensor, TransferMatrix
from linalg.monomial import (
    MonomialMatrix,
    apply_monomial,
    monomial_direct_sum,
    monomial_from_matrix,
    monomial_tensor,
    pauli_x,
    pauli_z,
)
from linalg.phases import ExactPhase, phase_product


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def random_monomial(rng, m, order=6):
    perm = tuple(int(x) for x in rng.permutation(m))
    return MonomialMatrix(perm, tuple(ExactPhase(Fraction(int(k), order)) for k in rng.integers(0, order, m)))


class TestExactPhase:

    def test_normalization(self):
        assert ExactPhase(Fraction(5, 4)) == ExactPhase(Fraction(1, 4))
        assert ExactPhase(-1).is_identity

    def test_quarter_turns_are_exact(self):
        assert ExactPhase(Fraction(1, 4)).to_complex() == 1j
        assert ExactPhase(Fraction(1, 2)).to_complex() == -1

    def test_arithmetic(self):
        a = ExactPhase(Fraction(1, 3))
        assert (a * a * a).is_identity
        assert (a / a).is_identity
        assert a ** 3 == ExactPhase()
        assert a.inverse() == ExactPhase(Fraction(2, 3))
        assert phase_product([a, a, ExactPhase(Fraction(1, 2))]) == ExactPhase(Fraction(1, 6))

    def test_snapping(self):
        assert ExactPhase.from_complex(1j) == ExactPhase(Fraction(1, 4))
        assert ExactPhase.from_complex(cmath.exp(2j * cmath.pi / 7) * 3) == ExactPhase(Fraction(1, 7))
        loose = ExactPhase.from_complex(cmath.exp(1j))
        assert not loose.exact
        assert abs(loose.to_complex() - cmath.exp(1j)) < 1e-12

    def test_str(self):
        assert str(ExactPhase()) == '1'
        assert str(ExactPhase(Fraction(1, 2))) == '-1'
        assert str(ExactPhase(Fraction(3, 4))) == '-i'
        assert str(ExactPhase(Fraction(1, 3))) == 'e(1/3)'


class TestTransferMatrix:

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitaryError):
            TransferMatrix([[1, 1], [0, 1]])

    @pytest.mark.parametrize('d', [1, 2, 3, 4, 8])
    def test_fourier_unitary(self, d):
        f = fourier_matrix(d)
        assert np.allclose(f.entries @ f.entries.conj().T, np.eye(d), atol=1e-12)

    def test_read_only(self):
        with pytest.raises(ValueError):
            identity(2).entries[0, 0] = 5

    def test_tensor_and_direct_sum_dims(self):
        assert tensor(fourier_matrix(2), identity(3)).dim == 6
        assert direct_sum(fourier_matrix(2), identity(3)).dim == 5

    def test_embed(self):
        placed = embed(fourier_matrix(2), [3, 1], 4)
        assert placed.entries[3, 3] == pytest.approx(2 ** -0.5)
        assert placed.entries[1, 1] == pytest.approx(-(2 ** -0.5))
        assert placed.entries[0, 0] == 1
        with pytest.raises(DuplicateModeError):
            embed(fourier_matrix(2), [1, 1], 4)
        with pytest.raises(IndexOutOfRangeError):
            embed(fourier_matrix(2), [1, 4], 4)

    def test_compose_applies_first_stage_first(self):
        x = pauli_x(2).to_transfer_matrix()
        z = pauli_z(2).to_transfer_matrix()
        assert compose([x, z]).allclose(z @ x)


class TestMonomial:

    def test_apply_examples(self):
        assert pauli_x(2).apply((2, 0)) == ((0, 2), ExactPhase())
        assert pauli_z(2).apply((1, 1)) == ((1, 1), ExactPhase(Fraction(1, 2)))
        occupation, phase = apply_monomial(pauli_z(4), (0, 1, 2, 0))
        assert occupation == (0, 1, 2, 0)
        assert phase.to_complex() == 1j

    def test_fourier_conjugates_shift_to_clock(self):
        for d in (2, 3, 5):
            f = fourier_matrix(d).entries
            conjugated = monomial_from_matrix(f @ pauli_x(d).to_transfer_matrix().entries @ f.conj().T)
            assert conjugated == pauli_z(d)

    def test_from_matrix_rejects_dense(self):
        with pytest.raises(NotMonomialError):
            monomial_from_matrix(fourier_matrix(2))

    def test_from_matrix_reads_shift(self):
        g = monomial_from_matrix(pauli_x(3).to_transfer_matrix())
        assert g.perm == (1, 2, 0)
        assert all(p.is_identity for p in g.phases)

    def test_from_matrix_warns_on_irrational_phase(self, mocker):
        warn = mocker.patch('linalg.monomial.log_warning')
        g = monomial_from_matrix(np.diag([cmath.exp(1j), 1]))
        assert not g.exact
        warn.assert_called_once()
        assert 'did not snap' in warn.call_args[0][0]

    def test_from_matrix_silent_on_rational_phase(self, mocker):
        warn = mocker.patch('linalg.monomial.log_warning')
        monomial_from_matrix(np.diag([1j, -1]))
        warn.assert_not_called()

    def test_product_matches_matrices(self, rng):
        for _ in range(20):
            a, b = random_monomial(rng, 4), random_monomial(rng, 4)
            expected = a.to_transfer_matrix().entries @ b.to_transfer_matrix().entries
            assert np.allclose((a @ b).to_transfer_matrix().entries, expected, atol=1e-12)

    def test_inverse_and_order(self, rng):
        g = random_monomial(rng, 4)
        assert (g @ g.inverse()).is_identity
        assert pauli_x(5).order() == 5
        assert pauli_z(4).order() == 4

    def test_tensor_and_direct_sum(self):
        g = monomial_tensor(pauli_z(2), MonomialMatrix.identity(3))
        assert np.allclose(
            g.to_transfer_matrix().entries,
            np.kron(pauli_z(2).to_transfer_matrix().entries, np.eye(3)),
        )
        h = monomial_direct_sum(pauli_x(2), pauli_z(2))
        assert h.perm == (1, 0, 2, 3)
        assert h.phases[3] == ExactPhase(Fraction(1, 2))

    @pytest.mark.parametrize('m,n', [(2, 1), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
    def test_fast_path_matches_permanents(self, rng, m, n):
        for _ in range(3):
            g = random_monomial(rng, m)
            S = g.to_transfer_matrix()
            for occupation in enumerate_basis(m, n):
                image, phase = g.apply(occupation)
                assert abs(boson_amplitude(S, image, occupation) - phase.to_complex()) < 1e-10
                other = tuple(reversed(image))
                if other != image:
                    assert abs(boson_amplitude(S, other, occupation)) < 1e-10


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
