"""Tests for monomial stabilizer groups, characters and suppression laws."""

import math
from fractions import Fraction

import numpy as np
import pytest
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from bell.layout import half_scheme_state
from errors import (
    FormalismError,
    GroupTooLargeError,
    InconsistentCharacterError,
    NonAbelianGroupError,
    NotDiagonalGroupError,
    NotMonomialError,
)
from fock.basis import enumerate_basis
from fock.simulator import evolve
from fock.state import StateVector, basis_state
from linalg.matrices import fourier_matrix, identity, tensor
from linalg.monomial import MonomialMatrix, monomial_tensor, pauli_x, pauli_z
from linalg.phases import ExactPhase
from stabilizer.analysis import (
    measure_stabilizers,
    orbit,
    projector_matrix,
    projector_norm,
    stabilized_sample,
    suppressed_outcomes,
    transitive_phase_projection,
)
from stabilizer.group import (
    character_from_generators,
    conjugate_group,
    enumerate_characters,
    group_closure,
    transport_character,
    trivial_character,
)


@pytest.fixture
def swap_group():
    return group_closure([pauli_x(2)])


@pytest.fixture
def rng():
    return np.random.default_rng(99)


def half_scheme_group(m):
    return group_closure([monomial_tensor(MonomialMatrix.identity(2), pauli_x(m))])


def trivial_probability(results):
    return next(p for character, p in results if character.is_trivial)


class TestGroup:

    @pytest.mark.parametrize('m', [2, 3, 5])
    def test_cyclic_order(self, m):
        group = group_closure([pauli_x(m)])
        assert group.order == m
        assert group.abelian
        assert group.elements[0].is_identity

    def test_product_group_order(self):
        group = group_closure([
            monomial_tensor(pauli_z(2), MonomialMatrix.identity(2)),
            monomial_tensor(MonomialMatrix.identity(2), pauli_x(2)),
        ])
        assert group.order == 4
        assert group.abelian

    def test_pauli_group_is_not_abelian(self):
        group = group_closure([pauli_x(2), pauli_z(2)])
        assert group.order == 8
        assert not group.abelian
        with pytest.raises(NonAbelianGroupError):
            enumerate_characters(group)

    def test_order_guard(self):
        with pytest.raises(GroupTooLargeError):
            group_closure([pauli_x(5)], max_order=3)

    def test_closed_under_products(self):
        group = group_closure([pauli_x(2), pauli_z(2)])
        for a in group:
            for b in group:
                assert a @ b in group


class TestCharacters:

    def test_extends_multiplicatively(self):
        group = group_closure([pauli_x(4)])
        character = character_from_generators(group, [ExactPhase(Fraction(1, 4))])
        x = pauli_x(4)
        assert character(x @ x) == ExactPhase(Fraction(1, 2))
        assert character(group.identity).is_identity
        assert character.label() == 'i'

    def test_inconsistent_values(self, swap_group):
        with pytest.raises(InconsistentCharacterError):
            character_from_generators(swap_group, [ExactPhase(Fraction(1, 4))])

    def test_redundant_generators(self):
        group = group_closure([pauli_x(2), pauli_x(2)])
        character_from_generators(group, [ExactPhase(Fraction(1, 2)), ExactPhase(Fraction(1, 2))])
        with pytest.raises(InconsistentCharacterError):
            character_from_generators(group, [ExactPhase(), ExactPhase(Fraction(1, 2))])

    @pytest.mark.parametrize('generators', [
        [pauli_x(3)],
        [pauli_z(4)],
        [monomial_tensor(pauli_z(2), MonomialMatrix.identity(2)), monomial_tensor(MonomialMatrix.identity(2), pauli_x(2))],
    ])
    def test_character_count_equals_order(self, generators):
        group = group_closure(generators)
        characters = enumerate_characters(group)
        assert len(characters) == group.order
        assert len(set(characters)) == group.order


class TestProjectors:

    def test_swap_symmetric_state(self, swap_group):
        plus, minus = enumerate_characters(swap_group)
        state = basis_state((1, 1))
        assert projector_norm(swap_group, plus, state) == pytest.approx(1.0)
        assert projector_norm(swap_group, minus, state) == pytest.approx(0.0)

        split = basis_state((1, 0))
        assert projector_norm(swap_group, plus, split) == pytest.approx(0.5)
        assert projector_norm(swap_group, minus, split) == pytest.approx(0.5)

    def test_matches_dense_projector(self, rng):
        group = group_closure([pauli_x(3)])
        basis = enumerate_basis(3, 2)
        vector = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        vector /= np.linalg.norm(vector)
        state = StateVector.from_dense(basis, vector)
        for character in enumerate_characters(group):
            rho = projector_matrix(group, character, basis)
            assert np.allclose(rho @ rho, rho, atol=1e-12)
            assert np.allclose(rho, rho.conj().T, atol=1e-12)
            direct = float(np.linalg.norm(rho @ vector) ** 2)
            assert abs(projector_norm(group, character, state) - direct) < 1e-12

    def test_completeness(self, rng):
        group = group_closure([pauli_x(4)])
        basis = enumerate_basis(4, 3)
        vector = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        state = StateVector.from_dense(basis, vector / np.linalg.norm(vector))
        total = sum(projector_norm(group, c, state) for c in enumerate_characters(group))
        assert abs(total - 1.0) < 1e-10

    def test_stabilized_sample_lies_in_eigenspace(self):
        group = group_closure([pauli_x(3)])
        character = enumerate_characters(group)[1]
        sample = stabilized_sample(group, character, enumerate_basis(3, 2))
        assert sample.is_normalized
        assert projector_norm(group, character, sample) == pytest.approx(1.0)

    def test_equal_magnitudes_on_orbits(self):
        group = group_closure([pauli_x(3)])
        for character in enumerate_characters(group):
            sample = stabilized_sample(group, character, enumerate_basis(3, 3))
            for occupation in enumerate_basis(3, 3):
                magnitudes = [abs(sample.amplitude(o)) for o in orbit(group, occupation).members]
                assert max(magnitudes) - min(magnitudes) < 1e-12


class TestConjugation:

    def test_fourier_diagonalizes_shift(self, swap_group):
        conjugate, correspondence = conjugate_group(fourier_matrix(2), swap_group)
        assert conjugate.is_diagonal
        assert correspondence[pauli_x(2)] == pauli_z(2)

    def test_transported_character(self):
        group = group_closure([pauli_x(3)])
        conjugate, correspondence = conjugate_group(fourier_matrix(3), group)
        character = enumerate_characters(group)[2]
        moved = transport_character(character, correspondence, conjugate)
        for g in group:
            assert moved(correspondence[g]) == character(g)

    def test_formalism_does_not_apply(self):
        flip = MonomialMatrix.diagonal((ExactPhase(), ExactPhase(), ExactPhase(Fraction(1, 2))))
        with pytest.raises(NotMonomialError):
            conjugate_group(fourier_matrix(3), group_closure([flip]))


class TestSuppression:

    def test_hong_ou_mandel(self, swap_group):
        conjugate, correspondence = conjugate_group(fourier_matrix(2), swap_group)
        character = transport_character(trivial_character(swap_group), correspondence, conjugate)
        assert suppressed_outcomes(conjugate, character, enumerate_basis(2, 2)) == [(1, 1)]

    @pytest.mark.parametrize('m', [2, 3, 4, 5, 6])
    def test_cyclic_law(self, m):
        group = group_closure([pauli_x(m)])
        U = fourier_matrix(m)
        conjugate, correspondence = conjugate_group(U, group)
        character = transport_character(trivial_character(group), correspondence, conjugate)
        basis = enumerate_basis(m, m)
        suppressed = suppressed_outcomes(conjugate, character, basis)

        expected = [n for n in basis if sum(j * c for j, c in enumerate(n)) % m]
        assert suppressed == expected

        output = evolve(basis_state((1,) * m), U)
        assert max(abs(output.amplitude(n)) for n in suppressed) < 1e-10

    def test_nontrivial_character(self, swap_group):
        conjugate, correspondence = conjugate_group(fourier_matrix(2), swap_group)
        odd = transport_character(enumerate_characters(swap_group)[1], correspondence, conjugate)
        suppressed = suppressed_outcomes(conjugate, odd, enumerate_basis(2, 2))
        assert suppressed == [(0, 2), (2, 0)]

    def test_trivial_group(self):
        group = group_closure([], m=2)
        assert group.order == 1
        assert suppressed_outcomes(group, trivial_character(group), enumerate_basis(2, 2)) == []

    def test_requires_diagonal_group(self, swap_group):
        with pytest.raises(NotDiagonalGroupError):
            suppressed_outcomes(swap_group, trivial_character(swap_group), enumerate_basis(2, 2))


class TestOrbits:

    def test_sizes(self):
        group = group_closure([pauli_x(3)])
        assert len(orbit(group, (2, 1, 0))) == 3
        assert len(orbit(group, (1, 1, 1))) == 1
        assert (0, 2, 1) in orbit(group, (2, 1, 0))


class TestMeasurement:

    @pytest.mark.parametrize('m', [2, 3, 4, 5, 6])
    def test_half_scheme_trivial_probability(self, m):
        results = measure_stabilizers(
            half_scheme_group(m),
            tensor(identity(2), fourier_matrix(m)),
            half_scheme_state(m, 'beta+'),
        )
        assert len(results) == m
        assert abs(trivial_probability(results) - 1 / m) < 1e-10
        assert abs(sum(p for _, p in results) - 1) < 1e-10

    def test_symmetric_ancillae(self):
        results = measure_stabilizers(
            half_scheme_group(4),
            tensor(identity(2), fourier_matrix(4)),
            half_scheme_state(4, 'beta-'),
        )
        assert trivial_probability(results) == pytest.approx(1.0)

    def test_unmeasured_group(self, swap_group):
        with pytest.raises(NotDiagonalGroupError):
            measure_stabilizers(swap_group, identity(2), basis_state((1, 1)))

    @pytest.mark.parametrize('m', [2, 3])
    def test_agrees_with_detection(self, m):
        U = tensor(identity(2), fourier_matrix(m))
        output = evolve(half_scheme_state(m, 'beta+'), U)
        # outcomes with zero total Z_m phase on both rails
        trivial = sum(
            abs(c) ** 2
            for n, c in output.amplitudes.items()
            if sum(j * (n[j] + n[m + j]) for j in range(m)) % m == 0
        )
        assert abs(trivial - 1 / m) < 1e-10


class TestTransitiveProjection:

    @pytest.mark.parametrize('m,k,theta,expected', [
        (4, 2, math.pi, 0.0),
        (3, 1, math.pi / 2, 5 / 9),
        (5, 2, 0.0, 1.0),
        (6, 0, 1.3, 1.0),
    ])
    def test_cyclic(self, m, k, theta, expected):
        assert transitive_phase_projection(m, k, theta) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize('m', [1, 2, 3, 4, 5])
    @pytest.mark.parametrize('theta', [0.0, math.pi / 2, math.pi])
    def test_all_weights(self, m, theta):
        for k in range(m + 1):
            expected = abs(((m - k) + complex(math.cos(theta), math.sin(theta)) * k) / m) ** 2
            assert abs(transitive_phase_projection(m, k, theta) - expected) < 1e-10

    def test_other_transitive_group(self):
        klein = [(1, 0, 3, 2), (2, 3, 0, 1)]
        value = transitive_phase_projection(4, 1, math.pi, site_generators=klein)
        assert value == pytest.approx(0.25)

    def test_not_transitive(self):
        with pytest.raises(FormalismError):
            transitive_phase_projection(4, 1, 0.5, site_generators=[(1, 0, 2, 3)])


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
