"""
Projector norms, suppression laws, orbits and stabilizer measurements.

Every quantity here is evaluated from the monomial action g|n⟩ =
phase·|σ_g⁻¹(n)⟩, so costs scale with |G| times the state support and
never with the size of the Fock basis.
"""

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Tuple

import numpy as np

from errors import (
    ConsistencyError,
    FormalismError,
    IndexOutOfRangeError,
    NonAbelianGroupError,
    NotDiagonalGroupError,
)
from fock.state import StateVector
from linalg.monomial import MonomialMatrix
from stabilizer.group import (
    conjugate_group,
    enumerate_characters,
    group_closure,
    trivial_character,
)
from utils.logger import log_debug, log_info
from utils.parallel import parallel_map

PROBABILITY_SUM_TOL = 1e-8
CLOSED_FORM_TOL = 1e-10
SAMPLE_NORM_TOL = 1e-9


@dataclass(frozen=True)
class OrbitSet:
    representative: Tuple[int, ...]
    members: FrozenSet[Tuple[int, ...]]

    def __len__(self):
        return len(self.members)

    def __contains__(self, occupation):
        return tuple(occupation) in self.members


def _require_abelian(group):
    if not group.abelian:
        raise NonAbelianGroupError("Projection onto joint eigenspaces needs an Abelian group")


def _require_character_of(character, group):
    if character.group is not group and character.group.element_set != group.element_set:
        raise IndexOutOfRangeError("Character belongs to a different group")


def projector_norm(group, character, state):
    """
    ‖ρ^G_λ|Ψ⟩‖² with ρ^G_λ = (1/|G|) Σ_g λ(g)⁻¹ B(g).

    Args:
        group (StabilizerGroup): Abelian monomial group
        character (Character): Eigenvalue assignment λ of group
        state (StateVector): |Ψ⟩ on group.m modes

    Returns:
        float: Squared norm of the projection, clipped below at 0
    """
    _require_abelian(group)
    _require_character_of(character, group)
    if state.modes != group.m:
        raise IndexOutOfRangeError(f"{state.modes}-mode state for a {group.m}-mode group")

    amplitudes = state.amplitudes
    total = 0j
    for g in group.elements:
        overlap = 0j
        for occupation, c in amplitudes.items():
            image, phase = g.apply(occupation)
            target = amplitudes.get(image)
            if target is not None:
                overlap += target.conjugate() * c * phase.to_complex()
        if overlap:
            total += character(g).inverse().to_complex() * overlap
    return max(total.real / group.order, 0.0)


def projector_matrix(group, character, basis):
    """Dense ρ^G_λ on a Fock basis, built column by column from the monomial action."""
    _require_abelian(group)
    _require_character_of(character, group)
    if basis.m != group.m:
        raise IndexOutOfRangeError(f"{basis.m}-mode basis for a {group.m}-mode group")

    rho = np.zeros((len(basis), len(basis)), dtype=complex)
    for g in group.elements:
        weight = character(g).inverse()
        for column, occupation in enumerate(basis.states):
            image, phase = g.apply(occupation)
            rho[basis.position(image), column] += (weight * phase).to_complex()
    return rho / group.order


def suppressed_outcomes(conjugate, character, basis):
    """
    Fock states that can never be detected from an input in V^G_λ.

    For a diagonal group, g|n⟩ = χ_n(g)|n⟩, and ⟨n|ρ|n⟩ is the average of
    the character λ'(g)⁻¹χ_n(g). That average is 1 when the character is
    trivial and exactly 0 otherwise, so the test is an exact phase
    comparison.

    Args:
        conjugate (StabilizerGroup): Diagonal group G' = UGU†
        character (Character): λ' on G'
        basis (FockBasis): Candidate outcomes

    Returns:
        list: Suppressed occupation tuples in basis order

    Raises:
        NotDiagonalGroupError: If some element permutes modes
    """
    _require_abelian(conjugate)
    _require_character_of(character, conjugate)
    if not conjugate.is_diagonal:
        raise NotDiagonalGroupError("Suppression laws need a group of diagonal monomials")

    suppressed = []
    for occupation in basis.states:
        for g in conjugate.generators:
            _, phase = g.apply(occupation)
            # a character is trivial iff it is trivial on every generator
            if not (character(g).inverse() * phase).is_identity:
                suppressed.append(occupation)
                break
    log_debug(f"{len(suppressed)} of {len(basis)} outcomes suppressed")
    return suppressed


def orbit(group, occupation):
    """O_n = {σ_g(n) | g ∈ G}."""
    occupation = tuple(occupation)
    members = frozenset(g.apply(occupation)[0] for g in group.elements)
    return OrbitSet(representative=occupation, members=members)


def measure_stabilizers(group, U, state, threads=1):
    """
    Outcome distribution of measuring G by U followed by photon counting.

    Args:
        group (StabilizerGroup): Abelian group to measure
        U (TransferMatrix): Circuit with U G U† diagonal
        state (StateVector): Input state
        threads (int): Workers over characters

    Returns:
        list: (Character, probability) for every character of group
    """
    _require_abelian(group)
    conjugate, _ = conjugate_group(U, group)
    if not conjugate.is_diagonal:
        raise NotDiagonalGroupError("U G U† is monomial but not diagonal, so G is not measured by U")

    characters = enumerate_characters(group)
    probabilities = parallel_map(
        lambda character: projector_norm(group, character, state),
        characters,
        threads=threads,
    )

    total = sum(probabilities)
    expected = state.norm() ** 2
    if abs(total - expected) > PROBABILITY_SUM_TOL:
        raise ConsistencyError(f"Stabilizer outcome probabilities sum to {total:.12g}, expected {expected:.12g}")
    return list(zip(characters, probabilities))


def stabilized_sample(group, character, basis):
    """
    A normalized state in V^G_λ: the first nonzero ρ^G_λ|n⟩ over the basis.

    Raises:
        ConsistencyError: If λ labels an empty eigenspace on this basis
    """
    _require_abelian(group)
    _require_character_of(character, group)

    for occupation in basis.states:
        amplitudes = defaultdict(complex)
        for g in group.elements:
            image, phase = g.apply(occupation)
            amplitudes[image] += (character(g).inverse() * phase).to_complex() / group.order
        candidate = StateVector({k: v for k, v in amplitudes.items() if abs(v) > 1e-14}, modes=group.m)
        if candidate.norm() > SAMPLE_NORM_TOL:
            return candidate.normalized()
    raise ConsistencyError(f"Eigenspace for λ = ({character.label()}) is empty for n = {basis.n}")


def _lift_to_dual_rail(site_permutation):
    """Same permutation on both rails of a rail-major dual-rail register."""
    m = len(site_permutation)
    perm = tuple(list(site_permutation) + [m + s for s in site_permutation])
    return MonomialMatrix.from_permutation(perm)


def _phased_dual_rail_dicke(m, k, theta):
    """P_0(θ)|D^m_k⟩: k of m sites in |1⟩, phase e^{iθ} when site 0 is |1⟩."""
    weight = 1 / math.sqrt(math.comb(m, k))
    amplitudes = {}
    for excited in map(frozenset, combinations(range(m), k)):
        occupation = [0] * (2 * m)
        for site in range(m):
            occupation[m + site if site in excited else site] = 1
        amplitudes[tuple(occupation)] = weight * (cmath.exp(1j * theta) if 0 in excited else 1)
    return StateVector(amplitudes, modes=2 * m)


def transitive_phase_projection(m, k, theta, site_generators=None):
    """
    Trivial-character projection of a phased Dicke state under a transitive group.

    Args:
        m (int): Number of two-level sites
        k (int): Excitations, 0 <= k <= m
        theta (float): Phase applied to site 0
        site_generators (list): Permutations of range(m) generating an Abelian
            transitive group; defaults to the cyclic shift

    Returns:
        float: |((m-k) + e^{iθ}k)/m|², checked against the direct projection

    Raises:
        ConsistencyError: If the two evaluations differ by more than 1e-10
    """
    if m < 1 or not 0 <= k <= m:
        raise IndexOutOfRangeError(f"Need 0 <= k <= m and m >= 1, got m={m}, k={k}")
    if site_generators is None:
        site_generators = [tuple((s + 1) % m for s in range(m))]

    group = group_closure([_lift_to_dual_rail(p) for p in site_generators], m=2 * m)
    _require_abelian(group)
    reached = {g.perm[0] for g in group.elements}
    if reached != set(range(m)):
        raise FormalismError("Site group is not transitive")

    state = _phased_dual_rail_dicke(m, k, theta)
    direct = projector_norm(group, trivial_character(group), state)
    closed = abs(((m - k) + cmath.exp(1j * theta) * k) / m) ** 2
    if abs(direct - closed) > CLOSED_FORM_TOL:
        raise ConsistencyError(
            f"Projection of the phased Dicke state is {direct:.15g}, closed form gives {closed:.15g}"
        )
    log_info(f"Transitive projection m={m} k={k} theta={theta:.6g}: {closed:.12g}")
    return closed
