"""
Finite monomial stabilizer groups, their characters, and conjugation.

A character λ labels one joint eigenspace V^G_λ of B_n(G). Characters are
built generator by generator and checked against every edge of the
Cayley graph, so λ(gh) = λ(g)λ(h) holds on the whole group by
construction.
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Tuple

from errors import (
    GroupTooLargeError,
    IndexOutOfRangeError,
    InconsistentCharacterError,
    InexactPhaseError,
    NonAbelianGroupError,
)
from linalg.monomial import MonomialMatrix, monomial_from_matrix
from linalg.phases import ExactPhase
from utils.logger import log_debug

MAX_GROUP_ORDER = 4096


@dataclass(frozen=True)
class StabilizerGroup:
    """Closure of a set of monomial generators on m modes."""

    m: int
    generators: Tuple[MonomialMatrix, ...]
    elements: Tuple[MonomialMatrix, ...]
    abelian: bool
    element_set: FrozenSet[MonomialMatrix] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.element_set is None:
            object.__setattr__(self, 'element_set', frozenset(self.elements))

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return MonomialMatrix.identity(self.m)

    @property
    def is_diagonal(self):
        return all(g.is_diagonal for g in self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class Character:
    """Multiplicative eigenvalue assignment λ: G -> unit phases."""

    __slots__ = ('group', '_values', 'generator_values')

    def __init__(self, group, values, generator_values):
        self.group = group
        self._values = dict(values)
        self.generator_values = tuple(generator_values)

    def __call__(self, g):
        return self._values[g]

    @property
    def values(self):
        return dict(self._values)

    @property
    def is_trivial(self):
        return all(v.is_identity for v in self._values.values())

    def label(self):
        return ','.join(str(v) for v in self.generator_values)

    def __eq__(self, other):
        return isinstance(other, Character) and self._values == other._values

    def __hash__(self):
        return hash(self.generator_values)

    def __repr__(self):
        return f"Character({self.label()})"


def group_closure(generators, max_order=MAX_GROUP_ORDER, m=None):
    """
    Breadth-first closure of monomial generators under products.

    Args:
        generators (list): MonomialMatrix generators, all on the same modes
        max_order (int): Largest group order accepted
        m (int): Mode count, needed only for the trivial group with no generators

    Returns:
        StabilizerGroup: Elements in discovery order, identity first
    """
    generators = tuple(generators)
    if m is None:
        if not generators:
            raise IndexOutOfRangeError("Mode count is required for a group without generators")
        m = generators[0].m

    for g in generators:
        if g.m != m:
            raise IndexOutOfRangeError(f"Generator on {g.m} modes in a {m}-mode group")
        if not g.exact:
            raise InexactPhaseError(f"Generator {g} has a phase that is not a rational turn")

    identity = MonomialMatrix.identity(m)
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in generators:
            product = current @ g
            if product in seen:
                continue
            seen.add(product)
            elements.append(product)
            if len(elements) > max_order:
                raise GroupTooLargeError(f"Group order exceeds {max_order}")
            queue.append(product)

    abelian = all(a.commutes_with(b) for a, b in itertools.combinations(generators, 2))
    log_debug(f"Closed {len(generators)} generators into a group of order {len(elements)} (abelian={abelian})")
    return StabilizerGroup(m=m, generators=generators, elements=tuple(elements), abelian=abelian)


def _as_phase(value):
    if isinstance(value, ExactPhase):
        return value
    return ExactPhase(Fraction(value))


def character_from_generators(group, generator_values):
    """
    Extend eigenvalues on the generators to a character of the whole group.

    Args:
        group (StabilizerGroup): Abelian group
        generator_values (list): ExactPhase (or turn fraction) per generator

    Returns:
        Character

    Raises:
        NonAbelianGroupError: For non-Abelian groups
        InconsistentCharacterError: If a group relation forces two values on one element
    """
    if not group.abelian:
        raise NonAbelianGroupError("Characters label joint eigenspaces of Abelian groups only")

    generator_values = tuple(_as_phase(v) for v in generator_values)
    if len(generator_values) != len(group.generators):
        raise IndexOutOfRangeError(
            f"{len(group.generators)} generators but {len(generator_values)} eigenvalues"
        )
    for value in generator_values:
        if not value.exact:
            raise InexactPhaseError("Character values must be rational turns")

    identity = group.identity
    values = {identity: ExactPhase()}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g, value in zip(group.generators, generator_values):
            product = current @ g
            expected = values[current] * value
            known = values.get(product)
            if known is None:
                values[product] = expected
                queue.append(product)
            elif known != expected:
                raise InconsistentCharacterError(
                    f"Eigenvalues {', '.join(str(v) for v in generator_values)} violate a group relation: "
                    f"one element would need both {known} and {expected}"
                )
    return Character(group, values, generator_values)


def trivial_character(group):
    return character_from_generators(group, [ExactPhase()] * len(group.generators))


def enumerate_characters(group):
    """All characters of an Abelian group, in generator-value lexicographic order."""
    if not group.abelian:
        raise NonAbelianGroupError("Characters label joint eigenspaces of Abelian groups only")

    orders = [g.order() for g in group.generators]
    characters = []
    for choice in itertools.product(*[range(order) for order in orders]):
        values = [ExactPhase(Fraction(c, order)) for c, order in zip(choice, orders)]
        try:
            characters.append(character_from_generators(group, values))
        except InconsistentCharacterError:
            continue
    log_debug(f"Group of order {group.order} has {len(characters)} characters")
    return characters


def conjugate_group(U, group):
    """
    G' = U G U† together with the element map g -> U g U†.

    Args:
        U (TransferMatrix): Circuit on group.m modes
        group (StabilizerGroup): Group to transport

    Returns:
        tuple: (StabilizerGroup G', dict g -> UgU†)

    Raises:
        NotMonomialError: When some UgU† is not monomial, i.e. the formalism does not apply
    """
    if U.dim != group.m:
        raise IndexOutOfRangeError(f"{U.dim}-mode circuit on a {group.m}-mode group")

    u = U.entries
    u_dag = u.conj().T
    correspondence = {}
    for g in group.elements:
        conjugated = monomial_from_matrix(u @ g.to_transfer_matrix().entries @ u_dag)
        if not conjugated.exact:
            raise InexactPhaseError(f"U g U† has phases that are not rational turns for g = {g}")
        correspondence[g] = conjugated

    conjugate = StabilizerGroup(
        m=group.m,
        generators=tuple(correspondence[g] for g in group.generators),
        elements=tuple(correspondence[g] for g in group.elements),
        abelian=group.abelian,
    )
    return conjugate, correspondence


def transport_character(character, correspondence, conjugate):
    """λ'(UgU†) = λ(g) on the conjugate group."""
    values = {correspondence[g]: character(g) for g in character.group.elements}
    return Character(conjugate, values, character.generator_values)

