"""
Monomial matrices: a permutation times a diagonal of unit phases.

``MonomialMatrix(perm, phases)`` is g = P_σ·D with g[σ(j), j] = phases[j]:
a photon entering mode j leaves in mode σ(j) and picks up phases[j].
On Fock states this gives B(g)|n⟩ = ∏_j phases[j]^{n_j} |σ⁻¹(n)⟩, where
(σ(n))_i = n_{σ(i)}; no permanent is ever needed.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from errors import IndexOutOfRangeError, NotMonomialError
from linalg.matrices import INTERNAL_TOL, TransferMatrix
from linalg.phases import DEFAULT_MAX_DENOMINATOR, SNAP_TOLERANCE, ExactPhase
from utils.logger import log_warning

MONOMIAL_TOL = 1e-9


@dataclass(frozen=True)
class MonomialMatrix:
    """Element of the monomial group on m modes."""

    perm: Tuple[int, ...]
    phases: Tuple[ExactPhase, ...]

    def __post_init__(self):
        perm = tuple(int(x) for x in self.perm)
        phases = tuple(p if isinstance(p, ExactPhase) else ExactPhase(p) for p in self.phases)
        if sorted(perm) != list(range(len(perm))):
            raise IndexOutOfRangeError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        if len(phases) != len(perm):
            raise IndexOutOfRangeError(f"Expected {len(perm)} phases, got {len(phases)}")
        object.__setattr__(self, 'perm', perm)
        object.__setattr__(self, 'phases', phases)

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(m)), (ExactPhase(),) * m)

    @classmethod
    def from_permutation(cls, perm):
        return cls(tuple(perm), (ExactPhase(),) * len(perm))

    @classmethod
    def diagonal(cls, phases):
        return cls(tuple(range(len(phases))), tuple(phases))

    @property
    def m(self):
        return len(self.perm)

    @property
    def exact(self):
        return all(p.exact for p in self.phases)

    @property
    def is_diagonal(self):
        return all(i == j for i, j in enumerate(self.perm))

    @property
    def is_identity(self):
        return self.is_diagonal and all(p.is_identity for p in self.phases)

    def __matmul__(self, other):
        """Matrix product self·other (other acts first)."""
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        if other.m != self.m:
            raise IndexOutOfRangeError(f"Cannot multiply {self.m}- and {other.m}-mode monomials")
        perm = tuple(self.perm[other.perm[k]] for k in range(self.m))
        phases = tuple(other.phases[k] * self.phases[other.perm[k]] for k in range(self.m))
        return MonomialMatrix(perm, phases)

    def inverse(self):
        perm = [0] * self.m
        phases = [None] * self.m
        for j, target in enumerate(self.perm):
            perm[target] = j
            phases[target] = self.phases[j].inverse()
        return MonomialMatrix(tuple(perm), tuple(phases))

    def commutes_with(self, other):
        return self @ other == other @ self

    def order(self, limit=DEFAULT_MAX_DENOMINATOR * 64):
        """Smallest k ≥ 1 with g^k = I."""
        power = self
        for k in range(1, limit + 1):
            if power.is_identity:
                return k
            power = power @ self
        raise IndexOutOfRangeError(f"Monomial order exceeds {limit}")

    def apply(self, occupation):
        """
        Exact image of a Fock state.

        Args:
            occupation (tuple): Input occupation numbers n

        Returns:
            tuple: (σ⁻¹(n), ExactPhase ∏ phases[j]^{n_j})
        """
        if len(occupation) != self.m:
            raise IndexOutOfRangeError(f"{len(occupation)}-mode state on a {self.m}-mode monomial")
        out = [0] * self.m
        turns = Fraction(0)
        inexact = 0.0
        for j, count in enumerate(occupation):
            out[self.perm[j]] = count
            if count:
                phase = self.phases[j]
                if phase.exact:
                    turns += phase.turns * count
                else:
                    inexact += phase.turns * count
        phase = ExactPhase(turns) if inexact == 0.0 else ExactPhase(float(turns) + inexact)
        return tuple(out), phase

    def to_transfer_matrix(self):
        out = np.zeros((self.m, self.m), dtype=complex)
        for j, target in enumerate(self.perm):
            out[target, j] = self.phases[j].to_complex()
        return TransferMatrix(out, tol=INTERNAL_TOL)

    def __str__(self):
        phases = ','.join(str(p) for p in self.phases)
        return f"perm={list(self.perm)} phases=[{phases}]"


def pauli_x(d):
    """Cyclic shift X_d: mode j -> j+1 mod d, no phases."""
    if d < 1:
        raise IndexOutOfRangeError(f"Pauli dimension must be positive, got {d}")
    return MonomialMatrix.from_permutation(tuple((j + 1) % d for j in range(d)))


def pauli_z(d):
    """Clock Z_d = diag(ω^j), ω = e^{2πi/d}."""
    if d < 1:
        raise IndexOutOfRangeError(f"Pauli dimension must be positive, got {d}")
    return MonomialMatrix.diagonal(tuple(ExactPhase.root_of_unity(j, d) for j in range(d)))


def monomial_tensor(a, b):
    """a ⊗ b with the row-major pair index i·b.m + j."""
    perm = []
    phases = []
    for i in range(a.m):
        for j in range(b.m):
            perm.append(a.perm[i] * b.m + b.perm[j])
            phases.append(a.phases[i] * b.phases[j])
    return MonomialMatrix(tuple(perm), tuple(phases))


def monomial_direct_sum(a, b):
    perm = a.perm + tuple(a.m + x for x in b.perm)
    return MonomialMatrix(perm, a.phases + b.phases)


def monomial_from_matrix(matrix, tol=MONOMIAL_TOL, max_denominator=DEFAULT_MAX_DENOMINATOR):
    """
    Read a monomial matrix off a dense unitary.

    Args:
        matrix (TransferMatrix or array-like): Candidate matrix
        tol (float): Entries at or below tol count as zero
        max_denominator (int): Largest turn denominator used when snapping phases

    Returns:
        MonomialMatrix: Phases exact where they snap within 1e-9

    Raises:
        NotMonomialError: If any row or column does not hold exactly one entry above tol
    """
    a = matrix.entries if isinstance(matrix, TransferMatrix) else np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotMonomialError(f"Not a square matrix: shape {a.shape}")

    m = a.shape[0]
    mask = np.abs(a) > tol
    if not (np.all(mask.sum(axis=0) == 1) and np.all(mask.sum(axis=1) == 1)):
        raise NotMonomialError("Matrix is not monomial: some row or column has more or fewer than one nonzero entry")

    perm = tuple(int(np.argmax(mask[:, j])) for j in range(m))
    phases = []
    for j, target in enumerate(perm):
        value = a[target, j]
        if abs(abs(value) - 1) > tol:
            raise NotMonomialError(f"Entry ({target}, {j}) has modulus {abs(value):.6g}, expected 1")
        phase = ExactPhase.from_complex(value, max_denominator=max_denominator, tol=SNAP_TOLERANCE)
        if not phase.exact:
            log_warning(f"Phase of entry ({target}, {j}) did not snap to a rational turn")
        phases.append(phase)
    return MonomialMatrix(perm, tuple(phases))


def apply_monomial(g, occupation):
    """B(g)|n⟩ = phase·|σ_g⁻¹(n)⟩; returns (σ_g⁻¹(n), phase)."""
    return g.apply(tuple(occupation))
