"""Transfer matrices and the constructors used to assemble circuits."""

import numpy as np

from errors import (
    DuplicateModeError,
    IndexOutOfRangeError,
    NonSquareMatrixError,
    NotUnitaryError,
)

UNITARY_TOL = 1e-9
INTERNAL_TOL = 1e-12


def unitarity_defect(entries):
    """Largest entrywise deviation of A·A† from the identity."""
    a = np.asarray(entries, dtype=complex)
    return float(np.max(np.abs(a @ a.conj().T - np.eye(a.shape[0])))) if a.size else 0.0


class TransferMatrix:
    """
    m×m unitary describing a linear optical circuit on m modes.

    Column j holds the image of the creation operator of input mode j:
    a_j† -> Σ_i U[i, j] a_i†. Entries are read-only after construction.
    """

    __slots__ = ('_entries',)

    def __init__(self, entries, tol=UNITARY_TOL):
        """
        Args:
            entries (array-like): Square complex matrix
            tol (float): Entrywise tolerance for the unitarity check
        """
        a = np.array(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise NonSquareMatrixError(f"Transfer matrix must be square and non-empty, got shape {a.shape}")

        defect = unitarity_defect(a)
        if defect > tol:
            raise NotUnitaryError(f"U·U† deviates from identity by {defect:.3e} (tolerance {tol:.0e})")

        a.setflags(write=False)
        self._entries = a

    @property
    def dim(self):
        return self._entries.shape[0]

    @property
    def entries(self):
        return self._entries

    def __matmul__(self, other):
        if not isinstance(other, TransferMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise IndexOutOfRangeError(f"Cannot compose {self.dim}-mode and {other.dim}-mode circuits")
        return TransferMatrix(self._entries @ other._entries)

    def allclose(self, other, atol=UNITARY_TOL):
        other = other.entries if isinstance(other, TransferMatrix) else np.asarray(other)
        return other.shape == self._entries.shape and np.allclose(self._entries, other, atol=atol, rtol=0)

    def __repr__(self):
        return f"TransferMatrix(dim={self.dim})"


def identity(d):
    """I_d."""
    return TransferMatrix(np.eye(d), tol=INTERNAL_TOL)


def fourier_matrix(d):
    """
    Discrete Fourier matrix F_d with entry (j, k) = ω^{jk}/√d, ω = e^{2πi/d}.

    With the Pauli constructors in linalg.monomial this satisfies
    F_d X_d F_d† = Z_d.
    """
    if d < 1:
        raise IndexOutOfRangeError(f"Fourier dimension must be positive, got {d}")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing='ij')
    # reduce the exponent first so large d keeps full precision
    exponent = (j * k) % d
    return TransferMatrix(np.exp(2j * np.pi * exponent / d) / np.sqrt(d), tol=INTERNAL_TOL)


def tensor(a, b):
    """Kronecker product; pair (i, j) sits at index i·dim(b) + j."""
    return TransferMatrix(np.kron(a.entries, b.entries), tol=UNITARY_TOL)


def direct_sum(a, b):
    """Block-diagonal a ⊕ b, blocks in argument order."""
    out = np.zeros((a.dim + b.dim, a.dim + b.dim), dtype=complex)
    out[:a.dim, :a.dim] = a.entries
    out[a.dim:, a.dim:] = b.entries
    return TransferMatrix(out, tol=UNITARY_TOL)


def embed(a, modes, m):
    """
    Place a on the listed global modes of an m-mode circuit, identity elsewhere.

    Args:
        a (TransferMatrix): Local circuit; local mode i acts on modes[i]
        modes (list): Distinct global mode indices, len(modes) == a.dim
        m (int): Total mode count

    Returns:
        TransferMatrix: m×m circuit
    """
    modes = [int(x) for x in modes]
    if len(modes) != a.dim:
        raise IndexOutOfRangeError(f"{a.dim}-mode block needs {a.dim} modes, got {len(modes)}")
    for mode in modes:
        if not 0 <= mode < m:
            raise IndexOutOfRangeError(f"Mode {mode} outside 0..{m - 1}")
    if len(set(modes)) != len(modes):
        raise DuplicateModeError(f"Duplicate modes in {modes}")

    out = np.eye(m, dtype=complex)
    out[np.ix_(modes, modes)] = a.entries
    return TransferMatrix(out, tol=UNITARY_TOL)


def compose(stages):
    """Circuit applying stages in order: the first stage acts first."""
    stages = list(stages)
    if not stages:
        raise IndexOutOfRangeError("Cannot compose an empty circuit")
    total = stages[0]
    for stage in stages[1:]:
        total = stage @ total
    return total
