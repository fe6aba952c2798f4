"""
Dual-rail Bell-state discrimination circuit with single-photon ancillae.

Modes are arranged in four rail groups c ∈ {0, 1, 2, 3} of m copies each,
mode (c, j) -> c·m + j. Qubit A lives on (0, 0) and (1, 0), qubit B on
(2, 0) and (3, 0); every (c, j) with j >= 1 carries one ancilla photon.

The first layer interferes copy 0 across the two qubits (equal rails)
and the two rails of each ancilla copy inside a half. After it, half h
is the pair of rail groups (2h, 2h+1): every Bell input becomes a
superposition of |first⟩|β⁻⟩^{⊗m-1} states on the halves. The second
layer is F_m across the copies of every rail group.
"""

import math
from dataclasses import dataclass
from itertools import combinations

from errors import IndexOutOfRangeError
from fock.state import StateVector, tensor_product
from linalg.matrices import compose, embed, fourier_matrix
from utils.logger import log_debug

SQRT_HALF = 1 / math.sqrt(2)

BELL_KINDS = ('psi+', 'psi-', 'phi+', 'phi-')

# two-qubit dual-rail states on (A rail 0, A rail 1, B rail 0, B rail 1)
_BELL_FOCK = {
    'psi+': {(1, 0, 0, 1): SQRT_HALF, (0, 1, 1, 0): SQRT_HALF},
    'psi-': {(1, 0, 0, 1): SQRT_HALF, (0, 1, 1, 0): -SQRT_HALF},
    'phi+': {(1, 0, 1, 0): SQRT_HALF, (0, 1, 0, 1): SQRT_HALF},
    'phi-': {(1, 0, 1, 0): SQRT_HALF, (0, 1, 0, 1): -SQRT_HALF},
}

_PAIR_FOCK = {
    'beta+': {(2, 0): SQRT_HALF, (0, 2): SQRT_HALF},
    'beta-': {(2, 0): SQRT_HALF, (0, 2): -SQRT_HALF},
    'alpha': {(1, 1): 1.0},
}

NAMED_STATES = BELL_KINDS + tuple(_PAIR_FOCK)


@dataclass(frozen=True)
class DualRailQubitLayout:
    """Mode bookkeeping for the 4m-mode scheme."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise IndexOutOfRangeError(f"The scheme needs m >= 2 copies, got {self.m}")

    @property
    def modes(self):
        return 4 * self.m

    @property
    def photons(self):
        return 2 + 4 * (self.m - 1)

    def mode(self, group, copy):
        if not (0 <= group < 4 and 0 <= copy < self.m):
            raise IndexOutOfRangeError(f"No mode ({group}, {copy}) with m={self.m}")
        return group * self.m + copy

    def rail_group(self, group):
        return [self.mode(group, j) for j in range(self.m)]

    @property
    def qubit_modes(self):
        """((A rail 0, A rail 1), (B rail 0, B rail 1))."""
        return ((self.mode(0, 0), self.mode(1, 0)), (self.mode(2, 0), self.mode(3, 0)))

    @property
    def ancilla_modes(self):
        return [self.mode(c, j) for c in range(4) for j in range(1, self.m)]

    def half(self, h):
        """Rail groups (rail 0, rail 1) of half h after the first layer."""
        return (2 * h, 2 * h + 1)

    def input_occupation(self, a, b):
        """Occupation for logical |ab⟩ with all ancillae filled."""
        occupation = [0] * self.modes
        for mode in self.ancilla_modes:
            occupation[mode] = 1
        (a0, a1), (b0, b1) = self.qubit_modes
        occupation[a1 if a else a0] += 1
        occupation[b1 if b else b0] += 1
        return tuple(occupation)


def bell_state(kind):
    """Dual-rail Bell state on 4 modes (A rail 0, A rail 1, B rail 0, B rail 1)."""
    if kind not in _BELL_FOCK:
        raise IndexOutOfRangeError(f"Unknown Bell state {kind!r}; expected one of {', '.join(BELL_KINDS)}")
    return StateVector(_BELL_FOCK[kind], modes=4)


def named_state(name):
    """Bell states on 4 modes, or beta+/beta-/alpha on 2 modes."""
    if name in _BELL_FOCK:
        return bell_state(name)
    if name in _PAIR_FOCK:
        return StateVector(_PAIR_FOCK[name], modes=2)
    raise IndexOutOfRangeError(f"Unknown state {name!r}; expected one of {', '.join(NAMED_STATES)}")


def first_layer(m):
    layout = DualRailQubitLayout(m)
    f2 = fourier_matrix(2)
    pairs = [
        (layout.mode(0, 0), layout.mode(2, 0)),
        (layout.mode(1, 0), layout.mode(3, 0)),
    ]
    for j in range(1, m):
        pairs.append((layout.mode(0, j), layout.mode(1, j)))
        pairs.append((layout.mode(2, j), layout.mode(3, j)))
    return compose([embed(f2, pair, layout.modes) for pair in pairs])


def second_layer(m):
    layout = DualRailQubitLayout(m)
    fm = fourier_matrix(m)
    return compose([embed(fm, layout.rail_group(c), layout.modes) for c in range(4)])


def build_circuit(m):
    """
    The 4m-mode transfer matrix of the scheme: first layer, then F_m per rail group.

    Args:
        m (int): Copies per rail group, m >= 2

    Returns:
        TransferMatrix: Columns indexed by input modes c·m + j
    """
    circuit = compose([first_layer(m), second_layer(m)])
    log_debug(f"Built Bell discrimination circuit for m={m} ({circuit.dim} modes)")
    return circuit


def to_rail_major(state):
    """Reorder copy-major pair modes (2j, 2j+1) into rail-major r·m + j."""
    if state.modes % 2:
        raise IndexOutOfRangeError(f"Pair layout needs an even mode count, got {state.modes}")
    m = state.modes // 2
    amplitudes = {}
    for occupation, value in state.amplitudes.items():
        reordered = [0] * (2 * m)
        for j in range(m):
            reordered[j] = occupation[2 * j]
            reordered[m + j] = occupation[2 * j + 1]
        amplitudes[tuple(reordered)] = value
    return StateVector(amplitudes, modes=2 * m)


def half_scheme_state(m, first='beta+', order='rail'):
    """
    |first⟩|β⁻⟩^{⊗m-1} on 2m modes.

    Args:
        m (int): Number of copies
        first (str): 'beta+', 'beta-' or 'alpha'
        order (str): 'rail' puts copy j of rail r on mode r·m + j (the
            ordering of I₂⊗X_m); 'copy' puts it on mode 2j + r

    Returns:
        StateVector
    """
    if first not in _PAIR_FOCK:
        raise IndexOutOfRangeError(f"First pair must be beta+, beta- or alpha, got {first!r}")
    if m < 1:
        raise IndexOutOfRangeError(f"Need at least one copy, got m={m}")
    state = tensor_product([named_state(first)] + [named_state('beta-')] * (m - 1))
    if order == 'copy':
        return state
    if order == 'rail':
        return to_rail_major(state)
    raise IndexOutOfRangeError(f"Unknown mode order {order!r}")


def dicke_state(m, k, theta=0.0):
    """
    Dicke state over m copies with |0̄⟩ = |20⟩ and |1̄⟩ = -|02⟩, copy-major modes.

    Args:
        m (int): Number of copies
        k (int): Copies in |1̄⟩
        theta (float): Extra phase e^{iθ} on configurations with copy 0 in |1̄⟩

    Returns:
        StateVector: On 2m modes with 2m photons
    """
    if not 0 <= k <= m:
        raise IndexOutOfRangeError(f"Need 0 <= k <= m, got m={m}, k={k}")
    weight = (-1) ** k / math.sqrt(math.comb(m, k))
    phase = complex(math.cos(theta), math.sin(theta))
    amplitudes = {}
    for ones in combinations(range(m), k):
        occupation = []
        for j in range(m):
            occupation.extend((0, 2) if j in ones else (2, 0))
        amplitudes[tuple(occupation)] = weight * (phase if 0 in ones else 1)
    return StateVector(amplitudes, modes=2 * m)
