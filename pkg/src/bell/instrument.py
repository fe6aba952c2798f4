"""
Outcome classification and the quantum instrument of the Bell scheme.

The instrument is given twice: in closed form (kraus_operators) and as a
brute-force reconstruction from simulated detection amplitudes
(reconstruct_povm). Both produce a BqiResult keyed by outcome label so
they can be compared class by class.
"""

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from bell.layout import DualRailQubitLayout, build_circuit
from errors import (
    ConsistencyError,
    IndexOutOfRangeError,
    InvalidPhotonCountError,
    SizeLimitError,
)
from fock.basis import DEFAULT_MAX_BASIS, basis_size
from fock.simulator import evolve
from fock.state import basis_state
from utils.logger import log_debug, log_info, log_warning
from utils.parallel import parallel_map

RANK_ONE_TOL = 1e-8
COMPLETENESS_TOL = 1e-8
ORACLE_MAX_M = 3

LOGICAL_BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))

_S = 1 / math.sqrt(2)
BELL_VECTORS = {
    'psi+': np.array([0, _S, _S, 0], dtype=complex),
    'psi-': np.array([0, _S, -_S, 0], dtype=complex),
    'phi+': np.array([_S, 0, 0, _S], dtype=complex),
    'phi-': np.array([_S, 0, 0, -_S], dtype=complex),
}

_FAILURE_LABEL = re.compile(r'^K(\d+)$')


def failure_label(k):
    return f"K{k}"


def label_order(label):
    """Sort key: psi+, psi-, phi+, then K0, K1, ..."""
    fixed = {'psi+': 0, 'psi-': 1, 'phi+': 2}
    if label in fixed:
        return (fixed[label], 0)
    match = _FAILURE_LABEL.match(label)
    if not match:
        raise IndexOutOfRangeError(f"Unknown outcome label {label!r}")
    return (3, int(match.group(1)))


@dataclass(frozen=True)
class KrausOperator:
    """Rank-1 Kraus operator stored as a row vector over |00⟩,|01⟩,|10⟩,|11⟩."""

    label: str
    row: np.ndarray = field(compare=False)

    @property
    def povm_element(self):
        return np.outer(self.row.conj(), self.row)

    def probability(self, vector):
        return float(abs(self.row @ vector) ** 2)


@dataclass
class BqiResult:
    """A four-dimensional instrument as Kraus rows plus class POVM elements."""

    m: int
    source: str
    kraus: Tuple[KrausOperator, ...]
    povm: Dict[str, np.ndarray]
    completeness_defect: float
    rank_residuals: Dict[str, float] = field(default_factory=dict)
    outcomes: int = 0

    @property
    def labels(self):
        return [k.label for k in self.kraus]

    def element(self, label):
        return self.povm.get(label, np.zeros((4, 4), dtype=complex))


def _completeness_defect(povm):
    total = sum(povm.values(), np.zeros((4, 4), dtype=complex))
    return float(np.linalg.norm(total - np.eye(4), 2))


def _result(m, source, kraus, rank_residuals=None, outcomes=0):
    kraus = tuple(sorted(kraus, key=lambda k: label_order(k.label)))
    povm = {k.label: k.povm_element for k in kraus}
    defect = _completeness_defect(povm)
    if defect > COMPLETENESS_TOL:
        raise ConsistencyError(f"{source} instrument for m={m} is incomplete: ‖Σ K†K - I‖ = {defect:.3e}")
    return BqiResult(
        m=m,
        source=source,
        kraus=kraus,
        povm=povm,
        completeness_defect=defect,
        rank_residuals=dict(rank_residuals or {}),
        outcomes=outcomes,
    )


def classify_outcome(m, outcome):
    """
    Label a detection pattern of the 4m-mode scheme.

    Args:
        m (int): Copies per rail group
        outcome (tuple): Photon counts on all 4m modes

    Returns:
        str: 'psi-', 'psi+', 'phi+' or 'K{k}' for failure class k

    Raises:
        InvalidPhotonCountError: If the pattern cannot come from the scheme
    """
    layout = DualRailQubitLayout(m)
    if len(outcome) != layout.modes:
        raise IndexOutOfRangeError(f"Outcome has {len(outcome)} modes, expected {layout.modes}")
    if sum(outcome) != layout.photons:
        raise InvalidPhotonCountError(f"Outcome carries {sum(outcome)} photons, expected {layout.photons}")

    groups = [sum(outcome[c * m:(c + 1) * m]) for c in range(4)]
    halves = (groups[0] + groups[1], groups[2] + groups[3])
    if halves[0] % 2:
        return 'psi-'

    heavy = 0 if halves[0] > halves[1] else 1
    if halves[heavy] != 2 * m:
        raise InvalidPhotonCountError(f"Half photon counts {halves} are not reachable for m={m}")

    rail0, rail1 = layout.half(heavy)
    if groups[rail1] % 2:
        return 'psi+'

    # eigenvalue of the copy shift, read off as a Z_m phase after F_m
    t = sum(j * (outcome[layout.mode(rail0, j)] + outcome[layout.mode(rail1, j)]) for j in range(m)) % m
    if t:
        return 'phi+'
    return failure_label(groups[rail1] // 2)


def identified_bell_state(label, m):
    """The Bell state an outcome class announces, or None for failure classes."""
    if label in ('psi+', 'psi-', 'phi+'):
        return label
    match = _FAILURE_LABEL.match(label)
    if not match:
        raise IndexOutOfRangeError(f"Unknown outcome label {label!r}")
    if m % 2 == 0 and int(match.group(1)) == m // 2:
        return 'phi-'
    return None


def kraus_operators(m):
    """
    Closed-form instrument: ⟨ψ⁺|, ⟨ψ⁻|, √(1-1/m)⟨φ⁺| and K_0..K_m with
    K_k = √C(m,k) 2^{-m/2} (⟨φ⁻| + ((m-2k)/m)⟨φ⁺|).

    Args:
        m (int): Copies per rail group, m >= 2

    Returns:
        BqiResult
    """
    if m < 2:
        raise IndexOutOfRangeError(f"The scheme needs m >= 2, got {m}")

    phi_plus = BELL_VECTORS['phi+'].conj()
    phi_minus = BELL_VECTORS['phi-'].conj()
    kraus = [
        KrausOperator('psi+', BELL_VECTORS['psi+'].conj()),
        KrausOperator('psi-', BELL_VECTORS['psi-'].conj()),
        KrausOperator('phi+', math.sqrt(1 - 1 / m) * phi_plus),
    ]
    for k in range(m + 1):
        weight = math.sqrt(math.comb(m, k) / 2 ** m)
        kraus.append(KrausOperator(failure_label(k), weight * (phi_minus + ((m - 2 * k) / m) * phi_plus)))
    return _result(m, 'closed-form', kraus)


def _rank_one_kraus(label, rows):
    """Collapse proportional amplitude rows into one Kraus row."""
    stacked = np.array(rows, dtype=complex)
    singular = np.linalg.svd(stacked, compute_uv=False)
    residual = float(singular[1] / singular[0]) if len(singular) > 1 and singular[0] > 0 else 0.0
    if residual > RANK_ONE_TOL:
        raise ConsistencyError(f"Outcome class {label} is not rank 1 (relative residual {residual:.3e})")

    element = stacked.conj().T @ stacked
    eigenvalues, eigenvectors = np.linalg.eigh(element)
    top = max(float(eigenvalues[-1]), 0.0)
    return KrausOperator(label, math.sqrt(top) * eigenvectors[:, -1].conj()), residual


def reconstruct_povm(m, force=False, threads=1, progress=False, max_m=ORACLE_MAX_M, max_basis=DEFAULT_MAX_BASIS):
    """
    Rebuild the instrument from simulated detection amplitudes.

    Each logical input |ab⟩, with every ancilla photon present, is pushed
    through build_circuit(m). For a detection pattern n the four numbers
    ⟨n|B(U)|ab⟩ form its Kraus row; rows are grouped by classify_outcome
    and each group must be rank 1.

    Args:
        m (int): Copies per rail group
        force (bool): Allow m above max_m
        threads (int): Workers over the four logical inputs
        progress (bool): Show a progress bar
        max_m (int): Largest m run without force
        max_basis (int): Basis-size guard for the evolutions

    Returns:
        BqiResult: With per-class rank residuals and the outcome count

    Raises:
        SizeLimitError: If m exceeds max_m without force, or the basis guard trips
        ConsistencyError: If a class is not rank 1 or the instrument is incomplete
    """
    layout = DualRailQubitLayout(m)
    size = basis_size(layout.modes, layout.photons)
    if m > max_m and not force:
        raise SizeLimitError(
            f"Oracle for m={m} spans {size} Fock states on {layout.modes} modes; "
            f"limit is m <= {max_m} (use --force or raise BSF_ORACLE_MAX_M)"
        )
    if m > max_m:
        log_warning(f"Forcing oracle above m={max_m}: {size} Fock states")

    circuit = build_circuit(m)
    log_info(f"Reconstructing instrument for m={m}: {layout.modes} modes, {layout.photons} photons, {size} outcomes")

    inputs = [basis_state(layout.input_occupation(a, b)) for a, b in LOGICAL_BASIS]
    outputs = parallel_map(
        lambda state: evolve(state, circuit, method='expansion', max_basis=max_basis),
        inputs,
        threads=threads,
        progress=progress,
        desc=f"oracle m={m}",
    )

    outcomes = set()
    for output in outputs:
        outcomes.update(output.amplitudes)

    rows = defaultdict(list)
    for outcome in sorted(outcomes):
        row = [output.amplitude(outcome) for output in outputs]
        rows[classify_outcome(m, outcome)].append(row)
    log_debug(f"Classified {len(outcomes)} detection patterns into {len(rows)} classes")

    kraus = []
    residuals = {}
    for label, class_rows in rows.items():
        operator, residual = _rank_one_kraus(label, class_rows)
        kraus.append(operator)
        residuals[label] = residual
    return _result(m, 'oracle', kraus, rank_residuals=residuals, outcomes=len(outcomes))


def povm_deviation(first, second):
    """Largest entrywise difference between class POVM elements of two instruments."""
    labels = set(first.povm) | set(second.povm)
    return max(float(np.max(np.abs(first.element(label) - second.element(label)))) for label in labels)
