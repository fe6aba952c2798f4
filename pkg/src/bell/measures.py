"""Success probability and entanglement figures of merit for the Bell scheme."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from bell.instrument import BELL_VECTORS, BqiResult, identified_bell_state
from errors import IndexOutOfRangeError, NotRankOneError
from utils.logger import log_debug

RANK_ONE_TOL = 1e-8
ZERO_TRACE = 1e-15
TABLE_MAX_M = 64


@dataclass(frozen=True)
class SuccessProbability:
    m: int
    exact: Fraction
    value: float
    extension: bool  # odd m, outside the even-m closed form


@dataclass(frozen=True)
class TableRow:
    m: int
    p_exact: Fraction
    p: float
    e: float
    extension: bool


def success_probability(m):
    """
    Average probability of announcing the right Bell state.

    Even m: (1/4)(3 - 1/m + C(m, m/2)/2^m). Odd m has no failure class that
    projects onto φ⁻, which leaves (1/4)(3 - 1/m).
    """
    if m < 2:
        raise IndexOutOfRangeError(f"The scheme needs m >= 2, got {m}")
    exact = 3 - Fraction(1, m)
    if m % 2 == 0:
        exact += Fraction(math.comb(m, m // 2), 2 ** m)
    exact /= 4
    return SuccessProbability(m=m, exact=exact, value=float(exact), extension=m % 2 == 1)


def success_upper_bound(m):
    """(1/4)(3 - 1/m + √(4/(πm))), an upper bound on P_m for even m."""
    return 0.25 * (3 - 1 / m + math.sqrt(4 / (math.pi * m)))


def bell_success_probabilities(bqi: BqiResult):
    """
    Probability that each Bell input is announced correctly, and their mean.

    Returns:
        dict: {'psi+': p, 'psi-': p, 'phi+': p, 'phi-': p, 'average': p}
    """
    probabilities = {}
    for kind, vector in BELL_VECTORS.items():
        total = 0.0
        for label, element in bqi.povm.items():
            if identified_bell_state(label, bqi.m) == kind:
                total += float(np.real(vector.conj() @ element @ vector))
        probabilities[kind] = total
    probabilities['average'] = sum(probabilities[k] for k in BELL_VECTORS) / len(BELL_VECTORS)
    return probabilities


def entanglement_entropy(state):
    """
    Entanglement entropy in bits of a two-qubit pure state.

    Args:
        state (array-like): Amplitudes over |00⟩,|01⟩,|10⟩,|11⟩

    Returns:
        float: Shannon entropy of the squared Schmidt coefficients
    """
    vector = np.asarray(state, dtype=complex).reshape(2, 2)
    schmidt = np.linalg.svd(vector, compute_uv=False) ** 2
    schmidt = schmidt / schmidt.sum()
    schmidt = schmidt[schmidt > ZERO_TRACE]
    return float(max(-np.sum(schmidt * np.log2(schmidt)), 0.0))


def relative_entropy_of_measurement(povm):
    """
    (1/4) Σ_x tr(M_x) E_s(M_x / tr M_x) for rank-1 POVM elements.

    Args:
        povm (BqiResult or iterable): Instrument, or its 4×4 POVM elements

    Raises:
        NotRankOneError: If some element has a second eigenvalue above 1e-8
    """
    elements = povm.povm.values() if isinstance(povm, BqiResult) else povm
    total = 0.0
    for element in elements:
        element = np.asarray(element, dtype=complex)
        trace = float(np.real(np.trace(element)))
        if trace < ZERO_TRACE:
            continue
        eigenvalues, eigenvectors = np.linalg.eigh(element)
        if eigenvalues[-2] > RANK_ONE_TOL:
            raise NotRankOneError(f"POVM element has rank > 1 (second eigenvalue {eigenvalues[-2]:.3e})")
        total += trace * entanglement_entropy(eigenvectors[:, -1])
    return total / 4


def _f(x):
    weight = x ** 2 + (1 - x) ** 2
    return sum(-p ** 2 * math.log2(p ** 2 / weight) for p in (x, 1 - x) if p > 0)


def entanglement_measure(m):
    """E_m = (1/4)[3 - 1/m + Σ_k C(m,k) 2^{1-m} F(k/m)]."""
    if m < 2:
        raise IndexOutOfRangeError(f"The scheme needs m >= 2, got {m}")
    # int/int division keeps C(m,k) and 2^(m-1) out of float range for large m
    tail = sum(math.comb(m, k) / 2 ** (m - 1) * _f(k / m) for k in range(m + 1))
    return 0.25 * (3 - 1 / m + tail)


def success_table(m_max):
    """
    P_m and E_m for m = 2..m_max.

    Args:
        m_max (int): Last row, 2 <= m_max <= 64

    Returns:
        list: TableRow per m; odd-m rows are flagged as extensions
    """
    if not 2 <= m_max <= TABLE_MAX_M:
        raise IndexOutOfRangeError(f"Table range must satisfy 2 <= m_max <= {TABLE_MAX_M}, got {m_max}")
    rows = []
    for m in range(2, m_max + 1):
        p = success_probability(m)
        rows.append(TableRow(m=m, p_exact=p.exact, p=p.value, e=entanglement_measure(m), extension=p.extension))
    log_debug(f"Computed {len(rows)} table rows")
    return rows
