"""
Exact Fock-state simulation of linear optical circuits.

Amplitudes follow ⟨n'|B(S)|n⟩ = Per(S^{(n',n)}) / √(∏ n_i! n'_i!), where
S^{(n',n)} repeats row i of S n'_i times and column j n_j times. Columns
index the input state, so B_1(S) = S.
"""

import math
from collections import defaultdict

import numpy as np

from errors import IndexOutOfRangeError, PhotonNumberMismatchError
from fock.basis import DEFAULT_MAX_BASIS, check_basis_size, enumerate_basis
from fock.state import StateVector
from linalg.permanent import MAX_PERMANENT_SIZE, permanent
from utils.logger import log_debug
from utils.parallel import chunked, parallel_map

PROBABILITY_THRESHOLD = 1e-12
EXPANSION_CUTOFF = 1e-14


def _repeated_indices(occupation):
    return [i for i, count in enumerate(occupation) for _ in range(count)]


def _factorial_norm(occupation):
    return math.prod(math.factorial(c) for c in occupation)


def _check_modes(S, *occupations):
    for occupation in occupations:
        if len(occupation) != S.dim:
            raise IndexOutOfRangeError(f"{len(occupation)}-mode state on a {S.dim}-mode circuit")


def expanded_matrix(S, n, n_prime):
    """
    S^{(n, n')}: row i of S repeated n_i times, column j repeated n'_j times.

    Args:
        S (TransferMatrix): Circuit
        n (tuple): Row occupation
        n_prime (tuple): Column occupation

    Returns:
        numpy.ndarray: (Σn)×(Σn') matrix
    """
    _check_modes(S, n, n_prime)
    if sum(n) != sum(n_prime):
        raise PhotonNumberMismatchError(f"{n} and {n_prime} carry different photon numbers")
    rows = _repeated_indices(n)
    cols = _repeated_indices(n_prime)
    return S.entries[np.ix_(rows, cols)]


def boson_amplitude(S, n_out, n_in, max_size=MAX_PERMANENT_SIZE):
    """⟨n_out|B(S)|n_in⟩."""
    n_out = tuple(n_out)
    n_in = tuple(n_in)
    sub = expanded_matrix(S, n_out, n_in)
    return permanent(sub, max_size=max_size) / math.sqrt(_factorial_norm(n_out) * _factorial_norm(n_in))


def boson_matrix(S, n, threads=1, max_basis=DEFAULT_MAX_BASIS, max_permanent=MAX_PERMANENT_SIZE):
    """
    Full n-boson representation B_n(S) over enumerate_basis(S.dim, n).

    Returns:
        numpy.ndarray: N×N unitary, rows = outputs, columns = inputs
    """
    basis = enumerate_basis(S.dim, n, max_size=max_basis)
    states = basis.states
    log_debug(f"Building B_{n}(S) on {len(states)} basis states")

    def column(n_in):
        return [boson_amplitude(S, n_out, n_in, max_size=max_permanent) for n_out in states]

    columns = parallel_map(column, states, threads=threads)
    return np.array(columns, dtype=complex).T


def _evolve_permanent(state, S, threads, max_basis, max_permanent):
    basis = enumerate_basis(S.dim, state.photons, max_size=max_basis)
    inputs = list(state.amplitudes.items())
    # per-input column lists and normalizations are shared by every output
    prepared = [
        (_repeated_indices(n_in), _factorial_norm(n_in), c_in)
        for n_in, c_in in inputs
    ]
    entries = S.entries

    def amplitudes_for(chunk):
        out = []
        for n_out in chunk:
            rows = _repeated_indices(n_out)
            norm_out = _factorial_norm(n_out)
            total = 0j
            for cols, norm_in, c_in in prepared:
                total += c_in * permanent(entries[np.ix_(rows, cols)], max_size=max_permanent) / math.sqrt(norm_out * norm_in)
            out.append(total)
        return out

    chunks = chunked(list(basis.states), max(1, len(basis) // (4 * max(1, threads))))
    results = parallel_map(amplitudes_for, chunks, threads=threads)
    amplitudes = {}
    for chunk, values in zip(chunks, results):
        for n_out, value in zip(chunk, values):
            if value != 0:
                amplitudes[n_out] = value
    return StateVector(amplitudes, modes=S.dim)


def _evolve_expansion(state, S):
    m = S.dim
    n = state.photons
    base = n + 1
    powers = [base ** i for i in range(m)]
    entries = S.entries
    columns = [
        [(powers[i], entries[i, j]) for i in range(m) if abs(entries[i, j]) > EXPANSION_CUTOFF]
        for j in range(m)
    ]

    # occupations are packed as Σ n_i·(n+1)^i so adding a photon is one integer add
    accumulated = defaultdict(complex)
    for n_in, c_in in state.amplitudes.items():
        terms = {0: c_in / math.sqrt(_factorial_norm(n_in))}
        for j, count in enumerate(n_in):
            for _ in range(count):
                following = defaultdict(complex)
                for key, coefficient in terms.items():
                    for step, value in columns[j]:
                        following[key + step] += coefficient * value
                terms = following
        for key, coefficient in terms.items():
            accumulated[key] += coefficient

    amplitudes = {}
    for key, coefficient in accumulated.items():
        occupation = []
        for _ in range(m):
            key, count = divmod(key, base)
            occupation.append(count)
        occupation = tuple(occupation)
        value = coefficient * math.sqrt(_factorial_norm(occupation))
        if value != 0:
            amplitudes[occupation] = value
    return StateVector(amplitudes, modes=m)


def evolve(state, S, method='permanent', threads=1, max_basis=DEFAULT_MAX_BASIS, max_permanent=MAX_PERMANENT_SIZE):
    """
    Output state B(S)|Ψ⟩.

    Args:
        state (StateVector): Input state on S.dim modes
        S (TransferMatrix): Circuit
        method (str): 'permanent' evaluates one permanent per (input, output)
            pair over the output basis; 'expansion' multiplies out the images
            of the input creation operators and never enumerates the basis
        threads (int): Workers for the permanent path
        max_basis (int): Basis-size guard
        max_permanent (int): Largest permanent the permanent path may evaluate

    Returns:
        StateVector: Output amplitudes
    """
    if state.modes != S.dim:
        raise IndexOutOfRangeError(f"{state.modes}-mode state on a {S.dim}-mode circuit")

    if method == 'permanent':
        result = _evolve_permanent(state, S, threads, max_basis, max_permanent)
    elif method == 'expansion':
        # same guard as the permanent path: the output can fill the basis
        check_basis_size(S.dim, state.photons, max_basis)
        result = _evolve_expansion(state, S)
    else:
        raise ValueError(f"Unknown evolution method: {method}")

    log_debug(f"Evolved {len(state)} input terms into {len(result)} output terms ({method})")
    return result


def outcome_distribution(state, threshold=PROBABILITY_THRESHOLD):
    """
    Photon-number-resolving detection statistics.

    Returns:
        list: (occupation, probability) pairs above threshold, most likely first
    """
    outcomes = [
        (occupation, abs(c) ** 2)
        for occupation, c in state.amplitudes.items()
        if abs(c) ** 2 > threshold
    ]
    outcomes.sort(key=lambda item: (-item[1], item[0]))
    return outcomes
