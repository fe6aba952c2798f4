"""Sparse state vectors over a fixed-photon-number Fock space."""

import math
from types import MappingProxyType

import numpy as np

from errors import IndexOutOfRangeError, PhotonNumberMismatchError
from fock.basis import DEFAULT_MAX_BASIS, enumerate_basis

NORM_TOL = 1e-9


class StateVector:
    """
    Σ_n c_n |n⟩ stored as a map from occupation tuples to amplitudes.

    Only nonzero amplitudes are kept; every occupation has the same mode
    count and photon number. Unnormalized vectors are allowed and report
    ``is_normalized == False``.
    """

    __slots__ = ('modes', 'photons', '_amplitudes')

    def __init__(self, amplitudes, modes=None):
        """
        Args:
            amplitudes (dict): Occupation tuple -> complex amplitude
            modes (int): Mode count, required when amplitudes is empty
        """
        amps = {}
        photons = None
        for occupation, value in dict(amplitudes).items():
            occupation = tuple(int(x) for x in occupation)
            if any(x < 0 for x in occupation):
                raise IndexOutOfRangeError(f"Negative occupation in {occupation}")
            if modes is None:
                modes = len(occupation)
            if len(occupation) != modes:
                raise IndexOutOfRangeError(f"State {occupation} does not have {modes} modes")
            total = sum(occupation)
            if photons is None:
                photons = total
            elif total != photons:
                raise PhotonNumberMismatchError(f"Mixed photon numbers {photons} and {total} in one state")
            value = complex(value)
            if value != 0:
                amps[occupation] = amps.get(occupation, 0j) + value

        if modes is None:
            raise IndexOutOfRangeError("Mode count is required for an empty state")
        self.modes = modes
        self.photons = photons if photons is not None else 0
        self._amplitudes = amps

    @property
    def amplitudes(self):
        return MappingProxyType(self._amplitudes)

    @property
    def support(self):
        return sorted(self._amplitudes)

    def amplitude(self, occupation):
        return self._amplitudes.get(tuple(occupation), 0j)

    def norm(self):
        return math.sqrt(sum(abs(c) ** 2 for c in self._amplitudes.values()))

    @property
    def is_normalized(self):
        return abs(self.norm() - 1.0) <= NORM_TOL

    def normalized(self):
        norm = self.norm()
        if norm == 0:
            raise IndexOutOfRangeError("Cannot normalize the zero vector")
        return self.scaled(1.0 / norm)

    def scaled(self, factor):
        return StateVector({k: v * factor for k, v in self._amplitudes.items()}, modes=self.modes)

    def inner(self, other):
        """⟨self|other⟩."""
        small = self if len(self._amplitudes) <= len(other._amplitudes) else other
        total = 0j
        for occupation in small._amplitudes:
            total += self.amplitude(occupation).conjugate() * other.amplitude(occupation)
        return total

    def tensor(self, other):
        """Product state; other's modes follow self's."""
        out = {}
        for a, ca in self._amplitudes.items():
            for b, cb in other._amplitudes.items():
                out[a + b] = ca * cb
        return StateVector(out, modes=self.modes + other.modes)

    def basis(self, max_size=DEFAULT_MAX_BASIS):
        return enumerate_basis(self.modes, self.photons, max_size=max_size)

    def to_dense(self, basis=None):
        basis = basis or self.basis()
        vector = np.zeros(len(basis), dtype=complex)
        for occupation, value in self._amplitudes.items():
            vector[basis.position(occupation)] = value
        return vector

    @classmethod
    def from_dense(cls, basis, vector, cutoff=0.0):
        return cls(
            {s: c for s, c in zip(basis.states, vector) if abs(c) > cutoff},
            modes=basis.m,
        )

    def __len__(self):
        return len(self._amplitudes)

    def __repr__(self):
        return f"StateVector(modes={self.modes}, photons={self.photons}, support={len(self._amplitudes)})"


def basis_state(occupation):
    """|n⟩ for a single occupation tuple."""
    occupation = tuple(occupation)
    return StateVector({occupation: 1.0}, modes=len(occupation))


def tensor_product(states):
    """Product of several states in the given mode order."""
    states = list(states)
    result = states[0]
    for state in states[1:]:
        result = result.tensor(state)
    return result
