"""Unit phases stored as fractions of a turn.

A phase e^{2πi·p/q} is kept as the rational p/q in [0, 1), so products of
Fourier/Pauli entries and character values never pick up rounding error.
Phases read off floating matrices are snapped to the nearest small
denominator; those that do not snap keep a float turn and report
``exact == False``.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

DEFAULT_MAX_DENOMINATOR = 4096
SNAP_TOLERANCE = 1e-9

_QUARTER_TURNS = {
    Fraction(0): 1 + 0j,
    Fraction(1, 4): 1j,
    Fraction(1, 2): -1 + 0j,
    Fraction(3, 4): -1j,
}


@dataclass(frozen=True)
class ExactPhase:
    """e^{2πi·turns}; exact when turns is a Fraction."""

    turns: Union[Fraction, float] = Fraction(0)

    def __post_init__(self):
        turns = self.turns
        if isinstance(turns, (int, Fraction)):
            turns = Fraction(turns) % 1
        else:
            turns = float(turns) % 1.0
            if turns >= 1.0:
                turns = 0.0
        object.__setattr__(self, 'turns', turns)

    @property
    def exact(self):
        return isinstance(self.turns, Fraction)

    @property
    def is_identity(self):
        if self.exact:
            return self.turns == 0
        return abs(cmath.exp(2j * math.pi * self.turns) - 1) < SNAP_TOLERANCE

    def to_complex(self):
        if self.exact and self.turns in _QUARTER_TURNS:
            return _QUARTER_TURNS[self.turns]
        return cmath.exp(2j * math.pi * float(self.turns))

    def inverse(self):
        return ExactPhase(-self.turns)

    def __mul__(self, other):
        if not isinstance(other, ExactPhase):
            return NotImplemented
        return ExactPhase(self.turns + other.turns)

    def __truediv__(self, other):
        if not isinstance(other, ExactPhase):
            return NotImplemented
        return ExactPhase(self.turns - other.turns)

    def __pow__(self, exponent):
        return ExactPhase(self.turns * int(exponent))

    def __str__(self):
        if not self.exact:
            return f"e(2pi*{self.turns:.12g})"
        if self.turns in _QUARTER_TURNS:
            return {0: '1', Fraction(1, 4): 'i', Fraction(1, 2): '-1', Fraction(3, 4): '-i'}[self.turns]
        return f"e({self.turns})"

    @classmethod
    def from_complex(cls, value, max_denominator=DEFAULT_MAX_DENOMINATOR, tol=SNAP_TOLERANCE):
        """
        Snap a unit-modulus complex number to a rational turn.

        Args:
            value (complex): Nonzero complex number; only its argument is used
            max_denominator (int): Largest denominator tried
            tol (float): Allowed distance between value and the snapped phase

        Returns:
            ExactPhase: Exact when snapping succeeds, float-turn otherwise
        """
        unit = complex(value) / abs(value)
        turns = (cmath.phase(unit) / (2 * math.pi)) % 1.0
        snapped = Fraction(turns).limit_denominator(max_denominator) % 1
        candidate = cls(snapped)
        if abs(candidate.to_complex() - unit) <= tol:
            return candidate
        return cls(turns)

    @classmethod
    def root_of_unity(cls, power, order):
        """ω^power with ω = e^{2πi/order}."""
        return cls(Fraction(power, order))


def phase_product(phases):
    """Product of an iterable of ExactPhase values."""
    total = ExactPhase()
    for phase in phases:
        total = total * phase
    return total
