"""n-photon, m-mode Fock bases."""

import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

from errors import IndexOutOfRangeError, SizeLimitError
from utils.logger import log_debug

DEFAULT_MAX_BASIS = 10_000_000


class BasisSizeError(SizeLimitError):
    pass


def basis_size(m, n):
    """C(m+n-1, n), the number of ways to put n photons in m modes."""
    return math.comb(m + n - 1, n)


def _compositions(m, n):
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(m - 1, n - first):
            yield (first,) + rest


def check_basis_size(m, n, max_size=DEFAULT_MAX_BASIS):
    """Return C(m+n-1, n), raising BasisSizeError above max_size."""
    size = basis_size(m, n)
    if size > max_size:
        raise BasisSizeError(
            f"Fock basis for m={m}, n={n} has {size} states, above the limit of {max_size} "
            f"(raise BSF_MAX_BASIS to override)"
        )
    return size


@dataclass(frozen=True)
class FockBasis:
    """All occupation tuples with n photons in m modes, lexicographically ascending."""

    m: int
    n: int
    states: Tuple[Tuple[int, ...], ...]
    index: Dict[Tuple[int, ...], int] = field(compare=False, repr=False)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, occupation):
        return tuple(occupation) in self.index

    def position(self, occupation):
        return self.index[tuple(occupation)]


def enumerate_basis(m, n, max_size=DEFAULT_MAX_BASIS):
    """
    Enumerate the Fock basis for n photons in m modes.

    Args:
        m (int): Mode count, m ≥ 1
        n (int): Photon number, n ≥ 0
        max_size (int): Basis-size guard (BSF_MAX_BASIS on the command line)

    Returns:
        FockBasis: States in lexicographic ascending order
    """
    if m < 1 or n < 0:
        raise IndexOutOfRangeError(f"Need m >= 1 and n >= 0, got m={m}, n={n}")

    size = check_basis_size(m, n, max_size)
    states = tuple(_compositions(m, n))
    log_debug(f"Enumerated Fock basis m={m} n={n} ({size} states)")
    return FockBasis(m=m, n=n, states=states, index={s: i for i, s in enumerate(states)})
