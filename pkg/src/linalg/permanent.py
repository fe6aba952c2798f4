"""Matrix permanent by Ryser's formula in Gray-code order."""

import numpy as np

from errors import NonSquareMatrixError, SizeLimitError

MAX_PERMANENT_SIZE = 30


class PermanentSizeError(SizeLimitError):
    pass


def permanent(matrix, max_size=MAX_PERMANENT_SIZE):
    """
    Returns the permanent of a square matrix.

    Ryser: Per(A) = (-1)^k Σ_{S ⊆ cols} (-1)^{|S|} ∏_i Σ_{j∈S} a_ij.
    Walking the subsets in Gray-code order changes one column per step,
    so the row sums are updated in O(k) and the whole sum costs O(2^k·k).

    Args:
        matrix (array-like): k×k complex matrix, k ≥ 0
        max_size (int): Largest k accepted

    Returns:
        complex: Per(matrix); 1 for the empty matrix
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareMatrixError(f"Permanent needs a square matrix, got shape {a.shape}")

    k = a.shape[0]
    if k > max_size:
        raise PermanentSizeError(f"Permanent of a {k}x{k} matrix exceeds the {max_size}x{max_size} limit")
    if k == 0:
        return 1 + 0j
    if k == 1:
        return complex(a[0, 0])
    if k == 2:
        return complex(a[0, 0] * a[1, 1] + a[0, 1] * a[1, 0])

    # row_comb[i] = Σ_{j∈S} a_ij for the current subset S
    row_comb = np.zeros(k, dtype=complex)
    total = 0j
    old_grey = 0
    sign = -1
    for index in range(1, 1 << k):
        new_grey = index ^ (index >> 1)
        diff = old_grey ^ new_grey
        column = diff.bit_length() - 1
        if new_grey & diff:
            row_comb += a[:, column]
        else:
            row_comb -= a[:, column]
        total += sign * np.prod(row_comb)
        sign = -sign
        old_grey = new_grey

    return complex(total if k % 2 == 0 else -total)
