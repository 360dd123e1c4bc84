"""Exact 1D/2D Haar expansions of grid functions.

Basis (L2-normalized): the constant 1 plus, for level k >= 0 and shift
1 <= j <= 2^k, the step function equal to +2^(k/2) on the left half and
-2^(k/2) on the right half of ((j-1)/2^k, j/2^k), zero outside.  A level-L
grid function is exactly a linear combination of the constant and levels
k <= L-1, so forward/inverse transforms are exact up to rounding.

Coefficients are stored flat: index 0 holds the constant's coefficient and
index 2^k + j - 1 holds level k, shift j.  The 2D spectrum is the tensor
layout C[m][n] = coefficient of basis_m(x1) * basis_n(x2); the "pure"
blocks (both factors non-constant) are the ones every sequence norm reads,
while the dc/row/col blocks keep reconstruction exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction1, GridFunction2

__all__ = [
    "HaarSpectrum1",
    "HaarSpectrum2",
    "haar_forward_1d",
    "haar_forward_2d",
    "partial_sum",
    "sup_per_level",
    "spectrum_records",
]


def _forward_along_axis(values: np.ndarray, axis: int) -> np.ndarray:
    """Flat Haar coefficients of piecewise-constant data along one axis."""
    a = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = a.shape[0]
    level = n.bit_length() - 1
    out = np.empty_like(a)
    s = a.copy()  # running cell averages, halving in length each step
    for k in range(level - 1, -1, -1):
        even = s[0::2]
        odd = s[1::2]
        # a_k^j = 2^(k/2) * 2^-(k+1) * (avg over left half - avg over right half)
        out[2**k : 2 ** (k + 1)] = (even - odd) * (2.0 ** (k / 2.0) * 2.0 ** (-(k + 1)))
        s = (even + odd) / 2.0
    out[0] = s[0]
    return np.moveaxis(out, 0, axis)


def _inverse_along_axis(coeffs: np.ndarray, axis: int) -> np.ndarray:
    """Inverse of :func:`_forward_along_axis` (synthesis to cell values)."""
    c = np.moveaxis(np.asarray(coeffs, dtype=float), axis, 0)
    n = c.shape[0]
    level = n.bit_length() - 1
    s = c[0:1].copy()
    for k in range(level):
        delta = c[2**k : 2 ** (k + 1)] * 2.0 ** (k / 2.0)
        nxt = np.empty((2 ** (k + 1),) + s.shape[1:], dtype=float)
        nxt[0::2] = s + delta
        nxt[1::2] = s - delta
        s = nxt
    return np.moveaxis(s, 0, axis)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class HaarSpectrum1:
    """1D spectrum: coeffs[0] = dc, coeffs[2^k + j - 1] = level k, shift j."""

    level: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (2**self.level,):
            raise ValueError(f"coeffs must have shape ({2**self.level},)")
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def dc(self) -> float:
        return float(self.coeffs[0])

    def level_coeffs(self, k: int) -> np.ndarray:
        """Vector (a_k^1, ..., a_k^{2^k})."""
        if not 0 <= k <= self.level - 1:
            raise ValueError(f"no level {k} in a level-{self.level} spectrum")
        return self.coeffs[2**k : 2 ** (k + 1)]


@dataclass(frozen=True)
class HaarSpectrum2:
    """2D spectrum in tensor layout.

    coeffs[m][n] multiplies basis_m(x1) * basis_n(x2) in the flat ordering
    above; block(k1, k2)[j1-1, j2-1] is the coefficient of the (k1,j1) x
    (k2,j2) tensor atom.
    """

    level: int
    coeffs: np.ndarray

    def __post_init__(self):
        n = 2**self.level
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (n, n):
            raise ValueError(f"coeffs must have shape ({n}, {n})")
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def dc(self) -> float:
        return float(self.coeffs[0, 0])

    def row_level(self, k2: int) -> np.ndarray:
        """Coefficients of 1 (x) level-k2 atoms."""
        self._check_level(k2)
        return self.coeffs[0, 2**k2 : 2 ** (k2 + 1)]

    def col_level(self, k1: int) -> np.ndarray:
        """Coefficients of level-k1 atoms (x) 1."""
        self._check_level(k1)
        return self.coeffs[2**k1 : 2 ** (k1 + 1), 0]

    def block(self, k1: int, k2: int) -> np.ndarray:
        """Pure block: 2^k1 x 2^k2 matrix of tensor-atom coefficients."""
        self._check_level(k1)
        self._check_level(k2)
        return self.coeffs[2**k1 : 2 ** (k1 + 1), 2**k2 : 2 ** (k2 + 1)]

    def _check_level(self, k: int):
        if not 0 <= k <= self.level - 1:
            raise ValueError(f"no level {k} in a level-{self.level} spectrum")

    def sum_of_squares(self) -> float:
        return float(np.sum(np.square(self.coeffs)))


def haar_forward_1d(phi: GridFunction1) -> HaarSpectrum1:
    """Exact Haar coefficients of a 1D grid function."""
    return HaarSpectrum1(phi.level, _forward_along_axis(phi.values, 0))


def haar_forward_2d(f: GridFunction2) -> HaarSpectrum2:
    """Exact 2D Haar coefficients, a^{j1,j2}_{k1,k2} = iint f chi x chi.

    Computed separably: a 1D transform in x1 per column, then in x2 per
    row; O(4^L) total.
    """
    c = _forward_along_axis(f.values, 0)
    c = _forward_along_axis(c, 1)
    return HaarSpectrum2(f.level, c)


def _axis_keep_mask(level: int, nmax: int, include_dc: bool) -> np.ndarray:
    keep = np.zeros(2**level, dtype=bool)
    keep[0] = include_dc
    top = min(nmax, level - 1)
    if top >= 0:
        keep[1 : 2 ** (top + 1)] = True
    return keep


def partial_sum(
    a: HaarSpectrum2, n1: int, n2: int, include_dc_blocks: bool = True
) -> GridFunction2:
    """Synthesize the truncation keeping pure blocks with k1 <= n1, k2 <= n2.

    With ``include_dc_blocks`` the constant, row and column terms (truncated
    the same way) are added as well; without it only the pure double series
    is summed.
    """
    if n1 > a.level or n2 > a.level:
        raise ValueError(f"truncation ({n1},{n2}) exceeds level {a.level}")
    if n1 < 0 or n2 < 0:
        raise ValueError("truncation levels must be >= 0")
    keep1 = _axis_keep_mask(a.level, n1, include_dc_blocks)
    keep2 = _axis_keep_mask(a.level, n2, include_dc_blocks)
    c = np.where(np.outer(keep1, keep2), a.coeffs, 0.0)
    v = _inverse_along_axis(c, 0)
    v = _inverse_along_axis(v, 1)
    return GridFunction2(a.level, v)


def sup_per_level(a: HaarSpectrum2) -> np.ndarray:
    """Matrix over (k1,k2) of max |coefficient| within each pure block."""
    mat = np.zeros((a.level, a.level))
    for k1 in range(a.level):
        for k2 in range(a.level):
            mat[k1, k2] = np.max(np.abs(a.block(k1, k2)))
    return mat


def spectrum_records(a: HaarSpectrum2):
    """Flat records (k1, k2, j1, j2, value); constant factors use k = -1, j = 0.

    Order: dc, column terms (k1 asc, j1 asc), row terms, then pure blocks in
    (k1, k2, j1, j2) ascending order.
    """
    yield (-1, -1, 0, 0, a.dc)
    for k1 in range(a.level):
        col = a.col_level(k1)
        for j1 in range(1, 2**k1 + 1):
            yield (k1, -1, j1, 0, float(col[j1 - 1]))
    for k2 in range(a.level):
        row = a.row_level(k2)
        for j2 in range(1, 2**k2 + 1):
            yield (-1, k2, 0, j2, float(row[j2 - 1]))
    for k1 in range(a.level):
        for k2 in range(a.level):
            block = a.block(k1, k2)
            for j1 in range(1, 2**k1 + 1):
                for j2 in range(1, 2**k2 + 1):
                    yield (k1, k2, j1, j2, float(block[j1 - 1, j2 - 1]))
