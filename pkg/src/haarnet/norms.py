"""Norms and maximal functions on dyadic grid functions.

Everything here is exact for piecewise constants: mixed-metric Lebesgue
norms are finite cell sums, the rectangle maximal function enumerates all
grid-aligned rectangles through a summed-area table, and the net-space
integral is evaluated in closed form on each patch where the maximal
function is constant.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction1, GridFunction2, build_sat
from .transform import HaarSpectrum1, HaarSpectrum2, sup_per_level

__all__ = [
    "ExponentPair",
    "NetMaximalTable",
    "NormReport",
    "parse_exponent",
    "mixed_lp_norm",
    "net_maximal",
    "net_norm",
    "net_norm_from_table",
    "seq_norm",
    "seq_norm_1d",
    "lp_norm_1d",
    "rearrangement",
    "lemma1_rhs",
    "compute_norm_report",
]

INF = math.inf


def parse_exponent(text: str) -> float:
    """Parse an exponent flag value; the token ``inf`` means infinity."""
    if text.strip().lower() in {"inf", "infinity", "oo"}:
        return INF
    return float(text)


@dataclass(frozen=True)
class ExponentPair:
    """Validated exponent vectors: integrability pair p, summability pair q.

    Requires 1 < p_i < inf and 0 < q_i <= inf.  The derived weights
    sigma_i = 1/2 - 1/p_i lie in (-1/2, 1/2).
    """

    p1: float
    p2: float
    q1: float = 2.0
    q2: float = 2.0

    def __post_init__(self):
        for p in (self.p1, self.p2):
            if not (1.0 < p < INF):
                raise ValueError(f"p exponents must satisfy 1 < p < inf, got {p}")
        for q in (self.q1, self.q2):
            if not (0.0 < q <= INF):
                raise ValueError(f"q exponents must satisfy 0 < q <= inf, got {q}")

    @property
    def p(self) -> tuple:
        return (self.p1, self.p2)

    @property
    def q(self) -> tuple:
        return (self.q1, self.q2)

    @property
    def sigma(self) -> tuple:
        return (0.5 - 1.0 / self.p1, 0.5 - 1.0 / self.p2)

    def with_q(self, q1: float, q2: float) -> "ExponentPair":
        return ExponentPair(self.p1, self.p2, q1, q2)


def mixed_lp_norm(f: GridFunction2, e: ExponentPair) -> float:
    """Mixed-metric Lebesgue norm, inner exponent p1 in x1 then p2 in x2.

    (int_0^1 (int_0^1 |f|^p1 dx1)^(p2/p1) dx2)^(1/p2), exact for
    piecewise-constant f.
    """
    h = f.cell_width
    inner = np.sum(np.abs(f.values) ** e.p1, axis=0) * h  # one value per x2 cell
    outer = np.sum(inner ** (e.p2 / e.p1)) * h
    return float(outer ** (1.0 / e.p2))


@dataclass(frozen=True)
class NetMaximalTable:
    """Rectangle maxima of a grid function, per exact cell size.

    size_max[s1-1][s2-1] is the largest |rectangle average| over all
    positions of an s1 x s2 cell block; fbar is its 2D suffix maximum, i.e.
    the maximal-function value for side lengths >= (s1*2^-L, s2*2^-L).
    maxabs = fbar[0][0] is the small-size limit (the largest |cell value|).
    """

    level: int
    size_max: np.ndarray
    fbar: np.ndarray
    maxabs: float

    def __post_init__(self):
        n = 2**self.level
        for name in ("size_max", "fbar"):
            a = np.asarray(getattr(self, name), dtype=float)
            if a.shape != (n, n):
                raise ValueError(f"{name} must have shape ({n}, {n})")
            a = np.array(a, copy=True)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    def fbar_at(self, s1: int, s2: int) -> float:
        """fbar for 1-based integer sizes (s1, s2)."""
        return float(self.fbar[s1 - 1, s2 - 1])

    def records(self):
        """Rows (s1, s2, size_max, fbar) in s1-major order, 1-based sizes."""
        n = 2**self.level
        for s1 in range(1, n + 1):
            for s2 in range(1, n + 1):
                yield (s1, s2, float(self.size_max[s1 - 1, s2 - 1]),
                       float(self.fbar[s1 - 1, s2 - 1]))


def _suffix_max_2d(a: np.ndarray) -> np.ndarray:
    b = np.maximum.accumulate(a[::-1, :], axis=0)[::-1, :]
    return np.maximum.accumulate(b[:, ::-1], axis=1)[:, ::-1]


def net_maximal(f: GridFunction2, threads: int = 1) -> NetMaximalTable:
    """Scan all grid-aligned rectangles for the net maximal function.

    All positions x all sizes are enumerated (about N^4/4 rectangles for an
    N x N grid) with O(1) summed-area lookups each.  The scan runs in plain
    float64 for speed; single-rectangle queries via rect_integral retain the
    extended-precision path.
    """
    n = 2**f.level
    cum = np.asarray(build_sat(f).cumulative, dtype=float)
    inv_area = (2.0**f.level) * (2.0**f.level)

    def scan_row(s1: int) -> np.ndarray:
        band = cum[s1:, :] - cum[:-s1, :]  # integrals over s1 consecutive rows
        out = np.empty(n)
        for s2 in range(1, n + 1):
            d = band[:, s2:] - band[:, :-s2]
            np.abs(d, out=d)
            out[s2 - 1] = d.max() / (s1 * s2)
        return out

    sizes = range(1, n + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(scan_row, sizes))
    else:
        rows = [scan_row(s1) for s1 in sizes]
    size_max = np.asarray(rows) * inv_area
    fbar = _suffix_max_2d(size_max)
    return NetMaximalTable(level=f.level, size_max=size_max, fbar=fbar,
                           maxabs=float(fbar[0, 0]))


def _patch_weights(level: int, a: float) -> np.ndarray:
    # integral of t^(a-1) over ((s-1)h, s*h] for s = 1..2^L: antiderivative
    # t^a / a, telescoping over the grid.
    n = 2**level
    t = np.arange(n + 1) * 2.0**-level
    ta = t**a
    return (ta[1:] - ta[:-1]) / a


def _right_endpoints_pow(level: int, expo: float) -> np.ndarray:
    n = 2**level
    return (np.arange(1, n + 1) * 2.0**-level) ** expo


def net_norm_from_table(table: NetMaximalTable, e: ExponentPair) -> float:
    """Net-space norm from a precomputed maximal table.

    The maximal function is constant on each size patch, so each factor of
    the double integral reduces to exact power-function integrals; an
    infinite q replaces that integral by a supremum, attained at the right
    endpoint of a patch.
    """
    fbar = table.fbar
    level = table.level
    p1, p2, q1, q2 = e.p1, e.p2, e.q1, e.q2

    if q1 == INF:
        # g(t2) = sup_t1 t1^(1/p1) * fbar(t1, t2)
        g = np.max(_right_endpoints_pow(level, 1.0 / p1)[:, None] * fbar, axis=0)
        if q2 == INF:
            return float(np.max(_right_endpoints_pow(level, 1.0 / p2) * g))
        w2 = _patch_weights(level, q2 / p2)
        return float((g**q2 @ w2) ** (1.0 / q2))

    w1 = _patch_weights(level, q1 / p1)
    inner = w1 @ fbar**q1  # one value per t2 patch
    if q2 == INF:
        return float(np.max(_right_endpoints_pow(level, 1.0 / p2) * inner ** (1.0 / q1)))
    w2 = _patch_weights(level, q2 / p2)
    return float((inner ** (q2 / q1) @ w2) ** (1.0 / q2))


def net_norm(f: GridFunction2, e: ExponentPair, table: NetMaximalTable | None = None,
             threads: int = 1) -> float:
    """Net-space norm of a grid function (see net_norm_from_table)."""
    if table is None:
        table = net_maximal(f, threads=threads)
    return net_norm_from_table(table, e)


def _weighted_sup_matrix(a: HaarSpectrum2, e: ExponentPair,
                         max_levels: tuple | None) -> np.ndarray:
    s = sup_per_level(a)
    if max_levels is not None:
        n1, n2 = max_levels
        s = s[: n1 + 1, : n2 + 1]
    sigma1, sigma2 = e.sigma
    k1 = np.arange(s.shape[0])
    k2 = np.arange(s.shape[1])
    return (2.0 ** (sigma1 * k1))[:, None] * (2.0 ** (sigma2 * k2))[None, :] * s


def seq_norm(a: HaarSpectrum2, e: ExponentPair, max_levels: tuple | None = None) -> float:
    """Weighted level-sup norm of the pure coefficient blocks.

    ell_q1 over k1 inside ell_q2 over k2 of 2^(sigma1*k1 + sigma2*k2) times
    the per-level sup of |coefficients|; infinite q means supremum.
    ``max_levels=(N1, N2)`` restricts to k1 <= N1, k2 <= N2.
    """
    w = _weighted_sup_matrix(a, e, max_levels)
    if w.size == 0:
        return 0.0
    q1, q2 = e.q1, e.q2
    if q1 == INF:
        per_k2 = np.max(w, axis=0)
        if q2 == INF:
            return float(np.max(per_k2))
        return float(np.sum(per_k2**q2) ** (1.0 / q2))
    inner = np.sum(w**q1, axis=0)  # one value per k2, already raised to q1
    if q2 == INF:
        return float(np.max(inner ** (1.0 / q1)))
    return float(np.sum(inner ** (q2 / q1)) ** (1.0 / q2))


def seq_norm_1d(a: HaarSpectrum1, p: float) -> float:
    """1D weighted level-sup criterion value.

    (sum_k (2^(k(1/2 - 1/p)) * sup_j |a_k^j|)^p)^(1/p) over the
    non-constant levels.
    """
    if not 1.0 < p < INF:
        raise ValueError(f"need 1 < p < inf, got {p}")
    if a.level == 0:
        return 0.0
    sups = np.array([np.max(np.abs(a.level_coeffs(k))) for k in range(a.level)])
    weights = 2.0 ** (np.arange(a.level) * (0.5 - 1.0 / p))
    return float(np.sum((weights * sups) ** p) ** (1.0 / p))


def lp_norm_1d(phi: GridFunction1, p: float) -> float:
    """Exact L_p[0,1] norm of a 1D grid function."""
    return float((np.sum(np.abs(phi.values) ** p) * phi.cell_width) ** (1.0 / p))


def rearrangement(phi: GridFunction1):
    """Decreasing rearrangement and its running average.

    Returns (phi_star, phi_star_star): phi_star is |phi| sorted
    non-increasing (a grid function at the same level); phi_star_star[m-1]
    is the prefix average (1/t) int_0^t phi_star at t = m * 2^-L, which
    equals the best average of |phi| over sets of measure t.
    """
    sorted_desc = np.sort(np.abs(phi.values))[::-1]
    star = GridFunction1(phi.level, sorted_desc)
    starstar = np.cumsum(sorted_desc) / np.arange(1, sorted_desc.size + 1)
    return star, starstar


def phi_star_star_at_dyadic(phi_star_star: np.ndarray, level: int, k: int) -> float:
    """phi**(2^-k) read off the grid vector, for 0 <= k <= level."""
    if not 0 <= k <= level:
        raise ValueError(f"need 0 <= k <= {level}, got {k}")
    return float(phi_star_star[2 ** (level - k) - 1])


def lemma1_rhs(phi: GridFunction1, p: float) -> float:
    """Dyadic sum (sum_{k=0}^{L} (2^(-k/p) phi**(2^-k))^p)^(1/p)."""
    if not 1.0 < p < INF:
        raise ValueError(f"need 1 < p < inf, got {p}")
    _, starstar = rearrangement(phi)
    ks = np.arange(phi.level + 1)
    vals = np.array(
        [phi_star_star_at_dyadic(starstar, phi.level, int(k)) for k in ks]
    )
    return float(np.sum((2.0 ** (-ks / p) * vals) ** p) ** (1.0 / p))


@dataclass(frozen=True)
class NormReport:
    """All three norms of one function at one exponent choice."""

    function_id: str
    level: int
    p: tuple
    q: tuple
    mixed_lp: float
    net_norm: float
    seq_norm: float

    def to_dict(self) -> dict:
        return {
            "function_id": self.function_id,
            "level": self.level,
            "p": list(self.p),
            "q": list(self.q),
            "mixed_lp": self.mixed_lp,
            "net_norm": self.net_norm,
            "seq_norm": self.seq_norm,
        }


def compute_norm_report(f: GridFunction2, e: ExponentPair, function_id: str,
                        threads: int = 1) -> NormReport:
    from .transform import haar_forward_2d

    return NormReport(
        function_id=function_id,
        level=f.level,
        p=e.p,
        q=e.q,
        mixed_lp=mixed_lp_norm(f, e),
        net_norm=net_norm(f, e, threads=threads),
        seq_norm=seq_norm(haar_forward_2d(f), e),
    )
