"""Piecewise-constant functions on dyadic grids of [0,1] and [0,1]^2.

A level-L grid splits each axis into 2^L equal cells; a grid function is
constant on every cell.  All norms downstream are computed exactly for this
representation, so the test families here store *exact cell averages* of
their continuum definitions wherever a closed form exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridFunction1",
    "GridFunction2",
    "SummedAreaTable",
    "FamilySpec",
    "parse_family_spec",
    "build_sat",
    "rect_integral",
    "generate",
    "is_monotone_nonincreasing",
    "random_monotone_1d",
]

FAMILY_NAMES = (
    "constant",
    "tensor_power",
    "sum_power",
    "haar_atom",
    "full_level",
    "single_coeff_level",
    "random_monotone",
    "random_signs",
)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GridFunction1:
    """Piecewise-constant function on [0,1]: values[i] on (i*2^-L, (i+1)*2^-L)."""

    level: int
    values: np.ndarray

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2**self.level,):
            raise ValueError(f"values must have shape ({2**self.level},), got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def cell_width(self) -> float:
        return 2.0 ** (-self.level)


@dataclass(frozen=True)
class GridFunction2:
    """Piecewise-constant function on [0,1]^2.

    values[i][j] is the constant value on the cell
    (i*2^-L, (i+1)*2^-L) x (j*2^-L, (j+1)*2^-L); the first index is x1.
    """

    level: int
    values: np.ndarray

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        n = 2**self.level
        v = np.asarray(self.values, dtype=float)
        if v.shape != (n, n):
            raise ValueError(f"values must have shape ({n}, {n}), got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def cell_width(self) -> float:
        return 2.0 ** (-self.level)


@dataclass(frozen=True)
class SummedAreaTable:
    """Exact prefix integrals of a grid function.

    cumulative[i][j] = integral of f over [0, i*2^-L] x [0, j*2^-L].
    Stored in extended precision so that 4-corner rectangle queries keep
    their relative-error contract at deep levels.
    """

    level: int
    cumulative: np.ndarray

    def __post_init__(self):
        n = 2**self.level
        c = self.cumulative
        if c.shape != (n + 1, n + 1):
            raise ValueError(f"cumulative must have shape ({n + 1}, {n + 1})")
        c = np.array(c, dtype=np.longdouble, copy=True)
        c.flags.writeable = False
        object.__setattr__(self, "cumulative", c)

    @property
    def total_integral(self) -> float:
        return float(self.cumulative[-1, -1])


def build_sat(f: GridFunction2) -> SummedAreaTable:
    """Build the table of exact prefix integrals of ``f``.

    Cell sums are scaled by the cell area 4^-L and accumulated in extended
    precision (80-bit on x86) so the 1e-12 relative contract survives to
    level 10.
    """
    n = 2**f.level
    area = np.longdouble(2.0) ** (-2 * f.level)
    cum = np.zeros((n + 1, n + 1), dtype=np.longdouble)
    cum[1:, 1:] = (f.values.astype(np.longdouble) * area).cumsum(axis=0).cumsum(axis=1)
    return SummedAreaTable(level=f.level, cumulative=cum)


def rect_integral(sat: SummedAreaTable, i0: int, i1: int, j0: int, j1: int) -> float:
    """Integral of f over the rectangle [i0,i1] x [j0,j1] in cell indices.

    The rectangle covers cells i0..i1-1 by j0..j1-1; corners are grid lines.
    """
    n = 2**sat.level
    if not (0 <= i0 < i1 <= n and 0 <= j0 < j1 <= n):
        raise IndexError(
            f"rectangle ({i0},{i1})x({j0},{j1}) out of range for grid size {n}"
        )
    c = sat.cumulative
    return float(c[i1, j1] - c[i0, j1] - c[i1, j0] + c[i0, j0])


def is_monotone_nonincreasing(f: GridFunction2) -> bool:
    """True iff values[i][j] >= values[i'][j'] whenever i <= i' and j <= j'."""
    v = f.values
    return bool(np.all(np.diff(v, axis=0) <= 0.0) and np.all(np.diff(v, axis=1) <= 0.0))


@dataclass(frozen=True)
class FamilySpec:
    """A named test-function family plus its parameters.

    Flat text form: ``name:key=value,key=value`` (trailing comma allowed),
    e.g. ``tensor_power:alpha=0.25,beta=0.25,level=6``.  ``level`` may be
    omitted in the text form and supplied later (sweeps inject it).
    """

    name: str
    parameters: dict = field(default_factory=dict)
    level: int | None = None

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {FAMILY_NAMES}")
        if self.level is not None and self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")

    def with_level(self, level: int) -> "FamilySpec":
        return FamilySpec(self.name, dict(self.parameters), level)

    def canonical(self) -> str:
        """Deterministic text form (sorted keys, shortest float repr)."""
        items = [f"{k}={_fmt_param(v)}" for k, v in sorted(self.parameters.items())]
        if self.level is not None:
            items.append(f"level={self.level}")
        return self.name + ":" + ",".join(items)


def _fmt_param(v) -> str:
    if float(v) == int(v):
        return str(int(v))
    return repr(float(v))


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the flat ``name:key=value,...`` form."""
    text = text.strip()
    name, _, rest = text.partition(":")
    name = name.strip()
    params: dict = {}
    level = None
    for token in rest.split(","):
        token = token.strip()
        if not token:
            continue
        if "=" not in token:
            raise ValueError(f"invalid family token {token!r} (expected key=value)")
        key, value_text = token.split("=", 1)
        key = key.strip()
        try:
            value = float(value_text.strip())
        except ValueError as exc:
            raise ValueError(f"invalid value in family token {token!r}") from exc
        if key == "level":
            level = int(value)
            if level != value:
                raise ValueError("level must be an integer")
        else:
            params[key] = value
    return FamilySpec(name=name, parameters=params, level=level)


def _require_level(spec: FamilySpec) -> int:
    if spec.level is None:
        raise ValueError(f"family {spec.name!r} needs a level")
    return spec.level


def _param(spec: FamilySpec, key: str, default=None) -> float:
    if key in spec.parameters:
        return float(spec.parameters[key])
    if default is None:
        raise ValueError(f"family {spec.name!r} requires parameter {key!r}")
    return float(default)


def _int_param(spec: FamilySpec, key: str, default=None) -> int:
    v = _param(spec, key, default)
    if v != int(v):
        raise ValueError(f"parameter {key!r} of {spec.name!r} must be an integer")
    return int(v)


def _power_cell_averages(alpha: float, level: int) -> np.ndarray:
    # Exact cell averages of x^-alpha: integral_a^b x^-alpha dx / (b - a)
    # with the antiderivative x^(1-alpha)/(1-alpha); finite for 0 < alpha < 1.
    n = 2**level
    h = 2.0**-level
    edges = np.arange(n + 1) * h
    anti = edges ** (1.0 - alpha) / (1.0 - alpha)
    return np.diff(anti) / h


def _sum_power_values(gamma: float, level: int) -> np.ndarray:
    # Exact cell averages of (x+y)^-gamma via the 4-corner difference of the
    # double antiderivative G; G(0,0)=0 is the correct limit for gamma < 2.
    n = 2**level
    h = 2.0**-level
    edges = np.arange(n + 1) * h
    s = edges[:, None] + edges[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        if gamma == 1.0:
            g = s * (np.log(s) - 1.0)
        else:
            g = s ** (2.0 - gamma) / ((1.0 - gamma) * (2.0 - gamma))
    g[s == 0.0] = 0.0
    cells = g[1:, 1:] - g[:-1, 1:] - g[1:, :-1] + g[:-1, :-1]
    return cells / (h * h)


def _haar_sign_pattern(k: int, j: int, level: int) -> np.ndarray:
    # Cell values of the level-k Haar function with support ((j-1)/2^k, j/2^k):
    # +2^(k/2) on the left half, -2^(k/2) on the right half, 0 outside.
    # Needs k+1 <= level so cells sit strictly inside the halves.
    if not 0 <= k <= level - 1:
        raise ValueError(f"haar level k={k} needs 0 <= k <= level-1 (level={level})")
    if not 1 <= j <= 2**k:
        raise ValueError(f"haar shift j={j} out of range 1..{2**k}")
    n = 2**level
    half_idx = np.arange(n) >> (level - k - 1)  # index at level k+1
    vals = np.zeros(n)
    vals[half_idx == 2 * (j - 1)] = 2.0 ** (k / 2.0)
    vals[half_idx == 2 * j - 1] = -(2.0 ** (k / 2.0))
    return vals


def _rademacher_pattern(k: int, level: int) -> np.ndarray:
    # Sum over j of the level-k Haar functions: +-2^(k/2) alternating at scale
    # 2^-(k+1).
    n = 2**level
    half_idx = np.arange(n) >> (level - k - 1)
    return np.where(half_idx % 2 == 0, 1.0, -1.0) * 2.0 ** (k / 2.0)


def _corner_coverage(edges_lo: np.ndarray, cuts: np.ndarray, h: float) -> np.ndarray:
    # coverage[m, i] = |cell_i intersect [0, cuts[m])| / h, the exact cell
    # average of the indicator x < cuts[m].
    return np.clip((cuts[:, None] - edges_lo[None, :]) / h, 0.0, 1.0)


def _random_monotone_values(level: int, seed: int, terms: int) -> np.ndarray:
    # Mixture of lower-left corner indicators w * 1[x<u] * 1[y<v].  The cut
    # points are level-independent, so refining the grid refines the same
    # continuum function (L-sweeps then measure discretization, not noise).
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.05, 1.0, size=terms)
    v = rng.uniform(0.05, 1.0, size=terms)
    w = rng.uniform(0.2, 1.0, size=terms)
    n = 2**level
    h = 2.0**-level
    lo = np.arange(n) * h
    cov1 = _corner_coverage(lo, u, h)
    cov2 = _corner_coverage(lo, v, h)
    return np.einsum("m,mi,mj->ij", w, cov1, cov2)


def random_monotone_1d(level: int, seed: int, terms: int = 12) -> GridFunction1:
    """Seeded non-increasing 1D test function (mixture of corner indicators)."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.05, 1.0, size=terms)
    w = rng.uniform(0.2, 1.0, size=terms)
    n = 2**level
    h = 2.0**-level
    cov = _corner_coverage(np.arange(n) * h, u, h)
    return GridFunction1(level, w @ cov)


def generate(spec: FamilySpec) -> GridFunction2:
    """Realize a family spec as a grid function with exact cell averages.

    Power families integrate their continuum definition analytically per
    cell; Haar-polynomial families evaluate exactly; random families are
    seeded and reproduce bitwise.
    """
    level = _require_level(spec)
    n = 2**level

    if spec.name == "constant":
        c = _param(spec, "c", 1.0)
        return GridFunction2(level, np.full((n, n), c))

    if spec.name == "tensor_power":
        alpha = _param(spec, "alpha")
        beta = _param(spec, "beta")
        if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0):
            raise ValueError("tensor_power needs 0 < alpha < 1 and 0 < beta < 1")
        return GridFunction2(
            level,
            np.outer(_power_cell_averages(alpha, level), _power_cell_averages(beta, level)),
        )

    if spec.name == "sum_power":
        gamma = _param(spec, "gamma")
        if not 0.0 < gamma < 2.0:
            raise ValueError("sum_power needs 0 < gamma < 2")
        return GridFunction2(level, _sum_power_values(gamma, level))

    if spec.name == "haar_atom":
        k1 = _int_param(spec, "k1", 0)
        k2 = _int_param(spec, "k2", 0)
        j1 = _int_param(spec, "j1", 1)
        j2 = _int_param(spec, "j2", 1)
        return GridFunction2(
            level,
            np.outer(_haar_sign_pattern(k1, j1, level), _haar_sign_pattern(k2, j2, level)),
        )

    if spec.name == "full_level":
        k1 = _int_param(spec, "k1", _int_param(spec, "k", 0))
        k2 = _int_param(spec, "k2", _int_param(spec, "k", 0))
        value = _param(spec, "value", 1.0)
        if not (0 <= k1 <= level - 1 and 0 <= k2 <= level - 1):
            raise ValueError("full_level needs 0 <= k1,k2 <= level-1")
        return GridFunction2(
            level,
            value * np.outer(_rademacher_pattern(k1, level), _rademacher_pattern(k2, level)),
        )

    if spec.name == "single_coeff_level":
        k1 = _int_param(spec, "k1", _int_param(spec, "k", 0))
        k2 = _int_param(spec, "k2", _int_param(spec, "k", 0))
        j1 = _int_param(spec, "j1", 1)
        j2 = _int_param(spec, "j2", 1)
        value = _param(spec, "value", 1.0)
        return GridFunction2(
            level,
            value * np.outer(_haar_sign_pattern(k1, j1, level), _haar_sign_pattern(k2, j2, level)),
        )

    if spec.name == "random_monotone":
        seed = _int_param(spec, "seed", 0)
        terms = _int_param(spec, "terms", 16)
        if terms < 1:
            raise ValueError("random_monotone needs terms >= 1")
        return GridFunction2(level, _random_monotone_values(level, seed, terms))

    if spec.name == "random_signs":
        seed = _int_param(spec, "seed", 0)
        amplitude = _param(spec, "amplitude", 1.0)
        rng = np.random.default_rng(seed)
        return GridFunction2(level, rng.uniform(-amplitude, amplitude, size=(n, n)))

    raise ValueError(f"unknown family {spec.name!r}")  # pragma: no cover
