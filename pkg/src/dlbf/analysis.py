"""Closed-form deletability and false-positive model of the deletable Bloom filter.

All probabilities treat the ``k * n`` set-events as independent uniform
draws over the ``m' = m - r`` data bits.

Note on the deletability formula: the element-deletability probability is
often printed as ``(1 - q**(m'/r)) ** k`` with ``q = 1 - p_c``. That
expression is the probability that all ``k`` bits land in *collided*
regions, i.e. that the element is NOT deletable. This module returns the
complement ``1 - (1 - q**(m'/r)) ** k``, which gives the ~0.9 deletability
expected at ``m/r = 20, m/n = 16``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from .errors import InvalidParamsError


@dataclass(frozen=True)
class ModelParams:
    m: int
    r: int
    k: int
    n: int

    def __post_init__(self):
        if self.r < 0:
            raise InvalidParamsError(f"r must be >= 0, got r={self.r}")
        if self.m <= self.r:
            raise InvalidParamsError(f"m must be > r, got m={self.m}, r={self.r}")
        if self.k < 1:
            raise InvalidParamsError(f"k must be >= 1, got k={self.k}")
        if self.n < 0:
            raise InvalidParamsError(f"n must be >= 0, got n={self.n}")

    @property
    def m_prime(self) -> int:
        return self.m - self.r


@dataclass(frozen=True)
class ModelPoint:
    params: ModelParams
    p0: float
    p1: float
    p_c: float
    p_d: float
    fpr_dlbf: float
    fpr_sbf: float
    density: Optional[float]

    def as_row(self) -> dict:
        row = asdict(self.params)
        row.update(
            density=self.density,
            p0=self.p0,
            p1=self.p1,
            pc=self.p_c,
            pd=self.p_d,
            fpr_dlbf=self.fpr_dlbf,
            fpr_sbf=self.fpr_sbf,
        )
        return row


MODEL_COLUMNS = ("m", "r", "k", "n", "density", "p0", "p1", "pc", "pd", "fpr_dlbf", "fpr_sbf")


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


def _empty_fraction(m: int, events: int) -> float:
    """(1 - 1/m) ** events, evaluated in log space."""
    if events == 0:
        return 1.0
    if m == 1:
        return 0.0
    return math.exp(events * math.log1p(-1.0 / m))


def cell_probabilities(m_prime: int, k: int, n: int) -> tuple[float, float, float]:
    """Probabilities that one data bit is never set, set once, or set more than once."""
    if m_prime < 1:
        raise InvalidParamsError(f"m' must be >= 1, got {m_prime}")
    if k < 1 or n < 0:
        raise InvalidParamsError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    events = k * n
    if events == 0:
        return 1.0, 0.0, 0.0
    p0 = _empty_fraction(m_prime, events)
    p1 = events / m_prime * _empty_fraction(m_prime, events - 1)
    p_c = _clamp(1.0 - p0 - p1)
    return _clamp(p0), _clamp(p1), p_c


def deletability_probability(params: ModelParams) -> float:
    """Probability that an inserted element has a bit in a collision-free region."""
    if params.r < 1:
        raise InvalidParamsError("deletability needs at least one region (r >= 1)")
    _, _, p_c = cell_probabilities(params.m_prime, params.k, params.n)
    region_free = (1.0 - p_c) ** (params.m_prime / params.r)
    return _clamp(1.0 - (1.0 - region_free) ** params.k)


def fpr_sbf(m: int, k: int, n: int) -> float:
    if m < 1:
        raise InvalidParamsError(f"m must be >= 1, got m={m}")
    return _clamp((1.0 - _empty_fraction(m, k * n)) ** k)


def fpr_dlbf(params: ModelParams) -> float:
    """False-positive probability of a filter whose data array has ``m - r`` bits."""
    return fpr_sbf(params.m_prime, params.k, params.n)


def model_point(params: ModelParams) -> ModelPoint:
    p0, p1, p_c = cell_probabilities(params.m_prime, params.k, params.n)
    return ModelPoint(
        params=params,
        p0=p0,
        p1=p1,
        p_c=p_c,
        p_d=deletability_probability(params) if params.r >= 1 else float("nan"),
        fpr_dlbf=fpr_dlbf(params),
        fpr_sbf=fpr_sbf(params.m, params.k, params.n),
        density=params.m / params.n if params.n else None,
    )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def deletability_curve(
    m: int, m_over_r: Iterable[float], k: int, densities: Iterable[float]
) -> list[ModelPoint]:
    """Model points over every (m/r ratio, m/n density) pair, ordered by ratio then density."""
    ratios = list(m_over_r)
    densities = list(densities)
    if not ratios or not densities:
        raise InvalidParamsError("ratio and density lists must both be nonempty")
    points = []
    for ratio in ratios:
        if ratio <= 0:
            raise InvalidParamsError(f"m/r ratio must be positive, got {ratio}")
        r = _round_half_up(m / ratio)
        if r < 1:
            raise InvalidParamsError(f"m/r ratio {ratio} gives r < 1 for m={m}")
        for density in densities:
            if density <= 0:
                raise InvalidParamsError(f"density must be positive, got {density}")
            n = _round_half_up(m / density)
            if n < 1:
                raise InvalidParamsError(f"density {density} gives n < 1 for m={m}")
            points.append(model_point(ModelParams(m=m, r=r, k=k, n=n)))
    return points
