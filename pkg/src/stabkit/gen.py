"""Seeded instance generators for tests and benchmarks.

The generator stream is SplitMix64 with plain modulo reduction, documented
below so instances can be reproduced bit-for-bit in any language.  Every
generator draws a fixed, documented sequence of values per rectangle, so the
same (seed, parameters) pair always yields the same instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Instance, ParameterError, Rect, as_scalar

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 stream: state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
    output z ^ z>>31 (all arithmetic mod 2^64).

    ``below(n)`` reduces with a plain modulo: biased in general but exact to
    reproduce.  ``split()`` seeds an independent child stream from the next
    output.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ParameterError("below() needs a positive bound")
        return self.next_u64() % n

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


@dataclass(frozen=True)
class GenConfig:
    """Coordinate ranges for the uniform generator.

    All draws land on the grid of multiples of 1/resolution.  Heights are
    drawn from [0, h_max]; widths from [w_min, w_max].
    """

    x_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(16))
    y_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(16))
    w_min: Fraction = Fraction(1, 2)
    w_max: Fraction = Fraction(4)
    h_max: Fraction = Fraction(4)
    resolution: int = 4

    def __post_init__(self):
        for name in ("w_min", "w_max", "h_max"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        object.__setattr__(self, "x_range", tuple(as_scalar(v) for v in self.x_range))
        object.__setattr__(self, "y_range", tuple(as_scalar(v) for v in self.y_range))


def _grid_draw(rng: SplitMix64, lo: Fraction, hi: Fraction, resolution: int) -> Fraction:
    # uniform over {lo, lo + 1/res, ...} up to hi
    span = hi - lo
    count = int(span * resolution) + 1
    return lo + Fraction(rng.below(count), resolution)


def gen_uniform(n: int, seed: int, cfg: GenConfig = GenConfig()) -> Instance:
    """n rects with grid-uniform left edges, widths and y-extents.

    Per-rect draw order: xl, width, yb, height.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    if not cfg.w_min <= cfg.w_max:
        raise ParameterError("requires w_min <= w_max")
    if cfg.w_min <= 0:
        raise ParameterError("widths must be positive")
    if cfg.x_range[0] > cfg.x_range[1] or cfg.y_range[0] > cfg.y_range[1]:
        raise ParameterError("coordinate ranges must be non-empty")
    if cfg.h_max < 0:
        raise ParameterError("h_max must be non-negative")
    rng = SplitMix64(seed)
    rects = []
    for i in range(1, n + 1):
        xl = _grid_draw(rng, *cfg.x_range, cfg.resolution)
        width = _grid_draw(rng, cfg.w_min, cfg.w_max, cfg.resolution)
        yb = _grid_draw(rng, *cfg.y_range, cfg.resolution)
        height = _grid_draw(rng, Fraction(0), cfg.h_max, cfg.resolution)
        rects.append(Rect(i, xl, xl + width, yb, yb + height))
    return Instance(tuple(rects))


def gen_laminar(n: int, seed: int) -> Instance:
    """n rects whose x-projections are dyadic intervals of [0, 2^k], hence laminar.

    Per rect: draw a depth in [0, k], then walk that many left/right halvings
    from the root interval; y is an integer range inside [0, 2n].
    Per-rect draw order: depth, one half-choice per level, yb, height.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    rng = SplitMix64(seed)
    k = max(3, n.bit_length() + 1)
    rects = []
    for i in range(1, n + 1):
        depth = rng.below(k + 1)
        lo = 0
        size = 1 << k
        for _ in range(depth):
            size //= 2
            if rng.below(2):
                lo += size
        yb = rng.below(2 * n + 1)
        height = rng.below(2 * n + 1 - yb)
        rects.append(Rect(i, lo, lo + size, yb, yb + height))
    return Instance(tuple(rects))


def gen_bounded_ratio(n: int, delta, seed: int) -> Instance:
    """n rects with widths on a 9-point grid spanning [delta, 1].

    Suitable fixture for the bounded-width-ratio scheme.  Per-rect draw
    order: xl, width index, yb, height.
    """
    delta = as_scalar(delta)
    if not 0 < delta <= 1:
        raise ParameterError("delta must lie in (0, 1]")
    if n < 0:
        raise ParameterError("n must be non-negative")
    rng = SplitMix64(seed)
    rects = []
    for i in range(1, n + 1):
        xl = Fraction(rng.below(8 * max(n, 1) + 1), 4)
        width = delta + rng.below(9) * (1 - delta) / 8
        yb = rng.below(2 * n + 1)
        height = rng.below(2 * n + 1 - yb)
        rects.append(Rect(i, xl, xl + width, yb, yb + height))
    return Instance(tuple(rects))
