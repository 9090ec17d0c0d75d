"""Exact geometric primitives for stabbing axis-aligned rectangles.

A horizontal segment *stabs* a rectangle when it reaches from the rectangle's
left edge to its right edge at a height inside the rectangle's vertical
extent (all boundaries closed).  The goal everywhere in this package is a set
of segments of minimum total length stabbing every rectangle.

All coordinates are exact rationals (``fractions.Fraction``).  Solvers never
touch floating point, so feasibility predicates, rounding to powers of two and
cost comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

Scalar = Fraction


class ParameterError(ValueError):
    """Invalid parameter or malformed input data."""


class OracleLimitError(RuntimeError):
    """Instance exceeds the size limit of the exhaustive exact solver."""


class BudgetError(RuntimeError):
    """Search budget exhausted before the run could be certified."""

    def __init__(self, message: str, best_so_far=None):
        super().__init__(message)
        self.best_so_far = best_so_far
        self.certified = False


class InfeasibleError(RuntimeError):
    """No feasible solution exists within the requested search space."""


class TransformError(RuntimeError):
    """A solution refers to coordinates the transform never produced."""


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" or decimal strings to an exact rational.

    Floats are rejected: every coordinate entering the solvers must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterError(f"not a coordinate value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse scalar {value!r}") from exc
    raise ParameterError(f"inexact or unsupported scalar type: {type(value).__name__}")


def scalar_str(x: Fraction) -> str:
    return str(x)


def ceil_log2(x: Fraction) -> int:
    """Smallest integer t with x <= 2**t, for x > 0.  t may be negative."""
    if x <= 0:
        raise ParameterError("ceil_log2 requires a positive value")
    p, q = x.numerator, x.denominator

    def fits(t: int) -> bool:
        return p <= (q << t) if t >= 0 else (p << -t) <= q

    t = p.bit_length() - q.bit_length()
    while not fits(t):
        t += 1
    while fits(t - 1):
        t -= 1
    return t


def pow2(t: int) -> Fraction:
    """2**t as an exact rational; t may be negative."""
    return Fraction(1 << t) if t >= 0 else Fraction(1, 1 << -t)


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle with a caller-chosen id.

    Zero-width rectangles are rejected: a zero-length segment would stab them
    trivially and they break every width-ratio argument downstream.
    """

    id: int
    xl: Fraction
    xr: Fraction
    yb: Fraction
    yt: Fraction

    def __post_init__(self):
        for name in ("xl", "xr", "yb", "yt"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.xl < self.xr:
            raise ParameterError(f"rect {self.id}: requires xl < xr, got [{self.xl}, {self.xr}]")
        if not self.yb <= self.yt:
            raise ParameterError(f"rect {self.id}: requires yb <= yt, got [{self.yb}, {self.yt}]")

    @property
    def width(self) -> Fraction:
        return self.xr - self.xl


@dataclass(frozen=True)
class Segment:
    """Closed horizontal segment [xl, xr] at height y."""

    xl: Fraction
    xr: Fraction
    y: Fraction

    def __post_init__(self):
        for name in ("xl", "xr", "y"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.xl <= self.xr:
            raise ParameterError(f"segment requires xl <= xr, got [{self.xl}, {self.xr}]")

    @property
    def length(self) -> Fraction:
        return self.xr - self.xl


def _seg_key(s: Segment):
    return (s.xl, s.xr, s.y)


@dataclass(frozen=True)
class Instance:
    """A finite set of rectangles to stab.  Rect ids must be unique."""

    rects: tuple[Rect, ...]

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))
        seen = set()
        for r in self.rects:
            if r.id in seen:
                raise ParameterError(f"duplicate rect id {r.id}")
            seen.add(r.id)

    @cached_property
    def max_width(self) -> Fraction:
        return max((r.width for r in self.rects), default=Fraction(0))

    def __len__(self) -> int:
        return len(self.rects)


@dataclass(frozen=True)
class Solution:
    """A set of stabbing segments.  Cost is the plain sum of the lengths;
    overlapping segments are not merged."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @cached_property
    def cost(self) -> Fraction:
        return sum((s.length for s in self.segments), Fraction(0))


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned box used by the divide-and-conquer solvers."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        if not (self.x0 <= self.x1 and self.y0 <= self.y1):
            raise ParameterError("box requires x0 <= x1 and y0 <= y1")

    def contains(self, r: Rect) -> bool:
        return self.x0 <= r.xl and r.xr <= self.x1 and self.y0 <= r.yb and r.yt <= self.y1


@dataclass(frozen=True)
class Transform:
    """Record of instance normalization, sufficient to map a solution back.

    Forward map: x' = (x - x_shift) * x_scale, y' = compressed level per
    ``y_map`` (pairs of (original, compressed), strictly increasing in both).
    ``presolved`` holds (rect id, segment) pairs for rectangles stabbed
    greedily during normalization, in normalized coordinates.
    """

    x_scale: Fraction
    x_shift: Fraction
    y_map: tuple[tuple[Fraction, Fraction], ...]
    presolved: tuple[tuple[int, Segment], ...]

    def __post_init__(self):
        if self.x_scale <= 0:
            raise ParameterError("x_scale must be positive")

    @classmethod
    def identity(cls) -> "Transform":
        return cls(Fraction(1), Fraction(0), (), ())


@dataclass(frozen=True)
class VerifyReport:
    feasible: bool
    unstabbed_ids: tuple[int, ...]
    recomputed_cost: Fraction


# ---------------------------------------------------------------------------
# Predicates and verification
# ---------------------------------------------------------------------------


def stabs(s: Segment, r: Rect) -> bool:
    """True iff s crosses r from left edge to right edge at a height inside r.

    All boundaries are closed: touching an edge or corner counts.
    """
    return s.xl <= r.xl and s.xr >= r.xr and r.yb <= s.y <= r.yt


def verify(inst: Instance, sol: Solution) -> VerifyReport:
    """Check feasibility of a solution against an instance, from scratch."""
    unstabbed = tuple(
        sorted(r.id for r in inst.rects if not any(stabs(s, r) for s in sol.segments))
    )
    cost = sum((s.length for s in sol.segments), Fraction(0))
    return VerifyReport(feasible=not unstabbed, unstabbed_ids=unstabbed, recomputed_cost=cost)


def candidate_segments(inst: Instance) -> list[Segment]:
    """All segments [xl_i, xr_j] x yt_k over rect boundary coordinates.

    Any feasible solution can be rearranged to use only these: shrink each
    segment onto the extreme left/right edges it must reach, then shift it up
    to the nearest top edge.  At most n^3 segments; duplicates are removed.
    """
    lefts = sorted({r.xl for r in inst.rects})
    rights = sorted({r.xr for r in inst.rects})
    tops = sorted({r.yt for r in inst.rects})
    out = []
    for a in lefts:
        for b in rights:
            if a <= b:
                out.extend(Segment(a, b, y) for y in tops)
    return out


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def normalize(inst: Instance, eps) -> tuple[Instance, list[Segment], Transform]:
    """Rescale to max width 1, compress y to an even integer grid, presolve slivers.

    * x is translated so the leftmost edge sits at 0 and scaled so the widest
      rectangle has width exactly 1.
    * every distinct y value is replaced by twice its rank among the sorted
      distinct y values (0, 2, 4, ...), leaving integer room between levels.
    * every rectangle of scaled width <= eps/n is removed and covered by a
      segment exactly spanning it at its compressed top edge; those segments
      are returned and recorded in the transform.

    Returns (normalized instance, presolved segments, transform).
    """
    eps = as_scalar(eps)
    if eps <= 0:
        raise ParameterError("eps must be positive")
    if not inst.rects:
        return inst, [], Transform.identity()

    n = len(inst.rects)
    y_values = sorted({r.yb for r in inst.rects} | {r.yt for r in inst.rects})
    compress = {y: Fraction(2 * i) for i, y in enumerate(y_values)}
    y_map = tuple((y, compress[y]) for y in y_values)
    x_shift = min(r.xl for r in inst.rects)
    x_scale = Fraction(1) / inst.max_width

    threshold = eps / n
    kept: list[Rect] = []
    presolved: list[tuple[int, Segment]] = []
    for r in inst.rects:
        mapped = Rect(
            r.id,
            (r.xl - x_shift) * x_scale,
            (r.xr - x_shift) * x_scale,
            compress[r.yb],
            compress[r.yt],
        )
        if mapped.width <= threshold:
            presolved.append((r.id, Segment(mapped.xl, mapped.xr, mapped.yt)))
        else:
            kept.append(mapped)

    transform = Transform(x_scale, x_shift, y_map, tuple(presolved))
    return Instance(tuple(kept)), [s for _, s in presolved], transform


def denormalize(sol: Solution, t: Transform) -> Solution:
    """Map a solution on the normalized instance back to original coordinates.

    Presolved segments are appended; the cost is recomputed exactly.  A
    compressed y level the transform never produced raises TransformError.
    """
    expand = {c: y for y, c in t.y_map}

    def back(seg: Segment) -> Segment:
        y = seg.y
        if t.y_map:
            if y not in expand:
                raise TransformError(f"compressed level {y} not present in the transform")
            y = expand[y]
        return Segment(seg.xl / t.x_scale + t.x_shift, seg.xr / t.x_scale + t.x_shift, y)

    segments = [back(s) for s in sol.segments]
    segments.extend(back(s) for _, s in t.presolved)
    return Solution(tuple(segments))


def split_independent(inst: Instance) -> list[Instance]:
    """Split into connected components of the open-overlap graph on x-projections.

    Rectangles whose x-projections share only an endpoint land in different
    components; no segment can stab rectangles of two components more cheaply
    than treating the components separately, so optima add up.
    """
    if not inst.rects:
        return []
    ordered = sorted(inst.rects, key=lambda r: (r.xl, r.xr, r.id))
    components: list[list[Rect]] = []
    current: list[Rect] = [ordered[0]]
    reach = ordered[0].xr
    for r in ordered[1:]:
        if r.xl >= reach:
            components.append(current)
            current = [r]
            reach = r.xr
        else:
            current.append(r)
            reach = max(reach, r.xr)
    components.append(current)
    return [Instance(tuple(c)) for c in components]


def shrink_solution(inst: Instance, sol: Solution) -> Solution:
    """Cosmetic post-pass: shrink each segment onto the rects it is charged with.

    Every rect is assigned to the first segment (in given order) that stabs
    it; each segment is then shrunk to the minimal x-span covering its
    assigned rects, and segments with no assignment are dropped.  Feasibility
    is preserved and the cost never increases.
    """
    assigned: dict[int, list[Rect]] = {}
    taken: set[int] = set()
    for i, s in enumerate(sol.segments):
        for r in inst.rects:
            if r.id not in taken and stabs(s, r):
                assigned.setdefault(i, []).append(r)
                taken.add(r.id)
    out = []
    for i, s in enumerate(sol.segments):
        group = assigned.get(i)
        if not group:
            continue
        out.append(Segment(min(r.xl for r in group), max(r.xr for r in group), s.y))
    return Solution(tuple(out))


# ---------------------------------------------------------------------------
# JSON wire formats
# ---------------------------------------------------------------------------


def instance_to_json(inst: Instance) -> dict:
    """Instance wire format: {"rects": [{"xl": "0", "xr": "4", ...}, ...]}.

    Ids are emitted only when they differ from positional 1..n.
    """
    positional = all(r.id == i for i, r in enumerate(inst.rects, start=1))
    rects = []
    for r in inst.rects:
        entry = {
            "xl": scalar_str(r.xl),
            "xr": scalar_str(r.xr),
            "yb": scalar_str(r.yb),
            "yt": scalar_str(r.yt),
        }
        if not positional:
            entry["id"] = r.id
        rects.append(entry)
    return {"rects": rects}


def instance_from_json(obj: dict) -> Instance:
    if not isinstance(obj, dict) or "rects" not in obj:
        raise ParameterError('instance JSON must be an object with a "rects" list')
    rects = []
    for pos, rd in enumerate(obj["rects"], start=1):
        try:
            rects.append(
                Rect(
                    int(rd.get("id", pos)),
                    as_scalar(rd["xl"]),
                    as_scalar(rd["xr"]),
                    as_scalar(rd["yb"]),
                    as_scalar(rd["yt"]),
                )
            )
        except KeyError as exc:
            raise ParameterError(f"rect #{pos} is missing field {exc}") from exc
    return Instance(tuple(rects))


def solution_to_json(sol: Solution) -> dict:
    return {
        "segments": [
            {"xl": scalar_str(s.xl), "xr": scalar_str(s.xr), "y": scalar_str(s.y)}
            for s in sol.segments
        ],
        "cost": scalar_str(sol.cost),
    }


def solution_from_json(obj: dict) -> Solution:
    if not isinstance(obj, dict) or "segments" not in obj:
        raise ParameterError('solution JSON must be an object with a "segments" list')
    segments = []
    for pos, sd in enumerate(obj["segments"], start=1):
        try:
            segments.append(Segment(as_scalar(sd["xl"]), as_scalar(sd["xr"]), as_scalar(sd["y"])))
        except KeyError as exc:
            raise ParameterError(f"segment #{pos} is missing field {exc}") from exc
    # the cost field, if present, is ignored: cost is always recomputed
    return Solution(tuple(segments))
