"""Shifted-grid decomposition into cheap sub-instances.

Two stages:

* ``strip_partition`` lays a family of vertical lines spaced max_width/eps
  apart, tries every grid shift, pays to stab the rectangles crossed by the
  cheapest family, and groups the untouched rectangles into vertical strips.
* ``horizontal_cuts`` sweeps a strip bottom-up and inserts a full-width
  horizontal cut whenever the 8-approximation cost of the rectangles already
  passed exceeds c * w / eps^2, yielding y-separated chunks of bounded
  optimum.

Composed by ``decompose``, the paid segments cost O(eps) times the optimum
while every remaining chunk has optimum at most 8w/eps^2 + w/eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .approx8 import approx8
from .core import Instance, ParameterError, Rect, Segment, as_scalar


@dataclass(frozen=True)
class Strip:
    """Rectangles lying fully between two adjacent vertical grid lines."""

    instance: Instance
    x0: Fraction
    x1: Fraction


@dataclass(frozen=True)
class StripPartition:
    segments: tuple[Segment, ...]  # paid cover for the rects crossed by the chosen lines
    strips: tuple[Strip, ...]
    offset: Fraction  # the winning grid shift
    spacing: Fraction


@dataclass(frozen=True)
class CutResult:
    segments: tuple[Segment, ...]  # paid horizontal cuts
    chunks: tuple[Instance, ...]
    observed_costs: tuple[Fraction, ...]  # 8-approx cost recorded per chunk


@dataclass(frozen=True)
class Decomposition:
    paid_segments: tuple[Segment, ...]
    sub_instances: tuple[Instance, ...]
    opt_upper_bounds: tuple[Fraction, ...]


def crossing_rects(inst: Instance, z: Fraction, spacing: Fraction) -> list[Rect]:
    """Rects whose interior is crossed by some line x = z + i * spacing.

    A rect touching a line only at its boundary is not crossed; it belongs
    wholly to one strip.
    """
    hit = []
    for r in inst.rects:
        first = math.floor((r.xl - z) / spacing) + 1  # lowest i with line > xl
        if z + first * spacing < r.xr:
            hit.append(r)
    return hit


def strip_partition(inst: Instance, eps) -> StripPartition:
    """Choose the cheapest grid shift, pay for the crossed rects, strip the rest.

    Shifts run over all multiples of max_width * eps / n below the spacing
    max_width / eps (n/eps^2 of them); the cover for the crossed rectangles
    is the 8-approximation.  Ties between shifts go to the smallest one.
    The paid cover costs at most 16 * eps * OPT and every strip spans at
    most max_width / eps in x.
    """
    eps = as_scalar(eps)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie strictly between 0 and 1")
    if not inst.rects:
        return StripPartition((), (), Fraction(0), Fraction(0))

    w = inst.max_width
    spacing = w / eps
    step = w * eps / len(inst.rects)
    best = None  # (cost, z, cover solution, crossed ids)
    k = 0
    while (z := k * step) < spacing:
        crossed = crossing_rects(inst, z, spacing)
        cover = approx8(Instance(tuple(crossed)))
        if best is None or cover.cost < best[0]:
            best = (cover.cost, z, cover, {r.id for r in crossed})
        k += 1

    _, z_star, cover, crossed_ids = best
    groups: dict[int, list[Rect]] = {}
    for r in inst.rects:
        if r.id in crossed_ids:
            continue
        i = math.floor((r.xl - z_star) / spacing)
        groups.setdefault(i, []).append(r)
    strips = tuple(
        Strip(Instance(tuple(groups[i])), z_star + i * spacing, z_star + (i + 1) * spacing)
        for i in sorted(groups)
    )
    return StripPartition(tuple(cover.segments), strips, z_star, spacing)


def horizontal_cuts(
    strip: Instance,
    eps,
    c=8,
    width=None,
    span: tuple[Fraction, Fraction] | None = None,
) -> CutResult:
    """Sweep cut heights bottom-up and slice the strip into cheap chunks.

    At each distinct y level z the sweep prices the rectangles lying entirely
    below z (by the 8-approximation); once that exceeds c * w / eps^2 it
    emits a cut segment across the whole strip at z, removes everything the
    cut stabs, closes the chunk of rectangles strictly below z, and
    continues above.  The recorded cost per chunk is the trigger value (the
    plain 8-approx cost for the final chunk), an upper bound on the chunk's
    optimum.  Total cut length is at most eps * OPT of the strip.

    ``width`` defaults to the strip's own max width; callers decomposing a
    larger instance pass the global one.  ``span`` fixes the cut extent
    (defaults to the strip's bounding x-range).
    """
    eps = as_scalar(eps)
    c = as_scalar(c)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie strictly between 0 and 1")
    if not strip.rects:
        return CutResult((), (), ())
    w = as_scalar(width) if width is not None else strip.max_width
    lo = min(r.xl for r in strip.rects)
    hi = max(r.xr for r in strip.rects)
    if span is None:
        span = (lo, hi)
    x0, x1 = span
    if x0 > lo or hi > x1:
        raise ParameterError("span does not contain the strip")
    if x1 - x0 > w / eps:
        raise ParameterError("strip exceeds the allowed width max_width/eps")

    threshold = c * w / eps**2
    remaining = list(strip.rects)
    cuts: list[Segment] = []
    chunks: list[Instance] = []
    costs: list[Fraction] = []
    while remaining:
        trigger = None
        for z in sorted({r.yb for r in remaining} | {r.yt for r in remaining}):
            below = [r for r in remaining if r.yt <= z]
            cost = approx8(Instance(tuple(below))).cost
            if cost > threshold:
                trigger = (z, cost)
                break
        if trigger is None:
            chunk = Instance(tuple(remaining))
            chunks.append(chunk)
            costs.append(approx8(chunk).cost)
            break
        z, cost = trigger
        cuts.append(Segment(x0, x1, z))
        closed = [r for r in remaining if r.yt < z]
        if closed:
            chunks.append(Instance(tuple(closed)))
            costs.append(cost)
        remaining = [r for r in remaining if r.yb > z]
    return CutResult(tuple(cuts), tuple(chunks), tuple(costs))


def decompose(inst: Instance, eps) -> Decomposition:
    """Strip partition, then horizontal cuts inside every strip.

    Every input rect is either stabbed by the paid segments or lies in
    exactly one sub-instance; each sub-instance has optimum at most
    8w/eps^2 + w/eps where w is the instance's max width.
    """
    eps = as_scalar(eps)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie strictly between 0 and 1")
    if not inst.rects:
        return Decomposition((), (), ())
    parts = strip_partition(inst, eps)
    paid = list(parts.segments)
    subs: list[Instance] = []
    bounds: list[Fraction] = []
    for strip in parts.strips:
        cut = horizontal_cuts(
            strip.instance, eps, width=inst.max_width, span=(strip.x0, strip.x1)
        )
        paid.extend(cut.segments)
        subs.extend(cut.chunks)
        bounds.extend(cut.observed_costs)
    return Decomposition(tuple(paid), tuple(subs), tuple(bounds))


def decomposition_to_json(dec: Decomposition) -> dict:
    from .core import instance_to_json, scalar_str

    return {
        "paid_segments": [
            {"xl": scalar_str(s.xl), "xr": scalar_str(s.xr), "y": scalar_str(s.y)}
            for s in dec.paid_segments
        ],
        "paid_cost": scalar_str(sum((s.length for s in dec.paid_segments), Fraction(0))),
        "sub_instances": [instance_to_json(sub) for sub in dec.sub_instances],
        "opt_upper_bounds": [scalar_str(b) for b in dec.opt_upper_bounds],
    }
