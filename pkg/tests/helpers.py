"""Independent reference implementations used as oracles by the tests.

Nothing here shares code paths with the solvers under test beyond the plain
data types and the stabbing predicate.
"""

import math
from fractions import Fraction
from itertools import combinations

from stabkit import (
    Instance,
    Segment,
    Solution,
    candidate_segments,
    ceil_log2,
    pow2,
    stabs,
)


def brute_force_opt(inst: Instance) -> Fraction:
    """Minimum cover cost by exhaustive enumeration of candidate subsets.

    A minimal optimal solution uses at most one segment per rectangle, so
    subsets up to size n suffice.  Exponential; keep n tiny.
    """
    if not inst.rects:
        return Fraction(0)
    cands = candidate_segments(inst)
    best = None
    for k in range(0, len(inst.rects) + 1):
        for sub in combinations(cands, k):
            if all(any(stabs(s, r) for s in sub) for r in inst.rects):
                cost = sum((s.length for s in sub), Fraction(0))
                if best is None or cost < best:
                    best = cost
    return best


def canonicalize_segment(inst: Instance, s: Segment) -> Segment | None:
    """Rewrite a segment onto the candidate grid without shrinking its stab-set.

    Shrinks the span onto the extreme edges of the rects it stabs, then
    shifts it up to the nearest top edge.  Returns None when s stabs nothing.
    """
    stabbed = [r for r in inst.rects if stabs(s, r)]
    if not stabbed:
        return None
    xl = min(r.xl for r in stabbed)
    xr = max(r.xr for r in stabbed)
    y = min(r.yt for r in inst.rects if r.yt >= s.y)
    return Segment(xl, xr, y)


def round_segment_pow2(s: Segment) -> Segment:
    """Round a segment's endpoints outward to multiples of 2^t where
    2^(t-1) < |s| <= 2^t.  Zero-length segments are returned unchanged."""
    if s.length == 0:
        return s
    grid = pow2(ceil_log2(s.length))
    xl = math.floor(s.xl / grid) * grid
    xr = math.ceil(s.xr / grid) * grid
    return Segment(xl, xr, s.y)


def per_rect_solution(inst: Instance) -> Solution:
    """The trivially feasible solution spanning every rect at its own top edge."""
    return Solution(tuple(Segment(r.xl, r.xr, r.yt) for r in inst.rects))
