"""Approximation schemes: a PTAS for bounded width ratio and a recursive QPTAS.

Both run the shifted-grid decomposition to break the instance into chunks of
bounded optimum.  The PTAS can afford to solve every chunk outright because a
minimum width delta caps the number of segments a chunk optimum may use.  The
QPTAS instead guesses the chunk's long segments (length at least half the
current width scale), which must stab every wide rectangle, and recurses on
the leftover narrow ones with the width scale halved; the recursion therefore
bottoms out after about log2(n/eps) levels.

All asymptotic constants are instantiated explicitly from the decomposition
guarantees with c = 8: a chunk optimum is at most 8w/eps^2 + w/eps, so a
chunk holds at most ceil(2 * (8/mu^2 + 1/mu)) long segments and a
delta-bounded chunk optimum uses at most ceil((8/eps^2 + 1/eps)/delta)
segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import (
    BudgetError,
    Instance,
    InfeasibleError,
    ParameterError,
    Segment,
    Solution,
    _seg_key,
    as_scalar,
    candidate_segments,
    ceil_log2,
    denormalize,
    normalize,
)
from .decompose import decompose
from .oracle import ORACLE_LIMIT, Candidate, exact_opt, reduce_candidates


@dataclass(frozen=True)
class SchemeParams:
    """Resolved parameters for one scheme run.

    ``depth_bound`` is the recursion depth cap ceil(log2(n/eps)); ``mu`` the
    per-level decomposition accuracy eps / (17 * (depth_bound + 1)); ``klong``
    the cap on long segments per guess.  Any of them may be overridden for
    desk-scale runs; the certified approximation factor then follows the
    overridden values.
    """

    eps: Fraction
    delta: Fraction | None = None
    mu: Fraction | None = None
    depth_bound: int | None = None
    klong: int | None = None
    oracle_limit: int = ORACLE_LIMIT
    node_budget: int | None = None

    @classmethod
    def derive(
        cls,
        n: int,
        eps,
        delta=None,
        mu=None,
        klong=None,
        oracle_limit=None,
        node_budget=None,
    ) -> "SchemeParams":
        eps = as_scalar(eps)
        if not 0 < eps < 1:
            raise ParameterError("eps must lie strictly between 0 and 1")
        depth_bound = ceil_log2(Fraction(max(n, 1)) / eps)
        mu = as_scalar(mu) if mu is not None else eps / (17 * (depth_bound + 1))
        if not 0 < mu < 1:
            raise ParameterError("mu must lie strictly between 0 and 1")
        if klong is None:
            klong = math.ceil(2 * (8 / mu**2 + 1 / mu))
        if klong < 1:
            raise ParameterError("klong must be at least 1")
        return cls(
            eps=eps,
            delta=as_scalar(delta) if delta is not None else None,
            mu=mu,
            depth_bound=depth_bound,
            klong=klong,
            oracle_limit=oracle_limit if oracle_limit is not None else ORACLE_LIMIT,
            node_budget=node_budget,
        )


@dataclass
class RunStats:
    """Mutable accounting filled in by a scheme run when the caller asks."""

    max_depth: int = 0
    nodes: int = 0
    guesses: int = 0
    paid_cost: Fraction = field(default_factory=lambda: Fraction(0))
    guess_cost: Fraction = field(default_factory=lambda: Fraction(0))
    base_cost: Fraction = field(default_factory=lambda: Fraction(0))
    presolved_cost: Fraction = field(default_factory=lambda: Fraction(0))
    normalized_cost: Fraction = field(default_factory=lambda: Fraction(0))


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetError(f"node budget of {self.limit} exhausted")


def solve_small(
    inst: Instance,
    k: int,
    node_budget: int | None = None,
    oracle_limit: int = ORACLE_LIMIT,
) -> Solution:
    """Exact optimum among solutions using at most k candidate segments.

    Small instances delegate to the exact oracle; if its unrestricted optimum
    fits in k segments it is also the k-restricted optimum.  Otherwise a
    complete branch-and-bound runs: branch on the unstabbed rect with the
    fewest covering candidates, prune on cost against the incumbent and on
    depth k.  Never returns a silently suboptimal answer; an exhausted budget
    raises BudgetError and an empty k-segment space raises InfeasibleError.
    """
    if k < 1:
        raise ParameterError("k must be at least 1")
    n = len(inst.rects)
    if n == 0:
        return Solution(())
    if n <= oracle_limit:
        sol = exact_opt(inst, limit=oracle_limit)
        if len(sol.segments) <= k:
            return sol
        # optimum needs more than k segments: fall through to the restricted search

    cands = reduce_candidates(inst, candidate_segments(inst))
    covering: list[list[int]] = [[] for _ in range(n)]
    for ci, c in enumerate(cands):
        for i in range(n):
            if c.stab_set >> i & 1:
                covering[i].append(ci)

    budget = _Budget(node_budget)
    best_cost: Fraction | None = None
    best_segments: tuple[Segment, ...] | None = None
    from .oracle import greedy_cover

    seed = greedy_cover(inst)
    if len(seed.segments) <= k:
        best_cost, best_segments = seed.cost, seed.segments

    full = (1 << n) - 1

    def descend(uncovered: int, chosen: list[int], cost: Fraction) -> None:
        nonlocal best_cost, best_segments
        budget.tick()
        if best_cost is not None and cost >= best_cost:
            return
        if uncovered == 0:
            best_cost = cost
            best_segments = tuple(cands[ci].segment for ci in chosen)
            return
        if len(chosen) >= k:
            return
        pivot = min(
            (i for i in range(n) if uncovered >> i & 1),
            key=lambda i: (len(covering[i]), i),
        )
        for ci in covering[pivot]:
            chosen.append(ci)
            descend(uncovered & ~cands[ci].stab_set, chosen, cost + cands[ci].length)
            chosen.pop()

    descend(full, [], Fraction(0))
    if best_segments is None:
        raise InfeasibleError(f"no feasible solution uses at most {k} segments")
    return Solution(tuple(sorted(best_segments, key=_seg_key)))


def ptas(inst: Instance, eps, delta) -> Solution:
    """(1 + 17 eps)-approximation when all normalized widths lie in [delta, 1].

    Normalizes, decomposes with accuracy eps, solves every chunk exactly
    within ceil((8/eps^2 + 1/eps)/delta) segments, and maps the union of paid
    and chunk segments back to original coordinates.
    """
    eps = as_scalar(eps)
    delta = as_scalar(delta)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie strictly between 0 and 1")
    if not 0 < delta <= 1:
        raise ParameterError("delta must lie in (0, 1]")
    if not inst.rects:
        return Solution(())

    norm, _, transform = normalize(inst, eps)
    if any(r.width < delta for r in norm.rects):
        raise ParameterError("instance violates the minimum width delta after normalization")

    k = math.ceil((8 / eps**2 + 1 / eps) / delta)
    dec = decompose(norm, eps)
    segments = list(dec.paid_segments)
    for chunk in dec.sub_instances:
        segments.extend(solve_small(chunk, k).segments)
    return denormalize(Solution(tuple(segments)), transform)


@dataclass(frozen=True)
class Guess:
    """A candidate set of long segments hypothesized to be in a chunk optimum."""

    segments: tuple[Segment, ...]
    stab_set: int
    length: Fraction


def guess_long(inst: Instance, min_len, k: int, _budget: _Budget | None = None) -> list[Guess]:
    """All subsets of at most k reduced candidates of length >= min_len.

    Includes the empty set.  Guesses with the same union of stab-sets are
    interchangeable up to total length, so only the cheapest per union is
    kept; the output order follows the subset enumeration (sizes ascending,
    candidates in canonical order).
    """
    min_len = as_scalar(min_len)
    pool = [c for c in reduce_candidates(inst, candidate_segments(inst)) if c.length >= min_len]
    reps: dict[int, tuple[Fraction, int, tuple[Candidate, ...]]] = {}
    order = 0
    for size in range(0, min(k, len(pool)) + 1):
        for combo in combinations(pool, size):
            if _budget is not None:
                _budget.tick()
            order += 1
            union = 0
            total = Fraction(0)
            for c in combo:
                union |= c.stab_set
                total += c.length
            cur = reps.get(union)
            if cur is None or total < cur[0]:
                reps[union] = (total, order if cur is None else cur[1], combo)
    out = []
    for union, (total, first_seen, combo) in sorted(reps.items(), key=lambda kv: kv[1][1]):
        out.append(Guess(tuple(c.segment for c in combo), union, total))
    return out


def qptas(
    inst: Instance,
    eps,
    params: SchemeParams | None = None,
    stats: RunStats | None = None,
) -> Solution:
    """(1 + eps)-approximation in quasi-polynomial time.

    Each level decomposes with accuracy mu, then per chunk either solves
    exactly (small chunks) or guesses the optimum's long segments: subsets of
    at most klong candidates of length >= half the level's width scale.  A
    correct guess stabs every wide rectangle, so only residuals with all
    widths below half the scale are recursed on, with the scale halved.
    Costs are exact rationals throughout: the returned cost equals the sum of
    paid, guessed and exactly-solved parts.
    """
    eps = as_scalar(eps)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie strictly between 0 and 1")
    if not inst.rects:
        return Solution(())
    if params is None:
        params = SchemeParams.derive(len(inst.rects), eps)
    if stats is None:
        stats = RunStats()

    norm, presolved, transform = normalize(inst, eps)
    stats.presolved_cost = sum((s.length for s in presolved), Fraction(0))
    budget = _Budget(params.node_budget)
    zero = Fraction(0)

    # each call returns its solution plus the (paid, base, guess) cost split
    # of that solution only; discarded guess branches leave no trace, so the
    # root split accounts for the output exactly
    def recurse(current: Instance, scale: Fraction, depth: int):
        budget.tick()
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        if not current.rects:
            return Solution(()), (zero, zero, zero)
        if len(current.rects) <= params.oracle_limit:
            sol = exact_opt(current, limit=max(params.oracle_limit, len(current.rects)))
            return sol, (zero, sol.cost, zero)

        dec = decompose(current, params.mu)
        segments = list(dec.paid_segments)
        paid = sum((s.length for s in dec.paid_segments), zero)
        base = zero
        guessed = zero
        half = scale / 2
        for chunk in dec.sub_instances:
            if len(chunk.rects) <= params.oracle_limit:
                sol = exact_opt(chunk, limit=max(params.oracle_limit, len(chunk.rects)))
                base += sol.cost
                segments.extend(sol.segments)
                continue
            best: tuple | None = None
            for guess in guess_long(chunk, half, params.klong, budget):
                stats.guesses += 1
                assert len(guess.segments) <= params.klong
                assert all(s.length >= half for s in guess.segments)
                residual = Instance(
                    tuple(r for i, r in enumerate(chunk.rects) if not guess.stab_set >> i & 1)
                )
                if any(r.width >= half for r in residual.rects):
                    continue
                sub, sub_split = recurse(residual, half, depth + 1)
                total = guess.length + sub.cost
                if best is None or total < best[0]:
                    best = (total, guess, sub, sub_split)
            if best is None:
                # no admissible guess under an overridden klong; the exact
                # oracle keeps the answer sound (never reached with derived
                # parameters)
                sol = exact_opt(chunk)
                base += sol.cost
                segments.extend(sol.segments)
                continue
            _, guess, sub, sub_split = best
            paid += sub_split[0]
            base += sub_split[1]
            guessed += sub_split[2] + guess.length
            segments.extend(guess.segments)
            segments.extend(sub.segments)
        return Solution(tuple(segments)), (paid, base, guessed)

    if norm.rects:
        solved, (stats.paid_cost, stats.base_cost, stats.guess_cost) = recurse(
            norm, norm.max_width, 0
        )
    else:
        solved = Solution(())
    stats.normalized_cost = solved.cost
    return denormalize(solved, transform)
