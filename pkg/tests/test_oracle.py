import math

import pytest
from hypothesis import given, settings, strategies as st

from stabkit import (
    Instance,
    OracleLimitError,
    Segment,
    candidate_segments,
    exact_opt,
    gen_uniform,
    greedy_cover,
    reduce_candidates,
    solution_to_json,
    verify,
)

from .conftest import make_instance
from .helpers import brute_force_opt


class TestReduceCandidates:
    def test_same_set_keeps_shorter(self):
        inst = make_instance([(0, 2, 0, 1), (0, 2, 0, 2)])
        cands = [Segment(-1, 4, 1), Segment(0, 2, 1)]  # both stab both rects
        reduced = reduce_candidates(inst, cands)
        assert len(reduced) == 1 and reduced[0].length == 2

    def test_dominated_subset_dropped(self):
        inst = make_instance([(0, 4, 0, 1), (1, 3, 0, 1)])
        narrow = Segment(-1, 3, 1)  # stabs only rect 2, length 4
        wide = Segment(0, 4, 1)  # stabs both rects, same length
        reduced = reduce_candidates(inst, [narrow, wide])
        assert [c.stab_set for c in reduced] == [0b11]

    def test_i1_reduced_contents(self, i1):
        reduced = reduce_candidates(i1, candidate_segments(i1))
        by_set = {c.stab_set: c.length for c in reduced}
        assert by_set[0b011] == 4  # stabs rects 1 and 2
        assert by_set[0b100] == 2  # stabs rect 3


class TestExactOpt:
    def test_i1(self, i1):
        sol = exact_opt(i1)
        assert sol.cost == 6
        assert verify(i1, sol).feasible

    def test_single_rect(self):
        assert exact_opt(make_instance([(0, 4, 0, 2)])).cost == 4

    def test_empty(self):
        assert exact_opt(Instance(())).cost == 0

    def test_limit(self):
        inst = gen_uniform(6, 1)
        with pytest.raises(OracleLimitError):
            exact_opt(inst, limit=5)

    def test_matches_brute_force(self, i1):
        assert exact_opt(i1).cost == brute_force_opt(i1)

    @given(st.integers(0, 40))
    @settings(max_examples=40)
    def test_brute_force_cross_check_small(self, seed):
        inst = gen_uniform(seed % 3 + 1, seed)
        assert exact_opt(inst).cost == brute_force_opt(inst)

    @given(st.integers(0, 60))
    def test_reduction_invariant(self, seed):
        inst = gen_uniform(seed % 8 + 1, seed)
        assert exact_opt(inst, reduce=True).cost == exact_opt(inst, reduce=False).cost

    def test_deterministic_bytes(self, i1):
        a = solution_to_json(exact_opt(i1))
        b = solution_to_json(exact_opt(i1))
        assert a == b


class TestGreedy:
    def test_i1_follows_tie_breaks(self, i1):
        # ratio ties resolve to the smaller length, then lexicographic order:
        # [1,3]x2 and [5,7]x2 come before [0,4]x2, total 8 (optimum is 6)
        sol = greedy_cover(i1)
        assert verify(i1, sol).feasible
        assert sol.cost == 8
        assert sol.segments[0] == Segment(1, 3, 2)

    def test_single_rect(self):
        sol = greedy_cover(make_instance([(0, 4, 0, 2)]))
        assert sol.segments == (Segment(0, 4, 2),)

    def test_disjoint_rects_forced_cover(self):
        inst = make_instance([(6 * i, 6 * i + 2, 0, 1) for i in range(5)])
        assert greedy_cover(inst).cost == 10

    @given(st.integers(0, 50))
    def test_log_bound_and_lower_bound(self, seed):
        n = seed % 15 + 1
        inst = gen_uniform(n, seed)
        greedy = greedy_cover(inst)
        opt = exact_opt(inst)
        assert verify(inst, greedy).feasible
        assert opt.cost <= greedy.cost
        if opt.cost > 0:
            assert float(greedy.cost / opt.cost) <= 1 + math.log(n) + 1e-9
