from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from stabkit import (
    GenConfig,
    Instance,
    ParameterError,
    Solution,
    approx8,
    crossing_rects,
    decompose,
    exact_opt,
    gen_uniform,
    horizontal_cuts,
    stabs,
    strip_partition,
)

from .conftest import make_instance


def stacked_units(count, x0=0):
    # y-separated unit-width rects; approx8 costs exactly 2 per rect
    return make_instance([(x0, x0 + 1, 2 * i, 2 * i + 1) for i in range(count)])


class TestStripPartition:
    def test_i1_lines_can_miss_everything(self, i1):
        parts = strip_partition(i1, F(1, 4))
        assert parts.segments == ()
        assert len(parts.strips) == 1
        assert parts.strips[0].instance == i1
        assert parts.spacing == 16

    def test_offset_grid_size(self, i1):
        # offsets are multiples of w*eps/n below w/eps: n/eps^2 of them
        parts = strip_partition(i1, F(1, 4))
        step = i1.max_width * F(1, 4) / 3
        assert parts.offset % step == 0
        assert 0 <= parts.offset < parts.spacing

    def test_eps_validation(self, i1):
        with pytest.raises(ParameterError):
            strip_partition(i1, F(2))
        with pytest.raises(ParameterError):
            strip_partition(i1, F(0))

    def test_empty(self):
        parts = strip_partition(Instance(()), F(1, 2))
        assert parts.segments == () and parts.strips == ()

    @given(st.integers(0, 30))
    @settings(max_examples=30)
    def test_chosen_offset_is_exhaustive_minimum(self, seed):
        inst = gen_uniform(seed % 8 + 1, seed, GenConfig(x_range=(F(0), F(40)), w_min=F(1)))
        eps = F(1, 4)
        parts = strip_partition(inst, eps)
        w = inst.max_width
        spacing = w / eps
        step = w * eps / len(inst.rects)
        chosen_cost = sum((s.length for s in parts.segments), F(0))
        k = 0
        while (z := k * step) < spacing:
            cost = approx8(Instance(tuple(crossing_rects(inst, z, spacing)))).cost
            assert chosen_cost <= cost
            if cost == chosen_cost:
                # ties go to the smallest offset
                assert parts.offset <= z
            k += 1

    @given(st.integers(0, 40))
    def test_cover_and_strip_invariants(self, seed):
        inst = gen_uniform(seed % 10 + 1, seed, GenConfig(x_range=(F(0), F(40)), w_min=F(1)))
        eps = F(1, 4)
        parts = strip_partition(inst, eps)
        w = inst.max_width
        cover = Solution(parts.segments)
        in_strips = {r.id for s in parts.strips for r in s.instance.rects}
        for r in inst.rects:
            covered = any(stabs(s, r) for s in cover.segments)
            assert covered or r.id in in_strips
        for s in parts.strips:
            assert s.x1 - s.x0 == w / eps
            for r in s.instance.rects:
                assert s.x0 <= r.xl and r.xr <= s.x1
        # paid cover is within the guaranteed factor
        assert cover.cost <= 16 * eps * exact_opt(inst).cost


class TestHorizontalCuts:
    def test_cheap_strip_single_chunk(self, i1, half):
        cut = horizontal_cuts(i1, half)
        assert cut.segments == ()
        assert cut.chunks == (i1,)
        assert cut.observed_costs == (approx8(i1).cost,)

    def test_two_clusters_cut_between(self):
        # 18 stacked unit rects, threshold 8*1/(1/2)^2 = 32: the sweep prices
        # 2 per rect, triggers at the 17th top edge with value 34
        inst = stacked_units(18)
        cut = horizontal_cuts(inst, F(1, 2))
        assert len(cut.segments) == 1
        assert cut.segments[0].y == 33
        assert [len(c.rects) for c in cut.chunks] == [16, 1]
        assert cut.observed_costs[0] == 34 > 32
        assert cut.observed_costs[1] == 2

    def test_cut_spans_given_range(self):
        inst = stacked_units(18)
        cut = horizontal_cuts(inst, F(1, 2), span=(F(0), F(2)))
        assert cut.segments[0].xl == 0 and cut.segments[0].xr == 2

    def test_precondition_extent(self):
        inst = make_instance([(0, 1, 0, 1), (10, 11, 0, 1)])
        with pytest.raises(ParameterError):
            horizontal_cuts(inst, F(1, 2))  # extent 11 > w/eps = 2

    def test_empty(self):
        cut = horizontal_cuts(Instance(()), F(1, 2))
        assert cut.segments == () and cut.chunks == ()

    @given(st.integers(0, 30))
    @settings(max_examples=30)
    def test_cut_cost_within_eps_of_opt(self, seed):
        n = 8 + seed % 3
        inst = gen_uniform(
            n, seed,
            GenConfig(x_range=(F(0), F(3, 4)), y_range=(F(0), F(64)),
                      w_min=F(9, 8), w_max=F(9, 8), h_max=F(1, 2), resolution=8),
        )
        eps = F(1, 2)
        cut = horizontal_cuts(inst, eps)
        total = sum((s.length for s in cut.segments), F(0))
        assert total <= eps * exact_opt(inst).cost
        threshold = 8 * inst.max_width / eps**2
        for observed in cut.observed_costs[:-1]:
            assert observed > threshold


class TestDecompose:
    def test_i1(self, i1):
        dec = decompose(i1, F(1, 4))
        assert dec.paid_segments == ()
        assert dec.sub_instances == (i1,)

    def test_empty(self):
        dec = decompose(Instance(()), F(1, 4))
        assert dec == type(dec)((), (), ())

    @given(st.integers(0, 40))
    def test_partition_soundness_and_bounds(self, seed):
        inst = gen_uniform(seed % 10 + 1, seed)
        eps = F(1, 4)
        dec = decompose(inst, eps)
        paid = Solution(dec.paid_segments)
        seen = {}
        for k, sub in enumerate(dec.sub_instances):
            for r in sub.rects:
                assert r.id not in seen
                seen[r.id] = k
        for r in inst.rects:
            assert any(stabs(s, r) for s in paid.segments) or r.id in seen
        assert len(dec.opt_upper_bounds) == len(dec.sub_instances)
        for sub in dec.sub_instances:
            extent = max(r.xr for r in sub.rects) - min(r.xl for r in sub.rects)
            assert extent <= inst.max_width / eps
        # paid segments stay within the composed guarantee
        assert paid.cost <= 17 * eps * exact_opt(inst).cost
        # chunk optima are independent
        total = sum((exact_opt(sub).cost for sub in dec.sub_instances), F(0))
        assert total <= exact_opt(inst).cost
        # recorded upper bounds really bound each chunk's optimum
        for sub, bound in zip(dec.sub_instances, dec.opt_upper_bounds):
            assert exact_opt(sub).cost <= bound
