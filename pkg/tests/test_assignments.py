import numpy as np
import pytest
from scipy import stats

from core.assignments.explicit_assignment import build_explicit_assignment, slot_dtype
from core.assignments.hash_assignment import build_hash_assignment
from core.assignments.layout import TestLayout
from core.config.params import new_params, num_tests
from core.errors import LayoutMismatchError, ParameterError, ResourceError
from core.utils.codec import unpack_u32_base64
from core.utils.prng import SplitMix64


class TestLayoutTable:

    def test_segments_are_contiguous(self):
        params = new_params(1024, 16, C=16, Cprime=3, Ctil=2)
        layout = TestLayout.from_params(params)
        assert len(layout) == 2 * 6 + 12
        assert layout.num_tests == num_tests(params)
        position = 0
        for seg in layout.segments:
            assert seg.start == position
            position = seg.stop
        assert layout.level_segment(4, 1).length == 256
        assert layout.final_segment(11).stop == layout.num_tests

    def test_segment_of(self):
        layout = TestLayout.from_lengths([("a", -1, 0, 3), ("b", -1, 0, 70), ("c", -1, 0, 1)])
        assert layout.segment_of(0).kind == "a"
        assert layout.segment_of(2).kind == "a"
        assert layout.segment_of(3).kind == "b"
        assert layout.segment_of(72).kind == "b"
        assert layout.segment_of(73).kind == "c"
        assert layout.segment_of(74) is None
        # 每段从新字开始
        assert [seg.word_start for seg in layout.segments] == [0, 1, 3]
        assert layout.num_words == 4

    def test_require_same(self):
        a = TestLayout.from_params(new_params(64, 4))
        b = TestLayout.from_params(new_params(64, 8))
        a.require_same(TestLayout.from_params(new_params(64, 4, seed=9)))
        with pytest.raises(LayoutMismatchError):
            a.require_same(b)
        with pytest.raises(KeyError):
            a.final_segment(99)


class TestExplicitAssignment:

    def test_deterministic(self):
        params = new_params(1024, 16, seed=7)
        a = build_explicit_assignment(params)
        b = build_explicit_assignment(params)
        for level in params.levels:
            assert np.array_equal(a.level_array(level, 0), b.level_array(level, 0))
        for seq in range(params.num_final_sequences):
            assert np.array_equal(a.final_array(seq), b.final_array(seq))
        assert a.to_dict() == b.to_dict()

    def test_seed_changes_design(self):
        a = build_explicit_assignment(new_params(1024, 16, seed=7))
        b = build_explicit_assignment(new_params(1024, 16, seed=8))
        assert not np.array_equal(a.level_array(9, 0), b.level_array(9, 0))

    def test_slot_ranges_and_dtypes(self):
        params = new_params(4096, 16, C=16, Ctil=2, seed=3)
        assignment = build_explicit_assignment(params)
        for level in params.levels:
            for rep in range(params.Ctil):
                arr = assignment.level_array(level, rep)
                assert arr.shape == (1 << level,)
                assert arr.dtype == slot_dtype(params.block_bits)
                assert int(arr.max()) < params.block_size
        for seq in range(params.num_final_sequences):
            arr = assignment.final_array(seq)
            assert arr.shape == (params.n,)
            assert int(arr.max()) < params.final_width

    def test_slots_are_uniform(self):
        params = new_params(1 << 16, 16, C=16, seed=11)
        assignment = build_explicit_assignment(params)
        counts = np.bincount(assignment.level_array(15, 0).astype(np.int64), minlength=params.block_size)
        assert stats.chisquare(counts).pvalue > 1e-4
        final_counts = np.bincount(assignment.final_array(0).astype(np.int64), minlength=params.final_width)
        assert stats.chisquare(final_counts).pvalue > 1e-4

    def test_smallest_instance(self):
        params = new_params(4, 2, C=4, Cprime=1)
        assignment = build_explicit_assignment(params)
        assert list(params.levels) == [1]
        assert assignment.level_array(1, 0).shape == (2,)
        assert assignment.num_tests == 12

    def test_storage_is_linear_in_n(self):
        small = build_explicit_assignment(new_params(1 << 12, 16))
        large = build_explicit_assignment(new_params(1 << 13, 16))
        ratio = large.storage_bits / small.storage_bits
        assert 1.9 < ratio < 2.1

    def test_dump_round_trips_slots(self):
        params = new_params(256, 4, seed=2)
        assignment = build_explicit_assignment(params)
        dump = assignment.to_dict()
        assert dump["variant"] == "explicit"
        assert dump["params"]["t"] == num_tests(params)
        first = dump["levels"][0]
        restored = unpack_u32_base64(first["slots"])
        assert np.array_equal(restored, assignment.level_array(first["level"], first["repetition"]))
        assert len(dump["final"]) == params.num_final_sequences

    def test_memory_error_becomes_resource_error(self, monkeypatch):
        def _fail(self, count, bits):
            raise MemoryError("no room")

        monkeypatch.setattr(SplitMix64, "uniform_bits", _fail)
        with pytest.raises(ResourceError):
            build_explicit_assignment(new_params(64, 4))


class TestHashAssignment:

    def test_deterministic_dump(self):
        params = new_params(1024, 16, C=16, Ctil=2, seed=3)
        a = build_hash_assignment(params, 7)
        b = build_hash_assignment(params, 7)
        assert a.to_dict() == b.to_dict()
        assert a.to_dict() != build_hash_assignment(params.with_seed(4), 7).to_dict()

    def test_field_degrees(self):
        params = new_params(1024, 16, C=16, Ctil=1, seed=3)
        assignment = build_hash_assignment(params, 5)
        assert assignment.level_hash(4, 0).field.m == 8
        assert assignment.level_hash(9, 0).field.m == 9
        assert assignment.final_hash(0).field.m == 10
        assert assignment.final_hash(0).out_bits == 5
        assert assignment.level_hash(9, 0).r == 5

    def test_default_independence(self):
        assignment = build_hash_assignment(new_params(1024, 16, C=16))
        assert assignment.r == 7

    def test_storage_is_polylogarithmic(self):
        params = new_params(1 << 16, 64, C=16, Ctil=2, seed=1)
        assignment = build_hash_assignment(params, 9)
        levels = params.Ctil * (params.log_n - params.log_k)
        bound = 9 * params.log_n * (levels + params.num_final_sequences)
        assert assignment.storage_bits <= bound
        explicit = build_explicit_assignment(params)
        assert assignment.storage_bits * 100 < explicit.storage_bits

    def test_slot_ranges(self, small_hashed):
        params = small_hashed.params
        for level in params.levels:
            slots = small_hashed.node_slots(level, 1, np.arange(1 << level))
            assert slots.min() >= 0 and slots.max() < params.block_size
        slots = small_hashed.final_slots(2, np.arange(params.n))
        assert slots.max() < params.final_width
        assert small_hashed.node_test(2, 0, 1) < small_hashed.layout.level_segment(2, 0).stop

    def test_r_below_two_rejected(self):
        with pytest.raises(ParameterError):
            build_hash_assignment(new_params(64, 4), 1)

    def test_counter_tracks_evaluations(self, small_hashed):
        small_hashed.counter.reset()
        small_hashed.node_slots(3, 0, np.arange(8))
        assert small_hashed.counter.evaluations == 8
        assert small_hashed.counter.multiplications == 8 * 4
