"""
Tests for Split-Tree List Decoding
==================================
"""

import numpy as np
import pytest

from modules.code.polar import encode
from modules.code.split import split_code
from modules.decoder.joint_reference import joint_reference_decode
from modules.decoder.scl import path_increments
from modules.decoder.split_decoder import (
    GlobalSet,
    SkimConfig,
    SubDecoderState,
    SubPathSet,
    assemble_globals,
    distribute_paths,
    rank_by_completion,
    s_nbscl_decode,
    select_globals,
    skim_pivots,
    skim_subpaths,
    sum_member_pm,
)
from modules.decoder.trellis import Trellis
from modules.errors import FrameDecodeFailure, SimulationConfigError
from modules.sim.channel import ChannelConfig, channel_llrv, noiseless_llrv, transmit

pytestmark = [pytest.mark.decoder]


def _noisy_channel(code, rng, ebn0_db=1.0):
    u = code.place_message(code.random_message(rng))
    cfg = ChannelConfig(ebn0_db=ebn0_db, rate=code.rate, r=code.field.r)
    return u, channel_llrv(transmit(encode(u, code), cfg, rng), cfg.sigma2, code.field.r)


def _subpaths(j, parents, symbols, pm):
    return SubPathSet(j, np.array(parents), np.array(symbols), np.array(pm, dtype=float))


def _toy_tables(first, second):
    return [np.array([first]), np.array([second])]


@pytest.mark.unit
class TestSkimConfig:
    """Tests for skimming-factor resolution."""

    def test_list_size_must_be_positive(self):
        with pytest.raises(SimulationConfigError):
            SkimConfig(list_size=0).resolved(4)

    def test_raised_to_list_size(self):
        assert SkimConfig(list_size=4, skim=2).resolved(4).skim == 4

    def test_clamped_to_q_times_l(self):
        assert SkimConfig(list_size=4, skim=100).resolved(4).skim == 16

    def test_assembly_budget(self):
        with pytest.raises(SimulationConfigError):
            SkimConfig(list_size=4, skim=64, M=2, assembly_budget=1000).resolved(256)

    def test_default_within_budget(self):
        cfg = SkimConfig().resolved(256)
        assert (cfg.list_size, cfg.skim, cfg.M) == (4, 16, 2)


@pytest.mark.unit
class TestReconciliationStages:
    """Tests for skimming, assembly and global selection."""

    def test_skim_keeps_best(self):
        subs = _subpaths(0, [0, 0, 1, 1], [0, 1, 0, 1], [-1.0, -0.5, -3.0, -0.5])
        kept = skim_subpaths(subs, 0, False, 0, 2)
        assert list(kept.parents) == [0, 1]
        assert list(kept.symbols) == [1, 1]

    def test_skim_frozen_filter(self):
        subs = _subpaths(0, [0, 0], [0, 1], [-0.1, -2.0])
        kept = skim_subpaths(subs, 0, True, 1, 4)
        assert list(kept.symbols) == [1]

    def test_skim_frozen_filter_empty(self):
        subs = _subpaths(0, [0], [0], [0.0])
        with pytest.raises(FrameDecodeFailure):
            skim_subpaths(subs, 3, True, 2, 4)

    def test_assemble_completes_valid_tuples(self, toy_code):
        """Level 1 freezes u1 to 1: pivot w0 = s forces w1 = 3 + 3s."""
        split = split_code(toy_code, 2)
        tables = _toy_tables([-0.1, -0.5, -3.0, -3.0], [-0.2, -1.0, -1.0, -0.4])
        globals_ = assemble_globals([_subpaths(0, [0, 0], [1, 0], [-0.5, -0.1])], tables, 1, split)
        assert globals_.symbols.tolist() == [[1, 0], [0, 3]]
        assert np.allclose(globals_.pm, [-0.7, -0.5])
        assert np.all(split.valid_tuples(1, globals_.symbols))

    def test_assemble_needs_shared_parent(self, code_128):
        split = split_code(code_128, 2)
        level = next(i for i, c in enumerate(split.constraints) if len(c.pivots) == 2)
        tables = [np.zeros((2, 256)), np.zeros((2, 256))]
        with pytest.raises(FrameDecodeFailure):
            assemble_globals([_subpaths(0, [0], [1], [0.0]), _subpaths(1, [1], [0], [0.0])], tables, level, split)

    def test_assemble_without_pivots_keeps_one_tuple_per_parent(self, toy_code):
        split = split_code(toy_code, 2)
        tables = [np.zeros((3, 4)), np.zeros((3, 4))]
        globals_ = assemble_globals([], tables, 0, split)
        assert list(globals_.parents) == [0, 1, 2]
        assert globals_.symbols.tolist() == [list(split.constraints[0].w_values)] * 3

    def test_lone_pivot_ranked_by_tuple_metric(self, toy_code):
        """Symbol 0 is the pivot's own best but completes the worse tuple."""
        split = split_code(toy_code, 2)
        tables = _toy_tables([-0.1, -0.5, -3.0, -3.0], [-0.2, -1.0, -1.0, -2.0])
        kept = rank_by_completion(tables, 1, split, 1)
        assert (kept.sub_decoder, list(kept.symbols), list(kept.pm)) == (0, [1], [-0.5])

    def test_skim_pivots_keeps_skim_per_pivot(self, code_128, rng):
        split = split_code(code_128, 4)
        level = next(i for i, c in enumerate(split.constraints) if len(c.pivots) >= 2)
        tables = [rng.uniform(-20.0, 0.0, size=(4, 256)) for _ in range(4)]
        kept = skim_pivots(tables, level, split, 8)
        assert [s.sub_decoder for s in kept] == list(split.constraints[level].pivots)
        assert all(len(s) == 8 for s in kept)
        globals_ = assemble_globals(kept, tables, level, split)
        assert np.all(split.valid_tuples(level, globals_.symbols))

    def test_select_tie_break(self):
        candidates = GlobalSet(
            parents=np.array([1, 0, 0]),
            symbols=np.array([[0, 0], [1, 0], [0, 1]]),
            member_pm=np.zeros((3, 2)),
            pm=np.zeros(3),
        )
        top = select_globals(candidates, 3)
        assert top.symbols.tolist() == [[0, 1], [1, 0], [0, 0]]
        assert list(top.parents) == [0, 0, 1]

    def test_select_truncates(self):
        candidates = GlobalSet(np.zeros(3, dtype=int), np.array([[0, 0], [1, 0], [2, 0]]),
                               np.zeros((3, 2)), np.array([-2.0, -1.0, -3.0]))
        assert select_globals(candidates, 2).symbols[:, 0].tolist() == [1, 0]

    def test_sum_member_pm(self):
        assert sum_member_pm(np.array([[1.0, 2.0], [3.0, 4.0]])).tolist() == [3.0, 7.0]


class TestSplitDecoder:
    """Tests for end-to-end split-tree decoding."""

    @pytest.mark.unit
    @pytest.mark.parametrize("M", [2, 4])
    def test_noiseless_toy(self, toy_code, rng, M):
        split = split_code(toy_code, M)
        u = toy_code.place_message(toy_code.random_message(rng))
        result = s_nbscl_decode(noiseless_llrv(encode(u, toy_code), 4), split, SkimConfig(M=M))
        assert np.array_equal(result.u, u)

    @pytest.mark.integration
    @pytest.mark.parametrize("M", [2, 4])
    def test_noiseless_128(self, code_128, rng, M):
        split = split_code(code_128, M)
        u = code_128.place_message(code_128.random_message(rng))
        result = s_nbscl_decode(noiseless_llrv(encode(u, code_128), 256), split, SkimConfig(M=M))
        assert np.array_equal(result.message, code_128.extract_message(u))

    def test_stats(self, toy_code, rng):
        split = split_code(toy_code, 2)
        _, channel = _noisy_channel(toy_code, rng)
        stats = s_nbscl_decode(channel, split, SkimConfig()).stats
        assert stats["bypassed_levels"] == 1
        assert stats["reconciled_levels"] == 3
        assert len(stats["valid_tuple_counts"]) == 3

    def test_no_bypass_reconciles_every_level(self, toy_code, rng):
        split = split_code(toy_code, 2)
        _, channel = _noisy_channel(toy_code, rng)
        stats = s_nbscl_decode(channel, split, SkimConfig(), bypass=False).stats
        assert stats["bypassed_levels"] == 0
        assert stats["reconciled_levels"] == 4

    @pytest.mark.integration
    def test_debug_checks_pass(self, toy_code, rng):
        split = split_code(toy_code, 2)
        for _ in range(10):
            _, channel = _noisy_channel(toy_code, rng, ebn0_db=0.0)
            s_nbscl_decode(channel, split, SkimConfig(), debug_checks=True)

    @pytest.mark.integration
    @pytest.mark.parametrize("M", [2, 4])
    def test_full_skim_matches_joint_reference(self, toy_code, rng, M):
        """Without bypass and with L_s = qL nothing is skimmed away."""
        split = split_code(toy_code, M)
        cfg = SkimConfig(list_size=4, skim=16, M=M)
        for _ in range(20):
            _, channel = _noisy_channel(toy_code, rng)
            split_result = s_nbscl_decode(channel, split, cfg, bypass=False)
            joint = joint_reference_decode(channel, split, 4)
            assert np.array_equal(split_result.paths, joint.paths)
            assert np.array_equal(split_result.pm, joint.pm)

    @pytest.mark.integration
    def test_bypass_keeps_decision(self, toy_code, rng):
        split = split_code(toy_code, 2)
        cfg = SkimConfig(list_size=4, skim=16)
        for _ in range(20):
            _, channel = _noisy_channel(toy_code, rng)
            assert np.array_equal(
                s_nbscl_decode(channel, split, cfg).message,
                joint_reference_decode(channel, split, 4).message,
            )

    @pytest.mark.integration
    def test_single_free_levels_are_exact(self, toy_code, rng):
        """Every toy level has at most one free symbol, so skimming to L loses nothing."""
        split = split_code(toy_code, 2)
        assert all(c.free_count <= 1 for c in split.constraints)
        cfg = SkimConfig(list_size=4, skim=4, M=2)
        for _ in range(20):
            _, channel = _noisy_channel(toy_code, rng)
            split_result = s_nbscl_decode(channel, split, cfg, bypass=False)
            joint = joint_reference_decode(channel, split, 4)
            assert np.array_equal(split_result.paths, joint.paths)
            assert np.array_equal(split_result.pm, joint.pm)

    @pytest.mark.integration
    @pytest.mark.parametrize("M", [2, 4])
    def test_small_skim_at_cross_constrained_levels(self, code_128, rng, M):
        split = split_code(code_128, M)
        cfg = SkimConfig(list_size=4, skim=4, M=M)
        mask = code_128.frozen_mask
        for _ in range(5):
            _, channel = _noisy_channel(code_128, rng)
            result = s_nbscl_decode(channel, split, cfg, debug_checks=True)
            assert len(result.paths) == 4
            assert np.all(result.paths[:, mask] == code_128.frozen_values[mask])
            assert all(count >= 4 for count in result.stats["valid_tuple_counts"])


@pytest.mark.integration
class TestSkimAndBypass:
    """Tests for nested skims and bypass equivalence."""

    @staticmethod
    def _level_tables(split, channel, level, list_size=4, skim=16):
        """Extension tables of every sub-decoder at `level` after decoding the levels before it."""
        code = split.code
        blocks = split.channel_blocks(channel)
        states = [SubDecoderState(Trellis(blocks[j], code.kernel, code.field), np.zeros(1)) for j in range(split.M)]
        for i in range(level + 1):
            tables = [s.pm[:, None] + path_increments(s.trellis.llrv(i)) for s in states]
            if i == level:
                return tables
            candidates = assemble_globals(skim_pivots(tables, i, split, skim), tables, i, split)
            distribute_paths(select_globals(candidates, list_size), states)

    @pytest.mark.parametrize("M", [2, 4])
    def test_larger_skim_contains_smaller(self, code_128, rng, M):
        split = split_code(code_128, M)
        reconciled = [i for i, c in enumerate(split.constraints) if c.free_count >= 1]
        for frame in range(40):
            _, channel = _noisy_channel(code_128, rng)
            level = reconciled[frame % len(reconciled)]
            tables = self._level_tables(split, channel, level)
            kept = {}
            for skim in (4, 8, 16):
                globals_ = assemble_globals(skim_pivots(tables, level, split, skim), tables, level, split)
                kept[skim] = {(int(p), tuple(w)) for p, w in zip(globals_.parents, globals_.symbols.tolist())}
            assert kept[4] <= kept[8] <= kept[16]

    def test_bypass_keeps_survivor_sets(self, toy_code, rng):
        split = split_code(toy_code, 2)
        cfg = SkimConfig(list_size=4, skim=16)
        for _ in range(400):
            _, channel = _noisy_channel(toy_code, rng)
            on = s_nbscl_decode(channel, split, cfg, bypass=True)
            off = s_nbscl_decode(channel, split, cfg, bypass=False)
            assert {(tuple(p), m) for p, m in zip(on.paths.tolist(), on.pm.tolist())} == \
                   {(tuple(p), m) for p, m in zip(off.paths.tolist(), off.pm.tolist())}
