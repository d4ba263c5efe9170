import pytest

from dcfl_lab.errors import NoTurningPoint, NotRealTime
from dcfl_lab.history import (BoundaryBlock, check_partition, classify_block, find_features,
                              record_history, turn_partition)
from dcfl_lab.machines import anbn
from dcfl_lab.normal_forms import epsilon_enhance, induce
from dcfl_lab.zoo import all_strings, build_entry, zoo_machines

from test_normal_forms import trailing_pops


def history_of(m, w):
    return record_history(epsilon_enhance(m), induce(m, w))


def test_anbn_heights():
    h = history_of(anbn(), "aabb")
    assert h.heights == [1, 1, 2, 3, 2, 1, 1]
    assert h.stacks[0] == "Z" and h.accepted


def test_empty_input_has_only_endmarker_moves():
    assert history_of(anbn(), "").heights == [1, 1, 1]


def test_plain_machine_with_eps_moves_is_not_real_time():
    m = trailing_pops()
    with pytest.raises(NotRealTime):
        record_history(m, induce(m, "aab"))


def test_heights_stay_positive_and_move_by_one():
    for _, m in zoo_machines()[:8]:
        for w in all_strings(sorted(m.input_alphabet)[:2], 8):
            h = history_of(m, w).heights
            assert min(h) >= 1
            assert all(abs(a - b) <= 1 for a, b in zip(h, h[1:]))


def test_block_shapes():
    assert classify_block([2, 2, 2], BoundaryBlock(0, 2)).pseudo_convex
    peak = classify_block([1, 2, 3, 2, 1], (0, 4))
    assert peak.convex and peak.pseudo_convex and not peak.flat
    assert not classify_block([3, 2, 3], (0, 2)).pseudo_convex


def test_bad_block_is_refused():
    with pytest.raises(ValueError):
        BoundaryBlock(3, 3)


def test_single_peak_features():
    fs = find_features([1, 2, 3, 2, 1])
    assert fs.peaks == [2] and fs.pits == [] and len(fs.hills) == 1


def test_elevated_plateau_tops_a_hill():
    fs = find_features([1, 2, 2, 1])
    assert fs.elevated_plateaus == [(1, 2)]
    assert fs.turning_points == [2]
    assert [h.top for h in fs.hills] == [("plateau", 1, 2)]


def test_monotone_history_has_no_hills():
    fs = find_features([1, 2, 3, 4])
    assert fs.peaks == [] and fs.hills == []
    with pytest.raises(NoTurningPoint):
        turn_partition([1, 2, 3, 4])


def test_single_hill_is_one_turn():
    h = history_of(anbn(), "aabb")
    part = turn_partition(h)
    assert len(part.turns) == 1 and part.true_gain == 0
    assert [(x.t1, x.t2) for x in find_features(h).hills] == [(1, 5)]


def test_two_hills():
    part = turn_partition([1, 3, 2, 4, 1])
    assert len(part.turns) == 2
    assert part.true_gain == 0
    assert check_partition([1, 3, 2, 4, 1], part) == []


def test_true_gain_telescopes_on_zoo_runs():
    entry = build_entry("L_(d)", {"d": 2})
    for _, m in zoo_machines([("L_(d)", {"d": 2}), ("Dup_c", {})]):
        for w in all_strings(sorted(m.input_alphabet), 7):
            h = history_of(m, w).heights
            try:
                part = turn_partition(h)
            except NoTurningPoint:
                continue
            assert part.true_gain == h[0] - h[-1]
            assert check_partition(h, part) == [], (w, h)
    assert entry.spec is not None
