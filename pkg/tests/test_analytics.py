import math

import pytest

from gevi import analytics, evolution as evo
from tests.conftest import group, msg, slot


def test_size_distribution_quantiles_and_fraction():
    groups = [group(0, i, {f"m{j}" for j in range(size)})
              for i, size in enumerate([3, 3, 4, 8, 12, 20])]
    dist = analytics.size_distribution(groups)
    assert dist.histogram == {3: 2, 4: 1, 8: 1, 12: 1, 20: 1}
    assert dist.fraction_le_10 == pytest.approx(4 / 6)
    assert dist.quantiles["min"] == 3.0
    assert dist.quantiles["max"] == 20.0
    assert dist.quantiles["p50"] == pytest.approx(6.0)  # midpoint of 4 and 8


def test_size_distribution_empty():
    dist = analytics.size_distribution([])
    assert dist.histogram == {} and dist.fraction_le_10 == 0.0


def test_counts_per_slot_excludes_self_messages():
    slots = [slot(0, 0, 30), slot(1, 15, 45)]
    messages = [msg("a", "b", 1), msg("a", "a", 2), msg("b", "c", 20)]
    series = analytics.counts_per_slot([group(0, 0, "abc")], messages, slots)
    assert [(s.slot, s.group_count, s.message_count) for s in series] == [
        (0, 1, 2),
        (1, 0, 1),
    ]


def test_slot_stability_population_std():
    t1 = evo.Transition(group(0, 0, "ab"), group(1, 0, "ab"), 1.0, 1.0, 2)
    t2 = evo.Transition(group(0, 1, "cd"), group(1, 1, "ce"), 0.5, 1 / 3, 1)
    stats = analytics.slot_stability([t1, t2])
    mean = (1.0 + 1 / 3) / 2
    std = math.sqrt(((1.0 - mean) ** 2 + (1 / 3 - mean) ** 2) / 2)
    assert stats[0] == (pytest.approx(mean), pytest.approx(std))


def test_slot_series_fills_stability_only_where_present():
    slots = [slot(0, 0, 30), slot(1, 15, 45), slot(2, 30, 60)]
    groups = [group(0, 0, "ab"), group(1, 0, "ab"), group(2, 0, "ab")]
    transitions = [evo.Transition(groups[0], groups[1], 1.0, 1.0, 2)]
    series = analytics.slot_series(groups, [msg("a", "b", 1)], slots, transitions)
    assert series[0].stability_mean == 1.0
    assert series[1].stability_mean is None  # no 1 -> 2 transition
    assert series[2].stability_mean is None


def test_slot_series_from_counts_matches_message_path():
    slots = [slot(0, 0, 30), slot(1, 15, 45)]
    groups = [group(0, 0, "ab")]
    messages = [msg("a", "b", d) for d in (1, 16, 40)]
    a = analytics.slot_series(groups, messages, slots, [])
    b = analytics.slot_series_from_counts(groups, [2, 2], slots, [])
    assert a == b


def test_common_members():
    assert analytics.common_members(group(0, 0, "abcd"), group(0, 1, "cdef")) == {
        "c", "d"
    }


def test_overlap_stats_counts_same_slot_pairs_only():
    groups = [
        group(0, 0, "abcd"),
        group(0, 1, "cdef"),   # shares c,d with 0_0
        group(0, 2, "xyz"),    # disjoint from both
        group(1, 0, "abcd"),   # other slot, never paired with slot 0
    ]
    stats = analytics.overlap_stats(groups)
    assert stats.max_common == 2
    assert stats.pair_share_fraction == pytest.approx(1 / 3)
    # 0_2 and 1_0 overlap nothing in their own slots
    assert stats.nonoverlapping_fraction == pytest.approx(2 / 4)


def test_overlap_stats_no_pairs():
    stats = analytics.overlap_stats([group(0, 0, "ab"), group(1, 0, "cd")])
    assert stats.max_common == 0
    assert stats.pair_share_fraction == 0.0
    assert stats.nonoverlapping_fraction == 1.0
