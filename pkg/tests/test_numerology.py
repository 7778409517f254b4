from fractions import Fraction

import pytest

from nrbeammgr import (
    SsBurstConfig,
    ValidationError,
    burst_tail_time,
    numerology_from_spacing,
    ss_burst_max_duration,
)


def test_slot_and_symbol_scaling():
    n120 = numerology_from_spacing(120)
    n240 = numerology_from_spacing(240)
    assert n120.slot_ms == Fraction(1, 8)
    assert n240.slot_ms == Fraction(1, 16)
    assert n120.symbol_ms == Fraction(7135, 100_000) / 8
    assert n240.symbol_ms == Fraction(7135, 100_000) / 16
    # nominal symbol duration is book-kept separately from the exact slot
    # duration, so 14 symbol times land just short of one slot
    assert 14 * n120.symbol_ms < n120.slot_ms
    assert n120.slot_ms - 14 * n120.symbol_ms < n120.symbol_ms


def test_unsupported_spacing_rejected():
    with pytest.raises(ValidationError):
        numerology_from_spacing(123)
    # 60 kHz is a valid grid (e.g. for RACH) but not for SS bursts
    with pytest.raises(ValidationError):
        SsBurstConfig(8, 20, numerology_from_spacing(60))


def test_burst_max_duration():
    assert ss_burst_max_duration(numerology_from_spacing(120)) == 5
    assert ss_burst_max_duration(numerology_from_spacing(240)) == Fraction(5, 2)


def test_tail_time_even_odd():
    n = numerology_from_spacing(240)
    # even: N/2 slots minus the trailing two symbols of the last slot
    assert burst_tail_time(2, n) == n.slot_ms - 2 * n.symbol_ms
    # odd: six symbols of the extra slot are used
    assert burst_tail_time(1, n) == 6 * n.symbol_ms
    assert float(burst_tail_time(1, n)) == 0.02675625
    assert burst_tail_time(64, n) == 32 * n.slot_ms - 2 * n.symbol_ms


def test_tail_time_first_principles():
    # two blocks per slot: a new odd block opens a slot and ends six symbol
    # times in; its even partner ends two symbol times before the slot is up
    for scs in (120, 240):
        n = numerology_from_spacing(scs)
        for left in range(1, 64):
            step = burst_tail_time(left + 1, n) - burst_tail_time(left, n)
            if left % 2 == 1:
                assert step == n.slot_ms - 8 * n.symbol_ms, left
            else:
                assert step == 8 * n.symbol_ms, left
        # adding a full slot's pair of blocks always advances one slot time
        for left in range(1, 63):
            assert burst_tail_time(left + 2, n) - burst_tail_time(left, n) == n.slot_ms


def test_repetitions_per_spacing():
    n120 = numerology_from_spacing(120)
    n240 = numerology_from_spacing(240)
    assert SsBurstConfig(8, 20, n120).n_rep == 1
    assert SsBurstConfig(8, 20, n120, freq_diversity=True).n_rep == 11
    assert SsBurstConfig(8, 20, n240, freq_diversity=True).n_rep == 5


def test_burst_validation():
    n = numerology_from_spacing(120)
    with pytest.raises(ValidationError):
        SsBurstConfig(7, 20, n)
    with pytest.raises(ValidationError):
        SsBurstConfig(8, 15, n)
    with pytest.raises(ValidationError):
        SsBurstConfig(8, 20, n, bandwidth_hz=10_000_000)  # below SS block width


def test_burst_fits_in_window():
    n240 = numerology_from_spacing(240)
    b = SsBurstConfig(64, 5, n240)
    assert b.max_burst_duration_ms <= ss_burst_max_duration(n240)
