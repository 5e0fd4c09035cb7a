from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chromknn.cutting import FrequencyTracker, freq_decrement, freq_increment, freq_mode

RED, BLUE = 0, 1


def test_examples():
    t = FrequencyTracker(2)
    assert freq_mode(t) is None and t.f_max == 0
    for _ in range(3):
        freq_increment(t, RED)
    freq_increment(t, BLUE)
    assert freq_mode(t) == (RED, 3)
    freq_decrement(t, RED)
    freq_decrement(t, RED)
    assert t.f_max == 1 and freq_mode(t).frequency == 1
    assert sorted(t.bucket(1)) == [RED, BLUE]


def test_decrement_at_zero():
    with pytest.raises(ValueError):
        FrequencyTracker(3).decrement(1)


def check(t: FrequencyTracker, ref: Counter, num_colors: int):
    fstar = max(ref.values(), default=0)
    assert t.f_max == fstar
    mode = t.mode()
    assert (mode.frequency if mode else 0) == fstar
    if mode:
        assert ref[mode.color] == fstar


@given(st.lists(st.tuples(st.booleans(), st.integers(0, 4)), max_size=200))
def test_matches_naive_counter(ops):
    t, ref = FrequencyTracker(5), Counter()
    for inc, c in ops:
        if inc or ref[c] == 0:
            t.increment(c)
            ref[c] += 1
        else:
            t.decrement(c)
            ref[c] -= 1
        check(t, ref, 5)
    for f in range(max(ref.values(), default=0) + 1):
        assert sorted(t.bucket(f)) == sorted(c for c in range(5) if ref[c] == f)


def test_buckets_grow_past_capacity():
    t = FrequencyTracker(2, capacity=1)
    for _ in range(10):
        t.increment(1)
    assert t.mode() == (1, 10)
