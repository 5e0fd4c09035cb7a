"""Color frequencies with O(1) increment, decrement and mode lookup.

Colors with equal frequency ``f`` sit in a doubly linked list ``L_f``; the
largest non-empty index is kept as ``f_max``.
"""
from __future__ import annotations

from typing import List, Optional

from ..geometry import ModeAnswer

_NIL = -1


class FrequencyTracker:
    def __init__(self, num_colors: int, capacity: Optional[int] = None):
        self.num_colors = num_colors
        capacity = capacity if capacity is not None else num_colors
        self.freq: List[int] = [0] * num_colors
        self.prev: List[int] = [_NIL] * num_colors
        self.next: List[int] = [_NIL] * num_colors
        self.head: List[int] = [_NIL] * (capacity + 1)
        self.f_max = 0
        for c in range(num_colors - 1, -1, -1):
            self._push(c, 0)

    def _push(self, c: int, f: int):
        while f >= len(self.head):
            self.head.append(_NIL)
        h = self.head[f]
        self.prev[c] = _NIL
        self.next[c] = h
        if h != _NIL:
            self.prev[h] = c
        self.head[f] = c

    def _unlink(self, c: int, f: int):
        p, n = self.prev[c], self.next[c]
        if p != _NIL:
            self.next[p] = n
        else:
            self.head[f] = n
        if n != _NIL:
            self.prev[n] = p

    def increment(self, c: int):
        f = self.freq[c]
        self._unlink(c, f)
        self.freq[c] = f + 1
        self._push(c, f + 1)
        if f + 1 > self.f_max:
            self.f_max = f + 1

    def decrement(self, c: int):
        f = self.freq[c]
        if f == 0:
            raise ValueError(f"color {c} has frequency 0")
        self._unlink(c, f)
        self.freq[c] = f - 1
        self._push(c, f - 1)
        if self.f_max == f and self.head[f] == _NIL:
            self.f_max = f - 1

    def mode(self) -> Optional[ModeAnswer]:
        if self.f_max == 0:
            return None
        return ModeAnswer(self.head[self.f_max], self.f_max)

    def bucket(self, f: int) -> List[int]:
        out = []
        c = self.head[f] if f < len(self.head) else _NIL
        while c != _NIL:
            out.append(c)
            c = self.next[c]
        return out


def freq_increment(tracker: FrequencyTracker, c: int):
    tracker.increment(c)


def freq_decrement(tracker: FrequencyTracker, c: int):
    tracker.decrement(c)


def freq_mode(tracker: FrequencyTracker) -> Optional[ModeAnswer]:
    return tracker.mode()
