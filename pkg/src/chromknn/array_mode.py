"""Range mode over an array of color labels.

``BlockModeTable`` answers exact queries in O(sqrt n) time with O(n) space:
a table of modes of whole-block spans plus per-color occurrence lists that
let a candidate's in-range frequency be extended one step at a time.

``JumpLists`` answers (1 - eps)-approximate queries with a binary search.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import Counter
from typing import List, Optional, Sequence, Tuple

from .geometry import ModeAnswer


def _check_range(i: int, j: int, n: int):
    if not (0 <= i <= j < n):
        raise IndexError(f"range ({i}, {j}) out of bounds for length {n}")


class BlockModeTable:
    def __init__(self, colors: Sequence[int], block_size: Optional[int] = None):
        self.colors: List[int] = [int(c) for c in colors]
        n = self.n = len(self.colors)
        self.t = block_size or max(1, math.ceil(math.sqrt(n)))
        t = self.t
        self.num_blocks = (n + t - 1) // t if n else 0

        num_colors = max(self.colors) + 1 if n else 0
        self.occurrences: List[List[int]] = [[] for _ in range(num_colors)]
        self.rank: List[int] = [0] * n
        for pos, c in enumerate(self.colors):
            self.rank[pos] = len(self.occurrences[c])
            self.occurrences[c].append(pos)

        # span[bi][bj - bi] = mode of blocks bi..bj
        self.span: List[List[Tuple[int, int]]] = []
        freq = [0] * num_colors
        for bi in range(self.num_blocks):
            row = []
            best_c, best_f = -1, 0
            touched = []
            for pos in range(bi * t, n):
                c = self.colors[pos]
                if freq[c] == 0:
                    touched.append(c)
                freq[c] += 1
                if freq[c] > best_f or (freq[c] == best_f and c < best_c):
                    best_c, best_f = c, freq[c]
                if (pos + 1) % t == 0 or pos == n - 1:
                    row.append((best_c, best_f))
            for c in touched:
                freq[c] = 0
            self.span.append(row)

    def span_mode(self, bi: int, bj: int) -> Tuple[int, int]:
        return self.span[bi][bj - bi]

    def frequency(self, c: int, i: int, j: int) -> int:
        """Occurrences of color ``c`` in ``A[i..j]``."""
        if not 0 <= c < len(self.occurrences):
            return 0
        occ = self.occurrences[c]
        return bisect_right(occ, j) - bisect_left(occ, i)

    def mode_query(self, i: int, j: int, stats: Optional[Counter] = None) -> ModeAnswer:
        _check_range(i, j, self.n)
        t = self.t
        bi = (i + t - 1) // t          # first block fully inside
        bj = (j + 1) // t - 1          # last block fully inside
        if bi <= bj:
            best_c, best_f = self.span_mode(bi, bj)
            prefix_end, suffix_start = bi * t, (bj + 1) * t
        else:
            best_c, best_f = self.colors[i], 0
            prefix_end, suffix_start = j + 1, j + 1

        occ, rank, colors = self.occurrences, self.rank, self.colors
        scans = 0
        for pos in range(i, prefix_end):
            scans += 1
            c = colors[pos]
            q = occ[c]
            r = rank[pos]
            # at least best_f + 1 copies of c in A[pos..j]?
            while r + best_f < len(q) and q[r + best_f] <= j:
                best_f += 1
                best_c = c
                scans += 1
        for pos in range(j, suffix_start - 1, -1):
            scans += 1
            c = colors[pos]
            q = occ[c]
            r = rank[pos]
            while r - best_f >= 0 and q[r - best_f] >= i:
                best_f += 1
                best_c = c
                scans += 1
        if stats is not None:
            stats["candidate_scans"] += scans
            stats["mode_queries"] += 1
        return ModeAnswer(best_c, best_f)


def thresholds_for(eps: float, limit: int) -> List[int]:
    """Distinct values of ceil((1/(1-eps))^t), t = 0, 1, ..., up to ``limit``."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    base = 1.0 / (1.0 - eps)
    out: List[int] = []
    t = 0
    while True:
        v = math.ceil(base ** t - 1e-9)
        if not out or v > out[-1]:
            out.append(v)
        if v > limit:
            return out
        t += 1


class JumpLists:
    """For each left end ``i``, the first right ends where the mode frequency
    of ``A[i..j]`` reaches each threshold, with the color reaching it.

    A query returns the color of the last jump at or before ``j``; its
    threshold ``T`` satisfies ``T <= f* < T_next <= T / (1 - eps)``.
    """

    def __init__(self, colors: Sequence[int], eps: float, table: Optional[BlockModeTable] = None):
        self.colors = [int(c) for c in colors]
        self.n = len(self.colors)
        self.eps = eps
        self.thresholds = thresholds_for(eps, self.n)
        self.table = table if table is not None else BlockModeTable(self.colors)
        num_colors = max(self.colors) + 1 if self.n else 0

        self.positions: List[List[int]] = []
        self.jump_colors: List[List[int]] = []
        freq = [0] * num_colors
        th = self.thresholds
        for i in range(self.n):
            pos_list, col_list = [], []
            level = 0
            best = 0
            for j in range(i, self.n):
                c = self.colors[j]
                freq[c] += 1
                if freq[c] > best:
                    best = freq[c]
                    if best >= th[level]:
                        pos_list.append(j)
                        col_list.append(c)
                        level += 1
            for j in range(i, self.n):
                freq[self.colors[j]] = 0
            self.positions.append(pos_list)
            self.jump_colors.append(col_list)

    def size(self) -> int:
        return sum(len(p) for p in self.positions)

    def locate(self, i: int, j: int) -> int:
        """Index of the last jump in list ``i`` at position ``<= j``."""
        _check_range(i, j, self.n)
        return bisect_right(self.positions[i], j) - 1

    def approx_mode_query(self, i: int, j: int, stats: Optional[Counter] = None) -> ModeAnswer:
        idx = self.locate(i, j)
        c = self.jump_colors[i][idx]
        if stats is not None:
            stats["approx_queries"] += 1
        return ModeAnswer(c, self.table.frequency(c, i, j))

    def threshold_bracket(self, i: int, j: int) -> Tuple[int, Optional[int]]:
        """(threshold reached at the chosen jump, next threshold or None)."""
        idx = self.locate(i, j)
        nxt = self.thresholds[idx + 1] if idx + 1 < len(self.thresholds) else None
        return self.thresholds[idx], nxt
