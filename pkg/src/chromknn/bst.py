"""Size-annotated search trees for 1D range finding.

The tree is static and perfectly balanced. A query splits it at ``q`` with
path copying, which yields two trees that are already sorted by distance to
``q`` (the left one in reversed key order), and then selects the element of
rank ``k`` from the pair without merging them.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from typing import Callable, Iterator, List, NamedTuple, Optional, Sequence, Tuple


class Node:
    __slots__ = ("key", "item", "size", "height", "left", "right")

    def __init__(self, key: float, item: int, left: "Optional[Node]", right: "Optional[Node]"):
        self.key = key
        self.item = item
        self.left = left
        self.right = right
        self.size = 1 + size(left) + size(right)
        self.height = 1 + max(height(left), height(right))

    def __repr__(self):
        return f"Node(key={self.key!r}, size={self.size})"


def size(node: Optional[Node]) -> int:
    return node.size if node is not None else 0


def height(node: Optional[Node]) -> int:
    return node.height if node is not None else 0


def build_tree(keys: Sequence[float], items: Optional[Sequence[int]] = None) -> Optional[Node]:
    """Balanced tree over ascending ``keys``; ``items`` default to positions."""
    keys = list(keys)
    if any(keys[i] > keys[i + 1] for i in range(len(keys) - 1)):
        raise ValueError("keys must be sorted ascending")
    if items is None:
        items = range(len(keys))
    items = list(items)

    def rec(lo: int, hi: int) -> Optional[Node]:
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        return Node(keys[mid], items[mid], rec(lo, mid), rec(mid + 1, hi))

    return rec(0, len(keys))


def inorder(node: Optional[Node]) -> Iterator[Node]:
    stack = []
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.left
        node = stack.pop()
        yield node
        node = node.right


class SplitView(NamedTuple):
    left: Optional[Node]   # keys < q
    right: Optional[Node]  # keys >= q
    copied: int


def split_at(tree: Optional[Node], q: float) -> SplitView:
    """Split into keys ``< q`` and keys ``>= q``, copying only the search path."""
    copied = 0

    def rec(node):
        nonlocal copied
        if node is None:
            return None, None
        copied += 1
        if node.key < q:
            lo, hi = rec(node.right)
            return Node(node.key, node.item, node.left, lo), hi
        lo, hi = rec(node.left)
        return lo, Node(node.key, node.item, hi, node.right)

    left, right = rec(tree)
    return SplitView(left, right, copied)


class View(NamedTuple):
    """A tree read in some order: ``value(node)`` increases along the order,
    and ``reversed`` swaps which child holds the smaller values."""

    root: Optional[Node]
    reversed: bool = False
    value: Callable[[Node], float] = lambda node: node.key

    def low(self, node: Node) -> Optional[Node]:
        return node.right if self.reversed else node.left

    def high(self, node: Node) -> Optional[Node]:
        return node.left if self.reversed else node.right

    def with_root(self, root: Optional[Node]) -> "View":
        return View(root, self.reversed, self.value)


def _select(view: View, k: int, stats: Optional[Counter]) -> Node:
    node = view.root
    while True:
        below = size(view.low(node))
        if stats is not None:
            stats["comparisons"] += 1
        if k <= below:
            node = view.low(node)
        elif k == below + 1:
            return node
        else:
            k -= below + 1
            node = view.high(node)


def rank_merge(red: View, blue: View, k: int, stats: Optional[Counter] = None) -> Node:
    """Element of rank ``k`` (1-based) in the union of two ordered trees.

    Each round compares the two roots; with ``r`` the larger root and ``b``
    the smaller one, ``l = |B<| + |R<| + 1`` bounds ranks: ``rank(b) <= l <
    rank(r)``. If ``k <= l`` the target lies below ``r``, so ``r`` and its high
    subtree go; otherwise the target lies above ``b``, so ``b`` and its low
    subtree go. One tree loses a level per round.
    """
    total = size(red.root) + size(blue.root)
    if not 1 <= k <= total:
        raise ValueError(f"k={k} out of range 1..{total}")
    while red.root is not None and blue.root is not None:
        r, b = red.root, blue.root
        if stats is not None:
            stats["comparisons"] += 1
            stats["merge_rounds"] += 1
        if red.value(r) < blue.value(b):
            red, blue = blue, red
            r, b = b, r
        ell = size(blue.low(b)) + size(red.low(r)) + 1
        if k <= ell:
            red = red.with_root(red.low(r))
        else:
            k -= size(blue.low(b)) + 1
            blue = blue.with_root(blue.high(b))
    rest = red if red.root is not None else blue
    return _select(rest, k, stats)


class Radius1D(NamedTuple):
    radius: float
    item: int
    lo: float
    hi: float


class SizeTree:
    """Static balanced search tree over 1D coordinates (items are sorted positions)."""

    def __init__(self, coords: Sequence[float]):
        self.keys: List[float] = sorted(float(x) for x in coords)
        self.root = build_tree(self.keys)
        self.n = len(self.keys)

    @property
    def height(self) -> int:
        return height(self.root)

    def split_at(self, q: float) -> SplitView:
        return split_at(self.root, q)

    def find_radius(self, q: float, k: int, stats: Optional[Counter] = None) -> Radius1D:
        """k-th smallest ``|x - q|`` together with the position of that point."""
        if not 1 <= k <= self.n:
            raise ValueError(f"k={k} out of range 1..{self.n}")
        view = self.split_at(q)
        if stats is not None:
            stats["copied_nodes"] += view.copied
        near_left = View(view.left, True, lambda node: q - node.key)
        near_right = View(view.right, False, lambda node: node.key - q)
        node = rank_merge(near_left, near_right, k, stats)
        r = abs(node.key - q)
        return Radius1D(r, node.item, q - r, q + r)

    def interval_positions(self, q: float, r: float) -> Tuple[int, int]:
        """Half-open range of sorted positions with ``|x - q| <= r``.

        Uses the same comparison as the oracle rather than ``q - r`` and
        ``q + r``, which may round.
        """
        keys = self.keys
        lo_idx = bisect_left(keys, q)
        # left part: distances q - x decrease with position
        a, b = 0, lo_idx
        while a < b:
            mid = (a + b) // 2
            if q - keys[mid] <= r:
                b = mid
            else:
                a = mid + 1
        start = a
        a, b = lo_idx, self.n
        while a < b:
            mid = (a + b) // 2
            if keys[mid] - q <= r:
                a = mid + 1
            else:
                b = mid
        return start, a


def find_radius_1d(tree: SizeTree, q: float, k: int, stats: Optional[Counter] = None) -> Radius1D:
    return tree.find_radius(q, k, stats)
