from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chromknn.bst import SizeTree, View, build_tree, find_radius_1d, height, inorder, rank_merge, split_at
from chromknn.geometry import L2
from chromknn.oracle import oracle_kth_radius


def keys(node):
    return [n.key for n in inorder(node)]


def check_sizes(node):
    if node is None:
        return 0
    s = 1 + check_sizes(node.left) + check_sizes(node.right)
    assert node.size == s
    return s


def test_build_examples():
    root = build_tree([1, 2, 3])
    assert root.key == 2 and root.size == 3
    assert build_tree([]) is None
    root = build_tree(range(1, 8))
    assert height(root) == 3
    check_sizes(root)
    with pytest.raises(ValueError):
        build_tree([2, 1])


@given(st.integers(0, 300))
def test_build_height_is_minimal(n):
    assert height(build_tree(range(n))) == (n).bit_length()


def test_split_examples():
    tree = build_tree([1, 2, 3, 10])
    view = split_at(tree, 2.5)
    assert keys(view.left) == [1, 2] and keys(view.right) == [3, 10]
    view = split_at(tree, 0)
    assert view.left is None and keys(view.right) == [1, 2, 3, 10]
    view = split_at(tree, 3)
    assert keys(view.left) == [1, 2] and keys(view.right) == [3, 10]


@given(st.lists(st.integers(-50, 50), max_size=80), st.integers(-60, 60))
def test_split_partitions_without_mutation(values, q):
    values = sorted(values)
    tree = build_tree(values)
    before = [(n.key, n.size) for n in inorder(tree)]
    view = split_at(tree, q)
    assert keys(view.left) == [v for v in values if v < q]
    assert keys(view.right) == [v for v in values if v >= q]
    check_sizes(view.left)
    check_sizes(view.right)
    assert view.copied <= height(tree)
    assert [(n.key, n.size) for n in inorder(tree)] == before


def _merge(r, b, k, stats=None):
    return rank_merge(View(build_tree(sorted(r))), View(build_tree(sorted(b))), k, stats).key


def test_rank_merge_examples():
    assert _merge([1, 3, 5], [2, 4, 6], 4) == 4
    assert _merge([1], [], 1) == 1
    assert _merge(range(1, 9), range(9, 17), 12) == 12
    with pytest.raises(ValueError):
        _merge([1], [2], 3)


def test_rank_merge_keeps_smaller_subtree_of_larger_root():
    # target lies in the low subtree of the larger root
    assert _merge([7, 10], [5, 6], 3) == 7


@given(st.lists(st.integers(0, 1000), max_size=60, unique=True), st.data())
def test_rank_merge_matches_sorted_union(values, data):
    split = data.draw(st.integers(0, len(values)))
    red, blue = values[:split], values[split:]
    if not values:
        return
    union = sorted(values)
    for k in range(1, len(union) + 1):
        stats = Counter()
        assert _merge(red, blue, k, stats) == union[k - 1]
        hr, hb = height(build_tree(sorted(red))), height(build_tree(sorted(blue)))
        assert stats["comparisons"] <= 2 * (hr + hb) + 4


def test_reversed_view_orders_by_distance():
    left = build_tree([1, 4, 6])
    view = View(left, True, lambda n: 7.5 - n.key)
    right = View(build_tree([8, 20]), False, lambda n: n.key - 7.5)
    order = [rank_merge(view, right, k).key for k in range(1, 6)]
    assert order == [8, 6, 4, 1, 20]


def test_find_radius_examples():
    tree = SizeTree([1, 2, 3, 10])
    assert tree.find_radius(2.5, 2).radius == 0.5
    assert find_radius_1d(tree, 2.5, 4).radius == 7.5
    assert tree.find_radius(1, 1).radius == 0
    with pytest.raises(ValueError):
        tree.find_radius(1, 5)


def test_find_radius_matches_oracle(rng):
    for _ in range(40):
        n = int(rng.integers(1, 2001))
        xs = rng.integers(0, 1 << 20, size=n) / 1024.0
        tree = SizeTree(xs)
        for _ in range(10):
            q = float(rng.integers(-1000, (1 << 20) + 1000)) / 1024.0
            k = int(rng.integers(1, n + 1))
            stats = Counter()
            got = tree.find_radius(q, k, stats).radius
            assert got == oracle_kth_radius(xs, (q,), k, L2)
            assert stats["copied_nodes"] <= tree.height


def test_interval_positions_match_scan(rng):
    xs = np.sort(rng.integers(0, 200, size=300) / 4.0)
    tree = SizeTree(xs)
    for _ in range(200):
        q = float(rng.integers(-20, 220)) / 4.0
        r = float(rng.integers(0, 100)) / 4.0
        lo, hi = tree.interval_positions(q, r)
        inside = np.flatnonzero(np.abs(xs - q) <= r)
        assert hi - lo == len(inside)
        if len(inside):
            assert (lo, hi - 1) == (inside[0], inside[-1])
