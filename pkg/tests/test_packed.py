"""Dynamic packed tree: insertion, growth, rebalancing, density ladder."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotree import EMPTY, Layout, PackedTree, backends, new_tree
from cotree.packed import density_thresholds


def logical_slots(tree):
    """Slot contents in BFS-index order, regardless of physical layout."""
    if tree.layout is Layout.BFS:
        return list(tree.slots)
    pos = backends.get().positions(tree.height)
    return [tree.slots[pos[b]] for b in range(1, tree.capacity + 1)]


def test_new_tree():
    for layout in ("bfs", "veb"):
        t = new_tree(Fraction(1, 2), layout)
        assert t.height == 1 and t.capacity == 1 and t.count == 0
        assert t.slots == [EMPTY]
    with pytest.raises(ValueError):
        new_tree(0.3, "bfs")
    with pytest.raises(ValueError):
        new_tree(1, "bfs")
    new_tree(0.5, "bfs")
    new_tree(Fraction(99, 100), "veb")


def test_density_thresholds():
    taus = density_thresholds(Fraction(1, 2), 5)
    assert taus[1] == Fraction(1, 2)
    assert taus[5] == 1  # exactly, no float drift
    assert all(taus[d] < taus[d + 1] for d in range(1, 5))
    taus = density_thresholds(Fraction(7, 10), 9)
    assert taus[1] == Fraction(7, 10) and taus[9] == 1
    assert density_thresholds(Fraction(1, 2), 1)[1] == Fraction(1, 2)


def test_insert_one_two_three_growth_trace():
    t = new_tree(Fraction(1, 2), "bfs", validate=2)
    assert t.insert(1)
    assert t.height == 1 and t.count == 1
    assert t.insert(2)
    assert t.height == 2  # density hit before the insert forced a grow
    assert t.insert(3)
    assert t.height == 3
    assert t.stats.grows == 2
    assert t.inorder() == [1, 2, 3]


def test_duplicate_insert_rejected():
    t = new_tree(layout="veb")
    assert t.insert(5)
    assert not t.insert(5)
    assert t.count == 1
    assert t.contains(5) and not t.contains(6)


def test_sentinel_rejected():
    t = new_tree(layout="bfs")
    with pytest.raises(ValueError):
        t.insert(EMPTY)
    with pytest.raises(ValueError):
        t.contains(EMPTY)


def test_contains_on_empty():
    t = new_tree(layout="veb")
    assert not t.contains(0) and not t.contains(-7)
    assert t.inorder() == []


def test_grow_preserves_contents():
    t = new_tree(Fraction(1, 2), "bfs")
    for k in (1, 2, 3):
        t.insert(k)
    h = t.height
    t.grow()
    assert t.height == h + 1
    assert t.inorder() == [1, 2, 3]
    empty = new_tree(layout="bfs")
    empty.grow()
    assert empty.height == 2 and empty.count == 0


def test_grow_makes_root_admissible():
    # after growing from a full-enough height-H tree, the root is always
    # under tau1 again: n <= 2**(H-1)-1 < tau1 * (2**H - 1) for tau1 >= 1/2
    for h in range(1, 12):
        n = 2 ** h - 1      # most the old tree could hold
        assert 2 * n < (2 ** (h + 1) - 1)  # tau1 = 1/2 worst case


def test_random_inserts_sorted_inorder():
    rng = random.Random(1)
    keys = rng.sample(range(10 ** 8), 10 ** 4)
    t = new_tree(layout="veb")
    for k in keys:
        assert t.insert(k)
    assert t.count == 10 ** 4
    assert t.inorder() == sorted(keys)


def test_validate_runs_clean_small():
    # full structural re-scan after every public op on a small mixed run
    rng = random.Random(5)
    t = PackedTree(Fraction(1, 2), "veb", validate=2)
    seen = set()
    for _ in range(300):
        k = rng.randrange(500)
        assert t.insert(k) == (k not in seen)
        seen.add(k)
        assert t.contains(k)
    assert t.inorder() == sorted(seen)


def test_rebalance_bound_checked_during_run():
    # validate=1 asserts the post-rebalance balance bound and density
    # ceiling at every rebalance
    for tau in (Fraction(1, 2), Fraction(7, 10)):
        rng = random.Random(9)
        t = PackedTree(tau, "bfs", validate=1)
        for _ in range(10 ** 4):
            t.insert(rng.randrange(10 ** 6))
        assert t.stats.rebalance_count > 0


def test_rebalance_idempotent_without_extra():
    rng = random.Random(2)
    t = new_tree(layout="bfs")
    for k in rng.sample(range(1000), 200):
        t.insert(k)
    t.rebalance(1)
    first = list(t.slots)
    t.rebalance(1)
    assert t.slots == first


def test_rebalance_with_extra_compact_layers():
    # {1,2,3} + extra 4 in a height-3 subtree: 4 keys fit in 3 layers
    t = new_tree(Fraction(1, 2), "bfs")
    t.height = 3
    t._rebuild()
    for b, k in ((1, 2), (2, 1), (3, 3)):
        t.slots[b - 1] = k
    t.count = 3
    t.rebalance(1, extra=4)
    assert t.count == 4
    assert t.inorder() == [1, 2, 3, 4]
    occupied_depths = {b.bit_length() for b in range(1, 8)
                       if t.slots[b - 1] != EMPTY}
    assert occupied_depths == {1, 2, 3}
    assert math.ceil(math.log2(4 + 1)) == 3


def test_layout_independence():
    rng = random.Random(31)
    keys = rng.sample(range(10 ** 6), 3000)
    lookups = [rng.randrange(10 ** 6) for _ in range(500)]
    a = PackedTree(Fraction(1, 2), "bfs")
    b = PackedTree(Fraction(1, 2), "veb")
    for k in keys:
        assert a.insert(k) == b.insert(k)
    assert logical_slots(a) == logical_slots(b)
    assert a.stats == b.stats
    for k in lookups:
        assert a.contains(k) == b.contains(k)


def test_conversion_variants_equivalent():
    keys = random.Random(4).sample(range(10 ** 5), 800)
    trees = [PackedTree(Fraction(1, 2), "veb", conversion=v)
             for v in ("recursive", "table", "constmem")]
    for k in keys:
        results = {t.insert(k) for t in trees}
        assert len(results) == 1
    base = trees[0].inorder()
    assert all(t.inorder() == base for t in trees)
    assert all(t.slots == trees[0].slots for t in trees)


def test_stats_monotone():
    rng = random.Random(12)
    t = new_tree(layout="bfs")
    last = (0, 0, 0)
    for _ in range(2000):
        t.insert(rng.randrange(5000))
        now = (t.stats.rebalance_count, t.stats.elements_moved, t.stats.grows)
        assert all(a >= b for a, b in zip(now, last))
        last = now


def test_height_limit():
    t = new_tree(layout="bfs")
    t.height = 63
    with pytest.raises(ValueError):
        t.grow()


def test_public_rebalance_validation():
    t = new_tree(layout="bfs")
    t.insert(5)
    with pytest.raises(ValueError):
        t.rebalance(9)  # outside the slot array
    with pytest.raises(ValueError):
        t.rebalance(1, extra=7)  # height-1 tree is full
    t.grow()
    with pytest.raises(ValueError):
        t.rebalance(1, extra=5)  # already present
    t.rebalance(1, extra=7)
    assert t.inorder() == [5, 7] and t.count == 2


def test_moved_elements_follow_squared_log_budget():
    # total rebalance moves per insertion stay within a (log2 n)^2 budget:
    # fit the constant at k=10, allow 25% slack at every larger k
    per_k = {}
    for k in range(10, 19):
        n = 2 ** k
        rng = random.Random(77)
        seq = list(range(n))
        rng.shuffle(seq)
        t = new_tree(layout="bfs")
        for x in seq:
            t.insert(x)
        per_k[k] = t.stats.elements_moved / n / (k * k)
    c = per_k[10]
    for k, value in per_k.items():
        assert value <= 1.25 * c, (k, value, c)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-10 ** 6, max_value=10 ** 6),
                min_size=1, max_size=120),
       st.sampled_from(["bfs", "veb"]),
       st.sampled_from([Fraction(1, 2), Fraction(3, 4)]))
def test_matches_set_semantics(keys, layout, tau):
    t = PackedTree(tau, layout, validate=2)
    reference = set()
    for k in keys:
        assert t.insert(k) == (k not in reference)
        reference.add(k)
    assert t.inorder() == sorted(reference)
    assert len(t) == len(reference)
