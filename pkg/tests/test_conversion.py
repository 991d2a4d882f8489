"""BFS -> vEB conversion kernels against the enumerator oracle and each
other, on every available backend."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotree import backends

from oracles import enumerate_layout, position_map

BACKENDS = backends.names()


@pytest.fixture(params=BACKENDS)
def kernel(request):
    return backends.get(request.param)


# frozen from the enumerator (H=3/H=4 also spelled out by hand)
H3_ORDER = [1, 2, 4, 5, 3, 6, 7]
H4_ORDER = [1, 2, 3, 4, 8, 9, 5, 10, 11, 6, 12, 13, 7, 14, 15]


def test_enumerator_matches_frozen_orders():
    assert enumerate_layout(3) == H3_ORDER
    assert enumerate_layout(4) == H4_ORDER


def test_height2_is_bfs_order(kernel):
    assert [kernel.pos_recursive(b, 2) for b in (1, 2, 3)] == [0, 1, 2]


def test_height3_positions(kernel):
    assert [kernel.pos_recursive(b, 3) for b in range(1, 8)] == [0, 1, 4, 2, 3, 5, 6]
    assert kernel.pos_recursive(4, 3) == 2


def test_height4_positions(kernel):
    assert kernel.pos_recursive(5, 4) == 6
    assert kernel.pos_recursive(14, 4) == 13
    got = sorted(range(1, 16), key=lambda b: kernel.pos_recursive(b, 4))
    assert got == H4_ORDER


def test_table_variant_matches(kernel):
    table = kernel.make_table(4)
    assert kernel.pos_table(5, 4, table) == 6
    for h in range(1, 16):
        t = kernel.make_table(h)
        assert kernel.pos_table(1, h, t) == 0  # root is always first


def test_constmem_variant_matches(kernel):
    assert kernel.pos_constmem(14, 4) == 13
    assert kernel.pos_constmem(3, 3) == 4
    for h in range(1, 25):
        b = 1 << (h - 1)  # leftmost leaf
        assert kernel.pos_constmem(b, h) == kernel.pos_recursive(b, h)


def test_matches_enumerator_exhaustively(kernel):
    for h in range(1, 13):
        want = position_map(h)
        table = kernel.make_table(h)
        for b in range(1, 2 ** h):
            p = want[b]
            assert kernel.pos_recursive(b, h) == p
            assert kernel.pos_table(b, h, table) == p
            assert kernel.pos_constmem(b, h) == p


def test_bijection(kernel):
    for h in range(1, 15):
        seen = {kernel.pos_recursive(b, h) for b in range(1, 2 ** h)}
        assert seen == set(range(2 ** h - 1))


def test_bijection_to_height_20():
    # positions form a permutation of 0..2^h-2 for every h up to 20
    kernel = backends.get()
    for h in range(15, 21):
        ps = kernel.positions(h)[1:]
        assert len(ps) == 2 ** h - 1
        assert len(set(ps)) == len(ps)
        assert min(ps) == 0 and max(ps) == 2 ** h - 2


def test_positions_batch(kernel):
    for h in (1, 5, 9):
        ps = kernel.positions(h)
        assert ps[0] == -1
        assert ps[1:] == [kernel.pos_recursive(b, h) for b in range(1, 2 ** h)]


def test_bottom_subtrees_contiguous(kernel):
    # at every recursion level, each bottom subtree fills a contiguous
    # position range of its own size
    def check(height, nodes):
        if height == 1:
            return
        bottom = 1 << ((height - 1).bit_length() - 1)
        top = height - bottom
        roots = nodes[(1 << top) - 1: (1 << (top + 1)) - 1]
        size = 2 ** bottom - 1
        for root in roots:
            sub = []
            level = [root]
            for _ in range(bottom):
                sub.extend(level)
                level = [c for b in level for c in (2 * b, 2 * b + 1)]
            spots = sorted(kernel.pos_recursive(b, H) for b in sub)
            assert spots == list(range(spots[0], spots[0] + size))
        # recurse into the top tree and the first bottom subtree
        if top > 1:
            check(top, nodes[: (1 << top) - 1])
        first = []
        level = [roots[0]]
        for _ in range(bottom):
            first.extend(level)
            level = [c for b in level for c in (2 * b, 2 * b + 1)]
        check(bottom, first)

    for H in range(2, 11):
        check(H, list(range(1, 2 ** H)))


def test_domain_errors(kernel):
    for bfs, h in ((0, 3), (8, 3), (-1, 5), (1, 0), (1, 64)):
        with pytest.raises(ValueError):
            kernel.pos_recursive(bfs, h)
        with pytest.raises(ValueError):
            kernel.pos_constmem(bfs, h)
    with pytest.raises(ValueError):
        kernel.pos_table(1, 30, kernel.make_table(5))


def test_checksum_batch_variants_agree(kernel):
    idx = list(range(1, 2 ** 11))
    sums = {v: kernel.checksum_batch(idx, 11, v) for v in kernel.VARIANTS}
    assert len(set(sums.values())) == 1
    with pytest.raises(ValueError):
        kernel.checksum_batch(idx, 11, "nope")


def test_count_disagreements_zero(kernel):
    for h in range(1, 17):
        assert kernel.count_disagreements(h) == 0


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree():
    c, py = backends.get("c"), backends.get("py")
    rng = random.Random(17)
    for h in (7, 20, 33, 50, 63):
        for _ in range(500):
            b = rng.randrange(1, 1 << h)
            assert c.pos_constmem(b, h) == py.pos_constmem(b, h)
            assert c.pos_recursive(b, h) == py.pos_recursive(b, h)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=63), st.data())
def test_three_way_agreement_random(height, data):
    b = data.draw(st.integers(min_value=1, max_value=2 ** height - 1))
    for name in BACKENDS:
        k = backends.get(name)
        p = k.pos_recursive(b, height)
        assert k.pos_constmem(b, height) == p
        assert k.pos_table(b, height, k.make_table(height)) == p
        assert 0 <= p <= 2 ** height - 2
