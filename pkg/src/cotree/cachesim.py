"""Fully-associative LRU cache simulator over a flat element address space.

Elements are addressed by index; block ``i // B`` holds indices
``[i*B, (i+1)*B)``, i.e. arrays are block-aligned at offset 0.  The
simulator counts block transfers: an access to a non-resident block costs
one transfer and evicts the least-recently-used block when the cache is
full.  LRU stands in for an omniscient eviction policy, which it tracks to
within a constant factor; the tall-cache assumption (capacity at least on
the order of the block size squared) is not enforced.

Besides the simulator itself, this module has trace replays for the three
reference workloads (sequential scan, binary search, static-tree search)
and exact worst-case analyses used to pick adversarial inputs.
"""

from collections import OrderedDict

from .layout import EMPTY, StaticTree


class CacheSim:
    """LRU cache with ``capacity_blocks`` resident blocks of
    ``block_size`` elements each (block size must be a power of two).

    One instance is single-threaded; run independent instances for
    parallel workloads.
    """

    def __init__(self, block_size: int, capacity_blocks: int):
        if block_size < 1 or block_size & (block_size - 1):
            raise ValueError(f"block size must be a positive power of two, "
                             f"got {block_size}")
        if capacity_blocks < 1:
            raise ValueError(f"capacity must be >= 1 block, got {capacity_blocks}")
        self.block_size = block_size
        self.capacity_blocks = capacity_blocks
        self.transfer_count = 0
        self._resident = OrderedDict()  # block id -> None, LRU first

    def reset(self):
        self.transfer_count = 0
        self._resident.clear()

    @property
    def resident_blocks(self) -> list:
        """Resident block ids, least recently used first."""
        return list(self._resident)

    def access(self, element_index: int) -> bool:
        """Touch one element; returns True on a hit."""
        if element_index < 0:
            raise ValueError(f"element index must be >= 0, got {element_index}")
        blk = element_index // self.block_size
        resident = self._resident
        if blk in resident:
            resident.move_to_end(blk)
            return True
        self.transfer_count += 1
        if len(resident) >= self.capacity_blocks:
            resident.popitem(last=False)
        resident[blk] = None
        return False


def count_scan(sim: CacheSim, n: int, offset: int = 0) -> int:
    """Transfers for reading ``n`` consecutive elements from a cold cache.

    At ``offset`` 0 this is exactly ``ceil(n / B)``; a misaligned base can
    add one straddle block.
    """
    if n < 1:
        raise ValueError(f"need at least one element, got {n}")
    sim.reset()
    for i in range(offset, offset + n):
        sim.access(i)
    return sim.transfer_count


def binary_search_probes(n: int, rank: int):
    """Indices probed by textbook binary search for the element of the
    given rank in a sorted array of ``n`` elements."""
    if not 0 <= rank < n:
        raise ValueError(f"rank {rank} out of range for {n} elements")
    lo, hi = 0, n - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        yield mid
        if rank == mid:
            return
        if rank < mid:
            hi = mid - 1
        else:
            lo = mid + 1


def count_binary_search(sim: CacheSim, n: int, rank: int) -> int:
    """Transfers for one cold binary search to the given rank."""
    sim.reset()
    for i in binary_search_probes(n, rank):
        sim.access(i)
    return sim.transfer_count


def count_tree_search(sim: CacheSim, tree: StaticTree, key: int) -> int:
    """Transfers for one cold search in a static tree whose array is
    mapped at element offset 0."""
    sim.reset()
    for p in tree.search_path(key):
        sim.access(p)
    return sim.transfer_count


def mean_tree_search(sim: CacheSim, tree: StaticTree, keys) -> float:
    """Mean transfers over independent cold searches."""
    total = 0
    count = 0
    for key in keys:
        total += count_tree_search(sim, tree, key)
        count += 1
    if not count:
        raise ValueError("no keys given")
    return total / count


def worst_binary_search(n: int, block: int) -> tuple:
    """``(transfers, witness_rank)`` maximising distinct blocks touched by
    binary search over all ranks.

    Exact whenever the cache holds the whole probe path (no re-loads), in
    which case a simulated search for the witness reproduces the count.
    Walks the interval tree of the search; any interval inside one block
    costs at most one further transfer, which keeps the walk near-linear in
    ``n / block``.
    """
    if n < 1:
        raise ValueError(f"need at least one element, got {n}")
    if block < 1:
        raise ValueError(f"block must be >= 1, got {block}")
    best = -1
    best_rank = 0
    # (lo, hi, transfers before probing this interval)
    stack = [(0, n - 1, 0)]
    while stack:
        lo, hi, cost = stack.pop()
        if lo > hi:
            continue
        # only the blocks of the probes adjacent to the interval can be
        # resident and still overlap it
        left_blk = (lo - 1) // block if lo > 0 else -1
        right_blk = (hi + 1) // block if hi < n - 1 else -1
        if lo // block == hi // block:
            blk = lo // block
            total = cost + (blk != left_blk and blk != right_blk)
            if total > best:
                best = total
                best_rank = (lo + hi) // 2
            continue
        mid = (lo + hi) // 2
        blk = mid // block
        total = cost + (blk != left_blk and blk != right_blk)
        if total > best:
            best = total
            best_rank = mid
        stack.append((lo, mid - 1, total))
        stack.append((mid + 1, hi, total))
    return best, best_rank


def worst_tree_search(tree: StaticTree, block: int) -> tuple:
    """``(transfers, witness_key)`` maximising distinct blocks on any
    root-to-node search path of a static tree (no-eviction worst case)."""
    if block < 1:
        raise ValueError(f"block must be >= 1, got {block}")
    keys = tree.keys
    pos = tree.position_list()
    limit = 1 << tree.height
    best = -1
    best_key = None
    on_path = {}  # block id -> multiplicity along the current path
    distinct = 0
    stack = [(1, False)]
    while stack:
        b, leaving = stack.pop()
        p = pos[b]
        if keys[p] == EMPTY:
            continue
        blk = p // block
        if leaving:
            left = on_path[blk] - 1
            if left:
                on_path[blk] = left
            else:
                del on_path[blk]
                distinct -= 1
            continue
        seen = on_path.get(blk, 0)
        on_path[blk] = seen + 1
        if seen == 0:
            distinct += 1
            if distinct > best:
                best = distinct
                best_key = keys[p]
        stack.append((b, True))
        c = 2 * b
        if c < limit:
            stack.append((c, False))
            stack.append((c + 1, False))
    return best, best_key
