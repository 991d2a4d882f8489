"""Pure-Python kernels mapping breadth-first node indices to van Emde Boas
array positions.

A complete binary tree of height ``h`` (1-based BFS indices 1..2**h-1, root 1,
children ``2b`` and ``2b+1``) is stored in an array of length ``2**h - 1``.
The vEB order is recursive: split the tree below its top ``h - bottom``
levels, where ``bottom`` is the largest power of two strictly less than
``h``; lay out the top tree first, then each bottom subtree left to right,
each recursively in the same order.

Three conversion routines are provided with identical results:

* ``pos_recursive`` -- direct recursion, the reference the others are
  checked against.
* ``pos_table``     -- iterative, reading a precomputed split table
  (O(log h) entries, built once per height).
* ``pos_constmem``  -- iterative with the splits recomputed on the fly;
  constant auxiliary state and at most ``2*floor(log2 h) + 2`` iterations,
  so the loop count is bounded by the word size, never by an
  input-dependent recursion depth.

The compiled twin ``_veb_c`` exposes the same names; selection happens in
``cotree.backends``.
"""

MAX_HEIGHT = 63  # positions must fit a 64-bit word

BACKEND_NAME = "py"


def _check(bfs: int, height: int) -> None:
    if not 1 <= height <= MAX_HEIGHT:
        raise ValueError(f"height must be in 1..{MAX_HEIGHT}, got {height}")
    if not 1 <= bfs < (1 << height):
        raise ValueError(f"bfs index {bfs} out of range for height {height}")


def pos_recursive(bfs: int, height: int) -> int:
    """Physical position of BFS index ``bfs`` in a height-``height`` tree."""
    _check(bfs, height)
    return _rec(bfs, height)


def _rec(b, h):
    if h == 1:
        return 0
    bottom = 1 << ((h - 1).bit_length() - 1)  # largest power of two < h
    top = h - bottom
    d = b.bit_length()
    if d <= top:
        return _rec(b, top)
    shift = d - top - 1
    j = (b >> shift) - (1 << top)  # which bottom subtree, from its depth-(top+1) ancestor
    local = (1 << shift) | (b & ((1 << shift) - 1))
    return ((1 << top) - 1) + j * ((1 << bottom) - 1) + _rec(local, bottom)


def make_table(height: int) -> dict:
    """Split table for ``pos_table``: height -> (top, bottom) for every
    subtree height reachable from ``height`` (O(log height) entries)."""
    if not 1 <= height <= MAX_HEIGHT:
        raise ValueError(f"height must be in 1..{MAX_HEIGHT}, got {height}")
    table = {}
    pending = [height]
    while pending:
        h = pending.pop()
        if h <= 1 or h in table:
            continue
        bottom = 1 << ((h - 1).bit_length() - 1)
        table[h] = (h - bottom, bottom)
        pending.append(h - bottom)
        pending.append(bottom)
    return table


def pos_table(bfs: int, height: int, table: dict) -> int:
    """Iterative conversion consulting a table from ``make_table``."""
    _check(bfs, height)
    d = bfs.bit_length()
    pos = 0
    h = height
    while h > 1:
        try:
            top, bottom = table[h]
        except KeyError:
            raise ValueError(f"split table does not cover height {h}") from None
        if d <= top:
            h = top
            continue
        shift = d - top - 1
        pos += ((1 << top) - 1) + ((bfs >> shift) - (1 << top)) * ((1 << bottom) - 1)
        bfs = (1 << shift) | (bfs & ((1 << shift) - 1))
        d = shift + 1
        h = bottom
    return pos


def pos_constmem(bfs: int, height: int) -> int:
    """Iterative conversion with no table and no recursion.

    Auxiliary state is four integers.  Each iteration either enters a top
    tree (height at least halves) or a bottom tree (height becomes a power
    of two, then halves), so the loop runs at most ``2*floor(log2 h) + 2``
    times.
    """
    _check(bfs, height)
    d = bfs.bit_length()
    pos = 0
    h = height
    while h > 1:
        bottom = 1 << ((h - 1).bit_length() - 1)
        top = h - bottom
        if d <= top:
            h = top
            continue
        shift = d - top - 1
        pos += ((1 << top) - 1) + ((bfs >> shift) - (1 << top)) * ((1 << bottom) - 1)
        bfs = (1 << shift) | (bfs & ((1 << shift) - 1))
        d = shift + 1
        h = bottom
    return pos


VARIANTS = ("recursive", "table", "constmem")


def positions(height: int) -> list:
    """Positions for all BFS indices of a height-``height`` tree.

    Returns a list ``p`` of length ``2**height`` with ``p[b]`` the physical
    position of index ``b`` (entry 0 is unused and set to -1).
    """
    if not 1 <= height <= MAX_HEIGHT:
        raise ValueError(f"height must be in 1..{MAX_HEIGHT}, got {height}")
    out = [-1] * (1 << height)
    table = make_table(height)
    for b in range(1, 1 << height):
        out[b] = pos_table(b, height, table)
    return out


def checksum_batch(indices, height: int, variant: str, table=None) -> int:
    """Convert every index in ``indices`` with the chosen variant and return
    the 64-bit sum of the resulting positions (foils dead-code elimination
    in benchmarks and lets variants be cross-checked cheaply)."""
    if variant == "recursive":
        fn = pos_recursive
    elif variant == "constmem":
        fn = pos_constmem
    elif variant == "table":
        if table is None:
            table = make_table(height)
        total = 0
        for b in indices:
            total += pos_table(b, height, table)
        return total & 0xFFFFFFFFFFFFFFFF
    else:
        raise ValueError(f"unknown conversion variant {variant!r}")
    total = 0
    for b in indices:
        total += fn(b, height)
    return total & 0xFFFFFFFFFFFFFFFF


def count_disagreements(height: int, samples=None) -> int:
    """Number of BFS indices where the three variants disagree.

    ``samples`` is an iterable of indices; ``None`` sweeps exhaustively.
    """
    table = make_table(height)
    it = range(1, 1 << height) if samples is None else samples
    bad = 0
    for b in it:
        p = pos_recursive(b, height)
        if pos_table(b, height, table) != p or pos_constmem(b, height) != p:
            bad += 1
    return bad
