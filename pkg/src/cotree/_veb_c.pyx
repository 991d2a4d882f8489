# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mapping breadth-first node indices to van Emde Boas
array positions.  Same contract as ``cotree._veb_py``; see that module for
the algorithm notes."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

ctypedef unsigned long long u64

MAX_HEIGHT = 63

BACKEND_NAME = "c"

VARIANTS = ("recursive", "table", "constmem")


cdef inline int _bit_length(u64 x) nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


cdef int _check_height(object height) except -1:
    # validate before any C coercion so huge/typed-wrong values surface as
    # ValueError, never OverflowError
    if not isinstance(height, int) or height < 1 or height > 63:
        raise ValueError(f"height must be in 1..63, got {height}")
    return 0


cdef int _check(object bfs, object height) except -1:
    _check_height(height)
    if not isinstance(bfs, int) or bfs < 1 or bfs >= (<object>1) << height:
        raise ValueError(f"bfs index {bfs} out of range for height {height}")
    return 0


cdef u64 _rec(u64 b, int h) nogil:
    cdef int bottom, top, d, shift
    cdef u64 j, local
    if h == 1:
        return 0
    bottom = 1 << (_bit_length(<u64>(h - 1)) - 1)
    top = h - bottom
    d = _bit_length(b)
    if d <= top:
        return _rec(b, top)
    shift = d - top - 1
    j = (b >> shift) - ((<u64>1) << top)
    local = ((<u64>1) << shift) | (b & (((<u64>1) << shift) - 1))
    return (((<u64>1) << top) - 1) + j * ((((<u64>1) << bottom) - 1)) + _rec(local, bottom)


def pos_recursive(bfs, height):
    """Physical position of BFS index ``bfs`` in a height-``height`` tree."""
    _check(bfs, height)
    return _rec(bfs, height)


cdef class SplitTable:
    """Per-height (top, bottom) splits, indexed by subtree height."""
    cdef int height
    cdef int tops[64]
    cdef int bottoms[64]

    def __cinit__(self, height):
        cdef int h, bottom
        _check_height(height)
        self.height = height
        for h in range(64):
            self.tops[h] = 0
            self.bottoms[h] = 0
        # fill every height reachable from the root split
        cdef int stack[64]
        cdef int n = 1
        stack[0] = height
        while n:
            n -= 1
            h = stack[n]
            if h <= 1 or self.tops[h]:
                continue
            bottom = 1 << (_bit_length(<u64>(h - 1)) - 1)
            self.tops[h] = h - bottom
            self.bottoms[h] = bottom
            stack[n] = h - bottom
            n += 1
            stack[n] = bottom
            n += 1

    def __reduce__(self):
        return (SplitTable, (self.height,))


def make_table(height):
    """Split table for ``pos_table`` (compiled form)."""
    return SplitTable(height)


cdef u64 _pos_table(u64 b, int h, SplitTable table) nogil:
    cdef int d = _bit_length(b)
    cdef u64 pos = 0
    cdef int top, bottom, shift
    while h > 1:
        top = table.tops[h]
        bottom = table.bottoms[h]
        if d <= top:
            h = top
            continue
        shift = d - top - 1
        pos += (((<u64>1) << top) - 1) + ((b >> shift) - ((<u64>1) << top)) * (((<u64>1) << bottom) - 1)
        b = ((<u64>1) << shift) | (b & (((<u64>1) << shift) - 1))
        d = shift + 1
        h = bottom
    return pos


def pos_table(bfs, height, table):
    """Iterative conversion consulting a table from ``make_table``."""
    _check(bfs, height)
    cdef SplitTable t = <SplitTable?>table
    if height > 1 and t.tops[<int>height] == 0:
        raise ValueError(f"split table does not cover height {height}")
    return _pos_table(bfs, height, t)


cdef u64 _pos_constmem(u64 b, int h) nogil:
    cdef int d = _bit_length(b)
    cdef u64 pos = 0
    cdef int top, bottom, shift
    while h > 1:
        bottom = 1 << (_bit_length(<u64>(h - 1)) - 1)
        top = h - bottom
        if d <= top:
            h = top
            continue
        shift = d - top - 1
        pos += (((<u64>1) << top) - 1) + ((b >> shift) - ((<u64>1) << top)) * (((<u64>1) << bottom) - 1)
        b = ((<u64>1) << shift) | (b & (((<u64>1) << shift) - 1))
        d = shift + 1
        h = bottom
    return pos


def pos_constmem(bfs, height):
    """Table-free iterative conversion; constant auxiliary state."""
    _check(bfs, height)
    return _pos_constmem(bfs, height)


def positions(height):
    """List ``p`` with ``p[b]`` the position of index ``b`` (``p[0]`` = -1)."""
    _check_height(height)
    cdef SplitTable t = SplitTable(height)
    cdef u64 n = ((<u64>1) << height)
    cdef u64 b
    out = [-1] * n
    for b in range(1, n):
        out[b] = _pos_table(b, height, t)
    return out


def checksum_batch(indices, height, variant, table=None):
    """64-bit sum of converted positions for every index in ``indices``."""
    _check_height(height)
    cdef int h = height
    cdef Py_ssize_t n = len(indices)
    cdef Py_ssize_t i
    cdef u64 total = 0
    cdef u64 lim = ((<u64>1) << h)
    cdef long long sb
    cdef u64* buf = <u64*>PyMem_Malloc(n * sizeof(u64) if n else sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            sb = indices[i]
            if sb < 1 or (<u64>sb) >= lim:
                raise ValueError(f"bfs index {indices[i]} out of range for height {h}")
            buf[i] = <u64>sb
        if variant == "recursive":
            with nogil:
                for i in range(n):
                    total += _rec(buf[i], h)
        elif variant == "constmem":
            with nogil:
                for i in range(n):
                    total += _pos_constmem(buf[i], h)
        elif variant == "table":
            t = table if table is not None else SplitTable(h)
            total = _checksum_table(buf, n, h, <SplitTable?>t)
        else:
            raise ValueError(f"unknown conversion variant {variant!r}")
    finally:
        PyMem_Free(buf)
    return total


cdef u64 _checksum_table(u64* buf, Py_ssize_t n, int h, SplitTable t):
    cdef u64 total = 0
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            total += _pos_table(buf[i], h, t)
    return total


def count_disagreements(height, samples=None):
    """Mismatch count between the three variants; ``samples=None`` sweeps
    all indices of the height exhaustively."""
    _check_height(height)
    cdef int h = height
    cdef SplitTable t = SplitTable(h)
    cdef u64 bad = 0
    cdef u64 b, p
    cdef u64 n
    if samples is None:
        n = ((<u64>1) << h)
        with nogil:
            for b in range(1, n):
                p = _rec(b, h)
                if _pos_table(b, h, t) != p or _pos_constmem(b, h) != p:
                    bad += 1
        return bad
    for bb in samples:
        _check(bb, h)
        b = bb
        p = _rec(b, h)
        if _pos_table(b, h, t) != p or _pos_constmem(b, h) != p:
            bad += 1
    return bad
