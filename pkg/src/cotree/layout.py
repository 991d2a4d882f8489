"""Static search trees stored flat in breadth-first or van Emde Boas order.

A tree of height ``H`` lives in an array of ``2**H - 1`` slots.  Logical
structure is always expressed in 1-based BFS indices (root 1, children
``2b`` and ``2b+1``); a layout maps those to physical positions.  BFS maps
index ``b`` to position ``b - 1``; vEB positions come from the conversion
kernels in :mod:`cotree.backends`.
"""

import enum

from . import backends

EMPTY = -(1 << 63)  # reserved marker for unoccupied slots
KEY_MIN = EMPTY + 1
KEY_MAX = (1 << 63) - 1

MAX_HEIGHT = backends.MAX_HEIGHT


class Layout(enum.Enum):
    BFS = "bfs"
    VEB = "veb"


def as_layout(value) -> Layout:
    if isinstance(value, Layout):
        return value
    try:
        return Layout(str(value).lower())
    except ValueError:
        raise ValueError(f"unknown layout {value!r} (expected bfs or veb)") from None


def check_key(key: int) -> None:
    """Reject the absent-slot marker and anything outside 64-bit range."""
    if not isinstance(key, int) or isinstance(key, bool):
        raise TypeError(f"keys must be integers, got {type(key).__name__}")
    if not KEY_MIN <= key <= KEY_MAX:
        raise ValueError(f"key {key} outside the accepted domain "
                         f"[{KEY_MIN}, {KEY_MAX}]")


def depth_of(bfs: int) -> int:
    """Depth of a BFS index, root = depth 1."""
    if bfs < 1:
        raise ValueError(f"bfs index must be >= 1, got {bfs}")
    return bfs.bit_length()


def position_of(bfs: int, height: int, layout, conversion: str = "constmem",
                backend: str = "auto") -> int:
    """Physical position of a BFS index under the given layout."""
    layout = as_layout(layout)
    if layout is Layout.BFS:
        if not 1 <= height <= MAX_HEIGHT:
            raise ValueError(f"height must be in 1..{MAX_HEIGHT}, got {height}")
        if not 1 <= bfs < (1 << height):
            raise ValueError(f"bfs index {bfs} out of range for height {height}")
        return bfs - 1
    return converter(conversion, backend)(bfs, height)


def converter(conversion: str = "constmem", backend: str = "auto"):
    """Resolve a conversion-variant name to a ``(bfs, height) -> pos`` callable."""
    kernel = backends.get(backend)
    if conversion == "constmem":
        return kernel.pos_constmem
    if conversion == "recursive":
        return kernel.pos_recursive
    if conversion == "table":
        tables = {}

        def convert(bfs, height, _k=kernel, _t=tables):
            table = _t.get(height)
            if table is None:
                table = _t[height] = _k.make_table(height)
            return _k.pos_table(bfs, height, table)

        return convert
    raise ValueError(f"unknown conversion variant {conversion!r}")


def children_positions(bfs: int, height: int, layout,
                       convert=None) -> "tuple[int, int] | None":
    """Physical positions of both children, or ``None`` at leaf depth.

    ``convert`` overrides the conversion used for the vEB layout (defaults
    to the constant-memory variant on the active backend).
    """
    layout = as_layout(layout)
    d = depth_of(bfs)
    if not 1 <= d <= height:
        raise ValueError(f"bfs index {bfs} out of range for height {height}")
    if d == height:
        return None
    left = 2 * bfs
    if layout is Layout.BFS:
        return left - 1, left
    if convert is None:
        convert = backends.get().pos_constmem
    return convert(left, height), convert(left + 1, height)


def height_for(count: int) -> int:
    """Smallest height whose complete tree holds ``count`` keys."""
    if count < 1:
        raise ValueError("need at least one key")
    h = count.bit_length()  # 2**h - 1 >= count
    if h > MAX_HEIGHT:
        raise ValueError(f"{count} keys exceed the maximum height {MAX_HEIGHT}")
    return h


def place_balanced(write, keys, root_bfs: int = 1) -> None:
    """Write ``keys`` (sorted) as a balanced BST below ``root_bfs``.

    ``write(bfs, key)`` stores one key.  Even-sized ranges take the upper
    median, so the left subtree is the heavier one; every caller shares this
    rule so rebalanced shapes are reproducible.
    """
    stack = [(root_bfs, 0, len(keys) - 1)]
    while stack:
        b, lo, hi = stack.pop()
        if lo > hi:
            continue
        mid = lo + (hi - lo + 1) // 2
        write(b, keys[mid])
        left = 2 * b
        stack.append((left, lo, mid - 1))
        stack.append((left + 1, mid + 1, hi))


class StaticTree:
    """Immutable balanced search tree over a flat slot array.

    Build with :func:`build_static`.  All reads are safe to share between
    threads.
    """

    __slots__ = ("keys", "height", "layout", "occupied_count", "conversion",
                 "_convert")

    def __init__(self, keys, height, layout, occupied_count, conversion,
                 convert):
        self.keys = keys
        self.height = height
        self.layout = layout
        self.occupied_count = occupied_count
        self.conversion = conversion
        self._convert = convert  # None for the BFS layout

    def __len__(self):
        return self.occupied_count

    def position(self, bfs: int) -> int:
        if not 1 <= bfs <= len(self.keys):
            raise ValueError(f"bfs index {bfs} out of range for height {self.height}")
        if self._convert is None:
            return bfs - 1
        return self._convert(bfs, self.height)

    def search(self, key: int):
        """Descend from the root; returns ``(found, position)`` where the
        position is the matching slot or the slot where descent stopped."""
        check_key(key)
        keys = self.keys
        H = self.height
        convert = self._convert
        b = 1
        depth = 1
        while True:
            p = (b - 1) if convert is None else convert(b, H)
            v = keys[p]
            if v == key:
                return True, p
            if v == EMPTY or depth == H:
                return False, p
            b = 2 * b + (key > v)
            depth += 1

    def __contains__(self, key) -> bool:
        return self.search(key)[0]

    def search_path(self, key: int) -> list:
        """Physical positions probed by :meth:`search`, in probe order."""
        check_key(key)
        keys = self.keys
        H = self.height
        convert = self._convert
        path = []
        b = 1
        depth = 1
        while True:
            p = (b - 1) if convert is None else convert(b, H)
            path.append(p)
            v = keys[p]
            if v == key or v == EMPTY or depth == H:
                return path
            b = 2 * b + (key > v)
            depth += 1

    def inorder(self) -> list:
        """Occupied keys in increasing order."""
        keys = self.keys
        H = self.height
        convert = self._convert
        limit = 1 << H
        out = []
        stack = []
        b = 1
        while stack or b:
            while b:
                if b >= limit:
                    b = 0
                    break
                p = (b - 1) if convert is None else convert(b, H)
                if keys[p] == EMPTY:
                    b = 0
                    break
                stack.append((b, p))
                b = 2 * b
            if not stack:
                break
            b, p = stack.pop()
            out.append(keys[p])
            b = 2 * b + 1
        return out

    def position_list(self) -> list:
        """``pos[b]`` for every BFS index (index 0 is -1); analysis helper."""
        if self._convert is None:
            return [-1] + list(range(len(self.keys)))
        return backends.get().positions(self.height)


def build_static(sorted_keys, layout=Layout.VEB, conversion: str = "constmem",
                 backend: str = "auto") -> StaticTree:
    """Build a static tree from strictly increasing keys.

    Height is the smallest that fits; keys are placed by repeated median
    splits so occupied slots form a balanced BST and unoccupied padding
    slots read as ``EMPTY``.
    """
    keys = list(sorted_keys)
    if not keys:
        raise ValueError("need at least one key")
    prev = None
    for k in keys:
        check_key(k)
        if prev is not None and k <= prev:
            raise ValueError("keys must be strictly increasing")
        prev = k
    layout = as_layout(layout)
    height = height_for(len(keys))
    slots = [EMPTY] * ((1 << height) - 1)
    if layout is Layout.BFS:
        convert = None
        place_balanced(lambda b, k: slots.__setitem__(b - 1, k), keys)
    else:
        if conversion not in backends.VARIANTS:
            raise ValueError(f"unknown conversion variant {conversion!r}")
        convert = converter(conversion, backend)
        pos = backends.get(backend).positions(height)
        place_balanced(lambda b, k: slots.__setitem__(pos[b], k), keys)
    return StaticTree(slots, height, layout, len(keys), conversion, convert)
