"""Comparison dictionaries: a B-tree of configurable minimum degree, a
bottom-up splay tree, and a bisect-maintained sorted list.

All are integer sets with the same surface as the packed tree: ``insert``
returns False on duplicates, ``contains`` answers membership, ``inorder``
lists the keys in increasing order.
"""

from bisect import bisect_left, insort


class _BNode:
    __slots__ = ("keys", "children")

    def __init__(self):
        self.keys = []
        self.children = []  # empty for leaves


class BTree:
    """B-tree in the minimum-degree convention: order ``t`` means every
    non-root node holds between ``t - 1`` and ``2t - 1`` keys."""

    def __init__(self, order: int = 16):
        if order < 2:
            raise ValueError(f"order must be >= 2, got {order}")
        self.order = order
        self.root = _BNode()
        self.count = 0

    def __len__(self):
        return self.count

    def _split_child(self, parent, i):
        # child is full (2t-1 keys); middle key moves up
        t = self.order
        child = parent.children[i]
        right = _BNode()
        right.keys = child.keys[t:]
        parent.keys.insert(i, child.keys[t - 1])
        del child.keys[t - 1:]
        if child.children:
            right.children = child.children[t:]
            del child.children[t:]
        parent.children.insert(i + 1, right)

    def insert(self, key: int) -> bool:
        full = 2 * self.order - 1
        if len(self.root.keys) == full:
            new_root = _BNode()
            new_root.children.append(self.root)
            self.root = new_root
            self._split_child(new_root, 0)
        node = self.root
        while True:
            keys = node.keys
            i = bisect_left(keys, key)
            if i < len(keys) and keys[i] == key:
                return False
            if not node.children:
                keys.insert(i, key)
                self.count += 1
                return True
            child = node.children[i]
            if len(child.keys) == full:
                self._split_child(node, i)
                sep = node.keys[i]
                if sep == key:
                    return False
                if key > sep:
                    child = node.children[i + 1]
            node = child

    def contains(self, key: int) -> bool:
        node = self.root
        while True:
            keys = node.keys
            i = bisect_left(keys, key)
            if i < len(keys) and keys[i] == key:
                return True
            if not node.children:
                return False
            node = node.children[i]

    __contains__ = contains

    def inorder(self) -> list:
        out = []
        # (node, i): emit key i-1, then descend into child i
        stack = [(self.root, 0)]
        while stack:
            node, i = stack.pop()
            if not node.children:
                out.extend(node.keys)
                continue
            if 0 < i <= len(node.keys):
                out.append(node.keys[i - 1])
            if i < len(node.children):
                stack.append((node, i + 1))
                stack.append((node.children[i], 0))
        return out


class _SNode:
    __slots__ = ("key", "left", "right", "parent")

    def __init__(self, key, parent=None):
        self.key = key
        self.left = None
        self.right = None
        self.parent = parent


class SplayTree:
    """Classic bottom-up splay tree; every access moves the touched node
    (or the last node on the search path) to the root."""

    def __init__(self):
        self.root = None
        self.count = 0

    def __len__(self):
        return self.count

    def _rotate(self, x):
        p = x.parent
        g = p.parent
        if p.left is x:
            p.left = x.right
            if x.right:
                x.right.parent = p
            x.right = p
        else:
            p.right = x.left
            if x.left:
                x.left.parent = p
            x.left = p
        p.parent = x
        x.parent = g
        if g is None:
            self.root = x
        elif g.left is p:
            g.left = x
        else:
            g.right = x

    def _splay(self, x):
        while x.parent:
            p = x.parent
            g = p.parent
            if g is None:
                self._rotate(x)                      # zig
            elif (g.left is p) == (p.left is x):
                self._rotate(p)                      # zig-zig
                self._rotate(x)
            else:
                self._rotate(x)                      # zig-zag
                self._rotate(x)

    def insert(self, key: int) -> bool:
        if self.root is None:
            self.root = _SNode(key)
            self.count = 1
            return True
        node = self.root
        while True:
            if key == node.key:
                self._splay(node)
                return False
            nxt = node.left if key < node.key else node.right
            if nxt is None:
                child = _SNode(key, node)
                if key < node.key:
                    node.left = child
                else:
                    node.right = child
                self._splay(child)
                self.count += 1
                return True
            node = nxt

    def contains(self, key: int) -> bool:
        node = self.root
        last = None
        while node:
            last = node
            if key == node.key:
                self._splay(node)
                return True
            node = node.left if key < node.key else node.right
        if last:
            self._splay(last)
        return False

    __contains__ = contains

    def inorder(self) -> list:
        out = []
        stack = []
        node = self.root
        while stack or node:
            while node:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append(node.key)
            node = node.right
        return out


class SortedListSet:
    """Sorted list kept with ``bisect``; the closest thing the standard
    library offers to an ordered set.  Inserts shift the tail, so use it
    only at sizes where that is acceptable."""

    def __init__(self):
        self._keys = []

    def __len__(self):
        return len(self._keys)

    def insert(self, key: int) -> bool:
        keys = self._keys
        i = bisect_left(keys, key)
        if i < len(keys) and keys[i] == key:
            return False
        keys.insert(i, key)
        return True

    def contains(self, key: int) -> bool:
        keys = self._keys
        i = bisect_left(keys, key)
        return i < len(keys) and keys[i] == key

    __contains__ = contains

    def inorder(self) -> list:
        return list(self._keys)


def check_btree(tree: BTree):
    """Structural audit used by tests: key bounds per node, equal leaf
    depth, sortedness, and separator ranges.  Raises AssertionError."""
    t = tree.order
    leaf_depths = set()
    total = 0

    stack = [(tree.root, 0, None, None)]
    while stack:
        node, depth, lo, hi = stack.pop()
        keys = node.keys
        total += len(keys)
        if node is not tree.root and not t - 1 <= len(keys) <= 2 * t - 1:
            raise AssertionError(f"node with {len(keys)} keys violates order {t}")
        if node is tree.root and len(keys) > 2 * t - 1:
            raise AssertionError("root overfull")
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise AssertionError("node keys not strictly increasing")
        if keys and ((lo is not None and keys[0] <= lo) or
                     (hi is not None and keys[-1] >= hi)):
            raise AssertionError("separator range violated")
        if not node.children:
            leaf_depths.add(depth)
            continue
        if len(node.children) != len(keys) + 1:
            raise AssertionError("child count != key count + 1")
        bounds = [lo] + keys + [hi]
        for i, child in enumerate(node.children):
            stack.append((child, depth + 1, bounds[i], bounds[i + 1]))
    if len(leaf_depths) > 1:
        raise AssertionError(f"leaves at unequal depths {sorted(leaf_depths)}")
    if total != tree.count:
        raise AssertionError("count out of sync")
