"""Dynamic search tree in a packed slot array with density-triggered
complete rebalancing.

Keys live in a complete-tree array of ``2**H - 1`` slots (BFS or vEB
physical order).  Each depth ``d`` has a fill ceiling ``tau_d`` that
interpolates from ``tau1`` at the root to exactly 1 at the leaves.  An
insertion that runs out of depth walks back up to the nearest ancestor
still under its ceiling and rewrites that subtree perfectly balanced with
the new key folded in.  When the whole tree reaches ``tau1`` full, the
array is reallocated one level taller before inserting.

Thresholds are compared in exact rational arithmetic so ``tau_H == 1``
holds without float drift.  Inserts are single-writer; reads may be shared
only while no insert is in flight.
"""

from dataclasses import dataclass
from fractions import Fraction
import bisect

from . import backends
from .layout import (EMPTY, Layout, as_layout, check_key, converter,
                     place_balanced)

MAX_HEIGHT = backends.MAX_HEIGHT


@dataclass
class RebalanceStats:
    """Counters over the life of one tree; all monotone nondecreasing."""
    rebalance_count: int = 0
    elements_moved: int = 0  # sum of N(v)+1 over complete rebalances
    grows: int = 0


def density_thresholds(tau1: Fraction, height: int) -> list:
    """``tau_d`` for d in 1..height, index 0 unused.

    Evenly spaced from ``tau1`` to 1; a height-1 tree only has ``tau1``.
    """
    if height == 1:
        return [None, tau1]
    delta = (1 - tau1) / (height - 1)
    return [None] + [tau1 + (d - 1) * delta for d in range(1, height + 1)]


class PackedTree:
    """Ordered integer set with density-balanced array storage."""

    def __init__(self, tau1=Fraction(1, 2), layout=Layout.VEB,
                 conversion: str = "constmem", backend: str = "auto",
                 validate: int = 0):
        tau1 = Fraction(tau1)
        if not Fraction(1, 2) <= tau1 < 1:
            raise ValueError(f"tau1 must be in [1/2, 1), got {tau1}")
        self.tau1 = tau1
        self.layout = as_layout(layout)
        self.conversion = conversion
        self._backend = backend
        if self.layout is Layout.VEB:
            self._convert = converter(conversion, backend)
        else:
            self._convert = None
        self._validate = validate
        self.count = 0
        self.stats = RebalanceStats()
        self.height = 1
        self._rebuild()

    def _rebuild(self):
        self.capacity = (1 << self.height) - 1
        self.slots = [EMPTY] * self.capacity
        self._tau = density_thresholds(self.tau1, self.height)

    def __len__(self):
        return self.count

    def _position(self, b):
        return (b - 1) if self._convert is None else self._convert(b, self.height)

    # -- queries ---------------------------------------------------------

    def contains(self, key: int) -> bool:
        check_key(key)
        slots = self.slots
        convert = self._convert
        H = self.height
        limit = 1 << H
        b = 1
        while b < limit:
            v = slots[b - 1] if convert is None else slots[convert(b, H)]
            if v == key:
                return True
            if v == EMPTY:
                return False
            b = 2 * b + (key > v)
        return False

    __contains__ = contains

    def inorder(self) -> list:
        """All keys in increasing order (explicit stack, <= H entries)."""
        slots = self.slots
        convert = self._convert
        H = self.height
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
                if slots[p] == EMPTY:
                    b = 0
                    break
                stack.append((b, p))
                b = 2 * b
            if not stack:
                break
            b, p = stack.pop()
            out.append(slots[p])
            b = 2 * b + 1
        return out

    # -- insertion -------------------------------------------------------

    def insert(self, key: int) -> bool:
        """Add ``key``; returns False when it is already present."""
        check_key(key)
        tau1 = self.tau1
        if self.count * tau1.denominator >= tau1.numerator * self.capacity:
            self.grow()
        slots = self.slots
        convert = self._convert
        H = self.height
        b = 1
        depth = 1
        while depth <= H:
            p = (b - 1) if convert is None else convert(b, H)
            v = slots[p]
            if v == EMPTY:
                slots[p] = key
                self.count += 1
                if self._validate >= 2:
                    self._check_structure()
                return True
            if v == key:
                return False
            b = 2 * b + (key > v)
            depth += 1
        # no slot above depth H: rebalance the nearest admissible ancestor
        self._rebalance_for_insert(b >> 1, key)
        self.count += 1
        if self._validate >= 2:
            self._check_structure()
        return True

    def rebalance(self, bfs: int = 1, extra=None):
        """Complete-rebalance the subtree rooted at a BFS index, optionally
        folding in one new key (which must sort into that subtree's range
        and not be present yet).  ``insert`` drives this automatically;
        exposed for tests and exploration."""
        if not 1 <= bfs <= self.capacity:
            raise ValueError(f"bfs index {bfs} out of range for height "
                             f"{self.height}")
        depth = bfs.bit_length()
        n = self._subtree_count(bfs)
        if extra is None:
            self._complete_rebalance(bfs, depth, n)
            return
        check_key(extra)
        size = (1 << (self.height - depth + 1)) - 1
        if n >= size:
            raise ValueError("no free slot in the subtree for the extra key")
        if self.contains(extra):
            raise ValueError(f"key {extra} already present")
        self._complete_rebalance(bfs, depth, n, extra)
        self.count += 1

    def _rebalance_for_insert(self, b, key):
        """Walk up from the depth-H node on the search path to the nearest
        ancestor under its density ceiling, then rewrite that subtree with
        ``key`` folded in.  Growth before descent guarantees the root
        qualifies."""
        H = self.height
        tau = self._tau
        d = H
        n = 1  # the node we stand on is occupied
        while True:
            t = tau[d]
            size = (1 << (H - d + 1)) - 1
            if n * t.denominator < t.numerator * size:
                break
            if d == 1:
                raise AssertionError("no admissible ancestor; growth rule broken")
            n += self._subtree_count(b ^ 1) + 1
            b >>= 1
            d -= 1
        self._complete_rebalance(b, d, n, extra=key)

    def _subtree_count(self, root):
        """Occupied slots below ``root`` (inclusive); prunes empty nodes
        because occupancy is prefix-closed along every root path."""
        slots = self.slots
        convert = self._convert
        H = self.height
        capacity = self.capacity
        stack = [root]
        n = 0
        while stack:
            b = stack.pop()
            p = (b - 1) if convert is None else convert(b, H)
            if slots[p] == EMPTY:
                continue
            n += 1
            c = 2 * b
            if c <= capacity:
                stack.append(c)
                stack.append(c + 1)
        return n

    def _collect_inorder(self, root):
        """Keys below ``root`` in increasing order plus the physical
        positions they occupy."""
        slots = self.slots
        convert = self._convert
        H = self.height
        limit = 1 << H
        keys = []
        filled = []
        stack = []
        b = root
        while stack or b:
            while b:
                if b >= limit:
                    b = 0
                    break
                p = (b - 1) if convert is None else convert(b, H)
                if slots[p] == EMPTY:
                    b = 0
                    break
                stack.append((b, p))
                b = 2 * b
            if not stack:
                break
            b, p = stack.pop()
            keys.append(slots[p])
            filled.append(p)
            b = 2 * b + 1
        return keys, filled

    def _complete_rebalance(self, root, depth, n_before, extra=None):
        keys, filled = self._collect_inorder(root)
        if extra is not None:
            bisect.insort(keys, extra)
        size = (1 << (self.height - depth + 1)) - 1
        if len(keys) > size:
            raise AssertionError("rebalance overflow; ancestor walk broken")
        slots = self.slots
        for p in filled:
            slots[p] = EMPTY
        convert = self._convert
        H = self.height
        if convert is None:
            place_balanced(lambda b, k: slots.__setitem__(b - 1, k), keys, root)
        else:
            place_balanced(lambda b, k: slots.__setitem__(convert(b, H), k),
                           keys, root)
        self.stats.rebalance_count += 1
        self.stats.elements_moved += n_before + 1
        if self._validate:
            if len(keys) - (extra is not None) != n_before:
                raise AssertionError("on-demand subtree count disagrees with scan")
            self._check_rebalanced(root, depth, triggered=extra is not None)

    def grow(self):
        """Increment H, reallocate, and re-place everything balanced from
        the root (counts as a complete rebalance)."""
        if self.height >= MAX_HEIGHT:
            raise ValueError(f"cannot grow beyond height {MAX_HEIGHT}")
        keys = self.inorder()
        self.height += 1
        self._rebuild()
        slots = self.slots
        convert = self._convert
        H = self.height
        if convert is None:
            place_balanced(lambda b, k: slots.__setitem__(b - 1, k), keys)
        else:
            place_balanced(lambda b, k: slots.__setitem__(convert(b, H), k), keys)
        self.stats.grows += 1
        self.stats.rebalance_count += 1
        self.stats.elements_moved += len(keys) + 1
        if self._validate:
            self._check_rebalanced(1, 1, triggered=False)

    # -- instrumentation (validate > 0) ----------------------------------

    def _subtree_sizes(self, root):
        """Occupied-descendant counts for every occupied node below
        ``root``, via iterative post-order."""
        slots = self.slots
        convert = self._convert
        H = self.height
        capacity = self.capacity
        counts = {}
        stack = [(root, False)]
        while stack:
            b, expanded = stack.pop()
            p = (b - 1) if convert is None else convert(b, H)
            if slots[p] == EMPTY:
                continue
            if expanded:
                n = 1
                c = 2 * b
                if c <= capacity:
                    n += counts.get(c, 0) + counts.get(c + 1, 0)
                counts[b] = n
            else:
                stack.append((b, True))
                c = 2 * b
                if c <= capacity:
                    stack.append((c, False))
                    stack.append((c + 1, False))
        return counts

    def _check_rebalanced(self, root, depth, triggered):
        """Post-rebalance assertions: the balance bound for every proper
        descendant, and the density ceiling (+1 for the new key) when the
        rebalance was triggered by an insertion."""
        counts = self._subtree_sizes(root)
        if not counts:
            return
        H = self.height
        n_root = counts[root]
        s_root = (1 << (H - depth + 1)) - 1
        for w, n_w in counts.items():
            if w == root:
                continue
            s_w = (1 << (H - w.bit_length() + 1)) - 1
            if n_w * s_root >= n_root * (1 + s_w):
                raise AssertionError(
                    f"balance bound violated at node {w}: "
                    f"{n_w}*{s_root} >= {n_root}*(1+{s_w})")
        if triggered:
            t = self._tau[depth]
            if n_root * t.denominator > t.numerator * s_root + t.denominator:
                raise AssertionError("density ceiling exceeded after rebalance")

    def _check_structure(self):
        """Full re-scan: BST order, parent occupancy, count consistency."""
        slots = self.slots
        convert = self._convert
        H = self.height
        seq = self.inorder()
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise AssertionError("in-order keys not strictly increasing")
        occupied = 0
        for b in range(1, self.capacity + 1):
            p = (b - 1) if convert is None else convert(b, H)
            if slots[p] == EMPTY:
                continue
            occupied += 1
            if b > 1:
                parent = b >> 1
                pp = (parent - 1) if convert is None else convert(parent, H)
                if slots[pp] == EMPTY:
                    raise AssertionError(f"occupied node {b} under empty parent")
        if occupied != self.count or occupied != len(seq):
            raise AssertionError("count out of sync with occupancy")


def new_tree(tau1=Fraction(1, 2), layout=Layout.BFS, **kwargs) -> PackedTree:
    """Fresh height-1 tree; ``tau1`` must lie in [1/2, 1)."""
    return PackedTree(tau1, layout, **kwargs)
