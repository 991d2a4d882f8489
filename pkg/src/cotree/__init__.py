"""Cache-oblivious ordered dictionaries and their measurement harness.

Static trees in BFS or van Emde Boas array order, a dynamic
density-balanced packed tree, baseline B-trees and splay trees, an LRU
memory-transfer simulator, and a CSV-emitting benchmark CLI.
"""

from . import backends
from .baselines import BTree, SortedListSet, SplayTree
from .cachesim import CacheSim, count_binary_search, count_scan, count_tree_search
from .layout import (EMPTY, KEY_MAX, KEY_MIN, Layout, StaticTree,
                     build_static, children_positions, position_of)
from .packed import PackedTree, RebalanceStats, new_tree

__version__ = "0.1.0"

__all__ = [
    "BTree",
    "CacheSim",
    "EMPTY",
    "KEY_MAX",
    "KEY_MIN",
    "Layout",
    "PackedTree",
    "RebalanceStats",
    "SortedListSet",
    "SplayTree",
    "StaticTree",
    "backends",
    "build_static",
    "children_positions",
    "count_binary_search",
    "count_scan",
    "count_tree_search",
    "new_tree",
    "position_of",
]
