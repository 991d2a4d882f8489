"""Benchmark harness: the four dictionary experiments, the index-conversion
microbenchmark, and cache-transfer simulations, all emitting CSV.

Timing rows share one schema (``CSV_HEADER``); simulation rows use the
transfer-count schema (``SIM_CSV_HEADER``).  Every run is seeded, so a rerun
with the same configuration reproduces all non-timing columns exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
import csv
import random
import statistics
import sys
import time

from . import backends
from .baselines import BTree, SplayTree, SortedListSet
from .cachesim import (CacheSim, count_binary_search, count_scan,
                       mean_tree_search, worst_binary_search)
from .layout import Layout, build_static
from .packed import PackedTree

EXPERIMENTS = ("inorder_insert", "random_insert",
               "inorder_traverse", "random_traverse")
WORKLOADS = ("scan", "binsearch", "veb_search", "bfs_search")

CSV_HEADER = "experiment,structure,n,seed,total_ns,ns_per_op,extra"
SIM_CSV_HEADER = "workload,N,B,M_blocks,transfers"


@dataclass
class BenchRecord:
    experiment: str
    structure: str
    n: int
    seed: int
    total_ns: int
    ns_per_op: float
    extra: str = ""

    def row(self):
        return [self.experiment, self.structure, str(self.n), str(self.seed),
                str(self.total_ns), f"{self.ns_per_op:.3f}", self.extra]


@dataclass
class SimResult:
    workload: str
    n: int
    block: int
    m_blocks: int
    transfers: str
    total_ns: int

    def row(self):
        return [self.workload, str(self.n), str(self.block),
                str(self.m_blocks), self.transfers]


@dataclass
class RosterEntry:
    id: str
    build: "callable"


def make_roster(tau1=Fraction(1, 2), orders=(2, 16), conversion="constmem",
                backend="auto", with_sorted_list=False) -> dict:
    """Benchmark structures by id.  The bisect sorted list stands in for a
    standard-library ordered set and is opt-in because its inserts shift
    the array tail."""
    tau1 = Fraction(tau1)
    entries = [
        RosterEntry("small_bfs", lambda: PackedTree(tau1, Layout.BFS)),
        RosterEntry("small_veb", lambda: PackedTree(tau1, Layout.VEB,
                                                    conversion, backend)),
    ]
    for order in orders:
        entries.append(RosterEntry(f"btree{order}",
                                   lambda o=order: BTree(o)))
    entries.append(RosterEntry("splay", SplayTree))
    if with_sorted_list:
        entries.append(RosterEntry("sortedlist", SortedListSet))
    return {e.id: e for e in entries}


DEFAULT_STRUCTURES = ("small_bfs", "small_veb", "btree2", "btree16", "splay")


def _permutations(n, seed):
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    perm2 = perm[:]
    if n > 1:
        while perm2 == perm:
            rng.shuffle(perm2)
    return perm, perm2


def _median_ns(samples):
    return int(statistics.median(samples))


def run_experiment(experiment: str, entry: RosterEntry, n: int, seed: int,
                   repeat: int = 1) -> BenchRecord:
    """Run one experiment cell: keys are 0..n-1, permuted under ``seed``
    where the experiment calls for random order.  One untimed warm-up run
    precedes ``repeat`` timed runs; the median total is reported."""
    if experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {experiment!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if repeat < 1:
        raise ValueError(f"repeat must be >= 1, got {repeat}")
    perm, perm2 = _permutations(n, seed)

    if experiment in ("inorder_insert", "random_insert"):
        keys = list(range(n)) if experiment == "inorder_insert" else perm

        def timed():
            structure = entry.build()
            insert = structure.insert
            t0 = time.perf_counter_ns()
            for k in keys:
                insert(k)
            elapsed = time.perf_counter_ns() - t0
            if len(structure) != n:
                raise RuntimeError(f"{entry.id} lost keys during insertion")
            return elapsed
    else:
        structure = entry.build()
        insert = structure.insert
        for k in perm:  # construction is untimed
            insert(k)
        order = list(range(n)) if experiment == "inorder_traverse" else perm2

        def timed():
            contains = structure.contains
            hits = 0
            t0 = time.perf_counter_ns()
            for k in order:
                hits += contains(k)
            elapsed = time.perf_counter_ns() - t0
            if hits != n:
                raise RuntimeError(f"{entry.id} missed a membership probe")
            return elapsed

    timed()  # warm-up
    total = _median_ns([timed() for _ in range(repeat)])
    return BenchRecord(experiment, entry.id, n, seed, total, total / n)


def run_convert_bench(variant: str, height: int, repetitions: int,
                      seed: int = 0, backend: str = "auto",
                      repeat: int = 1) -> BenchRecord:
    """Time ``repetitions`` conversions of seeded random BFS indices.

    The output checksum lands in ``extra`` so runs cannot be optimised away
    and variants/backends can be cross-checked.  The ``n`` column carries
    the tree height.
    """
    if variant not in backends.VARIANTS:
        raise ValueError(f"unknown conversion variant {variant!r}")
    if not 1 <= height <= backends.MAX_HEIGHT:
        raise ValueError(f"height must be in 1..{backends.MAX_HEIGHT}, "
                         f"got {height}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    kernel = backends.get(backend)
    rng = random.Random(seed)
    top = 1 << height
    indices = [rng.randrange(1, top) for _ in range(repetitions)]
    table = kernel.make_table(height) if variant == "table" else None

    def timed():
        t0 = time.perf_counter_ns()
        checksum = kernel.checksum_batch(indices, height, variant, table)
        return time.perf_counter_ns() - t0, checksum

    timed()  # warm-up
    runs = [timed() for _ in range(repeat)]
    total = _median_ns([t for t, _ in runs])
    checksum = runs[0][1]
    structure = f"{variant}-{kernel.BACKEND_NAME}"
    return BenchRecord("convert", structure, height, seed, total,
                       total / repetitions, f"0x{checksum:016x}")


def simulate(workload: str, n: int, block: int, m_blocks: int, seed: int = 0,
             probes: int = 1000) -> SimResult:
    """Run one transfer-count simulation.

    ``scan`` and ``binsearch`` report exact worst-case transfer counts
    (binary search at its analytically worst rank); the tree workloads
    report the mean over ``probes`` seeded random keys.
    """
    if workload not in WORKLOADS:
        raise ValueError(f"unknown workload {workload!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sim = CacheSim(block, m_blocks)
    t0 = time.perf_counter_ns()
    if workload == "scan":
        value = str(count_scan(sim, n))
    elif workload == "binsearch":
        _, rank = worst_binary_search(n, block)
        value = str(count_binary_search(sim, n, rank))
    else:
        layout = Layout.VEB if workload == "veb_search" else Layout.BFS
        tree = build_static(range(n), layout)
        rng = random.Random(seed)
        keys = [rng.randrange(n) for _ in range(probes)]
        value = f"{mean_tree_search(sim, tree, keys):.3f}"
    elapsed = time.perf_counter_ns() - t0
    return SimResult(workload, n, block, m_blocks, value, elapsed)


def run_simulate(workload: str, n: int, block: int, m_blocks: int,
                 seed: int = 0, probes: int = 1000) -> BenchRecord:
    """Simulation wrapped in the timing-row shape, transfers in ``extra``."""
    result = simulate(workload, n, block, m_blocks, seed, probes)
    extra = (f"B={result.block};M_blocks={result.m_blocks};"
             f"transfers={result.transfers}")
    return BenchRecord("simulate", workload, n, seed, result.total_ns,
                       result.total_ns / n, extra)


@dataclass
class SweepConfig:
    experiments: tuple = EXPERIMENTS
    structures: tuple = DEFAULT_STRUCTURES
    min_exp: int = 10
    max_exp: int = 22
    seeds: tuple = (0,)
    tau1: Fraction = Fraction(1, 2)
    orders: tuple = (2, 16)
    conversion: str = "constmem"
    backend: str = "auto"
    repeat: int = 1


def sweep(config: SweepConfig, progress=False) -> list:
    """Cartesian product of experiments x structures x sizes x seeds, in
    that nesting order."""
    if config.min_exp < 1 or config.min_exp > config.max_exp:
        raise ValueError(f"bad exponent range "
                         f"{config.min_exp}..{config.max_exp}")
    roster = make_roster(config.tau1, config.orders, config.conversion,
                         config.backend, with_sorted_list=True)
    entries = []
    for sid in config.structures:
        if sid not in roster:
            raise ValueError(f"unknown structure {sid!r} "
                             f"(known: {', '.join(roster)})")
        entries.append(roster[sid])
    records = []
    for experiment in config.experiments:
        for entry in entries:
            for exp in range(config.min_exp, config.max_exp + 1):
                for seed in config.seeds:
                    if progress:
                        print(f"# {experiment} {entry.id} 2^{exp} seed={seed}",
                              file=sys.stderr)
                    records.append(run_experiment(experiment, entry,
                                                  2 ** exp, seed,
                                                  config.repeat))
    return records


def write_csv(records, out, header=CSV_HEADER):
    """Write records (anything with ``.row()``) to a path or file object."""
    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header.split(","))
        for record in records:
            writer.writerow(record.row())

    if hasattr(out, "write"):
        emit(out)
    else:
        with open(out, "w", newline="") as fh:
            emit(fh)
