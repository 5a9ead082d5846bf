"""Counting groupoids that satisfy identities.

Two engines, which must agree:

``exhaustive``
    Decode every table index ``0 .. n^(n*n)-1`` and test each identity on
    every assignment.  Limited to ``n <= 3``.
``backtracking``
    Fill cells in row-major order, pruning as soon as some instance of the
    identity has both sides determined and unequal.  Handles ``n = 4``.

Work is split into shards by the leading cells of the table: shard ``s`` of
``m`` owns every table whose first ``prefix_cells`` cells, read as a
base-``n`` number, are congruent to ``s`` mod ``m``.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .groupoid import Groupoid, canonical_index, from_index, table_count
from .kernels import compile_identity, get_backend
from .terms import Identity, mirror

EXHAUSTIVE = "exhaustive"
BACKTRACKING = "backtracking"
ENGINES = (EXHAUSTIVE, BACKTRACKING)
MAX_EXHAUSTIVE_ORDER = 3
MAX_BACKTRACKING_ORDER = 4


class OrderTooLargeError(ValueError):
    pass


class BudgetExceeded(TimeoutError):
    """A census ran past its time budget; `completed` shards were finished."""

    def __init__(self, completed: int, shard_count: int, elapsed: float):
        super().__init__(f"time budget exceeded after {completed}/{shard_count} shards "
                         f"({elapsed:.1f} s)")
        self.completed = completed
        self.shard_count = shard_count
        self.elapsed = elapsed


@dataclass(frozen=True)
class Partition:
    prefix_cells: int
    shard_index: int
    shard_count: int

    def validate(self, n: int) -> None:
        if self.shard_count < 1 or not 0 <= self.shard_index < self.shard_count:
            raise ValueError(f"invalid shard {self.shard_index}/{self.shard_count}")
        if not 0 <= self.prefix_cells <= n * n:
            raise ValueError(f"prefix_cells must lie in 0..{n * n}")


@dataclass(frozen=True)
class CensusQuery:
    order: int
    identities: tuple[Identity, ...]
    engine: str = EXHAUSTIVE
    want_iso_classes: bool = False
    want_representatives: bool = False
    partition: Optional[Partition] = None
    backend: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "identities", tuple(self.identities))
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if not self.identities:
            raise ValueError("at least one identity is required")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        limit = MAX_EXHAUSTIVE_ORDER if self.engine == EXHAUSTIVE else MAX_BACKTRACKING_ORDER
        if self.order > limit:
            raise OrderTooLargeError(f"{self.engine} engine supports orders up to {limit}")
        if self.partition is not None:
            self.partition.validate(self.order)


@dataclass
class IdentityCount:
    identity: Identity
    total_count: int
    iso_class_count: Optional[int] = None
    representatives: Optional[list[Groupoid]] = None
    # canonical indices of satisfying tables; kept so shard results can merge
    canonical_indices: Optional[set[int]] = field(default=None, repr=False)


@dataclass
class CensusResult:
    order: int
    engine: str
    counts: list[IdentityCount]
    elapsed: float = 0.0
    tables_scanned: int = 0

    def __getitem__(self, i: int) -> IdentityCount:
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    @property
    def totals(self) -> list[int]:
        return [c.total_count for c in self.counts]

    @property
    def total(self) -> int:
        """Total for a single-identity census."""
        if len(self.counts) != 1:
            raise ValueError("`total` is only defined for single-identity results")
        return self.counts[0].total_count


def _classes(n: int, indices: Sequence[int]) -> set[int]:
    return {canonical_index(from_index(n, k)) for k in indices}


def _finish(q: CensusQuery, n: int, per_identity: list[tuple[int, Optional[list[int]]]],
            elapsed: float, scanned: int) -> CensusResult:
    counts = []
    for ident, (total, indices) in zip(q.identities, per_identity):
        c = IdentityCount(ident, total)
        if indices is not None:
            c.canonical_indices = _classes(n, indices)
        counts.append(c)
    result = CensusResult(n, q.engine, counts, elapsed, scanned)
    _summarize_classes(result, q.want_iso_classes, q.want_representatives)
    return result


def _summarize_classes(result: CensusResult, iso: bool, reps: bool) -> None:
    for c in result.counts:
        if c.canonical_indices is None:
            continue
        if iso or reps:
            c.iso_class_count = len(c.canonical_indices)
        if reps:
            c.representatives = [from_index(result.order, k) for k in sorted(c.canonical_indices)]


def _shard_blocks(n: int, part: Optional[Partition]) -> list[tuple[int, int]]:
    """Contiguous index ranges covered by a shard."""
    total = table_count(n)
    if part is None:
        return [(0, total)]
    width = n ** (n * n - part.prefix_cells)
    return [(p * width, (p + 1) * width)
            for p in range(part.shard_index, n ** part.prefix_cells, part.shard_count)]


def _run_exhaustive(q: CensusQuery) -> CensusResult:
    n = q.order
    kernels = get_backend(q.backend)
    programs = [compile_identity(i) for i in q.identities]
    collect = q.want_iso_classes or q.want_representatives
    start = time.perf_counter()
    totals = [0] * len(programs)
    found: list[list[int]] = [[] for _ in programs]
    scanned = 0
    for lo, hi in _shard_blocks(n, q.partition):
        mask = kernels.sweep_mask(n, lo, hi, programs)
        scanned += hi - lo
        for p in range(len(programs)):
            hits = mask[p].nonzero()[0]
            totals[p] += len(hits)
            if collect:
                found[p].extend(int(k) + lo for k in hits)
    elapsed = time.perf_counter() - start
    per = [(t, f if collect else None) for t, f in zip(totals, found)]
    return _finish(q, n, per, elapsed, scanned)


def _run_backtracking(q: CensusQuery) -> CensusResult:
    n = q.order
    kernels = get_backend(q.backend)
    part = q.partition or Partition(0, 0, 1)
    collect = q.want_iso_classes or q.want_representatives
    start = time.perf_counter()
    per = []
    scanned = 0
    for ident in q.identities:
        count, nodes, indices = kernels.backtrack(
            n, compile_identity(ident), part.prefix_cells, part.shard_index,
            part.shard_count, collect)
        per.append((count, indices))
        scanned += nodes
    elapsed = time.perf_counter() - start
    return _finish(q, n, per, elapsed, scanned)


def run_query(q: CensusQuery) -> CensusResult:
    """Evaluate one query (a single shard when `q.partition` is set)."""
    if q.engine == EXHAUSTIVE:
        return _run_exhaustive(q)
    return _run_backtracking(q)


def partitioned_count(q: CensusQuery) -> CensusResult:
    if q.partition is None:
        raise ValueError("query has no partition")
    return run_query(q)


def merge_results(parts: Sequence[CensusResult], iso: bool = False,
                  reps: bool = False) -> CensusResult:
    """Combine shard results: totals add, isomorphism classes union."""
    if not parts:
        raise ValueError("nothing to merge")
    first = parts[0]
    counts = []
    for i, c0 in enumerate(first.counts):
        total = sum(p.counts[i].total_count for p in parts)
        merged = IdentityCount(c0.identity, total)
        if c0.canonical_indices is not None:
            merged.canonical_indices = set().union(*(p.counts[i].canonical_indices for p in parts))
        counts.append(merged)
    result = CensusResult(first.order, first.engine, counts,
                          elapsed=sum(p.elapsed for p in parts),
                          tables_scanned=sum(p.tables_scanned for p in parts))
    _summarize_classes(result, iso, reps)
    return result


def default_prefix_cells(n: int, shard_count: int) -> int:
    p = 0
    while n ** p < shard_count and p < n * n:
        p += 1
    return p


def available_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def census(n: int, identities: Sequence[Identity], engine: str = EXHAUSTIVE, *,
           iso: bool = False, representatives: bool = False, jobs: int = 1,
           shard_count: Optional[int] = None, prefix_cells: Optional[int] = None,
           backend: Optional[str] = None, time_budget: Optional[float] = None) -> CensusResult:
    """Full census, optionally split into shards run on `jobs` processes.

    The result does not depend on `jobs` or `shard_count`.  With a
    `time_budget` (seconds), shards are checked against the clock as they
    finish and `BudgetExceeded` is raised once it is spent.
    """
    base = CensusQuery(n, tuple(identities), engine, iso, representatives, None, backend)
    if shard_count is None:
        shard_count = 1 if jobs <= 1 else 4 * jobs
    if prefix_cells is None:
        prefix_cells = default_prefix_cells(n, shard_count)
    queries = [replace(base, partition=Partition(prefix_cells, s, shard_count))
               for s in range(shard_count)]
    start = time.perf_counter()
    parts: list[CensusResult] = []

    def check_budget() -> None:
        elapsed = time.perf_counter() - start
        if time_budget is not None and elapsed > time_budget and len(parts) < len(queries):
            raise BudgetExceeded(len(parts), len(queries), elapsed)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            try:
                for part in pool.map(run_query, queries):
                    parts.append(part)
                    check_budget()
            except BudgetExceeded:
                pool.shutdown(wait=False, cancel_futures=True)
                raise
    else:
        for q in queries:
            check_budget()
            parts.append(run_query(q))
    result = merge_results(parts, iso, representatives)
    result.elapsed = time.perf_counter() - start
    return result


def count_all(n: int, identities: Sequence[Identity], backend: Optional[str] = None) -> CensusResult:
    """Exhaustive count of each identity over all order-`n` tables."""
    return run_query(CensusQuery(n, tuple(identities), EXHAUSTIVE, backend=backend))


def count_iso_classes(n: int, ident: Identity, engine: str = EXHAUSTIVE,
                      backend: Optional[str] = None) -> CensusResult:
    return run_query(CensusQuery(n, (ident,), engine, True, True, backend=backend))


def backtracking_count(n: int, ident: Identity, backend: Optional[str] = None) -> CensusResult:
    return run_query(CensusQuery(n, (ident,), BACKTRACKING, backend=backend))


def satisfying_indices(n: int, ident: Identity, engine: str = EXHAUSTIVE,
                       backend: Optional[str] = None) -> list[int]:
    """Sorted dense indices of the tables satisfying `ident`."""
    q = CensusQuery(n, (ident,), engine, backend=backend)
    if engine == EXHAUSTIVE:
        mask = get_backend(backend).sweep_mask(n, 0, table_count(n), [compile_identity(ident)])
        return [int(k) for k in mask[0].nonzero()[0]]
    _, _, indices = get_backend(q.backend).backtrack(n, compile_identity(ident), collect=True)
    return sorted(indices)


def count_conjunction(n: int, identities: Sequence[Identity],
                      backend: Optional[str] = None) -> int:
    """Number of order-`n` tables satisfying every identity at once."""
    if n > MAX_EXHAUSTIVE_ORDER:
        raise OrderTooLargeError(f"exhaustive engine supports orders up to {MAX_EXHAUSTIVE_ORDER}")
    programs = [compile_identity(i) for i in identities]
    mask = get_backend(backend).sweep_mask(n, 0, table_count(n), programs)
    return int(mask.all(axis=0).sum())


def duality_check(n: int, ident: Identity, engine: str = EXHAUSTIVE,
                  backend: Optional[str] = None) -> bool:
    """Whether `ident` and its mirror image have the same number of models."""
    result = run_query(CensusQuery(n, (ident, mirror(ident)), engine, backend=backend))
    return result.counts[0].total_count == result.counts[1].total_count
