"""Pure-Python census kernels, used when the compiled extension is missing.

A *program* is the flat form of an identity produced by
`bolcensus.kernels.compile_identity`::

    (nvars, left, right, lhs_root, rhs_root)

Nodes ``0..nvars-1`` are the variables in first-occurrence order; every
later node ``i`` is the product of nodes ``left[i]`` and ``right[i]``, and
children always precede their parent.
"""

from __future__ import annotations

import itertools

import numpy as np

_CHUNK = 1 << 16


def _decode(n: int, lo: int, hi: int) -> np.ndarray:
    """Row k-lo holds the cells of table k (big-endian base n)."""
    k = np.arange(lo, hi, dtype=np.int64)
    cells = np.empty((hi - lo, n * n), dtype=np.int64)
    for c in range(n * n - 1, -1, -1):
        cells[:, c] = k % n
        k //= n
    return cells


def _holds_vectorized(n: int, cells: np.ndarray, program) -> np.ndarray:
    nvars, left, right, lroot, rroot = program
    rows = np.arange(len(cells))
    ok = np.ones(len(cells), dtype=bool)
    for values in itertools.product(range(n), repeat=nvars):
        vals: list = list(values)
        for i in range(nvars, len(left)):
            vals.append(cells[rows, np.asarray(vals[left[i]]) * n + vals[right[i]]])
        ok &= np.broadcast_to(vals[lroot] == vals[rroot], ok.shape)
    return ok


def sweep_mask(n: int, lo: int, hi: int, programs: list) -> np.ndarray:
    out = np.zeros((len(programs), hi - lo), dtype=np.uint8)
    for start in range(lo, hi, _CHUNK):
        stop = min(hi, start + _CHUNK)
        cells = _decode(n, start, stop)
        for p, program in enumerate(programs):
            out[p, start - lo:stop - lo] = _holds_vectorized(n, cells, program)
    return out


def _probe(n: int, program, cells: list, inst: tuple) -> int:
    """-1 if both sides agree, -2 if they differ, else the blocking cell."""
    nvars, left, right, lroot, rroot = program
    vals = list(inst) + [-1] * (len(left) - nvars)

    def resolve(node: int) -> int:
        if vals[node] >= 0:
            return vals[node]
        a = resolve(left[node])
        if a < 0:
            return a
        b = resolve(right[node])
        if b < 0:
            return b
        cell = a * n + b
        if cells[cell] < 0:
            return -3 - cell
        vals[node] = cells[cell]
        return vals[node]

    for root in (lroot, rroot):
        r = resolve(root)
        if r < 0:
            return -3 - r
    return -1 if vals[lroot] == vals[rroot] else -2


def backtrack(n: int, program, prefix_cells: int = 0, shard_index: int = 0,
              shard_count: int = 1, collect: bool = False):
    nvars = program[0]
    ncells = n * n
    instances = list(itertools.product(range(n), repeat=nvars))
    cells = [-1] * ncells
    watch: list[list[int]] = [[] for _ in range(ncells)]
    for i, inst in enumerate(instances):
        r = _probe(n, program, cells, inst)
        if r == -2:
            return 0, 0, ([] if collect else None)
        if r >= 0:
            watch[r].append(i)

    count = 0
    nodes = 0
    found: list[int] = []

    def dfs(depth: int, prefix: int) -> None:
        nonlocal count, nodes
        nodes += 1
        if depth == prefix_cells and prefix % shard_count != shard_index:
            return
        if depth == ncells:
            count += 1
            if collect:
                found.append(prefix)
            return
        saved = [len(w) for w in watch]
        for v in range(n):
            cells[depth] = v
            ok = True
            for inst in watch[depth]:
                r = _probe(n, program, cells, instances[inst])
                if r == -2:
                    ok = False
                    break
                if r >= 0:
                    watch[r].append(inst)
            if ok:
                dfs(depth + 1, prefix * n + v)
            for c in range(depth + 1, ncells):
                del watch[c][saved[c]:]
        cells[depth] = -1

    dfs(0, 0)
    return count, nodes, (found if collect else None)
