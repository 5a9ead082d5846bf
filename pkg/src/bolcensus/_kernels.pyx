# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the census engines.

Mirrors ``_pykernels`` exactly; see that module for the program layout.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    MAXN = 4
    MAXCELLS = 16
    MAXVARS = 8
    MAXNODES = 64
    MAXINST = 65536


cdef inline int _eval(const int* left, const int* right, int nvars, int nnodes,
                      const int* cells, int n, int* vals) noexcept nogil:
    cdef int i
    for i in range(nvars, nnodes):
        vals[i] = cells[vals[left[i]] * n + vals[right[i]]]
    return 0


def sweep_mask(int n, long long lo, long long hi, list programs):
    """0/1 matrix: row p, column k-lo says whether program p holds in table k."""
    cdef Py_ssize_t nprog = len(programs)
    cdef Py_ssize_t width = hi - lo
    out = np.zeros((nprog, width), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] mask = out
    cdef int cells[MAXCELLS]
    cdef int vals[MAXNODES]
    cdef int left[MAXNODES]
    cdef int right[MAXNODES]
    cdef int nvars, nnodes, lroot, rroot, ncells = n * n
    cdef int c, j, i, ok
    cdef long long k, rest
    cdef Py_ssize_t p
    if n > MAXN:
        raise ValueError("order too large for compiled sweep")
    for p in range(nprog):
        nvars, pl, pr, lroot, rroot = programs[p]
        nnodes = len(pl)
        if nnodes > MAXNODES or nvars > MAXVARS:
            raise ValueError("identity too large for compiled kernel")
        for i in range(nnodes):
            left[i] = pl[i]
            right[i] = pr[i]
        with nogil:
            for k in range(lo, hi):
                rest = k
                for c in range(ncells - 1, -1, -1):
                    cells[c] = <int>(rest % n)
                    rest = rest // n
                for j in range(nvars):
                    vals[j] = 0
                ok = 1
                while True:
                    _eval(left, right, nvars, nnodes, cells, n, vals)
                    if vals[lroot] != vals[rroot]:
                        ok = 0
                        break
                    # odometer over variable values, last variable fastest
                    j = nvars - 1
                    while j >= 0:
                        vals[j] += 1
                        if vals[j] < n:
                            break
                        vals[j] = 0
                        j -= 1
                    if j < 0:
                        break
                mask[p, k - lo] = ok
    return out


cdef struct Search:
    int n
    int ncells
    int nvars
    int nnodes
    int lroot
    int rroot
    int ninst
    int prefix_cells
    long long shard_index
    long long shard_count
    long long count
    long long nodes
    int left[MAXNODES]
    int right[MAXNODES]
    int cells[MAXCELLS]
    int watch_len[MAXCELLS]


# Returns -1 when both sides agree, -2 when they differ, else the first
# unfilled cell the evaluation needs.
cdef inline int _probe(Search* s, const int* inst_vals, int* vals) noexcept nogil:
    cdef int i, cell, v
    for i in range(s.nvars):
        vals[i] = inst_vals[i]
    for i in range(s.nvars, s.nnodes):
        vals[i] = -1
    if _resolve(s, s.lroot, vals, &cell) < 0:
        return cell
    if _resolve(s, s.rroot, vals, &cell) < 0:
        return cell
    return -1 if vals[s.lroot] == vals[s.rroot] else -2


cdef int _resolve(Search* s, int node, int* vals, int* blocked) noexcept nogil:
    cdef int a, b, cell
    if vals[node] >= 0:
        return vals[node]
    a = _resolve(s, s.left[node], vals, blocked)
    if a < 0:
        return -1
    b = _resolve(s, s.right[node], vals, blocked)
    if b < 0:
        return -1
    cell = a * s.n + b
    if s.cells[cell] < 0:
        blocked[0] = cell
        return -1
    vals[node] = s.cells[cell]
    return vals[node]


cdef void _dfs(Search* s, int depth, long long prefix, int* watch, int* inst_vals,
               long long* found, long long found_cap) noexcept nogil:
    cdef int v, i, r, ok, c
    cdef int inst
    cdef int saved[MAXCELLS]
    cdef int vals[MAXNODES]
    s.nodes += 1
    if depth == s.prefix_cells and prefix % s.shard_count != s.shard_index:
        return
    if depth == s.ncells:
        if found != NULL and s.count < found_cap:
            found[s.count] = prefix
        s.count += 1
        return
    for c in range(depth + 1, s.ncells):
        saved[c] = s.watch_len[c]
    for v in range(s.n):
        s.cells[depth] = v
        ok = 1
        for i in range(s.watch_len[depth]):
            inst = watch[depth * s.ninst + i]
            r = _probe(s, &inst_vals[inst * s.nvars], vals)
            if r == -2:
                ok = 0
                break
            if r >= 0:
                watch[r * s.ninst + s.watch_len[r]] = inst
                s.watch_len[r] += 1
        if ok:
            _dfs(s, depth + 1, prefix * s.n + v, watch, inst_vals, found, found_cap)
        for c in range(depth + 1, s.ncells):
            s.watch_len[c] = saved[c]
    s.cells[depth] = -1


def backtrack(int n, tuple program, int prefix_cells=0, long long shard_index=0,
              long long shard_count=1, bint collect=False):
    """Depth-first fill of cells in row-major order with instance pruning.

    Returns ``(count, nodes_visited, indices_or_None)``.
    """
    cdef Search s
    cdef int i, j, r
    cdef long long t
    nvars, pl, pr, lroot, rroot = program
    if n > MAXN:
        raise ValueError("order too large for compiled backtracking")
    if len(pl) > MAXNODES or nvars > MAXVARS:
        raise ValueError("identity too large for compiled kernel")
    s.n = n
    s.ncells = n * n
    s.nvars = nvars
    s.nnodes = len(pl)
    s.lroot = lroot
    s.rroot = rroot
    s.ninst = n ** nvars
    s.prefix_cells = prefix_cells
    s.shard_index = shard_index
    s.shard_count = shard_count
    s.count = 0
    s.nodes = 0
    if s.ninst > MAXINST:
        raise ValueError("too many variable assignments for compiled kernel")
    for i in range(s.nnodes):
        s.left[i] = pl[i]
        s.right[i] = pr[i]
    for i in range(s.ncells):
        s.cells[i] = -1
        s.watch_len[i] = 0

    inst_arr = np.zeros(max(1, s.ninst * s.nvars), dtype=np.intc)
    watch_arr = np.zeros(max(1, s.ncells * s.ninst), dtype=np.intc)
    cdef int[::1] inst_vals = inst_arr
    cdef int[::1] watch = watch_arr
    cdef int vals[MAXNODES]
    for i in range(s.ninst):
        t = i
        for j in range(s.nvars - 1, -1, -1):
            inst_vals[i * s.nvars + j] = <int>(t % n)
            t //= n

    for i in range(s.ninst):
        r = _probe(&s, &inst_vals[i * s.nvars], vals)
        if r == -2:
            return 0, 0, ([] if collect else None)
        if r >= 0:
            watch[r * s.ninst + s.watch_len[r]] = i
            s.watch_len[r] += 1

    cdef long long cap = 0
    cdef long long[::1] found_view
    cdef long long* found_ptr = NULL
    if collect:
        cap = int(n) ** (int(n) * int(n)) if n <= 3 else 1 << 22
        found_arr = np.zeros(cap, dtype=np.longlong)
        found_view = found_arr
        found_ptr = &found_view[0]
    with nogil:
        _dfs(&s, 0, 0, &watch[0], &inst_vals[0], found_ptr, cap)
    if collect:
        if s.count > cap:
            raise MemoryError("too many solutions to collect")
        return s.count, s.nodes, [int(v) for v in found_arr[:s.count]]
    return s.count, s.nodes, None
