"""Both kernel backends against each other and against term evaluation."""

import numpy as np
import pytest

from bolcensus import kernels
from bolcensus.catalog import CATALOG, lookup
from bolcensus.groupoid import all_groupoids, from_index, table_count
from bolcensus.kernels import BACKENDS, compile_identity, get_backend
from bolcensus.terms import holds, parse_identity

PROGRAMS = [compile_identity(e.identity) for e in CATALOG]


def test_default_backend_is_available():
    assert kernels.DEFAULT_BACKEND in BACKENDS
    assert get_backend() is BACKENDS[kernels.DEFAULT_BACKEND]


def test_compiled_extension_built():
    # the package is meant to ship with its compiled core
    assert "compiled" in BACKENDS


def test_compile_layout():
    nvars, left, right, lroot, rroot = compile_identity(parse_identity("x(yz) = (xy)z"))
    assert nvars == 3
    assert list(left) == [-1, -1, -1, 1, 0, 0, 5]
    assert list(right) == [-1, -1, -1, 2, 3, 1, 2]
    assert (lroot, rroot) == (4, 6)


def test_compile_trivial():
    nvars, left, right, lroot, rroot = compile_identity(parse_identity("x = x"))
    assert nvars == 1 and len(left) == 1 and lroot == rroot == 0


@pytest.mark.parametrize("n", [1, 2])
def test_sweep_matches_holds(backend, n):
    mask = get_backend(backend).sweep_mask(n, 0, table_count(n), PROGRAMS)
    for k, g in enumerate(all_groupoids(n)):
        for p, e in enumerate(CATALOG):
            assert bool(mask[p, k]) == holds(e.identity, g)


def test_sweep_matches_holds_order3_sample(backend):
    mask = get_backend(backend).sweep_mask(3, 0, table_count(3), PROGRAMS)
    for k in range(0, 19683, 41):
        g = from_index(3, k)
        for p, e in enumerate(CATALOG):
            assert bool(mask[p, k]) == holds(e.identity, g)


def test_sweep_subrange(backend):
    kern = get_backend(backend)
    full = kern.sweep_mask(3, 0, 19683, PROGRAMS[:5])
    part = kern.sweep_mask(3, 1000, 2500, PROGRAMS[:5])
    assert np.array_equal(full[:, 1000:2500], part)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree_on_sweep():
    a = BACKENDS["compiled"].sweep_mask(3, 0, 19683, PROGRAMS)
    b = BACKENDS["python"].sweep_mask(3, 0, 19683, PROGRAMS)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("n", [1, 2])
def test_backtrack_collects_exact_sets(backend, n):
    kern = get_backend(backend)
    for e, prog in zip(CATALOG, PROGRAMS):
        count, nodes, found = kern.backtrack(n, prog, collect=True)
        expected = [k for k, g in enumerate(all_groupoids(n)) if holds(e.identity, g)]
        assert sorted(found) == expected
        assert count == len(expected)
        assert nodes >= count


def test_backtrack_prunes():
    # associativity at order 3 must visit far fewer nodes than a full tree
    _, nodes, _ = get_backend().backtrack(3, compile_identity(lookup("SGR").identity))
    full_tree = sum(3 ** d for d in range(10))
    assert nodes < full_tree / 10


@pytest.mark.parametrize("n", [2, 3])
def test_backtrack_idempotent(backend, n):
    # a single-variable identity pins the diagonal: n^(n*n - n) tables
    count, _, _ = get_backend(backend).backtrack(n, compile_identity(parse_identity("xx = x")))
    assert count == n ** (n * n - n)


def test_backtrack_reflexive(backend):
    count, _, _ = get_backend(backend).backtrack(2, compile_identity(parse_identity("x = x")))
    assert count == 16


@pytest.mark.parametrize("prefix_cells,shards", [(0, 1), (1, 2), (2, 4), (4, 8), (9, 5)])
def test_backtrack_shards_partition(backend, prefix_cells, shards):
    kern = get_backend(backend)
    prog = compile_identity(lookup("ML").identity)
    sets = [set(kern.backtrack(3, prog, prefix_cells, s, shards, True)[2]) for s in range(shards)]
    union = set().union(*sets)
    assert sum(map(len, sets)) == len(union) == 196
    for s, found in enumerate(sets):
        assert all((k // 3 ** (9 - prefix_cells)) % shards == s for k in found)


def test_backtrack_rejects_large_order():
    if "compiled" not in BACKENDS:
        pytest.skip("compiled backend not built")
    with pytest.raises(ValueError):
        BACKENDS["compiled"].backtrack(5, PROGRAMS[0])
