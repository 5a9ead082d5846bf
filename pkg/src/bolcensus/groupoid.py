"""Finite groupoids as Cayley tables.

Elements are ``0..n-1``.  A table is stored row-major, so ``x*y`` lives at
``table[x*n + y]``.  The dense index of a table reads the cells as a
big-endian base-``n`` number; index 0 is the constant-0 table.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence


@dataclass(frozen=True)
class Groupoid:
    order: int
    table: tuple[int, ...]

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise ValueError("order must be at least 1")
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != n * n:
            raise ValueError(f"table must have {n * n} entries, got {len(self.table)}")
        if any(not 0 <= v < n for v in self.table):
            raise ValueError(f"table entries must lie in 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Groupoid":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Cayley table must be square")
        return cls(n, tuple(v for r in rows for v in r))

    @classmethod
    def from_rows_1based(cls, rows: Sequence[Sequence[int]]) -> "Groupoid":
        return cls.from_rows([[v - 1 for v in r] for r in rows])

    def op(self, x: int, y: int) -> int:
        n = self.order
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"elements must lie in 0..{n - 1}, got ({x}, {y})")
        return self.table[x * n + y]

    def rows(self) -> list[list[int]]:
        n = self.order
        return [list(self.table[i * n:(i + 1) * n]) for i in range(n)]

    def __str__(self):
        return format_table(self)


@dataclass(frozen=True)
class PartialGroupoid:
    """Cayley table with possibly unfilled cells (``None``)."""

    order: int
    table: tuple[Optional[int], ...]

    def __post_init__(self):
        n = self.order
        if len(self.table) != n * n:
            raise ValueError(f"table must have {n * n} cells")
        if any(v is not None and not 0 <= v < n for v in self.table):
            raise ValueError(f"filled cells must lie in 0..{n - 1}")

    @classmethod
    def empty(cls, n: int) -> "PartialGroupoid":
        return cls(n, (None,) * (n * n))

    def get(self, x: int, y: int) -> Optional[int]:
        return self.table[x * self.order + y]

    def fill(self, x: int, y: int, value: int) -> "PartialGroupoid":
        cells = list(self.table)
        cells[x * self.order + y] = value
        return PartialGroupoid(self.order, tuple(cells))

    def is_complete(self) -> bool:
        return all(v is not None for v in self.table)

    def complete(self) -> Groupoid:
        if not self.is_complete():
            raise ValueError("table has unfilled cells")
        return Groupoid(self.order, self.table)  # type: ignore[arg-type]


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def order(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply `other` first."""
        return Permutation(tuple(self.images[v] for v in other.images))


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(n)):
        yield Permutation(p)


def table_count(n: int) -> int:
    return n ** (n * n)


def from_index(n: int, k: int) -> Groupoid:
    if not 0 <= k < table_count(n):
        raise ValueError(f"index {k} out of range for order {n}")
    cells = [0] * (n * n)
    for c in range(n * n - 1, -1, -1):
        k, cells[c] = divmod(k, n)
    return Groupoid(n, tuple(cells))


def to_index(g: Groupoid) -> int:
    return encode(g.table, g.order)


def encode(cells: Iterable[int], n: int) -> int:
    k = 0
    for v in cells:
        k = k * n + v
    return k


def all_groupoids(n: int) -> Iterator[Groupoid]:
    for k in range(table_count(n)):
        yield from_index(n, k)


def apply_iso(g: Groupoid, p: Permutation) -> Groupoid:
    """Relabel `g` by `p`: the result maps ``p(x), p(y)`` to ``p(x*y)``."""
    n = g.order
    if p.order != n:
        raise ValueError(f"permutation of order {p.order} applied to groupoid of order {n}")
    out = [0] * (n * n)
    img = p.images
    for x in range(n):
        for y in range(n):
            out[img[x] * n + img[y]] = img[g.table[x * n + y]]
    return Groupoid(n, tuple(out))


@lru_cache(maxsize=None)
def _relabel_maps(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """For each permutation p: (source cell for each target cell, images of p)."""
    maps = []
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, v in enumerate(perm):
            inv[v] = i
        src = tuple(inv[c // n] * n + inv[c % n] for c in range(n * n))
        maps.append((src, perm))
    return tuple(maps)


def canonical_table(g: Groupoid) -> tuple[int, ...]:
    """Lexicographically least relabeling of the table."""
    t = g.table
    return min(tuple(perm[t[s]] for s in src) for src, perm in _relabel_maps(g.order))


def canonical_index(g: Groupoid) -> int:
    """Least dense index over the isomorphism orbit of `g`."""
    # Big-endian encoding preserves lexicographic order of equal-length tables.
    return encode(canonical_table(g), g.order)


def canonical_form(g: Groupoid) -> Groupoid:
    return Groupoid(g.order, canonical_table(g))


def isomorphic(a: Groupoid, b: Groupoid) -> bool:
    return a.order == b.order and canonical_table(a) == canonical_table(b)


def opposite(g: Groupoid) -> Groupoid:
    """The (12)-parastrophe: ``x o y = y * x``."""
    n = g.order
    return Groupoid(n, tuple(g.table[y * n + x] for x in range(n) for y in range(n)))


def is_quasigroup(g: Groupoid) -> bool:
    n = g.order
    full = set(range(n))
    rows = g.rows()
    return all(set(r) == full for r in rows) and all(set(c) == full for c in zip(*rows))


def is_associative(g: Groupoid) -> bool:
    n, t = g.order, g.table
    for x in range(n):
        for y in range(n):
            xy = t[x * n + y]
            for z in range(n):
                if t[xy * n + z] != t[x * n + t[y * n + z]]:
                    return False
    return True


def is_commutative(g: Groupoid) -> bool:
    return opposite(g) == g


def orbit(g: Groupoid) -> set[Groupoid]:
    return {apply_iso(g, p) for p in all_permutations(g.order)}


def automorphism_count(g: Groupoid) -> int:
    """Stabilizer size; ``n! / automorphism_count`` is the orbit length."""
    return math.factorial(g.order) // len(orbit(g))


# --- Cayley-table text format ----------------------------------------------

def format_table(g: Groupoid) -> str:
    """``order n`` header, then n rows of 1-based entries."""
    lines = [f"order {g.order}"]
    lines += [" ".join(str(v + 1) for v in row) for row in g.rows()]
    return "\n".join(lines) + "\n"


def parse_tables(text: str) -> list[Groupoid]:
    """Read every table in `text`; blank lines and ``#`` comments are skipped."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    out = []
    i = 0
    while i < len(lines):
        head = lines[i].split()
        if len(head) != 2 or head[0] != "order" or not head[1].isdigit():
            raise ValueError(f"expected 'order N' header, got {lines[i]!r}")
        n = int(head[1])
        body = lines[i + 1:i + 1 + n]
        if len(body) != n:
            raise ValueError(f"table of order {n} is truncated")
        rows = [[int(tok) for tok in ln.split()] for ln in body]
        out.append(Groupoid.from_rows_1based(rows))
        i += 1 + n
    return out


def parse_table(text: str) -> Groupoid:
    tables = parse_tables(text)
    if len(tables) != 1:
        raise ValueError(f"expected one table, found {len(tables)}")
    return tables[0]
