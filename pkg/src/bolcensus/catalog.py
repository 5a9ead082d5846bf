"""Built-in identity catalog and the ``name;abbrev;formula`` file format."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from .terms import Identity, mirror, normalize_variables, parse_identity


class Source(str, Enum):
    TABLE1 = "Table1"
    SECTION_2_1 = "Section2.1"
    SECTION_2_2 = "Section2.2"
    SECTION_2_3 = "Section2.3"
    SECTION_2_4 = "Section2.4"
    DERIVED_DUAL = "DerivedDual"
    USER = "User"


@dataclass(frozen=True)
class CatalogEntry:
    identity: Identity
    source: Source
    formula: str  # as written at the source

    @property
    def name(self) -> str:
        return self.identity.name or ""

    @property
    def abbrev(self) -> str:
        return self.identity.abbrev or ""

    @property
    def slug(self) -> str:
        return slugify(self.name)


# Order-3 groupoid counts are stored next to the formulas they belong to.
_TABLE1 = """\
Semigroups;SGR;x(yz) = (xy)z;113
Extra;EL;x(y(zx)) = ((xy)z)x;239
Moufang;ML;(xy)(zx) = (x(yz))x;196
Left Bol;LB;x(y(xz)) = (x(yx))z;215
Right Bol;RB;y((xz)x) = ((yx)z)x;215
C-loops;CL;y(x(xz)) = ((yx)x)z;133
LC-loops;LC;(xx)(yz) = (x(xy))z;220
RC-loops;RC;y((zx)x) = (yz)(xx);220
Middle Nuclear Square;MN;y((xx)z) = (y(xx))z;350
Right Nuclear Square;RN;y(z(xx)) = (yz)(xx);932
Left Nuclear Square;LN;((xx)y)z = (xx)(yz);932
Comm. Moufang;CM;(xy)(xz) = (xx)(zy);297
Abelian Group;AG;x(yz) = (yx)z;91
Comm. C-loop;CC;(y(xy))z = x(y(yz));169
Comm. Alternative;CA;((xx)y)z = z(x(yx));110
Comm. Nuclear square;CN;((xx)y)z = (xx)(zy);472
Comm. loops;CP;((yx)x)z = z(x(yx));744
Cheban 1;C1;x((xy)z) = (yx)(xz);219
Cheban 2;C2;x((xy)z) = (y(zx))x;153
Lonely I;L1;(x(xy))z = y((zx)x);117
Cheban I Dual;CD;(yx)(xz) = (y(zx))x;219
Lonely II;L2;(x(xy))z = y((xx)z);157
Lonely III;L3;(y(xx))z = y((zx)x);157
Mate I;M1;(x(xy))z = ((yz)x)x;111
Mate II;M2;(y(xx))z = ((yz)x)x;196
Mate III;M3;x(x(yz)) = y((zx)x);111
Mate IV;M4;x(x(yz)) = y((xx)z);196
Triad I;T1;(xx)(yz) = y(z(xx));162
Triad II;T2;((xx)y)z = y(z(xx));180
Triad III;T3;((xx)y)z = (yz)(xx);162
Triad IV;T4;((xx)y)z = ((yz)x)x;132
Triad V;T5;x(x(yz)) = y(z(xx));132
Triad VI;T6;(xx)(yz) = (yz)(xx);1419
Triad VII;T7;((xx)y)z = ((yx)x)z;428
Triad VIII;T8;(xx)(yz) = y((zx)x);120
Triad IX;T9;(x(xy))z = y(z(xx));102
Frute;FR;(x(xy))z = (y(zx))x;129
Crazy Loop;CR;(x(xy))z = (yx)(xz);136
Krypton;KL;((xx)y)z = (x(yz))x;268
"""

_SECTION2 = [
    ("Left semimedial", "LSM", "xx*yz=xy*xz", Source.SECTION_2_1),
    ("Right semimedial", "RSM", "xy*zz=xz*yz", Source.SECTION_2_1),
    ("Cote", "COT", "x(xy*z) = (z*xx)y", Source.SECTION_2_2),
    ("Cote dual", "COTD", r"(z\ast yx)x = y(xx \ast z)", Source.SECTION_2_2),
    ("Manin", "MAN", "x(y*xz) = (xx*y)z", Source.SECTION_2_3),
    ("Manin dual", "MAND", r"(zx\ast y)x = z(y\ast xx)", Source.SECTION_2_3),
    ("Identity 1", "ID1", r"(xy\ast x)z  = (y\ast xz) x", Source.SECTION_2_4),
    ("Identity 1 dual", "ID1D", r"z(x\ast yx) = x(zx\ast y)", Source.SECTION_2_4),
]

# Pairs whose printed formulas are mirror images of each other up to renaming.
DUAL_PAIRS = [("LSM", "RSM"), ("COT", "COTD"), ("MAN", "MAND"), ("ID1", "ID1D")]


def slugify(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


def _build() -> tuple[list[CatalogEntry], dict[str, int]]:
    entries = []
    table1_counts = {}
    for line in _TABLE1.splitlines():
        name, abbrev, formula, count = line.split(";")
        entries.append(CatalogEntry(parse_identity(formula, name, abbrev), Source.TABLE1, formula))
        table1_counts[abbrev] = int(count)
    for name, abbrev, formula, source in _SECTION2:
        entries.append(CatalogEntry(parse_identity(formula, name, abbrev), source, formula))
    return entries, table1_counts


CATALOG, TABLE1_COUNTS = _build()
TABLE1 = [e for e in CATALOG if e.source is Source.TABLE1]
SECTION2 = [e for e in CATALOG if e.source is not Source.TABLE1]

_ALIASES = {
    "left-semimedial": "LSM",
    "right-semimedial": "RSM",
    "cote": "COT",
    "cote-dual": "COTD",
    "manin": "MAN",
    "manin-dual": "MAND",
    "identity-1": "ID1",
    "identity-1-dual": "ID1D",
}


def _index() -> dict[str, CatalogEntry]:
    idx: dict[str, CatalogEntry] = {}
    for e in CATALOG:
        idx[e.abbrev.lower()] = e
        idx.setdefault(e.slug, e)
    for alias, abbrev in _ALIASES.items():
        idx[alias] = idx[abbrev.lower()]
    return idx


_BY_KEY = _index()


def lookup(key: str) -> CatalogEntry:
    """Find an entry by abbreviation (``SGR``) or kebab-case name (``left-bol``).

    A ``-dual`` suffix on any key without its own entry yields the mirrored
    identity, e.g. ``ML-dual``.
    """
    k = key.strip().lower()
    if k in _BY_KEY:
        return _BY_KEY[k]
    if k.endswith("-dual") and k[:-5] in _BY_KEY:
        base = _BY_KEY[k[:-5]]
        dual = normalize_variables(mirror(base.identity))
        dual = Identity(dual.lhs, dual.rhs, name=f"{base.name} dual", abbrev=f"{base.abbrev}-dual")
        return CatalogEntry(dual, Source.DERIVED_DUAL, str(dual))
    raise KeyError(f"unknown identity {key!r}")


def select(selection: str) -> list[CatalogEntry]:
    """``table1`` | ``paper`` (Section 2 identities) | ``all`` | ``file:PATH``."""
    if selection == "table1":
        return list(TABLE1)
    if selection == "paper":
        return list(SECTION2)
    if selection == "all":
        return list(CATALOG)
    if selection.startswith("file:"):
        return read_catalog(Path(selection[5:]).read_text(encoding="utf-8"))
    raise KeyError(f"unknown catalog {selection!r}")


# --- file format -----------------------------------------------------------

def read_catalog(text: str) -> list[CatalogEntry]:
    entries = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split(";")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'name;abbrev;formula'")
        name, abbrev, formula = (p.strip() for p in parts)
        if abbrev and abbrev in seen:
            raise ValueError(f"line {lineno}: duplicate abbreviation {abbrev!r}")
        seen.add(abbrev)
        ident = parse_identity(formula, name or None, abbrev or None)
        entries.append(CatalogEntry(ident, Source.USER, formula))
    return entries


def write_catalog(entries: Iterable[CatalogEntry], header: Optional[str] = None) -> str:
    lines = []
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    lines += [f"{e.name};{e.abbrev};{e.formula}" for e in entries]
    return "\n".join(lines) + "\n"
