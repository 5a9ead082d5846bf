"""Published and derived counts used by ``bolcensus verify``."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .catalog import TABLE1, TABLE1_COUNTS


@dataclass(frozen=True)
class Fixture:
    key: str  # catalog abbreviation or name
    order: int
    expected_total: int
    expected_iso: Optional[int] = None

    def label(self) -> str:
        iso = "" if self.expected_iso is None else f" iso={self.expected_iso}"
        return f"{self.key} n={self.order} total={self.expected_total}{iso}"


PAPER_FIXTURES: list[Fixture] = [
    *(Fixture(e.abbrev, 3, TABLE1_COUNTS[e.abbrev]) for e in TABLE1),
    Fixture("LSM", 2, 10, 7),
    Fixture("LSM", 3, 399),
    Fixture("RSM", 3, 399),
    Fixture("COT", 2, 6, 3),
    Fixture("COT", 3, 99),
    Fixture("COTD", 3, 99),
    Fixture("MAN", 2, 10, 7),
    Fixture("MAN", 3, 167),
    Fixture("MAND", 3, 167),
    Fixture("ID1", 2, 6, 3),
    Fixture("ID1", 3, 117),
    Fixture("ID1D", 3, 117),
]

# Frozen from the exhaustive engine, cross-checked by brute force in the tests.
DERIVED_FIXTURES: list[Fixture] = [
    Fixture("SGR", 1, 1, 1),
    Fixture("SGR", 2, 8, 5),
    Fixture("RSM", 2, 10, 7),
    Fixture("COTD", 2, 6, 3),
    Fixture("MAND", 2, 10, 7),
    Fixture("ID1D", 2, 6, 3),
    Fixture("SGR", 4, 3492),
]


def read_fixtures(text: str) -> list[Fixture]:
    """Lines of ``key;order;total[;iso]``; ``#`` starts a comment line."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) not in (3, 4):
            raise ValueError(f"line {lineno}: expected 'key;order;total[;iso]'")
        iso = int(parts[3]) if len(parts) == 4 and parts[3] else None
        out.append(Fixture(parts[0], int(parts[1]), int(parts[2]), iso))
    return out


def select_fixtures(selection: str) -> list[Fixture]:
    if selection == "paper":
        return list(PAPER_FIXTURES)
    if selection == "derived":
        return list(DERIVED_FIXTURES)
    if selection == "all":
        return PAPER_FIXTURES + DERIVED_FIXTURES
    if selection.startswith("file:"):
        return read_fixtures(Path(selection[5:]).read_text(encoding="utf-8"))
    raise KeyError(f"unknown fixture set {selection!r}")
