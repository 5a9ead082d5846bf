"""Terms and identities over a single implicit binary operation.

Surface syntax
--------------
Variables are single lowercase letters.  Juxtaposition is a product and
binds tighter than ``*``; both are left-associative and parentheses group::

    xx*yz      ->  (x.x).(y.z)
    x(xy*z)    ->  x.((x.y).z)
    xyz        ->  (x.y).z

``·``, ``∗`` and the TeX macros ``\\ast`` / ``\\cdot`` are accepted as
synonyms for ``*``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Mapping, Optional, Union

if TYPE_CHECKING:
    from .groupoid import Groupoid, PartialGroupoid


class IdentitySyntaxError(ValueError):
    """Raised for malformed identity text."""


class VariableMismatchError(ValueError):
    """Raised when the two sides of an identity use different variables."""


class UnboundVariableError(KeyError):
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if len(self.name) != 1 or not ("a" <= self.name <= "z"):
            raise ValueError(f"variable must be one lowercase letter, got {self.name!r}")

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Prod:
    left: "Term"
    right: "Term"

    def __repr__(self):
        return f"({self.left!r}.{self.right!r})"


Term = Union[Var, Prod]


def free_variables(t: Term) -> list[str]:
    """Distinct variable names of `t` in order of first occurrence."""
    seen: dict[str, None] = {}
    for leaf in leaves(t):
        seen.setdefault(leaf, None)
    return list(seen)


def leaves(t: Term) -> Iterator[str]:
    """Variable occurrences, left to right (with repetition)."""
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            yield node.name
        else:
            stack.append(node.right)
            stack.append(node.left)


def size(t: Term) -> int:
    """Number of products in `t`."""
    if isinstance(t, Var):
        return 0
    return 1 + size(t.left) + size(t.right)


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    name: Optional[str] = None
    abbrev: Optional[str] = None

    def __post_init__(self):
        left, right = set(free_variables(self.lhs)), set(free_variables(self.rhs))
        if left != right:
            raise VariableMismatchError(
                f"sides use different variables: {sorted(left)} vs {sorted(right)}"
            )

    @property
    def variables(self) -> list[str]:
        return free_variables(self.lhs)

    def same_terms(self, other: "Identity") -> bool:
        """Structural equality of the two sides, ignoring labels."""
        return self.lhs == other.lhs and self.rhs == other.rhs

    def __str__(self):
        return format_identity(self)


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s+|\\ast\b|\\cdot\b|[a-z]|[()=*·∗]|.", re.S)
_STAR = {"*", "·", "∗", "\\ast", "\\cdot"}


def _tokenize(text: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if tok.isspace():
            continue
        if tok in _STAR:
            out.append("*")
        elif len(tok) == 1 and ("a" <= tok <= "z" or tok in "()="):
            out.append(tok)
        else:
            raise IdentitySyntaxError(f"illegal character {tok!r} at offset {m.start()}")
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def star_expr(self) -> Term:
        t = self.jux_expr()
        while self.peek() == "*":
            self.pos += 1
            t = Prod(t, self.jux_expr())
        return t

    def jux_expr(self) -> Term:
        t = self.atom()
        while self.peek() is not None and (self.peek() == "(" or self.peek().isalpha()):
            t = Prod(t, self.atom())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise IdentitySyntaxError("unexpected end of input")
        if tok == "(":
            self.pos += 1
            t = self.star_expr()
            if self.peek() != ")":
                raise IdentitySyntaxError("unbalanced parentheses")
            self.pos += 1
            return t
        if tok.isalpha():
            self.pos += 1
            return Var(tok)
        raise IdentitySyntaxError(f"unexpected {tok!r}")


def parse_term(text: str) -> Term:
    toks = _tokenize(text)
    if not toks:
        raise IdentitySyntaxError("empty term")
    p = _Parser(toks)
    t = p.star_expr()
    if p.peek() is not None:
        raise IdentitySyntaxError(
            "unbalanced parentheses" if p.peek() == ")" else f"unexpected {p.peek()!r}"
        )
    return t


def parse_identity(text: str, name: Optional[str] = None, abbrev: Optional[str] = None) -> Identity:
    """Parse ``lhs = rhs``.

    >>> parse_identity("xx*yz=xy*xz").lhs
    ((x.x).(y.z))
    """
    sides = text.split("=")
    if len(sides) != 2:
        raise IdentitySyntaxError(f"expected exactly one '=', got {len(sides) - 1}")
    lhs_text, rhs_text = sides
    if not lhs_text.strip() or not rhs_text.strip():
        raise IdentitySyntaxError("empty side")
    return Identity(parse_term(lhs_text), parse_term(rhs_text), name=name, abbrev=abbrev)


# --- formatting ------------------------------------------------------------

def _wrap(t: Term) -> str:
    return t.name if isinstance(t, Var) else "(" + format_term(t) + ")"


def format_term(t: Term, style: str = "table") -> str:
    """Render a term.

    ``style="table"`` parenthesizes every non-variable operand of a product,
    the way the published identity tables are written (``x(y(zx))``).
    ``style="compact"`` uses the fewest parentheses the grammar allows.
    """
    if style == "compact":
        return _compact(t)[0]
    if style != "table":
        raise ValueError(f"unknown style {style!r}")
    if isinstance(t, Var):
        return t.name
    return _wrap(t.left) + _wrap(t.right)


# Each helper returns (text, number of parenthesis pairs).

def _compact_jux(t: Term) -> tuple[str, int]:
    if isinstance(t, Var):
        return t.name, 0
    left, lp = _compact_jux(t.left)
    right, rp = _compact_atom(t.right)
    return left + right, lp + rp


def _compact_atom(t: Term) -> tuple[str, int]:
    if isinstance(t, Var):
        return t.name, 0
    body, bp = _compact(t)
    return "(" + body + ")", bp + 1


def _compact(t: Term) -> tuple[str, int]:
    best = _compact_jux(t)
    if isinstance(t, Prod) and isinstance(t.right, Prod):
        left, lp = _compact(t.left)
        right, rp = _compact_jux(t.right)
        if lp + rp < best[1]:
            best = (left + "*" + right, lp + rp)
    return best


def format_identity(ident: Identity, style: str = "table") -> str:
    return f"{format_term(ident.lhs, style)} = {format_term(ident.rhs, style)}"


# --- structural operations -------------------------------------------------

def is_bol_moufang_type(ident: Identity) -> bool:
    """Three variables; one occurs twice on each side, the others once on each side."""
    variables = ident.variables
    if len(variables) != 3:
        return False
    left = {v: 0 for v in variables}
    right = dict(left)
    for v in leaves(ident.lhs):
        left[v] += 1
    for v in leaves(ident.rhs):
        right[v] += 1
    twice = [v for v in variables if left[v] == 2 and right[v] == 2]
    once = [v for v in variables if left[v] == 1 and right[v] == 1]
    return len(twice) == 1 and len(once) == 2


def mirror_term(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    return Prod(mirror_term(t.right), mirror_term(t.left))


def mirror(ident: Identity) -> Identity:
    """Dual identity: every product reversed on both sides."""
    return Identity(mirror_term(ident.lhs), mirror_term(ident.rhs))


def rename(t: Term, mapping: Mapping[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(mapping[t.name])
    return Prod(rename(t.left, mapping), rename(t.right, mapping))


_CANON_NAMES = "xyzuvwabcdefghijklmnopqrst"


def normalize_variables(ident: Identity) -> Identity:
    """Rename variables to x, y, z, u, v, ... by first occurrence in the lhs."""
    mapping = {v: _CANON_NAMES[i] for i, v in enumerate(ident.variables)}
    return Identity(rename(ident.lhs, mapping), rename(ident.rhs, mapping),
                    name=ident.name, abbrev=ident.abbrev)


def equal_up_to_renaming(a: Identity, b: Identity) -> bool:
    return normalize_variables(a).same_terms(normalize_variables(b))


def swap_sides(ident: Identity) -> Identity:
    return Identity(ident.rhs, ident.lhs, name=ident.name, abbrev=ident.abbrev)


def is_self_dual(ident: Identity) -> bool:
    """Mirror image equals the identity up to renaming, in either orientation."""
    m = mirror(ident)
    return equal_up_to_renaming(ident, m) or equal_up_to_renaming(ident, swap_sides(m))


# --- evaluation ------------------------------------------------------------

def evaluate(t: Term, g: "Groupoid", assignment: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise UnboundVariableError(t.name) from None
    return g.op(evaluate(t.left, g, assignment), evaluate(t.right, g, assignment))


def evaluate_partial(t: Term, pg: "PartialGroupoid", assignment: Mapping[str, int]) -> Optional[int]:
    """Like `evaluate`, but ``None`` when an unfilled cell is needed."""
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise UnboundVariableError(t.name) from None
    left = evaluate_partial(t.left, pg, assignment)
    if left is None:
        return None
    right = evaluate_partial(t.right, pg, assignment)
    if right is None:
        return None
    return pg.get(left, right)


def assignments(variables: list[str], n: int) -> Iterator[dict[str, int]]:
    for values in itertools.product(range(n), repeat=len(variables)):
        yield dict(zip(variables, values))


def holds(ident: Identity, g: "Groupoid") -> bool:
    """True iff `ident` is satisfied by every assignment in `g`."""
    for a in assignments(ident.variables, g.order):
        if evaluate(ident.lhs, g, a) != evaluate(ident.rhs, g, a):
            return False
    return True
