"""Polynomial functor expressions and their finite-set terms.

Expressions are built from the identity, finite constants, binary
products, ordered finite coproducts and a power (finite exponent) form.
The textual grammar, used in model files, is:

    expr   := prod ('+' prod)*          n-ary coproduct, branch order kept
    prod   := power ('*' power)*        binary product, left associative
    power  := atom ('^' '{' names '}')*
    atom   := 'Id' | '{' names '}' | '(' expr ')'

so ``{*} + {a,b} * Id`` is "terminate, or emit a label and continue".
Terms of an expression over a finite carrier are enumerated in a fixed
order so relation carriers are reproducible across runs.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .errors import CombinatorialLimit, ParseError

DEFAULT_ENUM_CAP = 10**6


def enum_cap() -> int:
    """Enumeration size cap; the LTBE_ENUM_CAP env var overrides the default."""
    raw = os.environ.get("LTBE_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"LTBE_ENUM_CAP must be an int, got {raw!r}") from exc


# --- expressions -------------------------------------------------------------

class PolyExpr:
    """Base class for functor expressions."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Id(PolyExpr):
    pass


@dataclass(frozen=True, slots=True)
class Const(PolyExpr):
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("constant label set must be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in {self.labels!r}")


@dataclass(frozen=True, slots=True)
class Prod(PolyExpr):
    left: PolyExpr
    right: PolyExpr


@dataclass(frozen=True, slots=True)
class Coprod(PolyExpr):
    branches: tuple[PolyExpr, ...]

    def __post_init__(self) -> None:
        # one branch would be an invisible wrapper the grammar cannot express
        if len(self.branches) < 2:
            raise ValueError("coproduct must have at least two branches")


@dataclass(frozen=True, slots=True)
class Power(PolyExpr):
    exponent: tuple[str, ...]
    body: PolyExpr

    def __post_init__(self) -> None:
        if not self.exponent:
            raise ValueError("power exponent must be nonempty")
        if len(set(self.exponent)) != len(self.exponent):
            raise ValueError(f"duplicate exponent atoms in {self.exponent!r}")


#: The one-point constant functor.
UNIT = Const(("*",))


# --- terms -------------------------------------------------------------------

class PolyTerm:
    """Base class for terms of a functor expression over a carrier.

    Every node renders to a canonical key string via :func:`value_key`;
    carriers of lifted relations are lists of such keys.
    """

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class StateRef(PolyTerm):
    """Identity position; the target is a carrier key or a nested value."""

    target: object

    def key(self) -> str:
        return value_key(self.target)


@dataclass(frozen=True, slots=True)
class Atom(PolyTerm):
    label: str

    def key(self) -> str:
        return "@" + self.label


@dataclass(frozen=True, slots=True)
class Pair(PolyTerm):
    fst: PolyTerm
    snd: PolyTerm

    def key(self) -> str:
        return f"({self.fst.key()},{self.snd.key()})"


@dataclass(frozen=True, slots=True)
class Inj(PolyTerm):
    index: int
    arg: PolyTerm

    def key(self) -> str:
        return f"i{self.index}({self.arg.key()})"


@dataclass(frozen=True, slots=True)
class TupleTerm(PolyTerm):
    components: tuple[PolyTerm, ...]

    def key(self) -> str:
        return "t(" + ";".join(c.key() for c in self.components) + ")"


def value_key(value: object) -> str:
    """Canonical key of a carrier element: a raw id or a structured value."""
    if isinstance(value, str):
        return value
    return value.key()  # type: ignore[attr-defined]


# --- validation and enumeration ----------------------------------------------

def validate_term(expr: PolyExpr, term: PolyTerm, states) -> bool:
    """True iff ``term`` is well typed for ``expr`` over the carrier ``states``.

    Identity positions must hold a plain key that is a member of ``states``.
    """
    state_set = set(states)

    def walk(e: PolyExpr, t: PolyTerm) -> bool:
        if isinstance(e, Id):
            return isinstance(t, StateRef) and isinstance(t.target, str) and t.target in state_set
        if isinstance(e, Const):
            return isinstance(t, Atom) and t.label in e.labels
        if isinstance(e, Prod):
            return isinstance(t, Pair) and walk(e.left, t.fst) and walk(e.right, t.snd)
        if isinstance(e, Coprod):
            return (
                isinstance(t, Inj)
                and 0 <= t.index < len(e.branches)
                and walk(e.branches[t.index], t.arg)
            )
        assert isinstance(e, Power)
        return (
            isinstance(t, TupleTerm)
            and len(t.components) == len(e.exponent)
            and all(walk(e.body, c) for c in t.components)
        )

    return walk(expr, term)


def count_terms(expr: PolyExpr, n_states: int) -> int:
    """Number of terms: the polynomial evaluated at the carrier size."""
    if isinstance(expr, Id):
        return n_states
    if isinstance(expr, Const):
        return len(expr.labels)
    if isinstance(expr, Prod):
        return count_terms(expr.left, n_states) * count_terms(expr.right, n_states)
    if isinstance(expr, Coprod):
        return sum(count_terms(b, n_states) for b in expr.branches)
    assert isinstance(expr, Power)
    return count_terms(expr.body, n_states) ** len(expr.exponent)


def enumerate_terms(expr: PolyExpr, states, cap: int | None = None) -> list[PolyTerm]:
    """All well-typed terms over ``states``, each exactly once, in fixed order.

    Raises :class:`CombinatorialLimit` (before materializing anything) when
    the count exceeds the cap.
    """
    states = list(states)
    if cap is None:
        cap = enum_cap()
    n = count_terms(expr, len(states))
    if n > cap:
        raise CombinatorialLimit(f"{n} terms exceed the enumeration cap of {cap}")

    def build(e: PolyExpr) -> list[PolyTerm]:
        if isinstance(e, Id):
            return [StateRef(s) for s in states]
        if isinstance(e, Const):
            return [Atom(label) for label in e.labels]
        if isinstance(e, Prod):
            rights = build(e.right)
            return [Pair(u, v) for u in build(e.left) for v in rights]
        if isinstance(e, Coprod):
            return [Inj(i, t) for i, b in enumerate(e.branches) for t in build(b)]
        assert isinstance(e, Power)
        body = build(e.body)
        combos: list[tuple[PolyTerm, ...]] = [()]
        for _ in e.exponent:
            combos = [prefix + (t,) for prefix in combos for t in body]
        return [TupleTerm(c) for c in combos]

    return build(expr)


# --- textual grammar -----------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(Id\b|\{[^{}]*\}|[*+^()])")
_ATOM_RE = re.compile(r"[^\s{},]+")


def _parse_atom_list(braced: str) -> tuple[str, ...]:
    inner = braced[1:-1]
    parts = [p.strip() for p in inner.split(",")]
    if any(not p for p in parts):
        raise ParseError(f"empty atom in {braced!r}")
    for p in parts:
        if not _ATOM_RE.fullmatch(p):
            raise ParseError(f"bad atom {p!r} in {braced!r}")
    if len(set(parts)) != len(parts):
        raise ParseError(f"duplicate atoms in {braced!r}")
    return tuple(parts)


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"unexpected input at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_expr(text: str) -> PolyExpr:
    """Parse the textual functor grammar; see the module docstring."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of expression in {text!r}")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_coprod() -> PolyExpr:
        branches = [parse_prod()]
        while peek() == "+":
            take()
            branches.append(parse_prod())
        return branches[0] if len(branches) == 1 else Coprod(tuple(branches))

    def parse_prod() -> PolyExpr:
        node = parse_power()
        while peek() == "*":
            take()
            node = Prod(node, parse_power())
        return node

    def parse_power() -> PolyExpr:
        node = parse_primary()
        while peek() == "^":
            take()
            tok = take()
            if not tok.startswith("{"):
                raise ParseError(f"expected '{{...}}' after '^' in {text!r}")
            node = Power(_parse_atom_list(tok), node)
        return node

    def parse_primary() -> PolyExpr:
        tok = take()
        if tok == "Id":
            return Id()
        if tok.startswith("{"):
            return Const(_parse_atom_list(tok))
        if tok == "(":
            node = parse_coprod()
            if take() != ")":
                raise ParseError(f"missing ')' in {text!r}")
            return node
        raise ParseError(f"unexpected token {tok!r} in {text!r}")

    node = parse_coprod()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens {tokens[pos:]!r} in {text!r}")
    return node


def expr_to_text(expr: PolyExpr) -> str:
    """Render an expression so that ``parse_expr`` reads it back unchanged."""
    if isinstance(expr, Id):
        return "Id"
    if isinstance(expr, Const):
        return "{" + ",".join(expr.labels) + "}"
    if isinstance(expr, Prod):
        left = expr_to_text(expr.left)
        if isinstance(expr.left, Coprod):
            left = f"({left})"
        right = expr_to_text(expr.right)
        if isinstance(expr.right, (Coprod, Prod)):
            right = f"({right})"
        return f"{left} * {right}"
    if isinstance(expr, Coprod):
        parts = []
        for b in expr.branches:
            part = expr_to_text(b)
            if isinstance(b, Coprod):
                part = f"({part})"
            parts.append(part)
        return " + ".join(parts)
    assert isinstance(expr, Power)
    body = expr_to_text(expr.body)
    if isinstance(expr.body, (Coprod, Prod)):
        body = f"({body})"
    return f"{body}^{{{','.join(expr.exponent)}}}"
