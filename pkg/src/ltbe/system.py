"""Finite transition models: type stacks, systems, and specifications.

A type stack is an outside-in list of layers, each either a polynomial
expression or a branching layer of the stack's kind; ``[G, T, F]`` means
"a G-shaped observation of branching over F-shaped steps".  A system is a
finite carrier with one transition value per state, well typed against the
stack.  A specification is the branching-free case and describes the
linear-time behaviours to test against.

The file format is JSON::

    {
      "kind": "bool" | "prob" | "tropical",
      "stack": ["<functor expr>" | "T", ...],
      "states": ["c0", ...],
      "transitions": {"c0": <value>, ...}
    }

where a polynomial value is a tagged node ``{"inj": i, "of": v}``,
``{"pair": [v, v]}``, ``{"atom": "a"}``, ``{"tuple": {"a": v, ...}}`` or,
at the innermost position, ``{"state": "c"}``; a branching value is a list
of successor values (bool) or a list of ``{"term": v, "weight": w}``
objects (prob and tropical).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .branching import BranchVal, validate_branchval
from .errors import (
    DegenerateStack,
    ParseError,
    TransitionTypeError,
    ValidationError,
)
from .polyfunctor import (
    Atom,
    Const,
    Coprod,
    Id,
    Inj,
    Pair,
    PolyExpr,
    Power,
    Prod,
    StateRef,
    TupleTerm,
    expr_to_text,
    parse_expr,
)
from .semiring import SemiringKind, from_json_value, one, to_json_value


@dataclass(frozen=True, slots=True)
class PolyLayer:
    expr: PolyExpr


@dataclass(frozen=True, slots=True)
class BranchLayer:
    pass


Layer = PolyLayer | BranchLayer


@dataclass(frozen=True, slots=True)
class TypeStack:
    """An outside-in composition of polynomial and branching layers."""

    kind: SemiringKind
    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        if not self.layers:
            raise ValidationError("a type stack needs at least one layer")

    @property
    def is_linear(self) -> bool:
        return all(isinstance(layer, PolyLayer) for layer in self.layers)

    def layer_texts(self) -> list[str]:
        return [
            "T" if isinstance(layer, BranchLayer) else expr_to_text(layer.expr)
            for layer in self.layers
        ]


def linear_part(stack: TypeStack) -> TypeStack:
    """The stack with every branching layer erased; the type of specifications."""
    layers = tuple(layer for layer in stack.layers if isinstance(layer, PolyLayer))
    if not layers:
        raise DegenerateStack("the stack has no polynomial layer, so no observable shape")
    return TypeStack(stack.kind, layers)


# --- transition value codec ----------------------------------------------------

def _decode_value(layers: tuple[Layer, ...], kind: SemiringKind, raw: object, states, path: str):
    if not layers:
        if not (isinstance(raw, dict) and set(raw) == {"state"}):
            raise TransitionTypeError(f"{path}: expected a state reference, got {raw!r}")
        target = raw["state"]
        if target not in states:
            raise ValidationError(f"{path}: unknown state id {target!r}")
        return target
    head, rest = layers[0], layers[1:]
    if isinstance(head, BranchLayer):
        if not isinstance(raw, list):
            raise TransitionTypeError(f"{path}: expected a branching list, got {raw!r}")
        pairs = []
        for i, elem in enumerate(raw):
            at = f"{path}[{i}]"
            if kind is SemiringKind.BOOL:
                pairs.append((_decode_value(rest, kind, elem, states, at), one(kind)))
            else:
                if not isinstance(elem, dict) or set(elem) != {"term", "weight"}:
                    raise TransitionTypeError(
                        f"{at}: expected {{'term': ..., 'weight': ...}}, got {elem!r}"
                    )
                weight = from_json_value(kind, elem["weight"])
                pairs.append((_decode_value(rest, kind, elem["term"], states, at), weight))
        try:
            bv = BranchVal(kind, tuple(pairs))
        except ValidationError as exc:
            raise ValidationError(f"{path}: {exc}") from None
        if not validate_branchval(bv):
            raise ValidationError(f"{path}: branching weights sum to more than 1")
        return bv
    return _decode_term(head.expr, rest, kind, raw, states, path)


def _decode_term(expr: PolyExpr, rest: tuple[Layer, ...], kind, raw, states, path: str):
    if isinstance(expr, Id):
        return StateRef(_decode_value(rest, kind, raw, states, path))
    if not isinstance(raw, dict):
        raise TransitionTypeError(f"{path}: expected a term node, got {raw!r}")
    if isinstance(expr, Const):
        if set(raw) != {"atom"}:
            raise TransitionTypeError(f"{path}: expected an atom node, got {raw!r}")
        if raw["atom"] not in expr.labels:
            raise TransitionTypeError(f"{path}: label {raw['atom']!r} not in {expr.labels!r}")
        return Atom(raw["atom"])
    if isinstance(expr, Prod):
        if set(raw) != {"pair"} or not isinstance(raw["pair"], list) or len(raw["pair"]) != 2:
            raise TransitionTypeError(f"{path}: expected a pair node, got {raw!r}")
        fst = _decode_term(expr.left, rest, kind, raw["pair"][0], states, path + ".pair[0]")
        snd = _decode_term(expr.right, rest, kind, raw["pair"][1], states, path + ".pair[1]")
        return Pair(fst, snd)
    if isinstance(expr, Coprod):
        if set(raw) != {"inj", "of"}:
            raise TransitionTypeError(f"{path}: expected an injection node, got {raw!r}")
        index = raw["inj"]
        if not isinstance(index, int) or not 0 <= index < len(expr.branches):
            raise TransitionTypeError(f"{path}: injection index {index!r} out of range")
        arg = _decode_term(expr.branches[index], rest, kind, raw["of"], states, path + f".inj{index}")
        return Inj(index, arg)
    assert isinstance(expr, Power)
    if set(raw) != {"tuple"} or not isinstance(raw["tuple"], dict):
        raise TransitionTypeError(f"{path}: expected a tuple node, got {raw!r}")
    if set(raw["tuple"]) != set(expr.exponent):
        raise TransitionTypeError(
            f"{path}: tuple components {sorted(raw['tuple'])!r} do not match exponent {expr.exponent!r}"
        )
    comps = tuple(
        _decode_term(expr.body, rest, kind, raw["tuple"][a], states, path + f".{a}")
        for a in expr.exponent
    )
    return TupleTerm(comps)


def _encode_value(layers: tuple[Layer, ...], kind: SemiringKind, value) -> object:
    if not layers:
        return {"state": value}
    head, rest = layers[0], layers[1:]
    if isinstance(head, BranchLayer):
        assert isinstance(value, BranchVal)
        if kind is SemiringKind.BOOL:
            return [_encode_value(rest, kind, item) for item, _ in value.entries]
        return [
            {"term": _encode_value(rest, kind, item), "weight": to_json_value(weight)}
            for item, weight in value.entries
        ]
    return _encode_term(head.expr, rest, kind, value)


def _encode_term(expr: PolyExpr, rest: tuple[Layer, ...], kind, term) -> object:
    if isinstance(expr, Id):
        return _encode_value(rest, kind, term.target)
    if isinstance(expr, Const):
        return {"atom": term.label}
    if isinstance(expr, Prod):
        return {
            "pair": [
                _encode_term(expr.left, rest, kind, term.fst),
                _encode_term(expr.right, rest, kind, term.snd),
            ]
        }
    if isinstance(expr, Coprod):
        return {
            "inj": term.index,
            "of": _encode_term(expr.branches[term.index], rest, kind, term.arg),
        }
    assert isinstance(expr, Power)
    return {
        "tuple": {
            a: _encode_term(expr.body, rest, kind, c)
            for a, c in zip(expr.exponent, term.components)
        }
    }


# --- models ---------------------------------------------------------------------

class System:
    """A finite coalgebraic model: states plus one transition value each."""

    def __init__(self, stack: TypeStack, states, transitions: dict) -> None:
        states = tuple(states)
        if len(set(states)) != len(states):
            raise ValidationError("duplicate state ids")
        missing = [s for s in states if s not in transitions]
        if missing:
            raise ValidationError(f"states without transitions: {missing!r}")
        extra = [s for s in transitions if s not in states]
        if extra:
            raise ValidationError(f"transitions for unknown states: {extra!r}")
        self.stack = stack
        self.states = states
        self.transitions = dict(transitions)

    def transition(self, state: str):
        return self.transitions[state]

    @cached_property
    def _branch_values(self) -> dict[int, tuple[BranchVal, ...]]:
        found: dict[int, dict[str, BranchVal]] = {
            i: {} for i, layer in enumerate(self.stack.layers) if isinstance(layer, BranchLayer)
        }

        def walk(idx: int, value) -> None:
            if idx >= len(self.stack.layers):
                return
            layer = self.stack.layers[idx]
            if isinstance(layer, BranchLayer):
                assert isinstance(value, BranchVal)
                found[idx].setdefault(value.key(), value)
                for item, _ in value.entries:
                    walk(idx + 1, item)
            else:
                walk_term(layer.expr, idx, value)

        def walk_term(expr: PolyExpr, idx: int, term) -> None:
            if isinstance(expr, Id):
                walk(idx + 1, term.target)
            elif isinstance(expr, Prod):
                walk_term(expr.left, idx, term.fst)
                walk_term(expr.right, idx, term.snd)
            elif isinstance(expr, Coprod):
                walk_term(expr.branches[term.index], idx, term.arg)
            elif isinstance(expr, Power):
                for c in term.components:
                    walk_term(expr.body, idx, c)

        for state in self.states:
            walk(0, self.transitions[state])
        return {i: tuple(vals[k] for k in sorted(vals)) for i, vals in found.items()}

    def branch_values_at(self, layer_index: int) -> tuple[BranchVal, ...]:
        """Branching values occurring at one branching layer, in canonical order."""
        return self._branch_values[layer_index]

    def to_json(self) -> dict:
        return {
            "kind": self.stack.kind.value,
            "stack": self.stack.layer_texts(),
            "states": list(self.states),
            "transitions": {
                s: _encode_value(self.stack.layers, self.stack.kind, self.transitions[s])
                for s in self.states
            },
        }

    def to_text(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


class SpecSystem(System):
    """A branching-free model describing linear-time behaviours."""

    def __init__(self, stack: TypeStack, states, transitions: dict) -> None:
        if not stack.is_linear:
            raise ValidationError("a specification stack must not contain branching layers")
        super().__init__(stack, states, transitions)


def _parse_common(text: str) -> tuple[TypeStack, tuple[str, ...], dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("model file must be a JSON object")
    for field in ("kind", "stack", "states", "transitions"):
        if field not in doc:
            raise ParseError(f"missing field {field!r}")
    try:
        kind = SemiringKind(doc["kind"])
    except ValueError:
        raise ParseError(f"unknown kind {doc['kind']!r}") from None
    if not isinstance(doc["stack"], list) or not doc["stack"]:
        raise ParseError("'stack' must be a nonempty list")
    layers = []
    for entry in doc["stack"]:
        if entry == "T":
            layers.append(BranchLayer())
        elif isinstance(entry, str):
            try:
                layers.append(PolyLayer(parse_expr(entry)))
            except ValueError as exc:
                raise ParseError(f"bad functor expression {entry!r}: {exc}") from exc
        else:
            raise ParseError(f"bad stack entry {entry!r}")
    stack = TypeStack(kind, tuple(layers))
    if not isinstance(doc["states"], list) or not all(isinstance(s, str) for s in doc["states"]):
        raise ParseError("'states' must be a list of state ids")
    states = tuple(doc["states"])
    if not isinstance(doc["transitions"], dict):
        raise ParseError("'transitions' must be an object")
    transitions = {
        state: _decode_value(stack.layers, kind, raw, set(states), f"transitions[{state!r}]")
        for state, raw in doc["transitions"].items()
    }
    return stack, states, transitions


def parse_system(text: str) -> System:
    """Parse and validate a system file."""
    return System(*_parse_common(text))


def parse_spec(text: str) -> SpecSystem:
    """Parse and validate a specification file (no branching layers allowed)."""
    return SpecSystem(*_parse_common(text))
