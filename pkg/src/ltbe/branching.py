"""Finite-support branching values.

One representation covers all three branching disciplines: a branching
value is a finite weight function from inner values (carrier keys, terms,
or deeper branching values) to truth values of the declared kind.  A set
of successors is the bool-weighted special case; the empty support is the
zero branching value (deadlock).

Values are canonical on construction: zero weights are dropped and entries
are sorted by the canonical key of the inner value, which fixes all fold
orders downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KindMismatch, ValidationError
from .polyfunctor import value_key
from .semiring import PROB_EPS, SemiringKind, SemiringValue, one, zero


@dataclass(frozen=True)
class BranchVal:
    """A finite-support weight function representing one branching step."""

    kind: SemiringKind
    entries: tuple[tuple[object, SemiringValue], ...]

    def __post_init__(self) -> None:
        z = zero(self.kind)
        keyed: dict[str, tuple[object, SemiringValue]] = {}
        for item, weight in self.entries:
            if weight.kind is not self.kind:
                raise KindMismatch(
                    f"{weight.kind.value} weight inside a {self.kind.value} branching value"
                )
            if weight.payload == z.payload:
                continue
            k = value_key(item)
            if k in keyed:
                if self.kind is SemiringKind.BOOL:
                    continue  # set semantics: repeated successors collapse
                raise ValidationError(f"duplicate entry {k!r} in branching value")
            keyed[k] = (item, weight)
        normal = tuple(keyed[k] for k in sorted(keyed))
        object.__setattr__(self, "entries", normal)

    def key(self) -> str:
        if self.kind is SemiringKind.BOOL:
            inner = "|".join(value_key(item) for item, _ in self.entries)
        else:
            inner = "|".join(
                f"{value_key(item)}:{weight.payload!r}" for item, weight in self.entries
            )
        return "{" + inner + "}"

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def support_keys(self) -> tuple[str, ...]:
        return tuple(value_key(item) for item, _ in self.entries)

    def total_mass(self) -> float:
        """Sum of weights; only meaningful for prob values."""
        return sum(w.payload for _, w in self.entries)


def dirac(kind: SemiringKind, item: object) -> BranchVal:
    """The single-successor branching value with the unit weight."""
    return BranchVal(kind, ((item, one(kind)),))


def validate_branchval(v: BranchVal) -> bool:
    """Check the carrier constraints of a branching value.

    Construction already enforces canonical support, so the remaining
    constraint is the sub-probability mass bound.
    """
    if v.kind is SemiringKind.PROB:
        return v.total_mass() <= 1.0 + PROB_EPS
    return True
