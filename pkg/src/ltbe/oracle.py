"""Independent bounded-depth evaluator used as ground truth in tests.

This module re-derives the depth-d behaviour matrix by direct structural
recursion over the stored transition values, with inlined per-kind
arithmetic.  It deliberately shares no code with the lifting or engine
modules: agreement between the two routes is the central correctness
check of the package.
"""

from __future__ import annotations

import math

from .errors import StackMismatch
from .polyfunctor import Const, Coprod, Id, Power, Prod
from .relation import ValRel
from .semiring import PROB_EPS, SemiringKind, SemiringValue
from .system import BranchLayer, SpecSystem, System, linear_part


def _raw_one(kind: SemiringKind):
    if kind is SemiringKind.BOOL:
        return True
    if kind is SemiringKind.PROB:
        return 1.0
    return 0


def _raw_zero(kind: SemiringKind):
    if kind is SemiringKind.BOOL:
        return False
    if kind is SemiringKind.PROB:
        return 0.0
    return math.inf


def _raw_add(kind: SemiringKind, a, b):
    if kind is SemiringKind.BOOL:
        return a or b
    if kind is SemiringKind.TROPICAL:
        return min(a, b)
    s = a + b
    assert s <= 1.0 + PROB_EPS, "probability mass escaped [0, 1]"
    return min(s, 1.0)


def _raw_mul(kind: SemiringKind, a, b):
    if kind is SemiringKind.BOOL:
        return a and b
    if kind is SemiringKind.TROPICAL:
        return a + b
    return a * b


def _compare(layers, idx, kind, u, v, table):
    """Depth-step value of system value ``u`` against spec value ``v``."""
    if idx == len(layers):
        return table[(u, v)]
    layer = layers[idx]
    if isinstance(layer, BranchLayer):
        acc = _raw_zero(kind)
        for item, weight in u.entries:
            below = _compare(layers, idx + 1, kind, item, v, table)
            acc = _raw_add(kind, acc, _raw_mul(kind, weight.payload, below))
        return acc
    return _compare_terms(layer.expr, layers, idx, kind, u, v, table)


def _compare_terms(expr, layers, idx, kind, u, v, table):
    if isinstance(expr, Id):
        return _compare(layers, idx + 1, kind, u.target, v.target, table)
    if isinstance(expr, Const):
        return _raw_one(kind) if u.label == v.label else _raw_zero(kind)
    if isinstance(expr, Prod):
        return _raw_mul(
            kind,
            _compare_terms(expr.left, layers, idx, kind, u.fst, v.fst, table),
            _compare_terms(expr.right, layers, idx, kind, u.snd, v.snd, table),
        )
    if isinstance(expr, Coprod):
        if u.index != v.index:
            return _raw_zero(kind)
        return _compare_terms(expr.branches[u.index], layers, idx, kind, u.arg, v.arg, table)
    assert isinstance(expr, Power)
    acc = _raw_one(kind)
    for cu, cv in zip(u.components, v.components):
        acc = _raw_mul(kind, acc, _compare_terms(expr.body, layers, idx, kind, cu, cv, table))
    return acc


def _wrap(kind: SemiringKind, rows, cols, table) -> ValRel:
    return ValRel(
        kind,
        rows,
        cols,
        [[SemiringValue(kind, table[(r, c)]) for c in cols] for r in rows],
    )


def oracle_matrix(sys: System, spec: SpecSystem, depth: int) -> ValRel:
    """The depth-``depth`` behaviour matrix, computed by definitional expansion."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if spec.stack != linear_part(sys.stack):
        raise StackMismatch(
            "the specification stack must be the linear part of the system stack"
        )
    kind = sys.stack.kind
    table = {(c, z): _raw_one(kind) for c in sys.states for z in spec.states}
    for _ in range(depth):
        table = {
            (c, z): _compare(
                sys.stack.layers, 0, kind, sys.transitions[c], spec.transitions[z], table
            )
            for c in sys.states
            for z in spec.states
        }
    return _wrap(kind, sys.states, spec.states, table)


def _compare_pair(layers, idx, kind, u, v, table):
    if idx == len(layers):
        return table[(u, v)]
    layer = layers[idx]
    if isinstance(layer, BranchLayer):
        acc = _raw_zero(kind)
        for x_item, x_weight in u.entries:
            for y_item, y_weight in v.entries:
                below = _compare_pair(layers, idx + 1, kind, x_item, y_item, table)
                joint = _raw_mul(kind, _raw_mul(kind, x_weight.payload, y_weight.payload), below)
                acc = _raw_add(kind, acc, joint)
        return acc
    return _compare_pair_terms(layer.expr, layers, idx, kind, u, v, table)


def _compare_pair_terms(expr, layers, idx, kind, u, v, table):
    if isinstance(expr, Id):
        return _compare_pair(layers, idx + 1, kind, u.target, v.target, table)
    if isinstance(expr, Const):
        return _raw_one(kind) if u.label == v.label else _raw_zero(kind)
    if isinstance(expr, Prod):
        return _raw_mul(
            kind,
            _compare_pair_terms(expr.left, layers, idx, kind, u.fst, v.fst, table),
            _compare_pair_terms(expr.right, layers, idx, kind, u.snd, v.snd, table),
        )
    if isinstance(expr, Coprod):
        if u.index != v.index:
            return _raw_zero(kind)
        return _compare_pair_terms(
            expr.branches[u.index], layers, idx, kind, u.arg, v.arg, table
        )
    assert isinstance(expr, Power)
    acc = _raw_one(kind)
    for cu, cv in zip(u.components, v.components):
        acc = _raw_mul(
            kind, acc, _compare_pair_terms(expr.body, layers, idx, kind, cu, cv, table)
        )
    return acc


def oracle_common(sysA: System, sysB: System, depth: int) -> ValRel:
    """Depth-bounded joint-behaviour matrix of two systems of the same type."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if sysA.stack != sysB.stack:
        raise StackMismatch("the two systems must share one type stack")
    kind = sysA.stack.kind
    table = {(c, d): _raw_one(kind) for c in sysA.states for d in sysB.states}
    for _ in range(depth):
        table = {
            (c, d): _compare_pair(
                sysA.stack.layers, 0, kind, sysA.transitions[c], sysB.transitions[d], table
            )
            for c in sysA.states
            for d in sysB.states
        }
    return _wrap(kind, sysA.states, sysB.states, table)
