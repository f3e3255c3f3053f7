"""Linear-time behaviour values for finite systems with branching.

The package computes, by greatest-fixpoint refinement, a matrix telling
for every pair of a system state and a specification state how far the
system state can exhibit the specification's linear-time behaviour: a
boolean for nondeterministic systems, a probability for sub-probabilistic
ones, and a minimal cost for weighted ones.
"""

from .branching import BranchVal, dirac, validate_branchval
from .engine import (
    FixpointOptions,
    FixpointReport,
    MonadReport,
    behaviour,
    bisimilarity,
    check_monad_consistency,
    common_iterates,
    common_trace,
    iterates,
    step_operator,
)
from .errors import (
    CarrierMismatch,
    CombinatorialLimit,
    DegenerateStack,
    KindMismatch,
    LtbeError,
    MonotonicityViolation,
    ParseError,
    StackMismatch,
    TransitionTypeError,
    UndefinedSum,
    ValidationError,
)
from .lifting import lift_double_extension, lift_egli_milner, lift_extension, lift_poly
from .oracle import oracle_common, oracle_matrix
from .polyfunctor import (
    Atom,
    Const,
    Coprod,
    Id,
    Inj,
    Pair,
    PolyExpr,
    PolyTerm,
    Power,
    Prod,
    StateRef,
    TupleTerm,
    UNIT,
    enumerate_terms,
    expr_to_text,
    parse_expr,
    validate_term,
    value_key,
)
from .relation import ValRel, reindex
from .semiring import (
    INF,
    PROB_EPS,
    LawCheck,
    LawReport,
    SemiringKind,
    SemiringValue,
    add,
    check_semiring_laws,
    gap,
    leq,
    mul,
    one,
    zero,
)
from .system import (
    BranchLayer,
    PolyLayer,
    SpecSystem,
    System,
    TypeStack,
    linear_part,
    parse_spec,
    parse_system,
)

__version__ = "0.1.0"

__all__ = [
    "BranchVal",
    "FixpointOptions",
    "FixpointReport",
    "MonadReport",
    "LawCheck",
    "LawReport",
    "SemiringKind",
    "SemiringValue",
    "ValRel",
    "System",
    "SpecSystem",
    "TypeStack",
    "PolyLayer",
    "BranchLayer",
    "PolyExpr",
    "PolyTerm",
    "behaviour",
    "bisimilarity",
    "common_trace",
    "common_iterates",
    "iterates",
    "step_operator",
    "check_monad_consistency",
    "check_semiring_laws",
    "oracle_matrix",
    "oracle_common",
    "lift_poly",
    "lift_extension",
    "lift_double_extension",
    "lift_egli_milner",
    "parse_system",
    "parse_spec",
    "parse_expr",
    "expr_to_text",
    "linear_part",
    "enumerate_terms",
    "validate_term",
    "validate_branchval",
    "value_key",
    "reindex",
    "dirac",
    "add",
    "mul",
    "leq",
    "gap",
    "zero",
    "one",
]
