"""
Algebraic self-checks
=====================

Every truth-value carrier must be a (possibly partial) commutative
semiring with a natural order, and the branching representation must fit
it: splitting a branching value over a disjoint union is injective, its
partiality mirrors the partiality of addition, and extending relations
along branching is unital and linear.  This script prints the full
reports for all three carriers.
"""

from ltbe import SemiringKind, check_monad_consistency, check_semiring_laws

for kind in SemiringKind:
    print(check_semiring_laws(kind, samples=5000, seed=42).format())
    print(check_monad_consistency(kind, size_bound=2).format())
    print()

print("note: for prob the split map is injective but not surjective; the")
print("report shows a witness pair of restrictions whose masses exceed 1,")
print("which is exactly why probabilistic addition must stay partial.")
