"""
When "supported" asks only for a type
=====================================

The support clause asks that every good opponent choice be optimal for some
deemed-possible type carrying u.  It does not ask that the pair (choice,
type) be deemed possible.  A type can then push the supported choice behind
a later level and still pass, and a choice outside the IA survivors slips
through.  The pairwise variant closes the gap.
"""
from fractions import Fraction

from lexcar.beliefs import BeliefLevel, LexBelief, TypeId, format_belief
from lexcar.game import UtilityFn, make_game
from lexcar.incomplete import IncompleteModel, common_support_condition, construct_supporting_utility
from lexcar.solver import iterated_admissibility

# player 2: a and c tie, d is worse.  player 1: X is good against a and d,
# Y against a and c, so Y weakly dominates X once d is gone.
g = make_game(["X", "Y"], ["a", "c", "d"], [[1, 0, 1], [1, 1, 0]], [[1, 1], [1, 1], [0, 0]])
print("IA rounds:", iterated_admissibility(g).rounds)

x, y, xv, yv = (TypeId(1, n) for n in ("x", "y", "xv", "yv"))
j, jv, jw = (TypeId(2, n) for n in ("j", "jv", "jw"))

# x sees a with j first, then c and d with types that like c and d.
bx = LexBelief([BeliefLevel.point("a", j), BeliefLevel({("c", jv): Fraction(1, 3), ("d", jw): Fraction(2, 3)})])
by = LexBelief([BeliefLevel({("a", j): Fraction(1, 2), ("c", j): Fraction(1, 2)}), BeliefLevel.point("d", jw)])
bj = LexBelief([
    BeliefLevel({("X", x): Fraction(1, 2), ("Y", y): Fraction(1, 2)}),
    BeliefLevel({("Y", xv): Fraction(1, 2), ("X", yv): Fraction(1, 2)}),
])
f = g.form
likes = lambda z: UtilityFn.from_mapping(f, 2, {(c, o): Fraction(int(c == z)) for c in "acd" for o in "XY"})
m = IncompleteModel(
    f, g.utilities,
    {x: g.u(1), y: g.u(1), xv: construct_supporting_utility(f, 1, ["Y"], bx),
     yv: construct_supporting_utility(f, 1, ["X"], by), j: g.u(2), jv: likes("c"), jw: likes("d")},
    {x: bx, y: by, xv: bx, yv: by, j: bj, jv: bj, jw: bj},
)

# %%
print("x believes", format_belief(bx), "and chooses", sorted(m.optimal(x)))
print("the common support condition, literal:  ", {str(t): v for t, v in common_support_condition(m).items()})
print("the common support condition, pairwise: ", {str(t): v for t, v in common_support_condition(m, pairwise=True).items()})
