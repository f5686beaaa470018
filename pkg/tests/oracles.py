"""Independent reference computations used to cross-check the library.

Nothing here calls the LP or the checkers; each oracle recomputes its answer
from payoffs directly.
"""
import itertools
from fractions import Fraction

from lexcar.beliefs import BeliefLevel, LexBelief, TypeId, marginal_expected_utility_vector
from lexcar.corpus import random_distribution, random_game
from lexcar.game import UtilityFn, make_game
from lexcar.incomplete import IncompleteModel, construct_supporting_utility
from lexcar.solver import iterated_admissibility, weakly_dominated


def grid_mixtures(n, den=8):
    """All mixtures over n items with weights k/den."""
    for ks in itertools.product(range(den + 1), repeat=n):
        if sum(ks) == den:
            yield [Fraction(k, den) for k in ks]


def grid_dominated(A, B, v, c, den=8):
    """A grid mixture over A weakly dominating c on B, or None (one-sided)."""
    for w in grid_mixtures(len(A), den):
        diffs = [sum(wa * v(a, b) for wa, a in zip(w, A)) - v(c, b) for b in B]
        if all(d >= 0 for d in diffs) and any(d > 0 for d in diffs):
            return dict(zip(A, w))
    return None


def replay_certificate(A, B, v, c, mixture):
    """True iff the mixture is a probability vector on A that weakly dominates c on B."""
    if any(a not in A for a in mixture) or any(w < 0 for w in mixture.values()):
        return False
    if sum(mixture.values()) != 1:
        return False
    diffs = [sum(w * v(a, b) for a, w in mixture.items()) - v(c, b) for b in B]
    return all(d >= 0 for d in diffs) and any(d > 0 for d in diffs)


def pure_undominated_brute(A, B, v):
    """Choices in A not weakly dominated by another *pure* choice (a superset
    of the admissible set)."""
    out = []
    for c in A:
        if not any(
            all(v(a, b) >= v(c, b) for b in B) and any(v(a, b) > v(c, b) for b in B)
            for a in A if a != c
        ):
            out.append(c)
    return out


def hand_eu_vector(choice, levels, v):
    """Expected utilities level by level, summing over (choice, type) pairs."""
    return tuple(sum((w * v(choice, c) for (c, _), w in lvl.items()), Fraction(0)) for lvl in levels)


# ---------------------------------------------------------------- hand-built models

def backward_counterexample():
    """Incomplete model where every type satisfies the common support condition under the
    literal support test, but merging same-belief types breaks fold-1
    assumption of rationality (two choices tied at one level)."""
    g = make_game(["X"], ["a", "c", "d"], [[1, 1, 0]], [[1], [1], [0]])
    f = g.form
    i, j, jv, jw = TypeId(1, "i"), TypeId(2, "j"), TypeId(2, "jv"), TypeId(2, "jw")
    bi = LexBelief([
        BeliefLevel.point("a", j),
        BeliefLevel({("c", jv): Fraction(1, 2), ("d", jw): Fraction(1, 2)}),
    ])
    bj = LexBelief.of_points(("X", i))
    v_c = UtilityFn.from_mapping(f, 2, {(x, "X"): Fraction(int(x == "c")) for x in "acd"})
    v_d = UtilityFn.from_mapping(f, 2, {(x, "X"): Fraction(int(x == "d")) for x in "acd"})
    return IncompleteModel(
        f, g.utilities,
        {i: g.u(1), j: g.u(2), jv: v_c, jw: v_d},
        {i: bi, j: bj, jv: bj, jw: bj},
    )


def non_ia_counterexample():
    """Incomplete model where a u-type passes the literal the common support condition and
    strictly prefers a choice that iterated admissibility eliminates."""
    g = make_game(["X", "Y"], ["a", "c", "d"], [[1, 0, 1], [1, 1, 0]], [[1, 1], [1, 1], [0, 0]])
    f = g.form
    T = TypeId
    xs, ys, xsv, ysv = T(1, "x"), T(1, "y"), T(1, "xv"), T(1, "yv")
    j, jv, jw = T(2, "j"), T(2, "jv"), T(2, "jw")
    bx = LexBelief([BeliefLevel.point("a", j), BeliefLevel({("c", jv): Fraction(1, 3), ("d", jw): Fraction(2, 3)})])
    by = LexBelief([BeliefLevel({("a", j): Fraction(1, 2), ("c", j): Fraction(1, 2)}), BeliefLevel.point("d", jw)])
    bj = LexBelief([
        BeliefLevel({("X", xs): Fraction(1, 2), ("Y", ys): Fraction(1, 2)}),
        BeliefLevel({("Y", xsv): Fraction(1, 2), ("X", ysv): Fraction(1, 2)}),
    ])
    v_c = UtilityFn.from_mapping(f, 2, {(x, o): Fraction(int(x == "c")) for x in "acd" for o in "XY"})
    v_d = UtilityFn.from_mapping(f, 2, {(x, o): Fraction(int(x == "d")) for x in "acd" for o in "XY"})
    ux = construct_supporting_utility(f, 1, ["Y"], bx)
    uy = construct_supporting_utility(f, 1, ["X"], by)
    return IncompleteModel(
        f, g.utilities,
        {xs: g.u(1), ys: g.u(1), xsv: ux, ysv: uy, j: g.u(2), jv: v_c, jw: v_d},
        {xs: bx, ys: by, xsv: bx, ysv: by, j: bj, jv: bj, jw: bj},
    )


# ---------------------------------------------------------------- LP by vertex enumeration

def _solve_square(rows, rhs):
    """Unique solution of a square system by Gauss-Jordan, or None if singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def lp_by_vertices(n, objective, constraints):
    """Optimum of max c.x s.t. constraints, x >= 0, for a *bounded* feasible
    region, by enumerating basic solutions.  None if infeasible."""
    rows = [(list(map(Fraction, c)), s, Fraction(b)) for c, s, b in constraints]
    for k in range(n):
        rows.append(([Fraction(int(i == k)) for i in range(n)], ">=", Fraction(0)))
    eqs = [r for r in rows if r[1] == "="]
    ineqs = [r for r in rows if r[1] != "="]

    def feasible(x):
        for c, s, b in rows:
            lhs = sum(ci * xi for ci, xi in zip(c, x))
            if (s == "=" and lhs != b) or (s == "<=" and lhs > b) or (s == ">=" and lhs < b):
                return False
        return True

    best = None
    need = n - len(eqs)
    if need < 0:
        # more equalities than variables: try every n-subset of them
        cands = itertools.combinations(eqs, n)
    else:
        cands = (tuple(eqs) + extra for extra in itertools.combinations(ineqs, need))
    for active in cands:
        x = _solve_square([c for c, _, _ in active], [b for _, _, b in active])
        if x is None or not feasible(x):
            continue
        val = sum(ci * xi for ci, xi in zip(objective, x))
        if best is None or val > best:
            best = val
    return best


# ---------------------------------------------------------------- dominance sweep

def square_small_games(games):
    """The 2x2 and 3x3 games of a corpus."""
    return [g for g in games if len(g.choices(1)) == len(g.choices(2)) in (2, 3)]


def dominance_oracle_disagreements(games):
    """Count LP/grid/certificate disagreements over every (restriction, choice)."""
    bad, checked = [], 0
    for g in games:
        ia = iterated_admissibility(g)
        for k in range(ia.m + 1):
            for i in (1, 2):
                A, B = list(ia.at(k, i)), list(ia.at(k, 3 - i))
                v = g.u(i)
                for c in A:
                    checked += 1
                    lp = weakly_dominated(A, B, v, c)
                    grid = grid_dominated(A, B, v, c)
                    if lp:
                        if not replay_certificate(A, B, v, c, lp.mixture):
                            bad.append((g, k, i, c, "certificate"))
                    elif grid is not None:
                        bad.append((g, k, i, c, "grid found dominance, LP did not"))
                    if c not in pure_undominated_brute(A, B, v) and not lp:
                        bad.append((g, k, i, c, "pure dominance missed"))
    return bad, checked


# ---------------------------------------------------------------- supporting utilities

def random_supporting_case(rng):
    g = random_game(rng, sizes=(1, 5))
    i = rng.choice((1, 2))
    own, opp = g.choices(i), g.choices(3 - i)
    good = rng.sample(own, rng.randint(1, len(own)))
    levels = [random_distribution(rng, rng.sample(opp, rng.randint(1, len(opp)))) for _ in range(rng.randint(1, 3))]
    return g.form, i, good, levels


def supporting_utility_violation(form, i, good, levels):
    v = construct_supporting_utility(form, i, good, levels)
    vec = {a: marginal_expected_utility_vector(a, levels, v) for a in form.of(i)}
    best = max(vec.values())
    return [a for a in good if vec[a] != best]
