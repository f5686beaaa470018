"""Admissibility, iterated admissibility and CAR witness synthesis.

Every test here is an exact LP.  A choice is *good* at round k when it
survives k rounds of simultaneous elimination of weakly dominated choices;
the model checkers use these rounds to decide "optimal for some cautious
type expressing up to n-fold assumption of rationality (in any model)".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .beliefs import BeliefLevel, LexBelief, TypeId
from .exact import ContractError
from .game import Game, GameForm, UtilityFn
from .lp import Infeasible, LPProblem, solve

ZERO = Fraction(0)


class SynthesisError(RuntimeError):
    """The synthesized model failed its own validation.  Always a bug."""


@dataclass(frozen=True)
class Dominance:
    dominated: bool
    mixture: Optional[dict] = None  # own choice -> weight, when dominated

    def __bool__(self):
        return self.dominated


def weakly_dominated(A: Sequence[str], B: Sequence[str], v: UtilityFn, c: str) -> Dominance:
    """Is ``c`` weakly dominated by a mixture over ``A`` on opponent set ``B``?

    Solves: maximize total slack subject to
    ``sum_a s_a v(a,b) - slack_b = v(c,b)`` for b in B, ``sum s_a = 1``.
    Dominated iff the optimum is positive; the optimal ``s`` is the
    dominating mixture.
    """
    A, B = list(A), list(B)
    if c not in A:
        raise ContractError(f"{c!r} is not in the candidate set")
    if not B:
        raise ContractError("opponent set is empty")
    if len(A) == 1:
        return Dominance(False)
    na, nb = len(A), len(B)
    prob = LPProblem(na + nb, [ZERO] * na + [Fraction(1)] * nb)
    for k, b in enumerate(B):
        row = [v(a, b) for a in A] + [ZERO] * nb
        row[na + k] = Fraction(-1)
        prob.add(row, "=", v(c, b))
    prob.add([Fraction(1)] * na + [ZERO] * nb, "=", 1)
    res = solve(prob)
    if res.value > 0:
        return Dominance(True, {a: w for a, w in zip(A, res.x[:na]) if w > 0})
    return Dominance(False)


def admissible_set(form: GameForm, utilities, restriction=None) -> tuple:
    """Per-player choices not weakly dominated inside ``restriction``.

    ``utilities`` is the (u1, u2) pair; ``restriction`` a pair of choice
    collections (defaults to the full form).  File order is preserved.
    """
    if restriction is None:
        restriction = (form.of(1), form.of(2))
    out = []
    for i in (1, 2):
        own = [c for c in form.of(i) if c in restriction[i - 1]]
        opp = [c for c in form.of(3 - i) if c in restriction[2 - i]]
        if not own or not opp:
            raise ContractError("restriction must be nonempty for both players")
        v = utilities[i - 1]
        out.append(tuple(c for c in own if not weakly_dominated(own, opp, v, c)))
    return tuple(out)


@dataclass(frozen=True)
class IARounds:
    """``rounds[k]`` is (D^k_1, D^k_2); the last entry is stable."""

    rounds: tuple

    @property
    def m(self) -> int:
        return len(self.rounds) - 1

    def at(self, k: int, player: int) -> tuple:
        return self.rounds[min(k, self.m)][player - 1]

    def survivors(self, player: int) -> tuple:
        return self.rounds[-1][player - 1]

    def depth(self, player: int, choice: str) -> int:
        """Largest k with choice in D^k (``m`` for stable survivors)."""
        d = 0
        for k, r in enumerate(self.rounds):
            if choice in r[player - 1]:
                d = k
        return d

    def to_json(self) -> list:
        return [[list(r[0]), list(r[1])] for r in self.rounds]


def iterated_admissibility(game: Game) -> IARounds:
    cur = (game.choices(1), game.choices(2))
    rounds = [cur]
    while True:
        nxt = admissible_set(game.form, game.utilities, cur)
        if nxt == cur:
            return IARounds(tuple(rounds))
        rounds.append(nxt)
        cur = nxt


def _optimal_full_support(v: UtilityFn, c: str, support: Sequence[str], eps: Fraction):
    """Feasibility LP: p >= eps on support, sum p = 1, c optimal vs all own choices."""
    support = list(support)
    n = len(support)
    # substitute p = eps + q, q >= 0
    prob = LPProblem(n)
    prob.add([1] * n, "=", 1 - n * eps)
    for x in v.own_choices:
        if x == c:
            continue
        diff = [v(c, b) - v(x, b) for b in support]
        prob.add(diff, ">=", -eps * sum(diff, ZERO))
    try:
        q = solve(prob).x
    except Infeasible:
        return None
    return {b: eps + q[k] for k, b in enumerate(support)}


def rationalizing_distribution(v: UtilityFn, c: str, support: Sequence[str]) -> Optional[dict]:
    """Full-support distribution on ``support`` under which ``c`` is optimal
    among all of the owner's choices, or None if c is weakly dominated there.
    """
    support = list(support)
    if not support:
        raise ContractError("support must be nonempty")
    if weakly_dominated(list(v.own_choices), support, v, c):
        return None
    eps = Fraction(1, 2)
    while True:
        if eps * len(support) <= 1:
            p = _optimal_full_support(v, c, support, eps)
            if p is not None:
                return p
        eps /= 2


def rationalizing_cautious_belief(form: GameForm, v: UtilityFn, c: str, support: Sequence[str]):
    """One-level belief over opponent choices (as a LexBelief over
    ``(choice, None)`` pairs) making ``c`` optimal, or None."""
    p = rationalizing_distribution(v, c, support)
    if p is None:
        return None
    return LexBelief([BeliefLevel([((b, None), w) for b, w in p.items()])])


# ---------------------------------------------------------------- synthesis

def _type_name(player: int, choice: str) -> str:
    return f"t{player}[{choice}]"


def synthesize_car_model(game: Game, ia: Optional[IARounds] = None):
    """Build a finite complete-information model witnessing CAR for every
    IA survivor.

    One type per (player, choice surviving round 1).  The type for a choice
    of depth k < m carries levels supported on D^{k-1}, D^{k-2}, ..., D^0 of
    the opponent; a stable survivor's type carries D^m, ..., D^0.  Each level
    is a full-support distribution making the choice optimal among *all* own
    choices (possible because a round-k survivor is never weakly dominated
    on D^{k-1} by any mixture, eliminated choices included).  Weight on an
    opponent choice goes to pairs with types for which that choice is
    optimal, deepest types first, so good pairs come before bad ones at
    every fold; a final pass makes every type cautious.

    The result is validated by the complete-model checker before returning.
    """
    from .complete import CompleteModel, common_assumption, common_full_belief_caution_co

    if ia is None:
        ia = iterated_admissibility(game)
    m = ia.m

    def tid(i, c):
        return TypeId(i, _type_name(i, c))

    holders = {i: [c for c in game.choices(i) if c in ia.at(1, i)] for i in (1, 2)}
    depth = {(i, c): ia.depth(i, c) for i in (1, 2) for c in game.choices(i)}

    def support_sets(i, c):
        k = depth[(i, c)]
        top = m if k >= m else k - 1
        return [ia.at(r, 3 - i) for r in range(top, -1, -1)]

    # step 1: choice-marginal levels per type
    marg = {}
    for i in (1, 2):
        for c in holders[i]:
            levels = []
            for S in support_sets(i, c):
                p = rationalizing_distribution(game.u(i), c, S)
                if p is None:
                    raise SynthesisError(f"no rationalizing belief for {c} on {S}")
                levels.append(p)
            marg[tid(i, c)] = levels

    # optimal choices per type from the marginals
    def lex_opt(i, levels):
        from .beliefs import marginal_expected_utility_vector
        vec = {x: marginal_expected_utility_vector(x, levels, game.u(i)) for x in game.choices(i)}
        best = max(vec.values())
        return {x for x, vv in vec.items() if vv == best}

    opt = {t: lex_opt(t.player, lv) for t, lv in marg.items()}

    # step 2: pair assignment
    types = {}
    for i in (1, 2):
        j = 3 - i
        for c in holders[i]:
            t = tid(i, c)
            levels = marg[t]
            L = len(levels)
            opp_types = [tid(j, e) for e in holders[j]]

            def first(tj):
                e = tj.name[len(f"t{j}["):-1]
                top = m if depth[(i, c)] >= m else depth[(i, c)] - 1
                return max(0, top - min(depth[(j, e)], m))

            out = []
            for ell, p in enumerate(levels):
                lvl = {}
                for x, w in p.items():
                    hosts = [tj for tj in opp_types if x in opt[tj] and first(tj) <= ell]
                    if not hosts:
                        hosts = opp_types
                    share = w / len(hosts)
                    for tj in hosts:
                        lvl[(x, tj)] = share
                out.append(BeliefLevel(lvl))
            seen = {pr for lvl in out for pr in lvl.support()}
            everything = [(x, tj) for tj in opp_types for x in game.choices(j)]
            if any(pr not in seen for pr in everything):
                p = levels[-1]
                lvl = {}
                for x in game.choices(j):
                    share = p[x] / len(opp_types)
                    for tj in opp_types:
                        lvl[(x, tj)] = share
                out.append(BeliefLevel(lvl))
            types[t] = LexBelief(out)

    model = CompleteModel(game, types)
    car = common_assumption(model)
    caut = common_full_belief_caution_co(model)
    for i in (1, 2):
        for c in ia.survivors(i):
            t = tid(i, c)
            if not (car[t] and caut[t] and c in model.optimal(t)):
                raise SynthesisError(f"synthesized type {t} fails validation")
    return model
