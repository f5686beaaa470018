"""Lexicographic epistemic models with incomplete information.

Each type carries its own utility function next to its belief.  The model
also records the reference utility pair ``u``; "type utility equals u_j" comparisons are
exact cell-by-cell equality.

Two readings worth knowing about:

* Caution lets a choice be paired with any type sharing the belief of a
  deemed-possible type (the auxiliary types of the definition are realized
  by same-belief types in the model).
* "Optimal for some cautious type with utility u_j that expresses up to
  n-fold ..." (not necessarily in the model) is decided by round n+1 of
  iterated admissibility in the reference game, as for complete models.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .beliefs import LexBelief, TypeId, check_pairs_reference, expected_utility_vector, marginal_expected_utility_vector, possible_types
from .complete import (
    PreconditionError,
    Verdict,
    _fold_loop,
    _lex_max,
    _load_game_ref,
    _parse_types,
    assumption_check,
    belief_to_json,
    deemed_types_in_order,
    full_belief_fixpoint,
)
from .exact import ContractError
from .game import Game, GameForm, GameParseError, UtilityFn, form_to_json, parse_form, parse_utility, parse_utility_pair
from .solver import IARounds, iterated_admissibility

PROPERTIES = ("caution", "rationality", "supported_and_prior")


@dataclass(eq=False)
class IncompleteModel:
    form: GameForm
    reference_u: tuple  # (u1, u2)
    utilities: Dict[TypeId, UtilityFn]
    beliefs: Dict[TypeId, LexBelief]
    _opt: dict = field(default_factory=dict, repr=False)
    _ia: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if set(self.utilities) != set(self.beliefs):
            raise ContractError("every type needs both a utility and a belief")
        for t, b in self.beliefs.items():
            j = 3 - t.player
            check_pairs_reference(b, self.form.of(j), set(self.types_of(j)), where=f"belief of {t}")
            w = self.utilities[t]
            if w.owner != t.player or w.own_choices != self.form.of(t.player) or w.opp_choices != self.form.of(j):
                raise ContractError(f"utility of {t} does not match the game form")

    @property
    def types(self) -> list:
        return list(self.beliefs)

    def types_of(self, player: int) -> list:
        return [t for t in self.beliefs if t.player == player]

    def reference_game(self) -> Game:
        return Game(self.form, tuple(self.reference_u))

    @property
    def ia(self) -> IARounds:
        if not self._ia:
            self._ia.append(iterated_admissibility(self.reference_game()))
        return self._ia[0]

    def optimal(self, t: TypeId) -> frozenset:
        if t not in self._opt:
            self._opt[t] = frozenset(optimal_choices_in(self, t))
        return self._opt[t]

    def carries_u(self, t: TypeId) -> bool:
        return self.utilities[t] == self.reference_u[t.player - 1]

    def same_belief(self, t: TypeId) -> list:
        b = self.beliefs[t]
        return [s for s in self.types_of(t.player) if self.beliefs[s] == b]


def optimal_choices_in(m: IncompleteModel, t: TypeId) -> list:
    w = m.utilities[t]
    b = m.beliefs[t]
    return _lex_max(m.form.of(t.player), lambda c: expected_utility_vector(c, b, w))


def caution_verdict_in(m: IncompleteModel, t: TypeId) -> Verdict:
    b = m.beliefs[t]
    missing = []
    for tj in deemed_types_in_order(b):
        twins = m.same_belief(tj)
        for c in m.form.of(3 - t.player):
            if not any(b.first_level((c, s)) is not None for s in twins):
                missing.append(("missing", c, tj))
    if missing:
        return Verdict(False, reason="not cautious", violations=missing)
    return Verdict(True)


def is_cautious_in(m: IncompleteModel, t: TypeId) -> bool:
    return caution_verdict_in(m, t).ok


def rationality_verdict(m: IncompleteModel, t: TypeId) -> Verdict:
    bad = [("irrational", c, tj) for c, tj in m.beliefs[t].pairs() if c not in m.optimal(tj)]
    return Verdict(not bad, violations=bad)


def believes_rationality(m: IncompleteModel, t: TypeId) -> bool:
    return rationality_verdict(m, t).ok


def construct_supporting_utility(form: GameForm, owner: int, good: Sequence[str], belief) -> UtilityFn:
    """A utility making every choice in ``good`` optimal under ``belief``.

    ``v(c_own, c_opp) = 1`` when c_own is in ``good`` and c_opp is in the
    support of the first level; 0 otherwise.  ``belief`` is a LexBelief or a
    sequence of {opponent choice: weight} dicts.
    """
    good = list(good)
    if not good:
        raise ContractError("the set of choices to support must be nonempty")
    own, opp = form.of(owner), form.of(3 - owner)
    for c in good:
        if c not in own:
            raise ContractError(f"{c!r} is not a choice of player {owner}")
    marginal = belief.choice_marginal() if isinstance(belief, LexBelief) else tuple(belief)
    top = {c for c, w in marginal[0].items() if w > 0}
    one, zero = Fraction(1), Fraction(0)
    values = tuple(
        tuple(one if (a in good and b in top) else zero for b in opp) for a in own
    )
    v = UtilityFn(owner, own, opp, values)
    vecs = {a: marginal_expected_utility_vector(a, marginal, v) for a in own}
    best = max(vecs.values())
    assert all(vecs[a] == best for a in good), "supporting utility postcondition"
    return v


def supports_every_good_choice(m: IncompleteModel, t: TypeId, good, pairwise: bool = False) -> Verdict:
    """Every choice in ``good`` is optimal for some deemed-possible cautious
    u-type.  With ``pairwise`` the pair (c, that type) itself must be deemed
    possible."""
    if not is_cautious_in(m, t):
        raise PreconditionError(f"{t} is not cautious")
    return _support_check(m, t, good, lambda tj: is_cautious_in(m, tj), pairwise)


def _support_check(m, t, good, eligible, pairwise=False) -> Verdict:
    b = m.beliefs[t]
    witnesses, violations = [], []
    deemed = deemed_types_in_order(b)
    for c in good:
        w = next((tj for tj in deemed if eligible(tj) and m.carries_u(tj) and c in m.optimal(tj)
                  and (not pairwise or b.first_level((c, tj)) is not None)), None)
        if w is None:
            violations.append(("unsupported", c))
        else:
            witnesses.append(("supported", c, w))
    return Verdict(not violations, witnesses=witnesses, violations=violations)


def prior_belief_in_u(m: IncompleteModel, t: TypeId) -> Verdict:
    """Pairs with a cautious u-carrying type come strictly before all other
    deemed-possible pairs."""
    cautious = {s for s in m.types if is_cautious_in(m, s)}
    return assumption_check(
        m.beliefs[t], [], lambda c, tj: False, lambda p: p[1] in cautious and m.carries_u(p[1])
    )


def n_fold_supported_and_prior(m: IncompleteModel, N: Optional[int], stop_when_stable: bool = False,
                               pairwise: bool = False):
    if N is not None and N < 1:
        raise ContractError("fold depth must be at least 1")
    ia = m.ia
    types = m.types
    cautious = frozenset(t for t in types if is_cautious_in(m, t))

    def fold0(t):
        v = caution_verdict_in(m, t)
        if not v:
            return Verdict(False, applicable=False, reason="not cautious (support undefined)",
                           violations=v.violations)
        return v

    def step(t, n, prev):
        good = ia.at(n, 3 - t.player)
        eligible = cautious if n == 1 else prev
        sup = _support_check(m, t, good, lambda tj: tj in eligible, pairwise)
        order = assumption_check(
            m.beliefs[t], [], lambda c, tj: False,
            lambda p: p[1] in eligible and m.carries_u(p[1]),
        )
        return Verdict(
            sup.ok and order.ok,
            witnesses=sup.witnesses + order.witnesses,
            violations=sup.violations + order.violations,
        )

    return _fold_loop(types, N, fold0, step, lambda n: (ia.at(n, 1), ia.at(n, 2)), stop_when_stable)


def common_full_belief(m: IncompleteModel, prop: str, pairwise: bool = False) -> Dict[TypeId, bool]:
    """Common full belief in caution or rationality (fixpoint through the
    deems-possible relation).  For ``supported_and_prior`` the common version
    is the stabilized fold report."""
    if prop == "caution":
        holds = lambda t: is_cautious_in(m, t)
    elif prop == "rationality":
        holds = lambda t: believes_rationality(m, t)
    elif prop == "supported_and_prior":
        return n_fold_supported_and_prior(m, None, stop_when_stable=True, pairwise=pairwise).final()
    else:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    return full_belief_fixpoint(m.types, holds, lambda t: possible_types(m.beliefs[t]))


def common_support_condition(m: IncompleteModel, pairwise: bool = False) -> Dict[TypeId, bool]:
    """Common full belief in caution, rationality, that every good choice is
    supported, and prior belief in u.

    The literal support test only asks for a deemed-possible type; such a
    type can hide the supported choice behind a later level, and then a
    u-type may pass while optimizing a choice outside the IA survivors.
    ``pairwise=True`` closes that gap by requiring the pair itself.
    """
    c = common_full_belief(m, "caution")
    r = common_full_belief(m, "rationality")
    s = common_full_belief(m, "supported_and_prior", pairwise)
    return {t: c[t] and r[t] and s[t] for t in m.types}


# ---------------------------------------------------------------- file format

def incomplete_model_from_json(obj, base_dir=None) -> IncompleteModel:
    if not isinstance(obj, dict):
        raise GameParseError("model", "expected a JSON object")
    if "game" not in obj:
        raise GameParseError("game", "missing")
    form = _load_game_ref(obj["game"], base_dir, parse_form)
    if "reference_u" not in obj:
        raise GameParseError("reference_u", "missing")
    ref = parse_utility_pair(form, obj["reference_u"], "reference_u")
    parsed = _parse_types(obj, form.of)
    utilities, beliefs = {}, {}
    for t, b, ent, loc in parsed:
        if "utility" not in ent:
            raise GameParseError(f"{loc}.utility", "missing")
        utilities[t] = parse_utility(form, t.player, ent["utility"], f"{loc}.utility")
        beliefs[t] = b
    return IncompleteModel(form, ref, utilities, beliefs)


def parse_incomplete_model(text: str, base_dir=None) -> IncompleteModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameParseError(f"line {e.lineno} col {e.colno}", e.msg) from None
    return incomplete_model_from_json(obj, base_dir)


def incomplete_model_to_json(m: IncompleteModel, provenance=None) -> dict:
    out = {}
    if provenance:
        out["provenance"] = provenance
    out["game"] = form_to_json(m.form)
    out["reference_u"] = [m.reference_u[0].to_json(), m.reference_u[1].to_json()]
    out["types"] = [
        {
            "player": t.player,
            "name": t.name,
            "utility": m.utilities[t].to_json(),
            "belief": belief_to_json(m.beliefs[t]),
        }
        for t in m.types
    ]
    return out
