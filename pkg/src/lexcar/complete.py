"""Complete-information lexicographic epistemic models.

The checks follow the usual fold structure: fold 0 is caution, fold 1 is
assumption of the opponent's rationality, and fold n+1 strengthens it using
the types that pass fold n.  Whether a choice is optimal for *some* cautious
type expressing up to n-fold assumption (in any model at all) is decided by
iterated admissibility: it is exactly membership in round n+1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from .beliefs import (
    BeliefLevel,
    LexBelief,
    TypeId,
    check_pairs_reference,
    expected_utility_vector,
    possible_types,
)
from .exact import ContractError, format_rational, parse_rational
from .game import Game, GameParseError, game_from_json, game_to_json
from .solver import IARounds, iterated_admissibility


class PreconditionError(ContractError):
    """A predicate was asked about a type it is not defined for."""


@dataclass
class Verdict:
    ok: bool
    applicable: bool = True
    reason: str = ""
    witnesses: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if not self.applicable:
            out["applicable"] = False
        if self.reason:
            out["reason"] = self.reason
        if self.witnesses:
            out["witnesses"] = [list(map(str, w)) for w in self.witnesses]
        if self.violations:
            out["violations"] = [list(map(str, v)) for v in self.violations]
        return out


def not_applicable(reason: str) -> Verdict:
    return Verdict(False, applicable=False, reason=reason)


@dataclass
class FoldReport:
    """``verdicts[t][n]`` says whether t expresses up to n-fold of the property.

    Fold verdicts are cumulative, so they are monotone in n by construction.
    ``stable_at`` is the first fold from which nothing changes any more.
    """

    verdicts: Dict[TypeId, list]
    stable_at: Optional[int] = None

    def holds(self, t: TypeId, n: int) -> bool:
        v = self.verdicts[t]
        return bool(v[min(n, len(v) - 1)])

    def passing(self, n: int) -> frozenset:
        return frozenset(t for t in self.verdicts if self.holds(t, n))

    @property
    def depth(self) -> int:
        return len(next(iter(self.verdicts.values()))) - 1 if self.verdicts else 0

    def final(self) -> Dict[TypeId, bool]:
        return {t: bool(v[-1]) for t, v in self.verdicts.items()}

    def to_json(self) -> dict:
        return {
            "stable_at": self.stable_at,
            "types": {
                t.name: [v.to_json() for v in vs] for t, vs in self.verdicts.items()
            },
        }


@dataclass(eq=False)
class CompleteModel:
    game: Game
    types: Dict[TypeId, LexBelief]
    _opt: dict = field(default_factory=dict, repr=False)
    _ia: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        for t, b in self.types.items():
            if t.player not in (1, 2):
                raise ContractError(f"type {t} has bad player {t.player}")
            j = 3 - t.player
            check_pairs_reference(
                b, self.game.choices(j), set(self.types_of(j)), where=f"belief of {t}"
            )

    def types_of(self, player: int) -> list:
        return [t for t in self.types if t.player == player]

    def type_named(self, player: int, name: str) -> TypeId:
        t = TypeId(player, name)
        if t not in self.types:
            raise KeyError(f"no type {name!r} for player {player}")
        return t

    def optimal(self, t: TypeId) -> frozenset:
        if t not in self._opt:
            self._opt[t] = frozenset(optimal_choices_co(self, t))
        return self._opt[t]

    @property
    def ia(self) -> IARounds:
        if not self._ia:
            self._ia.append(iterated_admissibility(self.game))
        return self._ia[0]


def _lex_max(choices, vec_of: Callable) -> list:
    vecs = {c: vec_of(c) for c in choices}
    best = max(vecs.values())
    return [c for c in choices if vecs[c] == best]


def deemed_types_in_order(b: LexBelief) -> list:
    """Deemed-possible types ordered by first appearance."""
    out = []
    for _, tj in b.pairs():
        if tj not in out:
            out.append(tj)
    return out


def optimal_choices_co(m: CompleteModel, t: TypeId) -> list:
    """Choices not beaten lexicographically under t's belief and the game's u."""
    u = m.game.u(t.player)
    b = m.types[t]
    return _lex_max(m.game.choices(t.player), lambda c: expected_utility_vector(c, b, u))


def is_cautious_co(m: CompleteModel, t: TypeId) -> bool:
    b = m.types[t]
    opp = m.game.choices(3 - t.player)
    return all(b.first_level((c, tj)) is not None for tj in possible_types(b) for c in opp)


def caution_verdict_co(m: CompleteModel, t: TypeId) -> Verdict:
    b = m.types[t]
    missing = [
        (c, tj)
        for tj in deemed_types_in_order(b)
        for c in m.game.choices(3 - t.player)
        if b.first_level((c, tj)) is None
    ]
    if missing:
        return Verdict(False, reason="not cautious", violations=[("missing", c, tj) for c, tj in missing])
    return Verdict(True)


def assumption_check(b: LexBelief, good_choices, supports: Callable, is_good_pair: Callable) -> Verdict:
    """Shared by assumption of rationality and its incomplete counterpart.

    ``supports(c, tj)`` decides whether a deemed-possible type may witness a
    good choice; ``is_good_pair`` classifies deemed-possible pairs, which
    must all come strictly before every other deemed-possible pair.
    """
    pairs = b.pairs()
    witnesses, violations = [], []
    deemed_types = deemed_types_in_order(b)
    for c in good_choices:
        w = next((tj for tj in deemed_types if supports(c, tj)), None)
        if w is None:
            violations.append(("unsupported", c))
        else:
            witnesses.append(("supported", c, w))
    good = [p for p in pairs if is_good_pair(p)]
    bad = [p for p in pairs if not is_good_pair(p)]
    if good and bad:
        last_good = max(good, key=lambda p: (b.first_level(p), pairs.index(p)))
        first_bad = min(bad, key=lambda p: (b.first_level(p), pairs.index(p)))
        if b.first_level(first_bad) <= b.first_level(last_good):
            violations.append(
                ("order", f"({last_good[0]},{last_good[1]})", f"({first_bad[0]},{first_bad[1]})",
                 b.first_level(first_bad) + 1)
            )
    for p in good[:1]:
        witnesses.append(("first-good", f"({p[0]},{p[1]})", b.first_level(p) + 1))
    return Verdict(not violations, witnesses=witnesses, violations=violations)


def assumes_rationality(m: CompleteModel, t: TypeId, good, goodtypes) -> Verdict:
    """Support part: every good opponent choice is optimal for some
    deemed-possible type.  Order part: pairs (c, tj) with tj in ``goodtypes`` and c optimal for tj are
    infinitely more likely than every other deemed-possible pair."""
    if not is_cautious_co(m, t):
        raise PreconditionError(f"{t} is not cautious")
    goodtypes = set(goodtypes)
    return assumption_check(
        m.types[t],
        list(good),
        lambda c, tj: c in m.optimal(tj),
        lambda p: p[1] in goodtypes and p[0] in m.optimal(p[1]),
    )


def _fold_loop(types, n_max, fold0: Callable, fold_step: Callable, goods: Callable, stop_when_stable: bool):
    """Generic cumulative fold iteration.

    ``fold_step(t, n, prev_pass)`` evaluates fold n (n >= 1) given the set of
    types passing fold n-1; ``goods(n)`` returns the external good-choice sets
    used at fold n, only to detect stabilization.
    """
    verdicts = {t: [fold0(t)] for t in types}
    prev = frozenset(t for t in types if verdicts[t][0])
    stable_at = None
    n = 0
    while True:
        n += 1
        if n_max is not None and n > n_max:
            break
        for t in types:
            if not verdicts[t][-1]:
                last = verdicts[t][-1]
                verdicts[t].append(
                    last if not last.applicable else Verdict(False, reason=f"fails fold {n - 1}")
                )
            else:
                verdicts[t].append(fold_step(t, n, prev))
        cur = frozenset(t for t in types if verdicts[t][-1])
        # fold 1 draws supporters differently from later folds, so a repeat
        # only proves stability from fold 2 on; then fold n-1 == fold n == ...
        if stable_at is None and n >= 2 and cur == prev and goods(n) == goods(n + 1):
            stable_at = n - 1
            if stop_when_stable:
                break
        prev = cur
    if stable_at is not None and n_max is not None:
        for t in types:
            while len(verdicts[t]) < n_max + 1:
                verdicts[t].append(verdicts[t][-1])
    return FoldReport(verdicts, stable_at)


def n_fold_assumption(m: CompleteModel, N: int, stop_when_stable: bool = False) -> FoldReport:
    if N is not None and N < 1:
        raise ContractError("fold depth must be at least 1")
    ia = m.ia
    types = list(m.types)

    def fold0(t):
        v = caution_verdict_co(m, t)
        if not v:
            return Verdict(False, applicable=False, reason="not cautious (assumption undefined)",
                           violations=v.violations)
        return v

    cautious = frozenset(t for t in types if is_cautious_co(m, t))

    def step(t, n, prev):
        j = 3 - t.player
        good = ia.at(n, j)
        if n == 1:
            return assumes_rationality(m, t, good, cautious & set(m.types_of(j)))
        return assumption_check(
            m.types[t],
            good,
            lambda c, tj: tj in prev and c in m.optimal(tj),
            lambda p: p[1] in prev and p[0] in m.optimal(p[1]),
        )

    return _fold_loop(types, N, fold0, step, lambda n: (ia.at(n, 1), ia.at(n, 2)), stop_when_stable)


def common_assumption(m: CompleteModel) -> Dict[TypeId, bool]:
    """Per-type CAR verdict: fold report iterated until it stops changing."""
    rep = n_fold_assumption(m, None, stop_when_stable=True)
    return rep.final()


def common_assumption_report(m: CompleteModel) -> FoldReport:
    return n_fold_assumption(m, None, stop_when_stable=True)


def full_belief_fixpoint(types, holds: Callable, deemed: Callable) -> Dict[TypeId, bool]:
    """Greatest set S of types satisfying the property with every
    deemed-possible type also in S."""
    S = {t for t in types if holds(t)}
    while True:
        nxt = {t for t in S if all(tj in S for tj in deemed(t))}
        if nxt == S:
            return {t: t in S for t in types}
        S = nxt


def common_full_belief_caution_co(m: CompleteModel) -> Dict[TypeId, bool]:
    return full_belief_fixpoint(
        list(m.types), lambda t: is_cautious_co(m, t), lambda t: possible_types(m.types[t])
    )


# ---------------------------------------------------------------- file format

def belief_to_json(b: LexBelief) -> list:
    return [
        [{"choice": c, "type": t.name, "p": format_rational(w)} for (c, t), w in lvl]
        for lvl in b.levels
    ]


def belief_from_json(obj, opp_player: int, where: str) -> LexBelief:
    if not isinstance(obj, list) or not obj:
        raise GameParseError(where, "belief must be a nonempty list of levels")
    levels = []
    for k, lvl in enumerate(obj):
        loc = f"{where}[{k}]"
        if not isinstance(lvl, list) or not lvl:
            raise GameParseError(loc, "level must be a nonempty list")
        items = []
        for e, ent in enumerate(lvl):
            if not isinstance(ent, dict) or not {"choice", "type", "p"} <= set(ent):
                raise GameParseError(f"{loc}[{e}]", "expected {choice, type, p}")
            try:
                p = parse_rational(ent["p"])
            except ValueError as exc:
                raise GameParseError(f"{loc}[{e}].p", str(exc)) from None
            items.append(((ent["choice"], TypeId(opp_player, str(ent["type"]))), p))
        try:
            levels.append(BeliefLevel(items))
        except ValueError as exc:
            raise GameParseError(loc, str(exc)) from None
    return LexBelief(levels)


def _load_game_ref(obj, base_dir, loader):
    if isinstance(obj, str):
        import os
        path = obj if base_dir is None else os.path.join(base_dir, obj)
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as e:
            raise GameParseError("game", f"cannot read {path}: {e.strerror}") from None
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise GameParseError(f"{path}: line {e.lineno}", e.msg) from None
    return loader(obj, "game")


def _parse_types(obj, choices_of, where="types"):
    raw = obj.get("types")
    if not isinstance(raw, list) or not raw:
        raise GameParseError(where, "expected a nonempty list of types")
    out = []
    seen = set()
    for k, ent in enumerate(raw):
        loc = f"{where}[{k}]"
        if not isinstance(ent, dict):
            raise GameParseError(loc, "expected an object")
        player = ent.get("player")
        if player not in (1, 2):
            raise GameParseError(f"{loc}.player", "must be 1 or 2")
        name = ent.get("name")
        if not isinstance(name, str) or not name:
            raise GameParseError(f"{loc}.name", "must be a nonempty string")
        t = TypeId(player, name)
        if t in seen:
            raise GameParseError(f"{loc}.name", f"duplicate type {name!r}")
        seen.add(t)
        b = belief_from_json(ent.get("belief"), 3 - player, f"{loc}.belief")
        out.append((t, b, ent, loc))
    # reference checks after all types are known
    for t, b, _, loc in out:
        j = 3 - t.player
        for c, tj in b.pairs():
            if c not in choices_of(j):
                raise GameParseError(f"{loc}.belief", f"unknown opponent choice {c!r}")
            if tj not in seen:
                raise GameParseError(f"{loc}.belief", f"unknown opponent type {tj.name!r}")
    return out


def complete_model_from_json(obj, base_dir=None) -> CompleteModel:
    if not isinstance(obj, dict):
        raise GameParseError("model", "expected a JSON object")
    if "game" not in obj:
        raise GameParseError("game", "missing")
    game = _load_game_ref(obj["game"], base_dir, game_from_json)
    parsed = _parse_types(obj, game.choices)
    return CompleteModel(game, {t: b for t, b, _, _ in parsed})


def parse_complete_model(text: str, base_dir=None) -> CompleteModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameParseError(f"line {e.lineno} col {e.colno}", e.msg) from None
    return complete_model_from_json(obj, base_dir)


def complete_model_to_json(m: CompleteModel, provenance=None) -> dict:
    out = {}
    if provenance:
        out["provenance"] = provenance
    out["game"] = game_to_json(m.game)
    out["types"] = [
        {"player": t.player, "name": t.name, "belief": belief_to_json(b)}
        for t, b in m.types.items()
    ]
    return out
