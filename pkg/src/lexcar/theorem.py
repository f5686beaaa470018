"""End-to-end agreement check between the three routes to CAR choices.

For a game we compute

1. the IA survivors,
2. the choices optimal for some type in a synthesized complete model that
   expresses common full belief in caution and common assumption of
   rationality,
3. the choices optimal for some u-carrying type of the transformed
   incomplete model satisfying the common support condition, under both the literal and
   the pairwise support test,
4. route 2 again on the model obtained by transforming (3) back.

All four must coincide per player.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complete import CompleteModel, common_assumption, common_full_belief_caution_co
from .incomplete import IncompleteModel, common_support_condition
from .solver import IARounds, iterated_admissibility, synthesize_car_model
from .transform import complete_to_incomplete, incomplete_to_complete


def car_optimal_choices(m: CompleteModel) -> tuple:
    car = common_assumption(m)
    caut = common_full_belief_caution_co(m)
    out = []
    for i in (1, 2):
        s = set()
        for t in m.types_of(i):
            if car[t] and caut[t]:
                s |= m.optimal(t)
        out.append(frozenset(s))
    return tuple(out)


def common_support_condition_optimal_choices(m: IncompleteModel, pairwise: bool = False) -> tuple:
    ok = common_support_condition(m, pairwise)
    out = []
    for i in (1, 2):
        s = set()
        for t in m.types_of(i):
            if ok[t] and m.carries_u(t):
                s |= m.optimal(t)
        out.append(frozenset(s))
    return tuple(out)


@dataclass
class TheoremCheck:
    ia: IARounds
    survivors: tuple
    car: tuple
    incomplete: tuple
    strict: tuple
    converse: tuple
    witness: CompleteModel
    transformed: IncompleteModel
    back: CompleteModel

    @property
    def agree(self) -> bool:
        return self.survivors == self.car == self.incomplete == self.strict == self.converse

    def mismatch(self) -> Optional[tuple]:
        """(player, choice, route) of the first disagreement, if any."""
        routes = (("car", self.car), ("incomplete", self.incomplete), ("strict", self.strict), ("converse", self.converse))
        for i in (0, 1):
            for name, sets in routes:
                diff = self.survivors[i] ^ sets[i]
                if diff:
                    return i + 1, sorted(diff)[0], name
        return None


def verify_theorem(game) -> TheoremCheck:
    ia = iterated_admissibility(game)
    witness = synthesize_car_model(game, ia)
    transformed = complete_to_incomplete(witness)
    back = incomplete_to_complete(transformed)
    return TheoremCheck(
        ia=ia,
        survivors=tuple(frozenset(ia.survivors(i)) for i in (1, 2)),
        car=car_optimal_choices(witness),
        incomplete=common_support_condition_optimal_choices(transformed),
        strict=common_support_condition_optimal_choices(transformed, pairwise=True),
        converse=car_optimal_choices(back),
        witness=witness,
        transformed=transformed,
        back=back,
    )
