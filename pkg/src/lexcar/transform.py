"""Moving between complete- and incomplete-information models.

complete -> incomplete: each type t with preference classes (C_1, ..., C_L)
splits into L types ``t#1 .. t#L`` sharing one rewritten belief; ``t#1``
carries the game's own utility, ``t#l`` (l > 1) a utility under which the
class C_l is optimal.  A pair (c, t_j) becomes (c, t_j#r) where r is the
index of c's class under t_j.

incomplete -> complete: types with equal beliefs collapse into one type,
named after the lexicographically least member.
"""
from __future__ import annotations

import itertools
from typing import Dict, Optional

from .beliefs import LexBelief, TypeId, expected_utility_vector
from .complete import CompleteModel
from .exact import Ordering, lex_compare
from .game import Game
from .incomplete import IncompleteModel, believes_rationality, construct_supporting_utility


class TransformCheckError(AssertionError):
    """A structural guarantee of a transformation failed on its output."""


def preference_partition(m: CompleteModel, t: TypeId) -> tuple:
    """Indifference classes of t's preference, most preferred first."""
    u = m.game.u(t.player)
    b = m.types[t]
    vecs = {c: expected_utility_vector(c, b, u) for c in m.game.choices(t.player)}
    classes = []
    for v in sorted(set(vecs.values()), reverse=True):
        classes.append(tuple(c for c in m.game.choices(t.player) if vecs[c] == v))
    return tuple(classes)


def is_valid_partition(m: CompleteModel, t: TypeId, classes) -> bool:
    u = m.game.u(t.player)
    b = m.types[t]
    flat = [c for cl in classes for c in cl]
    if sorted(flat) != sorted(m.game.choices(t.player)) or len(set(flat)) != len(flat):
        return False
    vec = lambda c: expected_utility_vector(c, b, u)
    for cl in classes:
        if any(vec(c) != vec(cl[0]) for c in cl):
            return False
    return all(
        lex_compare(vec(classes[k][0]), vec(classes[k + 1][0])) == Ordering.GREATER
        for k in range(len(classes) - 1)
    )


def split_name(t: TypeId, ell: int) -> TypeId:
    return TypeId(t.player, f"{t.name}#{ell}")


def complete_to_incomplete(m: CompleteModel, return_groups: bool = False):
    parts = {t: preference_partition(m, t) for t in m.types}
    cls_index = {
        t: {c: r for r, cl in enumerate(parts[t], start=1) for c in cl} for t in m.types
    }

    def rewrite(pair):
        c, tj = pair
        return (c, split_name(tj, cls_index[tj][c]))

    utilities, beliefs, groups = {}, {}, {}
    for t, b in m.types.items():
        nb = b.rewrite(rewrite)
        marginal = b.choice_marginal()
        groups[t] = []
        for ell, cl in enumerate(parts[t], start=1):
            theta = split_name(t, ell)
            if ell == 1:
                w = m.game.u(t.player)
            else:
                w = construct_supporting_utility(m.game.form, t.player, cl, marginal)
            utilities[theta] = w
            beliefs[theta] = nb
            groups[t].append(theta)
    out = IncompleteModel(m.game.form, tuple(m.game.utilities), utilities, beliefs)

    if not check_observation_redundancy(out, groups):
        raise TransformCheckError("split types of one original type disagree on beliefs")
    for theta in out.types:
        if not believes_rationality(out, theta):
            bad = next(p for p in out.beliefs[theta].pairs() if p[0] not in out.optimal(p[1]))
            raise TransformCheckError(f"{theta} deems ({bad[0]},{bad[1]}) possible but it is not rational")
    return (out, groups) if return_groups else out


def check_observation_redundancy(m: IncompleteModel, classes) -> bool:
    """True iff all types inside each group share one belief."""
    for group in classes.values() if isinstance(classes, dict) else classes:
        group = list(group)
        if any(m.beliefs[s] != m.beliefs[group[0]] for s in group[1:]):
            return False
    return True


def belief_classes(m: IncompleteModel) -> Dict[TypeId, tuple]:
    """Every type mapped to the tuple of types sharing its belief."""
    out = {}
    for t in m.types:
        out[t] = tuple(s for s in m.types_of(t.player) if m.beliefs[s] == m.beliefs[t])
    return out


def class_representative(members) -> TypeId:
    return min(members, key=lambda s: s.name)


def incomplete_to_complete(m: IncompleteModel, return_map: bool = False):
    E = belief_classes(m)
    rep = {t: class_representative(E[t]) for t in m.types}
    types = {}
    for t in m.types:
        r = rep[t]
        if r in types:
            continue
        types[r] = m.beliefs[t].rewrite(lambda p: (p[0], rep[p[1]]))
    game = Game(m.form, tuple(m.reference_u))
    out = CompleteModel(game, {t: types[t] for t in sorted(types, key=lambda s: (s.player, s.name))})
    return (out, rep) if return_map else out


def choice_marginals_equal(b1: LexBelief, b2: LexBelief) -> bool:
    return b1.choice_marginal() == b2.choice_marginal()


# ---------------------------------------------------------------- isomorphism

def _signature_co(m: CompleteModel, t):
    return (t.player, m.types[t].choice_marginal())


def _signature_in(m: IncompleteModel, t):
    return (t.player, m.beliefs[t].choice_marginal(), m.utilities[t])


def find_isomorphism(m1, m2) -> Optional[dict]:
    """Player-preserving bijection of types commuting with beliefs (and with
    assigned utilities for incomplete models), or None."""
    if isinstance(m1, CompleteModel) != isinstance(m2, CompleteModel):
        return None
    if isinstance(m1, CompleteModel):
        if m1.game != m2.game:
            return None
        sig1 = {t: _signature_co(m1, t) for t in m1.types}
        sig2 = {t: _signature_co(m2, t) for t in m2.types}
        bel1, bel2 = m1.types, m2.types
    else:
        if m1.form != m2.form or tuple(m1.reference_u) != tuple(m2.reference_u):
            return None
        sig1 = {t: _signature_in(m1, t) for t in m1.types}
        sig2 = {t: _signature_in(m2, t) for t in m2.types}
        bel1, bel2 = m1.beliefs, m2.beliefs
    order = list(bel1)
    if len(order) != len(bel2):
        return None
    cands = {t: [s for s in bel2 if sig2[s] == sig1[t]] for t in order}
    if any(not c for c in cands.values()):
        return None

    def consistent(phi):
        for t in order:
            mapped = bel1[t].rewrite(lambda p: (p[0], phi[p[1]]))
            if mapped != bel2[phi[t]]:
                return False
        return True

    def search(k, phi, used):
        if k == len(order):
            return dict(phi) if consistent(phi) else None
        t = order[k]
        for s in cands[t]:
            if s in used:
                continue
            phi[t] = s
            used.add(s)
            found = search(k + 1, phi, used)
            if found:
                return found
            used.discard(s)
            del phi[t]
        return None

    return search(0, {}, set())


def beliefs_pairwise_distinct(m: CompleteModel) -> bool:
    for i in (1, 2):
        bs = [m.types[t] for t in m.types_of(i)]
        if any(a == b for a, b in itertools.combinations(bs, 2)):
            return False
    return True
