import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexcar.beliefs import BeliefLevel, LexBelief, TypeId
from lexcar.complete import CompleteModel, optimal_choices_co
from lexcar.corpus import random_complete_model, random_game
from lexcar.game import make_game
from lexcar.incomplete import IncompleteModel, believes_rationality, optimal_choices_in
from lexcar.transform import (
    beliefs_pairwise_distinct,
    belief_classes,
    check_observation_redundancy,
    choice_marginals_equal,
    complete_to_incomplete,
    find_isomorphism,
    incomplete_to_complete,
    is_valid_partition,
    preference_partition,
)

t1, t2 = TypeId(1, "t1"), TypeId(2, "t2")
th11, th12, th21, th22 = TypeId(1, "th11"), TypeId(1, "th12"), TypeId(2, "th21"), TypeId(2, "th22")


def test_preference_partition(ex_co):
    assert preference_partition(ex_co, t1) == (("A",), ("B",))
    assert preference_partition(ex_co, t2) == (("D",), ("C",))
    assert is_valid_partition(ex_co, t1, (("A",), ("B",)))
    assert not is_valid_partition(ex_co, t1, (("B",), ("A",)))
    assert not is_valid_partition(ex_co, t1, (("A", "B"),))
    flat = make_game(["A", "B"], ["C", "D"], [[0, 0], [0, 0]], [[1, 1], [1, 1]])
    m = CompleteModel(flat, dict(ex_co.types))
    assert preference_partition(m, t1) == (("A", "B"),)


def test_co2in_fixture_structure(ex_co):
    m, groups = complete_to_incomplete(ex_co, return_groups=True)
    assert len(m.types) == 4
    assert [g.name for g in groups[t1]] == ["t1#1", "t1#2"]
    assert [g.name for g in groups[t2]] == ["t2#1", "t2#2"]
    a, b = groups[t1]
    c, d = groups[t2]
    assert m.carries_u(a) and m.carries_u(c) and not m.carries_u(b) and not m.carries_u(d)
    assert m.beliefs[a] == m.beliefs[b] == LexBelief.of_points(("D", c), ("C", d))
    assert m.beliefs[c] == m.beliefs[d] == LexBelief.of_points(("A", a), ("B", b))
    assert m.optimal(a) == {"A"} and m.optimal(b) == {"B"}
    assert m.optimal(c) == {"D"} and m.optimal(d) == {"C"}
    assert check_observation_redundancy(m, groups)
    assert all(believes_rationality(m, th) for th in m.types)


def test_redundancy_detects_perturbation(ex_co):
    m, groups = complete_to_incomplete(ex_co, return_groups=True)
    a, b = groups[t1]
    beliefs = dict(m.beliefs)
    beliefs[b] = LexBelief.of_points(("C", groups[t2][1]), ("D", groups[t2][0]))
    bad = IncompleteModel(m.form, m.reference_u, dict(m.utilities), beliefs)
    assert not check_observation_redundancy(bad, groups)
    assert check_observation_redundancy(bad, [[th] for th in bad.types])


def test_single_class_partition_gives_one_type_each():
    flat = make_game(["A", "B"], ["C", "D"], [[0, 0], [0, 0]], [[1, 1], [1, 1]])
    m = CompleteModel(flat, {
        t1: LexBelief([BeliefLevel.uniform([("C", t2), ("D", t2)])]),
        t2: LexBelief([BeliefLevel.uniform([("A", t1), ("B", t1)])]),
    })
    out, groups = complete_to_incomplete(m, return_groups=True)
    assert all(len(g) == 1 for g in groups.values())
    assert all(out.carries_u(th) for th in out.types)
    assert find_isomorphism(incomplete_to_complete(out), m) is not None


def test_in2co_fixture(ex_in):
    co, rep = incomplete_to_complete(ex_in, return_map=True)
    assert set(co.types) == {th11, th21}
    assert rep[th12] == th11 and rep[th22] == th21
    assert co.types[th11] == LexBelief.of_points(("D", th21), ("C", th21))
    assert co.types[th21] == LexBelief.of_points(("A", th11), ("B", th11))
    assert belief_classes(ex_in)[th11] == (th11, th12)
    assert co.optimal(th11) == {"A"} and co.optimal(th21) == {"D"}


def test_in2co_distinct_beliefs_is_identity(ex_co):
    m = complete_to_incomplete(ex_co)
    # break every group so each type has its own belief
    beliefs = {th: b for th, b in m.beliefs.items()}
    distinct = IncompleteModel(m.form, m.reference_u, {th: m.utilities[th] for th in m.types if th.name.endswith("#1")},
                               {th: b.rewrite(lambda p: (p[0], TypeId(p[1].player, p[1].name.split("#")[0] + "#1")))
                                for th, b in beliefs.items() if th.name.endswith("#1")})
    co, rep = incomplete_to_complete(distinct, return_map=True)
    assert all(rep[th] == th for th in distinct.types)
    assert all(co.types[th] == distinct.beliefs[th] for th in distinct.types)


def test_round_trip_fixture(ex_co):
    back = incomplete_to_complete(complete_to_incomplete(ex_co))
    assert find_isomorphism(back, ex_co) is not None


def test_isomorphism_rejects_different_models(ex_co, ex_in):
    other = CompleteModel(ex_co.game, {t1: LexBelief.of_points(("C", t2), ("D", t2)), t2: ex_co.types[t2]})
    assert find_isomorphism(ex_co, other) is None
    assert find_isomorphism(ex_co, ex_in) is None
    assert find_isomorphism(ex_in, ex_in) == {th: th for th in ex_in.types}


def _random_model(s):
    rng = random.Random(s)
    g = random_game(rng, sizes=(2, 3))
    return random_complete_model(rng, g, max_types=2)


@given(st.integers(0, 10**6))
def test_transform_properties(s):
    m = _random_model(s)
    out, groups = complete_to_incomplete(m, return_groups=True)
    for t in m.types:
        assert is_valid_partition(m, t, preference_partition(m, t))
        for th in groups[t]:
            assert choice_marginals_equal(m.types[t], out.beliefs[th])
        assert set(optimal_choices_co(m, t)) == set(optimal_choices_in(out, groups[t][0]))
        assert len(groups[t]) == len(preference_partition(m, t))
    assert check_observation_redundancy(out, groups)
    assert all(believes_rationality(out, th) for th in out.types)
    back, rep = incomplete_to_complete(out, return_map=True)
    for th in out.types:
        assert choice_marginals_equal(out.beliefs[th], back.types[rep[th]])
    if beliefs_pairwise_distinct(m):
        assert find_isomorphism(back, m) is not None
    assert incomplete_to_complete(out).types.keys() == back.types.keys()  # deterministic naming
