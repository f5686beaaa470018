import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexcar.beliefs import BeliefLevel, LexBelief, TypeId, marginal_expected_utility_vector
from lexcar.complete import PreconditionError
from lexcar.corpus import random_distribution, random_game
from lexcar.exact import ContractError
from lexcar.game import GameParseError, UtilityFn
from lexcar.incomplete import (
    IncompleteModel,
    believes_rationality,
    common_full_belief,
    common_support_condition,
    construct_supporting_utility,
    incomplete_model_from_json,
    incomplete_model_to_json,
    is_cautious_in,
    n_fold_supported_and_prior,
    optimal_choices_in,
    parse_incomplete_model,
    prior_belief_in_u,
    supports_every_good_choice,
)

from oracles import random_supporting_case, supporting_utility_violation

th11, th12, th21, th22 = TypeId(1, "th11"), TypeId(1, "th12"), TypeId(2, "th21"), TypeId(2, "th22")


def _replace(m, beliefs=None, utilities=None):
    b = dict(m.beliefs)
    b.update(beliefs or {})
    u = dict(m.utilities)
    u.update(utilities or {})
    return IncompleteModel(m.form, m.reference_u, u, b)


def test_fixture_orientation(ex_in):
    # player 2's second type: C gets (2,0), D gets (1,1) against ((A,.),(B,.))
    v = ex_in.utilities[th22]
    assert (v("C", "A"), v("C", "B"), v("D", "A"), v("D", "B")) == (2, 0, 1, 1)


def test_optimal_choices(ex_in):
    assert optimal_choices_in(ex_in, th21) == ["D"]
    assert optimal_choices_in(ex_in, th22) == ["C"]
    assert optimal_choices_in(ex_in, th11) == ["A"]
    assert optimal_choices_in(ex_in, th12) == ["B"]
    zero = UtilityFn.constant(ex_in.form, 2)
    m = _replace(ex_in, utilities={th21: zero})
    assert optimal_choices_in(m, th21) == ["C", "D"]


def test_caution(ex_in):
    assert is_cautious_in(ex_in, th11)
    m = _replace(ex_in, beliefs={th11: LexBelief.of_points(("D", th21))})
    assert not is_cautious_in(m, th11)


def test_caution_single_opponent_type(ex_in):
    b = LexBelief([BeliefLevel.uniform([("C", th21), ("D", th21)])])
    assert is_cautious_in(_replace(ex_in, beliefs={th11: b}), th11)


def test_caution_needs_same_belief_twin(ex_in):
    # th22 no longer shares th21's belief, so C paired with th22 cannot cover th21
    m = _replace(ex_in, beliefs={th22: LexBelief.of_points(("B", th12), ("A", th11))})
    assert not is_cautious_in(m, th11)


def test_rationality(ex_in):
    assert believes_rationality(ex_in, th11)
    # th21 believes th11 would choose B, but A is th11's only optimum
    m = _replace(ex_in, beliefs={th21: LexBelief.of_points(("B", th11), ("A", th12))})
    assert not believes_rationality(m, th21)
    m = _replace(ex_in, beliefs={th21: LexBelief.of_points(("A", th11))})
    assert believes_rationality(m, th21)


def test_supporting_utility_example(ex_in):
    marg = ({"C": Fraction(1, 2), "D": Fraction(1, 2)},)
    v = construct_supporting_utility(ex_in.form, 1, ["B"], marg)
    assert [[v(a, b) for b in "CD"] for a in "AB"] == [[0, 0], [1, 1]]
    v = construct_supporting_utility(ex_in.form, 1, ["A", "B"], marg)
    assert {v(a, b) for a in "AB" for b in "CD"} == {1}


def test_supporting_utility_vs_printed_table(ex_in):
    # the fixture's hand-written v for th12 and the formula's output differ,
    # yet both make B optimal under th12's belief
    b = ex_in.beliefs[th12]
    formula = construct_supporting_utility(ex_in.form, 1, ["B"], b)
    printed = ex_in.utilities[th12]
    assert formula != printed
    for v in (formula, printed):
        vec = {a: marginal_expected_utility_vector(a, b.choice_marginal(), v) for a in "AB"}
        assert vec["B"] == max(vec.values())


def test_supporting_utility_contract(ex_in):
    with pytest.raises(ContractError):
        construct_supporting_utility(ex_in.form, 1, [], ({"C": 1},))
    with pytest.raises(ContractError):
        construct_supporting_utility(ex_in.form, 1, ["C"], ({"C": 1},))


def test_supports_every_good_choice(ex_in):
    v = supports_every_good_choice(ex_in, th11, {"D"})
    assert v.ok and ("supported", "D", th21) in v.witnesses
    assert supports_every_good_choice(ex_in, th11, set()).ok
    # drop th21 from the belief: nothing carrying u2 remains to support D
    b = LexBelief.of_points(("D", th22), ("C", th22))
    v = supports_every_good_choice(_replace(ex_in, beliefs={th11: b}), th11, {"D"})
    assert not v.ok and ("unsupported", "D") in v.violations


def test_supports_needs_caution(ex_in):
    m = _replace(ex_in, beliefs={th11: LexBelief.of_points(("D", th21))})
    with pytest.raises(PreconditionError):
        supports_every_good_choice(m, th11, {"D"})


def test_prior_belief_in_u(ex_in):
    assert prior_belief_in_u(ex_in, th11).ok
    m = _replace(ex_in, beliefs={th11: LexBelief.of_points(("C", th22), ("D", th21)),
                                 th12: LexBelief.of_points(("C", th22), ("D", th21))})
    v = prior_belief_in_u(m, th11)
    assert not v.ok and v.violations[0][0] == "order"


def test_prior_belief_all_u_level_one(ex_game):
    from lexcar.beliefs import TypeId as T

    a, b = T(1, "a"), T(2, "b")
    m = IncompleteModel(ex_game.form, ex_game.utilities, {a: ex_game.u(1), b: ex_game.u(2)}, {
        a: LexBelief([BeliefLevel.uniform([("C", b), ("D", b)])]),
        b: LexBelief([BeliefLevel.uniform([("A", a), ("B", a)])]),
    })
    assert prior_belief_in_u(m, a).ok and prior_belief_in_u(m, b).ok


def test_n_fold_fixture(ex_in):
    rep = n_fold_supported_and_prior(ex_in, 5)
    assert all(rep.holds(t, n) for t in ex_in.types for n in range(6))
    with pytest.raises(ContractError):
        n_fold_supported_and_prior(ex_in, 0)


def test_n_fold_swapped_levels(ex_in):
    b = LexBelief.of_points(("C", th22), ("D", th21))
    m = _replace(ex_in, beliefs={th11: b, th12: b})
    rep = n_fold_supported_and_prior(m, 3)
    assert rep.holds(th11, 0) and not rep.holds(th11, 1)


def test_common_full_belief_fixture(ex_in):
    for prop in ("caution", "rationality", "supported_and_prior"):
        assert all(common_full_belief(ex_in, prop).values()), prop
    assert all(common_support_condition(ex_in).values())
    with pytest.raises(ValueError):
        common_full_belief(ex_in, "honesty")


def test_common_caution_contagion(ex_in):
    # th21 becomes non-cautious; everyone reaches it through possibility
    m = _replace(ex_in, beliefs={th21: LexBelief.of_points(("A", th11)), th22: LexBelief.of_points(("A", th11))})
    assert not any(common_full_belief(m, "caution").values())


def test_zeroed_reference_changes_support(ex_in):
    zero = (UtilityFn.constant(ex_in.form, 1), UtilityFn.constant(ex_in.form, 2))
    m = IncompleteModel(ex_in.form, zero, dict(ex_in.utilities), dict(ex_in.beliefs))
    rep = n_fold_supported_and_prior(m, 2)
    assert not any(rep.holds(t, 1) for t in m.types)
    assert not any(common_support_condition(m).values())


def test_file_round_trip(ex_in):
    obj = json.loads(json.dumps(incomplete_model_to_json(ex_in, {"note": "x"})))
    assert obj["provenance"] == {"note": "x"}
    back = incomplete_model_from_json(obj)
    assert back.beliefs == ex_in.beliefs and back.utilities == ex_in.utilities
    assert tuple(back.reference_u) == tuple(ex_in.reference_u)


@pytest.mark.parametrize("key", ["reference_u", "game"])
def test_missing_sections(ex_in_json, key):
    del ex_in_json[key]
    with pytest.raises(GameParseError) as e:
        parse_incomplete_model(json.dumps(ex_in_json))
    assert key in str(e.value)


def test_missing_type_utility(ex_in_json):
    del ex_in_json["types"][1]["utility"]
    with pytest.raises(GameParseError) as e:
        parse_incomplete_model(json.dumps(ex_in_json))
    assert "types[1].utility" in str(e.value)


@given(st.integers(0, 10**6))
def test_supporting_utility_property(s):
    assert supporting_utility_violation(*random_supporting_case(random.Random(s))) == []
