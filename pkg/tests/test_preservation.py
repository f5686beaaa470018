import random

from hypothesis import given
from hypothesis import strategies as st

from lexcar.beliefs import TypeId
from lexcar.complete import n_fold_assumption
from lexcar.corpus import corpus_games, random_complete_model, random_game
from lexcar.incomplete import common_support_condition
from lexcar.preservation import car_to_supported, caution_co_to_in, caution_in_to_co, preservation_suite, supported_to_car
from lexcar.solver import synthesize_car_model
from lexcar.transform import complete_to_incomplete, incomplete_to_complete

from oracles import backward_counterexample


def test_preservation_on_fixtures(ex_co, ex_in):
    for check in (caution_co_to_in, car_to_supported):
        accepted, bad = check(ex_co)
        assert len(accepted) == 2 and bad == []
    for check in (caution_in_to_co, supported_to_car):
        accepted, bad = check(ex_in)
        assert len(accepted) == 4 and bad == []


def test_preservation_suite_small_corpus(seed):
    res = preservation_suite(corpus_games(seed + 1, 30), seed=seed)
    for name, (accepted, bad) in res.items():
        assert accepted > 0, name
        assert bad == [], name


@given(st.integers(0, 10**6))
def test_preservation_on_random_models(s):
    rng = random.Random(s)
    g = random_game(rng, sizes=(2, 3))
    for m in (random_complete_model(rng, g), synthesize_car_model(g)):
        m_in, groups = complete_to_incomplete(m, return_groups=True)
        assert caution_co_to_in(m, m_in, groups)[1] == []
        assert car_to_supported(m, m_in, groups)[1] == []
        assert caution_in_to_co(m_in)[1] == []
        assert supported_to_car(m_in)[1] == []


def test_merge_preservation_needs_pairwise_support():
    # every type satisfies the literal the common support condition ...
    m = backward_counterexample()
    assert all(common_support_condition(m).values())
    accepted, bad = supported_to_car(m)
    assert len(accepted) == 4
    # ... but merging j, jv, jw ties c and d at i's second level
    i = TypeId(1, "i")
    assert (i, i) in bad
    co = incomplete_to_complete(m)
    v = n_fold_assumption(co, 1).verdicts[i][1]
    assert not v.ok and ("order", "(c,j)", "(d,j)", 2) in v.violations
    # requiring the supporting pair itself rejects the model
    assert not any(common_support_condition(m, pairwise=True).values())
