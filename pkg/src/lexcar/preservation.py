"""Transformation preservation properties as executable checks.

Each function returns ``(accepted, violations)``: the types whose premise
the checkers certify, and those among them whose conclusion fails.
"""
from __future__ import annotations

from .complete import CompleteModel, common_assumption, common_full_belief_caution_co
from .incomplete import IncompleteModel, common_full_belief
from .transform import complete_to_incomplete, incomplete_to_complete


def caution_co_to_in(m: CompleteModel, m_in=None, groups=None):
    """Common full belief in caution survives the complete -> incomplete split."""
    if m_in is None:
        m_in, groups = complete_to_incomplete(m, return_groups=True)
    pre = common_full_belief_caution_co(m)
    post = common_full_belief(m_in, "caution")
    accepted = [t for t in m.types if pre[t]]
    bad = [(t, th) for t in accepted for th in groups[t] if not post[th]]
    return accepted, bad


def caution_in_to_co(m_in: IncompleteModel, m_co=None, rep=None):
    """Common full belief in caution survives the incomplete -> complete merge."""
    if m_co is None:
        m_co, rep = incomplete_to_complete(m_in, return_map=True)
    pre = common_full_belief(m_in, "caution")
    post = common_full_belief_caution_co(m_co)
    accepted = [th for th in m_in.types if pre[th]]
    bad = [(th, rep[th]) for th in accepted if not post[rep[th]]]
    return accepted, bad


def car_to_supported(m: CompleteModel, m_in=None, groups=None):
    """Common assumption of rationality (with common full belief in caution)
    implies every split type has common full belief in supported good
    choices and prior belief in u."""
    if m_in is None:
        m_in, groups = complete_to_incomplete(m, return_groups=True)
    car = common_assumption(m)
    caut = common_full_belief_caution_co(m)
    post = common_full_belief(m_in, "supported_and_prior")
    accepted = [t for t in m.types if car[t] and caut[t]]
    bad = [(t, th) for t in accepted for th in groups[t] if not post[th]]
    return accepted, bad


def supported_to_car(m_in: IncompleteModel, m_co=None, rep=None):
    """Common full belief in caution, rationality, supported good choices and
    prior belief in u implies the merged type expresses common assumption
    of rationality."""
    if m_co is None:
        m_co, rep = incomplete_to_complete(m_in, return_map=True)
    c = common_full_belief(m_in, "caution")
    r = common_full_belief(m_in, "rationality")
    s = common_full_belief(m_in, "supported_and_prior")
    car = common_assumption(m_co)
    accepted = [th for th in m_in.types if c[th] and r[th] and s[th]]
    bad = [(th, rep[th]) for th in accepted if not car[rep[th]]]
    return accepted, bad


PRESERVATION_CHECKS = ("caution_co_to_in", "caution_in_to_co", "car_to_supported", "supported_to_car")


def preservation_suite(games, seed: int = 0, random_models: int = 1) -> dict:
    """Run all four preservation check checks over a model corpus built from ``games``.

    For each game: the synthesized CAR witness plus ``random_models`` random
    complete models; forward checks run on each complete model, backward
    checks on its complete -> incomplete transform.  Returns
    ``{preservation check: (accepted count, violations)}``.
    """
    import random

    from .corpus import random_complete_model
    from .solver import synthesize_car_model

    rng = random.Random(seed)
    out = {name: [0, []] for name in PRESERVATION_CHECKS}

    def record(name, res):
        accepted, bad = res
        out[name][0] += len(accepted)
        out[name][1].extend(bad)

    for g in games:
        models = [synthesize_car_model(g)] + [random_complete_model(rng, g) for _ in range(random_models)]
        for m in models:
            m_in, groups = complete_to_incomplete(m, return_groups=True)
            record("caution_co_to_in", caution_co_to_in(m, m_in, groups))
            record("car_to_supported", car_to_supported(m, m_in, groups))
            record("caution_in_to_co", caution_in_to_co(m_in))
            record("supported_to_car", supported_to_car(m_in))
    return {k: (v[0], v[1]) for k, v in out.items()}
