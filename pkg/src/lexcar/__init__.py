"""Lexicographic epistemic models for finite two-player games.

Exact-rational checkers for caution, rationality and (common) assumption of
rationality in complete-information models, their incomplete-information
counterparts, transformations between the two, and an iterated
admissibility solver used as the decision oracle.
"""
from importlib import resources

from .beliefs import BeliefLevel, LexBelief, TypeId, expected_utility_vector, infinitely_more_likely
from .complete import (
    CompleteModel,
    FoldReport,
    PreconditionError,
    Verdict,
    common_assumption,
    common_full_belief_caution_co,
    n_fold_assumption,
    optimal_choices_co,
    parse_complete_model,
)
from .exact import ContractError, Ordering, Rational, format_rational, lex_compare, parse_rational
from .game import Game, GameForm, GameParseError, UtilityFn, make_game, parse_game
from .incomplete import (
    IncompleteModel,
    common_support_condition,
    construct_supporting_utility,
    n_fold_supported_and_prior,
    parse_incomplete_model,
)
from .solver import IARounds, admissible_set, iterated_admissibility, synthesize_car_model, weakly_dominated
from .theorem import verify_theorem
from .transform import complete_to_incomplete, find_isomorphism, incomplete_to_complete

__version__ = "0.1.0"


def fixture_path(name: str) -> str:
    """Path of a bundled example file (small.game.json, small.complete.json, small.incomplete.json)."""
    return str(resources.files(__package__) / "data" / name)
