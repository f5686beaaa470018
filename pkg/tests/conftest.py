import json
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from lexcar import fixture_path, parse_complete_model, parse_game, parse_incomplete_model

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.dirname(fixture_path("small.game.json"))


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0, help="seed for the random game/model corpus")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


def _read(name):
    with open(os.path.join(DATA, name)) as fh:
        return fh.read()


@pytest.fixture(scope="session")
def ex_game():
    return parse_game(_read("small.game.json"))


@pytest.fixture
def ex_co():
    return parse_complete_model(_read("small.complete.json"), DATA)


@pytest.fixture
def ex_in():
    return parse_incomplete_model(_read("small.incomplete.json"), DATA)


@pytest.fixture
def ex_co_json():
    return json.loads(_read("small.complete.json"))


@pytest.fixture
def ex_in_json():
    return json.loads(_read("small.incomplete.json"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
