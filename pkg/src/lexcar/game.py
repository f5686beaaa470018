"""Finite two-player games and game forms.

Players are numbered 1 and 2.  A utility function is always stored from its
owner's point of view: rows are the owner's choices, columns the opponent's.
The JSON game file uses the same orientation, keyed ``"(own,opp)"``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import format_rational, parse_rational

PLAYERS = (1, 2)


class GameParseError(ValueError):
    """Raised when a game or model file is malformed.  ``where`` names the spot."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


def opponent(player: int) -> int:
    return 3 - player


@dataclass(frozen=True)
class GameForm:
    choices: tuple  # (tuple of player-1 labels, tuple of player-2 labels)
    names: tuple = ("1", "2")

    def __post_init__(self):
        if len(self.choices) != 2:
            raise ValueError("a game form has exactly two players")
        for i, cs in enumerate(self.choices, start=1):
            if not cs:
                raise ValueError(f"player {i} has no choices")
            if len(set(cs)) != len(cs):
                raise ValueError(f"player {i} has duplicate choice labels")

    def of(self, player: int) -> tuple:
        return self.choices[player - 1]

    def index(self, player: int, choice: str) -> int:
        try:
            return self.of(player).index(choice)
        except ValueError:
            raise KeyError(f"player {player} has no choice {choice!r}") from None


@dataclass(frozen=True)
class UtilityFn:
    """Utility of ``owner``: ``values[own_index][opp_index]``."""

    owner: int
    own_choices: tuple
    opp_choices: tuple
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.own_choices) or any(
            len(row) != len(self.opp_choices) for row in self.values
        ):
            raise ValueError("utility matrix does not cover the choice grid")

    def __call__(self, own: str, opp: str) -> Fraction:
        try:
            i = self.own_choices.index(own)
            j = self.opp_choices.index(opp)
        except ValueError:
            raise KeyError(f"unknown choice in ({own!r}, {opp!r})") from None
        return self.values[i][j]

    def row(self, own: str) -> tuple:
        return self.values[self.own_choices.index(own)]

    @classmethod
    def from_mapping(cls, form: GameForm, owner: int, table: Mapping) -> "UtilityFn":
        own, opp = form.of(owner), form.of(3 - owner)
        values = tuple(
            tuple(Fraction(table[(a, b)]) for b in opp) for a in own
        )
        return cls(owner, own, opp, values)

    @classmethod
    def constant(cls, form: GameForm, owner: int, value=0) -> "UtilityFn":
        own, opp = form.of(owner), form.of(3 - owner)
        v = Fraction(value)
        return cls(owner, own, opp, tuple(tuple(v for _ in opp) for _ in own))

    def to_json(self) -> dict:
        return {
            f"({a},{b})": format_rational(self.values[i][j])
            for i, a in enumerate(self.own_choices)
            for j, b in enumerate(self.opp_choices)
        }


@dataclass(frozen=True)
class Game:
    form: GameForm
    utilities: tuple  # (UtilityFn for player 1, UtilityFn for player 2)

    def u(self, player: int) -> UtilityFn:
        return self.utilities[player - 1]

    def choices(self, player: int) -> tuple:
        return self.form.of(player)


def utility(g: Game, player: int, own: str, opp: str) -> Fraction:
    return g.u(player)(own, opp)


def make_game(c1: Sequence[str], c2: Sequence[str], u1, u2, names=("1", "2")) -> Game:
    """Build a game from row-major matrices.

    ``u1[a][b]`` is player 1's payoff for (c1[a], c2[b]); ``u2[b][a]`` is
    player 2's payoff when playing c2[b] against c1[a].
    """
    form = GameForm((tuple(c1), tuple(c2)), tuple(names))
    U1 = UtilityFn(1, form.of(1), form.of(2), tuple(tuple(Fraction(x) for x in r) for r in u1))
    U2 = UtilityFn(2, form.of(2), form.of(1), tuple(tuple(Fraction(x) for x in r) for r in u2))
    return Game(form, (U1, U2))


# ---------------------------------------------------------------- parsing

def _parse_key(key: str, where: str) -> tuple:
    k = key.strip()
    if not (k.startswith("(") and k.endswith(")")) or k.count(",") != 1:
        raise GameParseError(where, f"bad cell key {key!r}, expected '(own,opp)'")
    a, b = k[1:-1].split(",")
    return a.strip(), b.strip()


def parse_form(obj, where: str = "game") -> GameForm:
    if not isinstance(obj, dict):
        raise GameParseError(where, "expected a JSON object")
    players = obj.get("players")
    if not isinstance(players, list) or len(players) != 2:
        raise GameParseError(f"{where}.players", "expected a list of two players")
    choices, names = [], []
    for i, p in enumerate(players):
        loc = f"{where}.players[{i}]"
        if not isinstance(p, dict):
            raise GameParseError(loc, "expected an object")
        cs = p.get("choices")
        if not isinstance(cs, list) or not cs or not all(isinstance(c, str) for c in cs):
            raise GameParseError(f"{loc}.choices", "expected a nonempty list of strings")
        seen = set()
        for c in cs:
            if c in seen:
                raise GameParseError(f"{loc}.choices", f"duplicate label {c!r}")
            if any(ch in c for ch in "(),") or not c.strip() or c != c.strip():
                raise GameParseError(f"{loc}.choices", f"illegal label {c!r}")
            seen.add(c)
        choices.append(tuple(cs))
        names.append(str(p.get("name", i + 1)))
    return GameForm(tuple(choices), tuple(names))


def parse_utility(form: GameForm, owner: int, obj, where: str) -> UtilityFn:
    if not isinstance(obj, dict):
        raise GameParseError(where, "expected an object of '(own,opp)': 'p/q' cells")
    own, opp = form.of(owner), form.of(3 - owner)
    table = {}
    for key, val in obj.items():
        a, b = _parse_key(key, f"{where}[{key!r}]")
        if a not in own or b not in opp:
            raise GameParseError(
                f"{where}[{key!r}]",
                f"unknown choice pair for player {owner} (own={a!r}, opp={b!r})",
            )
        if (a, b) in table:
            raise GameParseError(f"{where}[{key!r}]", "duplicate cell")
        try:
            table[(a, b)] = parse_rational(val)
        except ValueError as e:
            raise GameParseError(f"{where}[{key!r}]", str(e)) from None
    for a in own:
        for b in opp:
            if (a, b) not in table:
                raise GameParseError(where, f"missing cell ({a},{b})")
    return UtilityFn.from_mapping(form, owner, table)


def parse_utility_pair(form: GameForm, obj, where: str) -> tuple:
    if not isinstance(obj, list) or len(obj) != 2:
        raise GameParseError(where, "expected a list of two utility tables")
    return tuple(parse_utility(form, i + 1, obj[i], f"{where}[{i}]") for i in range(2))


def game_from_json(obj, where: str = "game") -> Game:
    form = parse_form(obj, where)
    if "utilities" not in obj:
        raise GameParseError(f"{where}.utilities", "missing")
    return Game(form, parse_utility_pair(form, obj["utilities"], f"{where}.utilities"))


def parse_game(text: str) -> Game:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameParseError(f"line {e.lineno} col {e.colno}", e.msg) from None
    return game_from_json(obj)


def form_to_json(form: GameForm) -> dict:
    return {
        "players": [
            {"name": form.names[i], "choices": list(form.choices[i])} for i in range(2)
        ]
    }


def game_to_json(g: Game) -> dict:
    out = form_to_json(g.form)
    out["utilities"] = [g.u(1).to_json(), g.u(2).to_json()]
    return out


def dump_game(g: Game) -> str:
    return json.dumps(game_to_json(g), indent=2)


def iter_profiles(form: GameForm) -> Iterable[tuple]:
    for a in form.of(1):
        for b in form.of(2):
            yield a, b
