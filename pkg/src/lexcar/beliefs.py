"""Lexicographic beliefs over opponent (choice, type) pairs.

Shared by the complete- and incomplete-information models.  Each level is a
sparse probability distribution: only pairs with positive weight are stored,
in the order they were given (that order drives deterministic witness
reporting).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional

from .exact import ContractError, format_rational


@dataclass(frozen=True, order=True)
class TypeId:
    player: int
    name: str

    def __str__(self):
        return self.name


# a pair is (opponent choice label, opponent TypeId)
Pair = tuple


class BeliefLevel:
    """One probability distribution over opponent pairs."""

    __slots__ = ("_items", "_weights")

    def __init__(self, weights: Iterable):
        items = []
        seen = {}
        for pair, w in (weights.items() if isinstance(weights, Mapping) else weights):
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight {w} on {pair}")
            if pair in seen:
                raise ValueError(f"duplicate pair {pair} in belief level")
            seen[pair] = w
            if w > 0:
                items.append((pair, w))
        total = sum((w for _, w in items), Fraction(0))
        if total != 1:
            raise ValueError(f"belief level weights sum to {total}, not 1")
        self._items = tuple(items)
        self._weights = dict(items)

    @classmethod
    def point(cls, choice: str, t: TypeId) -> "BeliefLevel":
        return cls([((choice, t), 1)])

    @classmethod
    def uniform(cls, pairs) -> "BeliefLevel":
        pairs = list(pairs)
        w = Fraction(1, len(pairs))
        return cls([(p, w) for p in pairs])

    def __getitem__(self, pair) -> Fraction:
        return self._weights.get(pair, Fraction(0))

    def __contains__(self, pair) -> bool:
        return pair in self._weights

    def __iter__(self) -> Iterator:
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def support(self) -> tuple:
        return tuple(p for p, _ in self._items)

    def __eq__(self, other):
        if not isinstance(other, BeliefLevel):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self):
        return hash(frozenset(self._weights.items()))

    def __repr__(self):
        inner = ", ".join(f"({c},{t}):{w}" for (c, t), w in self._items)
        return f"BeliefLevel({inner})"


class LexBelief:
    """An ordered sequence of belief levels, most important first."""

    __slots__ = ("levels", "_first")

    def __init__(self, levels: Iterable):
        levels = tuple(l if isinstance(l, BeliefLevel) else BeliefLevel(l) for l in levels)
        if not levels:
            raise ValueError("a lexicographic belief needs at least one level")
        self.levels = levels
        first = {}
        for k, lvl in enumerate(levels):
            for pair in lvl.support():
                first.setdefault(pair, k)
        self._first = first

    @classmethod
    def of_points(cls, *pairs) -> "LexBelief":
        """``LexBelief.of_points(("D", t2), ("C", t2))`` is ((D,t2),(C,t2))."""
        return cls([BeliefLevel.point(c, t) for c, t in pairs])

    def __len__(self):
        return len(self.levels)

    def __eq__(self, other):
        if not isinstance(other, LexBelief):
            return NotImplemented
        return self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        return f"LexBelief({list(self.levels)!r})"

    def first_level(self, pair) -> Optional[int]:
        """0-based index of the first level giving ``pair`` positive weight."""
        return self._first.get(pair)

    def pairs(self) -> tuple:
        """Deemed-possible pairs, ordered by (first level, listing order)."""
        return tuple(self._first)

    def choice_marginal(self) -> tuple:
        out = []
        for lvl in self.levels:
            m = {}
            for (c, _), w in lvl:
                m[c] = m.get(c, Fraction(0)) + w
            out.append(m)
        return tuple(out)

    def rewrite(self, f: Callable) -> "LexBelief":
        """Apply ``f`` to every pair, merging weights of pairs that collide."""
        levels = []
        for lvl in self.levels:
            m = {}
            for pair, w in lvl:
                q = f(pair)
                m[q] = m.get(q, Fraction(0)) + w
            levels.append(BeliefLevel(m))
        return LexBelief(levels)


def deems_possible(b: LexBelief, pair) -> bool:
    return b.first_level(pair) is not None


def possible_types(b: LexBelief) -> set:
    return {t for _, t in b.pairs()}


def expected_utility_vector(choice: str, b: LexBelief, v) -> tuple:
    """Per-level expected utility of ``choice``; the type part of each pair is
    marginalized out.  ``v(own, opp)`` is the owner's utility."""
    return tuple(
        sum((w * v(choice, c) for (c, _), w in lvl), Fraction(0)) for lvl in b.levels
    )


def marginal_expected_utility_vector(choice: str, marginal, v) -> tuple:
    return tuple(
        sum((w * v(choice, c) for c, w in lvl.items()), Fraction(0)) for lvl in marginal
    )


def infinitely_more_likely(b: LexBelief, p1, p2) -> bool:
    k1 = b.first_level(p1)
    if k1 is None:
        return False
    k2 = b.first_level(p2)
    return k2 is None or k1 < k2


def check_pairs_reference(b: LexBelief, choices, type_ids, where: str = "belief"):
    """Raise ContractError if some pair names an unknown choice or type."""
    for c, t in b.pairs():
        if c not in choices:
            raise ContractError(f"{where}: unknown opponent choice {c!r}")
        if t not in type_ids:
            raise ContractError(f"{where}: unknown opponent type {t}")


def format_belief(b: LexBelief) -> str:
    """Render as ((D,t2),(C,t2)); mixed levels as {(D,t2):1/2, ...}."""
    parts = []
    for lvl in b.levels:
        items = list(lvl)
        if len(items) == 1:
            (c, t), _ = items[0]
            parts.append(f"({c},{t})")
        else:
            parts.append(
                "{" + ", ".join(f"({c},{t}):{format_rational(w)}" for (c, t), w in items) + "}"
            )
    return "(" + ",".join(parts) + ")"
