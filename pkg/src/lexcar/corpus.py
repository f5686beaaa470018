"""Random games and models for property tests and demos.

Everything takes an explicit ``random.Random`` so runs are reproducible
from a seed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .beliefs import BeliefLevel, LexBelief, TypeId
from .game import make_game


def random_rational(rng: random.Random, max_den: int = 6, lo: int = -3, hi: int = 3) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_game(rng: random.Random, sizes=(2, 4), max_den: int = 6, dup_prob: float = 0.15):
    """Random 2-player game.  With probability ``dup_prob`` a payoff is
    copied from a neighbouring cell, so ties and weak dominance show up
    far more often than with independent draws."""
    n1, n2 = rng.randint(*sizes), rng.randint(*sizes)
    c1 = [chr(ord("A") + k) for k in range(n1)]
    c2 = [chr(ord("A") + n1 + k) for k in range(n2)]

    def matrix(rows, cols):
        out = []
        for r in range(rows):
            row = []
            for c in range(cols):
                if out and rng.random() < dup_prob:
                    row.append(out[rng.randrange(len(out))][c])
                elif row and rng.random() < dup_prob:
                    row.append(row[-1])
                else:
                    row.append(random_rational(rng, max_den))
            out.append(row)
        return out

    return make_game(c1, c2, matrix(n1, n2), matrix(n2, n1))


def corpus_games(seed: int = 0, n: int = 200, sizes=(2, 4), max_den: int = 6) -> list:
    rng = random.Random(seed)
    return [random_game(rng, sizes, max_den) for _ in range(n)]


def random_distribution(rng: random.Random, keys, max_den: int = 6) -> dict:
    keys = list(keys)
    raw = [Fraction(rng.randint(1, max_den)) for _ in keys]
    s = sum(raw)
    return {k: w / s for k, w in zip(keys, raw)}


def random_lex_belief(rng: random.Random, pairs, max_levels: int = 3, cover_prob: float = 0.7) -> LexBelief:
    """Random lexicographic belief over ``pairs``.

    Pairs are shuffled and split into consecutive blocks, one block first
    appearing per level; with probability ``cover_prob`` every pair appears
    somewhere, otherwise a random suffix is dropped.
    """
    pairs = list(pairs)
    rng.shuffle(pairs)
    if rng.random() >= cover_prob and len(pairs) > 1:
        pairs = pairs[: rng.randint(1, len(pairs) - 1)]
    k = rng.randint(1, min(max_levels, len(pairs)))
    cuts = sorted(rng.sample(range(1, len(pairs)), k - 1)) if k > 1 else []
    blocks, prev = [], 0
    for c in cuts + [len(pairs)]:
        blocks.append(pairs[prev:c])
        prev = c
    levels = []
    for i, block in enumerate(blocks):
        keys = list(block)
        # occasionally carry earlier pairs forward too
        if i and rng.random() < 0.3:
            keys = [p for b in blocks[:i] for p in b] + keys
        levels.append(BeliefLevel(random_distribution(rng, keys)))
    return LexBelief(levels)


def random_complete_model(rng: random.Random, game, max_types: int = 2, **kw):
    from .complete import CompleteModel

    types = {}
    ids = {
        i: [TypeId(i, f"t{i}{chr(ord('a') + k)}") for k in range(rng.randint(1, max_types))]
        for i in (1, 2)
    }
    for i in (1, 2):
        j = 3 - i
        for t in ids[i]:
            deemed = rng.sample(ids[j], rng.randint(1, len(ids[j])))
            pairs = [(c, tj) for tj in deemed for c in game.choices(j)]
            types[t] = random_lex_belief(rng, pairs, **kw)
    return CompleteModel(game, types)
