"""
IA survivors, CAR choices and the common support condition on random games
==========================================================================

For each random game: solve iterated admissibility, synthesize a model in
which every type expresses common assumption of rationality, transform it
to incomplete information, and read off the choices each route certifies.

    python3 demos/theorem_corpus.py [n_games] [seed]
"""
import sys
import time
from collections import Counter

from lexcar.corpus import corpus_games
from lexcar.theorem import verify_theorem

n = int(sys.argv[1]) if len(sys.argv) > 1 else 100
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

t0 = time.perf_counter()
depths, sizes, bad = Counter(), Counter(), []
for k, g in enumerate(corpus_games(seed, n)):
    chk = verify_theorem(g)
    depths[chk.ia.m] += 1
    sizes[len(chk.witness.types)] += 1
    if not chk.agree:
        bad.append((k, chk.mismatch()))
dt = time.perf_counter() - t0

print(f"{n} games in {dt:.1f}s, {len(bad)} disagreements {bad[:5]}")
print("IA rounds until stable:", dict(sorted(depths.items())))
print("witness model sizes (types):", dict(sorted(sizes.items())))

# %%
# A closer look at the deepest game.
deep = max(corpus_games(seed, n), key=lambda g: verify_theorem(g).ia.m)
chk = verify_theorem(deep)
for k, r in enumerate(chk.ia.rounds):
    print(k, r)
print("survivors:", chk.survivors)
print("transformed model has", len(chk.transformed.types), "types")
