"""
A 2x2 game, end to end
======================

Load the bundled 2x2 game and its two-type model, look at the numbers the
checkers work with, then move the model to incomplete information and back.
"""
from lexcar import fixture_path, parse_complete_model, parse_incomplete_model
from lexcar.beliefs import expected_utility_vector, format_belief
from lexcar.complete import common_assumption, n_fold_assumption
from lexcar.exact import format_vector
from lexcar.incomplete import common_support_condition
from lexcar.transform import complete_to_incomplete, find_isomorphism, incomplete_to_complete

path = fixture_path("small.complete.json")
m = parse_complete_model(open(path).read(), path.rsplit("/", 1)[0])
g = m.game

# %%
# Payoffs.  Player 1 picks a row, player 2 a column.
for a in g.choices(1):
    print(a, [(str(g.u(1)(a, b)), str(g.u(2)(b, a))) for b in g.choices(2)])

# %%
# Each type holds a lexicographic belief; a choice is scored by a vector of
# expected utilities, one entry per level, compared lexicographically.
for t, b in m.types.items():
    print(t, format_belief(b))
    for c in g.choices(t.player):
        print("   ", c, format_vector(expected_utility_vector(c, b, g.u(t.player))))
    print("    optimal:", sorted(m.optimal(t)))

# %%
# Iterated admissibility: B and C are weakly dominated, so one round leaves
# ({A}, {D}) and nothing more changes.
print(m.ia.rounds)

# %%
# Fold by fold: caution at fold 0, assumption of rationality from fold 1.
rep = n_fold_assumption(m, 3)
for t in m.types:
    print(t, [rep.holds(t, n) for n in range(4)])
print("common assumption of rationality:", common_assumption(m))

# %%
# Split every type by its preference classes.  The best class keeps the
# game's utility, the others get a utility that makes their class optimal.
m_in, groups = complete_to_incomplete(m, return_groups=True)
for t, ths in groups.items():
    for th in ths:
        print(th, "carries u" if m_in.carries_u(th) else "carries v",
              format_belief(m_in.beliefs[th]), sorted(m_in.optimal(th)))
print("the common support condition:", common_support_condition(m_in))

# %%
# Merging same-belief types undoes the split.
back = incomplete_to_complete(m_in)
print("isomorphic to the original:", find_isomorphism(back, m))

# %%
# The hand-written incomplete model uses a different v for the second types
# but lands on the same merged model.
path = fixture_path("small.incomplete.json")
hand = parse_incomplete_model(open(path).read())
for t, b in incomplete_to_complete(hand).types.items():
    print(t, format_belief(b))
