"""A losing player with a positive two-game expectation.

Both styles lose on average: attacking wins 45% and loses 55% of games,
defending wins 10% and loses 15% (drawing the rest). Yet over a two-game
match the right switching rule has strictly positive expected sign: attack
first, sit on a win, attack again after a loss.
"""

from matchplay import MatchSpec, brute_force_optimal, exact_policy_gain, solve

spec = MatchSpec.from_probs(0.45, 0.0, 0.55, 0.10, 0.75, 0.15)

print("one-game drifts:  offense", spec.offense.drift, " defense", spec.defense.drift)
print("both negative, so any fixed style loses money on average\n")

result = solve(spec, 2)
print("optimal two-game gain:", result.gain)
print("exhaustive check:     ", brute_force_optimal(spec, 2))

print("\nthe optimal plan:")
print("  game 1 at 0:0   ->", result.policy.action(2, 0).value)
print("  game 2 after a win  ->", result.policy.action(1, 1).value)
print("  game 2 after a loss ->", result.policy.action(1, -1).value)

print("\nwhy it works: a win converts to a near-sure draw-out (value 0.85),")
print("a loss costs only the chance of the comeback attack:")
for x in (1, 0, -1):
    print(f"  value with one game left at score {x:+d}: {result.values.value(1, x):+.4f}")

print("\nfixed styles over the same two games:")
print("  always attack:", exact_policy_gain(spec, "off", 2))
print("  always defend:", exact_policy_gain(spec, "def", 2))
