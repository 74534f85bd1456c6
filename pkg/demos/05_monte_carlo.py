"""Monte Carlo estimates against exact values, reproducibly.

Simulation never beats the exact forward propagation for this problem, but
it validates the whole pipeline end to end. Streams are counter-based, so an
estimate depends only on (seed, sample index, game index): re-running or
re-batching the samples reproduces it bit for bit.
"""

from matchplay import (
    MatchSpec,
    cat_policy,
    estimate_gain,
    exact_policy_gain,
    solve,
    table_policy,
)

spec = MatchSpec.from_probs(0.45, 0.0, 0.55, 0.10, 0.75, 0.15)
N = 8

plans = (
    ("always attack", "off"),
    ("always defend", "def"),
    ("protect the lead", cat_policy()),
    ("optimal table", table_policy(solve(spec, N).policy)),
)

print(f"{N}-game match, 200k samples each, seed 42\n")
print(f"{'policy':<18} {'exact':>10} {'estimate':>10} {'std err':>9} {'pull':>6}")
for tag, policy in plans:
    if tag == "optimal table":
        exact = solve(spec, N).gain
    else:
        exact = exact_policy_gain(spec, policy, N)
    est = estimate_gain(spec, policy, N, 200_000, seed=42)
    pull = 0.0 if est.std_error == 0.0 else (est.mean - exact) / est.std_error
    print(f"{tag:<18} {exact:>10.5f} {est.mean:>10.5f} {est.std_error:>9.5f} {pull:>+6.2f}")

again = estimate_gain(spec, cat_policy(), N, 200_000, seed=42)
print("\nsame seed, same estimate:", again.mean == estimate_gain(spec, cat_policy(), N, 200_000, seed=42).mean)
