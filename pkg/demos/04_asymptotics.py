"""Long-match behavior in the three covered regimes.

For a weak player the long-run gain depends only on the defense type:
a strictly losing defense drags the gain to -1, a fair moving defense
floors it at exactly 0, and a sure-draw defense leaves the lead-chasing
value max(0, 2*win/loss - 1). Finite curves approach these limits slowly;
the script prints both.
"""

import numpy as np

from matchplay import MatchSpec, cat_gain_curve, gain_curve, optimal_limit

REGIMES = (
    ("both styles strictly losing", MatchSpec.from_probs(0.40, 0.0, 0.60, 0.10, 0.70, 0.20)),
    ("fair moving defense", MatchSpec.from_probs(0.40, 0.0, 0.60, 0.15, 0.70, 0.15)),
    ("sure-draw defense", MatchSpec.from_probs(0.30, 0.0, 0.70, 0.00, 1.00, 0.00)),
)

for tag, spec in REGIMES:
    verdict = optimal_limit(spec)
    gains = gain_curve(spec, 500).gains["optimal"]
    print(f"{tag}  [{verdict.regime.value}]")
    print(f"  optimal limit {verdict.optimal_limit:+.4f};"
          f"  g at N=100 {gains[99]:+.6f}, N=500 {gains[499]:+.6f}")
    if verdict.cat_limit is not None:
        cat = cat_gain_curve(spec, 500)
        print(f"  lead-protect limit {verdict.cat_limit:+.6f};"
              f"  at N=500 {cat[499]:+.6f}")
    if tag == "fair moving defense":
        print(f"  smallest optimal gain over N<=500: {float(np.min(gains)):+.6f}"
              "  (never below zero)")
    print()
