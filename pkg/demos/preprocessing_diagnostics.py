"""Choose a Box-Cox exponent by Kolmogorov-Smirnov normality diagnostics.

Builds a panel of lognormal-ish positive values (typical of order volumes),
then scans a gamma grid and reports the KS statistic and p-value per event
column before and after the transform.
"""

import numpy as np

from flowcast import DialoguePanel, normality_report

rng = np.random.default_rng(4)
t = 300
labels = tuple(f"P{i:04d}" for i in range(t))
panel = DialoguePanel(
    np.exp(rng.normal(2.0, 0.6, (t, 3))),
    np.exp(rng.normal(2.0, 0.5, (t, 2))),
    np.exp(rng.normal(2.0, 0.7, t)),
    labels,
)

print("raw panel (no transform)")
for row in normality_report(panel, gamma=None):
    print(f"  {row['event']:>3} KS={row['ks']:.4f} p={row['p']:.4f}")

for gamma in (-0.5, 0.0, 0.5, 1.0):
    rows = normality_report(panel, gamma=gamma)
    worst = min(rows, key=lambda r: r["p"])
    mean_p = float(np.mean([r["p"] for r in rows]))
    print(f"gamma={gamma:+.1f}: mean p={mean_p:.3f}, "
          f"worst column {worst['event']} (p={worst['p']:.3f})")

print("\ngamma=0 (log transform) detail")
for row in normality_report(panel, gamma=0.0):
    verdict = "ok" if row["p"] > 0.01 else "rejected"
    print(f"  {row['event']:>3} KS={row['ks']:.4f} p={row['p']:.4f} {verdict}")
