"""
How good are designs with only k+1 points?
==========================================

Inside the two-orbit region the optimal weights are rarely multiples of
1/(k+1), so the optimum has no exact k+1 point version.  Three fallbacks
are compared against it across the region:

* frozen boundary: the pole designs that are optimal at the two ends of
  the region, kept fixed;
* rounded weights: optimal positions, weights rounded to m/(k+1);
* fixed weights: weights m/(k+1) and positions re-optimized for them.

The sweep also writes a CSV file for plotting.
"""

import os
import tempfile

from balldesign import builtin_model, efficiency_sweep, write_sweep_csv
from balldesign.exact import FIXED, FROZEN, ROUNDED, envelope_minimum

logit = builtin_model("logit")

for k in (3, 6):
    rows = efficiency_sweep(logit, k, 1.0, steps=101)
    print(f"k={k}")
    for strategy in (FROZEN, ROUNDED, FIXED):
        effs = [r.efficiency for r in rows if r.strategy == strategy]
        print(f"  {strategy:16s} min {min(effs):.6f}  max {max(effs):.6f}")
    # The switch between strategies happens where their curves cross the
    # frozen-boundary curve; the worst point of the better of the two is
    # the floor of each combination.
    for strategy in (ROUNDED, FIXED):
        print(f"  floor of frozen/{strategy}: {envelope_minimum(rows, strategy):.6f}")

# Which m does the fixed-weight strategy pick along the way?
rows = efficiency_sweep(logit, 6, 1.0, steps=9, strategies=[FIXED])
print("\n  -beta0    m   x11      x12     efficiency")
for r in rows:
    print(f"{r.beta0_neg:+8.4f}  {r.m}  {r.x11:+.4f}  {r.x12:+.4f}  {r.efficiency:.6f}")

# Save the k=3 curves.
path = os.path.join(tempfile.gettempdir(), "logit_k3_sweep.csv")
with open(path, "w", encoding="utf-8", newline="") as fh:
    write_sweep_csv(efficiency_sweep(logit, 3, 1.0, steps=201), fh)
print("\nwrote", path)
