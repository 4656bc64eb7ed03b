"""Coastlines at several thresholds over one simulated price path.

The coastline adds up every threshold-sized move the event transform
registers. Halving the threshold roughly quadruples the event count, so
finer scales reveal a longer coastline, the same way a finer ruler
lengthens a measured shoreline.

Run:  python3 demos/02_multiscale_coastline.py
"""

import numpy as np

import intrinsic_time as it

sigma = 2e-4
walk = it.generate_gbm(it.GbmParams(
    s0=1.0, mu=0.5 * sigma**2, sigma=sigma, dt_step=1.0,
    n_steps=500_000, seed=12))
grid = [float(d) for d in np.geomspace(0.001, 0.016, 5)]

print(f"input: {len(walk):,} ticks, log-volatility {sigma} per step\n")
print(f"{'threshold':>10} {'events':>8} {'reversals':>10} {'coastline':>10}")
for delta, events in it.run_grid(walk, grid):
    s = it.summarize(delta, events)
    print(f"{delta:>10.4f} {s.n_dc + s.n_os:>8} {s.n_dc:>10} {s.coastline:>10.2f}")

print("\nthe raw path itself only travels",
      f"{abs(np.log(walk.prices[-1] / walk.prices[0])):.3f}",
      "in log terms from start to end;")
print("the coastline counts every zig and zag at the chosen resolution.")
