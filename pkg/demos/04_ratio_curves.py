# Ratio (beta_B - beta_A) dE / dC against time for the three initial states.
#
# t = 0 uses the second-order ratio; later times use f1 / g1. Pass a path to
# also write the plot-ready CSV (same format as `qtransport fig2`).

import sys

from qtransport.app import RunConfig, cmd_fig2
from qtransport.scenarios import reproduce_fig2

series = reproduce_fig2(t_max=0.5, dt=0.05)
print(f"{'t':>5} {'product':>9} {'p=0.5':>9} {'p=0':>9}")
for k, t in enumerate(series["product"].times):
    row = [series[name].values[k] for name in ("product", "p05", "p0")]
    print(f"{t:5.2f} " + " ".join(f"{v:9.4f}" for v in row))

if len(sys.argv) > 1:
    cmd_fig2(RunConfig(out=sys.argv[1]))
    print("wrote", sys.argv[1])
