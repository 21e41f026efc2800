"""Monte Carlo check that the edge statistic is standard normal under
a constant noise level.

Runs a reduced study (the acceptance suite uses 500 reps), prints summary
moments and a text histogram against the normal density, and saves a PNG
when matplotlib is available.
"""

import numpy as np

from hfnoise import StudySpec, density_table, run_study

REPS = 120

spec = StudySpec(reps=REPS, scenario="null_1d", tests=("N",), base_seed=2024)
result = run_study(spec)
stats = result.stats["N"]

print(f"{REPS} one-day reps, stationary noise")
print(f"mean {stats.mean():+.3f}   variance {stats.var():.3f}   "
      f"reject@5% {result.rejection_rate('N'):.3f}")

table = density_table(stats, bins=17, lo=-3.4, hi=3.4)
print("\n   centre   empirical vs N(0,1)")
scale = 40 / table[:, 2].max()
for centre, dens, pdf in table:
    bar = "#" * int(round(dens * scale))
    dot = int(round(pdf * scale))
    line = list(bar.ljust(44))
    line[dot] = "|"
    print(f"  {centre:+6.1f}   {''.join(line)}")
print("  (# empirical density, | standard normal)")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.hist(stats, bins=25, density=True, alpha=0.6, label="edge statistic")
    grid = np.linspace(-4, 4, 200)
    ax.plot(grid, np.exp(-grid**2 / 2) / np.sqrt(2 * np.pi), "k--",
            label="N(0,1)")
    ax.set_title("Null density of the edge statistic")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demo_null_density.png", dpi=120)
    print("\nwrote demo_null_density.png")
except ImportError:
    print("\nmatplotlib not installed; skipped the PNG")
