"""Apply the three noise-stationarity tests to flat and U-curve days.

All tests are one-sided: values near zero mean the noise level looks
constant; large positive values reject.  The edge test (N) reads a single
day well; the window tests (V, Vprime) and the block test (Vbar) shine on
multi-day samples where they aggregate local evidence.
"""

from hfnoise import SimConfig, run_test, simulate_observed

KINDS = ("N", "V", "Vprime", "Vbar")


def show(title, series):
    print(f"\n{title} (n = {series.n})")
    print(f"{'test':8}{'K':>6}{'s':>4}{'statistic':>12}{'p-value':>10}")
    for kind in KINDS:
        rep = run_test(series, kind)
        s = "" if rep.s is None else rep.s
        flag = "  <- reject at 5%" if rep.p_value < 0.05 else ""
        print(f"{kind:8}{rep.K:>6}{s:>4}{rep.statistic:>12.3f}"
              f"{rep.p_value:>10.4f}{flag}")


# A single day with a flat noise level: nothing should reject.
flat, _ = simulate_observed(SimConfig(days=1, seed=7))
show("stationary noise, 1 day", flat)

# The same day with a U-curve noise level (elevated at open and close):
# the edge test picks this up immediately.
curved, _ = simulate_observed(SimConfig(days=1, seed=7, noise_kind="ushape"))
show("U-curve noise, 1 day", curved)

# Five days at five-second sampling: the window and block tests now see
# several cycles of the intraday pattern and reject decisively.
week, _ = simulate_observed(SimConfig(days=5, avg_dt_seconds=5.0, seed=7,
                                      noise_kind="ushape"))
show("U-curve noise, 5 days at 5s", week)

print("\nRule of thumb: N for one-day diagnostics of global open/close "
      "patterns;\nV (most power) or Vbar (tamer null) for local changes "
      "in multi-day samples.")
