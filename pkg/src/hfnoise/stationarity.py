"""Non-parametric tests for a time-varying microstructure noise level.

Three complementary statistics, all asymptotically standard normal when
the noise level is constant and exploding to ``+inf`` when it varies, so
p-values are one-sided upper tail:

* ``N`` (:func:`edge_test`) contrasts the two-scale estimator with its
  sample-weighted variant; the difference isolates how the first/last
  ``K`` observations are weighted, picking up global open/close patterns.
* ``V`` (:func:`window_test`) pools squared local contrasts over
  overlapping windows of ``s`` blocks; ``Vprime``
  (:func:`window_test_nonoverlap`) is the cheaper non-overlapping variant.
* ``Vbar`` (:func:`block_test`) pools squared differences of consecutive
  block realized variances, trading some power for a smaller edge effect.

Every test returns a :class:`TestReport`; the zero-denominator branch
yields statistic 0 with the ``degenerate`` flag set and p-value 1.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from ._accum import block_sums, csum
from .errors import InvalidK, InvalidWindow, NonFiniteStatistic, WindowOutOfRange
from .estimators import _scale_diff, noise_moments
from .ticks import TickSeries


@dataclass(frozen=True)
class TestReport:
    """Outcome of one stationarity test."""

    statistic: float
    p_value: float
    kind: str  # one of "N", "V", "Vprime", "Vbar"
    K: int
    n: int
    s: int | None = None
    degenerate: bool = False
    intermediates: dict = field(default_factory=dict)


def p_value(statistic: float) -> float:
    """Upper-tail standard normal p-value ``1 - Phi(statistic)``.

    Raises
    ------
    NonFiniteStatistic
        If ``statistic`` is NaN or infinite.
    """
    if not math.isfinite(statistic):
        raise NonFiniteStatistic(f"statistic must be finite, got {statistic}")
    return float(norm.sf(statistic))


def default_window(n: int, K: int) -> int:
    """Default window length in blocks: ``floor(sqrt(n/K))`` clamped to
    ``[2, n//K - 1]``."""
    r = n // K
    if r < 4:
        raise InvalidWindow(f"need at least 4 blocks, got n//K={r}")
    return max(2, min(int(math.sqrt(n / K)), r - 1))


def default_test_K(n: int, kind: str) -> int:
    """Default subsampling step per test family.

    ``N`` uses the two-scale-optimal ``n**(2/3)`` step; the window tests
    use ``floor(n**0.6)``, which sits inside the admissible rate band for
    both the overlapping-window and block statistics.
    """
    from .grids import default_K

    if kind == "N":
        return default_K(n)
    return max(4, int(float(n) ** 0.6))


def window_contrast(series: TickSeries, K: int, start_block: int,
                    window: int) -> float:
    """Local scale contrast ``sqrt(K) * (wtsrv - tsrv)`` on one window.

    The window covers blocks ``start_block .. start_block + window - 1``
    (1-based), i.e. tick indices ``(start_block-1)*K .. (start_block-1+window)*K``,
    and is re-indexed as a standalone series so that the two-scale edge
    terms are window-local.

    Raises
    ------
    WindowOutOfRange
        If the window does not fit inside ``[0, n]``.
    """
    lo = (start_block - 1) * K
    hi = (start_block - 1 + window) * K
    if start_block < 1 or hi > series.n:
        raise WindowOutOfRange(
            f"window blocks {start_block}..{start_block + window - 1} "
            f"(ticks {lo}..{hi}) outside [0, {series.n}]")
    if window < 2:
        raise InvalidWindow(f"need window >= 2 blocks, got {window}")
    p = series.prices[lo:hi + 1]
    return math.sqrt(K) * _scale_diff(p, K)


def _window_contrasts(prices: np.ndarray, K: int, window: int,
                      starts) -> np.ndarray:
    rt = math.sqrt(K)
    out = np.empty(len(starts))
    for j, b in enumerate(starts):
        out[j] = rt * _scale_diff(prices[b * K:(b + window) * K + 1], K)
    return out


def overlap_mean_sq(series: TickSeries, K: int, window: int) -> float:
    """Mean of squared local contrasts over all overlapping windows.

    Windows start at every block ``1 .. n//K - window + 1``.
    """
    r = series.n // K
    cnt = r - window + 1
    if window < 2 or cnt < 1:
        raise InvalidWindow(f"need 2 <= window and n//K - window + 1 >= 1, "
                            f"got window={window}, n//K={r}")
    devs = _window_contrasts(series.prices, K, window, range(cnt))
    return csum(devs * devs) / cnt


def nonoverlap_mean_sq(series: TickSeries, K: int, window: int) -> float:
    """Mean of squared local contrasts over disjoint windows.

    Uses windows starting at blocks ``1, window+1, 2*window+1, ...``,
    ``floor(n / (window*K))`` of them.
    """
    cnt = series.n // (window * K)
    if window < 2 or cnt < 1:
        raise InvalidWindow(f"need 2 <= window and n//(window*K) >= 1, "
                            f"got window={window}, n//K={series.n // K}")
    starts = [i * window for i in range(cnt)]
    devs = _window_contrasts(series.prices, K, window, starts)
    return csum(devs * devs) / cnt


def block_diff_mean_sq(series: TickSeries, K: int) -> float:
    """``1/(4n)`` times the summed squared differences of consecutive
    block realized variances (blocks of ``K`` increments)."""
    n = series.n
    r = n // K
    if r < 2:
        raise InvalidWindow(f"need at least 2 blocks, got n//K={r}")
    d2 = np.diff(series.prices) ** 2
    rv_blocks = block_sums(d2, K)
    steps = np.diff(rv_blocks)
    return csum(steps * steps) / (4.0 * n)


def _report(kind, stat_num, denom, K, n, s, inter) -> TestReport:
    if denom <= 0.0 or not math.isfinite(denom):
        return TestReport(statistic=0.0, p_value=1.0, kind=kind, K=K, n=n,
                          s=s, degenerate=True, intermediates=inter)
    stat = stat_num / denom
    return TestReport(statistic=stat, p_value=p_value(stat), kind=kind,
                      K=K, n=n, s=s, degenerate=False, intermediates=inter)


def edge_test(series: TickSeries, K: int | None = None) -> TestReport:
    """Edge-contrast stationarity test (kind ``N``).

    ``sqrt(K) * (wtsrv - tsrv)`` studentized by the square root of the
    centred fourth-moment estimate; the statistic is standard normal for a
    constant noise level and diverges otherwise.

    Raises
    ------
    InvalidK
        If ``K`` is not in ``[4, n/2]``.
    """
    n = series.n
    if K is None:
        K = default_test_K(n, "N")
    if not 4 <= K <= n // 2:
        raise InvalidK(f"need 4 <= K <= n/2, got K={K}, n={n}")
    nm = noise_moments(series)
    num = math.sqrt(K) * _scale_diff(series.prices, K)
    denom = math.sqrt(nm.q2sum_hat) if nm.q2sum_hat > 0.0 else 0.0
    inter = {"scale_diff": num, "q2sum_hat": nm.q2sum_hat,
             "m2_hat": nm.m2_hat}
    return _report("N", num, denom, K, n, None, inter)


def _pooled_test(series, K, window, kind, pooled, rate, count) -> TestReport:
    nm = noise_moments(series)
    num = rate * (pooled - nm.q2sum_hat)
    inter = {"pooled_mean_sq": pooled, "q2sum_hat": nm.q2sum_hat,
             "eta_hat": nm.eta_hat, "local_terms": count}
    return _report(kind, num, nm.eta_hat, K, series.n, window, inter)


def window_test(series: TickSeries, K: int | None = None,
                window: int | None = None) -> TestReport:
    """Overlapping-window stationarity test (kind ``V``)."""
    n = series.n
    if K is None:
        K = default_test_K(n, "V")
    if window is None:
        window = default_window(n, K)
    pooled = overlap_mean_sq(series, K, window)
    count = n // K - window + 1
    return _pooled_test(series, K, window, "V", pooled, math.sqrt(n / K),
                        count)


def window_test_nonoverlap(series: TickSeries, K: int | None = None,
                           window: int | None = None) -> TestReport:
    """Non-overlapping-window stationarity test (kind ``Vprime``)."""
    n = series.n
    if K is None:
        K = default_test_K(n, "V")
    if window is None:
        window = default_window(n, K)
    pooled = nonoverlap_mean_sq(series, K, window)
    return _pooled_test(series, K, window, "Vprime", pooled,
                        math.sqrt(n / (window * K)), n // (window * K))


def block_test(series: TickSeries, K: int | None = None) -> TestReport:
    """Consecutive-block stationarity test (kind ``Vbar``)."""
    n = series.n
    if K is None:
        K = default_test_K(n, "V")
    pooled = block_diff_mean_sq(series, K)
    return _pooled_test(series, K, None, "Vbar", pooled, math.sqrt(n / K),
                        n // K - 1)


_TESTS = {
    "N": edge_test,
    "V": window_test,
    "Vprime": window_test_nonoverlap,
    "Vbar": block_test,
}


def run_test(series: TickSeries, kind: str, K: int | None = None,
             window: int | None = None) -> TestReport:
    """Dispatch one test by kind code (``N``/``V``/``Vprime``/``Vbar``)."""
    if kind not in _TESTS:
        raise InvalidWindow(f"unknown test kind {kind!r}")
    if kind in ("V", "Vprime"):
        return _TESTS[kind](series, K=K, window=window)
    return _TESTS[kind](series, K=K)
