"""Compensated summation helpers.

Estimator sums run over 1e5..1e6 increments with magnitudes around 1e-5
(squares near 1e-10, fourth powers near 1e-20), so plain left-to-right
accumulation loses the fourth-moment signal.  ``math.fsum`` tracks all
round-off exactly (Shewchuk's algorithm) and returns the correctly rounded
sum, which also makes reductions independent of any evaluation order.
"""

import math

import numpy as np


def csum(values) -> float:
    """Exactly rounded sum of a 1-d array or iterable of floats."""
    if isinstance(values, np.ndarray):
        return math.fsum(values.tolist())
    return math.fsum(values)


def block_sums(values: np.ndarray, size: int) -> np.ndarray:
    """Compensated sums of consecutive length-``size`` slices.

    Trailing elements beyond ``len(values) // size`` full blocks are ignored.
    """
    r = len(values) // size
    data = values.tolist()
    return np.array(
        [math.fsum(data[i * size:(i + 1) * size]) for i in range(r)]
    )
