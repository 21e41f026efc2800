"""Index-level subsampling machinery: offset subgrids and block partitions.

All grids are defined over tick indices ``0..n`` where ``n`` is the number
of increments; no calendar-time blocking is done here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidK


@dataclass(frozen=True)
class SubgridSpec:
    """One offset-``k``, step-``K`` subgrid: indices ``k, k+K, ..., k+(m-1)K``
    with ``m = n // K`` elements."""

    K: int
    k: int
    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)


@dataclass(frozen=True)
class BlockPartition:
    """``r = n // K`` consecutive blocks of ``K`` increments each.

    Block ``i`` (1-based) spans tick indices ``(i-1)K .. iK``; adjacent
    blocks share exactly their boundary index.
    """

    K: int
    r: int
    blocks: tuple

    def __iter__(self):
        return iter(self.blocks)


def subgrids(n: int, K: int) -> list:
    """All ``K`` offset subgrids of step ``K`` over ``0..n``.

    Each has cardinality ``n // K``; indices at or beyond ``K * (n // K)``
    are left out so that every subgrid has the same length.

    Raises
    ------
    InvalidK
        If ``K < 1`` or ``K > n``.
    """
    if K < 1 or K > n:
        raise InvalidK(f"need 1 <= K <= n, got K={K}, n={n}")
    m = n // K
    return [
        SubgridSpec(K=K, k=k, indices=k + K * np.arange(m))
        for k in range(K)
    ]


def block_partition(n: int, K: int) -> BlockPartition:
    """Partition increments ``1..n`` into ``r = n // K`` blocks of ``K``.

    Returns a :class:`BlockPartition` whose ``blocks`` are (lo, hi) tick
    index pairs; block ``i`` covers increments ``(i-1)K+1 .. iK``.
    Increments beyond ``r*K`` are unused.
    """
    if K < 1 or K > n:
        raise InvalidK(f"need 1 <= K <= n, got K={K}, n={n}")
    r = n // K
    blocks = tuple((i * K, (i + 1) * K) for i in range(r))
    return BlockPartition(K=K, r=r, blocks=blocks)


def default_K(n: int, c: float = 1.0) -> int:
    """Divisor-friendly subsampling step near ``c * n**(2/3)``.

    Searches ``floor(c * n**(2/3)) +/- 3`` for the step minimizing the
    number of unused trailing increments ``n - (n // K) * K`` (ties broken
    toward the window centre, then toward smaller K), clamped to
    ``[2, n // 2]``.  Keeping the remainder small keeps the edge effect of
    subsampled estimators deterministic and tiny.
    """
    base = int(c * float(n) ** (2.0 / 3.0) + 1e-9)
    lo = max(2, base - 3)
    hi = min(base + 3, n // 2)
    if hi < lo:
        return max(2, min(base, max(2, n // 2)))
    best = None
    for K in range(lo, hi + 1):
        key = (n - (n // K) * K, abs(K - base), K)
        if best is None or key < best[0]:
            best = (key, K)
    return best[1]
