import numpy as np
import pytest

from hfnoise import InvalidK, block_partition, default_K, subgrids


class TestSubgrids:
    def test_n6_k2(self):
        grids = subgrids(6, 2)
        assert [g.indices.tolist() for g in grids] == [[0, 2, 4], [1, 3, 5]]

    def test_n7_k3_leftover(self):
        grids = subgrids(7, 3)
        assert [g.indices.tolist() for g in grids] == [[0, 3], [1, 4], [2, 5]]

    def test_invalid_k(self):
        with pytest.raises(InvalidK):
            subgrids(6, 7)
        with pytest.raises(InvalidK):
            subgrids(6, 0)

    def test_k1_is_near_full_grid(self):
        (g,) = subgrids(5, 1)
        assert g.indices.tolist() == [0, 1, 2, 3, 4]

    @pytest.mark.parametrize("n,K", [(10, 3), (17, 5), (100, 7), (23, 23)])
    def test_disjoint_union(self, n, K):
        grids = subgrids(n, K)
        all_idx = np.concatenate([g.indices for g in grids])
        assert len(all_idx) == K * (n // K)
        assert len(np.unique(all_idx)) == len(all_idx)
        assert all_idx.min() >= 0 and all_idx.max() <= n
        for g in grids:
            assert (np.diff(g.indices) == K).all()


class TestBlockPartition:
    def test_n10_k5(self):
        bp = block_partition(10, 5)
        assert bp.r == 2
        assert bp.blocks == ((0, 5), (5, 10))

    def test_n11_k5_leftover(self):
        bp = block_partition(11, 5)
        assert bp.r == 2
        assert bp.blocks[-1] == (5, 10)

    def test_realistic_block_count(self):
        assert block_partition(23400, 822).r == 28

    def test_blocks_tile_and_share_boundaries(self):
        bp = block_partition(47, 9)
        for (a, b), (c, d) in zip(bp.blocks, bp.blocks[1:]):
            assert b == c
        assert bp.blocks[0][0] == 0
        assert bp.blocks[-1][1] == bp.r * 9 <= 47

    def test_invalid(self):
        with pytest.raises(InvalidK):
            block_partition(5, 6)


class TestDefaultK:
    def test_examples(self):
        assert default_K(1000) == 100
        assert default_K(64) == 16
        assert default_K(8) == 4

    def test_scale(self):
        assert default_K(23400, 0.715) == 585
        assert 23400 % 585 == 0

    @pytest.mark.parametrize("n", [50, 377, 1000, 4096, 23400, 99991])
    def test_minimizes_remainder_in_window(self, n):
        K = default_K(n)
        base = int(n ** (2.0 / 3.0) + 1e-9)
        lo, hi = max(2, base - 3), min(base + 3, n // 2)
        best = min(n - (n // c) * c for c in range(lo, hi + 1))
        assert lo <= K <= hi
        assert n - (n // K) * K == best
