import numpy as np
import pytest

from regbound._kernels import _rank_mod_p_jit, rank_mod_p, rank_rational


@pytest.mark.parametrize("seed", range(4))
def test_numba_and_numpy_agree(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 12))
    a = rng.integers(0, 101, size=(15, k)) @ rng.integers(0, 101, size=(k, 20))
    r_np = rank_mod_p(a, 101, use_numba=False)
    assert r_np == min(k, 15)
    if _rank_mod_p_jit is not None:
        assert rank_mod_p(a, 101, use_numba=True) == r_np


def test_rank_rational():
    assert rank_rational([[1, 2], [2, 4]]) == 1
    assert rank_rational([[1, 0, 0], [0, 0, 1]]) == 2
    assert rank_rational([]) == 0


def test_rank_edge_cases():
    assert rank_mod_p(np.zeros((0, 3), dtype=np.int64), 7) == 0
    assert rank_mod_p([[7, 14]], 7) == 0
    with pytest.raises(ValueError):
        rank_mod_p([[1]], 1 << 31)
