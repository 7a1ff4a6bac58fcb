"""Pure numpy dominance kernels (fallback when the compiled core is absent).

All kernels work on a float64 key matrix of shape ``(n, d)`` where larger is
better in every column. Row ``i`` strictly dominates row ``j`` iff
``keys[i] >= keys[j]`` componentwise with at least one strict inequality.
Outputs are exact integer/boolean arrays, byte-identical to the compiled
backend.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_CHUNK = 256  # rows per broadcast block, bounds peak memory at n*CHUNK*d


def dominance_matrix(keys: np.ndarray) -> np.ndarray:
    """Strict-dominance matrix: ``out[i, j] == 1`` iff row i dominates row j."""
    keys = np.ascontiguousarray(keys, dtype=np.float64)
    n = keys.shape[0]
    out = np.zeros((n, n), dtype=np.uint8)
    for start in range(0, n, _CHUNK):
        block = keys[start : start + _CHUNK]
        ge = (block[:, None, :] >= keys[None, :, :]).all(axis=2)
        gt = (block[:, None, :] > keys[None, :, :]).any(axis=2)
        out[start : start + _CHUNK] = (ge & gt).astype(np.uint8)
    return out


def nondominated_mask(keys: np.ndarray) -> np.ndarray:
    """Mask of rows not strictly dominated by any other row."""
    keys = np.ascontiguousarray(keys, dtype=np.float64)
    n = keys.shape[0]
    mask = np.ones(n, dtype=np.uint8)
    for start in range(0, n, _CHUNK):
        block = keys[start : start + _CHUNK]
        ge = (keys[:, None, :] >= block[None, :, :]).all(axis=2)
        gt = (keys[:, None, :] > block[None, :, :]).any(axis=2)
        dominated = (ge & gt).any(axis=0)
        mask[start : start + _CHUNK] = (~dominated).astype(np.uint8)
    return mask


def peel_layers(keys: np.ndarray) -> np.ndarray:
    """1-based nondominated-sorting layer index per row.

    Layer 1 holds nondominated rows; layer k the rows nondominated once
    layers below k are removed. Equal rows always share a layer.
    """
    dom = dominance_matrix(keys)
    n = dom.shape[0]
    counts = dom.sum(axis=0, dtype=np.int64)
    layers = np.zeros(n, dtype=np.int32)
    current = np.flatnonzero(counts == 0)
    k = 1
    while current.size:
        layers[current] = k
        counts[current] = -1
        counts -= dom[current].sum(axis=0, dtype=np.int64)
        current = np.flatnonzero(counts == 0)
        k += 1
    return layers
