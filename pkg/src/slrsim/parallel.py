"""Fixed-block grid evaluation.

Grids are always cut into blocks of the same size whatever the worker count,
so every block sees identical array shapes and results are bit-reproducible.
"""
from concurrent.futures import ProcessPoolExecutor

import numpy as np

BLOCK = 256


def blockwise(fn, omegas, workers=1, block=BLOCK):
    omegas = np.asarray(omegas, dtype=float)
    chunks = [omegas[i:i + block] for i in range(0, len(omegas), block)]
    if not chunks:
        return fn(omegas)
    if workers <= 1 or len(chunks) == 1:
        parts = [fn(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(fn, chunks))
    return np.concatenate(parts)
