"""Python fallback for the compiled kernels (same contract as ``_kernels.pyx``)."""

import numpy as np


def rref_mod(M: np.ndarray, p: int, ncoef: int) -> list:
    """Gauss-Jordan over GF(p), in place on an int64 array with entries in [0, p)."""
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(min(ncoef, ncols)):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv], c:] = M[[piv, r], c:]
        inv = pow(int(M[r, c]), -1, p)
        if inv != 1:
            M[r, c:] = (M[r, c:] * inv) % p
        f = M[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            M[rows, c:] = (M[rows, c:] - (f[rows, None] * M[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return pivots
