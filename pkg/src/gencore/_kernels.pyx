# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled modular row reduction used by the exact linear-system solver."""

from libc.stdint cimport int64_t


cdef inline int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(int64_t[:, ::1] M, int64_t p, Py_ssize_t ncoef):
    """Gauss-Jordan over GF(p), in place.

    Entries must lie in [0, p) with p < 2**31. Pivots are searched only in
    the first ``ncoef`` columns; pivot rows are scaled to 1. Returns the
    list of pivot columns.
    """
    cdef Py_ssize_t nrows = M.shape[0], ncols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, v, t
    cdef Py_ssize_t limit = ncoef if ncoef < ncols else ncols
    pivots = []
    for c in range(limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        inv = _inv_mod(M[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                M[r, j] = (M[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = M[i, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                v = M[i, j] - (f * M[r, j]) % p
                if v < 0:
                    v += p
                M[i, j] = v
        pivots.append(c)
        r += 1
    return pivots
