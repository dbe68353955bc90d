"""Exact small-matrix linear algebra over Q(i).

Everything here reduces to one routine, :func:`rref`, which runs
Gauss-Jordan elimination on rows of Gaussian integers. After every row
update the row is divided by the integer gcd of its entries, so no
fractions appear until the final normalisation of pivot rows.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

from .errors import NonSquare, NoSolution, SingularMatrix, DimensionMismatch
from .matrix import Matrix, hstack, power

__all__ = [
    "rref",
    "rank",
    "column_basis",
    "null_space",
    "left_null_space",
    "inverse",
    "solve_right",
    "solve_left",
    "column_space_contained",
    "row_space_contained",
    "left_annihilator_contained",
    "drazin_index",
    "rank_profile",
]


def _content_reduce(re_row, im_row):
    g = reduce(math.gcd, re_row, 0)
    g = reduce(math.gcd, im_row, g)
    if g > 1:
        return [v // g for v in re_row], [v // g for v in im_row]
    return re_row, im_row


def _echelon(re, im, ncoef):
    """Gauss-Jordan on Gaussian-integer rows (lists, modified in place).

    Pivots are only searched in the first ``ncoef`` columns. Returns the
    pivot column list; row k holds the pivot for ``pivots[k]``, which is
    the only nonzero entry of that column.
    """
    nrows = len(re)
    ncols = len(re[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(min(ncoef, ncols)):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if re[i][c] or im[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            re[r], re[piv] = re[piv], re[r]
            im[r], im[piv] = im[piv], im[r]
        pr, pi = re[r][c], im[r][c]
        row_re, row_im = re[r], im[r]
        for i in range(nrows):
            if i == r:
                continue
            fr, fi = re[i][c], im[i][c]
            if not fr and not fi:
                continue
            # row_i <- p * row_i - f * row_r
            a_re, a_im = re[i], im[i]
            new_re = [pr * x - pi * y - fr * u + fi * v for x, y, u, v in zip(a_re, a_im, row_re, row_im)]
            new_im = [pr * y + pi * x - fr * v - fi * u for x, y, u, v in zip(a_re, a_im, row_re, row_im)]
            re[i], im[i] = _content_reduce(new_re, new_im)
        pivots.append(c)
        r += 1
    return pivots


def _rows_of(A: Matrix):
    re, im = A.numerators
    return [list(row) for row in re.tolist()], [list(row) for row in im.tolist()]


def rref(A: Matrix, ncoef: int | None = None):
    """Reduced row echelon form of an exact matrix.

    Returns ``(R, pivots)``; ``R`` has the same shape and context as ``A``.
    With ``ncoef`` only the first ``ncoef`` columns may hold pivots, which
    is what augmented systems ``[M | N]`` need.
    """
    if not A.exact:
        raise TypeError("rref needs an exact matrix")
    if ncoef is None:
        ncoef = A.cols
    re, im = _rows_of(A)
    pivots = _echelon(re, im, ncoef)
    # Normalise pivot rows: row / (a+bi) = row * (a-bi) / (a^2+b^2).
    dens = []
    for k, c in enumerate(pivots):
        a, b = re[k][c], im[k][c]
        nrm = a * a + b * b
        re[k], im[k] = (
            [x * a + y * b for x, y in zip(re[k], im[k])],
            [y * a - x * b for x, y in zip(re[k], im[k])],
        )
        dens.append(nrm)
    # Rows past the rank are zero in the first ncoef columns; any nonzero
    # tail there only signals inconsistency, so its scale is irrelevant.
    den = reduce(math.lcm, dens, 1)
    for k, d in enumerate(dens):
        s = den // d
        if s != 1:
            re[k] = [x * s for x in re[k]]
            im[k] = [x * s for x in im[k]]
    R = Matrix.from_gaussian_ints(
        np.array(re, dtype=object).reshape(A.shape),
        np.array(im, dtype=object).reshape(A.shape),
        A.context,
        den,
    )
    return R, pivots


def rank_profile(A: Matrix) -> list:
    """Pivot columns of A's row echelon form."""
    re, im = _rows_of(A)
    return _echelon(re, im, A.cols)


def rank(A: Matrix) -> int:
    if not A.exact:
        raise TypeError("exact rank needs an exact matrix; use float_engine.numeric_rank")
    if A.rows == 0 or A.cols == 0:
        return 0
    return len(rank_profile(A))


def column_basis(A: Matrix):
    """(F, pivots): F is the submatrix of A's pivot columns, a basis of its column space."""
    piv = rank_profile(A)
    return A.submatrix(range(A.rows), piv), piv


def null_space(A: Matrix) -> Matrix:
    """Basis of {y : A y = 0} as the columns of an n x (n - rank) matrix."""
    R, piv = rref(A)
    n = A.cols
    free = [j for j in range(n) if j not in piv]
    cols = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for k, c in enumerate(piv):
            v[c] = -R[k, f]
        cols.append(v)
    if not cols:
        return Matrix.zeros(n, 0, A.context)
    return Matrix([list(r) for r in zip(*cols)], A.context)


def left_null_space(A: Matrix) -> Matrix:
    """Rows spanning the left annihilator {y : y A = 0} (plain transpose, no involution)."""
    return null_space(A.transpose()).transpose()


def inverse(A: Matrix) -> Matrix:
    if not A.is_square:
        raise NonSquare(f"inverse of non-square {A.shape} matrix")
    n = A.rows
    if n == 0:
        return A
    R, piv = rref(hstack(A, Matrix.identity(n, A.context)), ncoef=n)
    if len(piv) < n:
        raise SingularMatrix("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


def solve_right(M: Matrix, N: Matrix) -> Matrix:
    """A particular Y with M Y = N (free variables zero), else NoSolution."""
    if M.rows != N.rows:
        raise DimensionMismatch(f"{M.shape} and {N.shape} have different row counts")
    n = M.cols
    R, piv = rref(hstack(M, N), ncoef=n)
    r = len(piv)
    tail = R.submatrix(range(r, R.rows), range(n, R.cols))
    if not tail.is_zero():
        raise NoSolution("M Y = N is inconsistent")
    Y = Matrix.zeros(n, N.cols, M.context)
    if r == 0:
        return Y
    # Y[piv[k], :] = R[k, n:]
    P = Matrix.zeros(n, r, M.context)
    pr, pi = P.numerators
    pr = pr.copy()
    for k, c in enumerate(piv):
        pr[c, k] = 1
    P = Matrix.from_gaussian_ints(pr, pi.copy(), M.context)
    return P @ R.submatrix(range(r), range(n, R.cols))


def solve_left(M: Matrix, N: Matrix) -> Matrix:
    """A particular Y with Y M = N, else NoSolution."""
    return solve_right(M.transpose(), N.transpose()).transpose()


def column_space_contained(A: Matrix, B: Matrix) -> bool:
    """True iff every column of A lies in the column space of B."""
    if A.rows != B.rows:
        raise DimensionMismatch("column spaces live in different dimensions")
    if A.is_zero():
        return True
    return rank(B) == rank(hstack(B, A))


def row_space_contained(A: Matrix, B: Matrix) -> bool:
    """True iff R A ⊆ R B, i.e. A = Y B is solvable."""
    return column_space_contained(A.transpose(), B.transpose())


def left_annihilator_contained(M: Matrix, N: Matrix) -> bool:
    """True iff {Y : Y M = 0} ⊆ {Y : Y N = 0}."""
    return column_space_contained(N, M)


def drazin_index(A: Matrix) -> int:
    """Smallest positive k with rank(A^k) = rank(A^(k+1)).

    Invertible matrices report 1 since the index is taken over positive
    integers only.
    """
    if not A.is_square:
        raise NonSquare(f"index of non-square {A.shape} matrix")
    k = 1
    Ak = A
    rk = rank(Ak)
    while True:
        Ak1 = Ak @ A
        rk1 = rank(Ak1)
        if rk1 == rk:
            return k
        k, Ak, rk = k + 1, Ak1, rk1
