"""Independent exact oracle built on sympy (test-only)."""

import sympy

from gencore.matrix import Matrix


def to_sympy(A: Matrix) -> sympy.Matrix:
    return sympy.Matrix(A.rows, A.cols, lambda i, j: sympy.Rational(A[i, j].re.numerator, A[i, j].re.denominator)
                        + sympy.I * sympy.Rational(A[i, j].im.numerator, A[i, j].im.denominator))


def from_sympy(S: sympy.Matrix, ctx) -> Matrix:
    from fractions import Fraction

    from gencore.scalars import GaussianRational

    def conv(v):
        re, im = sympy.nsimplify(sympy.re(v)), sympy.nsimplify(sympy.im(v))
        return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))

    return Matrix([[conv(S[i, j]) for j in range(S.cols)] for i in range(S.rows)], ctx)


def rank(A: Matrix) -> int:
    return to_sympy(A).rank(simplify=True)


def moore_penrose(A: Matrix) -> Matrix:
    """Exact Moore-Penrose inverse via a full-rank factorization A = F G."""
    S = to_sympy(A)
    R, piv = S.rref(simplify=True)
    r = len(piv)
    if r == 0:
        return from_sympy(sympy.zeros(S.cols, S.rows), A.context)
    F = S.extract(list(range(S.rows)), list(piv))
    G = R[:r, :]
    Fh, Gh = F.H, G.H
    X = Gh * (G * Gh).inv() * (Fh * F).inv() * Fh
    return from_sympy(X.applyfunc(sympy.simplify), A.context)
