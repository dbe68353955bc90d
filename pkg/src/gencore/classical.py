"""Classical generalized inverses in exact arithmetic.

Two independent families of routines live here:

* :func:`equation_inverse` solves each inverse's defining equations with
  the exact linear-system solver. Equations that are quadratic in the
  unknown (``xax = x``, ``ax^2 = x``) cannot be handed to a linear
  solver, so the linear part of the system is solved first and the result
  ``x0`` is then made reflexive, ``x = x0·a·x0``. For every kind below that
  product satisfies the full system and is therefore the unique inverse.
* closed forms built on a full-rank factorisation ``A = F·G``
  (:func:`one_three_inverse`, :func:`moore_penrose_closed_form`) and on the
  core-nilpotent similarity (:func:`drazin_inverse`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from . import exact
from .errors import NoSolution, NonSquare
from .linsolve import LinearConstraint, Term, solve_linear_system
from .matrix import Matrix, hstack, power

__all__ = [
    "InverseKind",
    "InverseResult",
    "CoreNilpotentFactors",
    "defining_residuals",
    "equation_inverse",
    "group_inverse",
    "drazin_inverse",
    "core_nilpotent_factors",
    "moore_penrose_closed_form",
    "one_three_inverse",
    "one_four_inverse",
    "core_inverse",
    "dual_core_inverse",
    "full_rank_factorization",
]


class InverseKind(str, enum.Enum):
    INNER = "inner"
    ONE_THREE = "one_three"
    ONE_FOUR = "one_four"
    MOORE_PENROSE = "moore_penrose"
    GROUP = "group"
    DRAZIN = "drazin"
    CORE = "core"
    DUAL_CORE = "dual_core"


_SQUARE_ONLY = {InverseKind.GROUP, InverseKind.DRAZIN, InverseKind.CORE, InverseKind.DUAL_CORE}


@dataclass(frozen=True)
class InverseResult:
    value: Matrix
    kind: InverseKind
    index: Optional[int] = None
    certificates: tuple = field(default=())

    @property
    def verified(self) -> bool:
        """All residuals exactly zero (exact mode)."""
        return all(r.is_zero() for _, r in self.certificates)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "index": self.index,
            "value": self.value.to_json(),
            "certificates": [{"equation": lab, "zero": r.is_zero(), "residual": r.to_json()} for lab, r in self.certificates],
        }


def defining_residuals(A: Matrix, X: Matrix, kind: InverseKind, index: Optional[int] = None) -> list:
    """(label, residual) pairs for the literal defining equations of ``kind``."""
    kind = InverseKind(kind)
    AX, XA = A @ X, X @ A
    one = ("AXA=A", AX @ A - A)
    two = ("XAX=X", X @ AX - X)
    three = ("(AX)*=AX", AX.adjoint() - AX)
    four = ("(XA)*=XA", XA.adjoint() - XA)
    if kind is InverseKind.INNER:
        return [one]
    if kind is InverseKind.ONE_THREE:
        return [one, three]
    if kind is InverseKind.ONE_FOUR:
        return [one, four]
    if kind is InverseKind.MOORE_PENROSE:
        return [one, two, three, four]
    if kind is InverseKind.GROUP:
        return [one, two, ("AX=XA", AX - XA)]
    if kind is InverseKind.DRAZIN:
        k = index if index is not None else exact.drazin_index(A)
        Ak = power(A, k)
        return [(f"A^{k}XA=A^{k}", Ak @ XA - Ak), two, ("AX=XA", AX - XA)]
    if kind is InverseKind.CORE:
        return [("XA^2=A", XA @ A - A), ("AX^2=X", AX @ X - X), three]
    if kind is InverseKind.DUAL_CORE:
        return [("A^2X=A", A @ AX - A), ("X^2A=X", X @ XA - X), four]
    raise ValueError(kind)


def _linear_system(A: Matrix, kind: InverseKind):
    """Linear equations whose solutions x0 yield the inverse (after x0·A·x0 when flagged)."""
    ctx = A.context
    n, k = A.rows, A.cols
    Ik, In = Matrix.identity(k, ctx), Matrix.identity(n, ctx)
    As = A.adjoint()
    eq1 = LinearConstraint([Term(A, A)], A)  # AXA = A
    eq3 = LinearConstraint([Term(In, As, True), Term(-A, In)], Matrix.zeros(n, n, ctx))  # X*A* = AX
    eq4 = LinearConstraint([Term(As, Ik, True), Term(-Ik, A)], Matrix.zeros(k, k, ctx))  # A*X* = XA
    if kind is InverseKind.INNER:
        return [eq1], False
    if kind is InverseKind.ONE_THREE:
        return [eq1, eq3], False
    if kind is InverseKind.ONE_FOUR:
        return [eq1, eq4], False
    if kind is InverseKind.MOORE_PENROSE:
        return [eq1, eq3, eq4], True
    if kind is InverseKind.GROUP:
        commute = LinearConstraint([Term(A, In), Term(-In, A)], Matrix.zeros(n, n, ctx))
        return [eq1, commute], True
    A2 = A @ A
    if kind is InverseKind.CORE:
        return [LinearConstraint([Term(In, A2)], A), eq1, eq3], True
    if kind is InverseKind.DUAL_CORE:
        return [LinearConstraint([Term(A2, In)], A), eq1, eq4], True
    raise ValueError(f"{kind.value} has no linear equation system")


def equation_inverse(A: Matrix, kind) -> InverseResult:
    """Solve the defining equations of ``kind`` exactly; NoSolution if the inverse does not exist."""
    kind = InverseKind(kind)
    if not A.exact:
        raise ValueError("equation_inverse works in exact mode")
    if kind in _SQUARE_ONLY and not A.is_square:
        raise NonSquare(f"{kind.value} inverse needs a square matrix")
    if kind is InverseKind.DRAZIN:
        return drazin_inverse(A)
    system, reflexive = _linear_system(A, kind)
    try:
        x0 = solve_linear_system(system, (A.cols, A.rows))
    except NoSolution as exc:
        raise NoSolution(f"{kind.value} inverse does not exist", certificate=exc.certificate) from None
    x = x0 @ A @ x0 if reflexive else x0
    result = InverseResult(x, kind, None, tuple(defining_residuals(A, x, kind)))
    if not result.verified:  # pragma: no cover - would mean a wrong linearisation
        raise AssertionError(f"{kind.value}: solver output fails its defining equations")
    return result


def group_inverse(A: Matrix) -> InverseResult:
    """a^#; exists iff the Drazin index is 1."""
    return equation_inverse(A, InverseKind.GROUP)


# -- closed forms ------------------------------------------------------------

def full_rank_factorization(A: Matrix):
    """(F, G, pivots) with A = F·G, F the pivot columns of A and G the nonzero RREF rows."""
    R, piv = exact.rref(A)
    r = len(piv)
    F = A.submatrix(range(A.rows), piv)
    G = R.submatrix(range(r), range(A.cols))
    return F, G, piv


def one_three_inverse(A: Matrix) -> Matrix:
    """A {1,3}-inverse via A = F·G: X = E·(F*F)^-1·F* with E a right inverse of G.

    A {1,3}-inverse exists iff the Gram matrix F*F is invertible, under
    either involution; otherwise NoSolution.
    """
    F, G, piv = full_rank_factorization(A)
    ctx = A.context
    r = len(piv)
    if r == 0:
        return Matrix.zeros(A.cols, A.rows, ctx)
    gram = F.adjoint() @ F
    if exact.rank(gram) < r:
        raise NoSolution("no {1,3}-inverse: Gram matrix of the column space is singular")
    E = [[1 if piv[j] == i else 0 for j in range(r)] for i in range(A.cols)]
    return Matrix(E, ctx) @ exact.inverse(gram) @ F.adjoint()


def one_four_inverse(A: Matrix) -> Matrix:
    """A {1,4}-inverse, as the adjoint of a {1,3}-inverse of A*."""
    return one_three_inverse(A.adjoint()).adjoint()


def moore_penrose_closed_form(A: Matrix) -> Matrix:
    """A^† = G*·(F*·A·G*)^-1·F* for conjugate-transpose; zero for the zero matrix."""
    if not A.context.conjugating:
        raise ValueError("closed-form Moore-Penrose inverse needs the conjugate-transpose involution")
    F, G, piv = full_rank_factorization(A)
    if not piv:
        return Matrix.zeros(A.cols, A.rows, A.context)
    Gs, Fs = G.adjoint(), F.adjoint()
    return Gs @ exact.inverse(Fs @ A @ Gs) @ Fs


@dataclass(frozen=True)
class CoreNilpotentFactors:
    """A = [Q1 Q2]·diag(D, N)·[P1; P2] with D invertible and N nilpotent."""

    index: int
    Q1: Matrix
    Q2: Matrix
    P1: Matrix
    P2: Matrix
    D: Matrix
    N: Matrix


def core_nilpotent_factors(A: Matrix) -> CoreNilpotentFactors:
    """Similarity built from bases of col(A^m) and null(A^m), m the Drazin index."""
    if not A.is_square:
        raise NonSquare("core-nilpotent factors need a square matrix")
    m = exact.drazin_index(A)
    Am = power(A, m)
    Q1, _ = exact.column_basis(Am)
    Q2 = exact.null_space(Am)
    r = Q1.cols
    n = A.rows
    P = exact.inverse(hstack(Q1, Q2))
    P1 = P.submatrix(range(r), range(n))
    P2 = P.submatrix(range(r, n), range(n))
    return CoreNilpotentFactors(m, Q1, Q2, P1, P2, P1 @ A @ Q1, P2 @ A @ Q2)


def drazin_inverse(A: Matrix) -> InverseResult:
    """a^D = Q1·D^-1·P1 from the core-nilpotent similarity; index recorded."""
    f = core_nilpotent_factors(A)
    if f.Q1.cols == 0:
        X = Matrix.zeros(A.rows, A.cols, A.context)
    else:
        X = f.Q1 @ exact.inverse(f.D) @ f.P1
    return InverseResult(X, InverseKind.DRAZIN, f.index, tuple(defining_residuals(A, X, InverseKind.DRAZIN, f.index)))


def core_inverse(A: Matrix) -> Matrix:
    """Core inverse by the product formula a^# · a · a^(1,3) (NoSolution if it does not exist)."""
    if exact.drazin_index(A) != 1:
        raise NoSolution("core inverse needs index 1")
    g = drazin_inverse(A).value
    return g @ A @ one_three_inverse(A)


def dual_core_inverse(A: Matrix) -> Matrix:
    """Dual core inverse a^(1,4) · a · a^#."""
    if exact.drazin_index(A) != 1:
        raise NoSolution("dual core inverse needs index 1")
    g = drazin_inverse(A).value
    return one_four_inverse(A) @ A @ g
