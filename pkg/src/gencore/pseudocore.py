"""Pseudo core (core-EP) inverses and their dual, with exact verification.

The pseudo core inverse of a square ``a`` is the unique ``x`` with

    x·a^(m+1) = a^m,    a·x² = x,    (a·x)* = a·x

for some positive ``m``; the least such ``m`` is its index. It exists
exactly when ``a^m`` has a {1,3}-inverse, ``m`` being the Drazin index,
and then equals ``a^D · a^m · (a^m)^(1,3)``. That formula is the primary
computation here. Everything else in this module rederives the same
object along other routes and compares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from . import exact
from .classical import (
    InverseKind,
    core_nilpotent_factors,
    drazin_inverse,
    equation_inverse,
    one_four_inverse,
    one_three_inverse,
)
from .errors import HypothesisViolated, LawViolation, NoSolution, NonSquare, NotApplicable
from .linsolve import LinearConstraint, Term, solve_linear_system
from .matrix import Matrix, power

__all__ = [
    "EquationReport",
    "PseudoCoreResult",
    "CoreNilpotentRecord",
    "RegularityCertificate",
    "RelationReport",
    "Check",
    "LawReport",
    "LAWS",
    "PAIR_LAWS",
    "verify_defining_equations",
    "pseudo_core_inverse",
    "dual_pseudo_core_inverse",
    "pseudo_core_cn_exact",
    "core_nilpotent",
    "regularity_certificates",
    "relation_check",
    "commute_transfer_check",
    "reverse_order_product",
    "additive_sum",
    "identity_check",
    "NONEXISTENCE_REASON",
]

NONEXISTENCE_REASON = "{1,3}-inverse of A^m nonexistent for all m ≤ n"


def _square_exact(A: Matrix, what: str):
    if not A.is_square:
        raise NonSquare(f"{what} needs a square matrix, got {A.shape}")
    if not A.exact:
        raise ValueError(f"{what} works in exact mode; see float_engine for floating point")


def _relative(res: Matrix, *scale: Matrix) -> float:
    import numpy as np

    s = max([1.0] + [float(np.linalg.norm(M.to_numpy())) for M in scale])
    return float(np.linalg.norm(res.to_numpy())) / s


# -- defining equations ------------------------------------------------------

@dataclass(frozen=True)
class EquationReport:
    """Residuals of the three defining equations at a given exponent ``m``."""

    m: int
    residuals: tuple
    dual: bool = False

    def holds(self, tol: float = 1e-9) -> bool:
        if not self.residuals:
            return True
        if self.residuals[0][1].exact:
            return all(r.is_zero() for _, r in self.residuals)
        return all(err <= tol for err in self.relative_errors())

    def relative_errors(self) -> list:
        return [_relative(r) for _, r in self.residuals]

    def to_json(self) -> dict:
        out = {"m": self.m, "dual": self.dual, "holds": self.holds(), "equations": []}
        for (label, r), err in zip(self.residuals, self.relative_errors()):
            item = {"equation": label, "zero": r.is_zero()}
            if r.exact:
                item["residual"] = r.to_json()
            else:
                item["residual_norm"] = err
            out["equations"].append(item)
        return out


def verify_defining_equations(A: Matrix, X: Matrix, m: int, dual: bool = False) -> EquationReport:
    """Residuals X·A^(m+1)−A^m, A·X²−X, (A·X)*−A·X (or the mirrored set when ``dual``)."""
    if not A.is_square or X.shape != A.shape:
        raise NonSquare("defining equations need square A and X of the same shape")
    if m < 0:
        raise ValueError("m must be nonnegative")
    Am = power(A, m) if m else Matrix.identity(A.rows, A.context)
    Am1 = Am @ A
    if not dual:
        AX = A @ X
        res = (
            (f"(I) XA^{m + 1}=A^{m}", X @ Am1 - Am),
            ("(II) AX^2=X", AX @ X - X),
            ("(III) (AX)*=AX", AX.adjoint() - AX),
        )
    else:
        XA = X @ A
        res = (
            (f"(I') A^{m + 1}X=A^{m}", Am1 @ X - Am),
            ("(II') X^2A=X", X @ XA - X),
            ("(III') (XA)*=XA", XA.adjoint() - XA),
        )
    return EquationReport(m, res, dual)


@dataclass(frozen=True)
class PseudoCoreResult:
    value: Matrix
    index: int
    drazin_part: Matrix
    projector: Matrix
    certificates: EquationReport
    below_index: Optional[Matrix] = None  # residual of (I) at index-1
    dual: bool = False

    @property
    def verified(self) -> bool:
        minimal = self.index == 1 or (self.below_index is not None and not self.below_index.is_zero())
        return self.certificates.holds() and minimal

    def to_json(self) -> dict:
        return {
            "inverse": "dual_pseudo_core" if self.dual else "pseudo_core",
            "index": self.index,
            "value": self.value.to_json(),
            "drazin_part": self.drazin_part.to_json(),
            "projector": self.projector.to_json(),
            "certificates": self.certificates.to_json(),
            "index_minimal": self.index == 1 or not self.below_index.is_zero(),
        }


def _has_one_three(M: Matrix) -> bool:
    try:
        one_three_inverse(M)
    except NoSolution:
        return False
    return True


def _package(A, X, m, AD, dual) -> PseudoCoreResult:
    report = verify_defining_equations(A, X, m, dual)
    if not report.holds():
        raise LawViolation("computed pseudo core inverse fails its defining equations")
    below = verify_defining_equations(A, X, m - 1, dual).residuals[0][1] if m > 1 else None
    projector = X @ A if dual else A @ X
    return PseudoCoreResult(X, m, AD, projector, report, below, dual)


def pseudo_core_inverse(A: Matrix) -> PseudoCoreResult:
    """a^D · a^m · (a^m)^(1,3) with m the Drazin index; NoSolution if a^m has no {1,3}-inverse."""
    _square_exact(A, "pseudo core inverse")
    m = exact.drazin_index(A)
    Am = power(A, m)
    try:
        T = one_three_inverse(Am)
    except NoSolution:
        raise _nonexistence(A, m) from None
    AD = drazin_inverse(A).value
    return _package(A, AD @ Am @ T, m, AD, dual=False)


def _nonexistence(A: Matrix, m: int) -> NoSolution:
    """NoSolution with the equation solver's own certificate for A^m.

    Column spaces of A^k coincide for all k ≥ m, so a {1,3}-inverse of A^m
    is missing exactly when it is missing for every k ≥ m.
    """
    Am = power(A, m)
    try:
        equation_inverse(Am, InverseKind.ONE_THREE)
    except NoSolution as exc:
        cert = exc.certificate
    else:
        raise LawViolation("Gram test and equation solver disagree on a {1,3}-inverse of A^m")
    n = A.rows
    missing = [k for k in range(1, n + 1) if k >= m or not _has_one_three(power(A, k))]
    if len(missing) == n:
        reason = NONEXISTENCE_REASON
    else:
        reason = f"{{1,3}}-inverse of A^m nonexistent for all m ≥ {m} (the Drazin index)"
    err = NoSolution(reason, certificate=cert)
    err.index = m
    return err


def dual_pseudo_core_inverse(A: Matrix) -> PseudoCoreResult:
    """(pseudo_core_inverse(A*))*, checked against the mirrored equations."""
    _square_exact(A, "dual pseudo core inverse")
    try:
        r = pseudo_core_inverse(A.adjoint())
    except NoSolution as exc:
        raise NoSolution(f"dual: {exc} (for A*)", certificate=exc.certificate) from None
    X = r.value.adjoint()
    return _package(A, X, r.index, r.drazin_part.adjoint(), dual=True)


def pseudo_core_cn_exact(A: Matrix) -> Matrix:
    """Q1·D^-1·(Q1*Q1)^-1·Q1* from the exact core-nilpotent similarity.

    Q1*Q1 being invertible is exactly the {1,3}-condition on A^m, so this
    raises NoSolution in the same cases as :func:`pseudo_core_inverse`.
    """
    _square_exact(A, "core-nilpotent pseudo core path")
    f = core_nilpotent_factors(A)
    if f.Q1.cols == 0:
        return Matrix.zeros(A.rows, A.cols, A.context)
    gram = f.Q1.adjoint() @ f.Q1
    if exact.rank(gram) < gram.rows:
        raise NoSolution("Gram matrix of the core basis is singular")
    return f.Q1 @ exact.inverse(f.D) @ exact.inverse(gram) @ f.Q1.adjoint()


# -- core-nilpotent decomposition -------------------------------------------

@dataclass(frozen=True)
class CoreNilpotentRecord:
    core_part: Matrix
    nilpotent_part: Matrix
    index: int
    drazin_part: Matrix
    checks: tuple = field(default=())

    @property
    def verified(self) -> bool:
        return all(ok for _, ok in self.checks)


def core_nilpotent(A: Matrix) -> CoreNilpotentRecord:
    """a = c_a + n_a with c_a = a·a^D·a and n_a = (1 − a·a^D)·a; invariants checked."""
    _square_exact(A, "core-nilpotent decomposition")
    d = drazin_inverse(A)
    AD, m = d.value, d.index
    n = A.rows
    c = A @ AD @ A
    nil = (Matrix.identity(n, A.context) - A @ AD) @ A
    try:
        group_ok = equation_inverse(c, InverseKind.GROUP).value == AD
    except NoSolution:
        group_ok = False
    checks = (
        ("a=c+n", c + nil == A),
        ("c·n=0", (c @ nil).is_zero()),
        ("n·c=0", (nil @ c).is_zero()),
        ("n^index=0", power(nil, m).is_zero()),
        ("c^#=a^D", group_ok),
    )
    rec = CoreNilpotentRecord(c, nil, m, AD, checks)
    if not rec.verified:
        failed = [name for name, ok in checks if not ok]
        raise LawViolation(f"core-nilpotent invariants failed: {failed}")
    return rec


# -- regularity certificates ------------------------------------------------

@dataclass(frozen=True)
class RegularityCertificate:
    """a^p = u·(a*)^(p+1)·a^p and a^q = v·a^(q+1); ``two_sided`` = (m, w, z) with
    a^m = a^m·(a*)^(m+1)·w = z·(a*)^(m+1)·a^m when such an m ≤ n exists."""

    u: Matrix
    p: int
    v: Matrix
    q: int
    two_sided: Optional[tuple] = None

    def holds(self, A: Matrix) -> bool:
        As = A.adjoint()
        Ap, Aq = power(A, self.p), power(A, self.q)
        ok = self.u @ power(As, self.p + 1) @ Ap == Ap and self.v @ Aq @ A == Aq
        if self.two_sided is not None:
            m, w, z = self.two_sided
            Am, Asm = power(A, m), power(As, m + 1)
            ok = ok and Am @ Asm @ w == Am and z @ Asm @ Am == Am
        return ok

    def to_json(self) -> dict:
        out = {"p": self.p, "u": self.u.to_json(), "q": self.q, "v": self.v.to_json(), "two_sided": None}
        if self.two_sided is not None:
            m, w, z = self.two_sided
            out["two_sided"] = {"m": m, "right": w.to_json(), "left": z.to_json()}
        return out


def _left_witness(M: Matrix, N: Matrix):
    try:
        return exact.solve_left(M, N)
    except NoSolution:
        return None


def _right_witness(M: Matrix, N: Matrix):
    try:
        return exact.solve_right(M, N)
    except NoSolution:
        return None


def two_sided_membership(A: Matrix):
    """First m ≤ n with a^m ∈ a^m(a*)^(m+1)R ∩ R(a*)^(m+1)a^m, as (m, w, z), else None."""
    As = A.adjoint()
    for m in range(1, A.rows + 1):
        Am, Asm = power(A, m), power(As, m + 1)
        w = _right_witness(Am @ Asm, Am)
        if w is None:
            continue
        z = _left_witness(Asm @ Am, Am)
        if z is not None:
            return m, w, z
    return None


def regularity_certificates(A: Matrix) -> RegularityCertificate:
    """Smallest p, q ≤ n with a^p ∈ R(a*)^(p+1)a^p and a^q ∈ Ra^(q+1); NoSolution otherwise."""
    _square_exact(A, "regularity certificates")
    n = A.rows
    As = A.adjoint()
    found_u = found_v = None
    for p in range(1, n + 1):
        Ap = power(A, p)
        u = _left_witness(power(As, p + 1) @ Ap, Ap)
        if u is not None:
            found_u = (u, p)
            break
    if found_u is None:
        raise NoSolution("no u with a^p = u(a*)^(p+1)a^p for p ≤ n: not pseudo core invertible")
    for q in range(1, n + 1):
        Aq = power(A, q)
        v = _left_witness(Aq @ A, Aq)
        if v is not None:
            found_v = (v, q)
            break
    if found_v is None:  # pragma: no cover - every square matrix is strongly pi-regular
        raise NoSolution("no v with a^q = v a^(q+1)")
    cert = RegularityCertificate(found_u[0], found_u[1], found_v[0], found_v[1], two_sided_membership(A))
    if not cert.holds(A):
        raise LawViolation("regularity witnesses fail substitution")
    return cert


# -- relations with other inverses -------------------------------------------

@dataclass(frozen=True)
class RelationReport:
    m: int
    along: Optional[tuple]  # ((name, ok), ...) or None when a^m has no {1,4}-inverse
    bc: tuple
    along_skipped: Optional[str] = None

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.bc) and all(ok for _, ok in (self.along or ()))

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "holds": self.holds,
            "inverse_along": None if self.along is None else dict(self.along),
            "inverse_along_skipped": self.along_skipped,
            "bc_inverse": dict(self.bc),
        }


def _membership(left: Matrix, right: Matrix, target: Matrix) -> bool:
    """Is target = left · Y · right solvable for Y?"""
    con = LinearConstraint([Term(left, right)], target)
    try:
        solve_linear_system([con], (left.cols, right.rows))
    except NoSolution:
        return False
    return True


def relation_check(A: Matrix) -> RelationReport:
    """Inverse along d = a^m(a^m)* and the (a^m, (a^m)*)-inverse, both compared with a^⊕."""
    _square_exact(A, "relation check")
    try:
        r = pseudo_core_inverse(A)
    except NoSolution:
        raise NotApplicable("pseudo core inverse does not exist") from None
    x, m = r.value, r.index
    b = power(A, m)
    c = b.adjoint()
    along, skipped = None, None
    try:
        one_four_inverse(b)
    except NoSolution:
        skipped = "A^m has no {1,4}-inverse"
    else:
        d = b @ c
        along = (
            ("x·a·d=d", x @ A @ d == d),
            ("d·a·x=d", d @ A @ x == d),
            ("Rx⊆Rd", exact.row_space_contained(x, d)),
            ("xR⊆dR", exact.column_space_contained(x, d)),
        )
    bc = (
        ("x∈bRx", _membership(b, x, x)),
        ("x∈xRc", _membership(x, c, x)),
        ("x·a·b=b", x @ A @ b == b),
        ("c·a·x=c", c @ A @ x == c),
    )
    return RelationReport(m, along, bc, skipped)


# -- commutation, products and sums ------------------------------------------

def commute_transfer_check(A: Matrix, X: Matrix) -> bool:
    """If ax = xa and a*x = xa*, report whether a^⊕ x = x a^⊕ (it must)."""
    _square_exact(A, "commutation transfer")
    if X.shape != A.shape:
        raise NotApplicable("X must have the shape of A")
    if A @ X != X @ A or A.adjoint() @ X != X @ A.adjoint():
        raise NotApplicable("hypothesis ax=xa, a*x=xa* fails")
    try:
        p = pseudo_core_inverse(A).value
    except NoSolution:
        raise NotApplicable("pseudo core inverse does not exist") from None
    return p @ X == X @ p


def _pair_inverses(A: Matrix, B: Matrix):
    if A.shape != B.shape:
        raise HypothesisViolated("A and B must have the same shape")
    try:
        return pseudo_core_inverse(A), pseudo_core_inverse(B)
    except NoSolution as exc:
        raise HypothesisViolated(f"both factors must be pseudo core invertible: {exc}") from None


def reverse_order_product(A: Matrix, B: Matrix) -> PseudoCoreResult:
    """(AB)^⊕, checked against A^⊕B^⊕ = B^⊕A^⊕ under ab = ba, ab* = b*a."""
    _square_exact(A, "reverse order law")
    if A @ B != B @ A:
        raise HypothesisViolated("ab ≠ ba")
    if A @ B.adjoint() != B.adjoint() @ A:
        raise HypothesisViolated("ab* ≠ b*a")
    ra, rb = _pair_inverses(A, B)
    prod = pseudo_core_inverse(A @ B)
    if not (prod.value == ra.value @ rb.value == rb.value @ ra.value):
        raise LawViolation("(ab)^⊕ differs from a^⊕b^⊕ or b^⊕a^⊕")
    return prod


def additive_sum(A: Matrix, B: Matrix) -> PseudoCoreResult:
    """(A+B)^⊕, checked against A^⊕ + B^⊕ under ab = ba = 0, a*b = 0."""
    _square_exact(A, "additive law")
    if not (A @ B).is_zero():
        raise HypothesisViolated("ab ≠ 0")
    if not (B @ A).is_zero():
        raise HypothesisViolated("ba ≠ 0")
    if not (A.adjoint() @ B).is_zero():
        raise HypothesisViolated("a*b ≠ 0")
    ra, rb = _pair_inverses(A, B)
    total = pseudo_core_inverse(A + B)
    if total.value != ra.value + rb.value:
        raise LawViolation("(a+b)^⊕ differs from a^⊕ + b^⊕")
    return total


# -- law checks ----------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    holds: bool
    lhs: Optional[Matrix] = None
    rhs: Optional[Matrix] = None

    def to_json(self) -> dict:
        out = {"check": self.name, "holds": self.holds}
        if not self.holds and self.lhs is not None:
            out["lhs"] = self.lhs.to_json()
            out["rhs"] = self.rhs.to_json()
        return out


@dataclass(frozen=True)
class LawReport:
    law: str
    holds: bool
    checks: tuple
    details: dict = field(default_factory=dict)

    @property
    def witness(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.holds), None)

    def to_json(self) -> dict:
        out = {"law": self.law, "holds": self.holds, "checks": [c.to_json() for c in self.checks]}
        w = self.witness
        if w is not None:
            out["witness"] = w.to_json()
        if self.details:
            out["details"] = self.details
        return out


class _Checks:
    def __init__(self):
        self.items = []

    def eq(self, name, lhs: Matrix, rhs: Matrix):
        self.items.append(Check(name, lhs == rhs, lhs, rhs))

    def true(self, name, cond):
        self.items.append(Check(name, bool(cond)))

    def report(self, law, **details) -> LawReport:
        return LawReport(law, all(c.holds for c in self.items), tuple(self.items), details)


class _Facts:
    """Lazily computed quantities shared by the checks on one matrix."""

    def __init__(self, A: Matrix):
        _square_exact(A, "identity check")
        self.A = A
        self.n = A.rows
        self.ctx = A.context
        self._pow = {}

    def pow(self, k: int) -> Matrix:
        if k not in self._pow:
            self._pow[k] = power(self.A, k) if k else Matrix.identity(self.n, self.ctx)
        return self._pow[k]

    @cached_property
    def pc(self):
        try:
            return pseudo_core_inverse(self.A)
        except NoSolution as exc:
            return exc

    @property
    def exists(self) -> bool:
        return not isinstance(self.pc, NoSolution)

    def require(self) -> PseudoCoreResult:
        if not self.exists:
            raise NotApplicable(f"pseudo core inverse does not exist: {self.pc}")
        return self.pc

    @cached_property
    def dual(self):
        try:
            return dual_pseudo_core_inverse(self.A)
        except NoSolution as exc:
            return exc

    @cached_property
    def drazin(self) -> Matrix:
        return drazin_inverse(self.A).value

    @cached_property
    def index(self) -> int:
        return exact.drazin_index(self.A)

    @cached_property
    def core_part(self) -> Matrix:
        return self.A @ self.drazin @ self.A


def _solver_core(M: Matrix):
    """Core inverse from the equation solver, or None."""
    try:
        return equation_inverse(M, InverseKind.CORE).value
    except NoSolution:
        return None


def _law_L2_1(f: _Facts) -> LawReport:
    r = f.require()
    x, m, A = r.value, r.index, f.A
    ck = _Checks()
    ax = A @ x
    xk = {1: x}
    for k in range(2, 2 * m + 3):
        xk[k] = xk[k - 1] @ x
    for k in range(1, 2 * m + 1):
        ck.eq(f"a·x=a^{k}·x^{k}", f.pow(k) @ xk[k], ax)
    ck.eq("x·a·x=x", x @ A @ x, x)
    for k in range(m, m + 3):
        ck.eq(f"a^{k}x^{k}a^{k}=a^{k}", f.pow(k) @ xk[k] @ f.pow(k), f.pow(k))
    ck.eq("x^(m+1)·a^m=a^D", xk[m + 1] @ f.pow(m), f.drazin)
    return ck.report("L2.1", m=m)


def _law_T2_2(f: _Facts) -> LawReport:
    r = f.require()
    x, m, A = r.value, r.index, f.A
    paths = {"direct": x}
    try:
        paths["core_nilpotent"] = pseudo_core_cn_exact(A)
    except NoSolution:
        pass
    cp = _solver_core(f.core_part)
    if cp is not None:
        paths["core_part"] = cp
    pc = _solver_core(f.pow(m))
    if pc is not None:
        paths["power_core"] = f.pow(m - 1) @ pc
    try:
        cert = regularity_certificates(A)
    except NoSolution:
        pass
    else:
        paths["regularity"] = power(A, cert.p) @ cert.u.adjoint()
    if f.n >= 1:
        paths["square_root"] = A @ pseudo_core_inverse(f.pow(2)).value
    ck = _Checks()
    for name, val in paths.items():
        if name != "direct":
            ck.eq(f"{name}=direct", val, x)
    return ck.report("T2.2", paths=sorted(paths))


def _law_T2_3(f: _Facts) -> LawReport:
    """Existence decided four independent ways."""
    direct = f.exists
    decisions = {
        "direct": direct,
        "core_part": _solver_core(f.core_part) is not None,
        "power_core": _solver_core(f.pow(f.index)) is not None,
    }
    try:
        regularity_certificates(f.A)
        decisions["regularity"] = True
    except NoSolution:
        decisions["regularity"] = False
    ck = _Checks()
    for name, val in decisions.items():
        if name != "direct":
            ck.true(f"{name} agrees with direct", val == direct)
    return ck.report("T2.3", exists=direct, index=f.index)


def _law_R2_4(f: _Facts) -> LawReport:
    r = f.require()
    x, A = r.value, f.A
    # least m with x·a^(m+1) = a^m, found from x alone
    m_eq = next(k for k in range(1, f.n + 2) if x @ f.pow(k + 1) == f.pow(k))
    ck = _Checks()
    ck.true("I(a)=i(a)", r.index == f.index)
    ck.true("least m solving (I) equals the reported index", m_eq == r.index)
    if not isinstance(f.dual, NoSolution):
        ck.true("I'(a)=i(a)", f.dual.index == f.index)
    return ck.report("R2.4", index=r.index, drazin_index=f.index)


def _law_T2_5(f: _Facts) -> LawReport:
    r = f.require()
    x, m = r.value, r.index
    ck = _Checks()
    core = _solver_core(f.pow(m))
    ck.true("a^m is core invertible", core is not None)
    if core is not None:
        ck.eq("(a^m)^core=(a^⊕)^m", core, power(x, m))
        ck.eq("a^⊕=a^(m-1)(a^m)^core", f.pow(m - 1) @ core, x)
    return ck.report("T2.5", m=m)


def _law_T2_6(f: _Facts) -> LawReport:
    r = f.require()
    x, m = r.value, r.index
    ck = _Checks()
    indices = {}
    for k in (1, 2, 3):
        try:
            rk = pseudo_core_inverse(f.pow(k))
        except NoSolution:
            ck.true(f"a^{k} pseudo core invertible", False)
            continue
        indices[k] = rk.index
        ck.eq(f"(a^{k})^⊕=(a^⊕)^{k}", rk.value, power(x, k))
        ck.true(f"I(a^{k})=ceil({m}/{k})", rk.index == math.ceil(m / k))
        ck.eq(f"a^⊕=a^{k - 1}(a^{k})^⊕", f.pow(k - 1) @ rk.value, x)
    return ck.report("T2.6", m=m, power_indices=indices)


def _law_T2_7(f: _Facts) -> LawReport:
    r = f.require()
    x, A = r.value, f.A
    ck = _Checks()
    target = A @ A @ x
    try:
        px = pseudo_core_inverse(x)
    except NoSolution:
        ck.true("a^⊕ pseudo core invertible", False)
        return ck.report("T2.7")
    ck.true("I(a^⊕)=1", px.index == 1)
    ck.eq("(a^⊕)^⊕=a²a^⊕", px.value, target)
    core = _solver_core(x)
    ck.true("a^⊕ core invertible", core is not None)
    if core is not None:
        ck.eq("(a^⊕)^core=a²a^⊕", core, target)
    return ck.report("T2.7")


def _law_P2_8(f: _Facts) -> LawReport:
    r = f.require()
    y = r.value  # a^⊕, then two more applications
    for _ in range(2):
        y = pseudo_core_inverse(y).value
    ck = _Checks()
    ck.eq("((a^⊕)^⊕)^⊕=a^⊕", y, r.value)
    return ck.report("P2.8")


def _law_T2_9(f: _Facts) -> LawReport:
    r = f.require()
    ck = _Checks()
    core = _solver_core(f.core_part)
    ck.true("c_a core invertible", core is not None)
    if core is not None:
        ck.eq("c_a^core=a^⊕", core, r.value)
    rec = core_nilpotent(f.A)
    ck.true("core-nilpotent invariants", rec.verified)
    return ck.report("T2.9")


def _t2_10_conditions(A: Matrix, x: Matrix, Am: Matrix) -> dict:
    xs = x.adjoint()
    reflexive = x @ A @ x == x
    col = exact.column_space_contained
    ann = exact.left_annihilator_contained
    x_eq_am = col(x, Am) and col(Am, x)
    xs_eq_am = col(xs, Am) and col(Am, xs)
    return {
        "(2)": reflexive and x_eq_am and xs_eq_am,
        "(3)": reflexive and x_eq_am and col(Am, xs),
        "(4)": reflexive and x_eq_am and ann(xs, Am),
        "(5)": reflexive and ann(x, Am) and ann(Am, x) and ann(xs, Am),
    }


def _law_T2_10(f: _Facts) -> LawReport:
    r = f.require()
    x, m, A = r.value, r.index, f.A
    ck = _Checks()
    conds = _t2_10_conditions(A, x, f.pow(m))
    for name, ok in conds.items():
        ck.true(f"condition {name} at m=I(a)", ok)
    # the annihilator conditions once more, from explicit left null spaces
    lx, lam, lxs = exact.left_null_space(x), exact.left_null_space(f.pow(m)), exact.left_null_space(x.adjoint())
    ck.true("°x=°(a^m) by null spaces", (lx @ f.pow(m)).is_zero() and (lam @ x).is_zero())
    ck.true("°(x*)⊆°(a^m) by null spaces", (lxs @ f.pow(m)).is_zero())
    # converse: any candidate passing (5) must be a^⊕
    candidates = {"a^D": f.drazin, "x*": x.adjoint(), "a·x": A @ x, "x·a": x @ A}
    if not isinstance(f.dual, NoSolution):
        candidates["dual"] = f.dual.value
    passing = []
    for name, cand in candidates.items():
        if _t2_10_conditions(A, cand, f.pow(m))["(5)"]:
            passing.append(name)
            ck.eq(f"candidate {name} passes (5) hence equals a^⊕", cand, x)
    also = [k for k in range(1, m) if _t2_10_conditions(A, x, f.pow(k))["(2)"]]
    return ck.report("T2.10", m=m, converse_candidates_passing=passing, condition_2_at_smaller_m=also)


def _law_T2_12(f: _Facts) -> LawReport:
    r = f.require()
    ck = _Checks()
    try:
        cert = regularity_certificates(f.A)
    except NoSolution:
        ck.true("regularity certificate exists", False)
        return ck.report("T2.12")
    ck.true("certificate round-trips", cert.holds(f.A))
    ck.eq("a^p·u*=a^⊕", power(f.A, cert.p) @ cert.u.adjoint(), r.value)
    return ck.report("T2.12", p=cert.p, q=cert.q)


def _law_T2_13(f: _Facts) -> LawReport:
    """Three-way equivalence; applicable to every square matrix."""
    m = f.index
    try:
        equation_inverse(f.pow(m), InverseKind.MOORE_PENROSE)
        mp = True
    except NoSolution:
        mp = False
    both = f.exists and not isinstance(f.dual, NoSolution)
    member = two_sided_membership(f.A)
    ck = _Checks()
    ck.true("(1)⇔(2)", mp == both)
    ck.true("(2)⇔(3)", both == (member is not None))
    return ck.report("T2.13", drazin_power_mp=mp, both_inverses=both, membership_m=None if member is None else member[0])


def _law_P2_14(f: _Facts) -> LawReport:
    r = f.require()
    x, m, A = r.value, r.index, f.A
    core = _solver_core(A)
    c1 = core is not None and core == x
    c2 = r.certificates.holds() and A @ x @ A == A
    c3 = r.certificates.holds() and A @ A @ x == A
    ck = _Checks()
    ck.true("(1)⇔(2)", c1 == c2)
    ck.true("(3)⇒(1)", (not c3) or c1)
    summary = ", ".join(f"{k} {'holds' if v else 'fails'}" for k, v in (("(1)", c1), ("(2)", c2), ("(3)", c3)))
    return ck.report("P2.14", **{"(1)": c1, "(2)": c2, "(3)": c3, "summary": summary})


def _law_T3_3(f: _Facts) -> LawReport:
    f.require()
    rep = relation_check(f.A)
    if rep.along is None:
        raise NotApplicable(rep.along_skipped)
    ck = _Checks()
    for name, ok in rep.along:
        ck.true(name, ok)
    return ck.report("T3.3", m=rep.m)


def _law_T3_4(f: _Facts) -> LawReport:
    f.require()
    rep = relation_check(f.A)
    ck = _Checks()
    for name, ok in rep.bc:
        ck.true(name, ok)
    return ck.report("T3.4", m=rep.m)


def _law_P4_2(f: _Facts, other: Matrix) -> LawReport:
    ck = _Checks()
    ck.true("a^⊕x=xa^⊕", commute_transfer_check(f.A, other))
    return ck.report("P4.2")


def _law_T4_3(f: _Facts, other: Matrix) -> LawReport:
    try:
        prod = reverse_order_product(f.A, other)
    except HypothesisViolated as exc:
        raise NotApplicable(str(exc)) from None
    ck = _Checks()
    ck.true("(ab)^⊕=a^⊕b^⊕=b^⊕a^⊕", True)
    return ck.report("T4.3", index=prod.index)


def _law_T4_4(f: _Facts, other: Matrix) -> LawReport:
    try:
        total = additive_sum(f.A, other)
    except HypothesisViolated as exc:
        raise NotApplicable(str(exc)) from None
    ck = _Checks()
    ck.true("(a+b)^⊕=a^⊕+b^⊕", True)
    return ck.report("T4.4", index=total.index)


LAWS = {
    "L2.1": (_law_L2_1, "power identities a·x=a^k·x^k, x·a·x=x, a^k·x^k·a^k=a^k, x^(m+1)·a^m=a^D"),
    "T2.2": (_law_T2_2, "uniqueness: every computation path returns the same matrix"),
    "T2.3": (_law_T2_3, "existence decided by the {1,3} test, core part, a^m core inverse, regularity"),
    "R2.4": (_law_R2_4, "pseudo core index equals Drazin index"),
    "T2.5": (_law_T2_5, "(a^m)^core=(a^⊕)^m and a^⊕=a^(m-1)(a^m)^core"),
    "T2.6": (_law_T2_6, "(a^k)^⊕=(a^⊕)^k and I(a^k)=ceil(I(a)/k) for k=1,2,3"),
    "T2.7": (_law_T2_7, "(a^⊕)^⊕=(a^⊕)^core=a²a^⊕"),
    "P2.8": (_law_P2_8, "triple pseudo core inverse returns a^⊕"),
    "T2.9": (_law_T2_9, "a^⊕ is the core inverse of the core part a·a^D·a"),
    "T2.10": (_law_T2_10, "range and annihilator characterizations (2)-(5) and their converse"),
    "T2.12": (_law_T2_12, "regularity certificate and a^⊕=a^p·u*"),
    "T2.13": (_law_T2_13, "both inverses exist ⇔ a^m Moore-Penrose invertible ⇔ two-sided membership"),
    "P2.14": (_law_P2_14, "core inverse characterizations: (1)⇔(2), (3)⇒(1)"),
    "T3.3": (_law_T3_3, "a^⊕ is the inverse along a^m(a^m)*"),
    "T3.4": (_law_T3_4, "a^⊕ is the (a^m,(a^m)*)-inverse"),
    "P4.2": (_law_P4_2, "ax=xa, a*x=xa* imply a^⊕x=xa^⊕ (needs a second matrix)"),
    "T4.3": (_law_T4_3, "reverse order law (needs a second matrix)"),
    "T4.4": (_law_T4_4, "additive law (needs a second matrix)"),
}
PAIR_LAWS = frozenset({"P4.2", "T4.3", "T4.4"})


def identity_check(A: Matrix, law: str, other: Optional[Matrix] = None) -> LawReport:
    """Check one law on A (and ``other`` for the two-matrix laws).

    Raises NotApplicable when the law's standing hypothesis fails, for
    instance when A has no pseudo core inverse.
    """
    if law not in LAWS:
        raise KeyError(f"unknown law {law!r}; choose from {', '.join(LAWS)}")
    fn = LAWS[law][0]
    facts = _Facts(A)
    if law in PAIR_LAWS:
        if other is None:
            raise NotApplicable(f"{law} needs a second matrix")
        return fn(facts, other)
    return fn(facts)
