"""Exact solver for simultaneous linear matrix equations sum_j P_j · X(*) · Q_j = R.

The unknown may appear adjointed. Under conjugate-transpose that makes the
system only R-linear, so every equation is split into rational real and
imaginary parts and the unknown into (Re X, Im X). The resulting system
over Q is vectorised with Kronecker products and solved by
:func:`solve_rational`.

:func:`solve_rational` is multimodular: it reduces the system mod a run of
31-bit primes with the compiled kernel, combines residues by CRT,
rationally reconstructs, and accepts a candidate only after exact
substitution. Inconsistent systems are reported with a Farkas-style
certificate ``y`` (``y·A = 0``, ``y·b = 1``) that is also checked exactly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NoSolution, ContextMismatch
from .matrix import Matrix

__all__ = [
    "Term",
    "LinearConstraint",
    "solve_linear_system",
    "solve_rational",
    "solve_rational_exact",
    "rational_reconstruct",
    "primes",
]

log = logging.getLogger(__name__)

MAX_PRIMES = 300


# -- constraint description -------------------------------------------------

@dataclass(frozen=True)
class Term:
    """One summand ``left · X · right`` (or ``left · X* · right`` when ``adjoint``)."""

    left: Matrix
    right: Matrix
    adjoint: bool = False


@dataclass(frozen=True)
class LinearConstraint:
    terms: tuple
    rhs: Matrix

    def __init__(self, terms: Iterable, rhs: Matrix):
        terms = tuple(t if isinstance(t, Term) else Term(*t) for t in terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "rhs", rhs)
        for t in terms:
            if t.left.rows != rhs.rows or t.right.cols != rhs.cols:
                raise DimensionMismatch(
                    f"term {t.left.shape}·X·{t.right.shape} does not produce rhs shape {rhs.shape}"
                )
            if t.left.context != rhs.context or t.right.context != rhs.context:
                raise ContextMismatch("constraint mixes ring contexts")

    def unknown_shape_of(self, term: Term):
        shape = (term.left.cols, term.right.rows)
        return shape[::-1] if term.adjoint else shape

    def residual(self, X: Matrix) -> Matrix:
        total = -self.rhs
        for t in self.terms:
            Y = X.adjoint() if t.adjoint else X
            total = total + t.left @ Y @ t.right
        return total


# -- primes and number theory ------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):  # deterministic below 3.4e14
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIMES: list = []


def primes(count: int) -> list:
    """The ``count`` largest primes below 2**31, descending (cached)."""
    candidate = _PRIMES[-1] - 2 if _PRIMES else (1 << 31) - 1
    while len(_PRIMES) < count:
        if _is_prime(candidate):
            _PRIMES.append(candidate)
        candidate -= 2
    return _PRIMES[:count]


def rational_reconstruct(a: int, m: int):
    """Fraction n/d with n ≡ a·d (mod m) and |n|, d ≤ sqrt(m/2), or None."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if math.gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


# -- rational systems --------------------------------------------------------

def _as_object(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    return a.reshape(a.shape[0], -1) if a.ndim == 2 else a.reshape(-1, 1)


def _verify(A: np.ndarray, B: np.ndarray, X: list) -> bool:
    den = 1
    for row in X:
        for q in row:
            den = math.lcm(den, q.denominator)
    V = np.array([[int(q * den) for q in row] for row in X], dtype=object).reshape(A.shape[1], B.shape[1])
    return bool(np.all(A.dot(V) == B * den)) if A.shape[1] else bool(np.all(B == 0))


def _certificate(A: np.ndarray, b: np.ndarray):
    """Exact y with y·A = 0 and y·b = 1, or None if the system looks consistent."""
    m = A.shape[0]
    At = np.vstack([A.T, b.reshape(1, m)])
    e = np.zeros((At.shape[0], 1), dtype=object)
    e[-1, 0] = 1
    try:
        y = _solve_multimodular(At, e, certify=False)
    except NoSolution:
        return None
    return [row[0] for row in y]


def solve_rational(A, B):
    """A particular rational solution X of A·X = B (free variables zero).

    ``A`` (m x n) and ``B`` (m x k) hold Python integers. Returns X as an
    n x k nested list of Fractions; raises :class:`NoSolution` with an exact
    certificate when the system is inconsistent.
    """
    A, B = _as_object(A), _as_object(B)
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatch("A and B need the same number of rows")
    if A.shape[0] == 0 or A.shape[1] == 0:
        if np.all(B == 0):
            return [[Fraction(0)] * B.shape[1] for _ in range(A.shape[1])]
        raise NoSolution("nonzero right-hand side with no unknowns")
    return _solve_multimodular(A, B, certify=True)


def _solve_multimodular(A, B, certify):
    m, n = A.shape
    k = B.shape[1]
    aug = np.hstack([A, B])
    best = None  # pivot tuple for the residues currently accumulated
    residues = modulus = None
    previous = None
    inconsistent_seen = 0
    for p in primes(MAX_PRIMES):
        M = np.ascontiguousarray((aug % p).astype(np.int64))
        pivots = tuple(kernels.rref_mod(M, p, n))
        r = len(pivots)
        if best is not None and pivots != best:
            if r < len(best) or (r == len(best) and pivots > best):
                continue  # unlucky prime
            residues = modulus = previous = None
        best = pivots
        bad_cols = np.flatnonzero(np.any(M[r:, n:] != 0, axis=0)) if r < m else []
        if len(bad_cols):
            inconsistent_seen += 1
            if inconsistent_seen > 3:
                break
            if not certify:
                if inconsistent_seen == 3:
                    raise NoSolution("inconsistent modulo three primes")
                continue
            y = _certificate(A, B[:, int(bad_cols[0])])
            if y is not None and _certifies(A, B[:, int(bad_cols[0])], y):
                raise NoSolution("linear system is inconsistent", certificate=y)
            continue
        sol = np.zeros((n, k), dtype=object)
        for row, c in enumerate(pivots):
            sol[c, :] = M[row, n:].astype(object)
        if residues is None:
            residues, modulus = sol, p
        else:
            inv = pow(modulus % p, -1, p)
            residues = residues + modulus * (((sol - residues) * inv) % p)
            modulus *= p
        candidate = _reconstruct(residues, modulus)
        if candidate is not None and candidate == previous:
            if _verify(A, B, candidate):
                return candidate
        previous = candidate
    log.warning("multimodular solve did not settle; using exact elimination")
    X = solve_rational_exact(A, B)
    if X is None:
        raise NoSolution("linear system is inconsistent")
    return X


def _certifies(A, b, y) -> bool:
    den = 1
    for q in y:
        den = math.lcm(den, q.denominator)
    v = np.array([int(q * den) for q in y], dtype=object)
    return bool(np.all(v.dot(A) == 0)) and v.dot(b) == den


def _reconstruct(residues: np.ndarray, modulus: int):
    out = []
    for row in residues:
        rec_row = []
        for a in row:
            q = rational_reconstruct(int(a), modulus)
            if q is None:
                return None
            rec_row.append(q)
        out.append(rec_row)
    return out


def solve_rational_exact(A, B):
    """Reference solver: exact fraction-free Gauss-Jordan (slow, no primes).

    Returns None when the system is inconsistent.
    """
    from .exact import solve_right

    A, B = _as_object(A), _as_object(B)
    zA = np.zeros(A.shape, dtype=object)
    zB = np.zeros(B.shape, dtype=object)
    MA = Matrix.from_gaussian_ints(A, zA)
    MB = Matrix.from_gaussian_ints(B, zB)
    try:
        X = solve_right(MA, MB)
    except NoSolution:
        return None
    return [[X[i, j].re for j in range(X.cols)] for i in range(X.rows)]


# -- matrix equations ------------------------------------------------------

def _kron_parts(P: Matrix, Q: Matrix):
    """Integer numerators (re, im) and denominator of kron(P, Q^T)."""
    pr, pi = P.numerators
    qr, qi = Q.numerators
    qrt, qit = qr.T, qi.T
    re = np.kron(pr, qrt) - np.kron(pi, qit)
    im = np.kron(pr, qit) + np.kron(pi, qrt)
    return re.astype(object), im.astype(object), P.den * Q.den


def _vectorize(constraints: Sequence[LinearConstraint], shape):
    p, q = shape
    nvar = p * q
    blocks, rhs = [], []
    for con in constraints:
        a, b = con.rhs.shape
        parts = []
        for t in con.terms:
            if con.unknown_shape_of(t) != (p, q):
                raise DimensionMismatch(f"term expects unknown of shape {con.unknown_shape_of(t)}, not {shape}")
            cre, cim, den = _kron_parts(t.left, t.right)
            if t.adjoint:
                # column (k, l) of the Kronecker matrix multiplies (X*)_{kl} = s(X_{lk})
                perm = [k * p + l for l in range(p) for k in range(q)]
                cre, cim = cre[:, perm], cim[:, perm]
            conj = t.adjoint and con.rhs.context.conjugating
            if conj:
                block = np.block([[cre, cim], [cim, -cre]])
            else:
                block = np.block([[cre, -cim], [cim, cre]])
            parts.append((block.astype(object), den))
        rr, ri = con.rhs.numerators
        lcm = con.rhs.den
        for _, den in parts:
            lcm = math.lcm(lcm, den)
        total = np.zeros((2 * a * b, 2 * nvar), dtype=object)
        for block, den in parts:
            total = total + block * (lcm // den)
        scale = lcm // con.rhs.den
        vec = np.concatenate([rr.reshape(-1), ri.reshape(-1)]).astype(object) * scale
        blocks.append(total)
        rhs.append(vec.reshape(-1, 1))
    if not blocks:
        return np.zeros((0, 2 * nvar), dtype=object), np.zeros((0, 1), dtype=object)
    return np.vstack(blocks), np.vstack(rhs)


def solve_linear_system(constraints: Sequence[LinearConstraint], unknown_shape) -> Matrix:
    """Exact solution X of the simultaneous constraints, or raise :class:`NoSolution`.

    The returned X is the particular solution of the reduced system with
    free variables set to zero, and satisfies every constraint exactly.
    """
    constraints = list(constraints)
    if not constraints:
        raise ValueError("need at least one constraint")
    ctx = constraints[0].rhs.context
    if not ctx.exact:
        raise ValueError("solve_linear_system works in exact mode")
    p, q = unknown_shape
    A, b = _vectorize(constraints, (p, q))
    x = solve_rational(A, b)
    vals = [row[0] for row in x]
    nvar = p * q
    re, im = vals[:nvar], vals[nvar:]
    den = 1
    for v in vals:
        den = math.lcm(den, v.denominator)
    X = Matrix.from_gaussian_ints(
        np.array([int(v * den) for v in re], dtype=object).reshape(p, q),
        np.array([int(v * den) for v in im], dtype=object).reshape(p, q),
        ctx,
        den,
    )
    for con in constraints:
        if not con.residual(X).is_zero():  # pragma: no cover - guarded by _verify
            raise AssertionError("solver returned a non-solution")
    return X
