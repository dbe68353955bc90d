"""Floating-point pseudo core inverses for complex matrices.

Three independent routes are provided, all for the conjugate-transpose
involution (they rely on unitary factors and positive definite Gram
matrices):

* :func:`pseudo_core_hs` recurses through the Hartwig-Spindelböck
  decomposition ``A = U [[ΣK, ΣL], [0, 0]] U*``, since
  ``A^⊕ = U [[(ΣK)^⊕, 0], [0, 0]] U*``;
* :func:`pseudo_core_cn` uses the core-nilpotent factors of ``A``;
* :func:`pseudo_core_direct` evaluates ``A^D A^m (A^m)^†``.

The singular value decomposition underneath is a one-sided (Hestenes)
Jacobi iteration written here, so the engine does not depend on LAPACK's
SVD; numpy is used for array arithmetic and small dense inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NonSquare, NotApplicable, RankZero, SingularBlock
from .matrix import FLOAT_H, Matrix

__all__ = [
    "svd",
    "singular_values",
    "numeric_rank",
    "pinv",
    "float_index",
    "rank_sequence",
    "HSDecomposition",
    "hartwig_spindelbock",
    "CNFactors",
    "cn_factors",
    "drazin_float",
    "pseudo_core_hs",
    "pseudo_core_cn",
    "pseudo_core_direct",
    "defining_residuals",
    "relative_difference",
    "METHODS",
]

EPS = np.finfo(float).eps
_MAX_SWEEPS = 80
_TINY = np.finfo(float).tiny


# -- SVD ---------------------------------------------------------------------

def _complete_basis(Q: np.ndarray, n: int) -> np.ndarray:
    """Extend orthonormal columns Q (n x r) to an n x n unitary matrix."""
    cols = [Q[:, j] for j in range(Q.shape[1])]
    while len(cols) < n:
        B = np.column_stack(cols) if cols else np.zeros((n, 0), dtype=complex)
        best, best_norm = None, -1.0
        for k in range(n):
            e = np.zeros(n, dtype=complex)
            e[k] = 1.0
            for _ in range(2):  # Gram-Schmidt, twice for orthogonality
                e = e - B @ (B.conj().T @ e)
            nrm = np.linalg.norm(e)
            if nrm > best_norm:
                best, best_norm = e, nrm
        cols.append(best / best_norm)
    return np.column_stack(cols) if cols else np.zeros((n, 0), dtype=complex)


def svd(A) -> tuple:
    """(U, s, V) with A = U[:, :k]·diag(s)·V[:, :k]* (k = min shape), U and V unitary.

    One-sided Jacobi: columns of A·V are rotated pairwise until mutually
    orthogonal to working precision; their norms are the singular values.
    """
    A = np.asarray(A, dtype=complex)
    m, n = A.shape
    B = A.copy()
    V = np.eye(n, dtype=complex)
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                bp, bq = B[:, p], B[:, q]
                alpha = np.vdot(bp, bp).real
                beta = np.vdot(bq, bq).real
                gamma = np.vdot(bp, bq)
                g = abs(gamma)
                if g <= _TINY or g <= EPS * np.sqrt(alpha) * np.sqrt(beta):
                    continue
                with np.errstate(over="ignore"):
                    zeta = (beta - alpha) / (2.0 * g)
                if not np.isfinite(zeta):
                    continue  # rotation angle below representable precision
                rotated = True
                phase = gamma / g
                if abs(zeta) > 1e150:
                    t = 0.5 / zeta
                else:
                    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                bq_t = bq / phase  # makes bp* bq real and positive
                B[:, p], B[:, q] = c * bp - s * bq_t, s * bp + c * bq_t
                vp, vq_t = V[:, p].copy(), V[:, q] / phase
                V[:, p], V[:, q] = c * vp - s * vq_t, s * vp + c * vq_t
        if not rotated:
            break
    sig = np.linalg.norm(B, axis=0)
    order = np.argsort(-sig, kind="stable")
    sig, B, V = sig[order], B[:, order], V[:, order]
    k = min(m, n)
    smax = sig[0] if n else 0.0
    keep = [j for j in range(k) if sig[j] > 0 and sig[j] > EPS * smax]
    U_r = B[:, keep] / sig[keep] if keep else np.zeros((m, 0), dtype=complex)
    U = _complete_basis(U_r, m)
    return U, sig[:k], V


def singular_values(A) -> np.ndarray:
    return svd(A)[1]


def _default_tol(shape, smax: float, rtol: Optional[float]) -> float:
    if rtol is None:
        rtol = max(shape) * EPS
    return rtol * smax


def numeric_rank(A, tol: Optional[float] = None, *, rtol: Optional[float] = None) -> int:
    """Number of singular values above ``tol`` (absolute).

    With no ``tol`` the threshold is ``rtol·σ_max``, ``rtol`` defaulting to
    ``max(shape)·ε``.
    """
    A = _as_array(A)
    if A.size == 0:
        return 0
    s = singular_values(A)
    if tol is None:
        tol = _default_tol(A.shape, s[0] if s.size else 0.0, rtol)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return int(np.sum(s > tol))


def pinv(A, rtol: Optional[float] = None) -> np.ndarray:
    """Moore-Penrose inverse from the Jacobi SVD."""
    A = _as_array(A)
    U, s, V = svd(A)
    r = numeric_rank(A, rtol=rtol) if A.size else 0
    if r == 0:
        return np.zeros(A.shape[::-1], dtype=complex)
    return V[:, :r] @ np.diag(1.0 / s[:r]) @ U[:, :r].conj().T


def rank_sequence(A, rtol: Optional[float] = None) -> list:
    """[rank(A), rank(A^2), ...] up to and including the first repeated value."""
    A = _square(A)
    ranks = [numeric_rank(A, rtol=rtol)]
    Ak = A
    while len(ranks) <= A.shape[0] + 1:
        Ak = Ak @ A
        ranks.append(numeric_rank(Ak, rtol=rtol))
        if ranks[-1] == ranks[-2]:
            break
    return ranks


def float_index(A, rtol: Optional[float] = None) -> int:
    """Smallest k ≥ 1 with numeric rank(A^k) = rank(A^(k+1))."""
    return len(rank_sequence(A, rtol)) - 1


# -- helpers -----------------------------------------------------------------

def _as_array(A) -> np.ndarray:
    if isinstance(A, Matrix):
        if A.context.scalar_mode.value == "float" and not A.context.conjugating:
            raise NotApplicable("floating-point engine needs the conjugate-transpose involution")
        if A.exact and not A.context.conjugating:
            raise NotApplicable("floating-point engine needs the conjugate-transpose involution")
        return A.to_numpy().astype(complex)
    return np.asarray(A, dtype=complex)


def _square(A) -> np.ndarray:
    A = _as_array(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"square matrix required, got shape {A.shape}")
    return A


def _wrap(like, X: np.ndarray):
    if isinstance(like, Matrix):
        return Matrix.from_numpy(X, FLOAT_H)
    return X


def _mpow(A: np.ndarray, k: int) -> np.ndarray:
    return np.linalg.matrix_power(A, k) if k else np.eye(A.shape[0], dtype=complex)


def relative_difference(X, Y) -> float:
    X, Y = _as_array(X), _as_array(Y)
    scale = max(np.linalg.norm(X), np.linalg.norm(Y))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(X - Y) / scale)


# -- Hartwig-Spindelböck -------------------------------------------------------

@dataclass(frozen=True)
class HSDecomposition:
    U: np.ndarray
    Sigma: np.ndarray  # r x r diagonal
    K: np.ndarray
    L: np.ndarray
    r: int

    def reconstruct(self) -> np.ndarray:
        n = self.U.shape[0]
        T = np.zeros((n, n), dtype=complex)
        T[: self.r, : self.r] = self.Sigma @ self.K
        T[: self.r, self.r :] = self.Sigma @ self.L
        return self.U @ T @ self.U.conj().T

    def invariant_errors(self, A) -> dict:
        """Relative errors of unitarity, KK*+LL*=I_r and reconstruction."""
        A = _as_array(A)
        n, r = self.U.shape[0], self.r
        KL = self.K @ self.K.conj().T + self.L @ self.L.conj().T
        scale = max(np.linalg.norm(A), 1e-300)
        return {
            "unitarity": float(np.linalg.norm(self.U @ self.U.conj().T - np.eye(n)) / np.sqrt(n)),
            "kk_ll": float(np.linalg.norm(KL - np.eye(r)) / np.sqrt(r)),
            "reconstruction": float(np.linalg.norm(A - self.reconstruct()) / scale),
        }


def hartwig_spindelbock(A, rtol: Optional[float] = None, rank: Optional[int] = None) -> HSDecomposition:
    """A = U [[ΣK, ΣL], [0, 0]] U* from the SVD A = W diag(Σ, 0) V*: U = W, [K L] = (V* W)[:r].

    ``rank`` overrides the numeric rank decision.
    """
    A = _square(A)
    r = numeric_rank(A, rtol=rtol) if rank is None else rank
    if r == 0:
        raise RankZero("Hartwig-Spindelböck decomposition needs rank > 0")
    W, s, V = svd(A)
    M = V.conj().T[:r] @ W
    return HSDecomposition(W, np.diag(s[:r]).astype(complex), M[:, :r], M[:, r:], r)


def _inverse_checked(M: np.ndarray, rtol: Optional[float], what: str) -> np.ndarray:
    if M.shape[0] and numeric_rank(M, rtol=rtol) < M.shape[0]:
        raise SingularBlock(f"{what} is numerically singular (rank mis-estimated?)")
    return np.linalg.inv(M)


def pseudo_core_hs(A, rtol: Optional[float] = None):
    """Recursive Hartwig-Spindelböck route.

    The block ΣK of level j has the rank of A^(j+2), so every rank decision
    is taken once, on the powers of A, and the recursion stops at a zero
    block (inverse 0) or an invertible one (ordinary inverse). Depth is at
    most the index.
    """
    M = _square(A)
    ranks = rank_sequence(M, rtol) if M.shape[0] else []
    return _wrap(A, _hs(M, ranks, rtol))


def _hs(A: np.ndarray, ranks: list, rtol) -> np.ndarray:
    n = A.shape[0]
    r = ranks[0] if ranks else 0
    if r == 0:
        return np.zeros_like(A)
    if r == n:
        return np.linalg.inv(A)
    hs = hartwig_spindelbock(A, rtol, rank=r)
    inner = _hs(hs.Sigma @ hs.K, ranks[1:] or ranks[-1:], rtol)
    T = np.zeros((n, n), dtype=complex)
    T[:r, :r] = inner
    return hs.U @ T @ hs.U.conj().T


# -- core-nilpotent factors ------------------------------------------------

@dataclass(frozen=True)
class CNFactors:
    index: int
    Q1: np.ndarray
    Q2: np.ndarray
    P1: np.ndarray
    P2: np.ndarray
    D: np.ndarray
    N: np.ndarray

    def invariant_errors(self, A) -> dict:
        A = _as_array(A)
        n = A.shape[0]
        Q = np.hstack([self.Q1, self.Q2])
        P = np.vstack([self.P1, self.P2])
        r = self.D.shape[0]
        blk = np.zeros((n, n), dtype=complex)
        blk[:r, :r] = self.D
        blk[r:, r:] = self.N
        return {
            "inverse_pair": float(np.linalg.norm(Q @ P - np.eye(n))),
            "reconstruction": float(np.linalg.norm(A - Q @ blk @ P) / max(np.linalg.norm(A), 1e-300)),
        }


def cn_factors(A, rtol: Optional[float] = None) -> CNFactors:
    """Q1 = orthonormal basis of col(A^m), Q2 = orthonormal basis of null(A^m), [P1; P2] = [Q1 Q2]^-1."""
    A = _square(A)
    n = A.shape[0]
    ranks = rank_sequence(A, rtol)
    m = len(ranks) - 1
    Am = _mpow(A, m)
    r = ranks[m - 1]
    W, _, V = svd(Am)
    Q1, Q2 = W[:, :r], V[:, r:]
    P = _inverse_checked(np.hstack([Q1, Q2]), rtol, "[Q1 Q2]") if n else np.zeros((0, 0), dtype=complex)
    P1, P2 = P[:r], P[r:]
    return CNFactors(m, Q1, Q2, P1, P2, P1 @ A @ Q1, P2 @ A @ Q2)


def drazin_float(A, rtol: Optional[float] = None):
    """A^D = Q1 D^-1 P1."""
    M = _square(A)
    f = cn_factors(M, rtol)
    if f.Q1.shape[1] == 0:
        return _wrap(A, np.zeros_like(M))
    return _wrap(A, f.Q1 @ _inverse_checked(f.D, rtol, "core block D") @ f.P1)


def pseudo_core_cn(A, rtol: Optional[float] = None):
    """Q1 D^-1 (Q1* Q1)^-1 Q1* from the core-nilpotent factors; SingularBlock if D is singular."""
    M = _square(A)
    f = cn_factors(M, rtol)
    if f.Q1.shape[1] == 0:
        return _wrap(A, np.zeros_like(M))
    Dinv = _inverse_checked(f.D, rtol, "core block D")
    G = f.Q1.conj().T @ f.Q1
    return _wrap(A, f.Q1 @ Dinv @ np.linalg.inv(G) @ f.Q1.conj().T)


def pseudo_core_direct(A, rtol: Optional[float] = None):
    """A^D · A^m · (A^m)^† with the Drazin part from the core-nilpotent factors."""
    M = _square(A)
    f = cn_factors(M, rtol)
    if f.Q1.shape[1] == 0:
        return _wrap(A, np.zeros_like(M))
    AD = f.Q1 @ _inverse_checked(f.D, rtol, "core block D") @ f.P1
    # A^m (A^m)^† is the projector onto col(A^m); an orthonormal basis built
    # one power at a time avoids the conditioning of the explicit power
    Q = _power_range(M, rank_sequence(M, rtol))
    return _wrap(A, AD @ Q @ Q.conj().T)


def _power_range(A: np.ndarray, ranks: list) -> np.ndarray:
    """Orthonormal basis of col(A^m), m = len(ranks) - 1, via col(A^k) = col(A·Q_(k-1))."""
    Q = np.eye(A.shape[0], dtype=complex)
    for r in ranks[:-1]:
        U, _, _ = svd(A @ Q)
        Q = U[:, :r]
    return Q


METHODS = {"hs": pseudo_core_hs, "cn": pseudo_core_cn, "direct": pseudo_core_direct}


def defining_residuals(A, X, m: int) -> dict:
    """Relative residuals of X·A^(m+1)=A^m, A·X²=X, (A·X)*=A·X."""
    A, X = _as_array(A), _as_array(X)
    Am = _mpow(A, m)
    AX = A @ X
    na = max(np.linalg.norm(Am), 1e-300)
    nx = max(np.linalg.norm(X), 1e-300)
    nax = max(np.linalg.norm(AX), 1e-300)
    return {
        "I": float(np.linalg.norm(X @ Am @ A - Am) / na),
        "II": float(np.linalg.norm(AX @ X - X) / nx),
        "III": float(np.linalg.norm(AX.conj().T - AX) / nax),
    }
