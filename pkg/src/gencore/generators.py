"""Deterministic random test instances.

Dense random matrices almost always have index 1, so instances are built
as block-diagonal sums of an invertible block and nilpotent blocks, then
conjugated by unimodular elementary similarities. Each similarity step is
kept only if all entries stay Gaussian integers with real and imaginary
parts in [-3, 3]. Everything is a pure function of (seed, case, involution).

Under the transpose involution a fraction of instances carries an
isotropic block (such as ``[[i, 0], [-1, 0]]``) and is conjugated only by
signed permutations, which preserve isotropy, so that non-invertible
cases are exercised too.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import exact
from .matrix import EXACT_H, Involution, Matrix, RingContext, ScalarMode

__all__ = [
    "Instance",
    "PairInstance",
    "ENTRY_BOUND",
    "random_instance",
    "commuting_pair",
    "orthogonal_pair",
    "commuting_operator",
    "rng_for",
]

ENTRY_BOUND = 3

_ISOTROPIC_BLOCKS = (
    ((1j, 0), (-1, 0)),
    ((1, 1j), (0, 0)),
    ((1, 0), (1j, 0)),
    ((2, 2j), (1j, -1)),
)


@dataclass(frozen=True)
class Instance:
    seed: int
    case: int
    matrix: Matrix
    blocks: tuple  # human-readable block description

    def to_json(self) -> dict:
        return {"seed": self.seed, "case": self.case, "blocks": list(self.blocks), "matrix": self.matrix.to_json()}


@dataclass(frozen=True)
class PairInstance:
    seed: int
    case: int
    a: Matrix
    b: Matrix
    kind: str


def rng_for(seed: int, case: int, involution, tag: str = "") -> random.Random:
    inv = Involution(involution).value
    return random.Random(f"{seed}:{case}:{inv}:{tag}")


def _gauss(rng: random.Random, bound: int = ENTRY_BOUND, real_only: bool = False) -> complex:
    re = rng.randint(-bound, bound)
    im = 0 if real_only or rng.random() < 0.5 else rng.randint(-bound, bound)
    return complex(re, im)


def _invertible_block(rng: random.Random, k: int, real_only: bool) -> np.ndarray:
    while True:
        if rng.random() < 0.5:
            M = np.array([[_gauss(rng, real_only=real_only) for _ in range(k)] for _ in range(k)], dtype=complex)
        else:
            M = np.triu(np.array([[_gauss(rng, 1, real_only) for _ in range(k)] for _ in range(k)], dtype=complex), 1)
            for i in range(k):
                d = 0
                while d == 0:
                    d = _gauss(rng, real_only=real_only)
                M[i, i] = d
        if exact.rank(_exact(M)) == k:
            return M


def _nilpotent_block(rng: random.Random, k: int, real_only: bool) -> np.ndarray:
    M = np.zeros((k, k), dtype=complex)
    if rng.random() < 0.6:
        for i in range(k - 1):
            M[i, i + 1] = 1  # Jordan block, index k
    else:
        for i in range(k):
            for j in range(i + 1, k):
                M[i, j] = _gauss(rng, 2, real_only)
    return M


def _exact(z: np.ndarray, ctx: RingContext = EXACT_H) -> Matrix:
    re = np.array([[int(v.real) for v in row] for row in z], dtype=object).reshape(z.shape)
    im = np.array([[int(v.imag) for v in row] for row in z], dtype=object).reshape(z.shape)
    return Matrix.from_gaussian_ints(re, im, ctx)


def _block_diag(blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i : i + k, i : i + k] = b
        i += k
    return out


def _in_bounds(M: np.ndarray, bound: int = ENTRY_BOUND) -> bool:
    return bool(np.all(np.abs(M.real) <= bound) and np.all(np.abs(M.imag) <= bound))


def _elementary_similarities(rng: random.Random, M: np.ndarray, steps: int, real_only: bool) -> np.ndarray:
    """Apply E·M·E^-1 with E = I + c·e_ij, keeping only in-bound results."""
    n = M.shape[0]
    if n < 2:
        return M
    units = (1, -1) if real_only else (1, -1, 1j, -1j)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice(units)
        T = M.copy()
        T[i, :] += c * T[j, :]
        T[:, j] -= c * T[:, i]
        if _in_bounds(T):
            M = T
    return M


def _signed_permutation(rng: random.Random, n: int) -> np.ndarray:
    perm = list(range(n))
    rng.shuffle(perm)
    P = np.zeros((n, n), dtype=complex)
    for i, p in enumerate(perm):
        P[i, p] = rng.choice((1, -1))
    return P


def random_instance(
    seed: int,
    case: int,
    involution=Involution.CONJUGATE_TRANSPOSE,
    n_max: int = 6,
    mode=ScalarMode.EXACT,
    real_only: bool = False,
) -> Instance:
    """One structured random square matrix with entries in [-3,3] + [-3,3]i."""
    inv = Involution(involution)
    rng = rng_for(seed, case, inv, f"n{n_max}{'r' if real_only else ''}")
    n = rng.randint(1, n_max)
    blocks, desc = [], []
    isotropic = inv is Involution.TRANSPOSE and not real_only and n >= 2 and rng.random() < 0.2
    if isotropic:
        iso = np.array(rng.choice(_ISOTROPIC_BLOCKS), dtype=complex)
        blocks.append(iso)
        desc.append("isotropic2")
    remaining = n - sum(b.shape[0] for b in blocks)
    if remaining > 0:
        r0 = rng.randint(0, remaining)
        if r0 and rng.random() < 0.9:
            blocks.append(_invertible_block(rng, r0, real_only))
            desc.append(f"invertible{r0}")
            remaining -= r0
        while remaining > 0:
            k = rng.randint(1, remaining)
            blocks.append(_nilpotent_block(rng, k, real_only))
            desc.append(f"nilpotent{k}")
            remaining -= k
    M = _block_diag(blocks)
    if not isotropic:
        M = _elementary_similarities(rng, M, rng.randint(n, 4 * n), real_only)
    P = _signed_permutation(rng, n)
    M = P @ M @ P.T
    ctx = RingContext(ScalarMode.EXACT, inv)
    A = _exact(M, ctx)
    if ScalarMode(mode) is ScalarMode.FLOAT:
        A = A.to_float()
    return Instance(seed, case, A, tuple(desc))


def _conjugated_block(rng, k, kind, real_only):
    if kind == "invertible":
        B = _invertible_block(rng, k, real_only)
    elif kind == "nilpotent":
        B = _nilpotent_block(rng, k, real_only)
    else:
        B = _block_diag([_invertible_block(rng, 1, real_only), _nilpotent_block(rng, k - 1, real_only)]) if k > 1 else _invertible_block(rng, 1, real_only)
    return _elementary_similarities(rng, B, rng.randint(k, 3 * k), real_only)


def _partition(rng, n):
    sizes = []
    while n > 0:
        k = rng.randint(1, n)
        sizes.append(k)
        n -= k
    return sizes


def commuting_operator(seed: int, case: int, involution=Involution.CONJUGATE_TRANSPOSE, n_max: int = 6) -> PairInstance:
    """(a, x) with ax = xa and a*x = xa*: x acts as a scalar on each diagonal block of a."""
    inv = Involution(involution)
    rng = rng_for(seed, case, inv, "commute")
    n = rng.randint(1, n_max)
    sizes = _partition(rng, n)
    ablocks = [_conjugated_block(rng, k, rng.choice(("invertible", "nilpotent", "mixed")), False) for k in sizes]
    xblocks = [_gauss(rng) * np.eye(k) for k in sizes]
    P = _signed_permutation(rng, n)
    ctx = RingContext(ScalarMode.EXACT, inv)
    a = _exact(P @ _block_diag(ablocks) @ P.T, ctx)
    x = _exact(P @ _block_diag(xblocks) @ P.T, ctx)
    return PairInstance(seed, case, a, x, "commuting_operator")


def commuting_pair(seed: int, case: int, involution=Involution.CONJUGATE_TRANSPOSE, n_max: int = 6) -> PairInstance:
    """(a, b) with ab = ba and ab* = b*a: on each block one factor is a scalar multiple of I."""
    inv = Involution(involution)
    rng = rng_for(seed, case, inv, "product")
    n = rng.randint(1, n_max)
    sizes = _partition(rng, n)
    ab, bb = [], []
    for k in sizes:
        full = _conjugated_block(rng, k, rng.choice(("invertible", "nilpotent", "mixed")), False)
        scalar = rng.choice((0, 1, 2, -1, 1j, 1 + 1j, -2j)) * np.eye(k)
        if rng.random() < 0.5:
            ab.append(full)
            bb.append(scalar)
        else:
            ab.append(scalar)
            bb.append(full)
    P = _signed_permutation(rng, n)
    ctx = RingContext(ScalarMode.EXACT, inv)
    a = _exact(P @ _block_diag(ab) @ P.T, ctx)
    b = _exact(P @ _block_diag(bb) @ P.T, ctx)
    return PairInstance(seed, case, a, b, "commuting_pair")


def orthogonal_pair(seed: int, case: int, involution=Involution.CONJUGATE_TRANSPOSE, n_max: int = 6) -> PairInstance:
    """(a, b) = (diag(A1, 0), diag(0, B2)) up to a common signed permutation: ab = ba = 0, a*b = 0."""
    inv = Involution(involution)
    rng = rng_for(seed, case, inv, "sum")
    n = rng.randint(2, max(2, n_max))
    k = rng.randint(1, n - 1)
    A1 = _conjugated_block(rng, k, rng.choice(("invertible", "nilpotent", "mixed")), False)
    B2 = _conjugated_block(rng, n - k, rng.choice(("invertible", "nilpotent", "mixed")), False)
    Z1, Z2 = np.zeros((k, k), dtype=complex), np.zeros((n - k, n - k), dtype=complex)
    P = _signed_permutation(rng, n)
    ctx = RingContext(ScalarMode.EXACT, inv)
    a = _exact(P @ _block_diag([A1, Z2]) @ P.T, ctx)
    b = _exact(P @ _block_diag([Z1, B2]) @ P.T, ctx)
    return PairInstance(seed, case, a, b, "orthogonal_pair")
