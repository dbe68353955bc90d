from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gencore import kernels
from gencore.errors import DimensionMismatch, NoSolution
from gencore.linsolve import (
    LinearConstraint,
    Term,
    primes,
    rational_reconstruct,
    solve_linear_system,
    solve_rational,
    solve_rational_exact,
)
from gencore.matrix import EXACT_H, EXACT_T, Matrix
from gencore.scalars import GaussianRational

from conftest import I, mat

int_systems = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=m, max_size=m),
            st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=1), min_size=m, max_size=m),
        )
    )
)


@pytest.mark.skipif(kernels.rref_mod_compiled is None, reason="compiled kernel not built")
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_kernel_backends_agree(m, n, seed):
    p = primes(1)[0]
    rng = np.random.default_rng(seed)
    M = rng.integers(0, p, size=(m, n), dtype=np.int64)
    if seed % 3 == 0 and m > 1:
        M[-1] = (M[0] * 2) % p  # force a dependent row
    A, B = M.copy(), M.copy()
    ncoef = max(1, n - 1)
    assert kernels.rref_mod_python(A, p, ncoef) == kernels.rref_mod_compiled(B, p, ncoef)
    assert np.array_equal(A, B)


@given(int_systems)
@settings(max_examples=80, deadline=None)
def test_modular_solver_matches_exact_elimination(system):
    A = np.array(system[0], dtype=object)
    b = np.array(system[1], dtype=object)
    ref = solve_rational_exact(A, b)
    if ref is None:
        with pytest.raises(NoSolution) as err:
            solve_rational(A, b)
        y = np.array(err.value.certificate, dtype=object)
        assert all(v == 0 for v in y.dot(A))
        assert y.dot(b[:, 0]) == 1
    else:
        assert solve_rational(A, b) == ref


def test_rational_reconstruction():
    m = primes(2)[0] * primes(2)[1]
    q = Fraction(-355, 113)
    a = q.numerator * pow(q.denominator, -1, m) % m
    assert rational_reconstruct(a, m) == q


def test_identity_system_returns_identity():
    A = Matrix.identity(3)
    X = solve_linear_system([LinearConstraint([Term(A, A)], A)], (3, 3))
    assert X == A


def test_penrose_system():
    A = mat([[1, I], [0, 0]], EXACT_H)
    Id, Z = Matrix.identity(2), Matrix.zeros(2, 2)
    cons = [
        LinearConstraint([Term(A, A)], A),
        # (AX)* = AX as A·X - X*·A* = 0, and likewise for XA
        LinearConstraint([Term(A, Id), Term(-Id, A.adjoint(), adjoint=True)], Z),
        LinearConstraint([Term(Id, A), Term(-A.adjoint(), Id, adjoint=True)], Z),
    ]
    X = solve_linear_system(cons, (2, 2))
    for c in cons:
        assert c.residual(X).is_zero()
    # the {1,3,4} system pins down the Moore-Penrose inverse after one reflexivization
    assert X @ A @ X == Matrix([[Fraction(1, 2), 0], [GaussianRational(0, Fraction(-1, 2)), 0]])


def test_inconsistent_system_has_certificate():
    A = mat([[I, 0], [-1, 0]], EXACT_T)
    Id = Matrix.identity(2, EXACT_T)
    cons = [
        LinearConstraint([Term(A, A)], A),
        LinearConstraint([Term(A, Id), Term(-Id, A.adjoint(), adjoint=True)], Matrix.zeros(2, 2, EXACT_T)),
    ]
    with pytest.raises(NoSolution) as err:
        solve_linear_system(cons, (2, 2))
    assert err.value.certificate is not None


def test_constraint_shape_checked():
    with pytest.raises(DimensionMismatch):
        LinearConstraint([Term(Matrix.identity(2), Matrix.identity(3))], Matrix.zeros(2, 2))


def test_pure_python_backend_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from gencore import BACKEND, pseudo_core_inverse, Matrix, EXACT_T\n"
        "r = pseudo_core_inverse(Matrix([[1j, 0], [0, 0]], EXACT_T))\n"
        "print(BACKEND, r.value[0, 0])\n"
    )
    env = dict(os.environ, GENCORE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "-i"]
