from fractions import Fraction

import pytest

from gencore.classical import (
    InverseKind,
    core_inverse,
    defining_residuals,
    drazin_inverse,
    dual_core_inverse,
    equation_inverse,
    group_inverse,
    moore_penrose_closed_form,
    one_three_inverse,
)
from gencore.errors import NonSquare, NoSolution
from gencore.generators import random_instance
from gencore.matrix import EXACT_H, EXACT_T, Matrix, block_diag, power
from gencore.pseudocore import pseudo_core_inverse
from gencore.scalars import GaussianRational

import oracle
from conftest import I, mat

HALF = Fraction(1, 2)


@pytest.mark.parametrize("kind", list(InverseKind))
def test_identity_is_its_own_inverse(kind, ctx):
    Id = Matrix.identity(3, ctx)
    r = equation_inverse(Id, kind)
    assert r.value == Id and r.verified


def test_core_inverse_of_idempotent_under_transpose():
    a = mat([[1, I], [0, 0]], EXACT_T)
    assert equation_inverse(a, "core").value == mat([[1, 0], [0, 0]], EXACT_T)
    assert core_inverse(a) == mat([[1, 0], [0, 0]], EXACT_T)


def test_isotropic_matrix_has_no_one_three_inverse():
    s = mat([[I, 0], [-1, 0]], EXACT_T)
    with pytest.raises(NoSolution) as err:
        equation_inverse(s, InverseKind.ONE_THREE)
    assert err.value.certificate is not None
    with pytest.raises(NoSolution):
        one_three_inverse(s)


def test_group_inverse_examples():
    a = mat([[1, I], [0, 0]])
    assert group_inverse(a).value == a
    assert group_inverse(mat([[I, 0], [0, 0]], EXACT_T)).value == mat([[-I, 0], [0, 0]], EXACT_T)
    with pytest.raises(NoSolution):
        group_inverse(mat([[0, 1], [0, 0]]))


def test_drazin_examples():
    A = mat([[2, I], [1, 1]])
    r = drazin_inverse(A)
    assert r.index == 1 and A @ r.value == Matrix.identity(2)
    r = drazin_inverse(mat([[0, 1], [0, 0]]))
    assert r.value.is_zero() and r.index == 2
    B = block_diag(mat([[2]]), mat([[0, 1], [0, 0]]))
    r = drazin_inverse(B)
    assert r.index == 2
    assert r.value == block_diag(Matrix([[HALF]]), Matrix.zeros(2, 2))
    assert all(res.is_zero() for _, res in defining_residuals(B, r.value, InverseKind.DRAZIN, 2))


def test_moore_penrose_examples():
    assert moore_penrose_closed_form(Matrix.zeros(2, 3)) == Matrix.zeros(3, 2)
    assert moore_penrose_closed_form(Matrix.identity(3)) == Matrix.identity(3)
    expected = Matrix([[HALF, 0], [GaussianRational(0, -HALF), 0]])
    a = mat([[1, I], [0, 0]])
    assert moore_penrose_closed_form(a) == expected
    assert equation_inverse(a, "moore_penrose").value == expected


def test_moore_penrose_needs_conjugation():
    with pytest.raises(ValueError):
        moore_penrose_closed_form(mat([[1]], EXACT_T))


def test_square_only_kinds():
    with pytest.raises(NonSquare):
        equation_inverse(Matrix.zeros(2, 3), InverseKind.GROUP)
    r = equation_inverse(mat([[1, I, 0]]), InverseKind.MOORE_PENROSE)
    assert r.value.shape == (3, 1) and r.verified


def test_moore_penrose_routes_and_oracle_agree():
    for case in range(40):
        A = random_instance(11, case, "conjugate_transpose").matrix
        solved = equation_inverse(A, InverseKind.MOORE_PENROSE)
        closed = moore_penrose_closed_form(A)
        assert solved.value == closed
        if case < 12:
            assert closed == oracle.moore_penrose(A)


def test_every_result_satisfies_its_equations(ctx):
    for case in range(25):
        A = random_instance(12, case, ctx.involution, n_max=5).matrix
        for kind in InverseKind:
            try:
                r = equation_inverse(A, kind)
            except NoSolution:
                continue
            assert r.verified, (kind, case)


def test_core_equals_group_times_a_times_one_three(ctx):
    for case in range(30):
        A = random_instance(13, case, ctx.involution, n_max=5).matrix
        try:
            g = group_inverse(A).value
            t = one_three_inverse(A)
        except NoSolution:
            with pytest.raises(NoSolution):
                equation_inverse(A, InverseKind.CORE)
            continue
        assert equation_inverse(A, InverseKind.CORE).value == g @ A @ t


def test_dual_core_is_mirror_of_core(ctx):
    for case in range(20):
        A = random_instance(14, case, ctx.involution, n_max=5).matrix
        try:
            x = dual_core_inverse(A)
        except NoSolution:
            continue
        assert x == core_inverse(A.adjoint()).adjoint()
        assert x == equation_inverse(A, InverseKind.DUAL_CORE).value


def test_drazin_reconstructed_from_pseudo_core(ctx):
    for case in range(30):
        A = random_instance(15, case, ctx.involution).matrix
        try:
            r = pseudo_core_inverse(A)
        except NoSolution:
            continue
        m = r.index
        assert power(r.value, m + 1) @ power(A, m) == drazin_inverse(A).value
