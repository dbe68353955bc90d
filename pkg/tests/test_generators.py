import numpy as np

from gencore import exact
from gencore.errors import NoSolution
from gencore.generators import ENTRY_BOUND, commuting_operator, commuting_pair, orthogonal_pair, random_instance
from gencore.matrix import ScalarMode
from gencore.pseudocore import pseudo_core_inverse


def _bounded(M):
    z = M.to_numpy()
    return np.all(np.abs(z.real) <= ENTRY_BOUND) and np.all(np.abs(z.imag) <= ENTRY_BOUND) and M.den == 1


def test_deterministic(ctx):
    for case in range(10):
        a = random_instance(9, case, ctx.involution)
        b = random_instance(9, case, ctx.involution)
        assert a.matrix == b.matrix and a.blocks == b.blocks
    assert any(random_instance(9, c, ctx.involution).matrix != random_instance(10, c, ctx.involution).matrix for c in range(5))


def test_entries_are_bounded_gaussian_integers(ctx):
    for case in range(100):
        inst = random_instance(1, case, ctx.involution)
        M = inst.matrix
        assert M.is_square and 1 <= M.rows <= 6
        assert _bounded(M)
        assert M.context.involution is ctx.involution


def test_index_spread():
    indices = [exact.drazin_index(random_instance(7, c, "conjugate_transpose").matrix) for c in range(100)]
    assert min(indices) == 1 and max(indices) >= 3
    assert sum(i >= 2 for i in indices) >= 20


def test_transpose_mode_produces_nonexistence():
    missing = 0
    for c in range(100):
        try:
            pseudo_core_inverse(random_instance(7, c, "transpose").matrix)
        except NoSolution:
            missing += 1
    assert 0 < missing < 50


def test_float_mode_and_size():
    inst = random_instance(3, 0, "conjugate_transpose", n_max=12, mode="float")
    assert inst.matrix.context.scalar_mode is ScalarMode.FLOAT
    assert max(random_instance(3, c, "conjugate_transpose", n_max=12).matrix.rows for c in range(40)) > 6


def test_pair_hypotheses_hold_by_construction(ctx):
    for case in range(30):
        p = commuting_operator(4, case, ctx.involution)
        a, x = p.a, p.b
        assert a @ x == x @ a and a.adjoint() @ x == x @ a.adjoint()
        p = commuting_pair(4, case, ctx.involution)
        a, b = p.a, p.b
        assert a @ b == b @ a and a @ b.adjoint() == b.adjoint() @ a
        p = orthogonal_pair(4, case, ctx.involution)
        a, b = p.a, p.b
        assert (a @ b).is_zero() and (b @ a).is_zero() and (a.adjoint() @ b).is_zero()
        for M in (p.a, p.b):
            assert _bounded(M)
