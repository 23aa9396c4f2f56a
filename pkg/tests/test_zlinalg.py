import math
import random

import pytest

from mtor4.errors import NotUnimodular
from mtor4.zlinalg import (
    CokernelStructure,
    IntMatrix,
    cokernel,
    integral_kernel_basis,
    rational_kernel_rank,
    rational_rank,
    smith_normal_form,
)


def _random_matrix(rng, rows, cols, bound=9):
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


def _random_unimodular(rng, n, ops=10):
    # product of elementary row operations applied to the identity
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        k = rng.randint(-3, 3)
        m[j] = [a + k * b for a, b in zip(m[j], m[i])]
    if rng.random() < 0.5:
        r = rng.randrange(n)
        m[r] = [-a for a in m[r]]
    return IntMatrix(m)


def _cofactor_det(m):
    # naive Laplace expansion, independent of the Bareiss route
    n = m.rows
    if n == 1:
        return m[0, 0]
    total = 0
    for j in range(n):
        minor = IntMatrix(
            [
                [m[i, k] for k in range(n) if k != j]
                for i in range(1, n)
            ]
        )
        total += (-1) ** j * m[0, j] * _cofactor_det(minor)
    return total


def test_construction_rejects_malformed_input():
    with pytest.raises(ValueError):
        IntMatrix([])
    with pytest.raises(ValueError):
        IntMatrix([[]])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix([[1, True]])
    with pytest.raises(ValueError):
        IntMatrix([[1.0, 2]])


def test_basic_arithmetic():
    a = IntMatrix([[1, 2], [3, 4]])
    b = IntMatrix([[0, 1], [1, 0]])
    assert a + b == IntMatrix([[1, 3], [4, 4]])
    assert a - a == IntMatrix.zeros(2, 2)
    assert -a == IntMatrix([[-1, -2], [-3, -4]])
    assert a * b == IntMatrix([[2, 1], [4, 3]])
    assert b * a == IntMatrix([[3, 4], [1, 2]])
    assert a * 3 == 3 * a == IntMatrix([[3, 6], [9, 12]])
    assert a.transpose() == IntMatrix([[1, 3], [2, 4]])
    assert a.trace() == 5
    assert a.apply((1, 0)) == (1, 3)
    assert a.column(1) == (2, 4)
    assert IntMatrix.identity(3).is_identity()


def test_power_including_negative_exponents():
    u = IntMatrix([[1, 1], [0, 1]])
    assert u**0 == IntMatrix.identity(2)
    assert u**5 == IntMatrix([[1, 5], [0, 1]])
    assert u**-3 == IntMatrix([[1, -3], [0, 1]])
    assert u**-3 * u**3 == IntMatrix.identity(2)
    with pytest.raises(NotUnimodular):
        IntMatrix([[2, 0], [0, 1]]) ** -1


def test_det_agrees_with_cofactor_expansion():
    rng = random.Random(1337)
    for _ in range(200):
        n = rng.randint(1, 4)
        m = _random_matrix(rng, n, n, bound=6)
        assert m.det() == _cofactor_det(m)


def test_det_is_multiplicative():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 4)
        a = _random_matrix(rng, n, n, bound=5)
        b = _random_matrix(rng, n, n, bound=5)
        assert (a * b).det() == a.det() * b.det()


def test_inverse_unimodular_round_trips():
    rng = random.Random(99)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = _random_unimodular(rng, n)
        assert m.det() in (1, -1)
        inv = m.inverse_unimodular()
        assert m * inv == IntMatrix.identity(n)
        assert inv * m == IntMatrix.identity(n)


def test_inverse_unimodular_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        IntMatrix([[2, 0], [0, 1]]).inverse_unimodular()
    with pytest.raises(NotUnimodular):
        IntMatrix([[1, 1], [1, 1]]).inverse_unimodular()
    with pytest.raises(NotUnimodular):
        IntMatrix([[1, 2, 3]]).inverse_unimodular()


def test_smith_form_of_nilpotent_jordan_block():
    snf = smith_normal_form(IntMatrix([[0, 1], [0, 0]]))
    assert snf.diagonal() == (1, 0)


def test_smith_form_of_order_four_rotation_displacement():
    # (rotation by 90 degrees) - identity; cokernel is Z/2
    snf = smith_normal_form(IntMatrix([[-1, -1], [1, -1]]))
    assert snf.diagonal() == (1, 2)


def test_smith_form_properties_randomized():
    rng = random.Random(2024)
    for _ in range(300):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        snf = smith_normal_form(m)
        assert snf.u * m * snf.v == snf.d
        assert snf.u.det() in (1, -1)
        assert snf.v.det() in (1, -1)
        diag = snf.diagonal()
        assert all(x >= 0 for x in diag)
        for i in range(len(diag) - 1):
            if diag[i] == 0:
                assert diag[i + 1] == 0
            else:
                assert diag[i + 1] % diag[i] == 0
        # off-diagonal entries of d vanish
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert snf.d[i, j] == 0
        # cross-check rank against the independent rational route
        assert sum(1 for x in diag if x) == rational_rank(m)


def test_cokernel_structures():
    assert cokernel(IntMatrix([[2, 0], [0, 3]])) == CokernelStructure(0, (6,))
    assert cokernel(IntMatrix([[0, 1], [0, 0]])) == CokernelStructure(1, ())
    assert cokernel(IntMatrix([[-1, -1], [1, -1]])) == CokernelStructure(0, (2,))
    assert cokernel(IntMatrix.zeros(3, 2)) == CokernelStructure(3, ())
    assert cokernel(IntMatrix.identity(4)) == CokernelStructure(0, ())
    assert cokernel(IntMatrix([[4]])) == CokernelStructure(0, (4,))


def test_rational_kernel_rank_examples():
    assert rational_kernel_rank(IntMatrix.identity(3)) == 0
    assert rational_kernel_rank(IntMatrix.zeros(2, 3)) == 3
    assert rational_kernel_rank(IntMatrix([[1, 2], [2, 4]])) == 1
    assert rational_kernel_rank(IntMatrix([[1, 2, 3]])) == 2


def test_integral_kernel_basis_spans_kernel():
    rng = random.Random(4242)
    zero_seen = 0
    for _ in range(300):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = _random_matrix(rng, rows, cols, bound=4)
        basis = integral_kernel_basis(m)
        assert len(basis) == rational_kernel_rank(m)
        for vec in basis:
            assert m.apply(vec) == (0,) * rows
            assert math.gcd(*vec) == 1 if len(vec) > 1 else abs(vec[0]) == 1
        if basis:
            zero_seen += 1
    # the sample genuinely exercises nontrivial kernels
    assert zero_seen > 50


def test_integral_kernel_basis_primitive_example():
    # kernel of (2 4) is generated by (2, -1), not (4, -2)
    (vec,) = integral_kernel_basis(IntMatrix([[2, 4]]))
    assert vec in ((2, -1), (-2, 1))
