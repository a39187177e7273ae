import numpy as np
import pytest

from geospectral import densecore as dc
from geospectral.errors import ShapeError, SingularMatrixError


def test_mat_mul_identity():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(dc.mat_mul(np.eye(2), a), a)


def test_mat_mul_rotation_generator_squares_to_minus_identity():
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    np.testing.assert_array_equal(dc.mat_mul(j, j), -np.eye(2))


def test_mat_mul_hand_example():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.array([[5.0], [6.0]])
    # 1*5+2*6 = 17, 3*5+4*6 = 39
    np.testing.assert_array_equal(dc.mat_mul(a, b), [[17.0], [39.0]])


def test_mat_mul_shape_error():
    with pytest.raises(ShapeError):
        dc.mat_mul(np.ones((2, 3)), np.ones((2, 2)))


def test_mat_mul_associativity_random():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c = (rng.standard_normal((5, 5)) for _ in range(3))
        lhs = dc.mat_mul(dc.mat_mul(a, b), c)
        rhs = dc.mat_mul(a, dc.mat_mul(b, c))
        assert dc.frobenius_norm(lhs - rhs) <= 1e-12 * dc.frobenius_norm(lhs)


def test_solve_identity():
    b = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    np.testing.assert_array_equal(dc.solve_linear(np.eye(3), b), b)


def test_solve_diagonal_inverse():
    x = dc.solve_linear(np.diag([2.0, 4.0]), np.eye(2))
    np.testing.assert_allclose(x, np.diag([0.5, 0.25]))


def test_solve_permutation():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    x = dc.solve_linear(a, np.array([[1.0], [2.0]]))
    np.testing.assert_allclose(x, [[2.0], [1.0]])


def test_solve_singular_reports_pivot_index():
    with pytest.raises(SingularMatrixError) as err:
        dc.solve_linear(np.array([[1.0, 2.0], [2.0, 4.0]]), np.eye(2))
    assert err.value.pivot_index == 1


def test_solve_round_trip_well_conditioned():
    rng = np.random.default_rng(1)
    for _ in range(30):
        n = int(rng.integers(2, 10))
        a = rng.standard_normal((n, n))
        if np.linalg.cond(a) >= 1e6:
            continue
        b = rng.standard_normal((n, 3))
        x = dc.solve_linear(a, b)
        bound = 1e-10 * dc.frobenius_norm(a) * dc.frobenius_norm(x)
        assert dc.frobenius_norm(a @ x - b) <= bound


def test_frobenius_norm():
    assert dc.frobenius_norm(np.zeros((3, 3))) == 0.0
    assert dc.frobenius_norm(np.eye(2)) == pytest.approx(np.sqrt(2.0))
    assert dc.frobenius_norm(np.array([[3.0, 4.0], [0.0, 0.0]])) == 5.0


def test_dot():
    assert dc.dot(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0
    assert dc.dot(np.array([3.0, 4.0]), np.array([3.0, 4.0])) == 25.0
    assert dc.dot(np.array([1.0, 2.0, 0.0]), np.array([0.0, 1.0, 1.0])) == 2.0


def test_dot_symmetry_exact():
    rng = np.random.default_rng(2)
    for _ in range(50):
        u = rng.standard_normal(7)
        v = rng.standard_normal(7)
        assert dc.dot(u, v) == dc.dot(v, u)


def test_dot_shape_error():
    with pytest.raises(ShapeError):
        dc.dot(np.ones(2), np.ones(3))
