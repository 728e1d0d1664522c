"""Prime field linear algebra: rank, column selection, Kronecker products,
random matrices, prime generation.
"""

import random

import pytest

from cutmimic.errors import FieldTooSmallError, InputError, RefusedError
from cutmimic.ffield import (
    MERSENNE61,
    PrimeField,
    PrimeFieldMatrix,
    is_prime,
    kronecker_column,
    random_matrix,
    random_nonzero,
    random_prime,
    rank,
    row_basis,
    select_independent_columns,
    vandermonde,
)

F = PrimeField(MERSENNE61)
F7 = PrimeField(7)


def test_field_validates():
    with pytest.raises(InputError):
        PrimeField(6)
    with pytest.raises(InputError):
        PrimeField(2)


def test_field_inverse():
    for x in range(1, 7):
        assert F7.reduce(x * F7.inv(x)) == 1
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def test_rank_identity():
    assert rank(PrimeFieldMatrix.identity(F, 3)) == 3


def test_rank_zero_matrix():
    assert rank(PrimeFieldMatrix.zeros(F, 2, 3)) == 0


def test_rank_vandermonde():
    assert rank(vandermonde(F, 2, [1, 2, 3, 4])) == 2


def test_rank_transpose_and_shuffle_invariance():
    rng = random.Random(2)
    for _ in range(25):
        m = random_matrix(rng, F7, rng.randint(1, 5), rng.randint(1, 5))
        r = rank(m)
        assert rank(m.transpose()) == r
        rows = [m.row(i) for i in range(m.rows)]
        rng.shuffle(rows)
        assert rank(PrimeFieldMatrix.from_rows(F7, rows)) == r


def test_row_basis_spans():
    m = PrimeFieldMatrix.from_rows(F7, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    rb = row_basis(m)
    assert rb.rows == rank(m) == 2


def test_select_independent_identity():
    m = PrimeFieldMatrix.identity(F, 3)
    assert select_independent_columns(m) == [0, 1, 2]


def test_select_independent_drops_repeat():
    m = PrimeFieldMatrix.from_rows(F, [[1, 1], [2, 2]])
    assert select_independent_columns(m) == [0]


def test_select_independent_general_position():
    # four pairwise independent columns in a 2-dim space: first two kept
    m = PrimeFieldMatrix.from_rows(F7, [[1, 1, 1, 1], [1, 2, 3, 4]])
    assert select_independent_columns(m) == [0, 1]


def test_select_independent_respects_order():
    m = PrimeFieldMatrix.from_rows(F7, [[1, 1, 1, 1], [1, 2, 3, 4]])
    assert select_independent_columns(m, order=[3, 2, 1, 0]) == [3, 2]


def test_select_independent_size_is_rank():
    rng = random.Random(4)
    for _ in range(25):
        m = random_matrix(rng, F7, rng.randint(1, 4), rng.randint(1, 6))
        assert len(select_independent_columns(m)) == rank(m)


def test_kronecker_unit_vectors():
    assert kronecker_column(F, [(1, 0), (0, 1)]) == [0, 1, 0, 0]


def test_kronecker_scalar_identity():
    assert kronecker_column(F, [(5, 9, 2), (1,)]) == [5, 9, 2]


def test_kronecker_mod_seven():
    assert kronecker_column(F7, [(1, 2), (3, 4)]) == [3, 4, 6, 1]


def test_kronecker_first_vector_slowest():
    out = kronecker_column(F, [(1, 2), (10, 20, 30)])
    assert out == [10, 20, 30, 20, 40, 60]


def test_kronecker_overflow_guard():
    with pytest.raises(RefusedError):
        kronecker_column(F, [[1] * 2000, [1] * 2000], dim_limit=10**6)


def test_kronecker_rank_one_reshape():
    """A two-layer tensor, reshaped to a matrix, has rank at most 1."""
    rng = random.Random(9)
    for _ in range(10):
        a = [rng.randrange(7) for _ in range(3)]
        b = [rng.randrange(7) for _ in range(4)]
        vec = kronecker_column(F7, [a, b])
        reshaped = PrimeFieldMatrix.from_rows(
            F7, [vec[i * 4:(i + 1) * 4] for i in range(3)])
        assert rank(reshaped) <= 1


def test_random_matrix_deterministic():
    a = random_matrix(random.Random(42), F, 3, 4)
    b = random_matrix(random.Random(42), F, 3, 4)
    assert a == b


def test_random_matrix_empty():
    m = random_matrix(random.Random(0), F, 0, 4)
    assert m.rows == 0 and m.cols == 4


def test_random_matrix_mean_near_half_p():
    # mean of 10^6 uniform draws; 5 sigma band around p/2
    rng = random.Random(1)
    m = random_matrix(rng, F, 1000, 1000)
    total = sum(sum(m.row(i)) for i in range(1000))
    n = 10**6
    mean = total / n
    sigma = MERSENNE61 / (12 ** 0.5 * n ** 0.5)
    assert abs(mean - MERSENNE61 / 2) < 5 * sigma


def test_random_nonzero():
    rng = random.Random(3)
    assert all(0 < random_nonzero(rng, F7) < 7 for _ in range(50))


def test_random_prime():
    rng = random.Random(8)
    p = random_prime(40, rng)
    assert is_prime(p) and p.bit_length() == 40
    with pytest.raises(InputError):
        random_prime(31, rng)
    with pytest.raises(InputError):
        random_prime(63, rng)


def test_is_prime_known_values():
    assert is_prime(MERSENNE61)
    assert not is_prime(MERSENNE61 - 1)
    assert [x for x in range(2, 30) if is_prime(x)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_vandermonde_field_too_small():
    with pytest.raises(FieldTooSmallError):
        vandermonde(F7, 2, [1, 2, 3, 7])


def test_matrix_from_rows_validates():
    with pytest.raises(InputError):
        PrimeFieldMatrix.from_rows(F7, [[1, 2], [3]])
