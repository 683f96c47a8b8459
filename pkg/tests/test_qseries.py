import pytest

from qpart.qseries import (
    INFINITE,
    DivergenceError,
    NonUnitError,
    OrderMismatchError,
    PochSpec,
    QSeries,
    QSeriesError,
    add,
    coefficient,
    monomial,
    mul,
    one,
    poch,
    pochhammer,
    reciprocal,
    scaled_pochhammer,
    sum_of_terms,
    zero,
)

# partition numbers p(0..20), computed by brute-force enumeration
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]


def S(*cs):
    return QSeries(cs)


def test_one():
    assert one(3).coeffs == (1, 0, 0, 0)
    assert one(0).coeffs == (1,)
    x = S(3, -1, 4, 1, -5, 9)
    assert one(5) * x == x


def test_ring_ops_examples():
    assert mul(S(1, 1, 0), S(1, -1, 0)).coeffs == (1, 0, -1)
    assert add(one(2), one(2)).coeffs == (2, 0, 0)
    assert (S(1, 1, 0, 0, 0) * (one(4) + monomial(3, 4))).coeffs == (1, 1, 0, 1, 1)


def test_int_coercion_and_unary():
    x = S(1, 2, 3)
    assert (1 - x).coeffs == (0, -2, -3)
    assert (2 * x).coeffs == (2, 4, 6)
    assert (-x).coeffs == (-1, -2, -3)
    assert (x ** 0) == one(2)
    assert (x ** 2) == x * x


def test_order_mismatch_is_an_error():
    with pytest.raises(OrderMismatchError):
        one(3) + one(4)
    with pytest.raises(OrderMismatchError):
        one(3) == one(4)
    with pytest.raises(OrderMismatchError):
        one(3).agrees_with(one(5), 4)
    assert one(3).agrees_with(one(5), 3)


def test_truncate():
    x = S(1, 2, 3, 4)
    assert x.truncate(1).coeffs == (1, 2)
    with pytest.raises(OrderMismatchError):
        x.truncate(5)


def test_reciprocal():
    inv = reciprocal(poch(1, 1, 1, INFINITE, 10))
    assert list(inv.coeffs) == PARTITION_NUMBERS[:11]
    assert reciprocal(one(4)) == one(4)
    assert reciprocal(S(1, -1, 0, 0)).coeffs == (1, 1, 1, 1)
    assert reciprocal(S(-1, 1, 0)).coeffs == (-1, -1, -1)
    with pytest.raises(NonUnitError):
        reciprocal(S(2, 1))
    with pytest.raises(NonUnitError):
        one(3) / monomial(1, 3)


def test_pochhammer_examples():
    assert poch(-1, 1, 2, 2, 4).coeffs == (1, 1, 0, 1, 1)
    over = poch(-1, 1, 1, INFINITE, 5) / poch(1, 1, 1, INFINITE, 5)
    assert over.coeffs == (1, 2, 4, 8, 14, 24)
    assert poch(1, 1, 1, 0, 6) == one(6)
    assert poch(1, 1, 1, INFINITE, 3).coeffs == (1, -1, -1, 0)


def test_pochhammer_spec_validation():
    with pytest.raises(QSeriesError):
        PochSpec(0, 1, 1)
    with pytest.raises(QSeriesError):
        PochSpec(1, -1, 1)
    with pytest.raises(QSeriesError):
        PochSpec(1, 1, 0)
    with pytest.raises(QSeriesError):
        PochSpec(1, 1, 1, -2)
    assert pochhammer(PochSpec(1, 2, 2), 6) == poch(1, 2, 2, None, 6)


def test_offset_zero_factor():
    # (-1;q)_2 = (1+1)(1+q)
    assert poch(-1, 0, 1, 2, 3).coeffs == (2, 2, 0, 0)
    # (1;q)_1 vanishes identically
    assert poch(1, 0, 1, 1, 3).is_zero()


def test_scaled_pochhammer_negative_coefficients():
    # ((-2)q;q)_2 = (1+2q)(1+2q^2)
    assert scaled_pochhammer(-2, 1, 1, 2, 3).coeffs == (1, 2, 2, 4)


def test_sum_of_terms_examples():
    assert sum_of_terms(lambda n: monomial(n * n, 5), 5).coeffs == (1, 1, 0, 0, 1, 0)

    def f32(j):
        return monomial((3 * j * j + j) // 2, 6) * (1 - monomial(2 * j + 1, 6))

    assert sum_of_terms(f32, 6).coeffs == (1, -1, 1, 0, 0, -1, 0)

    lhs = sum_of_terms(
        lambda n: monomial(n * n, 8) * poch(-1, 1, 2, n, 8) / poch(1, 2, 2, n, 8) ** 2, 8
    )
    assert lhs == poch(-1, 1, 2, None, 8) / poch(1, 2, 2, None, 8)


def test_sum_of_terms_guard():
    with pytest.raises(DivergenceError):
        sum_of_terms(lambda n: one(3), 3, guard=50)


def test_coefficient():
    assert coefficient(one(3), 0) == 1
    assert coefficient(reciprocal(poch(1, 1, 1, None, 10)), 10) == 42
    assert coefficient(poch(-1, 1, 1, None, 4) / poch(1, 1, 1, None, 4), 4) == 14
    with pytest.raises(QSeriesError):
        coefficient(one(3), 4)
    with pytest.raises(QSeriesError):
        coefficient(one(3), -1)


def test_big_integers_stay_exact():
    x = poch(-1, 0, 1, 1, 3) ** 100
    assert x.coeffs == (2 ** 100, 0, 0, 0)


def test_zero_and_min_exponent():
    assert zero(3).is_zero()
    assert zero(3).min_exponent() is None
    assert S(0, 0, 5).min_exponent() == 2
    with pytest.raises(QSeriesError):
        QSeries([], -1)
