from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qeuler.characters import DirichletChar, all_chars, quadratic_char, trivial_char
from qeuler.exact_arith import DomainError, UsageError, vp
from qeuler.qcore import (
    QParam,
    distribution_check,
    euler_number_closed,
    euler_number_rec,
    euler_poly_closed,
    euler_poly_frac,
    gen_euler_number,
    qint,
    qint_frac,
    qint_neg,
)

Q_GRID = [Fraction(2), Fraction(3, 2), Fraction(4), Fraction(6), Fraction(1, 3), Fraction(-2), Fraction(5, 7)]

admissible_q = st.fractions(min_value=-8, max_value=8, max_denominator=12).filter(
    lambda q: q not in (0, 1, -1)
)


def series_euler_numbers(n_max):
    """Classical Euler numbers from 2/(e^t+1) = sum E_n t^n/n!."""
    t = sympy.Symbol("t")
    ser = sympy.series(2 / (sympy.exp(t) + 1), t, 0, n_max + 1).removeO()
    return [Fraction(str(ser.coeff(t, n) * sympy.factorial(n))) for n in range(n_max + 1)]


def test_qint_examples():
    assert qint(3, 2) == 7
    assert qint(0, Fraction(5, 3)) == 0
    assert qint_neg(3, 2) == 3
    assert qint(4, 1) == 4


def test_qint_frac_examples():
    assert qint_frac(2, 3, 2) == Fraction(3, 7)
    assert qint_frac(0, 4, 3) == 0
    assert qint_frac(5, 5, Fraction(2, 3)) == 1
    with pytest.raises(DomainError):
        qint_frac(1, 2, 1)


@pytest.mark.parametrize("q", Q_GRID)
def test_qint_frac_times_qint(q):
    for F in range(1, 8):
        for a in range(12):
            assert qint_frac(a, F, q) * qint(F, q) == qint(a, q)


def test_qparam():
    qp = QParam("3/2")
    assert qp.pow(3) == Fraction(27, 8)
    with pytest.raises(DomainError):
        QParam(-1)
    with pytest.raises(DomainError):
        QParam(1, closed_form=True)


def test_q_equal_one_gives_classical_euler_numbers():
    oracle = series_euler_numbers(10)
    assert oracle[:6] == [1, Fraction(-1, 2), 0, Fraction(1, 4), 0, Fraction(-1, 2)]
    assert list(euler_number_rec(10, 1).entries) == oracle


def test_closed_form_examples():
    q = Fraction(7, 3)
    assert euler_number_closed(0, q) == (1 + q) / 2
    assert euler_number_closed(2, 2) == Fraction(1, 10)
    assert euler_number_closed(1, 3) == Fraction(-1, 2)
    with pytest.raises(DomainError):
        euler_number_closed(2, 1)


@pytest.mark.parametrize("q", Q_GRID)
def test_first_number_is_minus_half(q):
    assert euler_number_rec(1, q)[1] == Fraction(-1, 2)
    assert euler_number_rec(0, q)[0] == (1 + q) / 2


@pytest.mark.parametrize("q", Q_GRID)
def test_dual_algorithms_agree(q):
    table = euler_number_rec(12, q)
    assert [euler_number_closed(n, q) for n in range(13)] == list(table.entries)


def test_recurrence_matches_closed_form_symbolically():
    # independent sympy implementation of both formulas as rational functions of q
    q = sympy.Symbol("q")
    E = [(1 + q) / 2]
    for k in range(1, 7):
        s = sum(sympy.binomial(k, i) * q ** i * E[i] for i in range(k))
        E.append(sympy.cancel(-s / (1 + q ** k)))
    for n in range(7):
        closed = (1 + q) / (1 - q) ** n * sum(
            (-1) ** l * sympy.binomial(n, l) / (1 + q ** l) for l in range(n + 1)
        )
        assert sympy.cancel(closed - E[n]) == 0


def test_printed_minus_sign_recurrence_is_inconsistent():
    # (qE+1)^k - E_k = 0 for k=1 would force E_1 = q E_0 / (1 - q)
    q = Fraction(2)
    e0 = (1 + q) / 2
    assert q * e0 / (1 - q) != euler_number_closed(1, q)


def test_riemann_sums_approach_numbers():
    # third route: level-N sums against mu_{-q} converge p-adically for q = 1 mod p
    p = 5
    q = Fraction(6)
    for n in range(4):
        target = euler_number_closed(n, q)
        vals = []
        for N in range(1, 4):
            P = p ** N
            s = sum((-1) ** x * qint(x, q) ** n for x in range(P)) / qint_neg(P, q)
            vals.append(vp(s - target, p))
        assert vals == sorted(vals) and vals[-1] > vals[0]


@pytest.mark.parametrize("q", Q_GRID)
def test_poly_algorithms_agree(q):
    for F in (1, 3, 5, 15):
        for a in range(F + 2):
            for n in range(9):
                assert euler_poly_frac(n, q, a, F) == euler_poly_closed(n, q, a, F)


@given(admissible_q, st.integers(0, 8), st.integers(0, 10), st.integers(1, 7))
@settings(max_examples=60, deadline=None)
def test_poly_algorithms_agree_random(q, n, a, F):
    assert euler_poly_frac(n, q, a, F) == euler_poly_closed(n, q, a, F)


def test_poly_examples():
    q, F = Fraction(5, 2), 3
    assert euler_poly_frac(0, q, 2, F) == (1 + q ** F) / 2
    for n in range(6):
        assert euler_poly_frac(n, q, 0, 1) == euler_number_closed(n, q)
        assert euler_poly_closed(n, q, 0, 1) == euler_number_closed(n, q)
    for qq in Q_GRID:
        assert euler_poly_frac(1, qq, 1, 1) == Fraction(1, 2)


@pytest.mark.parametrize("q", Q_GRID)
def test_value_at_one(q):
    for n in range(1, 9):
        assert euler_poly_frac(n, q, 1, 1) == -euler_number_closed(n, q)
    assert euler_poly_frac(0, q, 1, 1) + euler_number_closed(0, q) == 1 + q


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3, 2), Fraction(6), Fraction(4)])
@pytest.mark.parametrize("d", [1, 3, 5, 9])
def test_distribution_relation(q, d):
    for n in range(9):
        for xn, xd in [(0, 1), (1, 1), (2, 3), (4, 1)]:
            lhs, rhs = distribution_check(n, q, xn, xd, d)
            assert lhs == rhs


def test_distribution_examples():
    q = Fraction(7, 5)
    assert distribution_check(0, q, 0, 1, 3) == ((1 + q) / 2, (1 + q) / 2)
    lhs, rhs = distribution_check(1, 2, 0, 1, 3)
    assert lhs == rhs == Fraction(-1, 2)


def test_distribution_with_n_in_place_of_x_fails():
    # the relation does not hold if the shifted argument uses n instead of x
    q, d, n = Fraction(2), 3, 0
    lhs = euler_poly_frac(n, q, 0, 1)
    wrong = (1 + q) / (1 + q ** d) * sum(
        (-1) ** a * euler_poly_frac(n, q, n + a, d) for a in range(d)
    ) * qint(d, q) ** n
    assert lhs == wrong  # n = 0 coincides with x = 0
    n = 1
    wrong = (1 + q) / (1 + q ** d) * sum(
        (-1) ** a * euler_poly_frac(n, q, n + a, d) for a in range(d)
    ) * qint(d, q) ** n
    assert euler_poly_frac(n, q, 0, 1) != wrong


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3, 2), Fraction(6)])
def test_gen_numbers_trivial_and_quadratic(q):
    for n in range(6):
        assert gen_euler_number(n, trivial_char(1), q) == euler_number_closed(n, q)
    assert gen_euler_number(0, quadratic_char(3), q) == -(1 + q)


def test_gen_numbers_linear_in_character_values():
    q = Fraction(3, 2)
    chars = all_chars(5)
    for n in range(4):
        parts = [gen_euler_number(n, c, q) for c in chars]
        # sum over all characters mod 5 picks out the class of 1: 4 * (value of indicator of a=1)
        total = sum(parts[1:], parts[0])
        indicator = DirichletChar(5, (0, 4, 0, 0, 0), 1)
        assert total == gen_euler_number(n, indicator, q)


def test_gen_numbers_need_odd_modulus():
    with pytest.raises(UsageError):
        gen_euler_number(1, DirichletChar(4, (0, 1, 0, -1), 2), 2)


def test_zero_denominator_rejected():
    with pytest.raises(DomainError):
        euler_number_rec(3, -1)
