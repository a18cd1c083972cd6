import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qeuler.characters import all_chars, quadratic_char, trivial_char
from qeuler.exact_arith import INF, DomainError, UsageError, is_diverging, vp
from qeuler.measures import (
    Cylinder,
    MeasureKind,
    additivity_check,
    cylinder_limit,
    integrate_level,
    integrate_limit,
    mu_neg_q,
    mu_q,
    mu_star,
)
from qeuler.qcore import euler_number_closed, gen_euler_number, qint, qint_neg


def mu_star_oracle(k, cyl, q):
    """Same measure from the expanded form, using only closed-form numbers."""
    D = cyl.modulus
    QD = q ** D
    s = sum(
        math.comb(k, l) * q ** (cyl.a * l) * euler_number_closed(l, QD) * qint(cyl.a, q) ** (k - l) * qint(D, q) ** l
        for l in range(k + 1)
    )
    return (-1) ** cyl.a * (1 + q) / (1 + QD) * s


def test_cylinder_validation():
    with pytest.raises(UsageError):
        Cylinder(1, 1, 5, 5)
    with pytest.raises(UsageError):
        Cylinder(3, 1, 0, 3)
    with pytest.raises(UsageError):
        Cylinder(2, 0, 0, 3)
    kids = Cylinder(1, 0, 0, 3).children()
    assert [c.a for c in kids] == [0, 1, 2] and all(c.N == 1 for c in kids)


def test_mu_neg_q_examples():
    assert mu_neg_q(Cylinder(1, 0, 0, 3), 2) == 1
    assert qint_neg(3, 2) == 3
    assert mu_neg_q(Cylinder(1, 1, 1, 3), 2) == Fraction(-2, 3)


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3, 2), Fraction(6)])
@pytest.mark.parametrize("p, d", [(3, 1), (3, 5), (5, 1), (5, 3)])
def test_mu_neg_q_refinement(q, p, d):
    for N in range(3):
        for a in range(d * p ** N):
            cyl = Cylinder(d, N, a, p)
            # brute-force geometric series
            kids = sum((-q) ** (a + i * d * p ** N) for i in range(p)) / qint(d * p ** (N + 1), -q)
            assert kids == mu_neg_q(cyl, q)


def test_mu_neg_q_is_mu_q_at_minus_q():
    cyl = Cylinder(5, 2, 17, 3)
    assert mu_neg_q(cyl, Fraction(7, 2)) == mu_q(cyl, Fraction(-7, 2))


def test_mu_star_worked_values():
    q = Fraction(2)
    kids = [mu_star(1, Cylinder(1, 1, a, 3), q) for a in range(3)]
    assert kids == [Fraction(-7, 6), Fraction(5, 6), Fraction(-1, 6)]
    assert sum(kids) == Fraction(-1, 2) == euler_number_closed(1, q)


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3, 2), Fraction(4)])
def test_mu_star_weight_zero_and_total_mass(q):
    for a in range(15):
        assert mu_star(0, Cylinder(5, 1, a, 3), q) == (-1) ** a * (1 + q) / 2
    for k in range(6):
        assert mu_star(k, Cylinder(1, 0, 0, 7), q) == euler_number_closed(k, q)


@given(
    st.sampled_from([Fraction(2), Fraction(3, 2), Fraction(6), Fraction(-3), Fraction(2, 5)]),
    st.integers(0, 5),
    st.sampled_from([(3, 1), (3, 5), (5, 1), (5, 3), (7, 3)]),
    st.integers(0, 2),
    st.integers(0, 10 ** 6),
)
@settings(max_examples=80, deadline=None)
def test_mu_star_matches_expanded_oracle(q, k, pd, N, a):
    p, d = pd
    cyl = Cylinder(d, N, a % (d * p ** N), p)
    assert mu_star(k, cyl, q) == mu_star_oracle(k, cyl, q)


def test_additivity_examples():
    rep = additivity_check(MeasureKind("mu_star", 3, 2, 1), Cylinder(1, 0, 0, 3))
    assert rep.exact and rep.parent == Fraction(-1, 2)
    for a in range(9):
        assert additivity_check(MeasureKind("mu_star", 3, Fraction(5, 3), 0), Cylinder(1, 2, a, 3)).exact


@pytest.mark.parametrize("tag", ["mu_q", "mu_neg_q"])
def test_additivity_of_the_q_measures(tag):
    mu = MeasureKind(tag, 5, Fraction(3, 2))
    for a in range(15):
        assert additivity_check(mu, Cylinder(3, 1, a, 5)).exact


def test_integrate_level_examples():
    q = Fraction(5, 2)
    assert integrate_level(lambda a: 1, MeasureKind("mu_star", 5, q, 0), 1, 1) == (1 + q) / 2
    chi = quadratic_char(3)
    assert integrate_level(chi, MeasureKind("mu_star", 5, q, 0), 3, 0) == -(1 + q)
    for N in range(3):
        for k in range(4):
            assert integrate_level(trivial_char(1), MeasureKind("mu_star", 3, q, k), 1, N) == euler_number_closed(k, q)


@pytest.mark.parametrize("d, p", [(3, 5), (5, 3), (15, 7)])
def test_level_sums_equal_generalized_numbers_exactly(d, p):
    q = Fraction(1 + p)
    for chi in all_chars(d):
        for k in range(3):
            target = gen_euler_number(k, chi, q)
            for N in range(2):
                assert integrate_level(chi, MeasureKind("mu_star", p, q, k), d, N) == target


def test_cylinder_values_approach_limit():
    p, q = 5, Fraction(6)
    assert cylinder_limit(1, 1, q) == Fraction(-7, 2)
    vals = [vp(mu_star(1, Cylinder(1, N, 1, p), q) - Fraction(-7, 2), p) for N in range(1, 5)]
    assert vals == [1, 2, 3, 4]
    vals0 = [vp(mu_star(0, Cylinder(1, N, 1, p), q) - cylinder_limit(0, 1, q), p) for N in range(1, 4)]
    assert vals0 == [INF] * 3


def test_corollary_riemann_sum_worked_point():
    p, q = 5, Fraction(6)
    f = lambda x: q ** -x * qint(x, q)
    mu = MeasureKind("mu_neg_q", p, q)
    assert integrate_level(f, mu, 1, 1) == Fraction(222, 1111)
    rep = integrate_limit(f, mu, 1, [1, 2, 3], Fraction(-1, 2))
    assert rep.samples[0] == (1, 1)
    assert is_diverging(rep.valuations)


def test_integrate_limit_precondition():
    with pytest.raises(DomainError, match="convergence precondition"):
        integrate_limit(lambda x: 1, MeasureKind("mu_star", 5, Fraction(2), 1), 1, [1], 0)


def test_boundedness():
    # cylinder values and limits are p-integral once q = 1 mod p
    for p in (3, 5):
        q = Fraction(1 + p)
        lo = min(vp(mu_star(k, Cylinder(1, N, a, p), q), p) for k in range(4) for N in range(3)
                 for a in range(p ** N))
        assert 0 <= lo < INF
        assert all(vp(cylinder_limit(k, a, q), p) >= 0 for k in range(4) for a in range(25))


def test_unknown_measure():
    with pytest.raises(UsageError):
        MeasureKind("mu_x", 3, 2)
