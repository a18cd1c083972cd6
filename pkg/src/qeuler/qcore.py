"""q-brackets and modified q-Euler numbers / polynomials over Q.

Polynomials are only ever evaluated at fractional arguments ``a/F`` with
base ``q**F``; then ``Q**x == q**a`` and ``[x]_Q == [a]_q / [F]_q`` and all
arithmetic stays in Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact_arith import DomainError, RatLike, UsageError, as_rat


@lru_cache(maxsize=200_000)
def _pow(q: Fraction, e: int) -> Fraction:
    return q ** e


@dataclass(frozen=True)
class QParam:
    """A rational q with memoized powers."""

    q: Fraction
    closed_form: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        q = as_rat(self.q)
        object.__setattr__(self, "q", q)
        if q == 0 or q == -1:
            raise DomainError(f"q = {q} is excluded")
        if self.closed_form and q == 1:
            raise DomainError("q = 1 is excluded for closed-form evaluation")

    def pow(self, e: int) -> Fraction:
        return _pow(self.q, e)


@lru_cache(maxsize=512)
def binomial_row(n: int) -> tuple[int, ...]:
    if n < 0:
        raise UsageError("n must be >= 0")
    if n == 0:
        return (1,)
    prev = binomial_row(n - 1)
    return (1,) + tuple(a + b for a, b in zip(prev, prev[1:])) + (1,)


def qint(n: int, q: RatLike) -> Fraction:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    q = as_rat(q)
    if n < 0:
        raise UsageError("qint expects n >= 0")
    if q == 1:
        return Fraction(n)
    return (1 - _pow(q, n)) / (1 - q)


def qint_neg(n: int, q: RatLike) -> Fraction:
    """[n]_{-q} = 1 - q + q^2 - ... + (-q)^(n-1)."""
    return qint(n, -as_rat(q))


def qint_frac(a: int, F: int, q: RatLike) -> Fraction:
    """[a/F]_{q^F} = [a]_q / [F]_q."""
    q = as_rat(q)
    if q == 1:
        raise DomainError("qint_frac needs q != 1")
    if a < 0 or F < 1:
        raise UsageError("qint_frac expects a >= 0, F >= 1")
    return (1 - _pow(q, a)) / (1 - _pow(q, F))


@dataclass(frozen=True)
class QEulerTable:
    q: Fraction
    entries: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)


@lru_cache(maxsize=4096)
def _rec_table(n_max: int, q: Fraction) -> tuple[Fraction, ...]:
    if q == 0 or q == -1:
        raise DomainError(f"q = {q} is excluded")
    if n_max > 0:
        prev = _rec_table(n_max - 1, q)
    else:
        return ((1 + q) / 2,)
    k = n_max
    den = 1 + _pow(q, k)
    if den == 0:
        raise DomainError(f"1 + q^{k} = 0")
    row = binomial_row(k)
    s = sum(row[i] * _pow(q, i) * prev[i] for i in range(k))
    return prev + (-s / den,)


def euler_number_rec(n_max: int, q: RatLike) -> QEulerTable:
    """E_{0..n_max, q} from (qE + 1)^k + E_k = [2]_q * delta_{k,0}."""
    q = as_rat(q)
    if n_max < 0:
        raise UsageError("n_max must be >= 0")
    return QEulerTable(q, _rec_table(n_max, q))


def _check_closed(q: Fraction, n: int) -> None:
    if q == 1:
        raise DomainError("closed form needs q != 1")
    if q == 0 or q == -1:
        raise DomainError(f"q = {q} is excluded")
    if q < 0:
        for l in range(n + 1):
            if 1 + _pow(q, l) == 0:
                raise DomainError(f"1 + q^{l} = 0")


@lru_cache(maxsize=65536)
def _closed(n: int, q: Fraction) -> Fraction:
    _check_closed(q, n)
    row = binomial_row(n)
    s = sum(
        (-row[l] if l & 1 else row[l]) / (1 + _pow(q, l))
        for l in range(n + 1)
    )
    return (1 + q) * s / _pow(1 - q, n)


def euler_number_closed(n: int, q: RatLike) -> Fraction:
    """E_{n,q} = [2]_q (1-q)^-n sum_l (-1)^l C(n,l) / (1 + q^l)."""
    if n < 0:
        raise UsageError("n must be >= 0")
    return _closed(n, as_rat(q))


def euler_poly_frac(n: int, q: RatLike, a: int, F: int) -> Fraction:
    """E_{n, q^F}(a/F) via sum_l C(n,l) q^(al) E_{l,q^F} ([a]_q/[F]_q)^(n-l)."""
    q = as_rat(q)
    Q = _pow(q, F)
    x = qint_frac(a, F, q)
    _check_closed(Q, n)
    table = _rec_table(n, Q)
    row = binomial_row(n)
    qa = _pow(q, a)
    out = Fraction(0)
    xp = Fraction(1)
    # accumulate from l = n down so that x^(n-l) grows incrementally
    for l in range(n, -1, -1):
        out += row[l] * _pow(qa, l) * table[l] * xp
        xp *= x
    return out


def euler_poly_closed(n: int, q: RatLike, a: int, F: int) -> Fraction:
    """[2]_{q^F} (1-q^F)^-n sum_l (-1)^l C(n,l) q^(al) / (1 + q^(Fl))."""
    q = as_rat(q)
    if q == 1:
        raise DomainError("closed form needs q != 1")
    if a < 0 or F < 1:
        raise UsageError("expects a >= 0, F >= 1")
    Q = _pow(q, F)
    _check_closed(Q, n)
    row = binomial_row(n)
    qa = _pow(q, a)
    s = sum(
        (-row[l] if l & 1 else row[l]) * _pow(qa, l) / (1 + _pow(Q, l))
        for l in range(n + 1)
    )
    return (1 + Q) * s / _pow(1 - Q, n)


def distribution_sides(n: int, q: RatLike, x_num: int, x_den: int, d: int, sign: int = 1):
    """Both sides of the distribution relation for E_{n,Q}(x), Q = q^x_den.

    lhs = E_{n,Q}(x) and
    rhs = [d]_Q^n [2]_Q/[2]_{Q^d} sum_{a<d} (-1)^a E_{n,Q^d}((x+a)/d)
    with x = x_num / x_den.  ``sign`` multiplies the rhs (mutation hook).
    """
    q = as_rat(q)
    if d < 1 or d % 2 == 0:
        raise UsageError("d must be odd and >= 1")
    if x_num < 0 or x_den < 1:
        raise UsageError("x must be x_num/x_den with x_num >= 0, x_den >= 1")
    Q = _pow(q, x_den)
    lhs = euler_poly_frac(n, q, x_num, x_den)
    acc = Fraction(0)
    for a in range(d):
        term = euler_poly_frac(n, q, x_num + a * x_den, x_den * d)
        acc += -term if a & 1 else term
    rhs = _pow(qint(d, Q), n) * (1 + Q) / (1 + _pow(Q, d)) * acc
    return lhs, sign * rhs


def distribution_check(n: int, q: RatLike, x_num: int, x_den: int, d: int) -> tuple[Fraction, Fraction]:
    return distribution_sides(n, q, x_num, x_den, d)


def gen_euler_number(n: int, chi, q: RatLike):
    """Generalized q-Euler number E_{n,chi,q}.

    [d]_q^n [2]_q/[2]_{q^d} sum_{a<d} (-1)^a chi(a) E_{n,q^d}(a/d); a Fraction
    for integer-valued characters, a CycloElem otherwise.
    """
    q = as_rat(q)
    d = chi.d
    if d % 2 == 0:
        raise UsageError("character modulus must be odd")
    acc = chi.zero()
    for a in range(d):
        c = chi(a)
        if c == 0:
            continue
        term = c * euler_poly_frac(n, q, a, d)
        acc = acc - term if a & 1 else acc + term
    return acc * (_pow(qint(d, q), n) * (1 + q) / (1 + _pow(q, d)))


def clear_caches() -> None:
    """Drop memoized powers and number tables (for timing from a cold start)."""
    for fn in (_pow, _rec_table, _closed, binomial_row):
        fn.cache_clear()
