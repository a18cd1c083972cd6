"""Cylinder sets a + d p^N Z_p and the measures mu_{-q}, mu_q and mu_k*."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .exact_arith import (
    ConvergenceReport,
    DomainError,
    RatLike,
    UsageError,
    as_rat,
    is_prime,
    vp,
)
from .qcore import _pow, euler_poly_frac, qint


@dataclass(frozen=True, order=True)
class Cylinder:
    """a + d p^N Z_p, with 0 <= a < d p^N."""

    d: int
    N: int
    a: int
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p == 2:
            raise UsageError(f"p must be an odd prime, got {self.p}")
        if self.d < 1 or self.d % 2 == 0:
            raise UsageError(f"d must be odd and >= 1, got {self.d}")
        if math.gcd(self.d, self.p) != 1:
            raise UsageError(f"gcd(d, p) must be 1 (d={self.d}, p={self.p})")
        if self.N < 0:
            raise UsageError("level N must be >= 0")
        if not 0 <= self.a < self.modulus:
            raise UsageError(f"representative a={self.a} outside [0, {self.modulus})")

    @property
    def modulus(self) -> int:
        return self.d * self.p ** self.N

    def children(self) -> list["Cylinder"]:
        step = self.modulus
        return [Cylinder(self.d, self.N + 1, self.a + i * step, self.p) for i in range(self.p)]


@dataclass(frozen=True)
class MeasureKind:
    """One of ``mu_q``, ``mu_neg_q`` or ``mu_star`` (with weight ``k``)."""

    tag: str
    p: int
    q: Fraction
    k: int = 0
    sign: int = 1  # mutation hook: multiplies every value

    def __post_init__(self) -> None:
        if self.tag not in ("mu_q", "mu_neg_q", "mu_star"):
            raise UsageError(f"unknown measure {self.tag!r}")
        object.__setattr__(self, "q", as_rat(self.q))
        if self.k < 0:
            raise UsageError("k must be >= 0")

    def __call__(self, cyl: Cylinder) -> Fraction:
        if cyl.p != self.p:
            raise UsageError("cylinder and measure use different primes")
        if self.tag == "mu_star":
            v = mu_star(self.k, cyl, self.q)
        elif self.tag == "mu_neg_q":
            v = mu_neg_q(cyl, self.q)
        else:
            v = mu_q(cyl, self.q)
        return self.sign * v


def mu_q(cyl: Cylinder, q: RatLike) -> Fraction:
    """q^a / [d p^N]_q."""
    q = as_rat(q)
    den = qint(cyl.modulus, q)
    if den == 0:
        raise DomainError("[dp^N]_q = 0")
    return _pow(q, cyl.a) / den


def mu_neg_q(cyl: Cylinder, q: RatLike) -> Fraction:
    """(-q)^a / [d p^N]_{-q}, i.e. mu_q evaluated at -q."""
    q = as_rat(q)
    if q == -1:
        raise DomainError("q = -1 is excluded")
    return mu_q(cyl, -q)


def mu_star(k: int, cyl: Cylinder, q: RatLike) -> Fraction:
    """(-1)^a [D]_q^k [2]_q/[2]_{q^D} E_{k,q^D}(a/D), D = d p^N."""
    q = as_rat(q)
    if q in (0, 1, -1):
        raise DomainError(f"q = {q} is not admissible for mu_star")
    D = cyl.modulus
    QD = _pow(q, D)
    val = _pow(qint(D, q), k) * (1 + q) / (1 + QD) * euler_poly_frac(k, q, cyl.a, D)
    return -val if cyl.a & 1 else val


@dataclass(frozen=True)
class AdditivityReport:
    cylinder: Cylinder
    parent: Fraction
    children: tuple[Fraction, ...]

    @property
    def exact(self) -> bool:
        return sum(self.children, Fraction(0)) == self.parent


def additivity_check(measure: MeasureKind, cyl: Cylinder) -> AdditivityReport:
    parent = measure(cyl)
    kids = tuple(measure(c) for c in cyl.children())
    return AdditivityReport(cyl, parent, kids)


def integrate_level(f: Callable[[int], object], measure: MeasureKind, d: int, N: int):
    """sum_{a < d p^N} f(a) * measure(a + d p^N Z_p).

    ``f`` may return Fractions or CycloElems; zero values are skipped.
    """
    acc = None
    for a in range(d * measure.p ** N):
        fa = f(a)
        if fa == 0:
            continue
        term = fa * measure(Cylinder(d, N, a, measure.p))
        acc = term if acc is None else acc + term
    if acc is None:
        return Fraction(0)
    return acc


def check_convergence_precondition(p: int, q: RatLike) -> None:
    q = as_rat(q)
    if q.denominator % p == 0 or vp(q - 1, p) < 1:
        raise DomainError(f"convergence precondition violated: need v_{p}(q-1) >= 1, q = {q}")


def integrate_limit(
    f: Callable[[int], object],
    measure: MeasureKind,
    d: int,
    levels: Iterable[int],
    target: RatLike,
    valuation: Callable[[object], float | int] | None = None,
) -> ConvergenceReport:
    """Riemann sums at each level in ``levels`` against an exact target.

    ``valuation`` maps a (value - target) difference to its p-adic valuation;
    it defaults to the exact rational valuation.
    """
    check_convergence_precondition(measure.p, measure.q)
    val = valuation or (lambda x: vp(x, measure.p))
    samples = []
    for N in levels:
        s = integrate_level(f, measure, d, N)
        samples.append((N, val(s - target)))
    params = {"measure": measure.tag, "p": str(measure.p), "q": str(measure.q), "k": str(measure.k), "d": str(d)}
    return ConvergenceReport(params, tuple(samples))


def cylinder_limit(k: int, a: int, q: RatLike) -> Fraction:
    """lim_N mu_k*(a + d p^N Z_p) = [2]_q/2 (-1)^a [a]_q^k."""
    q = as_rat(q)
    v = (1 + q) / 2 * _pow(qint(a, q), k)
    return -v if a & 1 else v
