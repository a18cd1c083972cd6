"""Exact arithmetic in Q(zeta_m) = Q[x]/Phi_m(x)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import (
    DomainError,
    PadicTrunc,
    RatLike,
    UsageError,
    as_rat,
    rat_str,
    reduce_mod_pM,
    teichmuller,
)


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise UsageError("m must be >= 1")
    poly = [-1] + [0] * (m - 1) + [1]
    for k in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(k)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = list(coeffs) + [Fraction(0)] * max(0, deg - len(coeffs))
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg + 1):
                c[i - deg + j] -= lead * phi[j]
    return tuple(c[:deg])


@dataclass(frozen=True)
class CycloElem:
    """Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    m: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _reduce([as_rat(c) for c in self.coeffs], self.m))

    @classmethod
    def from_rat(cls, x: RatLike, m: int) -> "CycloElem":
        return cls(m, (as_rat(x),))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycloElem":
        k %= m
        return cls(m, (Fraction(0),) * k + (Fraction(1),))

    def _coerce(self, other) -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.m != self.m:
                raise UsageError(f"mismatched cyclotomic orders {self.m} and {other.m}")
            return other
        return CycloElem.from_rat(as_rat(other), self.m)

    def __add__(self, other) -> "CycloElem":
        o = self._coerce(other)
        return CycloElem(self.m, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycloElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycloElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycloElem":
        return cyclo_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloElem":
        if e < 0:
            raise UsageError("negative powers are not supported")
        out, base = CycloElem.from_rat(1, self.m), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloElem):
            return self.m == other.m and self.coeffs == other.coeffs
        try:
            return self == self._coerce(other)
        except (UsageError, TypeError):
            return NotImplemented

    def __hash__(self) -> int:
        r = self.rational()
        return hash(r) if r is not None else hash((self.m, self.coeffs))

    def rational(self) -> Fraction | None:
        """The value as a rational if it lies in Q, else None."""
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [rat_str(c) for c in self.coeffs]}

    def __repr__(self) -> str:
        terms = [f"{rat_str(c)}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CycloElem(m={self.m}: {' + '.join(terms) or '0'})"


def cyclo_mul(x: CycloElem, y: CycloElem) -> CycloElem:
    if x.m != y.m:
        raise UsageError(f"mismatched cyclotomic orders {x.m} and {y.m}")
    prod = [Fraction(0)] * (len(x.coeffs) + len(y.coeffs) - 1)
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(y.coeffs):
                prod[i + j] += a * b
    return CycloElem(x.m, tuple(prod))


@lru_cache(maxsize=None)
def least_primitive_root(p: int) -> int:
    factors = [f for f in range(2, p) if (p - 1) % f == 0 and all(f % g for g in range(2, f))]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    return 1  # p == 2


def zeta_image(m: int, p: int, M: int) -> PadicTrunc:
    """Image of zeta_m in Z/p^M under the fixed embedding."""
    if (p - 1) % m:
        raise DomainError(f"no embedding: {m} does not divide p-1={p - 1}")
    return teichmuller(least_primitive_root(p), p, M) ** ((p - 1) // m)


def embed_padic(x: CycloElem, p: int, M: int, m: int | None = None) -> PadicTrunc:
    """Send zeta_m to omega(g)^((p-1)/m), g the least primitive root mod p."""
    m = x.m if m is None else m
    if m != x.m:
        raise UsageError(f"element lives in Q(zeta_{x.m}), not Q(zeta_{m})")
    z = zeta_image(m, p, M)
    acc = reduce_mod_pM(0, p, M)
    zk = reduce_mod_pM(1, p, M)
    for c in x.coeffs:
        if c:
            acc = acc + reduce_mod_pM(c, p, M) * zk
        zk = zk * z
    return acc

