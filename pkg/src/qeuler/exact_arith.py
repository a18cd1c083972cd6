"""Exact rationals, p-adic valuations and truncated p-adic integers.

Rationals are plain :class:`fractions.Fraction` values.  Everything p-adic
is done at a finite precision ``p**M`` on top of Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]

INF = math.inf


class UsageError(ValueError):
    """Bad arguments (not a prime, mismatched moduli, ...)."""


class DomainError(ValueError):
    """Arguments outside the domain where a value is defined."""


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise UsageError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational: {x!r}") from exc
    raise UsageError(f"not a rational: {x!r}")


def rat_str(x: Fraction) -> str:
    """Serialize as ``"num/den"`` (always with a denominator)."""
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def val_str(v: float | int) -> str | int:
    return "inf" if v == INF else int(v)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise UsageError(f"{p!r} is not a prime")


def vp_int(n: int, p: int) -> float | int:
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: RatLike, p: int) -> float | int:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    _check_prime(p)
    x = as_rat(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


@dataclass(frozen=True)
class PadicTrunc:
    """An element of Z/p^M together with what we know of its valuation.

    ``known_valuation`` is ``None`` when the residue is 0 mod p^M, i.e. the
    true valuation is only known to be at least M.
    """

    p: int
    M: int
    residue: int
    known_valuation: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.M < 1:
            raise UsageError("precision M must be >= 1")
        mod = self.p ** self.M
        if not 0 <= self.residue < mod:
            object.__setattr__(self, "residue", self.residue % mod)
        v = vp_int(self.residue, self.p)
        object.__setattr__(self, "known_valuation", None if v == INF or v >= self.M else int(v))

    @property
    def modulus(self) -> int:
        return self.p ** self.M

    @property
    def valuation(self) -> float | int:
        """Valuation, with ``M`` standing in for "at least M"."""
        return self.M if self.known_valuation is None else self.known_valuation

    def _coerce(self, other) -> "PadicTrunc":
        if isinstance(other, PadicTrunc):
            if (other.p, other.M) != (self.p, self.M):
                raise UsageError("mismatched p or precision")
            return other
        return reduce_mod_pM(as_rat(other), self.p, self.M)

    def __add__(self, other) -> "PadicTrunc":
        o = self._coerce(other)
        return PadicTrunc(self.p, self.M, (self.residue + o.residue) % self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "PadicTrunc":
        return PadicTrunc(self.p, self.M, -self.residue % self.modulus)

    def __sub__(self, other) -> "PadicTrunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PadicTrunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PadicTrunc":
        o = self._coerce(other)
        return PadicTrunc(self.p, self.M, self.residue * o.residue % self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PadicTrunc":
        if e < 0:
            return self.inverse() ** (-e)
        return PadicTrunc(self.p, self.M, pow(self.residue, e, self.modulus))

    def inverse(self) -> "PadicTrunc":
        if self.residue % self.p == 0:
            raise DomainError("not a p-adic unit")
        return PadicTrunc(self.p, self.M, pow(self.residue, -1, self.modulus))

    def reduce(self, M: int) -> "PadicTrunc":
        if M > self.M:
            raise UsageError("cannot raise precision")
        return PadicTrunc(self.p, M, self.residue % self.p ** M)


def reduce_mod_pM(x: RatLike, p: int, M: int) -> PadicTrunc:
    _check_prime(p)
    x = as_rat(x)
    if x.denominator % p == 0:
        raise DomainError("not a p-adic integer")
    mod = p ** M
    return PadicTrunc(p, M, x.numerator * pow(x.denominator, -1, mod) % mod)


@lru_cache(maxsize=4096)
def _teichmuller_residue(a: int, p: int, M: int) -> int:
    mod = p ** M
    x = a % mod
    if x % p == 0:
        return 0
    # x -> x^p gains one p-adic digit per step, so M steps suffice
    for _ in range(M + 1):
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y
    raise ArithmeticError(f"Teichmuller iteration did not converge for a={a}, p={p}, M={M}")


def teichmuller(a: int, p: int, M: int) -> PadicTrunc:
    """Teichmuller representative of ``a`` mod p^M (0 when p | a)."""
    _check_prime(p)
    if a < 0:
        raise UsageError("teichmuller expects a >= 0")
    return PadicTrunc(p, M, _teichmuller_residue(a, p, M))


@dataclass(frozen=True)
class ConvergenceReport:
    params: Mapping[str, str]
    samples: tuple[tuple[int, float | int], ...]

    def __post_init__(self) -> None:
        levels = [lv for lv, _ in self.samples]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise UsageError("levels must be strictly increasing")

    @property
    def valuations(self) -> list[float | int]:
        return [v for _, v in self.samples]

    def to_json(self) -> dict:
        return {
            "params": dict(self.params),
            "samples": [{"level": lv, "residual_valuation": val_str(v)} for lv, v in self.samples],
        }


def residual_valuations(
    seq: Iterable[tuple[int, RatLike]],
    target: RatLike,
    p: int,
    params: Mapping[str, str] | None = None,
) -> ConvergenceReport:
    t = as_rat(target)
    samples = tuple((level, vp(as_rat(value) - t, p)) for level, value in seq)
    return ConvergenceReport(dict(params or {}), samples)


def is_diverging(vals: Sequence[float | int], gap: int = 2) -> bool:
    """Nondecreasing, and up by at least one over every ``gap`` consecutive levels.

    Exact agreement (``inf``) counts as arbitrarily large.
    """
    if any(b < a for a, b in zip(vals, vals[1:])):
        return False
    return all(vals[i + gap] == INF or vals[i + gap] >= vals[i] + 1 for i in range(len(vals) - gap))
