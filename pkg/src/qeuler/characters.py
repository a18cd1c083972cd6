"""Dirichlet characters of odd modulus as explicit value tables."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .cyclotomic import CycloElem, embed_padic
from .exact_arith import DomainError, PadicTrunc, UsageError, reduce_mod_pM

Value = Union[int, CycloElem, PadicTrunc]


@dataclass(frozen=True)
class DirichletChar:
    """chi mod d.  ``m`` is None for integer values, else values lie in Q(zeta_m)."""

    d: int
    values: tuple
    order: int
    m: int | None = None
    label: str = ""

    def __call__(self, a: int) -> Value:
        return self.values[a % self.d]

    @property
    def codomain(self) -> str:
        if self.m is None:
            return "integer"
        if self.m == 0:
            return "padic"
        return f"cyclotomic({self.m})"

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def zero(self):
        if self.m is None:
            return Fraction(0)
        return CycloElem.from_rat(0, self.m)

    def to_json(self) -> dict:
        def ser(v):
            if isinstance(v, CycloElem):
                return v.to_json()
            if isinstance(v, PadicTrunc):
                return str(v.residue)
            return str(v)

        return {"d": self.d, "order": self.order, "values": [ser(v) for v in self.values]}


def _check_odd(d: int) -> None:
    if not isinstance(d, int) or d < 1 or d % 2 == 0:
        raise UsageError(f"modulus must be an odd positive integer, got {d!r}")


def jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def quadratic_char(d: int) -> DirichletChar:
    """chi(a) = Jacobi symbol (a|d)."""
    _check_odd(d)
    if d < 3:
        raise UsageError("quadratic character needs d >= 3")
    values = tuple(jacobi(a, d) for a in range(d))
    order = 1 if all(v in (0, 1) for v in values) else 2
    return DirichletChar(d, values, order, None, f"jacobi mod {d}")


def trivial_char(d: int = 1) -> DirichletChar:
    _check_odd(d)
    if d == 1:
        return DirichletChar(1, (1,), 1, None, "trivial mod 1")
    return DirichletChar(d, tuple(int(math.gcd(a, d) == 1) for a in range(d)), 1, None, f"trivial mod {d}")


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += 1
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root_mod(pe: int, phi: int) -> int:
    factors = [f for f, _ in _factor(phi)]
    for g in range(2, pe):
        if math.gcd(g, pe) == 1 and all(pow(g, phi // f, pe) != 1 for f in factors):
            return g
    return 1


@lru_cache(maxsize=256)
def all_chars(d: int) -> tuple[DirichletChar, ...]:
    """Every character mod d, trivial first.

    (Z/d)* is split by CRT into cyclic factors (Z/p^e)*, each with its least
    primitive root g_i; the character with exponent vector (j_i) sends g_i to
    zeta_{phi_i}^{j_i}.  Order of the output is lexicographic in (j_i).
    Characters of order <= 2 get integer values.
    """
    _check_odd(d)
    if d == 1:
        return (trivial_char(1),)
    parts = []
    for p, e in _factor(d):
        pe = p ** e
        phi = pe - pe // p
        g = _primitive_root_mod(pe, phi)
        # discrete log table for the cyclic factor
        dlog = {}
        x = 1
        for k in range(phi):
            dlog[x] = k
            x = x * g % pe
        parts.append((pe, phi, dlog))
    L = math.lcm(*(phi for _, phi, _ in parts))
    units = [a for a in range(d) if math.gcd(a, d) == 1]
    # exponent of zeta_L carried by each unit, per exponent vector
    chars = []
    for js in itertools.product(*(range(phi) for _, phi, _ in parts)):
        exps = {}
        for a in units:
            e = 0
            for (pe, phi, dlog), j in zip(parts, js):
                e += dlog[a % pe] * j * (L // phi)
            exps[a] = e % L
        order = L // math.gcd(L, *exps.values())
        idx = len(chars)
        if order <= 2:
            values = tuple(
                0 if a not in exps else (1 if exps[a] == 0 else -1) for a in range(d)
            )
            chars.append(DirichletChar(d, values, order, None, f"chi_{idx} mod {d}"))
        else:
            values = tuple(
                0 if a not in exps else CycloElem.zeta(order, exps[a] * order // L)
                for a in range(d)
            )
            chars.append(DirichletChar(d, values, order, order, f"chi_{idx} mod {d}"))
    return tuple(chars)


def get_char(d: int, index: int) -> DirichletChar:
    chars = all_chars(d)
    if not 0 <= index < len(chars):
        raise UsageError(f"character index {index} out of range for d={d} ({len(chars)} characters)")
    return chars[index]


def parse_char(spec: str) -> DirichletChar:
    """Parse ``"d:index"``."""
    try:
        d_s, i_s = spec.split(":")
        return get_char(int(d_s), int(i_s))
    except ValueError as exc:
        raise UsageError(f"bad character selector {spec!r}, expected d:index") from exc


def is_real(chi: DirichletChar) -> bool:
    return chi.m is None


def embed_char(chi: DirichletChar, p: int, M: int) -> DirichletChar:
    """Compose chi with the fixed embedding Q(zeta_m) -> Z/p^M."""
    if (p - 1) % chi.order:
        raise DomainError(f"character not embeddable at this p: order {chi.order} does not divide {p - 1}")

    def conv(v):
        if isinstance(v, CycloElem):
            return embed_padic(v, p, M)
        return reduce_mod_pM(v, p, M)

    return DirichletChar(chi.d, tuple(conv(v) for v in chi.values), chi.order, 0, chi.label + f" @ {p}^{M}")


def char_sum(chi: DirichletChar):
    acc = chi.zero()
    for v in chi.values:
        acc = acc + v
    return acc
