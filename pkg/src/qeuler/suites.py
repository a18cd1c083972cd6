"""Verification suites: one per identity or limit theorem.

Every suite takes a grid (dict, defaults below), an optional ``mutate``
flag that flips the sign of one side of the checked identity (used to make
sure a suite can fail at all), and a parallelism degree.  Grid points are
independent; they are evaluated in worker processes when parallelism > 1
and merged in sorted key order, so reports are deterministic.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

from .characters import DirichletChar, all_chars, get_char, is_real, quadratic_char, trivial_char
from .cyclotomic import CycloElem, embed_padic
from .exact_arith import (
    INF,
    as_rat,
    is_diverging,
    rat_str,
    teichmuller,
    val_str,
    vp,
    reduce_mod_pM,
)
from .measures import (
    Cylinder,
    MeasureKind,
    additivity_check,
    check_convergence_precondition,
    cylinder_limit,
    integrate_level,
    mu_star,
)
from .qcore import _pow, distribution_sides, gen_euler_number, qint

EMBED_PRECISION = 16


MAX_INLINE_BITS = 4000


def _digest(x: Fraction) -> dict:
    h = hashlib.sha256()
    for part in (x.numerator, x.denominator):
        h.update(part.to_bytes((part.bit_length() + 8) // 8, "big", signed=True))
    return {"num_bits": x.numerator.bit_length(), "den_bits": x.denominator.bit_length(),
            "sha256": h.hexdigest()}


def ser(x) -> object:
    """Report form of a value: a rat-string, or a digest for very large rationals."""
    if isinstance(x, CycloElem):
        r = x.rational()
        if r is None:
            return {"m": x.m, "coeffs": [ser(c) for c in x.coeffs]}
        x = r
    x = as_rat(x)
    if x.numerator.bit_length() + x.denominator.bit_length() > MAX_INLINE_BITS:
        return _digest(x)
    return rat_str(x)


@dataclass
class SuiteResult:
    suite: str
    grid: dict
    points: list[dict]
    passed: bool
    elapsed_ms: int = 0
    summary: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "grid": self.grid,
            "points": self.points,
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.summary:
            out["summary"] = self.summary
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    @property
    def failures(self) -> list[dict]:
        return [pt for pt in self.points if pt["outcome"] == "fail"]


def default_parallelism() -> int:
    raw = os.environ.get("QEULER_PARALLELISM", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _map(fn: Callable[[dict], dict], items: list[dict], parallelism: int) -> list[dict]:
    if parallelism <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * parallelism))))


def _finish(name: str, grid: dict, points: list[dict], t0: float, timing: bool, summary=None) -> SuiteResult:
    points = sorted(points, key=lambda pt: pt["key"])
    passed = all(pt["outcome"] != "fail" for pt in points)
    elapsed = int((time.perf_counter() - t0) * 1000) if timing else 0
    return SuiteResult(name, grid, points, passed, elapsed, summary or {})


def _key(*parts) -> tuple:
    return tuple(parts)


def _grid_json(grid: dict) -> dict:
    return {k: [str(v) for v in vs] if isinstance(vs, (list, tuple)) else str(vs) for k, vs in grid.items()}


# -- golden valuation sequences ------------------------------------------------

def _golden_path(suite: str):
    return resources.files("qeuler").joinpath("golden").joinpath(f"{suite}.json")


def load_golden(suite: str) -> dict[str, list]:
    path = _golden_path(suite)
    try:
        return json.loads(path.read_text())
    except (FileNotFoundError, OSError):
        return {}


def _gold_val(raw) -> float | int:
    return INF if raw == "inf" else int(raw)


def _convergence_outcome(vals: list, levels: list, golden: dict | None) -> tuple[str, str]:
    if not is_diverging(vals):
        return "fail", "valuations do not diverge"
    if golden is not None:
        for lv, v in zip(levels, vals):
            g = golden.get(str(lv))
            if g is not None and v < _gold_val(g):
                return "fail", f"worse than golden at level {lv}"
    if all(v == INF for v in vals):
        return "exact", ""
    return "converges", ""


# -- characters in grids -----------------------------------------------------------

def _char(sel: str) -> DirichletChar:
    d_s, i_s = sel.split(":")
    if i_s == "q":
        return quadratic_char(int(d_s)) if int(d_s) > 1 else trivial_char(1)
    return get_char(int(d_s), int(i_s))


def _valuation(x, p: int, chi: DirichletChar) -> float | int:
    if isinstance(x, CycloElem):
        r = x.rational()
        if r is None:
            return _embedded_val(x, p)
        x = r
    return vp(x, p)


def _embedded_val(x: CycloElem, p: int) -> float | int:
    # valuation at finite precision; saturates at EMBED_PRECISION
    if x == 0:
        return INF
    return embed_padic(x, p, EMBED_PRECISION).valuation


def _embeddable(chi: DirichletChar, p: int) -> bool:
    return is_real(chi) or (p - 1) % chi.order == 0


# -- distribution relation ---------------------------------------------------------

DEFAULT_DISTRIBUTION = {
    "n": list(range(9)),
    "d": [1, 3, 5, 9],
    "q": ["2", "3/2", "6", "4"],
    "x": ["0/1", "1/1", "2/3"],
}


def _pt_distribution(it: dict) -> dict:
    n, d, q, (xn, xd) = it["n"], it["d"], Fraction(it["q"]), it["x"]
    lhs, rhs = distribution_sides(n, q, xn, xd, d, sign=it["sign"])
    pt = {"key": _key(d, n, str(q), xn, xd), "params": {"n": n, "d": d, "q": rat_str(q), "x": f"{xn}/{xd}"}}
    if lhs == rhs:
        pt["outcome"] = "exact"
    else:
        pt.update(outcome="fail", lhs=ser(lhs), rhs=ser(rhs))
    return pt


def _parse_x(s: str) -> tuple[int, int]:
    num, _, den = str(s).partition("/")
    return int(num), int(den or 1)


def suite_distribution(grid: dict | None = None, mutate: bool = False, parallelism: int = 1,
                       timing: bool = False) -> SuiteResult:
    t0 = time.perf_counter()
    grid = {**DEFAULT_DISTRIBUTION, **(grid or {})}
    items = [
        {"n": n, "d": d, "q": str(q), "x": _parse_x(x), "sign": -1 if mutate else 1}
        for n in grid["n"] for d in grid["d"] for q in grid["q"] for x in grid["x"]
    ]
    pts = _map(_pt_distribution, items, parallelism)
    return _finish("distribution", _grid_json(grid), pts, t0, timing)


# -- Theorem 1: additivity of mu_k* ------------------------------------------------

DEFAULT_THEOREM1 = {
    "p": [3, 5],
    "d": [1, 3, 5],
    "k": list(range(6)),
    "q": ["2", "3/2", "1+p"],
    "max_level": {"3": 3, "5": 2},
}


def _q_for(spec: str, p: int) -> Fraction:
    return Fraction(1 + p) if spec == "1+p" else Fraction(spec)


def _pt_theorem1(it: dict) -> dict:
    p, d, k, N, q = it["p"], it["d"], it["k"], it["N"], Fraction(it["q"])
    mu = MeasureKind("mu_star", p, q, k)
    bad = []
    min_val = INF
    for a in range(d * p ** N):
        rep = additivity_check(mu, Cylinder(d, N, a, p))
        parent = it["sign"] * rep.parent
        min_val = min([min_val, vp(rep.parent, p)] + [vp(c, p) for c in rep.children])
        if sum(rep.children, Fraction(0)) != parent:
            bad.append({"a": a, "parent": ser(parent), "children": [ser(c) for c in rep.children]})
    pt = {
        "key": _key(p, d, k, str(q), N),
        "params": {"p": p, "d": d, "k": k, "q": rat_str(q), "N": N},
        "cylinders": d * p ** N,
        "min_valuation": val_str(min_val),
    }
    if bad:
        pt.update(outcome="fail", witnesses=bad[:5])
    else:
        pt["outcome"] = "exact"
    return pt


def suite_theorem1(grid: dict | None = None, mutate: bool = False, parallelism: int = 1,
                   timing: bool = False) -> SuiteResult:
    t0 = time.perf_counter()
    grid = {**DEFAULT_THEOREM1, **(grid or {})}
    items = []
    for p in grid["p"]:
        for d in grid["d"]:
            if math.gcd(d, p) != 1:
                continue
            for k in grid["k"]:
                for qs in grid["q"]:
                    q = _q_for(qs, p)
                    for N in range(int(grid["max_level"][str(p)]) + 1):
                        items.append({"p": p, "d": d, "k": k, "q": str(q), "N": N, "sign": -1 if mutate else 1})
    pts = _map(_pt_theorem1, items, parallelism)
    vals = [int(pt["min_valuation"]) for pt in pts if pt["min_valuation"] != "inf"]
    summary = {"min_valuation_of_mu_star": min(vals) if vals else "inf"}
    return _finish("theorem1", {k: str(v) for k, v in grid.items()}, pts, t0, timing, summary)


# -- Theorem 2: level-N character sums --------------------------------------------

DEFAULT_THEOREM2 = {
    "d": [1, 3, 5],
    "p": [3, 5],
    "k": list(range(5)),
    "q": ["1+p", "3/2"],
    "levels": list(range(4)),
}


def _pt_theorem2(it: dict) -> dict:
    p, d, idx, k, q = it["p"], it["d"], it["index"], it["k"], Fraction(it["q"])
    chi = get_char(d, idx)
    target = gen_euler_number(k, chi, q) * it["sign"]
    mu = MeasureKind("mu_star", p, q, k)
    bad = []
    for N in it["levels"]:
        s = integrate_level(chi, mu, d, N)
        if s != target:
            bad.append({"N": N, "sum": ser(s)})
    pt = {
        "key": _key(d, idx, p, k, str(q)),
        "params": {"d": d, "chi": f"{d}:{idx}", "order": chi.order, "p": p, "k": k, "q": rat_str(q)},
        "target": ser(target),
    }
    if bad:
        pt.update(outcome="fail", witnesses=bad)
    else:
        pt["outcome"] = "exact"
    return pt


def suite_theorem2(grid: dict | None = None, mutate: bool = False, parallelism: int = 1,
                   timing: bool = False) -> SuiteResult:
    t0 = time.perf_counter()
    grid = {**DEFAULT_THEOREM2, **(grid or {})}
    items = []
    for d in grid["d"]:
        n_chars = len(all_chars(d))
        for p in grid["p"]:
            if math.gcd(d, p) != 1:
                continue
            for idx in range(n_chars):
                for k in grid["k"]:
                    for qs in grid["q"]:
                        items.append({"p": p, "d": d, "index": idx, "k": k, "q": str(_q_for(qs, p)),
                                      "levels": list(grid["levels"]), "sign": -1 if mutate else 1})
    pts = _map(_pt_theorem2, items, parallelism)
    return _finish("theorem2", _grid_json(grid), pts, t0, timing)


# -- Theorem 3 and Corollary 1 ------------------------------------------------------

DEFAULT_THEOREM3 = {
    "p": [3, 5],
    "d": [1, 3, 5],
    "k": list(range(4)),
    "levels": [1, 2, 3, 4],
    "chars": ["1:0", "3:q", "5:q"],
    "q": "1+p",
}


def _pt_theorem3_cyl(it: dict) -> dict:
    p, d, k, a = it["p"], it["d"], it["k"], it["a"]
    q = Fraction(it["q"])
    target = cylinder_limit(k, a, q) * it["sign"]

    vals = [vp(mu_star(k, Cylinder(d, N, a, p), q) - target, p) for N in it["levels"]]
    key = f"cyl|p={p}|d={d}|k={k}|a={a}"
    outcome, why = _convergence_outcome(vals, it["levels"], it["golden"].get(key))
    if outcome != "fail" and vp(target, p) < 0:
        outcome, why = "fail", "limit value is not p-integral"
    pt = {
        "key": _key("cyl", p, d, k, a),
        "golden_key": key,
        "params": {"p": p, "d": d, "k": k, "a": a, "q": rat_str(q)},
        "target": ser(target),
        "samples": [{"level": N, "residual_valuation": val_str(v)} for N, v in zip(it["levels"], vals)],
        "outcome": outcome,
    }
    if why:
        pt["reason"] = why
    return pt


def riemann_neg_q(chi: DirichletChar, k: int, p: int, q: Fraction, N: int):
    """Level-N sum of chi(x) q^-x [x]_q^k against mu_{-q}."""
    mu = MeasureKind("mu_neg_q", p, q)
    return integrate_level(lambda x: chi(x) * _pow(q, x) ** -1 * _pow(qint(x, q), k) if chi(x) != 0 else 0,
                           mu, chi.d, N)


def _pt_theorem3_cor(it: dict) -> dict:
    p, k = it["p"], it["k"]
    chi = _char(it["chi"])
    q = Fraction(it["q"])
    target = gen_euler_number(k, chi, q) * it["sign"]
    mu_star_k = MeasureKind("mu_star", p, q, k)
    vals, diffs, sums = [], [], []
    for N in it["levels"]:
        b = riemann_neg_q(chi, k, p, q, N)
        a = integrate_level(chi, mu_star_k, chi.d, N)
        sums.append(b)
        vals.append(_valuation(b - target, p, chi))
        diffs.append(_valuation(a - b, p, chi))
    key = f"cor|p={p}|chi={it['chi']}|k={k}"
    outcome, why = _convergence_outcome(vals, it["levels"], it["golden"].get(key))
    if outcome != "fail" and not is_diverging(diffs):
        outcome, why = "fail", "families do not agree in the limit"
    pt = {
        "key": _key("cor", p, it["chi"], k),
        "golden_key": key,
        "params": {"p": p, "chi": it["chi"], "k": k, "q": rat_str(q)},
        "target": ser(target),
        "samples": [
            {"level": N, "value": ser(s), "residual_valuation": val_str(v), "family_gap_valuation": val_str(g)}
            for N, s, v, g in zip(it["levels"], sums, vals, diffs)
        ],
        "outcome": outcome,
    }
    if why:
        pt["reason"] = why
    return pt


def suite_theorem3(grid: dict | None = None, mutate: bool = False, parallelism: int = 1,
                   timing: bool = False, use_golden: bool = True) -> SuiteResult:
    t0 = time.perf_counter()
    grid = {**DEFAULT_THEOREM3, **(grid or {})}
    golden = load_golden("theorem3") if use_golden else {}
    sign = -1 if mutate else 1
    items_cyl, items_cor = [], []
    for p in grid["p"]:
        q = _q_for(str(grid["q"]), p)
        check_convergence_precondition(p, q)
        gold = golden if q == 1 + p else {}
        for d in grid["d"]:
            if math.gcd(d, p) != 1:
                continue
            for k in grid["k"]:
                for a in range(d * p):
                    items_cyl.append({"p": p, "d": d, "k": k, "a": a, "levels": list(grid["levels"]),
                                      "q": str(q), "golden": gold, "sign": sign})
        for sel in grid["chars"]:
            if math.gcd(_char(sel).d, p) != 1:
                continue
            for k in grid["k"]:
                items_cor.append({"p": p, "chi": sel, "k": k, "levels": list(grid["levels"]),
                                  "q": str(q), "golden": gold, "sign": sign})
    pts = _map(_pt_theorem3_cyl, items_cyl, parallelism) + _map(_pt_theorem3_cor, items_cor, parallelism)
    return _finish("theorem3", _grid_json(grid), pts, t0, timing)


# -- Witt formula ----------------------------------------------------------------------

DEFAULT_WITT = {
    "p": [3, 5],
    "n": [0, 1, 2, 3],
    "chars": ["1:0", "3:q", "5:q"],
    "rho": [0, 1, 2, 3],
    "q": "1+p",
}


def witt_partial_sum(n: int, chi: DirichletChar, q: Fraction, p: int, rho: int, prime_to_p: bool = False):
    """[2]_q/2 * sum_{x=1}^{dbar p^rho} (-1)^x chi(x) [x]_q^n, dbar = lcm(d, p).

    With ``prime_to_p`` only x prime to p are summed.
    """
    dbar = chi.d * p // math.gcd(chi.d, p)
    acc = chi.zero()
    for x in range(1, dbar * p ** rho + 1):
        if prime_to_p and x % p == 0:
            continue
        c = chi(x)
        if c == 0:
            continue
        t = c * _pow(qint(x, q), n)
        acc = acc - t if x & 1 else acc + t
    return acc * ((1 + q) / 2)


def _pt_witt(it: dict) -> dict:
    p, n = it["p"], it["n"]
    chi = _char(it["chi"])
    q = Fraction(it["q"])
    key = f"witt|p={p}|chi={it['chi']}|n={n}"
    base = {"key": _key(p, it["chi"], n), "golden_key": key,
            "params": {"p": p, "chi": it["chi"], "n": n, "q": rat_str(q)}}
    if not _embeddable(chi, p):
        return {**base, "outcome": "skipped", "reason": f"character not embeddable at p={p}"}
    target = gen_euler_number(n, chi, q) * it["sign"]
    sums = [witt_partial_sum(n, chi, q, p, r) for r in it["rho"]]
    vals = [_valuation(s - target, p, chi) for s in sums]
    outcome, why = _convergence_outcome(vals, it["rho"], it["golden"].get(key))
    pt = {
        **base,
        "target": ser(target),
        "samples": [{"level": r, "value": ser(s), "residual_valuation": val_str(v)}
                    for r, s, v in zip(it["rho"], sums, vals)],
        "outcome": outcome,
    }
    if why:
        pt["reason"] = why
    return pt


def suite_witt(grid: dict | None = None, mutate: bool = False, parallelism: int = 1,
               timing: bool = False, use_golden: bool = True) -> SuiteResult:
    t0 = time.perf_counter()
    grid = {**DEFAULT_WITT, **(grid or {})}
    golden = load_golden("witt") if use_golden else {}
    items = []
    for p in grid["p"]:
        q = _q_for(str(grid["q"]), p)
        check_convergence_precondition(p, q)
        gold = golden if q == 1 + p else {}
        for sel in grid["chars"]:
            d = _char(sel).d
            if math.gcd(d, p) != 1:
                continue
            for n in grid["n"]:
                # with x running over 1..dbar p^rho the n=0 sum for the character
                # mod 1 is -[2]_q/2 at every rho; that point is covered by tests
                if d == 1 and n == 0:
                    continue
                items.append({"p": p, "chi": sel, "n": n, "rho": list(grid["rho"]), "golden": gold,
                              "q": str(q), "sign": -1 if mutate else 1})
    pts = _map(_pt_witt, items, parallelism)
    return _finish("witt", _grid_json(grid), pts, t0, timing)


# -- Euler factor removal and Teichmuller ------------------------------------------

DEFAULT_EULER_FACTOR = {
    "p": [3, 5],
    "n": [0, 1, 2, 3],
    "chars": ["1:0", "3:q", "5:q"],
    "rho": [0, 1, 2, 3],
    "teich_precision": 8,
    "q": "1+p",
}


def euler_factor_lhs(n: int, chi: DirichletChar, q: Fraction, p: int):
    """E_{n,chi,q} - [2]_q/[2]_{q^p} chi(p) [p]_q^n E_{n,chi,q^p}."""
    qp = _pow(q, p)
    corr = gen_euler_number(n, chi, qp) * ((1 + q) / (1 + qp) * _pow(qint(p, q), n))
    cp = chi(p)
    return gen_euler_number(n, chi, q) - cp * corr


def teichmuller_checks(p: int, q: Fraction, M: int, n_max: int, chi: DirichletChar) -> list[str]:
    """Problems found among units x < p^2; empty when all checks hold."""
    problems = []
    for x in range(1, p * p):
        if x % p == 0:
            continue
        w = teichmuller(x, p, M)
        if w ** (p - 1) != reduce_mod_pM(1, p, M):
            problems.append(f"omega({x})^(p-1) != 1 mod p^{M}")
        if w.residue % p != x % p:
            problems.append(f"omega({x}) != {x} mod p")
        brk = reduce_mod_pM(qint(x, q), p, M)
        one_unit = brk * w.inverse()
        if (one_unit - 1).valuation < 1:
            problems.append(f"v_p(<{x}>_q - 1) < 1")
        cval = chi(x)
        if cval == 0:
            continue
        c = embed_padic(cval, p, M) if isinstance(cval, CycloElem) else reduce_mod_pM(cval, p, M)
        for n in range(n_max + 1):
            if c * w ** n * one_unit ** n != c * brk ** n:
                problems.append(f"chi omega^{n}(x)<x>^{n} != chi(x)[x]^{n} at x={x}")
    return problems


def _pt_euler_factor(it: dict) -> dict:
    p, n = it["p"], it["n"]
    chi = _char(it["chi"])
    q = Fraction(it["q"])
    key = f"ef|p={p}|chi={it['chi']}|n={n}"
    base = {"key": _key(p, it["chi"], n), "golden_key": key,
            "params": {"p": p, "chi": it["chi"], "n": n, "q": rat_str(q)}}
    if not _embeddable(chi, p):
        return {**base, "outcome": "skipped", "reason": f"character not embeddable at p={p}"}
    if chi(p) == 0:
        return {**base, "outcome": "fail", "reason": "chi(p) = 0 although gcd(d, p) = 1"}
    lhs = euler_factor_lhs(n, chi, q, p) * it["sign"]
    dbar = chi.d * p // math.gcd(chi.d, p)
    problems = []
    for r in it["rho"]:
        count = sum(1 for x in range(1, dbar * p ** r + 1) if x % p)
        if count != dbar * p ** r - dbar * p ** r // p:
            problems.append(f"X* coverage mismatch at rho={r}")
    sums = [witt_partial_sum(n, chi, q, p, r, prime_to_p=True) for r in it["rho"]]
    vals = [_valuation(s - lhs, p, chi) for s in sums]
    outcome, why = _convergence_outcome(vals, it["rho"], it["golden"].get(key))
    problems += teichmuller_checks(p, q, it["M"], n, chi)
    if problems and outcome != "fail":
        outcome, why = "fail", "; ".join(problems[:5])
    pt = {
        **base,
        "lhs": ser(lhs),
        "samples": [{"level": r, "value": ser(s), "residual_valuation": val_str(v)}
                    for r, s, v in zip(it["rho"], sums, vals)],
        "outcome": outcome,
    }
    if why:
        pt["reason"] = why
    return pt


def suite_euler_factor(grid: dict | None = None, mutate: bool = False, parallelism: int = 1,
                       timing: bool = False, use_golden: bool = True) -> SuiteResult:
    t0 = time.perf_counter()
    grid = {**DEFAULT_EULER_FACTOR, **(grid or {})}
    golden = load_golden("euler_factor") if use_golden else {}
    items = []
    for p in grid["p"]:
        q = _q_for(str(grid["q"]), p)
        check_convergence_precondition(p, q)
        gold = golden if q == 1 + p else {}
        for sel in grid["chars"]:
            if math.gcd(_char(sel).d, p) != 1:
                continue
            for n in grid["n"]:
                items.append({"p": p, "chi": sel, "n": n, "rho": list(grid["rho"]), "golden": gold,
                              "q": str(q), "M": int(grid["teich_precision"]), "sign": -1 if mutate else 1})
    pts = _map(_pt_euler_factor, items, parallelism)
    return _finish("euler_factor", _grid_json(grid), pts, t0, timing)


SUITES = {
    "distribution": suite_distribution,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
    "witt": suite_witt,
    "euler_factor": suite_euler_factor,
}


def suite_all(config: dict | None = None, mutate: bool = False, parallelism: int = 1,
              timing: bool = False) -> list[SuiteResult]:
    config = config or {}
    return [fn(config.get(name), mutate=mutate, parallelism=parallelism, timing=timing)
            for name, fn in SUITES.items()]


CALIBRATED = ("theorem3", "witt", "euler_factor")


def calibrate(suite: str, parallelism: int = 1) -> dict[str, list]:
    """Measured residual-valuation sequences for every point of a convergence suite."""
    if suite not in CALIBRATED:
        raise ValueError(f"{suite} has no calibrated rates")
    res = SUITES[suite](use_golden=False, parallelism=parallelism)
    if not res.passed:
        raise RuntimeError(f"{suite} fails before calibration: {[pt['key'] for pt in res.failures]}")
    return {
        pt["golden_key"]: {str(s["level"]): s["residual_valuation"] for s in pt["samples"]}
        for pt in res.points
        if "samples" in pt
    }
