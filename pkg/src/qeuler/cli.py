"""Command-line front end.

    qeuler euler-numbers --q 2 --n-max 5
    qeuler measure --k 1 --p 3 --d 1 --q 2 --level 1 --a 1
    qeuler verify theorem1

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction

from .characters import all_chars, parse_char
from .exact_arith import DomainError, UsageError, as_rat, is_prime, rat_str, vp
from .measures import Cylinder, mu_star
from .qcore import euler_number_closed, euler_number_rec, euler_poly_closed, euler_poly_frac, gen_euler_number
from .suites import SUITES, default_parallelism, ser

CONVERGENCE_SUITES = ("theorem3", "witt", "euler_factor")


@dataclass
class RunConfig:
    p: int = 5
    q: Fraction = Fraction(6)
    d: int = 1
    k: int = 1
    n_max: int = 5
    level: int = 1
    a: int = 0
    F: int = 1
    chi: str | None = None
    n: int | None = None
    format: str | None = None
    out: str | None = None
    parallelism: int = field(default_factory=default_parallelism)
    timing: bool = False

    def validate(self, closed_form: bool = False, convergence: bool = False) -> None:
        if not is_prime(self.p) or self.p == 2:
            raise UsageError(f"p must be an odd prime, got {self.p}")
        if self.d < 1 or self.d % 2 == 0:
            raise UsageError(f"d must be odd and >= 1, got {self.d}")
        if math.gcd(self.d, self.p) != 1:
            raise UsageError(f"gcd(d, p) must be 1, got d={self.d}, p={self.p}")
        if self.q in (0, -1):
            raise DomainError(f"q = {self.q} is excluded")
        if closed_form and self.q == 1:
            raise DomainError("q = 1 is only served by the recurrence")
        if convergence and (self.q.denominator % self.p == 0 or vp(self.q - 1, self.p) < 1):
            raise DomainError(f"convergence precondition violated: need v_p(q-1) >= 1 (p={self.p}, q={self.q})")
        if self.parallelism < 1:
            raise UsageError("parallelism must be a positive integer")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config file must hold a JSON object")
    names = {f.name for f in fields(RunConfig)}
    unknown = set(raw) - names - {"grid"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return raw


def build_config(args: argparse.Namespace) -> tuple[RunConfig, dict]:
    raw = _load_config(getattr(args, "config", None))
    grid = raw.pop("grid", {})
    cfg = RunConfig()
    for f in fields(RunConfig):
        if f.name in raw:
            setattr(cfg, f.name, raw[f.name])
        val = getattr(args, f.name, None)
        if val is not None and val is not False:
            setattr(cfg, f.name, val)
    cfg.q = as_rat(cfg.q)
    for name in ("p", "d", "k", "n_max", "level", "a", "F", "parallelism"):
        setattr(cfg, name, int(getattr(cfg, name)))
    if "QEULER_PARALLELISM" in os.environ:
        cfg.parallelism = min(cfg.parallelism, default_parallelism())
    return cfg, grid


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_euler_numbers(cfg: RunConfig, args) -> int:
    cfg.validate(closed_form=args.method == "closed")
    if args.method == "closed":
        values = [euler_number_closed(n, cfg.q) for n in range(cfg.n_max + 1)]
    else:
        values = list(euler_number_rec(cfg.n_max, cfg.q).entries)
    rows = [[n, rat_str(v)] for n, v in enumerate(values)]
    if (cfg.format or "csv") == "csv":
        _emit(_csv(["n", "value"], rows), cfg.out)
    else:
        _emit(_json({"q": rat_str(cfg.q), "method": args.method,
                     "rows": [{"n": n, "value": v} for n, v in rows]}), cfg.out)
    return 0


def cmd_euler_poly(cfg: RunConfig, args) -> int:
    cfg.validate(closed_form=True)
    if cfg.a < 0 or cfg.F < 1:
        raise UsageError("need a >= 0 and F >= 1")
    fn = euler_poly_closed if args.method == "closed" else euler_poly_frac
    rows = [[n, rat_str(fn(n, cfg.q, cfg.a, cfg.F))] for n in range(cfg.n_max + 1)]
    if (cfg.format or "csv") == "csv":
        _emit(_csv(["n", "value"], rows), cfg.out)
    else:
        _emit(_json({"q": rat_str(cfg.q), "a": cfg.a, "F": cfg.F, "method": args.method,
                     "rows": [{"n": n, "value": v} for n, v in rows]}), cfg.out)
    return 0


def cmd_euler_gen(cfg: RunConfig, args) -> int:
    cfg.validate(closed_form=True)
    chi = parse_char(cfg.chi or f"{cfg.d}:0")
    values = [gen_euler_number(n, chi, cfg.q) for n in range(cfg.n_max + 1)]
    fmt = cfg.format or "csv"
    if fmt == "csv":
        rows = [[n, json.dumps(ser(v)) if not isinstance(ser(v), str) else ser(v)] for n, v in enumerate(values)]
        _emit(_csv(["n", "value"], rows), cfg.out)
    else:
        _emit(_json({"q": rat_str(cfg.q), "chi": chi.to_json(),
                     "rows": [{"n": n, "value": ser(v)} for n, v in enumerate(values)]}), cfg.out)
    return 0


def cmd_characters(cfg: RunConfig, args) -> int:
    if cfg.d < 1 or cfg.d % 2 == 0:
        raise UsageError(f"d must be odd and >= 1, got {cfg.d}")
    chars = all_chars(cfg.d)
    if args.index is not None:
        if not 0 <= args.index < len(chars):
            raise UsageError(f"index {args.index} out of range ({len(chars)} characters mod {cfg.d})")
        chars = (chars[args.index],)
        base = args.index
    else:
        base = 0
    if (cfg.format or "json") == "csv":
        rows = [[base + i, c.d, c.order] + [json.dumps(v) if not isinstance(v, str) else v
                                           for v in c.to_json()["values"]] for i, c in enumerate(chars)]
        _emit(_csv(["index", "d", "order"] + [f"chi({a})" for a in range(cfg.d)], rows), cfg.out)
    else:
        _emit(_json([{"index": base + i, **c.to_json()} for i, c in enumerate(chars)]), cfg.out)
    return 0


def cmd_measure(cfg: RunConfig, args) -> int:
    cfg.validate(closed_form=True)
    cyl = Cylinder(cfg.d, cfg.level, cfg.a, cfg.p)
    value = mu_star(cfg.k, cyl, cfg.q)
    fmt = cfg.format or "text"
    if fmt == "text":
        _emit(rat_str(value) + "\n", cfg.out)
    elif fmt == "csv":
        _emit(_csv(["k", "p", "d", "level", "a", "q", "value"],
                   [[cfg.k, cfg.p, cfg.d, cfg.level, cfg.a, rat_str(cfg.q), rat_str(value)]]), cfg.out)
    else:
        _emit(_json({"params": {"k": cfg.k, "p": cfg.p, "d": cfg.d, "level": cfg.level, "a": cfg.a,
                                "q": rat_str(cfg.q)}, "value": rat_str(value)}), cfg.out)
    return 0


def _suite_grid(name: str, cfg: RunConfig, args, grid: dict) -> dict:
    """Command-line overrides narrowing a suite's default grid."""
    g = dict(grid.get(name, {}))
    if args.p is not None:
        g["p"] = [cfg.p]
    if args.q is not None:
        g["q"] = str(cfg.q) if name in CONVERGENCE_SUITES else [str(cfg.q)]
    if args.d is not None and name in ("distribution", "theorem1", "theorem2", "theorem3"):
        g["d"] = [cfg.d]
    if args.chi is not None:
        if name in ("theorem3", "witt", "euler_factor"):
            g["chars"] = [cfg.chi]
        elif name == "theorem2":
            g["d"] = [parse_char(cfg.chi).d]
    if args.n is not None:
        g["n" if name in ("distribution", "witt", "euler_factor") else "k"] = [cfg.n]
    if args.k is not None and name in ("theorem1", "theorem2", "theorem3"):
        g["k"] = [cfg.k]
    return g


def cmd_verify(cfg: RunConfig, args, grid: dict) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    if args.chi is not None:
        parse_char(cfg.chi)
    if args.q is not None:
        for name in names:
            cfg.validate(convergence=name in CONVERGENCE_SUITES)
    results = []
    for name in names:
        res = SUITES[name](_suite_grid(name, cfg, args, grid), mutate=args.mutate,
                           parallelism=cfg.parallelism, timing=cfg.timing)
        results.append(res)
        print(f"{name}: {'PASS' if res.passed else 'FAIL'} ({len(res.points)} points, "
              f"{len(res.failures)} failed)", file=sys.stderr)
    payload = results[0].to_json() if len(results) == 1 else [r.to_json() for r in results]
    _emit(_json(payload), cfg.out)
    return 0 if all(r.passed for r in results) else 1


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qeuler", description="Exact p-adic q-Euler numbers and measures.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig values; flags override it")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--p", type=int)
    common.add_argument("--q", type=str, help="rational, e.g. 6 or 3/2")
    common.add_argument("--d", type=int)
    common.add_argument("--parallelism", type=int)

    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("euler-numbers", parents=[common], help="table of E_{n,q}")
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument("--method", choices=["rec", "closed"], default="rec")

    s = sub.add_parser("euler-poly", parents=[common], help="table of E_{n,q^F}(a/F)")
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--F", type=int)
    s.add_argument("--method", choices=["frac", "closed"], default="frac")

    s = sub.add_parser("euler-gen", parents=[common], help="table of E_{n,chi,q}")
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument("--chi", help="character selector d:index")

    s = sub.add_parser("characters", parents=[common], help="list characters mod d")
    s.add_argument("--index", type=int)

    s = sub.add_parser("measure", parents=[common], help="mu_k*(a + d p^N Z_p)")
    s.add_argument("--k", type=int)
    s.add_argument("--level", type=int)
    s.add_argument("--a", type=int)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", help=f"one of {', '.join(SUITES)}, or all")
    s.add_argument("--chi", help="character selector d:index")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--mutate", action="store_true", help="flip the sign of one side (harness self-test)")
    s.add_argument("--timing", action="store_true", help="record elapsed_ms (otherwise 0, for stable output)")
    return ap


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg, grid = build_config(args)
        handlers = {
            "euler-numbers": cmd_euler_numbers,
            "euler-poly": cmd_euler_poly,
            "euler-gen": cmd_euler_gen,
            "characters": cmd_characters,
            "measure": cmd_measure,
        }
        if args.command == "verify":
            return cmd_verify(cfg, args, grid)
        return handlers[args.command](cfg, args)
    except (UsageError, DomainError) as exc:
        print(f"qeuler: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
