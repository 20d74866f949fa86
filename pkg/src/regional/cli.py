"""Command-line front end.

Exit codes: 0 success, 1 internal error or failed verification,
2 invalid input, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import calculus, complex as chains, diagram, invariants, moves
from .errors import CapError, InputError, RegionalError

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    inputs: List[str] = field(default_factory=list)
    cap: int = calculus.WORD_CAP
    order: int = 2
    fmt: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.cap < 0:
            raise InputError("word cap must be non-negative")
        if self.order > invariants.SERIES_MAX_ORDER:
            raise CapError(f"order {self.order} exceeds the supported maximum {invariants.SERIES_MAX_ORDER}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def _fraction_text(x) -> str:
    return str(Fraction(x))


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, payload: dict, lines: Sequence[str]):
        if self.fmt == "json":
            json.dump(payload, self.stream, sort_keys=True, indent=2)
            self.stream.write("\n")
        else:
            for line in lines:
                self.stream.write(line + "\n")


# ----------------------------------------------------------- commands

def cmd_resolve(args, cfg: RunConfig, out: Output) -> int:
    d = diagram.parse_pd(_read(args.pd))
    res = diagram.resolve(d, args.word)
    code = diagram.serialize_pd(res)
    out.emit({"word": args.word, "r": d.r, "pd": code}, [code])
    return EXIT_OK


def _system(args, cfg: RunConfig):
    if args.group:
        g = calculus.GroupProductSystem.from_json(_read_json(args.group))
        if g.r > cfg.cap:
            raise calculus.CapExceeded(f"{g.r} regions exceeds the cap r <= {cfg.cap}")
        names = g.group.names
        return g.as_system(), (lambda label: names[label])
    if not args.pd:
        raise InputError("one of --pd or --group is required")
    d = diagram.parse_pd(_read(args.pd))
    return calculus.knot_system(d, cfg.cap), None


def cmd_sum(args, cfg: RunConfig, out: Output) -> int:
    system, rename = _system(args, cfg)
    if args.mode == "alt":
        total = calculus.alternating_sum(system, cfg.cap)
    else:
        total = calculus.weighted_sum(system, cfg.cap)
    if rename is not None:
        if args.mode == "alt":
            total = total.map_basis(rename)
        else:
            total = total.map_basis(lambda b: (b[0], rename(b[1])))
    out.emit({"mode": args.mode, "r": system.r, "sum": total.to_json()}, [total.to_text()])
    return EXIT_OK


def cmd_boundary(args, cfg: RunConfig, out: Output) -> int:
    ch = chains.ChainElement.from_json(_read_json(args.chain))
    res = chains.boundary(ch)
    out.emit({"input": ch.to_json(), "boundary": res.to_json()},
             [f"degree {res.degree}: {res.to_text()}"])
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig, out: Output) -> int:
    d = diagram.parse_pd(_read(args.pd))
    n = cfg.order
    if n > d.r:
        raise InputError(
            f"order {n} needs at least {n} double points to say anything ({d.r} given); "
            f"vanishing is claimed only when r >= order + 1"
        )
    system = calculus.knot_system(d, cfg.cap)
    invs = [(invariants.series_invariant(m), m) for m in range(1, n + 1)]
    if n >= 2:
        invs.insert(0, (invariants.v2, 2))
    reports = [invariants.vassiliev_vanishing_check(inv, system, order) for inv, order in invs]
    lines = [f"{rep.invariant}\torder={rep.order}\tr={rep.r}\tvalue={_fraction_text(rep.value)}\t{rep.status}"
             for rep in reports]
    out.emit({"r": d.r, "order": n, "reports": [rep.to_json() for rep in reports]}, lines)
    return EXIT_INTERNAL if any(rep.status == "FAIL" for rep in reports) else EXIT_OK


def _load_items(items, base: str, loader):
    out = []
    for item in items:
        if isinstance(item, str):
            out.append(loader(_read_json(os.path.join(base, item))))
        else:
            out.append(loader(item))
    return out


def cmd_rank(args, cfg: RunConfig, out: Output) -> int:
    manifest = _read_json(args.manifest)
    base = os.path.dirname(os.path.abspath(args.manifest))
    kind = manifest.get("kind", "difference")
    if kind == "difference":
        gens_r = _load_items(manifest.get("gens_r", []), base, chains.ChainElement.from_json)
        gens_r1 = _load_items(manifest.get("gens_r1", []), base, chains.ChainElement.from_json)
        info = chains.difference_rank(gens_r, gens_r1)
    elif kind == "vassiliev":
        sums = _load_items(manifest.get("sums", []), base, calculus.FormalSum.from_json)
        info = chains.vassiliev_quotient_rank(manifest.get("classes", []), sums)
    else:
        raise InputError(f"unknown manifest kind {kind!r}")
    payload = info.to_json()
    payload["kind"] = kind
    lines = [f"{info.label}"] + [f"{k}\t{payload[k]}" for k in
                                  ("ambient_dim", "rank_span", "rank_boundaries", "rank_quotient", "torsion")]
    out.emit(payload, lines)
    return EXIT_OK


def cmd_invariant(args, cfg: RunConfig, out: Output) -> int:
    d = diagram.parse_pd(_read(args.pd))
    if args.perturb:
        d = moves.perturb(d, args.perturb, random.Random(cfg.seed))
    bracket = invariants.kauffman_bracket(d)
    jones = invariants.jones(d)
    conway = invariants.conway(d)
    fp = invariants.KnotClass(jones, conway)
    series = [invariants.jones_series_coefficient(fp, m) for m in range(cfg.order + 1)]
    payload = {
        "crossings": d.n,
        "writhe": invariants.writhe(d),
        "bracket": bracket.to_json(),
        "jones": jones.to_json(),
        "conway": conway.to_json(),
        "v2": invariants.v2(fp),
        "series": [_fraction_text(x) for x in series],
        "class": fp.label,
    }
    lines = [
        f"class\t{fp.label}",
        f"crossings\t{d.n}",
        f"writhe\t{payload['writhe']}",
        f"bracket\t{bracket}",
        f"jones\t{jones}",
        f"conway\t{conway}",
        f"v2\t{payload['v2']}",
    ] + [f"series[{m}]\t{_fraction_text(x)}" for m, x in enumerate(series)]
    out.emit(payload, lines)
    return EXIT_OK


# -------------------------------------------------------------- parser

def _global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    # subcommands accept the same flags; SUPPRESS keeps them from clobbering
    # values given before the subcommand name
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--cap", type=int, default=d(calculus.WORD_CAP), help="maximum number of regions r")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized perturbations")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regional", description=__doc__.splitlines()[0])
    _global_flags(p, True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("resolve", help="resolve the double points of a diagram by a word")
    s.add_argument("--pd", required=True)
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("sum", help="alternating or word-weighted sum of a system")
    s.add_argument("--pd")
    s.add_argument("--group", help="group-product system as JSON")
    s.add_argument("--mode", choices=("alt", "weighted"), default="alt")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("boundary", help="apply the boundary map to a chain")
    s.add_argument("--chain", required=True)
    s.set_defaults(func=cmd_boundary)

    s = sub.add_parser("verify", help="check vanishing of finite-order invariants")
    s.add_argument("--pd", required=True)
    s.add_argument("--order", type=int, default=2)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("rank", help="sampled difference-group or quotient ranks")
    s.add_argument("--manifest", required=True)
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("invariant", help="print bracket, Jones, Conway, v2 and series coefficients")
    s.add_argument("--pd", required=True)
    s.add_argument("--order", type=int, default=2, help="highest series coefficient")
    s.add_argument("--perturb", type=int, default=0, help="random Reidemeister moves applied first")
    s.set_defaults(func=cmd_invariant)
    for s in sub.choices.values():
        _global_flags(s, False)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        inputs = [v for k in ("pd", "group", "chain", "manifest") if (v := getattr(args, k, None))]
        cfg = RunConfig(args.command, inputs, cap=args.cap, order=getattr(args, "order", 2),
                        fmt=args.format, seed=args.seed)
        return args.func(args, cfg, Output(args.format, stdout))
    except InputError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except CapError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_CAP
    except RegionalError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
