"""``reconfig`` command line.

Exit codes: 0 ok, 2 usage, 3 validation, 4 budget refusal.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .approx_cut import CutAlgoConfig, run_approx_cut
from .approx_sat import SatAlgoConfig, min_clause_survival, run_approx_sat
from .errors import BudgetExceeded, ReconfigError
from .exact import DEFAULT_BUDGET, opt_cut_exact, opt_sat_exact
from .generators import random_cut_instance, random_e3_formula, random_sat_instance
from .instances import (
    CutReconfigInstance,
    parse_cut_instance,
    parse_dimacs_cnf,
    parse_sat_instance,
    parse_sequence,
    serialize_cut_instance,
    serialize_sat_instance,
    serialize_sequence,
)
from .reductions import (
    build_consistency_tester,
    build_edge_tester,
    build_stripe_tester,
    horn_cnf,
    horn_example,
    ncl_verifier,
    np_gap_reduction,
    parse_andor,
    reduce_2cut_to_kcut,
    reduce_2cut_to_kcut_smallk,
    reduce_6cut_to_2cut,
    reduce_clause_width,
)
from .valuation import GridColoring, sequence_value, stripe_reject_prob, stripe_report, tester_accept_prob

EXIT_USAGE, EXIT_VALIDATION, EXIT_BUDGET = 2, 3, 4


class UsageError(Exception):
    pass


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator} ({float(x):.4f})"


class Report:
    """RunReport: printed as ``key = value`` lines; only wall_time_s varies."""

    def __init__(self, argv):
        self.stream = None
        self.lines = [("command", "reconfig " + " ".join(argv))]
        self.t0 = time.perf_counter()

    def add(self, key, value):
        self.lines.append((key, fmt(value) if isinstance(value, Fraction) else str(value)))

    def digest(self, path: str, data: bytes):
        self.add(f"input.{Path(path).name}.sha256", hashlib.sha256(data).hexdigest())

    def emit(self, out):
        self.add("wall_time_s", f"{time.perf_counter() - self.t0:.3f}")
        for k, v in self.lines:
            print(f"{k} = {v}", file=out)


def _read(path: str, rep: Report) -> bytes:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    rep.digest(path, data)
    return data


def _load_instance(path: str, rep: Report):
    data = _read(path, rep)
    head = b""
    for line in data.splitlines():
        s = line.split(b"#", 1)[0].strip()
        if s:
            head = s
            break
    if head.startswith(b"p cutreconf"):
        return parse_cut_instance(data)
    if head.startswith(b"p satreconf"):
        return parse_sat_instance(data)
    raise UsageError(f"{path}: first line is neither 'p cutreconf' nor 'p satreconf'")


def _write(path: str | None, text: str, rep: Report, key: str):
    if path:
        Path(path).write_text(text)
        rep.add(key, path)


def _serialize(inst) -> str:
    return serialize_cut_instance(inst) if isinstance(inst, CutReconfigInstance) else serialize_sat_instance(inst)


def _frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


# ------------------------------------------------------------------ commands

def cmd_gen(a, rep):
    if a.kind == "cut":
        inst = random_cut_instance(a.n, a.k, float(a.p), seed=a.seed, proper=a.proper)
        text = serialize_cut_instance(inst)
    elif a.kind == "sat":
        inst = random_sat_instance(a.n, a.m, a.k, seed=a.seed)
        text = serialize_sat_instance(inst)
    elif a.kind == "horn":
        text = serialize_sat_instance(horn_example(a.n))
    else:
        phi = random_e3_formula(a.n, a.m, seed=a.seed)
        text = f"p cnf {phi.n} {phi.m}\n" + "".join(" ".join(map(str, c)) + " 0\n" for c in phi.clauses)
    rep.add("seed", a.seed)
    rep.add("instance.sha256", hashlib.sha256(text.encode()).hexdigest())
    if a.output:
        _write(a.output, text, rep, "written")
    else:
        a.out.write(text)
        rep.stream = sys.stderr  # keep stdout a clean instance file


def cmd_exact(a, rep):
    inst = _load_instance(a.instance, rep)
    solve = opt_cut_exact if isinstance(inst, CutReconfigInstance) else opt_sat_exact
    res = solve(inst, budget=a.budget, threads=a.threads)
    rep.add("opt", res.opt)
    rep.add("explored", res.explored)
    rep.add("witness_length", len(res.witness))
    _write(a.output, serialize_sequence(res.witness), rep, "witness")


def cmd_approx_cut(a, rep):
    inst = _load_instance(a.instance, rep)
    if not isinstance(inst, CutReconfigInstance):
        raise UsageError("approx-cut needs a 'p cutreconf' instance")
    res = run_approx_cut(inst, CutAlgoConfig(epsilon=a.epsilon, seed=a.seed, mode=a.mode))
    rep.add("mode", a.mode)
    rep.add("seed", a.seed)
    rep.add("value", res.value)
    rep.add("bound", res.bound)
    if res.root_estimate is not None:
        rep.add("estimator_bound", res.root_estimate)
    rep.add("steps", len(res.sequence))
    for note in res.notes:
        rep.add("note", note)
    _write(a.output, serialize_sequence(res.sequence), rep, "sequence")


def cmd_approx_sat(a, rep):
    inst = _load_instance(a.instance, rep)
    if isinstance(inst, CutReconfigInstance):
        raise UsageError("approx-sat needs a 'p satreconf' instance")
    res = run_approx_sat(inst, SatAlgoConfig(seed=a.seed, mode=a.mode))
    k = inst.formula.k
    rep.add("mode", a.mode)
    rep.add("seed", a.seed)
    rep.add("value", res.value)
    rep.add("clause_survival_min", min_clause_survival(k))
    rep.add("clause_survival_bound", res.bound)
    rep.add("guarantee", 1 - Fraction(5, 2 * k))
    if res.root_estimate is not None:
        rep.add("estimator_bound", res.root_estimate)
    rep.add("steps", len(res.sequence))
    _write(a.output, serialize_sequence(res.sequence), rep, "sequence")


def cmd_reduce(a, rep):
    name = a.name
    if name == "horn-example":
        if a.n is None:
            raise UsageError("horn-example needs --n")
        out, cert = horn_example(a.n), None
    else:
        if not a.input:
            raise UsageError(f"reduce --name {name} needs an input file")
        if name in ("crazy", "smallk", "6to2"):
            inst = _load_instance(a.input, rep)
            seq = parse_sequence(_read(a.seq, rep), inst) if a.seq else None
            if name == "crazy":
                out, cert = reduce_2cut_to_kcut(inst, _need(a.k, "--k"), rho=a.rho or Fraction(1),
                                                source_sequence=seq)
            elif name == "smallk":
                out, cert = reduce_2cut_to_kcut_smallk(inst, _need(a.k, "--k"), p1=a.p1, source_sequence=seq)
            else:
                out, cert = reduce_6cut_to_2cut(inst, source_sequence=seq)
        elif name == "rho":
            out, cert = reduce_clause_width(_load_instance(a.input, rep), _need(a.k, "--k"))
        elif name == "np":
            phi = parse_dimacs_cnf(_read(a.input, rep))
            out, cert = np_gap_reduction(phi, _need(a.k, "--k"))
        else:  # horn-cnf
            g, start, end = parse_andor(_read(a.input, rep))
            out, cert = horn_cnf(ncl_verifier(g), a.lam, start, end)
    text = _serialize(out)
    if a.output:
        _write(a.output, text, rep, "instance")
    rep.add("instance.sha256", hashlib.sha256(text.encode()).hexdigest())
    if cert is None:
        return
    wpath = None
    if cert.completeness_witness is not None and a.output:
        wpath = a.output + ".witness"
        _write(wpath, serialize_sequence(cert.completeness_witness), rep, "witness")
    cert_text = cert.to_text(wpath)
    if a.cert or a.output:
        _write(a.cert or a.output + ".cert", cert_text, rep, "certificate")
    for line in cert_text.splitlines():
        key, _, val = line.partition(" = ")
        rep.add("cert." + key, val)


def _need(val, flag):
    if val is None:
        raise UsageError(f"missing {flag}")
    return val


def cmd_eval(a, rep):
    inst = _load_instance(a.instance, rep)
    seq = parse_sequence(_read(a.sequence, rep), inst)
    rep.add("value", sequence_value(inst, seq))
    rep.add("steps", len(seq))


def _read_grids(data: bytes, k: int, count: int):
    rows = []
    for raw in data.decode().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append([int(t) for t in line.split()])
    if len(rows) != k * count:
        raise UsageError(f"grid file needs {k * count} rows of {k} colors")
    return [GridColoring(k, tuple(map(tuple, rows[i * k:(i + 1) * k]))) for i in range(count)]


def cmd_tester(a, rep):
    data = _read(a.grid, rep)
    k = a.k
    if a.kind == "stripe":
        (g,) = _read_grids(data, k, 1)
        t = build_stripe_tester(k)
        grids, cfg = [g], g.flat()
    else:
        f, g = _read_grids(data, k, 2)
        t = build_consistency_tester(k) if a.kind == "cons" else build_edge_tester(k, a.rho or Fraction(1))
        grids, cfg = [f, g], f.flat() + g.flat()
    acc = tester_accept_prob(t, cfg)
    rep.add("accept", acc)
    rep.add("reject", 1 - acc)
    for name, g in zip(("f", "g"), grids):
        r = stripe_report(g)
        rep.add(f"{name}.dist_h", r.dist_h)
        rep.add(f"{name}.dist_v", r.dist_v)
        rep.add(f"{name}.dec", r.dec)
        rep.add(f"{name}.stripe_reject", stripe_reject_prob(g))


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    threads_default = int(os.environ.get("RECONFIG_THREADS", "1") or 1)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=threads_default)
    common.add_argument("-o", "--output")

    p = argparse.ArgumentParser(prog="reconfig", description="Maxmin reconfiguration toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("kind", choices=["cut", "sat", "horn", "e3"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--m", type=int, default=10)
    g.add_argument("--p", type=_frac, default=Fraction(3, 10))
    g.add_argument("--proper", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("exact", parents=[common], help="exact opt by bottleneck search")
    e.add_argument("instance")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.set_defaults(func=cmd_exact)

    for name, fn in (("approx-cut", cmd_approx_cut), ("approx-sat", cmd_approx_sat)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("instance")
        s.add_argument("--mode", choices=["random", "derand"], default="derand")
        s.add_argument("--seed", type=int, default=0)
        if name == "approx-cut":
            s.add_argument("--epsilon", type=_frac)
        s.set_defaults(func=fn)

    r = sub.add_parser("reduce", parents=[common], help="run a gap reduction")
    r.add_argument("input", nargs="?")
    r.add_argument("--name", required=True,
                   choices=["crazy", "6to2", "smallk", "rho", "np", "horn-cnf", "horn-example"])
    r.add_argument("--k", type=int)
    r.add_argument("--n", type=int)
    r.add_argument("--rho", type=_frac)
    r.add_argument("--p1", type=_frac, default=Fraction(1, 2))
    r.add_argument("--lambda", dest="lam", type=int, default=2)
    r.add_argument("--seq", help="source sequence used to build the completeness witness")
    r.add_argument("--cert")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("eval", parents=[common], help="value of a sequence")
    v.add_argument("instance")
    v.add_argument("sequence")
    v.set_defaults(func=cmd_eval)

    t = sub.add_parser("tester", parents=[common], help="exact tester probabilities on grids")
    t.add_argument("grid")
    t.add_argument("--kind", choices=["stripe", "cons", "edge"], required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--rho", type=_frac)
    t.set_defaults(func=cmd_tester)
    return p


def run_cli(argv: list[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(argv)
    args.out = out
    try:
        args.func(args, rep)
    except UsageError as exc:
        print(f"reconfig: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"reconfig: budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ReconfigError as exc:
        print(f"reconfig: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    rep.emit(rep.stream or out)
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
