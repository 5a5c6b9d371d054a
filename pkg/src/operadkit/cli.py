"""Command-line interface: ``operadkit <verb> [options]``.

Exit status: 0 when every requested check passes, 1 on a verification
failure, 2 on bad input, 3 when a construction exceeds its truncation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import acceptance
from .bimodules import (check_end_self, check_simplicial, component_census, hochschild,
                        hochschild_pi0, j_object, pi0_j)
from .coproduct import Coproduct, check_uniqueness, parse_word, word_string
from .cosimplicial import (build_cosimplicial, check_cosimplicial, compare_hochschild,
                           cosimplicial_to_json, discrete_limit)
from .errors import OperadError, SchemaError, TruncationExceeded
from .free import labeled_to_dot
from .graded import GradedSet
from .report import Report
from .table import (Multiplication, associative_operad, check_multiplication,
                    endomorphism_set_operad, idempotent_monoid, operad_from_json, operad_to_json,
                    verify_operad)

REPORT_SCHEMA = "operadkit.report/1"


class Output:
    """Collects the payload and text lines of one command and writes them once."""

    def __init__(self, fmt: str, out: str | None):
        self.fmt, self.out = fmt, out
        self.lines: list[str] = []
        self.payload: dict = {}
        self.dot: str | None = None

    def emit(self) -> None:
        if self.fmt == "json":
            text = json.dumps(self.payload, sort_keys=True, indent=2, default=repr)
        elif self.fmt == "dot":
            if self.dot is None:
                raise SchemaError("DOT output is only available for coproduct-normalize")
            text = self.dot
        else:
            text = "\n".join(self.lines)
        if self.out:
            with open(self.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)


def _report_payload(reports: list[Report], **extra) -> dict:
    return {"schema": REPORT_SCHEMA, "ok": all(r.ok for r in reports),
            "reports": [r.to_json() for r in reports], **extra}


def _finish(out: Output, reports: list[Report], **extra) -> int:
    out.payload = _report_payload(reports, **extra)
    out.lines.extend(r.summary() for r in reports)
    out.emit()
    return 0 if all(r.ok for r in reports) else 1


# -- input helpers ----------------------------------------------------------

def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def _end_set(spec: str) -> list:
    """``"3"`` means ``{0,1,2}``; otherwise a comma-separated list of elements."""
    if spec.isdigit():
        return list(range(int(spec)))
    return [s for s in spec.split(",") if s]


def _operad(args, default_L: int = 3):
    L = args.L if getattr(args, "L", None) is not None else default_L
    if getattr(args, "operad", None):
        return operad_from_json(_read_json(args.operad))
    if getattr(args, "end_set", None):
        return endomorphism_set_operad(_end_set(args.end_set), L)
    return associative_operad(L)


def _factor_pair(args):
    if args.operad:
        P = operad_from_json(_read_json(args.operad))
        Q = operad_from_json(_read_json(args.operad2)) if args.operad2 else P
    elif args.end_level_one:
        P = Q = endomorphism_set_operad([0, 1], 1).level_one_part()
    else:
        P = Q = idempotent_monoid()
    return Coproduct([P, Q], ["P", "Q"])


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("bounds must be nonnegative")
    return v


# -- verbs ------------------------------------------------------------------

def cmd_verify_operad(args, out):
    P = operad_from_json(_read_json(args.path))
    return _finish(out, [verify_operad(P)], operad=P.name)


def cmd_make_assoc(args, out):
    out.payload = operad_to_json(associative_operad(args.level))
    out.lines.append(json.dumps(out.payload, sort_keys=True))
    out.emit()
    return 0


def cmd_make_end_set(args, out):
    out.payload = operad_to_json(endomorphism_set_operad(_end_set(args.set), args.level))
    out.lines.append(json.dumps(out.payload, sort_keys=True))
    out.emit()
    return 0


def cmd_coproduct_normalize(args, out):
    cp = _factor_pair(args)
    w = parse_word(cp, args.word)
    nf = cp.normalize(w, args.strategy, random.Random(args.seed))
    out.payload = {"schema": REPORT_SCHEMA, "word": repr(w), "normal_form": repr(nf),
                   "normal_form_word": word_string(nf), "branches": nf.branches}
    out.lines.append(word_string(nf))
    out.dot = labeled_to_dot(nf)
    out.emit()
    return 0


def cmd_coproduct_census(args, out):
    cp = _factor_pair(args)
    c = cp.census(args.level, args.max_beta)
    for k in range(args.max_beta + 1):
        out.lines.append(f"k={k}: |T_k|={c['T'][k]} |C_k|={c['C'][k]} |F_k|={c['F'][k]}")
    for k in range(1, args.max_beta + 1):
        out.lines.append(f"|T_{k}|/|C_{k}|/|F_{k - 1}|/|F_{k}| = "
                         f"{c['T'][k]}/{c['C'][k]}/{c['F'][k - 1]}/{c['F'][k]}")
    ok = c["recursion_holds"] and c["F_matches_normal_forms"]
    out.lines.append("recursion holds" if c["recursion_holds"] else "recursion FAILS")
    out.payload = {"schema": REPORT_SCHEMA, "ok": ok, "census": c}
    out.emit()
    return 0 if ok else 1


def cmd_coproduct_oracle(args, out):
    cp = _factor_pair(args)
    return _finish(out, [check_uniqueness(cp, args.level, args.max_beta)])


def cmd_hochschild(args, out):
    P = _operad(args, default_L=1)
    H = hochschild(P, args.n_max)
    sizes = [list(d.counts()) for d in H.degrees]
    return _finish(out, [check_simplicial(H), hochschild_pi0(H)], degree_sizes=sizes)


def cmd_pi0_j(args, out):
    levels = [[] for _ in range(max(args.arities) + 1)]
    for k, a in enumerate(args.arities):
        levels[a].append(f"x{k}")
    J = j_object(GradedSet.from_levels(levels), args.k_max, args.level, args.max_beta)
    reps = [pi0_j(J), component_census(J)]
    out.lines.append(f"pi0 J by level: {reps[0].data['classes_by_level']}")
    return _finish(out, reps)


def cmd_end_operad(args, out):
    Q = _operad(args, default_L=2)
    rep = check_end_self(Q, args.n_max, args.cap)
    out.lines.append(f"|E_Q(Q)(n)| = {rep.data['sizes']}, |Q(n)| = {rep.data['Q_sizes']}")
    return _finish(out, [rep])


def cmd_cosimplicial(args, out):
    O = _operad(args, default_L=max(3, args.N))
    m = Multiplication.named(O, args.eps, args.mu)
    mult = check_multiplication(m)
    if not mult.ok:
        return _finish(out, [mult])
    if args.action == "build":
        c = build_cosimplicial(m, args.N)
        out.payload = cosimplicial_to_json(c)
        out.lines.append(f"{c.name}: levels {[len(lv) for lv in c.levels]}, "
                         f"{len(c.cofaces)} coface and {len(c.codegeneracies)} codegeneracy tables")
        out.emit()
        return 0
    if args.action == "check":
        return _finish(out, [mult, check_cosimplicial(build_cosimplicial(m, args.N))])
    if args.action == "limit":
        lim = discrete_limit(build_cosimplicial(m, max(args.N, 1)))
        out.lines.append(f"limit ({len(lim)} points): {', '.join(map(str, lim))}")
        out.payload = {"schema": REPORT_SCHEMA, "ok": True, "limit": lim, "size": len(lim)}
        out.emit()
        return 0
    return _finish(out, [compare_hochschild(m, args.N)])


def cmd_selftest(args, out):
    chosen = [c for c in acceptance.CRITERIA if not args.only or c.number in args.only]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(acceptance.run_criterion, chosen))
    else:
        outcomes = [acceptance.run_criterion(c) for c in chosen]
    out.lines.extend(o.line() for o in outcomes)
    passed = all(o.passed for o in outcomes)
    out.lines.append(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} criteria passed")
    out.payload = {"schema": REPORT_SCHEMA, "ok": passed, "criteria": [o.to_json() for o in outcomes]}
    out.emit()
    return 0 if passed else 1


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--jobs", type=_nonneg, default=1, help="worker processes (selftest)")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--out", help="write output to this file")

    parser = argparse.ArgumentParser(prog="operadkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify-operad", parents=[common], help="check an operad JSON file")
    p.add_argument("path", help="operad JSON, or - for stdin")
    p.set_defaults(func=cmd_verify_operad)

    p = sub.add_parser("make-assoc", parents=[common], help="emit the associative operad")
    p.add_argument("level", type=_nonneg)
    p.set_defaults(func=cmd_make_assoc)

    p = sub.add_parser("make-end-set", parents=[common], help="emit End(S)")
    p.add_argument("set", help="size n for {0..n-1}, or a comma-separated list")
    p.add_argument("level", type=_nonneg)
    p.set_defaults(func=cmd_make_end_set)

    def pair_options(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--monoid-idempotent", action="store_true",
                       help="P = Q = {1, a} with a·a = a (default)")
        g.add_argument("--end-level-one", action="store_true", help="P = Q = End({0,1})(1)")
        g.add_argument("--operad", help="operad JSON for P (and Q unless --operad2)")
        p.add_argument("--operad2", help="operad JSON for Q")

    p = sub.add_parser("coproduct-normalize", parents=[common], help="normal form of a word")
    pair_options(p)
    p.add_argument("word", help="e.g. 'a_P·a_P·1_Q·a_Q' or 'max_P(e, not_Q)'")
    p.add_argument("--strategy", choices=["innermost", "random"], default="innermost",
                   help="rewrite order; random uses --seed")
    p.set_defaults(func=cmd_coproduct_normalize)

    for verb, func, text in (("coproduct-census", cmd_coproduct_census, "word census T/C/F"),
                             ("coproduct-oracle", cmd_coproduct_oracle, "congruence-closure check")):
        p = sub.add_parser(verb, parents=[common], help=text)
        pair_options(p)
        p.add_argument("--level", type=_nonneg, default=1)
        p.add_argument("--max-beta", type=_nonneg, default=3)
        p.set_defaults(func=func)

    def operad_options(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--operad", help="operad JSON")
        g.add_argument("--end-set", help="End(S) for S a size or comma list")
        g.add_argument("--assoc", action="store_true", help="the associative operad (default)")
        p.add_argument("--L", type=_nonneg, help="truncation level for built-in operads")

    p = sub.add_parser("hochschild", parents=[common], help="H(P) identities and pi0")
    operad_options(p)
    p.add_argument("--n-max", type=_nonneg, default=2)
    p.set_defaults(func=cmd_hochschild)

    p = sub.add_parser("pi0-j", parents=[common], help="pi0 of J for a free operad")
    p.add_argument("--arities", type=lambda s: [_nonneg(a) for a in s.split(",")], default=[2],
                   help="generator arities, e.g. 2 or 2,1")
    p.add_argument("--level", type=_nonneg, default=4)
    p.add_argument("--k-max", type=_nonneg, default=2)
    p.add_argument("--max-beta", type=_nonneg, default=3)
    p.set_defaults(func=cmd_pi0_j)

    p = sub.add_parser("end-operad", parents=[common], help="E_Q(Q) and its comparison with Q")
    operad_options(p)
    p.add_argument("--n-max", type=_nonneg, default=2)
    p.add_argument("--cap", type=_nonneg, default=200_000, help="cap on generator assignments")
    p.set_defaults(func=cmd_end_operad)

    p = sub.add_parser("cosimplicial", parents=[common], help="the cosimplicial object O(•)")
    p.add_argument("action", choices=["build", "check", "limit", "compare"])
    operad_options(p)
    p.add_argument("--eps", default="eps", help="id or alias of the unit in O(0)")
    p.add_argument("--mu", default="mu", help="id or alias of the product in O(2)")
    p.add_argument("--N", type=_nonneg, default=2)
    p.set_defaults(func=cmd_cosimplicial)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=lambda s: [int(x) for x in s.split(",")],
                   help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format, args.out)
    try:
        return args.func(args, out)
    except TruncationExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SchemaError, KeyError, ValueError, OperadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
