"""Command-line interface: ``qkrull {analyze,query,dot,verify,format}``.

Exit codes: 0 success, 1 verification failure, 2 capability error,
64 usage/parse/input error.  Every result is a JSON document on stdout;
``--pretty`` switches to a human-readable rendering.
"""
from __future__ import annotations

import argparse
import difflib
import json
import sys
from pathlib import Path

from . import schemas
from .content import content_q_lemma_check, dm_check, split_t
from .errors import CapabilityError, InvariantViolation, PreconditionNotMet, StructuralError
from .monomial_ideals import MonomialIdeal, min_primes_monomial
from .parsing import ParseError, parse_polynomial, parse_polynomial_list
from .qring import (EXTENSION_VARIABLE, PrimeRep, QuotientRing, RIdeal, analyze, annihilator,
                    extend_poly, height, is_dense, is_semiregular, prime_poset, q_closure,
                    q_closure_member, quotient_by_nil)
from .ringfile import RingFile, format_ring_file, load_ring, parse_ring_file
from .verify import PROPERTY_IDS, CorpusSpec, format_table, run_corpus

EXIT_OK, EXIT_FAIL, EXIT_CAPABILITY, EXIT_USAGE = 0, 1, 2, 64

QUERY_COMMANDS = tuple(schemas.QUERY)


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("usage", message)
        raise SystemExit(EXIT_USAGE)


def _emit_error(kind: str, message: str, **extra):
    print(json.dumps({"error": kind, "message": message, **extra}), file=sys.stderr)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _write(text: str):
    sys.stdout.write(text)


# -- shared argument handling ------------------------------------------------

def _load(args) -> tuple[RingFile, QuotientRing]:
    if args.file is None:
        raise UsageError("a .ring FILE is required")
    return load_ring(args.file, decomposition=getattr(args, "decomposition", None))


def _ideal_arg(text: str, rf: RingFile, R: QuotientRing) -> RIdeal:
    """``@name`` for a named ideal of the file, else a comma-separated polynomial list."""
    text = text.strip()
    if text.startswith("@"):
        name = text[1:]
        if name not in rf.named:
            known = ", ".join(sorted(rf.named)) or "none"
            raise UsageError(f"unknown named ideal {name!r} (known: {known})")
        return RIdeal.generated(R, rf.named[name])
    return RIdeal.generated(R, parse_polynomial_list(text, R.ambient, "<argument>"))


def _gen_strings(A: RIdeal) -> list[str]:
    return [str(g) for g in A.generators()]


def _ideal_height(R: QuotientRing, A: RIdeal) -> int:
    """ht(A) = min height of a prime containing A; exact for monomial A + I."""
    if A.is_unit():
        raise StructuralError("the unit ideal has no height")
    if A.is_monomial():
        mono = MonomialIdeal.from_poly_ideal(A.preimage)
        return min(height(R, PrimeRep.from_monomial(R.ambient, p)) for p in min_primes_monomial(mono))
    return height(R, PrimeRep.from_ideal(A.preimage))


def _tpair(R: QuotientRing, g_text: str, f_text: str):
    """Parse g, f in R's ambient ring extended by t and split them into t-coefficients."""
    t_name = R.ambient.fresh_name(EXTENSION_VARIABLE)
    big = R.ambient.extend([t_name])
    t = big.nvars - 1
    g = split_t(parse_polynomial(g_text, big, "<g>"), t, R.ambient)
    f = split_t(parse_polynomial(f_text, big, "<f>"), t, R.ambient)
    return g, f


# -- commands ----------------------------------------------------------------

def _pretty_analysis(d: dict) -> str:
    lines = [f"ring       {d['ring']}", f"dim        {d['dim']}", f"q_dim      {d['q_dim']}",
             f"reduced    {d['reduced']}", f"tau_q_vnr  {d['tau_q_vnr']}", f"tainted    {d['tainted']}",
             "ass (height):"]
    lines += [f"  {p}  {d['heights'][p]}" for p in d["ass"]]
    lines.append("min:   " + " ".join(d["min"]))
    lines.append("q_max: " + " ".join(d["q_max"]))
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    if args.json_schema:
        _write(_dump(schemas.ANALYZE))
        return EXIT_OK
    _, R = _load(args)
    if args.nil_quotient:
        R = quotient_by_nil(R)
    if args.extend:
        R = extend_poly(R)
    result = analyze(R).to_dict()
    _write(_pretty_analysis(result) if args.pretty else _dump(result))
    return EXIT_OK


def _query_result(sub: str, rf: RingFile, R: QuotientRing, params: list[str]) -> dict:
    arity = {"qclosure-member": 2, "dm-check": 2, "content-lemma": 2, "extend": 0}.get(sub, 1)
    if len(params) != arity:
        raise UsageError(f"query {sub} takes {arity} argument(s), got {len(params)}")
    if sub == "dense":
        return {"dense": is_dense(R, _ideal_arg(params[0], rf, R))}
    if sub == "semiregular":
        return {"semiregular": is_semiregular(R, _ideal_arg(params[0], rf, R))}
    if sub == "qclosure-member":
        A = _ideal_arg(params[0], rf, R)
        r = parse_polynomial(params[1], R.ambient, "<element>")
        return {"member": q_closure_member(R, A, r)}
    if sub == "qclosure":
        return {"generators": _gen_strings(q_closure(R, _ideal_arg(params[0], rf, R)))}
    if sub == "ann":
        return {"generators": _gen_strings(annihilator(R, _ideal_arg(params[0], rf, R)))}
    if sub == "height":
        return {"height": _ideal_height(R, _ideal_arg(params[0], rf, R))}
    if sub == "extend":
        S = extend_poly(R)
        return {"extension_variable": S.names[S.extension_var], "analysis": analyze(S).to_dict()}
    g, f = _tpair(R, *params)
    if sub == "dm-check":
        return {"k": dm_check(R, g, f), "deg_t_f": max(len(f) - 1, 0)}
    try:
        return {"applicable": True, "holds": content_q_lemma_check(R, g, f), "reason": None}
    except PreconditionNotMet as exc:
        return {"applicable": False, "holds": None, "reason": exc.reason}


def cmd_query(args) -> int:
    if args.json_schema:
        _write(_dump(schemas.QUERY[args.sub]))
        return EXIT_OK
    rf, R = _load(args)
    result = _query_result(args.sub, rf, R, args.params)
    if args.pretty:
        _write("".join(f"{k}: {v}\n" for k, v in result.items()))
    else:
        _write(_dump(result))
    if args.sub == "content-lemma" and result["holds"] is False:
        return EXIT_FAIL
    return EXIT_OK


def render_dot(R: QuotientRing) -> str:
    """The poset of monomial primes containing I, smaller primes pointing to larger."""
    poset = prime_poset(R)
    names = R.names

    def label(mask):
        return "(" + ", ".join(names[i] for i in range(R.nvars) if mask >> i & 1) + ")" if mask else "(0)"

    lines = ["digraph primes {", "  rankdir=BT;", "  node [shape=circle];"]
    for s in poset.primes:
        status = "q-ideal" if s in poset.non_semiregular else "semiregular"
        shape = ", shape=doublecircle" if s in poset.q_max else ""
        lines.append(f'  "{label(s)}" [label="{label(s)}\\n{status}"{shape}];')
    for a, b in sorted(poset.covers, key=lambda e: (poset.primes.index(e[0]), poset.primes.index(e[1]))):
        lines.append(f'  "{label(a)}" -> "{label(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_dot(args) -> int:
    _, R = _load(args)
    _write(render_dot(R))
    return EXIT_OK


def _suite(values: list[str] | None) -> list[str] | None:
    if not values:
        return None
    pids = [p.strip() for v in values for p in v.split(",") if p.strip()]
    unknown = [p for p in pids if p not in PROPERTY_IDS]
    if unknown:
        raise UsageError(f"unknown property id(s) {unknown}; choose from {', '.join(PROPERTY_IDS)}")
    return list(dict.fromkeys(pids))


def cmd_verify(args) -> int:
    if args.json_schema:
        _write(_dump(schemas.VERIFY))
        return EXIT_OK
    try:
        kw = {"seed": args.seed, "n_random": args.count}
        if args.draws is not None:
            kw["draws"] = args.draws
        if args.families is not None:
            kw["named_families"] = tuple(f for f in args.families.split(",") if f)
        spec = CorpusSpec(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_corpus(spec, _suite(args.suite), jobs=args.jobs)
    text = _dump(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    _write(format_table(report) + "\n" if args.pretty else text)
    s = report["summary"]
    print(f"pass {s['pass']}  fail {s['fail']}  skip {s['skip']}", file=sys.stderr)
    status = EXIT_FAIL if s["fail"] else EXIT_OK
    if args.expect:
        expected = Path(args.expect).read_text(encoding="utf-8")
        if expected != text:
            diff = difflib.unified_diff(expected.splitlines(True), text.splitlines(True),
                                        fromfile=str(args.expect), tofile="actual")
            sys.stderr.writelines(diff)
            status = EXIT_FAIL
    return status


def cmd_format(args) -> int:
    path = Path(args.file)
    _write(format_ring_file(parse_ring_file(path.read_text(encoding="utf-8"), str(path))))
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="qkrull", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("analyze", help="full q-theoretic report of a ring")
    p.add_argument("file", nargs="?", help=".ring presentation file")
    p.add_argument("--nil-quotient", action="store_true", help="analyze R/Nil(R) instead")
    p.add_argument("--extend", action="store_true", help="analyze R[t] instead")
    p.add_argument("--decomposition", help="supplied primary decomposition file")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--json-schema", action="store_true", help="print the output schema and exit")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("query", help="a single q-theoretic question about a ring")
    p.add_argument("file", help=".ring presentation file")
    p.add_argument("sub", choices=QUERY_COMMANDS, metavar="SUBCOMMAND",
                   help=" | ".join(QUERY_COMMANDS))
    p.add_argument("params", nargs="*", help="ideals as 'f, g, ...' or @name; elements as polynomials")
    p.add_argument("--decomposition", help="supplied primary decomposition file")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--json-schema", action="store_true", help="print the output schema and exit")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("dot", help="DOT graph of the monomial-prime poset")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("verify", help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=100, help="number of random rings")
    p.add_argument("--suite", action="append", help="property ids (comma-separated, repeatable)")
    p.add_argument("--draws", type=int, help="(g, f) draws per named ring")
    p.add_argument("--families", help="comma-separated named families")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="also write the JSON report here")
    p.add_argument("--expect", help="fail with a diff unless the report equals this file")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--json-schema", action="store_true", help="print the output schema and exit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("format", help="print a .ring file in canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_format)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ParseError as exc:
        print(exc.render(), file=sys.stderr)
        _emit_error(exc.kind, exc.message, line=exc.line, column=exc.col, source=exc.source)
        return EXIT_USAGE
    except CapabilityError as exc:
        _emit_error("capability", str(exc), missing=exc.missing)
        return EXIT_CAPABILITY
    except InvariantViolation as exc:
        _emit_error("invariant", str(exc))
        return EXIT_FAIL
    except (UsageError, StructuralError) as exc:
        _emit_error("usage", str(exc))
        return EXIT_USAGE
    except OSError as exc:
        _emit_error("io", f"{exc.filename or ''}: {exc.strerror or exc}".lstrip(": "))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
