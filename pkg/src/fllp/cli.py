"""Command line interface.

Subcommands: ``domain`` prints the truth scale (and, on request, the
inverse hedge mappings), ``check`` parses and validates a program,
``query`` answers queries top-down (one-shot or as a small REPL),
``model`` computes the least model bottom-up, ``surface`` evaluates a
control file, and ``compile`` emits plain clause text.

The algebra is taken from ``--algebra``, else from the program's own
``use algebra`` directive, else from the file named by the
``FLLP_ALGEBRA`` environment variable, else the built-in default.

Exit codes: 0 on success, 1 for usage, parse or validation problems, 2
when resources ran out (grounding cap, or a depth-limited search that may
have missed answers).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

from .algebra import (
    DEFAULT_ALGEBRA_CONFIG,
    AlgebraError,
    TruthDomain,
    load_algebra_config,
)
from .control import format_surface, goodness_surface, parse_control_file
from .fixpoint import GroundingLimitError, dump_model, least_model
from .inverse import InverseTableError, build_inverse_table
from .lang import (
    ParseError,
    format_value,
    load_program,
    parse_query,
    validate_program,
)
from .prolog import compile_program, compile_query
from .solver import SolveOptions, format_answer, solve

ENV_ALGEBRA = "FLLP_ALGEBRA"


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _ArgumentParser:
    top = _ArgumentParser(prog="fllp", description=__doc__.split("\n\n")[0])
    sub = top.add_subparsers(dest="command", required=True)

    def algebra_opt(p):
        p.add_argument("--algebra", metavar="FILE", help="algebra config file")

    p = sub.add_parser("domain", help="print the truth domain")
    algebra_opt(p)
    p.add_argument("--inverse", action="store_true", help="also print inverse mappings")
    p.add_argument("--out", metavar="FILE", help="write to a file instead of stdout")

    p = sub.add_parser("check", help="parse and validate a program")
    algebra_opt(p)
    p.add_argument("program", help="program file")
    p.add_argument("--safe", action="store_true", help="require ground facts and range-restricted rules")

    p = sub.add_parser("query", help="answer queries top-down")
    algebra_opt(p)
    p.add_argument("program", help="program file")
    p.add_argument("-q", "--query", help="query; omit for a REPL on stdin")
    p.add_argument("--depth", type=int, default=64, metavar="N",
                   help="resolution depth limit, 0 for unlimited (default 64)")
    p.add_argument("--threshold", metavar="GRADE",
                   help="only answers at or above this grade ('probably true' or v30)")
    p.add_argument("--best", action="store_true", help="best answer per binding only")
    p.add_argument("--exhaustive", action="store_true",
                   help="explore statements in program order instead of best-first")
    p.add_argument("--trace", action="store_true", help="print resolution steps")
    p.add_argument("--out", metavar="FILE", help="write answers to a file")

    p = sub.add_parser("model", help="compute the least model bottom-up")
    algebra_opt(p)
    p.add_argument("program", help="program file")
    p.add_argument("--mode", choices=("naive", "delta"), default="naive",
                   help="iteration strategy (default naive)")
    p.add_argument("--out", metavar="FILE", help="write the model to a file")

    p = sub.add_parser("surface", help="evaluate a control file")
    algebra_opt(p)
    p.add_argument("control", help="control file")
    p.add_argument("--out", metavar="FILE", help="write the surface to a file")

    p = sub.add_parser("compile", help="emit plain clause text")
    algebra_opt(p)
    p.add_argument("program", help="program file")
    p.add_argument("-q", "--query", help="also emit this query")
    p.add_argument("--out", metavar="FILE", help="write clauses to a file")
    return top


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _errors(exc) -> int:
    violations = getattr(exc, "violations", None) or [str(exc)]
    for v in violations:
        print(f"error: {v}", file=sys.stderr)
    return 1


def _config_text(algebra: str | None) -> str:
    if algebra:
        return Path(algebra).read_text(encoding="utf-8")
    env = os.environ.get(ENV_ALGEBRA)
    if env:
        return Path(env).read_text(encoding="utf-8")
    return DEFAULT_ALGEBRA_CONFIG


def _load(args) -> tuple:
    """Program plus inverse table for subcommands that read a program."""
    env = os.environ.get(ENV_ALGEBRA)
    default = Path(env).read_text(encoding="utf-8") if env else None
    return load_program(args.program, args.algebra, default_config=default)


def _parse_grade(domain: TruthDomain, text: str) -> int:
    m = re.fullmatch(r"v(\d+)", text.strip())
    if m:
        idx = int(m.group(1))
        if idx > domain.n:
            raise ValueError(f"v{idx} is outside the domain (max v{domain.n})")
        return idx
    return domain.parse_literal(text)


# -- subcommands ------------------------------------------------------------

def _cmd_domain(args) -> int:
    algebra, domain, overrides = load_algebra_config(_config_text(args.algebra))
    lines = [format_value(domain, i) for i in range(len(domain))]
    if args.inverse:
        table = build_inverse_table(domain, overrides)
        for decl in algebra.spec.hedges:
            lines.append("")
            lines.append(f"inverse {decl.name}:")
            col = table.columns[decl.name]
            for i in range(len(domain)):
                lines.append(f"  {format_value(domain, i)} -> {format_value(domain, col[i])}")
    _emit("\n".join(lines) + "\n", getattr(args, "out", None))
    return 0


def _cmd_check(args) -> int:
    program, table = _load(args)
    problems = validate_program(program, table.domain, safe=args.safe)
    if problems:
        for p in problems:
            print(f"error: {p}", file=sys.stderr)
        return 1
    n_facts = len(program.facts)
    n_rules = len(program.rules)
    print(f"ok: {n_facts} fact(s), {n_rules} rule(s)")
    return 0


def _run_query(program, table, text: str, opts: SolveOptions, out_lines: list[str]) -> int:
    query = parse_query(text, table.domain)
    result = solve(program, table, query, opts)
    out_lines.extend(result.trace)
    for answer in result.answers:
        out_lines.append(format_answer(table.domain, answer))
    if not result.answers:
        out_lines.append("no answers.")
    if result.depth_exhausted:
        print(
            "warning: depth limit reached, the answer set may be incomplete",
            file=sys.stderr,
        )
        return 2
    return 0


def _cmd_query(args) -> int:
    program, table = _load(args)
    threshold = None
    if args.threshold:
        threshold = _parse_grade(table.domain, args.threshold)
    opts = SolveOptions(
        depth=None if args.depth == 0 else args.depth,
        threshold=threshold,
        best=args.best,
        exhaustive=args.exhaustive,
        trace=args.trace,
    )
    if args.query is not None:
        lines: list[str] = []
        code = _run_query(program, table, args.query, opts, lines)
        _emit("\n".join(lines) + "\n", args.out)
        return code

    # REPL: one query per line, empty lines skipped, quit/exit to leave.
    code = 0
    interactive = sys.stdin.isatty()
    while True:
        try:
            line = input("?- " if interactive else "")
        except EOFError:
            break
        line = line.strip()
        if not line:
            continue
        if line in ("quit", "exit", "quit.", "exit."):
            break
        lines = []
        try:
            code = max(code, _run_query(program, table, line, opts, lines))
        except (ParseError, ValueError) as exc:
            _errors(exc)
            continue
        print("\n".join(lines))
    return code


def _cmd_model(args) -> int:
    program, table = _load(args)
    model, rounds = least_model(program, table, mode=args.mode)
    lines = dump_model(model, table.domain)
    lines.append(f"iterations: {rounds}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_surface(args) -> int:
    algebra, domain, overrides = load_algebra_config(_config_text(args.algebra))
    table = build_inverse_table(domain, overrides)
    cs = parse_control_file(Path(args.control).read_text(encoding="utf-8"), domain)
    surface = goodness_surface(cs, table)
    _emit(format_surface(cs, domain, surface), args.out)
    return 0


def _cmd_compile(args) -> int:
    program, table = _load(args)
    text = compile_program(program, table)
    if args.query:
        text += compile_query(parse_query(args.query, table.domain), table) + "\n"
    _emit(text, args.out)
    return 0


_COMMANDS = {
    "domain": _cmd_domain,
    "check": _cmd_check,
    "query": _cmd_query,
    "model": _cmd_model,
    "surface": _cmd_surface,
    "compile": _cmd_compile,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except GroundingLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, InverseTableError, ParseError) as exc:
        return _errors(exc)
    except (OSError, ValueError) as exc:
        return _errors(exc)


if __name__ == "__main__":
    sys.exit(main())
