"""Rule-based control tables reduced to graded logic programs.

A control file declares two finite universes of points, a set of linguistic
rules pairing a hedged input term with a hedged output term, and membership
grades for the terms at each point:

    inputs: t10 t20 t30
    outputs: p0 p50 p100
    rule: very cold => very strong conf very true
    rule: warm => weak
    sat cold t10 very true
    sat strong p100 more true

Each rule becomes a graded rule over a two-place ``good`` predicate whose
body conjoins the hedged input and output atoms, and each membership row
becomes a graded fact.  The least model of that program grades every
input/output pair with how well the pairing honours the rule base; reading
the best output per input off that surface gives the controller.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import TruthDomain
from .connectives import GODEL
from .fixpoint import Interpretation, ground, tp_apply
from .inverse import InverseMappingTable
from .lang import (
    Atom,
    Conj,
    Const,
    Fact,
    HedgeApp,
    ParseError,
    Program,
    Rule,
    Var,
    format_value,
)

GOOD = "good"
_RESERVED = (GOOD, "and_g", "and_l", "or")


@dataclass(frozen=True)
class ControlRule:
    in_hedges: tuple[str, ...]
    in_pred: str
    out_hedges: tuple[str, ...]
    out_pred: str
    conf: int
    line: int = 0


@dataclass(frozen=True)
class ControlSystem:
    input_points: tuple[str, ...]
    output_points: tuple[str, ...]
    rules: tuple[ControlRule, ...]
    sat: tuple[tuple[str, str, int], ...]  # (pred, point, grade), file order

    @property
    def input_preds(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(r.in_pred for r in self.rules))

    @property
    def output_preds(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(r.out_pred for r in self.rules))


def _parse_label(
    words: list[str], domain: TruthDomain, line: int, problems: list[str]
) -> tuple[tuple[str, ...], str]:
    if not words:
        problems.append(f"line {line}: empty rule side")
        return (), ""
    *hedges, pred = words
    for h in hedges:
        if not domain.algebra.has_hedge(h):
            problems.append(f"line {line}: unknown hedge {h!r}")
    if pred in _RESERVED:
        problems.append(f"line {line}: {pred!r} cannot be used as a term name")
    return tuple(hedges), pred


def parse_control_file(text: str, domain: TruthDomain) -> ControlSystem:
    problems: list[str] = []
    inputs: tuple[str, ...] | None = None
    outputs: tuple[str, ...] | None = None
    rules: list[ControlRule] = []
    sat: dict[tuple[str, str], tuple[int, int]] = {}  # -> (grade, line)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("inputs:") or line.startswith("outputs:"):
            key, rest = line.split(":", 1)
            points = tuple(rest.split())
            if not points:
                problems.append(f"line {lineno}: {key} declares no points")
            if key == "inputs":
                if inputs is not None:
                    problems.append(f"line {lineno}: inputs declared twice")
                inputs = points
            else:
                if outputs is not None:
                    problems.append(f"line {lineno}: outputs declared twice")
                outputs = points
            continue
        if line.startswith("rule:"):
            rest = line[len("rule:"):]
            if "=>" not in rest:
                problems.append(f"line {lineno}: rule needs '=>'")
                continue
            left, right = rest.split("=>", 1)
            conf = domain.n
            if " conf " in f" {right} ":
                right, conf_text = f" {right} ".split(" conf ", 1)
                try:
                    conf = domain.parse_literal(conf_text.strip())
                except ValueError as exc:
                    problems.append(f"line {lineno}: {exc}")
                if conf == 0:
                    problems.append(f"line {lineno}: confidence at bottom is vacuous")
            in_h, in_p = _parse_label(left.split(), domain, lineno, problems)
            out_h, out_p = _parse_label(right.split(), domain, lineno, problems)
            if in_p and out_p and in_p == out_p:
                problems.append(
                    f"line {lineno}: {in_p!r} appears on both sides of a rule"
                )
            rules.append(ControlRule(in_h, in_p, out_h, out_p, conf, lineno))
            continue
        if line.startswith("sat "):
            parts = line.split()
            if len(parts) < 4:
                problems.append(
                    f"line {lineno}: expected 'sat <term> <point> <grade>'"
                )
                continue
            pred, point = parts[1], parts[2]
            try:
                grade = domain.parse_literal(" ".join(parts[3:]))
            except ValueError as exc:
                problems.append(f"line {lineno}: {exc}")
                continue
            prev = sat.get((pred, point))
            if prev is not None and prev[0] != grade:
                problems.append(
                    f"line {lineno}: sat for {pred!r} at {point!r} conflicts "
                    f"with line {prev[1]}"
                )
                continue
            sat.setdefault((pred, point), (grade, lineno))
            continue
        problems.append(f"line {lineno}: cannot make sense of {line!r}")

    if inputs is None:
        problems.append("no inputs: line")
        inputs = ()
    if outputs is None:
        problems.append("no outputs: line")
        outputs = ()
    overlap = sorted(set(inputs) & set(outputs))
    if overlap:
        problems.append(f"point(s) {', '.join(overlap)} declared on both sides")
    if not rules:
        problems.append("no rule: lines")

    cs = ControlSystem(
        inputs, outputs, tuple(rules), tuple((p, x, g) for (p, x), (g, _) in sat.items())
    )

    declared = set(inputs) | set(outputs)
    for (pred, point), (_, ln) in sat.items():
        if point not in declared:
            problems.append(f"line {ln}: undeclared point {point!r}")
    for pred in cs.input_preds:
        for point in inputs:
            if (pred, point) not in sat:
                problems.append(f"no sat row for input term {pred!r} at {point!r}")
    for pred in cs.output_preds:
        for point in outputs:
            if (pred, point) not in sat:
                problems.append(f"no sat row for output term {pred!r} at {point!r}")

    if problems:
        raise ParseError(problems)
    return cs


def _wrap(hedges: tuple[str, ...], atom: Atom):
    body = atom
    for h in reversed(hedges):
        body = HedgeApp(h, body)
    return body


def compile_control(cs: ControlSystem, kind: str = GODEL) -> Program:
    """The graded program whose least model is the goodness surface."""
    statements: list = []
    x, y = Var("X"), Var("Y")
    for r in cs.rules:
        body = Conj(
            GODEL,
            (
                _wrap(r.in_hedges, Atom(r.in_pred, (x,))),
                _wrap(r.out_hedges, Atom(r.out_pred, (y,))),
            ),
        )
        statements.append(Rule(Atom(GOOD, (x, y)), kind, body, r.conf, line=r.line))
    for pred, point, grade in cs.sat:
        if grade == 0:
            continue  # bottom-graded facts say nothing
        statements.append(Fact(Atom(pred, (Const(point),)), grade))
    return Program(tuple(statements), source="<control>")


def goodness_surface(
    cs: ControlSystem,
    table: InverseMappingTable,
    program: Program | None = None,
) -> dict[tuple[str, str], int]:
    """Grade of ``good(x, y)`` for every input point x and output point y.

    The compiled program is facts plus one rule layer, so two rounds of the
    consequence operator reach the least model; a third round is applied
    and checked to stay put.
    """
    if program is None:
        program = compile_control(cs)
    gp = ground(program)
    f1 = tp_apply(gp, table, Interpretation())
    f2 = tp_apply(gp, table, f1)
    f3 = tp_apply(gp, table, f2)
    if f3 != f2:
        raise RuntimeError("control program did not settle in two rounds")
    return {
        (x, y): f2[Atom(GOOD, (Const(x), Const(y)))]
        for x in cs.input_points
        for y in cs.output_points
    }


def recommend(
    cs: ControlSystem, surface: dict[tuple[str, str], int]
) -> dict[str, tuple[str, int]]:
    """Best output point per input point; earliest declared wins ties."""
    out: dict[str, tuple[str, int]] = {}
    for x in cs.input_points:
        best = cs.output_points[0]
        best_v = surface[(x, best)]
        for y in cs.output_points[1:]:
            if surface[(x, y)] > best_v:
                best, best_v = y, surface[(x, y)]
        out[x] = (best, best_v)
    return out


def format_surface(
    cs: ControlSystem, domain: TruthDomain, surface: dict[tuple[str, str], int]
) -> str:
    width = max(
        [len("input")] + [len(x) for x in cs.input_points + cs.output_points]
    ) + 2
    lines = ["".join(["input".ljust(width)] + [y.ljust(width) for y in cs.output_points])]
    for x in cs.input_points:
        cells = [f"v{surface[(x, y)]}".ljust(width) for y in cs.output_points]
        lines.append("".join([x.ljust(width)] + cells).rstrip())
    lines[0] = lines[0].rstrip()
    picks = recommend(cs, surface)
    for x in cs.input_points:
        y, v = picks[x]
        lines.append(f"recommend {x} -> {y} at {format_value(domain, v)}")
    return "\n".join(lines) + "\n"
