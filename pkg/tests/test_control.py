from __future__ import annotations

import random

import pytest

from fllp import GODEL, LUKA, ParseError, least_model
from fllp.control import (
    compile_control,
    format_surface,
    goodness_surface,
    parse_control_file,
    recommend,
)
from fllp.lang import Atom, Const, Fact, Rule

from expected import HEATER_PICKS, HEATER_SURFACE


@pytest.fixture(scope="module")
def heater(samples_dir, table):
    text = (samples_dir / "heater.ctl").read_text()
    return parse_control_file(text, table.domain)


def test_parse_heater(heater):
    assert heater.input_points == ("t15", "t20", "t25")
    assert heater.output_points == ("p0", "p50", "p100")
    assert len(heater.rules) == 2
    strong = heater.rules[0]
    assert strong.in_hedges == ("very",) and strong.in_pred == "cold"
    assert strong.out_hedges == ("very",) and strong.out_pred == "strong"
    assert strong.conf == 41
    weak = heater.rules[1]
    assert weak.in_hedges == () and weak.conf == 44  # confidence defaults to top
    assert heater.input_preds == ("cold", "warm")
    assert heater.output_preds == ("strong", "weak")


def test_compiled_program_shape(heater):
    program = compile_control(heater)
    assert len(program.rules) == 2
    rule = program.rules[0]
    assert isinstance(rule, Rule) and rule.kind == GODEL
    assert rule.head == Atom("good", (rule.head.args[0], rule.head.args[1]))
    # absfalse sat rows carry no information and produce no facts
    assert len(program.facts) == 8
    assert all(isinstance(f, Fact) and f.tv > 0 for f in program.facts)


def test_goodness_surface_and_recommendations(heater, table):
    surface = goodness_surface(heater, table)
    assert surface == HEATER_SURFACE
    assert recommend(heater, surface) == HEATER_PICKS


def test_surface_equals_the_least_model(heater, table):
    program = compile_control(heater)
    model, _ = least_model(program, table)
    surface = goodness_surface(heater, table)
    for (x, y), v in surface.items():
        assert model[Atom("good", (Const(x), Const(y)))] == v


def test_luka_compilation_matches_when_confidence_is_top(table):
    text = """\
    inputs: i1 i2
    outputs: o1 o2
    rule: hot => fast
    sat hot i1 probably true
    sat hot i2 very true
    sat fast o1 little true
    sat fast o2 more true
    """
    cs = parse_control_file(text, table.domain)
    godel = goodness_surface(cs, table, compile_control(cs, GODEL))
    luka = goodness_surface(cs, table, compile_control(cs, LUKA))
    assert godel == luka  # a top-graded rule makes both weights neutral


def test_format_surface_layout(heater, table):
    text = format_surface(heater, table.domain, goodness_surface(heater, table))
    lines = text.splitlines()
    assert lines[0].split() == ["input", "p0", "p50", "p100"]
    assert lines[1].split() == ["t15", "v0", "v23", "v33"]
    assert lines[2].split() == ["t20", "v30", "v30", "v23"]
    assert lines[3].split() == ["t25", "v41", "v30", "v0"]
    assert lines[4] == "recommend t15 -> p100 at true (v33)"
    assert lines[5] == "recommend t20 -> p0 at probably true (v30)"
    assert lines[6] == "recommend t25 -> p0 at very true (v41)"


def test_recommend_breaks_ties_by_declaration_order(table):
    text = """\
    inputs: i
    outputs: o1 o2
    rule: hot => fast
    sat hot i very true
    sat fast o1 probably true
    sat fast o2 probably true
    """
    cs = parse_control_file(text, table.domain)
    surface = goodness_surface(cs, table)
    assert surface[("i", "o1")] == surface[("i", "o2")]
    assert recommend(cs, surface)["i"][0] == "o1"


def _expect_problems(text, domain, *needles):
    with pytest.raises(ParseError) as err:
        parse_control_file(text, domain)
    for needle in needles:
        assert needle in str(err.value), needle


def test_parse_errors_are_collected(domain):
    _expect_problems(
        "rule: a => b\nsat a i true\nsat b o true\n",
        domain,
        "no inputs: line",
        "no outputs: line",
        "undeclared point",
    )
    _expect_problems(
        "inputs: i\noutputs: i\nrule: a => b\nsat a i true\nsat b i true\n",
        domain,
        "declared on both sides",
    )
    _expect_problems(
        "inputs: i\noutputs: o\nrule: a => a\nsat a i true\nsat a o true\n",
        domain,
        "both sides of a rule",
    )
    _expect_problems(
        "inputs: i\noutputs: o\nrule: a => b conf absfalse\n"
        "sat a i true\nsat b o true\n",
        domain,
        "vacuous",
    )
    _expect_problems(
        "inputs: i\noutputs: o\nrule: a => b\nsat a i true\n",
        domain,
        "no sat row for output term 'b' at 'o'",
    )
    _expect_problems(
        "inputs: i\noutputs: o\nrule: a => b\n"
        "sat a i true\nsat a i false\nsat b o true\n",
        domain,
        "conflicts",
    )
    _expect_problems(
        "inputs: i\noutputs: o\nnonsense here\nrule: a => b\n"
        "sat a i true\nsat b o true\n",
        domain,
        "cannot make sense",
    )


def test_zero_grade_sat_rows_are_legal_but_silent(heater):
    program = compile_control(heater)
    graded = {(f.atom.pred, f.atom.args[0].name) for f in program.facts}
    assert ("cold", "t25") not in graded
    assert ("cold", "t20") in graded


@pytest.mark.parametrize("seed", range(20))
def test_random_surfaces_match_the_least_model(seed, table):
    rng = random.Random(seed)
    domain = table.domain
    ni, no = rng.randint(1, 3), rng.randint(1, 3)
    inputs = tuple(f"i{k}" for k in range(ni))
    outputs = tuple(f"o{k}" for k in range(no))
    in_preds = tuple(f"a{k}" for k in range(rng.randint(1, 2)))
    out_preds = tuple(f"b{k}" for k in range(rng.randint(1, 2)))
    hedges = ("", "very ", "more ", "probably ", "little ")
    lines = [f"inputs: {' '.join(inputs)}", f"outputs: {' '.join(outputs)}"]
    for a in in_preds:
        for b in out_preds:
            conf = ""
            if rng.random() < 0.5:
                conf = f" conf {domain.literal(rng.randint(1, domain.n))}"
            lines.append(
                f"rule: {rng.choice(hedges)}{a} => {rng.choice(hedges)}{b}{conf}"
            )
    for pred, points in ((p, inputs) for p in in_preds):
        for x in points:
            lines.append(f"sat {pred} {x} {domain.literal(rng.randint(0, domain.n))}")
    for pred in out_preds:
        for y in outputs:
            lines.append(f"sat {pred} {y} {domain.literal(rng.randint(0, domain.n))}")
    cs = parse_control_file("\n".join(lines) + "\n", domain)
    kind = rng.choice((GODEL, LUKA))
    program = compile_control(cs, kind)
    surface = goodness_surface(cs, table, program)
    model, _ = least_model(program, table)
    for (x, y), v in surface.items():
        assert model[Atom("good", (Const(x), Const(y)))] == v
