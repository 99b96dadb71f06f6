from __future__ import annotations

import io

import pytest

from fllp import DEFAULT_ALGEBRA_CONFIG
from fllp.cli import main

from expected import DOMAIN_LITERALS, L1_DOMAIN_LITERALS

RECURSIVE = "p(a) : little true.\np(X) <-g #very(p(X)) : abstrue.\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_domain_prints_the_scale(capsys):
    code, out, err = run(capsys, "domain")
    assert code == 0 and err == ""
    assert out.splitlines() == [
        f"{literal} (v{i})" for i, literal in enumerate(DOMAIN_LITERALS)
    ]


def test_domain_inverse_blocks(capsys):
    code, out, _ = run(capsys, "domain", "--inverse")
    lines = out.splitlines()
    for h in ("very", "more", "probably", "little"):
        assert f"inverse {h}:" in lines
    assert "  absfalse (v0) -> absfalse (v0)" in lines
    assert "  true (v33) -> little true (v25)" in lines


def test_domain_algebra_flag_and_env(capsys, tmp_path, monkeypatch):
    small = tmp_path / "small.alg"
    small.write_text(DEFAULT_ALGEBRA_CONFIG.replace("limit: 2", "limit: 1"))

    code, out, _ = run(capsys, "domain", "--algebra", str(small))
    assert code == 0 and len(out.splitlines()) == len(L1_DOMAIN_LITERALS)

    monkeypatch.setenv("FLLP_ALGEBRA", str(small))
    code, out, _ = run(capsys, "domain")
    assert len(out.splitlines()) == 13  # env var applies

    vmpl = tmp_path / "vmpl.alg"
    vmpl.write_text(DEFAULT_ALGEBRA_CONFIG)
    code, out, _ = run(capsys, "domain", "--algebra", str(vmpl))
    assert len(out.splitlines()) == 45  # the flag beats the env var


def test_check_reports_ok(capsys, samples_dir):
    code, out, err = run(capsys, "check", str(samples_dir / "hotel.fllp"))
    assert code == 0 and out == "ok: 4 fact(s), 2 rule(s)\n" and err == ""


def test_check_collects_errors(capsys, tmp_path):
    bad = tmp_path / "bad.fllp"
    bad.write_text("p(a : true.\nq(b) : quite true.\n")
    code, out, err = run(capsys, "check", str(bad))
    assert code == 1 and out == ""
    assert err.count("error:") == 2


def test_check_safe_mode(capsys, tmp_path):
    open_fact = tmp_path / "open.fllp"
    open_fact.write_text("p(X) : true.\n")
    code, _, err = run(capsys, "check", str(open_fact))
    assert code == 0
    code, _, err = run(capsys, "check", "--safe", str(open_fact))
    assert code == 1 and "not ground" in err


def test_query_one_shot(capsys, samples_dir):
    code, out, err = run(
        capsys, "query", str(samples_dir / "good_employee_luka.fllp"), "-q", "gd_em(X)"
    )
    assert code == 0 and err == ""
    assert out == "answer: X=ann ; tv=probably probably true (v29)\n"


def test_query_threshold_forms(capsys, samples_dir):
    prog = str(samples_dir / "hotel.fllp")
    code, out, _ = run(capsys, "query", prog, "-q", "su_ho(X)", "--threshold", "v30")
    assert code == 0 and out == "no answers.\n"
    code, out, _ = run(
        capsys, "query", prog, "-q", "su_ho(X)", "--threshold", "little probably true"
    )
    assert "X=ritz" in out
    code, _, err = run(capsys, "query", prog, "-q", "su_ho(X)", "--threshold", "v99")
    assert code == 1 and "outside the domain" in err


def test_query_depth_exhaustion_exit_code(capsys, tmp_path):
    prog = tmp_path / "loop.fllp"
    prog.write_text(RECURSIVE)
    code, out, err = run(capsys, "query", str(prog), "-q", "p(a)", "--depth", "5")
    assert code == 2
    assert "depth limit" in err
    assert "tv=little true (v25)" in out  # answers are still reported


def test_query_unbounded_depth(capsys, samples_dir):
    code, out, _ = run(
        capsys, "query", str(samples_dir / "hotel.fllp"),
        "-q", "su_ho(X)", "--depth", "0", "--best",
    )
    assert code == 0
    assert out == "answer: X=ritz ; tv=little probably true (v28)\n"


def test_query_trace_goes_to_the_answer_stream(capsys, samples_dir):
    code, out, _ = run(
        capsys, "query", str(samples_dir / "good_employee_luka.fllp"),
        "-q", "gd_em(X)", "--trace",
    )
    assert code == 0
    assert out.splitlines()[0].startswith("goal ")
    assert out.splitlines()[-1].startswith("answer: ")


def test_query_out_file(capsys, samples_dir, tmp_path):
    target = tmp_path / "answers.txt"
    code, out, _ = run(
        capsys, "query", str(samples_dir / "hotel.fllp"),
        "-q", "su_ho(X)", "--out", str(target),
    )
    assert code == 0 and out == ""
    assert target.read_text() == "answer: X=ritz ; tv=little probably true (v28)\n"


def test_query_repl(capsys, samples_dir, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("gd_em(X)\n\nnot a query !\nquit\n"))
    code, out, err = run(capsys, "query", str(samples_dir / "good_employee_luka.fllp"))
    assert code == 0
    assert "answer: X=ann ; tv=probably probably true (v29)" in out
    assert "error:" in err  # the bad line is reported and the loop continues


def test_model_naive_and_delta(capsys, samples_dir):
    want = (
        "gd_em(ann) : probably probably true (v29)\n"
        "hira_un(ann) : very true (v41)\n"
        "st_hd(ann) : more true (v36)\n"
        "iterations: 3\n"
    )
    prog = str(samples_dir / "good_employee_luka.fllp")
    code, out, _ = run(capsys, "model", prog)
    assert code == 0 and out == want
    code, out, _ = run(capsys, "model", prog, "--mode", "delta")
    assert code == 0 and out == want


def test_model_grounding_cap(capsys, tmp_path):
    lines = [f"q(c{i}) : true." for i in range(11)]
    lines.append("p(A,B,C,D,E,F) <-g and_g(q(A), q(B), q(C), q(D), q(E), q(F)) : true.")
    prog = tmp_path / "big.fllp"
    prog.write_text("\n".join(lines) + "\n")
    code, out, err = run(capsys, "model", str(prog))
    assert code == 2 and "error:" in err


def test_surface(capsys, samples_dir):
    code, out, _ = run(capsys, "surface", str(samples_dir / "heater.ctl"))
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split() == ["t15", "v0", "v23", "v33"]
    assert "recommend t25 -> p0 at very true (v41)" in lines


def test_compile_matches_golden(capsys, samples_dir, tmp_path):
    target = tmp_path / "out.pl"
    code, out, _ = run(
        capsys, "compile", str(samples_dir / "good_employee_luka.fllp"),
        "--out", str(target),
    )
    assert code == 0 and out == ""
    golden = (samples_dir / "golden" / "good_employee_luka.pl").read_text()
    assert target.read_text() == golden


def test_compile_appends_the_query(capsys, samples_dir):
    code, out, _ = run(
        capsys, "compile", str(samples_dir / "good_employee_luka.fllp"),
        "-q", "gd_em(X)",
    )
    assert code == 0
    assert out.splitlines()[-1] == "?- gd_em(X,Truth_value)."


def test_missing_file_is_a_plain_error(capsys):
    code, out, err = run(capsys, "check", "no/such/file.fllp")
    assert code == 1 and "error:" in err


def test_usage_problems_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["query"])  # missing the program argument
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
