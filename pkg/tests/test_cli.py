import importlib
import io
import os
import subprocess
import sys

import pytest

from golden_tools import GOLDEN_DIR, expected_path, render, run_script, scripts
from serregrade.cli.evaluate import bind
from serregrade.cli.lexer import ScriptError, tokenize
from serregrade.cli.main import build_parser, execute, main
from serregrade.cli.run import Flags, from_machine, run, to_machine
from serregrade.cli.syntax import parse, print_script

run_mod = importlib.import_module("serregrade.cli.run")

HEADER = "ring S = GF(101)[x,y,z];\n"


def _diag(source):
    try:
        script = parse(source)
    except ScriptError as exc:
        return exc.diagnostic
    _, diags = bind(script)
    return diags[0] if diags else None


def _exec(source, *flags):
    out, err = io.StringIO(), io.StringIO()
    code = execute(source, "t.sg", build_parser().parse_args(["t.sg", *flags]), out, err)
    return code, out.getvalue(), err.getvalue()


def _read(name):
    with open(os.path.join(GOLDEN_DIR, name), encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize("name", scripts())
def test_golden(name):
    with open(expected_path(name), encoding="utf-8") as fh:
        assert render(*run_script(name)) == fh.read()


@pytest.mark.parametrize("name", [n for n in scripts() if not n.startswith("err_")])
def test_parse_print_parse_round_trip(name):
    s1 = parse(_read(name))
    text = print_script(s1)
    s2 = parse(text)
    assert s1 == s2
    assert print_script(s2) == text


def test_lexer_tokens_and_comments():
    toks = tokenize("ideal I = (x^2 - 3*y); # trailing\n")
    kinds = [t.kind for t in toks]
    assert kinds[-1] == "EOF"
    assert [t.text for t in toks[:4]] == ["ideal", "I", "=", "("]
    assert toks[4].span.line == 1 and toks[4].span.col == 11


@pytest.mark.parametrize(
    "source, pos, code",
    [
        ("ring S = GF(101)[x,y,z];\nideal I = (x*y", "2:13", "E002"),
        ("ring S = GF(101)[x,y];\nideal I = (x $ y);", "2:13", "E001"),
        (HEADER + "ideal I = (x*q);", "2:13", "E101"),
        (HEADER + "ideal I = (x*y + z);", "2:11", "E102"),
        ("ring S = GF(100)[x,y];", "1:12", "E103"),
        ("ideal I = (x);", "1:0", "E104"),
        (HEADER + "ideal I = (x);\nideal I = (y);", "3:0", "E105"),
        (HEADER + "ideal I = (x);\ncm I I;", "3:3", "E106"),
        (HEADER + "ideal I = (x^65);", "2:11", "E107"),
        (HEADER + "class T = supp_in(1);", "2:17", "E107"),
    ],
)
def test_diagnostic_positions_and_codes(source, pos, code):
    d = _diag(source)
    assert d is not None
    assert str(d.span) == pos and d.code == code
    assert str(d).startswith(f"<input>:{pos}: error[{code}]: ")


def test_expected_token_message():
    d = _diag("ring S = GF(101)[x,y,z];\nideal I = (x*y")
    assert "expected" in d.message


def test_machine_round_trip():
    prog, diags = bind(parse(_read("flagship.sg")))
    assert not diags
    reports = run(prog, Flags(seed=7))
    text = to_machine(reports, ["W001 no queries"])
    back, warnings = from_machine(text)
    assert back == reports
    assert warnings == ["W001 no queries"]
    assert to_machine(back, warnings) == text
    with pytest.raises(ValueError):
        from_machine("queries: 0\n")


def test_text_format_lines():
    code, out, _ = _exec(_read("flagship.sg"), "--seed", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "cm M T: true (route thm311, a(M)=(y,z), dim S/a(M)=1 ≤ 1)"
    assert lines[1] == "cm M T0: false (route thm311, a(M)=(y,z), dim S/a(M)=1 > 0)"
    assert lines[2].startswith("grade a=(x, y, z) M Z: 1 (route koszul, class zero")
    assert any(line.startswith("checkseq [x, y, z] M T: not weak (fails at 1)") for line in lines)


def test_timing_only_in_text_output():
    src = HEADER + "module M = S/(x*y);\nclass Z = zero;\ncm M Z;\n"
    _, text, _ = _exec(src, "--timing")
    assert text.rstrip().endswith("s]")
    _, machine, _ = _exec(src, "--timing", "--format", "machine")
    assert "elapsed" not in machine and "s]" not in machine


def test_engine_error_exit_code():
    code, out, _ = _exec(_read("quotient.sg"), "--format", "machine", "--seed", "3")
    assert code == 2
    assert "E201 UnsupportedRoute" in out


def test_oracle_disagreement_exit_code(monkeypatch):
    src = HEADER + "module M = S/(x*y, x*z);\nclass T = dim_le(1);\ncm M T;\n"
    assert _exec(src, "--oracle")[0] == 0
    monkeypatch.setattr(run_mod, "_oracle_verdicts", lambda bq: (False, False))
    code, out, _ = _exec(src, "--oracle")
    assert code == 3
    assert "E301" in out


def test_engine_error_beats_disagreement(monkeypatch):
    monkeypatch.setattr(run_mod, "_oracle_verdicts", lambda bq: (False, False))
    src = (
        "ring S = GF(101)[x,y,z] / (x*y);\nmodule M = S;\nclass T = dim_le(1);\nclass Z = zero;\n"
        "cm M T;\ngrade a=(x, y, z) M Z route=ext;\n"
    )
    code, _, _ = _exec(src, "--oracle")
    assert code == 2


def test_oracle_skips_non_monomial_modules():
    src = HEADER + "module M = S/(x^2 - y*z);\nclass Z = zero;\ncm M Z;\n"
    code, out, _ = _exec(src, "--oracle", "--format", "machine")
    assert code == 0 and "query.1.oracle: skipped" in out


def test_print_flag_prints_canonical_script():
    code, out, _ = _exec("ring S=GF(101)[x,y,z];ideal I=(x*y,x*z);module M=S/I;class T=dim_le(1);cm M T;", "--print")
    assert code == 0
    assert out == print_script(parse(out))
    assert "module M = S/I;" in out


def test_empty_program_warns():
    code, out, err = _exec(HEADER)
    assert code == 0 and out == ""
    assert "warning[W001]" in err


def test_stdin_and_usage_errors(capsys):
    src = HEADER + "module M = S/(x*y);\nclass Z = zero;\ncm M Z;\n"
    proc = subprocess.run(
        [sys.executable, "-m", "serregrade", "-", "--format", "machine"],
        input=src, capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0 and "query.1.verdict: true" in proc.stdout
    for argv in (["x.sg", "--format", "xml"], ["x.sg", "--seed", "-1"], ["x.sg", "--budget", "0"], []):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 1
    assert main([os.path.join(GOLDEN_DIR, "missing.sg")]) == 1
    capsys.readouterr()
