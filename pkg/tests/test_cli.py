import io
import subprocess
import sys

import pytest

from conftest import GENERIC_CONFIG
from gbraid.cli import main
from gbraid.render import RenderOptions, render
from gbraid.theory import builtin
from gbraid.word import BraidWord, parse_word

FIG16 = "a4 x3 b2 x1 b4' c3 c2' a1 x4 b3 d2 a1'"


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def theory_file(tmp_path):
    path = tmp_path / "generic.theory"
    path.write_text(GENERIC_CONFIG)
    return str(path)


def test_pi():
    assert run("pi", "--theory", "classical", "--strands", "3", "r1 r2") == (0, "[3,1,2]\n", "")


def test_pi_reads_stdin_and_infers_strands():
    code, out, _ = run("pi", stdin="r1 r2\n")
    assert (code, out) == (0, "[3,1,2]\n")


def test_theory_commands(theory_file):
    code, out, _ = run("theory", "list")
    assert code == 0 and "virtual-twin" in out.split()
    code, out, _ = run("theory", "show", "virtual")
    assert code == 0 and out.startswith("theory virtual")
    assert run("theory", "validate", "classical")[:2] == (0, "normal; dominant: r\n")
    assert run("theory", "validate", theory_file)[:2] == (0, "normal; dominant: x\n")
    code, _, err = run("theory", "validate", "twin")
    assert code == 2 and "error" in err


def test_check_figure16(theory_file):
    code, out, _ = run("check", "--theory", theory_file, "--strands", "5", FIG16)
    assert (code, out) == (0, "(5,3)\n")


def test_check_letters_outside_the_theory():
    # the figure's tags do not exist in the virtual preset
    code, _, err = run("check", "--theory", "virtual", "--strands", "5", FIG16)
    assert code == 1 and "unknown tag" in err


def test_check_not_quasitoric():
    assert run("check", "r1 r2")[:2] == (2, "none\n")


def test_components_rep_lambda(theory_file):
    assert run("components", "--strands", "3", "r1")[1] == "2\n"
    assert run("rep", "--theory", theory_file, "x1 x2 x1")[1] == "x1 x2 x1\n"
    assert run("lambda", "--theory", theory_file, "a1 x1")[1] == "aL[1,2]\n"


def test_quasitoric_and_verify(tmp_path, theory_file):
    trace = str(tmp_path / "q.trace")
    code, out, _ = run("quasitoric", "--theory", theory_file, "--trace-out", trace, "x1 a1")
    assert code == 0 and out.strip()
    code, out, _ = run("verify", "--theory", theory_file, trace)
    assert code == 0 and out.startswith("ok:")


def test_quasitoric_not_pure():
    code, _, err = run("quasitoric", "--theory", "classical", "--strands", "2", "r1")
    assert code == 2 and "NotPure" in err


def test_corrupted_trace(tmp_path):
    trace = tmp_path / "q.trace"
    assert run("quasitoric", "--trace-out", str(trace), "r1 r2 r2 r1")[0] == 0
    lines = trace.read_text().splitlines()
    out_line = next(k for k, line in enumerate(lines) if line.startswith("output:"))
    lines[out_line] = "output: r1"
    trace.write_text("\n".join(lines) + "\n")
    code, _, err = run("verify", str(trace))
    assert code == 3 and "verification failed" in err


def test_inverse():
    code, out, _ = run("inverse", "--strands", "3", "r2 r1")
    assert code == 0 and out.strip()
    assert run("inverse", "--strands", "3", "r1 r2 r1")[0] == 2


def test_alexander_writes_trace_and_log(tmp_path):
    trace = str(tmp_path / "a.trace")
    code, out, _ = run("alexander", "--theory", "virtual", "--strands", "3", "--trace-out", trace, "r1")
    assert code == 0 and out.splitlines()[-1] == "strands: 4"
    code, out, _ = run("verify", "--theory", "virtual", trace)
    assert code == 0 and "Markov steps" in out
    code, out, _ = run("verify", "--theory", "virtual", trace + ".markov")
    assert code == 0 and "4 strands" in out


def test_oracle_command(tmp_path):
    code, out, _ = run("oracle", "r1 r2 r1", "r2 r1 r2", "--depth", "0")
    assert code == 0 and out.startswith("equivalent")
    code, out, _ = run("oracle", "r1", "r2")
    assert out.startswith("distinct-by-invariant (permutation)")
    trace = str(tmp_path / "o.trace")
    run("oracle", "r1 r1'", "", "--strands", "2", "--trace-out", trace)
    assert run("verify", trace)[0] == 0


def test_random_is_seeded():
    a = run("random", "--strands", "4", "--length", "6", "--seed", "5")
    assert a == run("random", "--strands", "4", "--length", "6", "--seed", "5")
    assert len(a[1].split()) == 6


def test_usage_errors():
    assert run("frobnicate")[0] == 1
    assert run("pi", "--theory", "nope", "r1")[0] == 1
    assert run("pi", "q1")[0] == 1
    assert run("verify", "/nonexistent/file")[0] == 1


def test_out_flag(tmp_path):
    target = tmp_path / "out.txt"
    assert run("pi", "--out", str(target), "r1") == (0, "", "")
    assert target.read_text() == "[2,1]\n"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gbraid", "pi", "r1 r2"], capture_output=True, text=True)
    assert (out.returncode, out.stdout) == (0, "[3,1,2]\n")


# ------------------------------------------------------------- rendering


def test_render_empty():
    pic = render(BraidWord.empty(2, builtin("classical")))
    lines = pic.splitlines()
    assert len(lines) == 3
    assert all(line.count("|") == 2 for line in lines[1:])


def test_render_one_crossing(generic):
    lines = render(parse_word("x1", 2, generic)).splitlines()
    assert len(lines) == 4
    assert "x+" in lines[2] and "\\" in lines[2] and "/" in lines[2]


def test_render_figure16(generic):
    lines = render(parse_word(FIG16, 5, generic)).splitlines()
    assert lines[0].split() == ["1", "2", "3", "4", "5"]
    crossing_rows = [line for line in lines if "\\" in line]
    assert len(crossing_rows) == 12


def test_render_without_tags(generic):
    pic = render(parse_word("a1", 2, generic), RenderOptions(show_tags=False))
    assert "a+" not in pic


def test_render_svg():
    w = parse_word("r1 v2 r1'", 3, builtin("virtual"))
    svg = render(w, RenderOptions("svg", 30, 20))
    assert svg.count("<polyline") == 3
    assert svg.count("<text") == 3
    assert 'width="120"' in svg and 'height="100"' in svg
    with pytest.raises(ValueError):
        RenderOptions("png")


def test_render_command():
    code, out, _ = run("render", "--format", "svg", "--no-tags", "r1")
    assert code == 0 and out.startswith("<?xml") and "<text" not in out
