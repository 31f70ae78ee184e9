import io
import subprocess
import sys
from pathlib import Path

import pytest

from pactkit.cli import run

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


def result_line(text):
    lines = [l for l in text.splitlines() if l.startswith("RESULT:")]
    assert len(lines) == 1
    return lines[0]


def test_validate():
    code, text = call("validate", DATA / "nonstrong-example.paction")
    assert code == 0
    assert result_line(text) == "RESULT: partial=true strong=false"
    code, text = call("validate", DATA / "not-partial.paction")
    assert code == 1 and "PA1 FAIL" in text


def test_strong():
    code, text = call("strong", DATA / "strong-example.paction")
    assert code == 0 and result_line(text) == "RESULT: strong=true"
    code, text = call("strong", DATA / "nonstrong-example.paction")
    assert code == 1
    assert "witness m=1 n=1 x=0" in text
    code, text = call("strong", DATA / "not-partial.paction")
    assert code == 1 and "partial=false" in result_line(text)


@pytest.mark.parametrize("name", ["strong-example", "nonstrong-example"])
def test_globalize_golden(name):
    code, text = call("globalize", DATA / f"{name}.paction")
    assert code == 0
    assert text == (GOLDEN / f"{name}.globalize.txt").read_text()


@pytest.mark.parametrize("name,iota,code", [("strong-example", "0,1", 0), ("nonstrong-example", "0,1", 1)])
def test_verify_golden(name, iota, code):
    got, text = call("verify", DATA / f"{name}.paction", DATA / f"{name}-reflection.gaction", iota)
    assert got == code
    assert text == (GOLDEN / f"{name}.verify.txt").read_text()


def test_verify_restriction():
    code, text = call("verify", DATA / "swap-restricted.paction", DATA / "z2-swap.gaction", "1")
    assert code == 0


def test_verify_non_injective_iota():
    code, text = call("verify", DATA / "strong-example.paction", DATA / "strong-example-reflection.gaction", "0,0")
    assert code == 1 and "globalization=false" in text


def test_routes():
    for name in ("strong-example", "nonstrong-example"):
        code, text = call("routes", DATA / f"{name}.paction")
        assert code == 0 and result_line(text) == "RESULT: routes_equal=true"


def test_theorem_check():
    code, text = call("theorem-check", DATA / "nonstrong-example.paction", "--max-target", "2")
    assert code == 0 and result_line(text) == "RESULT: theorem=true"


def test_top_demo():
    code, text = call("top-demo")
    assert code == 0
    assert "counterexample confirmed" in text
    assert "continuous=false" in text


def test_search_is_byte_stable():
    a = call("search", "--seed", "3", "--samples", "40")
    b = call("search", "--seed", "3", "--samples", "40")
    assert a == b
    assert a[0] == 0 and result_line(a[1]) == "RESULT: violations=0"


def test_parse_errors_exit_two():
    code, text = call("strong", DATA / "broken.paction")
    assert code == 2 and result_line(text) == "RESULT: error"
    code, _ = call("validate", DATA / "missing.paction")
    assert code == 2
    code, _ = call("verify", DATA / "strong-example.paction", DATA / "z2-swap.gaction", "0,9")
    assert code == 2


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pactkit", "strong", str(DATA / "strong-example.paction")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "RESULT: strong=true" in proc.stdout
