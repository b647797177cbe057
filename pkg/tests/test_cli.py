import io
import json

import pytest

from fdseries.cli import main


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv, stdin=""):
    code, out, err = run(*argv, stdin=stdin)
    assert code == 0, err
    return json.loads(out)


def test_parse_canonical():
    doc = run_json("parse", "Dx*(x*Dy)")
    assert doc["canonical"] == "x*Dx*Dy + Dy" and doc["order"] == 2


def test_parse_reads_stdin():
    assert run_json("parse", stdin="Dx + Dy\n")["canonical"] == "Dx + Dy"


def test_parse_error_position():
    code, out, err = run("parse", "Dx + + Dy")
    assert code == 1 and "1:6" in err and out == ""


def test_unknown_flag_is_a_parse_error():
    code, _, _ = run("symbol", "Dx", "--nope")
    assert code == 1


def test_script_adjoins_square_root(tmp_path):
    script = tmp_path / "sqrtx.txt"
    script.write_text("adjoin s: s^2 - x\n")
    doc = run_json("factors-of-symbol", "Dx^2 - x*Dy^2", "--script", str(script))
    assert sorted(f["a2"] for f in doc["linear"]) == ["-s", "s"]
    assert doc["residual"] == []


def test_series_then_verify(tmp_path):
    doc = run_json("series", "(Dx+Dy)^2 + Dx", "--factor", "(1, 1)", "--N", "3")
    assert doc["trace"]["q"] == 2 and doc["trace_check"] == []
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    res = run_json("verify", str(path), "--depth", "4")
    assert res["ok"] and res["verified_depth"] == 4


# h_i first enters the expansion at the (4 + i)-th exponent from the top
@pytest.mark.parametrize("index, depth, failure", [(0, 4, "1/2"), (1, 5, "0/1"), (2, 6, "-1/2")])
def test_tampered_series_fails(tmp_path, index, depth, failure):
    doc = run_json("series", "(Dx+Dy)^2 + Dx", "--factor", "(1, 1)", "--N", "3")
    term = doc["terms"][index]
    term["coefficient"] = f"({term['coefficient']}) + x"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, err = run("verify", str(path), "--depth", str(depth))
    assert code == 3
    res = json.loads(out)
    assert res["ok"] is False and res["first_failure"] == failure and "error" in err
    # one level shallower the tampered coefficient is not yet reached
    assert run("verify", str(path), "--depth", str(depth - 1))[0] == 0


def test_disc2_precondition():
    code, _, err = run("disc2", "Dx^2 - Dy^2")
    assert code == 2 and "square" in err


def test_disc2_verdicts():
    doc = run_json("disc2", "(Dx+Dy)^2 + Dx")
    assert doc["disc"] == "1" and doc["verdict"] == "irreducible"
    doc = run_json("disc2", "(Dx+Dy+x)*(Dx+Dy)")
    assert doc["disc"] == "0" and doc["factors"] == ["Dx + Dy + x", "Dx + Dy"]


def test_gcd_text_output():
    code, out, _ = run("gcd", "(Dx+Dy)*(Dx-Dy)", "(Dx+x)*(Dx-Dy)", "--text")
    assert code == 0
    lines = dict(l.split(": ", 1) for l in out.strip().splitlines())
    assert lines["gcd"] == "Dx - Dy" and lines["verified"] == "True"
    assert lines["differential_type_degree"] == "1"


def test_gcd_with_combination():
    doc = run_json("gcd", "(Dx+Dy)*(Dx-Dy)", "(Dx+x)*(Dx-Dy)", "--bezout")
    assert doc["verified"] and len(doc["combination"]["coefficients"]) == 2


def test_intersect():
    doc = run_json("intersect", "(1, 0)", "(-1, 0)")
    assert doc["principal"] and doc["generator"] == "Dx^2 - Dy^2"
    doc = run_json("intersect", "(1, 0)", "(-1, x)")
    assert not doc["principal"] and doc["certificate"]["rank"] == 6


def test_reconstruct():
    doc = run_json("reconstruct", "Dx^2 - Dy^2", "--solution", "(x+y)^2", "--N", "4")
    assert doc["directions"] == ["1", "-1"]
    code, _, _ = run("reconstruct", "Dx^2 - Dy^2", "--solution", "x^2", "--N", "4")
    assert code == 2


def test_corpus_is_seeded():
    a = run_json("corpus", "--seed", "3", "--count", "2")
    b = run_json("corpus", "--seed", "3", "--count", "2")
    assert a == b and len(a["operators"]) == 2


def test_run_script(tmp_path):
    script = tmp_path / "r.txt"
    script.write_text("let T = Dx^2 - Dy^2\nrfactor T\nfactor (Dx+Dy+x)*(Dx+Dy)\n")
    doc = run_json("run", str(script))
    first, second = (r["result"] for r in doc["results"])
    assert sorted(c["factor"] for c in first["candidates"]) == ["Dx + Dy", "Dx - Dy"]
    assert second["factors"] == ["Dx + Dy + x", "Dx + Dy"] and second["remultiplies"]


def test_run_rejects_nested_run(tmp_path):
    script = tmp_path / "r.txt"
    script.write_text("run other.txt\n")
    code, _, _ = run("run", str(script))
    assert code == 1
