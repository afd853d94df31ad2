import io
import json

import pytest

from qdisc.cli import dumps, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue().strip()


@pytest.mark.parametrize("expr, want", [
    ("z* z", "1/4 z z* + 3/4"),
    ("z z*", "z z*"),
    ("z* z^2", "1/16 z^2 z* + 15/16 z"),
])
def test_normalize(expr, want):
    assert call("normalize", expr, "--q", "1/2") == (0, want)


def test_normalize_other_q():
    assert call("normalize", "zs z", "--q", "2/3")[1] == "4/9 z z* + 5/9"


def test_star_z_zstar_notes_vanishing_terms():
    code, text = call("star", "z", "z*")
    assert code == 0
    assert text.splitlines() == ["z z*", "# C_j = 0 for j >= 1 up to N = 3"]


def test_star_one_one():
    assert call("star", "1", "1", "--torder", "0") == (0, "1")


def test_cterm_zstar_z():
    # (3/4)(1/4 - 5/16 z z* + 1/16 z^2 z*^2)
    assert call("cterm", "z*", "z", "1") == (0, "3/64 z^2 z*^2 - 15/64 z z* + 3/16")


def test_star_series_output():
    code, text = call("star", "z*", "z", "--torder", "1", "--convention", "right")
    assert text.splitlines() == ["t^0: 1/4 z z* + 3/4",
                                 "t^1: 3/64 z^2 z*^2 - 15/64 z z* + 3/16"]


def test_oracle_and_berezin_agree_with_star():
    _, s = call("star", "z*", "z", "--torder", "2")
    _, o = call("oracle-star", "z*", "z", "--torder", "2")
    _, b = call("berezin", "z* z", "--torder", "2")
    assert s == o == b


def test_berezin_rejects_normal_order_input():
    code, _ = call("berezin", "z z*")
    assert code == 2


def test_derive():
    assert call("derive", "z^2", "--which", "lz") == (0, "5 z")
    assert call("derive", "z z*", "--which", "rz") == (0, "4 z*")
    assert call("derive", "z z*", "--which", "rzs") == (0, "z")
    assert call("derive", "z", "--which", "lzs") == (0, "0")


def test_json_schema_and_canonical_form():
    code, text = call("star", "z*", "z", "--torder", "1", "--output", "json")
    assert code == 0
    data = json.loads(text)
    assert data["q"] == "1/2" and data["torder"] == 1 and data["convention"] == "right"
    assert [t["t"] for t in data["terms"]] == [0, 1]
    assert data["terms"][0]["monomials"] == [{"i": 1, "j": 1, "coeff": "1/4"},
                                             {"i": 0, "j": 0, "coeff": "3/4"}]
    assert dumps(json.loads(text)) == text


def test_parse_error_exit_code(capsys):
    code, _ = call("normalize", "z + * 2")
    assert code == 2
    assert "line 1, column 5" in capsys.readouterr().err


def test_bad_q_is_rejected():
    with pytest.raises(SystemExit):
        run(["normalize", "z", "--q", "3/2"])


def test_verify_default_passes():
    code, text = call("verify")
    assert code == 0
    assert "FAIL" not in text
    assert text.splitlines()[-1] == "14/14 checks passed"


def test_verify_flipped_convention_fails_with_counterexample():
    code, text = call("verify", "--convention", "left")
    assert code == 1
    line = next(x for x in text.splitlines() if x.startswith("FAIL fock.oracle_agreement"))
    assert "oracle says" in line


def test_verify_torder_zero():
    code, text = call("verify", "--torder", "0", "--output", "json")
    data = json.loads(text)
    assert code == 0 and data["ok"] and all(c["ok"] for c in data["checks"])


def test_runs_are_deterministic():
    assert call("verify", "--seed", "5", "--output", "json") == \
        call("verify", "--seed", "5", "--output", "json")
