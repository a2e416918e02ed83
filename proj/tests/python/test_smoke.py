import os

import pytest

import bhk

DATA = os.environ.get("BHK_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def data(name):
    return os.path.join(DATA, name)


def test_bounding_functions():
    f = bhk.BoundingFunction.parse("3*2^t")
    assert f.kind() == "exponential"
    assert f.eval("4") == "48"
    assert bhk.class_contains("E", f)
    assert not bhk.class_contains("P", f)
    with pytest.raises(ValueError):
        bhk.BoundingFunction.parse("t^^2")


def test_word_length():
    z2 = '{"kind": "Zn", "rank": 2, "weights": [1, 1]}'
    assert bhk.word_length(z2, "(3,-4)") == "7"
    assert bhk.word_length(z2, "e") == "1"


def test_check_complex():
    s = bhk.check_complex(open(data("complex_valid.json")).read())
    assert s["euler_class"] == "1"
    with pytest.raises(bhk.SchemaError):
        bhk.check_complex(open(data("complex_bad_d2.json")).read())


def test_cli_exit_codes():
    fwd = bhk.run("check-map", data("naturals_id_log.json"), "--trials", "50")
    assert fwd.exit_code == bhk.EXIT_VERIFIED
    assert fwd.report["schema"] == bhk.report_schema
    inv = bhk.run("check-map", data("naturals_id_log.json"), "--direction", "inverse",
                  "--degree", "8", "--coeff-bound", "10^9", "--nmax", "2^256")
    assert inv.exit_code == bhk.EXIT_REFUTED
    assert inv.verdict == "refuted"
    bad = bhk.run("check-complex", data("complex_bad_d2.json"))
    assert bad.exit_code == bhk.EXIT_SCHEMA
    assert bad.report is None


def test_axiom_suite_deterministic():
    a = bhk.run("axiom-suite", "--profile", "fin-free-bh", "--trials", "20", "--seed", "7")
    b = bhk.run("axiom-suite", "--profile", "fin-free-bh", "--trials", "20", "--seed", "7")
    assert a.exit_code == 0
    assert a.report == b.report
    assert [x["axiom"] for x in a.report["result"]["axioms"]] == ["Cof1", "Cof2", "Cof3", "Weq1", "Weq2"]
