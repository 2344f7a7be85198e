import math

import pytest

try:
    import heightlab as hl  # installed wheel
except ImportError:
    import _core as hl  # CMake build (HEIGHTLAB_MODULE_DIR on sys.path)


def test_height_rational():
    assert hl.height(["3", "4"]) == pytest.approx(math.log(4), abs=1e-12)
    assert hl.height(["1", "1", "1"]) == 0.0
    assert hl.degree_tag(["3", "4"]) == 1


def test_height_quadratic():
    h = hl.height(["1+1*sqrt(2)", "1"])
    assert h == pytest.approx(0.5 * math.log(1 + math.sqrt(2)), abs=1e-12)
    assert hl.degree_tag(["1+1*sqrt(2)", "1"]) == 2


def test_canonical_form():
    assert hl.canonical(["2", "4", "6"]) == "(1:2:3)"
    assert hl.canonical(["1/2", "1/3"]) == "(3:2)"


def test_places():
    ws = hl.places("5", "11")
    assert len(ws) == 2  # 5 is a square mod 11: split
    assert all(w["e"] * w["f"] == 1 for w in ws)
    ws2 = hl.places("-1", "2")
    assert len(ws2) == 1 and ws2[0]["e"] == 2  # ramified


def test_product_formula():
    assert hl.product_formula_defect("3/7", "5/11", "-7") == pytest.approx(0.0, abs=1e-50)


def test_bounds():
    assert hl.galg_bound(2, 2, 2) == "10"
    assert hl.genth_bound(2, 2) == "48/5"
    assert hl.ruwang_bound(2, 2) == "10"


def test_s_units():
    us = set(hl.s_units(["inf", "2"], 1))
    assert us == {"1", "-1", "2", "-2", "1/2", "-1/2"}


def test_exinf_identity():
    lines = hl.exinf_lines(2, 1)
    stream = hl.gen_exinf(2, 1, ["inf", "2", "3"], 3)
    assert len(stream) >= 90
    for rec in stream[:25]:
        coords = rec["point"][1:-1].split(":")
        r = hl.proximity(lines, ["inf", "2", "3"], coords)
        assert r["m"] == pytest.approx(4 * r["h"], abs=1e-12)
        assert r["ratio"] == pytest.approx(4.0, abs=1e-12)


def test_excon_stream():
    stream = hl.gen_excon(["inf", "2", "3"], 2)
    assert len(stream) >= 40
    quad = [rec for rec in stream if rec["d"] != "0"]
    assert quad, "expected quadratic points on the conic"


def test_verify_suite():
    ok, details = hl.verify("positions", 20, 7)
    assert ok, details


def test_campaign(tmp_path):
    config = """{
        "family": "exinf", "n": 2, "delta": 1,
        "s_places": ["inf", 2, 3], "max_exp": 2, "target": 4
    }"""
    summary = hl.run_campaign(config, str(tmp_path))
    assert (tmp_path / "records.csv").exists()
    assert (tmp_path / "summary.json").exists()
    assert '"points"' in summary
