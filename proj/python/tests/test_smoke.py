import pytest

import bioct

Q = {"kind": "Q"}
F5 = {"kind": "Fp", "p": 5}


def test_tkk_profile_split():
    out = bioct.tkk_profile(
        {"field": F5, "kind": "decomposable",
         "mu1": ["1", "1", "1"], "mu2": ["1", "1", "1"]})
    assert out["dims"] == [14, 64, 92, 64, 14]
    assert out["total"] == 248
    assert out["type"] == "E8"


def test_invariants_division_product():
    desc = {"field": Q, "kind": "decomposable",
            "mu1": ["-1", "-1", "-1"], "mu2": ["-1", "-1", "-1"]}
    out = bioct.algebra_invariants(desc)
    assert out["decomposable"] is True
    assert out["b1"]["zero"] is True
    assert out["b3"]["zero"] is True
    assert out["b6"]["zero"] is False
    assert out["division"] is False
    assert len(out["albert_form"]["entries"]) == 14


def test_division_corestriction():
    out = bioct.algebra_division(
        {"field": Q, "kind": "corestriction", "d": "-1",
         "mu": [["1", "0"], ["1", "1"], ["2", "1"]]})
    assert out["centroid_field"] is True
    assert isinstance(out["division"], bool)
    if not out["division"]:
        assert "isotropic_witness" in out


def test_form_witt_and_en():
    w = bioct.form_witt({"field": Q, "entries": ["1", "-1", "2", "3"]})
    assert w["hyperbolic"] == 1
    assert w["kernel"] == ["2", "3"]
    form = {"field": Q, "entries": ["1", "-2", "-3", "6", "-5", "10", "15", "-30"]}
    e = bioct.form_en(form, n=3)
    assert e["zero"] is True
    assert e["degree"] == 3


def test_form_similar():
    out = bioct.form_similar(
        {"first": {"field": Q, "entries": ["1", "2"]},
         "second": {"field": Q, "entries": ["3", "6"]}})
    assert out["verdict"] == "Similar"


def test_isotopic_factor_swap():
    out = bioct.algebra_isotopic(
        {"field": Q,
         "first": {"kind": "decomposable",
                   "mu1": ["1", "1", "1"], "mu2": ["-1", "-1", "-1"]},
         "second": {"kind": "decomposable",
                    "mu1": ["-1", "-1", "-1"], "mu2": ["1", "1", "1"]}})
    assert out["verdict"] == "Isotopic"


def test_decompose_roundtrip():
    out = bioct.algebra_decompose(
        {"field": F5, "kind": "corestriction", "d": "2",
         "mu": [["1", "1"], ["2", "3"], ["0", "1"]]})
    assert out["decomposable"] is False
    assert out["d"] == "2"


def test_rost_construct_transfer():
    out = bioct.rost_construct(
        {"field": Q, "mode": "transfer", "d": "-1", "delta": ["0", "1"],
         "phi": [["1", "0"], ["1", "1"], ["2", "1"]]})
    assert out["descriptor"]["kind"] == "corestriction"
    assert len(out["form"]["entries"]) == 14


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        bioct.algebra_build({"field": Q, "kind": "nope"})


def test_selftest_single_fast_criterion_scale():
    out = bioct.selftest(seed=7, trials=1)
    assert out["total"] == 10
    assert out["passed"] == 10
