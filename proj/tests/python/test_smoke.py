import pytest

import nbl


def test_classes_and_order():
    assert nbl.group_order("S3") == 6
    sizes = sorted(c["size"] for c in nbl.classes("A4"))
    assert sizes == [1, 3, 4, 4]


def test_braid_move():
    # Q_1: (a, b) -> (a b a^-1, a), products left to right, indices from 1
    assert nbl.braid("S3", ["(1 2)", "(1 3)"], 1) == ["(2 3)", "(1 2)"]
    assert nbl.braid("S3", ["(2 3)", "(1 2)"], 1, inverse=True) == ["(1 2)", "(1 3)"]


def test_components_s3():
    out = nbl.components("S3", 4, classes="(1 2)")
    assert out["complete"]
    sizes = sorted(c["orbit_size"] for c in out["components"])
    assert sum(sizes) == out["tuples"]
    galois = nbl.components("S3", 4, classes="(1 2)", cover="galois")
    assert [c["orbit_size"] for c in galois["components"]] == [24]


def test_series_period():
    out = nbl.series("D5", 4, 10, classes="(2 5)(3 4)", cover="galois")
    assert [out["points"][r] for r in range(4, 11)] == [1, 0, 1, 0, 1, 0, 1]
    assert out["period"]["period"] == 2


def test_hf():
    counts = [nbl.hf_count("S3", ["(1 2 3)"], "(1 2 3)=1", r) for r in range(2, 10)]
    assert counts == [1, 2, 1, 2, 3, 2, 3, 4]


def test_rationality():
    assert nbl.is_rational("S3", "(1 2 3)=2") == (True, None, None)
    assert nbl.is_rational("C3", "(1 2 3)=2") == (False, 2, "(1 2 3)")


def test_lift_and_cpfv():
    v = nbl.lift(["(1 2 3)", "(1 3 2)", "(1 2 3)", "(1 3 2)"])
    assert v["degree"] == 4
    table = nbl.cpfv(4, 4)
    assert table["complete"]


def test_errors():
    with pytest.raises(nbl.ParseError):
        nbl.group_order("Q3")
    with pytest.raises(nbl.Error):
        nbl.hf_count("S3", ["(1 2 3)"], "(1 2 3)=0", 3)


def test_verify_suite():
    assert "rationality" in nbl.suite_names()
    res = nbl.verify("rationality")
    assert res["passed"] and res["failures"] == 0
