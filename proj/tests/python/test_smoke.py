import pytest

import poncelet


def test_worked_example():
    ex = poncelet.verify_example()
    assert ex["all_pass"]
    assert len(ex["assertions"]) == 8


def test_class3_count():
    row = poncelet.pencil_census(3, 43)
    assert row["gamma"] == 38
    assert row["psi"] == 41 * 40


def test_bad_params():
    with pytest.raises(ValueError):
        poncelet.pencil_census(14, 13, params=[0])


def test_ngon_condition():
    # C_11 and C_36 over F_43
    a = [0, 0, 0, 11, 1 - 11, -1]
    b = [0, 0, 0, 36, 1 - 36, -1]
    assert poncelet.ngon_condition(43, 1, a, b, 3)
    assert not poncelet.ngon_condition(43, 1, a, [0, 0, 0, 35, 1 - 35, -1], 3)


def test_trace():
    t = poncelet.trace(43, 11, 36, [1, 17, 34])
    assert t["kind"] == "closed"
    assert t["n"] == 3
    assert t["vertices"][0] == [1, 17, 34]


def test_pair_census():
    ex = poncelet.pair_census(3, exhaustive=True)
    lo, hi = poncelet.theorem_bounds(3)
    assert ex["mode"] == "exhaustive"
    assert ex["psi_total"] > 0
    mc1 = poncelet.pair_census(7, mc=20000, seed=3)
    mc2 = poncelet.pair_census(7, mc=20000, seed=3, workers=2)
    assert mc1["gamma_total"] == mc2["gamma_total"]


def test_char3():
    rep = poncelet.char3(3)
    assert rep["delta_always_square"]
