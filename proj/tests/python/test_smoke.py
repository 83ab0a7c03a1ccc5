import json
from math import comb
from pathlib import Path

import pytest

import simptor

DATA = Path(__file__).resolve().parents[2] / "data"


@pytest.mark.parametrize("group,order", [("Z2", 2), ("Z3", 3), ("Z2xZ2", 4)])
@pytest.mark.parametrize("n", [1, 2])
def test_em_levels(group, order, n):
    D = n + 1
    assert simptor.level_orders(f"em({group},{n},{D})") == [order ** comb(m, n) for m in range(D + 1)]
    assert simptor.level_orders(simptor.em(group, n, D)) == [order ** comb(m, n) for m in range(D + 1)]


def test_em_homotopy():
    rows = simptor.homotopy("em(Z2xZ2,2,3)")["homotopy"]
    assert [r["invariants"] for r in rows[:3]] == [[], [], [2, 2]]
    assert rows[3]["truncation_sensitive"]


def test_lattice_rows():
    rows = simptor.lattice(str(DATA / "lattice_example.json"))["rows"]
    assert [r["name"] for r in rows] == ["M", "cok_1", "ker_1", "cok_2", "ker_2", "0"]
    assert rows[1]["orders"] == [2, 4, 4]
    assert "cok_1(M) = 4 -> 4 -> 2" in simptor.lattice(str(DATA / "lattice_example.json"), text=True)


def test_dict_input_round_trip():
    j = simptor.build("em(Z2,1,2)")
    assert simptor.build(j) == j
    assert simptor.build(json.dumps(j)) == j


def test_radicals_and_pi():
    r = simptor.radical("em(Z3,2,3)", "geq", 2)
    assert r["torsion_orders"] == [1, 1, 3, 27]
    q = simptor.pi("em(Z2,2,3)", upper="geq:1", lower="geq:3")
    assert q["level_orders"] == [1, 1, 2, 8]


def test_groups():
    assert simptor.abelian_invariants("Z2xZ6") == [2, 2, 3]
    assert simptor.are_isomorphic("Z6", "Z2xZ3")
    assert not simptor.are_isomorphic("Z4", "Z2xZ2")


def test_errors():
    with pytest.raises(simptor.Error) as e:
        simptor.em("S3", 1, 2)
    assert e.value.code == "NotAbelian"
    assert e.value.exit_status >= 10
    with pytest.raises(simptor.Error) as e:
        simptor.pi("em(Z2,1,3)", upper="geq:2", lower="geq:1")
    assert e.value.code == "NotNested"
    with pytest.raises(simptor.Error):
        simptor.build({"bogus": 1})


def test_caps():
    caps = simptor.Caps()
    caps.max_order = 4
    with pytest.raises(simptor.Error) as e:
        simptor.build("Z5", caps=caps)
    assert e.value.code == "OrderCap"


def test_verify_is_deterministic():
    a = simptor.verify("counterexample", seed=3)
    b = simptor.verify("counterexample", seed=3)
    assert a == b
    assert a["summary"]["counterexample"]["fail"] == 0
    d4 = [r for r in a["results"] if r["case"] == "d4"]
    assert d4 and d4[0]["status"] == "pass"
    assert "counterexample" in simptor.suite_names()
