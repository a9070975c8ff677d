import json
import math
from fractions import Fraction

import pytest

import negdep as nd


def test_measure_roundtrip_and_queries():
    m = nd.measure(2, {"01": "1/2", "10": Fraction(1, 2)})
    assert m.n == 2
    assert m.atoms == [("01", "1/2"), ("10", "1/2")]
    assert Fraction(m.probability("01")) == Fraction(1, 2)
    assert nd.Measure.from_json(m.to_json()) == m
    assert m == nd.family("antipair")


def test_bad_measure_raises():
    with pytest.raises(nd.NegdepError):
        nd.measure(2, {"01": "1/2", "10": "1/3"})
    with pytest.raises(nd.NegdepError):
        nd.family("nand:x")


def test_condition_and_marginal():
    m = nd.family("nand:3")
    assert m.condition({1: 1}).atoms == [("00", "1/3"), ("01", "1/3"), ("10", "1/3")]
    assert [Fraction(p) for _, p in m.marginal([1]).atoms] == [Fraction(1, 4), Fraction(3, 4)]


def test_check_notions():
    assert set(nd.notions()) == {"nc", "cyl", "na", "nr", "cna", "sc", "rayleigh"}
    nand3 = nd.family("nand:3")
    assert nd.check(nand3, "nr")["verdict"] == "Holds"
    sc = nd.check(nand3, "sc")
    assert sc["verdict"] == "Fails" and sc["recheck"]
    for notion in nd.notions():
        assert not nd.check(nd.family("pospair"), notion)["passed"]
        assert nd.check(nd.family("indep:1/3,1/2"), notion)["passed"]


def test_dominance_and_coupling():
    half = nd.family("indep:1/2")
    sure = nd.measure(1, {"1": 1})
    assert nd.dominance(half, sure)["dominates"]
    failed = nd.dominance(sure, half)
    assert not failed["dominates"]
    assert failed["certificate_valid"]
    c = nd.coupling(half, sure)
    assert c["valid"] and Fraction(c["displacement"]) == Fraction(1, 2)
    with pytest.raises(nd.NegdepError):
        nd.coupling(sure, half)


def test_martingale_and_pick():
    m = nd.family("nand:3")
    assert nd.pick_index(m)["index"] == 2
    tree = nd.martingale(m)
    assert Fraction(tree["root"]["y"]) == Fraction(7, 4)
    assert Fraction(tree["max_gap"]) <= 1
    fixed = nd.martingale(m, order=[1, 2, 3])
    assert Fraction(fixed["max_increment"]) == Fraction(1, 2)
    table = nd.martingale(m, f=[0, 1, 1, 2, 1, 2, 2, 3])
    assert table["root"]["y"] == tree["root"]["y"]


def test_tail_and_bound():
    report = nd.tail(nd.family("nand:4"), "sum", monotone=True)
    assert report["verdict"] and all(row["pass"] for row in report["rows"])
    assert nd.theorem_bound(3, 1) == pytest.approx(math.exp(-1 / 6), rel=1e-12)
    bad = nd.tail(nd.family("pospair"), "sum", grid=["1"])
    assert not bad["verdict"]


def test_run_cli(tmp_path):
    code, out, _ = nd.run_cli(["check", "--family", "nand:3", "--notions", "nr"])
    assert code == 0 and "Holds" in out
    code, _, _ = nd.run_cli(["check", "--family", "nand:3", "--notions", "sc"])
    assert code == 1
    code, _, err = nd.run_cli(["check", "--family", "bogus:1"])
    assert code == 2 and err
    path = tmp_path / "m.json"
    assert nd.run_cli(["family", "--spec", "nand:3", "-o", str(path)])[0] == 0
    assert nd.Measure.from_json(path.read_text()) == nd.family("nand:3")
    assert json.loads(path.read_text())["n"] == 3
