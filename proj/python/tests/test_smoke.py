import json
import math
import os

import pytest

import conelip

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures")

SUP_NORM_MAP = {
    "body": {
        "kind": "max-affine",
        "outputs": [[
            {"weight": [1, 0], "offset": 0},
            {"weight": [-1, 0], "offset": 0},
            {"weight": [0, 1], "offset": 0},
            {"weight": [0, -1], "offset": 0},
        ]],
    },
    "domain": {"kind": "whole", "dim": 2},
}
SUP2 = {"kind": "weighted-sup", "params": {"weights": [1, 1]}}
ABS = {"kind": "weighted-sup", "params": {"weights": [1]}}


def test_cone_order():
    c = conelip.PolyCone.orthant(2)
    assert conelip.cone_member(c, [1, 1])
    assert not conelip.cone_member(c, [1, -1])
    assert conelip.order_le(c, [0, 0], [0, 1])
    assert conelip.is_pointed(conelip.PolyCone(2, [[1, 1], [-1, 1]]))
    with pytest.raises(ValueError):
        conelip.cone_member(c, [1, 2, 3])


def test_lattice_ops():
    r = conelip.lattice_ops([3, -1], [-2, 5])
    assert list(r["pos_part"]) == [3, 0]
    assert list(r["abs"]) == [3, 1]
    assert list(r["sup"]) == [3, 5]


def test_normality_thin_sector():
    lower, exact = conelip.normality_gamma(conelip.PolyCone.sector(0.005), SUP2)
    assert exact >= 100


def test_evaluate_and_convexity():
    assert conelip.evaluate(SUP_NORM_MAP, [1, -3])[0] == 3
    assert conelip.convexity_check(SUP_NORM_MAP)
    assert conelip.epigraph_midpoint_check(SUP_NORM_MAP)


def test_certificates():
    c = conelip.certify_1d(lambda t: t * t, -2, -1, 1, 2)
    assert c["constant"] == 3
    b = conelip.certify_ball(SUP_NORM_MAP, ABS, SUP2, [0, 0], 1.0, 0.5, 1.0)
    assert b["constant"] == 4
    bad = conelip.certify_ball(SUP_NORM_MAP, ABS, SUP2, [0, 0], 2.0, 1.0, 0.5)
    assert bad["refused"] is True


def test_metrics_and_pathology():
    g = {"kind": "graduated", "family": [
        {"kind": "weighted-sup", "params": {"weights": [1, 0]}},
        {"kind": "weighted-sup", "params": {"weights": [0, 1]}},
    ]}
    assert conelip.metric_eval(g, [1, 1], [0, 0]) == 0.375
    x, y, ratio = conelip.nonlipschitz_witness(1e6)
    assert ratio > 1e6
    s = conelip.vesely_step1(8, 3)
    assert abs(s["norm_z_n"] - 3.375) < 1e-12
    p = conelip.polynomial_example(100)
    assert p["norm_Pn"] == 0.1 and p["f_Pn"] == 10


def test_run_matches_cli():
    code, out, _ = conelip.run("certify", os.path.join(FIXTURES, "t2_certify_1d.json"))
    assert code == 0
    assert json.loads(out)["constant"] == 3
    code, _, err = conelip.run("certify", os.path.join(FIXTURES, "malformed.json"))
    assert code == 2 and "line" in err
    a = conelip.run("lattice-check", seed=7)
    assert a == conelip.run("lattice-check", seed=7)
