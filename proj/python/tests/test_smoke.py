import json

import pytest

import iyb


def test_group_info():
    g = iyb.Group("heis:5")
    assert g.order == 125
    info = g.info()
    assert info["nilpotency_class"] == 2
    assert len(info["center"]) == 5
    assert iyb.Group("cyclic:6").info()["nilpotency_class"] == 1


def test_bad_spec():
    with pytest.raises(ValueError):
        iyb.Group("nosuch:3")


def test_howell_form():
    assert iyb.howell_form(4, 2, [[2, 0], [0, 2], [2, 2]]) == [[2, 0], [0, 2]]


def test_hertweck_round_trip():
    text = iyb.hertweck_certificate(5)
    cert = iyb.load(text)
    assert cert["kind"] == "module-structure"
    assert iyb.canonical_text(text) == text
    assert iyb.verify_certificate(text, full=True)["ok"]

    cert["cocycle"]["images"][7] = (cert["cocycle"]["images"][7] + 1) % 5
    bad = json.dumps(cert, sort_keys=True, separators=(",", ":")) + "\n"
    res = iyb.verify_certificate(bad)
    assert not res["ok"]
    assert res["check"] == "cocycle"


def test_hertweck_rejects_bad_q():
    with pytest.raises(RuntimeError):
        iyb.hertweck_certificate(6)
    with pytest.raises(RuntimeError):
        iyb.hertweck_certificate(7)
    assert iyb.verify_certificate(iyb.hertweck_certificate(7, allow_any_odd_q=True))["ok"]


def test_heuristic_is_deterministic():
    a = iyb.heuristic_certificate("heis:3", seed=42)
    b = iyb.heuristic_certificate("heis:3", seed=42)
    assert a == b
    assert iyb.verify_certificate(a)["kind"] == "ideal-complement"
    assert iyb.verify_certificate(a)["ok"]


def test_brute_force_counts():
    assert iyb.brute_force_count("cyclic:2", 2) == 1
    assert iyb.brute_force_count("cyclic:4", 2) == 2


def test_truncated_certificate():
    text = iyb.class2_odd_certificate("heis:3")
    with pytest.raises(ValueError):
        iyb.verify_certificate(text[:50])
