"""Smoke tests for the sptree extension module."""

import json

import sptree


def test_ordinals():
    assert sptree.ord_compare("w^1*3", "1000000") == 1
    assert sptree.ord_classify("w^2*1") == "limit"
    assert sptree.ord_succ("w^1*2+4") == "w^1*2+5"
    assert sptree.fundamental_seq("w^2*1", 2) == "w^1*2"


def test_build_and_rank():
    scheme = sptree.build_tree("3", "balanced3")
    data = json.loads(scheme)
    assert len(data["kinds"]) == 3

    fixpoint = json.loads(sptree.sprank(scheme, "fixpoint"))
    assert fixpoint["spr"] == "3"
    symbolic = json.loads(sptree.sprank(scheme, "symbolic"))
    assert symbolic["spr"] == "3"

    lazy = sptree.build_tree("w^1*1+1", "balanced3")
    assert json.loads(lazy)["lazy"] is True
    assert json.loads(sptree.sprank(lazy, "symbolic"))["spr"] == "w^1*1+1"

    assert sptree.weight_class(scheme).startswith("totally_balanced")


def test_chain_round_trip():
    scheme = sptree.build_tree("2", "balanced3")
    chain = sptree.chain(scheme, "balanced", 4)
    assert sptree.chain_valid(chain)
    assert json.loads(chain)["steps"][0]["degree"] == 3


def test_ideals():
    scheme = sptree.build_tree("2", "balanced3")
    assert sptree.nu(scheme, "r^1", "1~0") == 2
    assert sptree.is_radical(scheme, "1^1")
    assert not sptree.is_radical(scheme, "r^2")


def test_topology():
    countable = sptree.build_tree("2", "countable")
    report = json.loads(sptree.topology_report(countable, 3))
    assert report["crit_equals_derived"] is True
    assert report["cb_height"]["x0"] == "2"

    dot = sptree.export_dot(countable, 2)
    assert "digraph" in dot


def test_errors():
    try:
        sptree.build_tree("w^1*1", "balanced3")  # limit rank
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
