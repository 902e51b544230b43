import random

import pytest

from exactcat.exactlin import IntegerMatrix
from exactcat.exstruct import parse_dotted_spec
from exactcat.k0 import (
    GrothendieckReport,
    ar_relation_vector,
    conflation_vector,
    k0_group,
    sample_conflation_vector,
    verify_ex_equals_ar,
)

from conftest import load_tq


def test_conflation_vector():
    assert conflation_vector(3, (0,), (1, 1), (2,)) == [1, -2, 1]
    assert conflation_vector(2, (), (), ()) == [0, 0]


def test_aus2():
    tq = load_tq("aus2")
    spec = parse_dotted_spec(tq, "0")
    # 0 -> P_v -> P_u -> P_v -> S_v -> 0 gives 2[v] - [u]
    assert ar_relation_vector(spec, (1, 1)) == [-1, 2]
    rep = k0_group(spec)
    assert rep.group_text() == "Z" and rep.free_rank == 1 and rep.torsion == []
    ver = verify_ex_equals_ar(spec, 50, seed=0, report=rep)
    assert ver.ok and ver.passed == 50


@pytest.mark.parametrize("name", ["ex1", "aus2", "a2", "ss1"])
def test_split_is_free(name):
    tq = load_tq(name)
    rep = k0_group(parse_dotted_spec(tq, ""))
    n = tq.num_vertices
    assert rep.group_text() == ("Z" if n == 1 else f"Z^{n}")


@pytest.mark.parametrize("label, text", [("all", "Z^4"), ("A", "Z^8"), ("B", "Z^8"), ("C", "Z^10"), ("A,B", "Z^5")])
def test_ex1_groups(label, text):
    rep = k0_group(parse_dotted_spec(load_tq("ex1"), label))
    assert rep.group_text() == text


def test_group_text_with_torsion():
    rep = GrothendieckReport(None, IntegerMatrix.from_rows([[2, 0], [0, 0]]), 1, [2])
    assert rep.group_text() == "Z + Z/2"
    assert GrothendieckReport(None, IntegerMatrix(0, 0), 0, []).group_text() == "0"


@pytest.mark.parametrize("label", ["all", "A", "B,C"])
def test_ex_equals_ar_on_ex1(label):
    spec = parse_dotted_spec(load_tq("ex1"), label)
    ver = verify_ex_equals_ar(spec, 20, seed=3)
    assert ver.ok, ver.failures


def test_wrong_lattice_is_detected():
    # conflations of the full structure are not all split relations
    tq = load_tq("ex1")
    full = parse_dotted_spec(tq, "all")
    split_report = k0_group(parse_dotted_spec(tq, ""))
    ver = verify_ex_equals_ar(full, 20, seed=1, report=split_report)
    assert not ver.ok and ver.failures


def test_sample_vector_split_structure():
    spec = parse_dotted_spec(load_tq("ex1"), "")
    v, M = sample_conflation_vector(spec, random.Random(0))
    assert v == [0] * 11 and M is None


def test_samples_must_be_positive():
    with pytest.raises(ValueError):
        verify_ex_equals_ar(parse_dotted_spec(load_tq("aus2"), "0"), 0)
