import random

import pytest

from exactcat.exstruct import (
    TooManyStructures,
    UnknownDottedSpec,
    ar_conflation,
    check_two_regular,
    compose_deflations,
    count_exact_structures,
    enumerate_exact_structures,
    frobenius_structures,
    full_structure,
    is_deflation,
    parse_dotted_spec,
    pullback_deflation,
    random_deflation,
    random_projective,
    split_structure,
    structure,
    to_dot,
    translation_quiver,
)
from exactcat.exstruct import _orbit_partition
from exactcat.repmod import random_map

from conftest import load_algebra, load_tq


def names(tq, vs):
    return {tq.vertices[v] for v in vs}


def test_ex1_two_regular_and_tau():
    tq = load_tq("ex1")
    regular = {tq.vertices[r.vertex] for r in tq.reports if r.is_two_regular}
    assert regular == {"1", "3", "4", "7", "8", "9", "11"}
    tau = {tq.vertices[i]: tq.vertices[j] for i, j in tq.dotted_arrows}
    assert tau == {"1": "8", "3": "11", "4": "1", "7": "3", "8": "4", "9": "5", "11": "7"}


def test_ex1_orbits():
    tq = load_tq("ex1")
    orbits = {o.name: (names(tq, o.vertices), len(o.arrows), o.stable) for o in tq.dotted_orbits}
    assert orbits == {
        "A": ({"1", "4", "8"}, 3, True),
        "B": ({"3", "7", "11"}, 3, True),
        "C": ({"5", "9"}, 1, False),
    }


def test_ex1_counts():
    tq = load_tq("ex1")
    assert count_exact_structures(tq) == 128
    specs = list(enumerate_exact_structures(tq))
    assert len(specs) == 128 and len({s.mask for s in specs}) == 128
    frob = frobenius_structures(tq)
    assert len(frob) == 4
    assert sorted(s.label() for s in frob) == ["A", "A,B", "B", "split"]
    # Frobenius structures are exactly the unions of stable orbits
    assert sorted(s.mask for s in specs if s.frobenius) == sorted(s.mask for s in frob)
    assert all(s.is_union_of_stable_orbits() == s.frobenius for s in specs)


@pytest.mark.parametrize("vertex", ["2", "5", "6", "10"])
def test_ex1_non_regular_reasons(vertex):
    ab = load_algebra("ex1")
    rep = check_two_regular(ab, ab.presentation.vertex_index(vertex))
    assert not rep.is_two_regular and rep.reason == "pd = 1"


def test_aus2_self_loop():
    tq = load_tq("aus2")
    assert tq.dotted_arrows == [(1, 1)]
    assert [o.name for o in tq.stable_orbits] == ["A"]
    assert count_exact_structures(tq) == 2
    assert all(s.frobenius for s in enumerate_exact_structures(tq))


@pytest.mark.parametrize("name", ["a2", "ss1"])
def test_only_split(name):
    tq = load_tq(name)
    assert tq.dotted_arrows == [] and count_exact_structures(tq) == 1
    assert [s.label() for s in enumerate_exact_structures(tq)] == ["split"]


def test_solid_arrows_count():
    tq = load_tq("ex1")
    assert len(tq.solid_arrows) == 16 and all(m == 1 for *_, m in tq.solid_arrows)
    ab = tq.algebra
    # solid arrow P_i -> P_j for each presentation arrow j -> i
    assert sorted((i, j) for i, j, _ in tq.solid_arrows) == sorted((a.target, a.source) for a in ab.arrows)


def test_parse_dotted_spec():
    tq = load_tq("ex1")
    assert parse_dotted_spec(tq, "A,B").label() == "A,B"
    assert parse_dotted_spec(tq, "").label() == "split"
    assert parse_dotted_spec(tq, "all").mask == 127
    s = parse_dotted_spec(tq, "0,1")
    assert s.mask == 3 and s.label() == "0,1"
    with pytest.raises(UnknownDottedSpec):
        parse_dotted_spec(tq, "D")
    with pytest.raises(UnknownDottedSpec):
        parse_dotted_spec(tq, "7")


def test_projective_injective_vertices():
    tq = load_tq("ex1")
    s = parse_dotted_spec(tq, "C")  # the arrow 9 ~> 5
    assert names(tq, set(range(11)) - set(s.projective_vertices)) == {"9"}
    assert names(tq, set(range(11)) - set(s.injective_vertices)) == {"5"}
    assert not s.frobenius


def test_orbit_naming_and_enumeration_cap():
    orbits = _orbit_partition(4, [(0, 1), (1, 0), (3, 3)])
    named = {o.name: o.vertices for o in orbits if o.arrows}
    assert named == {"A": (0, 1), "B": (3,)}
    assert [o.name for o in orbits if not o.arrows] == ["[2]"]

    class Fake:
        dotted_arrows = [(k, k) for k in range(21)]

    with pytest.raises(TooManyStructures):
        next(enumerate_exact_structures(Fake()))


@pytest.mark.parametrize("name", ["ex1", "aus2"])
def test_ar_conflations_are_deflations(name):
    tq = load_tq(name)
    spec = full_structure(tq)
    for arrow in tq.dotted_arrows:
        conf = ar_conflation(spec, arrow)
        cert = is_deflation(spec, conf.g)
        assert cert.verdict
        assert dict(cert.factor_multiset) == {arrow[0]: 1}
        assert (conf.g @ conf.f).is_zero() and conf.f.is_injective()


def test_deflation_rejected_outside_structure():
    tq = load_tq("ex1")
    A = parse_dotted_spec(tq, "A")
    arrow_b = next(a for a in tq.dotted_arrows if tq.orbit_of(a[0]).name == "B")
    g = ar_conflation(full_structure(tq), arrow_b).g
    cert = is_deflation(A, g)
    assert not cert.verdict and "outside" in cert.reason
    with pytest.raises(UnknownDottedSpec):
        ar_conflation(A, arrow_b)


@pytest.mark.parametrize("label", ["all", "A", "C", ""])
def test_axioms_sampled(label):
    tq = load_tq("ex1")
    spec = parse_dotted_spec(tq, label)
    rng = random.Random(hash(label) % 1000)
    for _ in range(4):
        g = random_deflation(spec, rng)
        assert is_deflation(spec, g).verdict
        h = random_map(random_projective(tq.algebra, rng, 3), g.target, rng)
        E, k, cert = pullback_deflation(spec, g, h)
        assert cert.verdict, cert.reason
        g2 = random_deflation(spec, rng)
        _, k2, _ = pullback_deflation(spec, g2, random_map(g.source, g2.target, rng))
        assert compose_deflations(spec, g, k2).verdict


def test_dot_output():
    tq = load_tq("ex1")
    dot = to_dot(tq)
    assert dot == to_dot(load_tq("ex1"))
    assert dot.count("style=solid") == 16 and dot.count("style=dashed") == 7
    assert dot.count("shape=") == 11
    aus = to_dot(load_tq("aus2"))
    assert '"v" -> "v" [style=dashed]' in aus and aus.count("style=solid") == 2
    ss = to_dot(load_tq("ss1"))
    assert "->" not in ss and ss.count("shape=") == 1
    split = to_dot(tq, split_structure(tq))
    assert split.count("doublecircle") == 11 and "dashed" not in split


def test_structure_rejects_non_dotted():
    tq = load_tq("ex1")
    with pytest.raises(UnknownDottedSpec):
        structure(tq, [(0, 1)])


def test_aus2_trivial_orbit():
    tq = load_tq("aus2")
    assert [(o.name, o.stable) for o in tq.orbits] == [("[u]", False), ("A", True)]


def test_ar_conflation_from_vertex_1():
    tq = load_tq("ex1")
    spec = full_structure(tq)
    one = tq.algebra.presentation.vertex_index("1")
    conf = ar_conflation(spec, (one, tq.tau(one)))
    assert names(tq, conf.X.summands) == {"8"} and tq.orbit_of(one).name == "A"
    assert names(tq, conf.Z.summands) == {"1"}


@pytest.mark.parametrize("label", ["", "A", "all"])
def test_trivial_pullbacks_and_composites(label):
    from exactcat.repmod import identity_map, zero_map

    tq = load_tq("ex1")
    spec = parse_dotted_spec(tq, label)
    rng = random.Random(21)
    g = random_deflation(spec, rng)
    assert is_deflation(spec, identity_map(g.target)).verdict
    # along the identity the pullback is g itself
    E, k, cert = pullback_deflation(spec, g, identity_map(g.target))
    assert cert.verdict and E.dim == g.source.dim
    # along zero the pullback is W ⊕ ker g and k is a split epi
    W = random_projective(tq.algebra, rng, 2)
    E, k, cert = pullback_deflation(spec, g, zero_map(W, g.target))
    assert cert.verdict and k.is_surjective() and E.dim == W.dim + (g.source.dim - g.rank())
    # composing with an identity returns the certificate of g
    assert compose_deflations(spec, g, identity_map(g.source)).factor_multiset == is_deflation(spec, g).factor_multiset
