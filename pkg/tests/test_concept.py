import pytest
from hypothesis import given, settings

from conftest import contexts
from oracles import brute_concepts, brute_covers

from dowker_fca import FormalContext, enumerate_concepts
from dowker_fca.concept import (
    concept_of_attributes,
    concept_of_objects,
    context_from_lattice,
    gamma,
    intersection_closed,
    join,
    meet,
    mu,
    next_closure,
    reconstruct_from_reduced,
    reduced_labels,
)
from dowker_fca.errors import NotALattice, NotCompleteLattice, UnknownLabel
from dowker_fca.order import antichain, chain, hasse, is_complete_lattice, is_join_dense, is_meet_dense, order_isomorphism


def by_name(lat, ctx):
    return {k.format(ctx): k for k in lat}


def test_running_example_lattice(rex):
    lat = enumerate_concepts(rex)
    assert len(lat) == 10
    # lectic order of intents, frozen from the first run and checked by hand
    assert lat.labels() == ["abcd|", "abc|5", "bc|45", "b|345", "acd|1", "ac|15", "c|145", "ad|012", "a|0125", "|012345"]
    assert is_complete_lattice(lat.poset)
    assert lat.top().format(rex) == "abcd|" and lat.bottom().format(rex) == "|012345"


def test_lattice_has_fourteen_covers(rex):
    lat = enumerate_concepts(rex)
    covers = set(hasse(lat.poset))
    exts = [k.extent for k in lat]
    assert covers == brute_covers(exts, lambda i, j: exts[i] & ~exts[j] == 0)
    assert len(covers) == 14


def test_small_lattices():
    empty = enumerate_concepts(FormalContext.from_matrix([[0]]))
    assert sorted(k.format(empty.context) for k in empty) == ["g0|", "|m0"]
    full = enumerate_concepts(FormalContext.from_matrix([[1, 1], [1, 1]]))
    assert [k.format(full.context, sep="/") for k in full] == ["g0,g1/m0,m1"]
    nothing = enumerate_concepts(FormalContext.from_matrix([]))
    assert len(nothing) == 1


def test_concept_of(rex):
    assert concept_of_objects(rex, rex.object_set("ab")).format(rex) == "abc|5"
    assert concept_of_attributes(rex, rex.attribute_set("2")).format(rex) == "ad|012"
    assert concept_of_objects(rex, 0).format(rex) == "|012345"


def test_join_meet(rex):
    lat = enumerate_concepts(rex)
    k = by_name(lat, rex)
    assert join(lat, [k["b|345"], k["c|145"]]).format(rex) == "bc|45"
    assert meet(lat, [k["acd|1"], k["abc|5"]]).format(rex) == "ac|15"
    assert join(lat, [k["ad|012"]]) == k["ad|012"]
    assert join(lat, []) == lat.bottom()
    assert meet(lat, []) == lat.top()


def test_join_meet_agree_with_order(rex):
    lat = enumerate_concepts(rex)
    for i, a in enumerate(lat.concepts):
        for j, b in enumerate(lat.concepts):
            assert lat.index_of(join(lat, [a, b])) == lat.poset.join([i, j])
            assert lat.index_of(meet(lat, [a, b])) == lat.poset.meet([i, j])


def test_gamma_mu(rex):
    lat = enumerate_concepts(rex)
    assert gamma(lat, "d").format(rex) == "ad|012"
    assert mu(lat, "4").format(rex) == "bc|45"
    for g in rex.objects:
        for m in rex.attributes:
            le = lat.poset.le(lat.index_of(gamma(lat, g)), lat.index_of(mu(lat, m)))
            assert le == rex.incident(rex.object_index(g), rex.attribute_index(m))
    with pytest.raises(UnknownLabel):
        gamma(lat, "z")
    with pytest.raises(UnknownLabel):
        mu(lat, "9")


def test_reduced_labels(rex):
    lat = enumerate_concepts(rex)
    red = reduced_labels(lat)
    got = {k.format(rex): red[i].format(rex) for i, k in enumerate(lat)}
    assert got["ad|012"] == "d|02"
    assert got["abc|5"] == "|5"
    assert got["ac|15"] == "|"
    assert reconstruct_from_reduced(lat, red) == list(lat.concepts)


def test_context_from_lattice(rex):
    one = context_from_lattice(chain(1))
    assert one.matrix() == [[1]] and len(enumerate_concepts(one)) == 1
    two = context_from_lattice(chain(2))
    assert two.matrix() == [[1, 1], [0, 1]]
    assert order_isomorphism(enumerate_concepts(two).poset, chain(2)) is not None
    lat = enumerate_concepts(rex)
    ctx = context_from_lattice(lat.poset)
    assert ctx.n_objects == ctx.n_attributes == 10
    assert order_isomorphism(enumerate_concepts(ctx).poset, lat.poset) is not None
    with pytest.raises(NotCompleteLattice):
        context_from_lattice(antichain(2))
    assert NotCompleteLattice is NotALattice


def test_next_closure_lectic_order(rex):
    intents = list(next_closure(rex))
    # lectic order: compare by the smallest differing attribute
    def lectic_less(a, b):
        diff = a ^ b
        low = diff & -diff
        return bool(b & low)
    assert all(lectic_less(a, b) for a, b in zip(intents, intents[1:]))


@settings(max_examples=200, deadline=None)
@given(contexts(max_objects=7, max_attributes=7))
def test_enumeration_matches_brute_force(ctx):
    lat = enumerate_concepts(ctx)
    got = {(frozenset(a), frozenset(b)) for a, b in (k.labels(ctx) for k in lat)}
    assert got == brute_concepts(ctx)
    assert len(got) == len(lat)


@settings(max_examples=100, deadline=None)
@given(contexts())
def test_lattice_invariants(ctx):
    lat = enumerate_concepts(ctx)
    assert all(k.is_concept(ctx) for k in lat)
    assert len(set(lat.extents())) == len(set(lat.intents())) == len(lat)
    for i, a in enumerate(lat.concepts):
        for j, b in enumerate(lat.concepts):
            sub = a.extent & ~b.extent == 0
            sup = b.intent & ~a.intent == 0
            assert lat.poset.le(i, j) == sub == sup
            assert lat.index_of(join(lat, [a, b])) == lat.poset.join([i, j])
            assert lat.index_of(meet(lat, [a, b])) == lat.poset.meet([i, j])
    assert is_complete_lattice(lat.poset)
    assert intersection_closed(lat.extents()) and intersection_closed(lat.intents())
    assert is_join_dense(lat.poset, set(lat.gamma_index))
    assert is_meet_dense(lat.poset, set(lat.mu_index))
    assert reconstruct_from_reduced(lat, reduced_labels(lat)) == list(lat.concepts)
