import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import contexts
from oracles import RUNNING_EXAMPLE_CELLS, RUNNING_EXAMPLE_NON_CONCEPTS

from dowker_fca import FormalContext, enumerate_concepts
from dowker_fca.complexes import d_ctx, face_poset
from dowker_fca.cosheaf import (
    check_extension,
    dowker_cosheaf,
    extension,
    m_hat,
    pos_rep,
    recover_concepts,
    unique_costalk_lattice,
    verify_cosheaf_recovery,
)
from dowker_fca.errors import EmptyDowkerComplex, NotAFacePair
from dowker_fca.order import order_isomorphism


def name(ctx, mask, side="objects"):
    return "".join(ctx.object_labels(mask) if side == "objects" else ctx.attribute_labels(mask))


def test_cells_and_labels(rex):
    cs = dowker_cosheaf(rex)
    assert len(cs.cells) == 11
    got = {name(rex, s): name(rex, cs.costalk_vertices(s), "attributes") for s in cs.cells}
    assert got == RUNNING_EXAMPLE_CELLS
    assert {name(rex, s) for s in cs.cells if not cs.is_concept(s)} == RUNNING_EXAMPLE_NON_CONCEPTS
    assert cs.galois_label(rex.object_set("ad")).format(rex) == "ad|012"
    assert cs.costalk(rex.object_set("a")).facets == (rex.attribute_set("0125"),)
    assert cs.to_json()["cells"][0] == {"face": ["a"], "costalk": ["0", "1", "2", "5"], "is_concept": True}


def test_small_and_empty_cosheaves():
    one = dowker_cosheaf(FormalContext.from_matrix([[1]]))
    assert one.cells == (1,) and one.costalk_vertices(1) == 1
    with pytest.raises(EmptyDowkerComplex):
        dowker_cosheaf(FormalContext.from_matrix([[0, 0], [0, 0]]))


def test_extensions(rex):
    cs = dowker_cosheaf(rex)
    a, ab, abc = (rex.object_set(x) for x in ("a", "ab", "abc"))
    assert extension(cs, a, a).vertex_map == {m: m for m in (0, 1, 2, 5)}
    e = extension(cs, a, ab)
    assert e.vertex_map == {5: 5} and check_extension(cs, e)
    assert extension(cs, a, ab).compose(extension(cs, ab, abc)) == extension(cs, a, abc)
    with pytest.raises(NotAFacePair):
        extension(cs, ab, a)
    with pytest.raises(NotAFacePair):
        extension(cs, a, rex.object_set("bd"))


def test_extension_functoriality_everywhere(rex):
    cs = dowker_cosheaf(rex)
    elems = cs.base.elements
    for s in elems:
        for t in elems:
            if s & ~t:
                continue
            assert check_extension(cs, extension(cs, s, t))
            for u in elems:
                if t & ~u == 0:
                    assert extension(cs, s, t).compose(extension(cs, t, u)) == extension(cs, s, u)


def test_pos_rep(rex):
    p = pos_rep(rex)
    assert len(p) == 11
    assert order_isomorphism(p, face_poset(d_ctx(rex))) is not None
    assert len(pos_rep(FormalContext.from_matrix([[0, 0]]))) == 0
    # every extent lies in the poset, apart from the extremes
    sets = set(p.elements) | {0, rex.all_objects}
    assert set(enumerate_concepts(rex).extents()) <= sets


def test_unique_costalks(rex):
    rep = unique_costalk_lattice(dowker_cosheaf(rex))
    got = sorted(name(rex, b, "attributes") for b in rep.poset.elements)
    assert got == sorted(["345", "145", "0125", "012", "5", "45", "15", "1", ""])
    assert [name(rex, b, "attributes") for b in rep.extremes_added] == ["012345"]
    full = unique_costalk_lattice(dowker_cosheaf(FormalContext.from_matrix([[1, 1], [1, 1]])))
    assert list(full.poset.elements) == [3] and full.extremes_added == ()


def test_recover_concepts(rex):
    rec = recover_concepts(dowker_cosheaf(rex))
    assert sorted(k.format(rex) for k in rec.pairs) == sorted(enumerate_concepts(rex).labels())
    one = recover_concepts(dowker_cosheaf(FormalContext.from_matrix([[1]])))
    assert len(one.pairs) == 1


def test_recovery_is_invariant_under_relabeling(rex):
    perm = rex.relabel([2, 0, 3, 1], [5, 3, 1, 0, 4, 2])
    a = recover_concepts(dowker_cosheaf(rex))
    b = recover_concepts(dowker_cosheaf(perm))
    assert order_isomorphism(a.poset, b.poset) is not None


def test_m_hat(rex):
    assert name(rex, m_hat(rex, rex.object_set("ad")), "attributes") == "02"
    assert name(rex, m_hat(rex, rex.object_set("bc")), "attributes") == "4"
    assert m_hat(rex, rex.object_set("ab")) == 0


@settings(max_examples=120, deadline=None)
@given(contexts(total=True))
def test_cosheaf_invariants(ctx):
    cs = dowker_cosheaf(ctx)
    assert set(cs.cells) == d_ctx(ctx).face_set
    parts = [m_hat(ctx, s) for s in cs.cells]
    covered = 0
    for p in parts:
        assert covered & p == 0
        covered |= p
    assert covered == ctx.all_attributes
    for s in cs.cells:
        assert m_hat(ctx, s) & ~cs.costalk_vertices(s) == 0
        assert cs.costalk(s).vertex_set == cs.costalk_vertices(s)
    verify_cosheaf_recovery(ctx)
    unique_costalk_lattice(cs)


@settings(max_examples=60, deadline=None)
@given(contexts(total=True), st.randoms(use_true_random=False))
def test_recovery_after_random_relabeling(ctx, rnd):
    objs = list(range(ctx.n_objects))
    atts = list(range(ctx.n_attributes))
    rnd.shuffle(objs)
    rnd.shuffle(atts)
    a = recover_concepts(dowker_cosheaf(ctx))
    b = recover_concepts(dowker_cosheaf(ctx.relabel(objs, atts)))
    assert order_isomorphism(a.poset, b.poset) is not None
