"""The eleven acceptance criteria, each with its time limit.

A summary line per criterion is printed at the end of the pytest run.
"""

import time
from contextlib import contextmanager

from conftest import ACCEPTANCE_RESULTS, seeded_contexts
from oracles import (
    RUNNING_EXAMPLE_CELLS,
    RUNNING_EXAMPLE_CONCEPTS,
    RUNNING_EXAMPLE_NON_CONCEPTS,
    brute_concepts,
    dowker_faces,
    simplicial_betti,
)

from dowker_fca import (
    check_galois_laws,
    d_ctx,
    dowker_cosheaf,
    dowker_sheaf_cochain,
    enumerate_concepts,
    order_isomorphism,
    recover_concepts,
    reduced_labels,
    running_example,
    sheaf_cohomology,
    simplicial_chain_complex,
    verify_dual_homology,
    verify_theorem1,
)
from dowker_fca.concept import intersection_closed

SEED = 20160101


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        secs = time.perf_counter() - start
        ok = ok and secs < limit
        ACCEPTANCE_RESULTS[number] = (title, ok, secs)
    assert secs < limit, f"criterion {number} took {secs:.2f}s, limit {limit}s"


def _fmt(ctx, pair):
    return pair.format(ctx)


def test_c01_running_example_concepts():
    with criterion(1, "running-example concept lattice", 1.0):
        ctx = running_example()
        got = sorted(_fmt(ctx, k) for k in enumerate_concepts(ctx))
        assert got == sorted(RUNNING_EXAMPLE_CONCEPTS)


def test_c02_reduced_labels():
    with criterion(2, "reduced labels", 1.0):
        ctx = running_example()
        lat = enumerate_concepts(ctx)
        red = reduced_labels(lat)
        want = {"ad|012": "d|02", "abc|5": "|5", "ac|15": "|"}
        for i, k in enumerate(lat.concepts):
            if _fmt(ctx, k) in want:
                assert _fmt(ctx, red[i]) == want.pop(_fmt(ctx, k))
        assert not want


def test_c03_intersection_closure_matches_extents():
    with criterion(3, "topped intersection closure equals extent lattice, 201 contexts", 30.0):
        ctxs = [running_example()] + list(seeded_contexts(SEED, 200, 6, 6, total=False))
        for ctx in ctxs:
            rep = verify_theorem1(ctx)
            assert set(rep.edges) == set(enumerate_concepts(ctx).extents())


def test_c04_dowker_complex():
    with criterion(4, "Dowker complex structure", 1.0):
        ctx = running_example()
        asc = d_ctx(ctx)
        names = lambda k: sorted("".join(asc.labels(f)) for f in asc.faces_of_dim(k))
        assert names(0) == ["a", "b", "c", "d"]
        assert names(1) == ["ab", "ac", "ad", "bc", "cd"]
        assert names(2) == ["abc", "acd"]
        assert simplicial_chain_complex(asc).betti() == [1, 0, 0]


def test_c05_cosheaf_labels():
    with criterion(5, "cosheaf Galois labels", 1.0):
        ctx = running_example()
        cs = dowker_cosheaf(ctx)
        labels = {"".join(ctx.object_labels(s)): "".join(ctx.attribute_labels(cs.costalk_vertices(s))) for s in cs.cells}
        assert labels == RUNNING_EXAMPLE_CELLS
        flagged = {"".join(ctx.object_labels(s)) for s in cs.cells if not cs.is_concept(s)}
        assert flagged == RUNNING_EXAMPLE_NON_CONCEPTS


def test_c06_concepts_recovered_from_cosheaf():
    with criterion(6, "concepts recovered from the cosheaf, 101 contexts", 30.0):
        ctxs = [running_example()] + list(seeded_contexts(SEED, 100, 6, 6, total=True))
        for ctx in ctxs:
            rec = recover_concepts(dowker_cosheaf(ctx))
            lat = enumerate_concepts(ctx)
            assert {(k.extent, k.intent) for k in rec.pairs} == {(k.extent, k.intent) for k in lat.concepts}
            assert order_isomorphism(rec.poset, lat.poset) is not None


def test_c07_sheaf_cohomology_example():
    with criterion(7, "Dowker sheaf cohomology of the running example", 1.0):
        ctx = running_example()
        cc = dowker_sheaf_cochain(ctx)
        assert cc.dims == (13, 9, 2)
        assert (cc.maps[1] @ cc.maps[0]).is_zero()
        sh = sheaf_cohomology(ctx)
        assert sh.betti == [6, 0, 0]
        dec = {"".join(ctx.object_labels(s)): set(ctx.attribute_labels(ms)) for s, ms in sh.decomposition.items()}
        assert dec == {"ad": {"0", "2"}, "acd": {"1"}, "b": {"3"}, "bc": {"4"}, "abc": {"5"}}
        assert sum(len(v) for v in dec.values()) == 6


def test_c08_sheaf_cohomology_law():
    with criterion(8, "sheaf cohomology concentrated in degree 0, 200 contexts", 60.0):
        for ctx in seeded_contexts(SEED, 200, 7, 7, total=True):
            b = sheaf_cohomology(ctx).betti
            assert b[0] == ctx.n_attributes
            assert not any(b[1:])


def test_c09_zeroth_cosheaf_homology():
    with criterion(9, "zeroth cosheaf homology vs dual Dowker complex, 101 contexts", 120.0):
        ctxs = [running_example()] + list(seeded_contexts(SEED, 100, 6, 6, total=True))
        for ctx in ctxs:
            rep = verify_dual_homology(ctx)
            want = simplicial_betti(dowker_faces(ctx.transpose()))
            assert rep.betti[: len(want)] == want and not any(rep.betti[len(want):])


def test_c10_oracle_equivalence():
    with criterion(10, "NextClosure vs brute force, 500 contexts", 60.0):
        for ctx in seeded_contexts(SEED, 500, 7, 7, total=False):
            got = set()
            for k in enumerate_concepts(ctx):
                a, b = k.labels(ctx)
                got.add((frozenset(a), frozenset(b)))
            assert got == brute_concepts(ctx)
            assert len(got) == len(enumerate_concepts(ctx))


def test_c11_galois_laws():
    with criterion(11, "Galois laws, 500 contexts", 30.0):
        for ctx in seeded_contexts(SEED, 500, 8, 8, total=False):
            v = check_galois_laws(ctx)
            assert v, v.witness
            lat = enumerate_concepts(ctx)
            assert intersection_closed(lat.extents()) and intersection_closed(lat.intents())
