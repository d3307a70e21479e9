import re

import pytest
from hypothesis import given, settings

from conftest import contexts

from dowker_fca import enumerate_concepts
from dowker_fca.cosheaf import dowker_cosheaf
from dowker_fca.dot import export_dot, is_valid_dot, lattice_dot, poset_dot, validate_dot
from dowker_fca.order import antichain, chain, hasse

pydot = pytest.importorskip("pydot")

EDGE = re.compile(r"^\s*n(\d+) -> n(\d+);$", re.M)
NODE = re.compile(r'^\s*n(\d+) \[label="([^"]*)"', re.M)


def parses_with_pydot(text):
    graphs = pydot.graph_from_dot_data(text)
    return graphs is not None and len(graphs) == 1


def test_lattice_export(rex):
    text = export_dot(enumerate_concepts(rex))
    validate_dot(text)
    assert len(NODE.findall(text)) == 10
    assert len(EDGE.findall(text)) == 14
    assert "ad | 012" in text
    assert parses_with_pydot(text)


def test_reduced_labels(rex):
    text = lattice_dot(enumerate_concepts(rex), reduced=True)
    labels = dict(NODE.findall(text))
    assert "d | 02" in labels.values() and "b | 3" in labels.values()


def test_cosheaf_export(rex):
    text = export_dot(dowker_cosheaf(rex))
    validate_dot(text)
    assert len(NODE.findall(text)) == 11
    assert text.count("style=bold") == 8
    assert len(EDGE.findall(text)) == 16
    assert parses_with_pydot(text)


def test_poset_export():
    text = poset_dot(chain(3), ["x", "y", "z"])
    assert EDGE.findall(text) == [("0", "1"), ("1", "2")]
    assert 'label="y"' in text
    assert len(EDGE.findall(poset_dot(antichain(3)))) == 0
    with pytest.raises(TypeError):
        export_dot(object())


@pytest.mark.parametrize(
    "text",
    [
        "digraph { a -> b; }",
        "strict graph g { a -- b -- c [color=red]; }",
        'digraph { node [shape=box]; "x y" [label="q\\"r"]; subgraph s { rank=same; a; b } }',
        "graph { a; /* comment */ b // tail\n }",
        "digraph { {a b} -> c }",
    ],
)
def test_validator_accepts(text):
    assert is_valid_dot(text)
    assert parses_with_pydot(text)


@pytest.mark.parametrize(
    "text",
    [
        "digraph { a -- b }",
        "graph { a -> b }",
        "digraph { a -> }",
        "digraph { a [label] }",
        "digraph { a ",
        "digraph { } extra",
        "tree { a }",
        "digraph { a @ b }",
    ],
)
def test_validator_rejects(text):
    assert not is_valid_dot(text)
    with pytest.raises(ValueError):
        validate_dot(text)


@settings(max_examples=60, deadline=None)
@given(contexts(max_objects=5, max_attributes=5))
def test_exports_are_valid(ctx):
    lat = enumerate_concepts(ctx)
    for text in (export_dot(lat), export_dot(lat, reduced=True), export_dot(lat.poset)):
        validate_dot(text)
        assert len(EDGE.findall(text)) == len(hasse(lat.poset))
    if ctx.is_total():
        validate_dot(export_dot(dowker_cosheaf(ctx)))
