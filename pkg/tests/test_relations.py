from itertools import combinations

import pytest
from hypothesis import given, settings

from rgctree.core import EdgeLabeling, PhyloTree, RelationGraph, contract_edge, edge
from rgctree.errors import TaxonMismatch, UnrootedTree
from rgctree.quotient import build_quotient
from rgctree.recognize import check_undirected
from rgctree.relations import (
    explains,
    leaf_distances,
    path_summary,
    relation_at_least_k,
    relation_directed1,
    relation_single1,
    relation_squiggle,
    relation_zero,
)

from strategies import labeled_trees


def pairs(*ps):
    return {frozenset(p) for p in ps}


def s3():
    t = PhyloTree.from_edges([("v", "x"), ("v", "y"), ("v", "z")])
    return t, EdgeLabeling({edge("v", "x"): 1, edge("v", "y"): 0, edge("v", "z"): 1})


def caterpillar3():
    t = PhyloTree.from_edges([("r", "x1"), ("r", "v"), ("v", "x2"), ("v", "x3")], root="r")
    lab = EdgeLabeling({edge("r", "x1"): 0, edge("r", "v"): 1, edge("v", "x2"): 0, edge("v", "x3"): 1})
    return t, lab


def rooted_star():
    t = PhyloTree.from_edges([("r", "x"), ("r", "y"), ("r", "z")], root="r")
    return t, EdgeLabeling({edge("r", "x"): 0, edge("r", "y"): 1, edge("r", "z"): 1})


def brute_ones(t, lab, x, y):
    # independent recount straight from the path
    from rgctree.core import tree_path
    return sum(lab[e] for e in tree_path(t, x, y))


def test_zero_classes():
    t, lab = s3()
    assert relation_zero(t, lab) == {frozenset("x"), frozenset("y"), frozenset("z")}
    zeros = EdgeLabeling({e: 0 for e in t.edges})
    ones = EdgeLabeling({e: 1 for e in t.edges})
    assert relation_zero(t, zeros) == {frozenset("xyz")}
    assert len(relation_zero(t, ones)) == 3


def test_single1_star_example():
    t, lab = s3()
    assert relation_single1(t, lab) == pairs("xy", "yz")
    assert relation_single1(t, EdgeLabeling({e: 0 for e in t.edges})) == set()


def test_single1_caterpillar4():
    # the rooted 4-leaf caterpillar of a directed path, unrooted view
    from rgctree.directed import infer_rooted_component
    from rgctree.core import QuotientGraph
    q = QuotientGraph.from_edges(dir=[("x1", "x2"), ("x2", "x3"), ("x3", "x4")])
    t, lab = infer_rooted_component(q)
    got = relation_single1(t, lab)
    want = {frozenset((x, y)) for x, y in combinations(sorted(t.leaves), 2)
            if brute_ones(t, lab, x, y) == 1}
    assert got == want == {frozenset(("x1", "x2")), frozenset(("x2", "x3")), frozenset(("x3", "x4"))}


def test_directed1_examples():
    t, lab = caterpillar3()
    assert relation_directed1(t, lab) == {("x1", "x2"), ("x2", "x3")}
    t, lab = rooted_star()
    assert relation_directed1(t, lab) == {("x", "y"), ("x", "z")}
    with pytest.raises(UnrootedTree):
        relation_directed1(*s3())


def test_at_least_k():
    t, lab = s3()
    assert relation_at_least_k(t, lab, 2) == pairs("xz")
    assert relation_at_least_k(t, EdgeLabeling({e: 0 for e in t.edges}), 3) == set()
    with pytest.raises(ValueError):
        relation_at_least_k(t, lab, 0)


def test_squiggle():
    t, lab = caterpillar3()
    assert relation_squiggle(t, lab) == {("x1", "x2"), ("x2", "x3"), ("x1", "x3")}
    t, lab = rooted_star()
    assert relation_squiggle(t, lab) == {("x", "y"), ("x", "z")}
    t0 = EdgeLabeling({e: 0 for e in t.edges})
    assert relation_squiggle(t, t0) == set()


def test_path_summary():
    t, lab = caterpillar3()
    s = path_summary(t, lab, "x1", "x3")
    assert (s.ones_total, s.ones_x_side, s.ones_y_side) == (2, 0, 2)


def test_explains_examples():
    t, lab = s3()
    rel = RelationGraph.build(taxa="xyz", sym=[("x", "y"), ("y", "z")])
    assert explains(t, lab, rel)
    assert not explains(t, lab, RelationGraph.build(taxa="xyz", sym=[("x", "z")]))
    assert explains(PhyloTree.single("a"), EdgeLabeling(), RelationGraph.build(taxa="a"))
    with pytest.raises(TaxonMismatch):
        explains(t, lab, RelationGraph.build(taxa="xyw"))


def test_explains_mixed():
    t, lab = caterpillar3()
    rel = RelationGraph.build(sym=[("x2", "x3")], dir=[("x1", "x2")], mode="mixed")
    assert explains(t, lab, rel)
    wrong = RelationGraph.build(sym=[("x2", "x3")], dir=[("x2", "x1")], mode="mixed")
    assert not explains(t, lab, wrong)


@settings(max_examples=200, deadline=None)
@given(labeled_trees(max_n=6))
def test_zero_is_an_equivalence(tl):
    t, lab = tl
    classes = relation_zero(t, lab)
    assert set().union(*classes) == t.leaves
    d = leaf_distances(t, lab)
    cls = {x: c for c in classes for x in c}
    for (x, y), n in d.items():
        assert (n == 0) == (cls[x] == cls[y])


@settings(max_examples=200, deadline=None)
@given(labeled_trees(max_n=6))
def test_no_single1_triangles(tl):
    t, lab = tl
    s = relation_single1(t, lab)
    for x, y, z in combinations(sorted(t.leaves), 3):
        assert not ({frozenset((x, y)), frozenset((y, z)), frozenset((x, z))} <= s)


@settings(max_examples=200, deadline=None)
@given(labeled_trees(max_n=6))
def test_single1_is_union_of_class_blocks(tl):
    t, lab = tl
    classes = sorted(relation_zero(t, lab), key=min)
    s = relation_single1(t, lab)
    for a, b in combinations(classes, 2):
        hits = [frozenset((x, y)) in s for x in a for y in b]
        assert all(hits) or not any(hits)


@settings(max_examples=200, deadline=None)
@given(labeled_trees(max_n=6))
def test_quotient_is_forest(tl):
    t, lab = tl
    rel = RelationGraph(t.leaves, relation_zero(t, lab), relation_single1(t, lab))
    assert check_undirected(build_quotient(rel))


@settings(max_examples=200, deadline=None)
@given(labeled_trees(min_n=2, max_n=6, rooted=True))
def test_directed_symmetrizes_to_single1(tl):
    t, lab = tl
    d = relation_directed1(t, lab)
    assert {frozenset(p) for p in d} == relation_single1(t, lab)
    assert relation_directed1(t, lab) <= relation_squiggle(t, lab)


@settings(max_examples=200, deadline=None)
@given(labeled_trees(min_n=4, max_n=6))
def test_contracting_zero_edges_keeps_relations(tl):
    t, lab = tl
    for e in sorted(t.edges, key=sorted):
        if t.is_interior(e) and lab[e] == 0:
            t2, l2 = contract_edge(t, lab, e)
            assert relation_single1(t2, l2) == relation_single1(t, lab)
            assert relation_zero(t2, l2) == relation_zero(t, lab)


@settings(max_examples=150, deadline=None)
@given(labeled_trees(min_n=1, max_n=6))
def test_at_least_one_is_complement_of_zero(tl):
    t, lab = tl
    cls = {x: c for c in relation_zero(t, lab) for x in c}
    want = {frozenset((x, y)) for x, y in combinations(sorted(t.leaves), 2) if cls[x] != cls[y]}
    assert relation_at_least_k(t, lab, 1) == want
