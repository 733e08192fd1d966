import pytest
from hypothesis import given, settings

from rgctree.core import EdgeLabeling, PhyloTree, QuotientGraph, RelationGraph, canonical_form, edge
from rgctree.errors import DoesNotExplain, NotATree, NotInClassT, RejectedRelation
from rgctree.oracle import brute_force_explainers
from rgctree.relations import explains, relation_single1, relation_zero
from rgctree.undirected import (
    assembly_size,
    component_tree,
    forest_tree,
    forest_tree_choices,
    in_class_T,
    is_least_resolved,
    make_least_resolved,
    phi,
)

from strategies import forests


def Q(vs=(), sym=()):
    return QuotientGraph.from_edges(vs, sym=sym, mode="undirected")


def rel_of(q):
    return q.as_relation()


def test_component_tree_path():
    t, lab = component_tree(Q(sym=[("x", "y"), ("y", "z")]))
    c = "·y"
    assert t.adjacency[c] == {"x", "y", "z"}
    assert (lab[edge(c, "x")], lab[edge(c, "y")], lab[edge(c, "z")]) == (1, 0, 1)


def test_component_tree_degenerate():
    t, lab = component_tree(Q("a"))
    assert t.vertices == {"a"} and not lab
    t, lab = component_tree(Q(sym=[("a", "b")]))
    assert t.edges == {edge("a", "b")} and lab[edge("a", "b")] == 1
    with pytest.raises(NotATree):
        component_tree(Q(sym=[("a", "b"), ("b", "c"), ("a", "c")]))


def test_phi_examples():
    q = Q(sym=[("x", "y"), ("y", "z")])
    assert phi(*component_tree(q)) == q
    e = PhyloTree.from_edges([("a", "b")])
    assert phi(e, EdgeLabeling({edge("a", "b"): 1})).sym_edges == {frozenset("ab")}
    bad = PhyloTree.from_edges([("v", "a"), ("v", "b"), ("v", "c")])
    with pytest.raises(NotInClassT) as exc:
        phi(bad, EdgeLabeling({edge("v", "a"): 0, edge("v", "b"): 0, edge("v", "c"): 1}))
    assert exc.value.vertex == "v"


def test_forest_two_isolated():
    q = Q("ab")
    t, lab = forest_tree(q)
    (hub,) = t.inner
    assert t.degree(hub) == 2 and set(lab.values()) == {1}
    assert explains(t, lab, rel_of(q))


def test_forest_edge_plus_vertex():
    q = Q("abc", sym=[("a", "b")])
    t, lab = forest_tree(q)
    assert len(t.vertices) == 5
    assert relation_single1(t, lab) == {frozenset("ab")}
    (x,) = [v for v in t.inner if t.degree(v) == 3 and "a" in t.adjacency[v]]
    assert lab[edge(x, "a")] == 1 and lab[edge(x, "b")] == 0
    assert explains(t, lab, rel_of(q))


def test_forest_connected_delegates():
    q = Q(sym=[("x", "y"), ("y", "z")])
    assert forest_tree(q) == component_tree(q)


def test_forest_rejects_cycles():
    with pytest.raises(RejectedRelation):
        forest_tree(Q(sym=[("a", "b"), ("b", "c"), ("a", "c")]))


def test_make_least_resolved_quartet():
    t = PhyloTree.from_edges([("u", "a"), ("u", "b"), ("u", "w"), ("w", "c"), ("w", "d")])
    lab = EdgeLabeling({edge("u", "a"): 1, edge("u", "b"): 0, edge("u", "w"): 0,
                        edge("w", "c"): 1, edge("w", "d"): 0})
    rel = RelationGraph(t.leaves, relation_zero(t, lab), relation_single1(t, lab))
    t2, l2 = make_least_resolved(t, lab, rel)
    assert len(t2.vertices) == 5
    assert explains(t2, l2, rel)
    assert make_least_resolved(t2, l2, rel) == (t2, l2)
    with pytest.raises(DoesNotExplain):
        make_least_resolved(t, lab, RelationGraph.build(taxa="abcd"))


def test_binary_refinement_collapses_to_T():
    from rgctree.binary import refine_all_binary
    q = Q(sym=[("a", "b"), ("b", "c"), ("b", "d")])
    rel = rel_of(q)
    target = canonical_form(*component_tree(q))
    for bt, bl in refine_all_binary(rel):
        assert canonical_form(*make_least_resolved(bt, bl, rel)) == target


@settings(max_examples=120, deadline=None)
@given(forests(min_n=1, max_n=7, connected=True))
def test_bijection_round_trip(q):
    t, lab = component_tree(q)
    assert in_class_T(t, lab) is None
    assert phi(t, lab) == q


@settings(max_examples=150, deadline=None)
@given(forests(min_n=1, max_n=7))
def test_forest_tree_explains_and_size(q):
    t, lab = forest_tree(q)
    assert explains(t, lab, rel_of(q))
    assert len(t.vertices) == assembly_size(q)


@settings(max_examples=60, deadline=None)
@given(forests(min_n=2, max_n=6))
def test_every_hub_choice_explains(q):
    for attach, ez in forest_tree_choices(q):
        t, lab = forest_tree(q, attach, ez)
        assert explains(t, lab, rel_of(q))
        assert len(t.vertices) == assembly_size(q)


@settings(max_examples=60, deadline=None)
@given(forests(min_n=2, max_n=5, connected=True))
def test_component_tree_zero_edges_are_pendant(q):
    t, lab = component_tree(q)
    for v in t.inner - t.leaves:
        zeros = [y for y in t.adjacency[v] if lab[edge(v, y)] == 0]
        assert len(zeros) == 1 and zeros[0] in t.leaves


def test_least_resolved_trees_of_connected_q_are_in_class_T():
    # every least resolved explainer of each connected 4-vertex shape
    for sym in ([("a", "b"), ("b", "c"), ("c", "d")], [("a", "b"), ("a", "c"), ("a", "d")]):
        rel = rel_of(Q(sym=sym))
        for t, lab in brute_force_explainers(rel):
            if is_least_resolved(t, lab, rel):
                assert in_class_T(t, lab) is None
