"""Reconstruction from the single-1 relation.

A connected tree-shaped quotient Q has a unique minimally resolved
explaining tree T(Q): copy Q with every edge labeled 1 and hang each inner
vertex's own taxon off its copy by a 0-edge. Contracting those 0-edges
(``phi``) maps back to Q. Forests are handled by joining the component
trees at a hub vertex with 1-edges.
"""

from __future__ import annotations

from itertools import product

from .core import (
    HUB_ID,
    EdgeLabeling,
    PhyloTree,
    QuotientGraph,
    RelationGraph,
    contract_edge,
    copy_id,
    edge,
    edge_key,
    synth_id,
)
from .errors import DoesNotExplain, NotATree, NotInClassT, RejectedRelation
from .quotient import build_quotient, lift_tree
from .recognize import check_undirected, find_cycle
from .relations import explains


def _as_quotient(q) -> QuotientGraph:
    if isinstance(q, QuotientGraph):
        return q
    if isinstance(q, PhyloTree):
        return QuotientGraph.from_edges(q.vertices, sym=[tuple(e) for e in q.edges])
    raise TypeError(f"expected a QuotientGraph or PhyloTree, got {type(q).__name__}")


def component_tree(Q) -> tuple[PhyloTree, EdgeLabeling]:
    """T(Q) for a connected tree-shaped Q (a QuotientGraph or a PhyloTree
    whose vertices are taxa). Edge directions, if any, are ignored."""
    Q = _as_quotient(Q)
    vs = Q.classes
    pairs = Q.underlying
    if find_cycle(vs, pairs) or len(pairs) != len(vs) - 1:
        raise NotATree("component is not a tree")
    if len(vs) == 1:
        return PhyloTree.single(vs[0]), EdgeLabeling()
    inner = {v for v in vs if len(Q.adjacency[v]) >= 2}
    img = {v: (copy_id(v) if v in inner else v) for v in vs}
    labels = {}
    for p in pairs:
        u, v = tuple(p)
        labels[edge(img[u], img[v])] = 1
    for v in inner:
        labels[edge(img[v], v)] = 0
    return PhyloTree.from_edges(labels), EdgeLabeling(labels)


def in_class_T(tree: PhyloTree, labeling: EdgeLabeling):
    """None if (tree, labeling) is in class T, else a (vertex, reason) pair."""
    if len(tree.vertices) <= 2:
        if all(lab == 1 for lab in labeling.values()):
            return None
        return (min(tree.vertices), "0-edge between two leaves")
    for v in sorted(tree.inner):
        if tree.degree(v) < 3:
            return (v, "inner vertex of degree < 3")
        zeros = [y for y in tree.adjacency[v] if labeling[edge(v, y)] == 0]
        if len(zeros) != 1:
            return (v, f"{len(zeros)} incident 0-edges")
        if zeros[0] not in tree.leaves:
            return (v, "0-edge does not lead to a leaf")
    return None


def phi(tree: PhyloTree, labeling: EdgeLabeling) -> QuotientGraph:
    """Contract the unique 0-edge at every inner vertex; the inner vertex
    takes over the leaf's taxon. Returns the resulting tree on the taxa as
    an undirected quotient graph."""
    bad = in_class_T(tree, labeling)
    if bad:
        raise NotInClassT(f"vertex {bad[0]!r}: {bad[1]}", vertex=bad[0])
    name = {v: v for v in tree.leaves}
    for v in tree.inner - tree.leaves:
        (z,) = [y for y in tree.adjacency[v] if labeling[edge(v, y)] == 0]
        name[v] = z
    sym = [(name[a], name[b]) for a, b in map(tuple, tree.edges) if labeling[edge(a, b)] == 1]
    return QuotientGraph.from_edges(tree.leaves, sym=sym, mode="undirected")


phi_inverse = component_tree
# names used by the interface description
alg1_component = component_tree


def _edge_centre(v):
    return synth_id("e", v)


def forest_tree(q: QuotientGraph, attach: dict | None = None, edge_zero: dict | None = None):
    """Minimally resolved explaining tree of an undirected forest quotient.

    ``attach`` optionally maps a component (sorted tuple) to the inner
    vertex of its T(Q) wired to the hub; by default the least id is used.
    ``edge_zero`` maps a single-edge component to the endpoint that gets
    the 0-edge of its expansion; by default the larger one.
    """
    res = check_undirected(q)
    if not res:
        raise RejectedRelation(res)
    comps = q.components()
    if len(comps) == 1:
        return component_tree(q)
    attach = attach or {}
    edge_zero = edge_zero or {}
    labels = {}
    for comp in comps:
        if len(comp) == 1:
            labels[edge(HUB_ID, comp[0])] = 1
        elif len(comp) == 2:
            v, w = comp
            zero = edge_zero.get(comp, w)
            one = v if zero == w else w
            x = _edge_centre(v)
            labels[edge(x, one)] = 1
            labels[edge(x, zero)] = 0
            labels[edge(HUB_ID, x)] = 1
        else:
            t, lab = component_tree(q.restrict(comp))
            labels.update(lab)
            at = attach.get(comp, min(t.inner))
            if at not in t.inner:
                raise ValueError(f"{at!r} is not an inner vertex of the component tree")
            labels[edge(HUB_ID, at)] = 1
    return PhyloTree.from_edges(labels), EdgeLabeling(labels)


def forest_tree_choices(q: QuotientGraph):
    """All (attach, edge_zero) choice dicts for forest_tree."""
    comps = q.components()
    opts = []
    for comp in comps:
        if len(comp) == 2:
            opts.append([("z", comp, comp[1]), ("z", comp, comp[0])])
        elif len(comp) >= 3:
            inner = [copy_id(v) for v in comp if len(q.adjacency[v]) >= 2]
            opts.append([("a", comp, i) for i in sorted(inner)])
    for combo in product(*opts):
        attach = {c: v for k, c, v in combo if k == "a"}
        edge_zero = {c: v for k, c, v in combo if k == "z"}
        yield attach, edge_zero


def assembly_size(q: QuotientGraph) -> int:
    """1 + sum of the component tree sizes, an edge component counted with
    its 3-vertex expansion. Connected quotients give |V(T(Q))|."""
    comps = q.components()
    sizes = []
    for comp in comps:
        if len(comp) <= 2:
            sizes.append(len(comp) if len(comps) == 1 else 2 * len(comp) - 1)
        else:
            inner = sum(1 for v in comp if len(q.adjacency[v]) >= 2)
            sizes.append(len(comp) + inner)
    return sum(sizes) + (1 if len(comps) > 1 else 0)


def minimally_resolved(rel: RelationGraph):
    """Full pipeline: quotient, recognize, assemble, expand zero-classes.
    Directed data is symmetrized first."""
    q = build_quotient(rel)
    if q.mode != "undirected":
        q = q.as_undirected()
    qt, ql = forest_tree(q)
    return lift_tree(qt, ql, rel if rel.mode == "undirected" else _symmetrized(rel))


def _symmetrized(rel: RelationGraph) -> RelationGraph:
    return RelationGraph(rel.taxa, rel.zero_classes, rel.symmetrized(), (), "undirected")


# --------------------------------------------------------------------------
# least resolution


def _suppress(tree, labeling, v):
    a, b = sorted(tree.adjacency[v])
    la, lb = labeling[edge(v, a)], labeling[edge(v, b)]
    edges = (tree.edges - {edge(v, a), edge(v, b)}) | {edge(a, b)}
    labels = labeling.replace({edge(a, b): la + lb}, drop=[edge(v, a), edge(v, b)])
    return PhyloTree(tree.vertices - {v}, edges, tree.root), labels


def make_least_resolved(tree: PhyloTree, labeling: EdgeLabeling, rel: RelationGraph):
    """Contract interior edges while the result still explains ``rel``.

    0-edges go first (they never change the relations), degree-2 vertices
    whose two edges carry at most one 1 are suppressed, then 1-edges are
    contracted greedily in sorted order, until nothing changes.
    """
    if not explains(tree, labeling, rel):
        raise DoesNotExplain("input tree does not explain the relation")
    changed = True
    while changed:
        changed = False
        for e in sorted(tree.edges, key=edge_key):
            if e in tree.edges and tree.is_interior(e) and labeling[e] == 0:
                tree, labeling = contract_edge(tree, labeling, e)
                changed = True
        for v in sorted(tree.inner):
            if v == tree.root or v not in tree.vertices or len(tree.vertices) <= 2:
                continue
            if tree.degree(v) == 2 and sum(labeling[edge(v, y)] for y in tree.adjacency[v]) <= 1:
                tree, labeling = _suppress(tree, labeling, v)
                changed = True
        if changed:
            continue
        for e in sorted(tree.edges, key=edge_key):
            if not tree.is_interior(e):
                continue
            t2, l2 = contract_edge(tree, labeling, e)
            if explains(t2, l2, rel):
                tree, labeling = t2, l2
                changed = True
                break
    return tree, labeling


def is_least_resolved(tree: PhyloTree, labeling: EdgeLabeling, rel: RelationGraph) -> bool:
    if not explains(tree, labeling, rel):
        return False
    for e in tree.edges:
        if tree.is_interior(e):
            t2, l2 = contract_edge(tree, labeling, e)
            if explains(t2, l2, rel):
                return False
    return True


alg2_forest = forest_tree
