"""Collapse a relation by its zero-classes, and expand trees back."""

from __future__ import annotations

from .core import (
    EdgeLabeling,
    PhyloTree,
    QuotientGraph,
    RelationGraph,
    edge,
    synth_id,
)
from .errors import IllDefinedQuotient, TaxonMismatch


def representative(cls) -> str:
    return min(cls)


def build_quotient(rel: RelationGraph) -> QuotientGraph:
    """One vertex per zero-class; a class pair is related iff all of its
    cross pairs are. Partial relatedness raises IllDefinedQuotient.

    In mixed mode a class pair may combine symmetric and directed cross
    pairs; the quotient pair is directed as soon as one of them is, and all
    directed ones must agree on the direction.
    """
    rep = {t: representative(c) for c in rel.zero_classes for t in c}
    size = {representative(c): len(c) for c in rel.zero_classes}
    sym_count: dict = {}
    arc_count: dict = {}
    for p in rel.sym_edges:
        a, b = (rep[t] for t in p)
        key = frozenset((a, b))
        sym_count[key] = sym_count.get(key, 0) + 1
    for x, y in rel.dir_edges:
        arc_count[(rep[x], rep[y])] = arc_count.get((rep[x], rep[y]), 0) + 1

    pairs = set(sym_count) | {frozenset(a) for a in arc_count}
    sym, arcs = set(), set()
    for key in sorted(pairs, key=sorted):
        a, b = sorted(key)
        full = size[a] * size[b]
        fw, bw = arc_count.get((a, b), 0), arc_count.get((b, a), 0)
        got = sym_count.get(key, 0) + fw + bw
        if got != full:
            raise IllDefinedQuotient(
                f"classes of {a!r} and {b!r}: {got} of {full} cross pairs are related",
                classes=(a, b))
        if fw and bw:
            raise IllDefinedQuotient(
                f"classes of {a!r} and {b!r} are related in both directions", classes=(a, b))
        if fw:
            arcs.add((a, b))
        elif bw:
            arcs.add((b, a))
        else:
            sym.add(key)
    members = tuple((representative(c), c) for c in rel.zero_classes)
    return QuotientGraph(tuple(size), frozenset(sym), frozenset(arcs), rel.mode, members)


def lift_tree(qtree: PhyloTree, qlabeling: EdgeLabeling, rel: RelationGraph):
    """Expand each class representative into a star of 0-edges.

    The representative's leaf becomes a new inner vertex joined by 0-edges
    to all class members; the rest of the tree is untouched.
    """
    reps = {representative(c): c for c in rel.zero_classes}
    if qtree.leaves != set(reps):
        raise TaxonMismatch("quotient tree leaves differ from the class representatives")
    if len(qtree.vertices) == 1:
        (r,) = qtree.vertices
        cls = sorted(reps[r])
        if len(cls) == 1:
            return qtree, qlabeling
        if len(cls) == 2 and qtree.root is None:
            a, b = cls
            return PhyloTree.from_edges([(a, b)]), EdgeLabeling({edge(a, b): 0})
        w = synth_id("c", r)
        t = PhyloTree.from_edges([(w, m) for m in cls], root=w if qtree.root is not None else None)
        return t, EdgeLabeling({edge(w, m): 0 for m in cls})

    vertices = set(qtree.vertices)
    edges = set(qtree.edges)
    labels = dict(qlabeling)
    moved = {}
    for r, cls in sorted(reps.items()):
        if len(cls) == 1:
            continue
        w = synth_id("c", r)
        (p,) = qtree.adjacency[r]
        p = moved.get(p, p)
        moved[r] = w
        old = edge(p, r)
        lab = labels.pop(old)
        edges.discard(old)
        vertices.add(w)
        edges.add(edge(p, w))
        labels[edge(p, w)] = lab
        for m in cls:
            vertices.add(m)
            edges.add(edge(w, m))
            labels[edge(w, m)] = 0
    tree = PhyloTree(frozenset(vertices), frozenset(edges), qtree.root)
    return tree, EdgeLabeling(labels)


def quotient_graph_is_forest(q: QuotientGraph) -> bool:
    return len(q.underlying) == len(q.classes) - len(q.components())

