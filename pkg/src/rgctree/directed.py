"""Rooted reconstruction from the directed single-1 relation, plus the
rooted-triple utilities used as certificates."""

from __future__ import annotations

from itertools import combinations

from .core import (
    HUB_ID,
    EdgeLabeling,
    PhyloTree,
    QuotientGraph,
    RelationGraph,
    RootedTriple,
    copy_id,
    displays_triple,
    edge,
    subdivide,
    synth_id,
)
from .errors import RejectedRelation
from .quotient import build_quotient, lift_tree
from .recognize import check_directed
from .undirected import component_tree


def _source(Q: QuotientGraph):
    res = check_directed(Q)
    if not res:
        raise RejectedRelation(res)
    if len(res.components) != 1:
        raise ValueError("expected a connected component")
    return res.sources[res.components[0]]


def infer_rooted_component(Q: QuotientGraph):
    """T(Q) rooted at the position forced by the unique source.

    An inner source roots at its copy. A source that is a leaf of Q gets a
    new root on its terminal edge, with a 0-edge to the source and a 1-edge
    to the rest.
    """
    src = _source(Q)
    if len(Q.classes) == 1:
        return PhyloTree.single(src, rooted=True), EdgeLabeling()
    t, lab = component_tree(Q)
    if len(Q.adjacency[src]) >= 2:
        return PhyloTree(t.vertices, t.edges, copy_id(src)), lab
    (nbr,) = t.adjacency[src]
    return subdivide(t, lab, edge(src, nbr), synth_id("r", src), src, 0, 1, root=True)


def _assembly(q: QuotientGraph):
    """Component trees joined at their roots by 1-edges to a hub; returns
    the unrooted assembly and per-component (source, root vertex)."""
    res = check_directed(q)
    if not res:
        raise RejectedRelation(res)
    labels = {}
    roots = []
    for comp in res.components:
        t, lab = infer_rooted_component(q.restrict(comp))
        labels.update(lab)
        labels[edge(HUB_ID, t.root)] = 1
        roots.append((res.sources[comp], t.root))
    return PhyloTree.from_edges(labels), EdgeLabeling(labels), roots


def rooted_candidates(q: QuotientGraph) -> list:
    """All admissible rooted trees as (root choice, tree, labeling).

    The root choice is the source taxon of a component, or "hub". For a
    connected quotient there is exactly one entry.
    """
    comps = q.components()
    if len(comps) == 1:
        t, lab = infer_rooted_component(q)
        return [(_source(q), t, lab)]
    tree, lab, roots = _assembly(q)
    out = []
    for src, r in roots:
        if r in tree.leaves:
            t, l2 = subdivide(tree, lab, edge(r, HUB_ID), synth_id("r", r), r, 0, 1, root=True)
        else:
            t, l2 = PhyloTree(tree.vertices, tree.edges, r), lab
        out.append((src, t, l2))
    out.append(("hub", PhyloTree(tree.vertices, tree.edges, HUB_ID), lab))
    return out


def infer_rooted(q: QuotientGraph) -> list:
    return [(t, lab) for _, t, lab in rooted_candidates(q)]


def reconstruct_rooted(rel: RelationGraph, root=None):
    """Explaining rooted tree over all taxa; ``root`` picks a component
    source (or "hub"), defaulting to the hub when disconnected."""
    q = build_quotient(rel)
    cands = rooted_candidates(q)
    if root is None:
        choice = cands[-1]
    else:
        matches = [c for c in cands if c[0] == root]
        if not matches:
            raise ValueError(f"{root!r} is not an admissible root; choose from "
                             + ", ".join(c[0] for c in cands))
        choice = matches[0]
    return lift_tree(choice[1], choice[2], rel)


# --------------------------------------------------------------------------
# triples


def triples_for_path(path) -> frozenset:
    """x_i x_j | x_l for all l < i < j along a directed path x_1 .. x_n."""
    out = set()
    n = len(path)
    for l in range(n):
        for i, j in combinations(range(l + 1, n), 2):
            out.add(RootedTriple(path[i], path[j], path[l]))
    return frozenset(out)


def maximal_paths(Q: QuotientGraph) -> list:
    src = _source(Q)
    succ = {v: sorted(y for x, y in Q.dir_edges if x == v) for v in Q.classes}
    out = []

    def walk(path):
        nxt = succ[path[-1]]
        if not nxt:
            out.append(tuple(path))
        for y in nxt:
            walk(path + [y])

    walk([src])
    return out


def triples_for_component(Q: QuotientGraph) -> frozenset:
    out = set()
    for p in maximal_paths(Q):
        out |= triples_for_path(p)
    return frozenset(out)


def _infer_pair(t1: RootedTriple, t2: RootedTriple):
    out = []
    c1, o1 = (t1.a, t1.b), t1.c
    c2, o2 = (t2.a, t2.b), t2.c
    for a, b in (c1, c1[::-1]):
        c = o1
        for x, y in (c2, c2[::-1]):
            z = o2
            if len({a, b, c, x, y, z}) != 4:
                continue
            # shared cherry taxon, same outgroup: ab|c, ad|c
            if x == a and z == c:
                out.append(RootedTriple(b, y, c))
            # outgroup inside the other cherry: ab|c, ad|b
            if x == a and z == b:
                out.append(RootedTriple(b, y, c))
                out.append(RootedTriple(a, y, c))
            # cherries crossing outgroups: ab|c, cd|b
            if x == c and z == b:
                out.append(RootedTriple(a, b, y))
                out.append(RootedTriple(c, y, a))
    return out


def close_triples(triples) -> frozenset:
    """Least superset closed under the three dyadic inference rules."""
    closed = set(triples)
    frontier = list(closed)
    while frontier:
        new = set()
        current = list(closed)
        for t1 in frontier:
            for t2 in current:
                for t in _infer_pair(t1, t2) + _infer_pair(t2, t1):
                    if t not in closed:
                        new.add(t)
        closed |= new
        frontier = list(new)
    return frozenset(closed)


def verify_displays(tree: PhyloTree, triples):
    """(True, None) if every triple is displayed, else (False, first failure)."""
    for t in sorted(triples):
        if not displays_triple(tree, t):
            return False, t
    return True, None
