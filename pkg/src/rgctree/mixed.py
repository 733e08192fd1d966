"""Mixed data: some pairs have a known direction, others only ~1.

A root position is admissible for a component exactly when it is a central
vertex there; orienting every symmetric pair away from it yields directed
data with that vertex as the unique source.
"""

from __future__ import annotations

from collections.abc import Mapping

from .core import QuotientGraph, RelationGraph
from .directed import rooted_candidates
from .errors import NotCentral, RejectedRelation, UnknownVertex
from .quotient import build_quotient, lift_tree
from .recognize import _rooted_parents, check_mixed


def admissible_roots(q: QuotientGraph) -> dict:
    res = check_mixed(q)
    if not res:
        raise RejectedRelation(res)
    return dict(res.centers)


def _choices(q, root_choice, centers):
    comp_of = {v: c for c in centers for v in c}
    if isinstance(root_choice, Mapping):
        picks = list(root_choice.values())
    elif isinstance(root_choice, str):
        picks = [root_choice]
    elif root_choice is None:
        picks = []
    else:
        picks = list(root_choice)
    chosen = {}
    for v in picks:
        if v not in comp_of:
            raise UnknownVertex(v)
        chosen[comp_of[v]] = v
    for comp, cs in centers.items():
        chosen.setdefault(comp, min(cs) if cs else comp[0])
    return chosen


def orient(q: QuotientGraph, root_choice=None) -> QuotientGraph:
    """Resolve each symmetric pair into the arc pointing away from the
    chosen centre of its component. Components without an explicit choice
    use their least central vertex."""
    res = check_mixed(q)
    if not res and res.kind != "no-central":
        raise RejectedRelation(res)
    centers = {c: (res.centers[c] if res else frozenset()) for c in q.components()}
    chosen = _choices(q, root_choice, centers)
    arcs = set()
    for comp, v in sorted(chosen.items()):
        par = _rooted_parents(q.restrict(comp).adjacency, v)
        for x, y in sorted(a for a in q.dir_edges if a[0] in comp):
            if par[y] != x:
                raise NotCentral(f"{v!r} is not central: arc {x} -> {y} points towards it",
                                 witness=(x, y))
        for p in q.sym_edges:
            a, b = tuple(p)
            if a in comp:
                arcs.add((a, b) if par[b] == a else (b, a))
    arcs |= q.dir_edges
    return QuotientGraph(q.classes, frozenset(), frozenset(arcs), "directed", q.members)


def reconstruct_mixed(q: QuotientGraph, root_choice=None, root=None):
    """Orient, then build the rooted tree. ``root`` selects among the
    admissible roots of a disconnected result (default: the hub)."""
    d = orient(q, root_choice)
    cands = rooted_candidates(d)
    if root is None:
        return cands[-1][1:]
    for name, t, lab in cands:
        if name == root:
            return t, lab
    raise UnknownVertex(root)


def reconstruct_mixed_relation(rel: RelationGraph, root_choice=None, root=None):
    q = build_quotient(rel)
    t, lab = reconstruct_mixed(q, root_choice, root)
    return lift_tree(t, lab, rel)
