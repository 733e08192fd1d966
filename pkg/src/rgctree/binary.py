"""Binary (fully resolved) trees explaining an undirected relation.

Every binary explaining tree contracts to some least resolved one, so the
enumeration has two stages. ``least_resolved_trees`` lists the least
resolved trees structurally. ``refine_tree`` then resolves each vertex of
degree k > 3 into every binary tree on its k neighbours. The new terminal
edges keep the old labels. New interior edges are forced to 0 when they
separate the vertex's 0-leaf from one of its ~1 partners, and are free
otherwise. Candidates are filtered by ``explains`` and deduplicated by
canonical form.

Structure used by the enumerator: in a least resolved tree every interior
edge carries 1 and each inner vertex has at most one 0-edge class, whose
leaves "own" it. Owned vertices of one quotient component form a block that
copies the component restricted to its owners. Unowned inner vertices
(hubs) carry only isolated taxa and join blocks; two hubs are never
adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain, combinations, product

from .core import (
    EdgeLabeling,
    PhyloTree,
    RelationGraph,
    canonical_form,
    copy_id,
    edge,
    is_binary,
    is_phylogenetic,
    synth_id,
)
from .errors import MalformedStar, RejectedRelation
from .quotient import build_quotient, lift_tree
from .recognize import check_undirected
from .relations import explains


@dataclass(frozen=True)
class StarType:
    kind: str  # "a" or "b"
    zero_leaf: str | None = None


def classify_star(tree: PhyloTree, labeling: EdgeLabeling, v) -> StarType:
    zeros = sorted(y for y in tree.adjacency[v] if labeling[edge(v, y)] == 0)
    if not zeros:
        return StarType("a")
    if len(zeros) == 1 and zeros[0] in tree.leaves:
        return StarType("b", zeros[0])
    raise MalformedStar(f"vertex {v!r} has 0-edges to {zeros}")


# --------------------------------------------------------------------------
# binary topologies on k labeled slots


@lru_cache(maxsize=None)
def binary_topologies(k: int) -> tuple:
    """All unrooted binary trees with leaves 0..k-1 (k >= 3) and inner
    vertices 'i0'..'i{k-3}', as tuples of edges; built by leaf insertion."""
    if k < 3:
        raise ValueError("binary topologies need at least 3 leaves")
    trees = [(("i0", 0), ("i0", 1), ("i0", 2))]
    for j in range(3, k):
        new = f"i{j - 2}"
        nxt = []
        for t in trees:
            for idx, (u, v) in enumerate(t):
                rest = t[:idx] + t[idx + 1:]
                nxt.append(rest + ((u, new), (new, v), (new, j)))
        trees = nxt
    return tuple(trees)


def t_count(k: int) -> int:
    """Number of unrooted binary trees on k labeled leaves, by enumeration."""
    return 1 if k <= 3 else len(binary_topologies(k))


def _slot_path(topology, a, b):
    adj: dict = {}
    for u, v in topology:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    out = []
    x = b
    while prev[x] is not None:
        out.append(frozenset((prev[x], x)))
        x = prev[x]
    return out


# --------------------------------------------------------------------------
# least resolved trees


def _subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def _bipartite_trees(m: int, r: int):
    """Spanning trees of K_{m,r} as lists of (block, hub) pairs."""
    if r == 0:
        if m == 1:
            yield []
        return
    if m == 0:
        if r == 1:
            yield []
        return
    all_edges = [(b, h) for b in range(m) for h in range(r)]
    for sel in combinations(all_edges, m + r - 1):
        parent = list(range(m + r))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for b, h in sel:
            x, y = find(b), find(m + h)
            if x == y:
                ok = False
                break
            parent[x] = y
        if ok:
            yield list(sel)


def least_resolved_trees(rel: RelationGraph, tolerate_degree2: bool = False) -> list:
    """All least resolved explaining trees of an undirected relation, up to
    isomorphism, sorted by canonical form.

    With ``tolerate_degree2`` a single degree-2 hub is allowed, which is
    the only way to explain a quotient with exactly two components.
    """
    if rel.mode != "undirected":
        rel = RelationGraph(rel.taxa, rel.zero_classes, rel.symmetrized(), (), "undirected")
    q = build_quotient(rel)
    res = check_undirected(q)
    if not res:
        raise RejectedRelation(res)
    members = q.member_map
    weight = {v: len(members[v]) for v in q.classes}
    adj = q.adjacency

    found = {}
    if len(q.classes) == 1:
        (v,) = q.classes
        t, lab = lift_tree(PhyloTree.single(v), EdgeLabeling(), rel)
        found[canonical_form(t, lab)] = (t, lab)
        if tolerate_degree2 and len(members[v]) == 2:
            c = synth_id("c", v)
            lab = EdgeLabeling({edge(c, x): 0 for x in members[v]})
            t = PhyloTree.from_edges(lab)
            found[canonical_form(t, lab)] = (t, lab)
        return [found[k] for k in sorted(found)]
    comps = q.components()
    if len(comps) == 1 and len(q.classes) == 2 and all(w == 1 for w in weight.values()):
        a, b = q.classes
        t, lab = PhyloTree.from_edges([(a, b)]), EdgeLabeling({edge(a, b): 1})
        found[canonical_form(t, lab)] = (t, lab)
        if not tolerate_degree2:
            return [(t, lab)]

    nontrivial = [c for c in comps if len(c) >= 2]
    isolated = [c[0] for c in comps if len(c) == 1]
    owner_opts = []
    for comp in nontrivial:
        must = [v for v in comp if len(adj[v]) >= 2]
        leaves = [v for v in comp if len(adj[v]) == 1]
        opts = [tuple(must) + s for s in _subsets(leaves) if must or s]
        owner_opts.append(opts)

    for owners in product(*owner_opts):
        for own_iso in _subsets(isolated):
            blocks = [list(o) for o in owners] + [[v] for v in own_iso]
            hub_leaves = [v for v in isolated if v not in own_iso]
            owned = set().union(*map(set, blocks)) if blocks else set()
            base = {o: weight[o] + len(adj[o]) for o in owned}
            one_leaves = {v: next(iter(adj[v])) for comp in nontrivial for v in comp
                          if v not in owned}
            _assemble(blocks, hub_leaves, base, one_leaves, adj, members, owned,
                      tolerate_degree2, rel, found)
    return [found[k] for k in sorted(found)]


def _assemble(blocks, hub_leaves, base, one_leaves, adj, members, owned, tol, rel, found):
    m, n_l = len(blocks), len(hub_leaves)
    r_max = (n_l + m - 1 + (1 if tol else 0)) // 2
    for r in range(0, max(r_max, 0) + 1):
        for btree in _bipartite_trees(m, r):
            hub_block_deg = [sum(1 for _, h in btree if h == i) for i in range(r)]
            for assign in product(range(r), repeat=n_l) if r else [()]:
                if n_l and not r:
                    continue
                hdeg = [hub_block_deg[i] + sum(1 for a in assign if a == i) for i in range(r)]
                low = sum(1 for d in hdeg if d == 2)
                if any(d < 2 for d in hdeg) or low > (1 if tol else 0):
                    continue
                for attach in product(*[blocks[b] for b, _ in btree]):
                    deg = dict(base)
                    for o in attach:
                        deg[o] += 1
                    low_owned = sum(1 for d in deg.values() if d == 2)
                    if any(d < 2 for d in deg.values()) or low + low_owned > (1 if tol else 0):
                        continue
                    t, lab = _build(r, btree, attach, assign, hub_leaves, one_leaves,
                                    adj, members, owned)
                    if not is_phylogenetic(t, tolerate_degree2=tol):
                        continue
                    if explains(t, lab, rel):
                        found.setdefault(canonical_form(t, lab), (t, lab))


def _hang(labels, at, v, members):
    """Attach the class of representative v to vertex ``at`` by a 1-edge."""
    cls = sorted(members[v])
    if len(cls) == 1:
        labels[edge(at, v)] = 1
        return
    c = synth_id("c", v)
    labels[edge(at, c)] = 1
    for x in cls:
        labels[edge(c, x)] = 0


def _build(r, btree, attach, assign, hub_leaves, one_leaves, adj, members, owned):
    labels = {}
    for o in owned:
        w = copy_id(o)
        for x in members[o]:
            labels[edge(w, x)] = 0
        for p in adj[o]:
            if p in owned:
                labels[edge(w, copy_id(p))] = 1
    for v, p in one_leaves.items():
        _hang(labels, copy_id(p), v, members)
    hubs = [synth_id("h", str(i)) for i in range(r)]
    for (b, h), o in zip(btree, attach):
        labels[edge(hubs[h], copy_id(o))] = 1
    for v, h in zip(hub_leaves, assign):
        _hang(labels, hubs[h], v, members)
    return PhyloTree.from_edges(labels), EdgeLabeling(labels)


# --------------------------------------------------------------------------
# refinement


def _branch_leaves(tree, v, n):
    seen = {v, n}
    stack = [n]
    out = set()
    while stack:
        x = stack.pop()
        if x in tree.leaves:
            out.add(x)
        for y in tree.adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return out


def _vertex_options(tree, labeling, v, rel):
    """Yield (new edges with labels, n_free) for every local resolution of v."""
    nbrs = sorted(tree.adjacency[v])
    k = len(nbrs)
    zeros = [n for n in nbrs if labeling[edge(v, n)] == 0]
    forced_src = None
    partner_dirs = set()
    if len(zeros) == 1 and zeros[0] in tree.leaves:
        z = zeros[0]
        forced_src = nbrs.index(z)
        partners = {y for p in rel.sym_edges if z in p for y in p if y != z}
        for i, n in enumerate(nbrs):
            if i != forced_src and _branch_leaves(tree, v, n) & partners:
                partner_dirs.add(i)
    names = {f"i{j}": (v if j == 0 else synth_id("r", f"{v}/{j}")) for j in range(k - 2)}
    for topo in binary_topologies(k):
        interior = [e for e in topo if isinstance(e[0], str) and isinstance(e[1], str)]
        forced = set()
        if forced_src is not None:
            for i in partner_dirs:
                forced.update(_slot_path(topo, forced_src, i))
        free = [e for e in interior if frozenset(e) not in forced]
        base = {}
        for a, b in topo:
            if isinstance(b, int):
                base[edge(names[a], nbrs[b])] = labeling[edge(v, nbrs[b])]
            elif isinstance(a, int):
                base[edge(names[b], nbrs[a])] = labeling[edge(v, nbrs[a])]
        for e in interior:
            if frozenset(e) in forced:
                base[edge(names[e[0]], names[e[1]])] = 0
        for bits in product((0, 1), repeat=len(free)):
            labels = dict(base)
            for (a, b), bit in zip(free, bits):
                labels[edge(names[a], names[b])] = bit
            yield labels, len(free)


def _apply(tree, labeling, v, local):
    old = [edge(v, n) for n in tree.adjacency[v]]
    edges = (tree.edges - set(old)) | set(local)
    vertices = set(tree.vertices)
    for e in local:
        vertices |= e
    lab = labeling.replace(local, drop=old)
    return PhyloTree(frozenset(vertices), frozenset(edges), tree.root), lab


def refine_tree(tree: PhyloTree, labeling: EdgeLabeling, rel: RelationGraph):
    """All raw candidates obtained by resolving every vertex of degree > 3,
    processed in sorted order. Yields (tree, labeling) pairs unfiltered."""
    todo = sorted(v for v in tree.inner if tree.degree(v) > 3)

    def rec(t, lab, i):
        if i == len(todo):
            yield t, lab
            return
        for local, _ in _vertex_options(t, lab, todo[i], rel):
            yield from rec(*_apply(t, lab, todo[i], local), i + 1)

    yield from rec(tree, labeling, 0)


def formula_count(tree: PhyloTree, labeling: EdgeLabeling) -> int:
    """Product over high-degree vertices: t(k)*2^(k-3) for an all-1 star,
    t(k) for a star with a single 0-leaf."""
    out = 1
    for v in tree.inner:
        k = tree.degree(v)
        if k <= 3:
            continue
        st = classify_star(tree, labeling, v)
        out *= t_count(k) * (2 ** (k - 3) if st.kind == "a" else 1)
    return out


@dataclass
class LRTReport:
    newick: str
    raw: int
    explaining: int
    formula: int | None


@dataclass
class BinaryReport:
    trees: list = field(default_factory=list)
    per_tree: list = field(default_factory=list)

    @property
    def raw_total(self) -> int:
        return sum(r.raw for r in self.per_tree)


def refine_all_binary_report(rel: RelationGraph) -> BinaryReport:
    report = BinaryReport()
    seen = {}
    for t, lab in least_resolved_trees(rel):
        raw = good = 0
        for bt, bl in refine_tree(t, lab, rel):
            raw += 1
            if is_binary(bt) and explains(bt, bl, rel):
                good += 1
                seen.setdefault(canonical_form(bt, bl), (bt, bl))
        try:
            formula = formula_count(t, lab)
        except MalformedStar:
            formula = None
        report.per_tree.append(LRTReport(canonical_form(t, lab), raw, good, formula))
    report.trees = [seen[k] for k in sorted(seen)]
    return report


def refine_all_binary(rel: RelationGraph) -> list:
    """Every binary labeled tree explaining ``rel``, once up to isomorphism,
    in canonical order."""
    return refine_all_binary_report(rel).trees


def count_binary(rel: RelationGraph) -> list:
    """(canonical Newick, formula count) per least resolved tree; the count
    is None where a vertex has more than one 0-leaf."""
    out = []
    for t, lab in least_resolved_trees(rel):
        try:
            out.append((canonical_form(t, lab), formula_count(t, lab)))
        except MalformedStar:
            out.append((canonical_form(t, lab), None))
    return out


__all__ = [
    "StarType", "classify_star", "binary_topologies", "t_count", "least_resolved_trees",
    "refine_tree", "refine_all_binary", "refine_all_binary_report", "count_binary",
    "formula_count", "BinaryReport", "LRTReport",
]
