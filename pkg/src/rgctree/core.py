"""Domain types: phylogenetic trees, 0/1 edge labelings, relation graphs,
quotient graphs and rooted triples, plus the basic tree queries.

Leaf vertices are identified with their taxon ids. Vertices synthesized by
the algorithms carry the reserved prefix ``RESERVED``; input taxon ids must
not start with it.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    InvalidTree,
    InvariantError,
    ModeError,
    TerminalEdge,
    UnknownTaxon,
    UnknownVertex,
    UnrootedTree,
)

RESERVED = "·"
MODES = ("undirected", "directed", "mixed")


def edge(u, v) -> frozenset:
    if u == v:
        raise InvalidTree(f"self-loop at {u!r}")
    return frozenset((u, v))


def edge_key(e) -> tuple:
    """Sorted endpoint tuple; the canonical order for edges."""
    return tuple(sorted(e))


def check_taxon_id(name: str) -> None:
    if not name:
        raise InvariantError("empty taxon id")
    if name.startswith(RESERVED):
        raise InvariantError(f"taxon id {name!r} uses the reserved prefix {RESERVED!r}")


def connected_components(vertices: Iterable, pairs: Iterable) -> list[tuple]:
    """Components as sorted tuples, ordered by their least vertex."""
    adj = {v: set() for v in vertices}
    for p in pairs:
        u, v = tuple(p)
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


# --------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class PhyloTree:
    """A tree whose degree-1 vertices are the taxa.

    Construction checks that the data forms a tree and that the root (if
    any) is an inner vertex. The degree >= 3 rule for inner vertices is
    checked separately by :func:`is_phylogenetic` since two constructions
    legitimately tolerate a single degree-2 vertex.
    """

    vertices: frozenset
    edges: frozenset
    root: str | None = None

    def __post_init__(self):
        vertices = frozenset(self.vertices)
        edges = frozenset(frozenset(e) for e in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if not vertices:
            raise InvalidTree("a tree needs at least one vertex")
        for e in edges:
            if len(e) != 2:
                raise InvalidTree(f"malformed edge {sorted(e)!r}")
            if not e <= vertices:
                raise InvalidTree(f"edge {sorted(e)!r} uses unknown vertices")
        if len(edges) != len(vertices) - 1:
            raise InvalidTree("edge count must be vertex count - 1")
        if len(connected_components(vertices, edges)) != 1:
            raise InvalidTree("graph is not connected")
        if self.root is not None:
            if self.root not in vertices:
                raise InvalidTree(f"root {self.root!r} is not a vertex")
            if len(vertices) > 1 and len(self.adjacency[self.root]) < 2:
                raise InvalidTree("the root must be an inner vertex")

    @classmethod
    def from_edges(cls, pairs, root=None, vertices=()):
        es = frozenset(edge(u, v) for u, v in pairs)
        vs = set(vertices)
        for e in es:
            vs |= e
        return cls(frozenset(vs), es, root)

    @classmethod
    def single(cls, taxon, rooted=False):
        return cls(frozenset([taxon]), frozenset(), taxon if rooted else None)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    @cached_property
    def leaves(self) -> frozenset:
        if len(self.vertices) == 1:
            return self.vertices
        return frozenset(v for v, n in self.adjacency.items() if len(n) == 1)

    @property
    def taxa(self) -> frozenset:
        return self.leaves

    @cached_property
    def inner(self) -> frozenset:
        if len(self.vertices) == 1:
            return self.vertices
        return self.vertices - self.leaves

    @property
    def rooted(self) -> bool:
        return self.root is not None

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v) -> frozenset:
        try:
            return self.adjacency[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def is_interior(self, e) -> bool:
        return not (frozenset(e) & self.leaves)

    @cached_property
    def parent(self) -> dict:
        if self.root is None:
            raise UnrootedTree("tree has no root")
        par = {self.root: None}
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in par:
                    par[y] = x
                    queue.append(y)
        return par

    @cached_property
    def depth(self) -> dict:
        par = self.parent
        depth = {}
        for v in self._bfs_order:
            depth[v] = 0 if par[v] is None else depth[par[v]] + 1
        return depth

    @cached_property
    def _bfs_order(self) -> list:
        start = self.root if self.root is not None else min(self.vertices)
        order = [start]
        seen = {start}
        i = 0
        while i < len(order):
            for y in sorted(self.adjacency[order[i]]):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
            i += 1
        return order

    def children(self, v) -> list:
        par = self.parent
        return sorted(y for y in self.adjacency[v] if par[v] != y)


class EdgeLabeling(Mapping):
    """Immutable map edge -> {0, 1}. Keys may be given as any 2-iterable."""

    __slots__ = ("_labels",)

    def __init__(self, labels=()):
        data = {}
        items = labels.items() if isinstance(labels, Mapping) else labels
        for e, lab in items:
            e = frozenset(e)
            if len(e) != 2:
                raise InvalidTree(f"malformed edge {sorted(e)!r}")
            if lab not in (0, 1) or isinstance(lab, bool):
                raise ValueError(f"edge label must be 0 or 1, got {lab!r}")
            data[e] = int(lab)
        self._labels = data

    def __getitem__(self, e):
        return self._labels[frozenset(e)]

    def __iter__(self):
        return iter(self._labels)

    def __len__(self):
        return len(self._labels)

    def __hash__(self):
        return hash(frozenset(self._labels.items()))

    def __eq__(self, other):
        if isinstance(other, EdgeLabeling):
            return self._labels == other._labels
        return NotImplemented

    def __repr__(self):
        body = ", ".join(f"{'-'.join(edge_key(e))}:{v}" for e, v in sorted(
            self._labels.items(), key=lambda kv: edge_key(kv[0])))
        return f"EdgeLabeling({{{body}}})"

    def replace(self, updates=(), drop=()):
        data = dict(self._labels)
        for e in drop:
            data.pop(frozenset(e), None)
        items = updates.items() if isinstance(updates, Mapping) else updates
        for e, lab in items:
            data[frozenset(e)] = lab
        return EdgeLabeling(data)


def check_labeling(tree: PhyloTree, labeling: EdgeLabeling) -> None:
    if set(labeling) != set(tree.edges):
        raise InvalidTree("labeling domain differs from the tree's edge set")


def is_phylogenetic(tree: PhyloTree, tolerate_degree2: bool = False) -> bool:
    """True iff every inner vertex other than the root has degree >= 3.

    With ``tolerate_degree2`` a single degree-2 non-root vertex is allowed
    (the hub of a two-component assembly).
    """
    if len(tree.vertices) <= 2:
        return tree.root is None or len(tree.vertices) == 1
    low = [v for v in tree.inner if v != tree.root and tree.degree(v) < 3]
    if tree.root is not None and tree.degree(tree.root) < 2:
        return False
    if tolerate_degree2:
        return len(low) <= 1 and all(tree.degree(v) == 2 for v in low)
    return not low


def is_binary(tree: PhyloTree) -> bool:
    """Fully resolved: inner vertices have degree 3 (a root degree 2)."""
    if len(tree.vertices) <= 2:
        return True
    for v in tree.inner:
        want = 2 if v == tree.root else 3
        if tree.degree(v) != want:
            return False
    return True


# --------------------------------------------------------------------------
# basic queries


def lca(tree: PhyloTree, u, v):
    if tree.root is None:
        raise UnrootedTree("lca needs a rooted tree")
    for x in (u, v):
        if x not in tree.vertices:
            raise UnknownVertex(x)
    par, depth = tree.parent, tree.depth
    while depth[u] > depth[v]:
        u = par[u]
    while depth[v] > depth[u]:
        v = par[v]
    while u != v:
        u, v = par[u], par[v]
    return u


def tree_path(tree: PhyloTree, u, v) -> list:
    """Edges of the unique u-v path, in order from u."""
    for x in (u, v):
        if x not in tree.vertices:
            raise UnknownVertex(x)
    if u == v:
        return []
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in tree.adjacency[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = []
    x = v
    while prev[x] is not None:
        path.append(edge(prev[x], x))
        x = prev[x]
    path.reverse()
    return path


def path_vertices(tree: PhyloTree, u, v) -> list:
    out = [u]
    for e in tree_path(tree, u, v):
        (nxt,) = e - {out[-1]}
        out.append(nxt)
    return out


@dataclass(frozen=True, order=True)
class RootedTriple:
    """The triple ab|c: a, b form the cherry, c is the outgroup."""

    a: str
    b: str
    c: str

    def __post_init__(self):
        if len({self.a, self.b, self.c}) != 3:
            raise ValueError(f"triple needs three distinct taxa: {self.a},{self.b}|{self.c}")
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def taxa(self) -> frozenset:
        return frozenset((self.a, self.b, self.c))

    def __str__(self):
        return f"{self.a}{self.b}|{self.c}" if max(map(len, (self.a, self.b, self.c))) == 1 \
            else f"{self.a},{self.b}|{self.c}"


def displays_triple(tree: PhyloTree, t: RootedTriple) -> bool:
    if tree.root is None:
        raise UnrootedTree("triples are displayed by rooted trees only")
    for x in (t.a, t.b, t.c):
        if x not in tree.leaves:
            raise UnknownTaxon(x)
    ab = set(path_vertices(tree, t.a, t.b))
    c_up = set(path_vertices(tree, t.c, tree.root))
    return not (ab & c_up)


# --------------------------------------------------------------------------
# structural edits


def _merge(tree: PhyloTree, labeling, keep, drop):
    """Contract the edge keep-drop, keeping vertex ``keep``."""
    e = edge(keep, drop)
    new_edges = set()
    new_labels = {}
    for f in tree.edges:
        if f == e:
            continue
        lab = labeling[f] if labeling is not None else None
        if drop in f:
            (other,) = f - {drop}
            f = edge(keep, other)
        new_edges.add(f)
        new_labels[f] = lab
    root = tree.root
    if root == drop:
        root = keep
    t = PhyloTree(tree.vertices - {drop}, frozenset(new_edges), root)
    return t, (EdgeLabeling(new_labels) if labeling is not None else None)


def contract_edge(tree: PhyloTree, labeling: EdgeLabeling, e):
    """Contract an interior edge; surviving labels are unchanged."""
    e = frozenset(e)
    if e not in tree.edges:
        raise UnknownVertex(f"{sorted(e)!r} is not an edge")
    if not tree.is_interior(e):
        raise TerminalEdge(f"{edge_key(e)!r} touches a leaf")
    u, v = edge_key(e)
    keep, drop = (v, u) if tree.root == v else (u, v)
    return _merge(tree, labeling, keep, drop)


def relabel(tree: PhyloTree, labeling, mapping: Mapping):
    """Rename vertices; vertices absent from ``mapping`` keep their id."""
    ren = lambda x: mapping.get(x, x)  # noqa: E731
    vs = frozenset(ren(v) for v in tree.vertices)
    if len(vs) != len(tree.vertices):
        raise InvalidTree("relabeling is not injective")
    es = {e: edge(*(ren(x) for x in e)) for e in tree.edges}
    t = PhyloTree(vs, frozenset(es.values()), ren(tree.root) if tree.root is not None else None)
    if labeling is None:
        return t, None
    return t, EdgeLabeling({es[e]: labeling[e] for e in tree.edges})


def reroot(tree: PhyloTree, labeling, root):
    if root not in tree.vertices:
        raise UnknownVertex(root)
    return PhyloTree(tree.vertices, tree.edges, root), labeling


def subdivide(tree: PhyloTree, labeling, e, new_vertex, near, label_near, label_far, root=False):
    """Insert ``new_vertex`` on edge e; ``near`` is the endpoint whose new
    edge gets ``label_near``."""
    e = frozenset(e)
    if e not in tree.edges:
        raise UnknownVertex(f"{sorted(e)!r} is not an edge")
    if new_vertex in tree.vertices:
        raise InvalidTree(f"vertex {new_vertex!r} already exists")
    (far,) = e - {near}
    edges = (tree.edges - {e}) | {edge(new_vertex, near), edge(new_vertex, far)}
    labels = labeling.replace({edge(new_vertex, near): label_near,
                               edge(new_vertex, far): label_far}, drop=[e])
    new_root = new_vertex if root else tree.root
    return PhyloTree(tree.vertices | {new_vertex}, edges, new_root), labels


def unroot(tree: PhyloTree, labeling):
    """Forget the root; a degree-2 root is suppressed (labels add up)."""
    if tree.root is None:
        return tree, labeling
    r = tree.root
    if len(tree.vertices) > 1 and tree.degree(r) == 2:
        a, b = sorted(tree.adjacency[r])
        lab = labeling[edge(r, a)] + labeling[edge(r, b)]
        if lab > 1:
            raise InvalidTree("suppressing the root would need label 2")
        edges = (tree.edges - {edge(r, a), edge(r, b)}) | {edge(a, b)}
        labels = labeling.replace({edge(a, b): lab}, drop=[edge(r, a), edge(r, b)])
        return PhyloTree(tree.vertices - {r}, edges), labels
    return PhyloTree(tree.vertices, tree.edges), labeling


# --------------------------------------------------------------------------
# canonical form

_SPECIAL = set(" \t\r\n()[]':;,")


def quote_name(name: str) -> str:
    if name and not (_SPECIAL & set(name)):
        return name
    return "'" + name.replace("'", "''") + "'"


def _encode(tree, labeling, v, parent, inner_names):
    kids = sorted(
        _encode(tree, labeling, c, v, inner_names)
        + (f":{labeling[edge(v, c)]}" if labeling is not None else "")
        for c in tree.adjacency[v] if c != parent
    )
    is_leaf = v in tree.leaves
    name = quote_name(v) if (is_leaf or inner_names) else ""
    if not kids:
        return name
    return "(" + ",".join(kids) + ")" + name


def canonical_form(tree: PhyloTree, labeling=None, inner_names=False) -> str:
    """Newick string that is identical for isomorphic trees (respecting leaf
    and edge labels, ignoring inner vertex ids unless ``inner_names``)."""
    if labeling is not None:
        check_labeling(tree, labeling)
    if tree.root is not None:
        return "[&R] " + _encode(tree, labeling, tree.root, None, inner_names) + ";"
    low = sorted(v for v in tree.inner if tree.degree(v) == 2)
    prefix = ""
    if low:
        candidates, prefix = low, "[&U] "
    elif len(tree.vertices) > 2:
        candidates = sorted(tree.inner)
    else:
        candidates = sorted(tree.vertices)
    best = min(_encode(tree, labeling, v, None, False) for v in candidates)
    if inner_names:
        for v in candidates:
            if _encode(tree, labeling, v, None, False) == best:
                best = _encode(tree, labeling, v, None, True)
                break
    return prefix + best + ";"


# --------------------------------------------------------------------------
# relations


def _norm_pair(p):
    p = frozenset(p)
    if len(p) != 2:
        raise InvariantError(f"pair {sorted(p)!r} must join two distinct taxa")
    return p


@dataclass(frozen=True)
class RelationGraph:
    """Observed pairwise data on a taxon set.

    ``sym_edges`` holds unordered pairs (the single-1 relation, or the
    "unknown direction" pairs in mixed mode), ``dir_edges`` ordered pairs
    (x, y) meaning x -> y, and ``zero_classes`` the partition into
    classes without any event between members.
    """

    taxa: frozenset
    zero_classes: frozenset
    sym_edges: frozenset = frozenset()
    dir_edges: frozenset = frozenset()
    mode: str = "undirected"

    def __post_init__(self):
        taxa = frozenset(self.taxa)
        classes = frozenset(frozenset(c) for c in self.zero_classes)
        sym = frozenset(_norm_pair(p) for p in self.sym_edges)
        dirs = frozenset(tuple(p) for p in self.dir_edges)
        object.__setattr__(self, "taxa", taxa)
        object.__setattr__(self, "zero_classes", classes)
        object.__setattr__(self, "sym_edges", sym)
        object.__setattr__(self, "dir_edges", dirs)
        if self.mode not in MODES:
            raise InvariantError(f"unknown mode {self.mode!r}")
        if not taxa:
            raise InvariantError("a relation needs at least one taxon")
        for t in taxa:
            check_taxon_id(t)
        seen = set()
        for c in classes:
            if not c:
                raise InvariantError("empty zero-class")
            if c & seen:
                raise InvariantError("zero-classes overlap")
            seen |= c
        if seen != taxa:
            raise InvariantError("zero-classes do not partition the taxa")
        for p in sym:
            if not p <= taxa:
                raise InvariantError(f"sym pair {sorted(p)!r} uses unknown taxa")
        for x, y in dirs:
            if x == y or x not in taxa or y not in taxa:
                raise InvariantError(f"bad dir pair ({x!r}, {y!r})")
            if (y, x) in dirs:
                raise InvariantError(f"both ({x!r}, {y!r}) and the reverse are present")
            if frozenset((x, y)) in sym:
                raise InvariantError(f"pair {x!r},{y!r} is both sym and dir")
        cls = self.class_of
        for p in sym:
            a, b = tuple(p)
            if cls[a] == cls[b]:
                raise InvariantError(f"sym pair {a!r},{b!r} lies inside a zero-class")
        for a, b in dirs:
            if cls[a] == cls[b]:
                raise InvariantError(f"dir pair {a!r},{b!r} lies inside a zero-class")
        if self.mode == "undirected" and dirs:
            raise ModeError("undirected relation with directed pairs")
        if self.mode == "directed" and sym:
            raise ModeError("directed relation with symmetric pairs")

    @classmethod
    def build(cls, taxa=(), sym=(), dir=(), zero=(), mode=None):
        """Convenience constructor: ``zero`` lists pairs (or larger groups)
        merged transitively into classes; taxa in any pair are added."""
        names = set(taxa)
        for group in list(sym) + list(dir) + list(zero):
            names.update(group)
        parent = {t: t for t in names}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for group in zero:
            group = list(group)
            for other in group[1:]:
                ra, rb = find(group[0]), find(other)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        classes = {}
        for t in names:
            classes.setdefault(find(t), set()).add(t)
        if mode is None:
            mode = "mixed" if (sym and dir) else ("directed" if dir else "undirected")
        return cls(frozenset(names), frozenset(frozenset(c) for c in classes.values()),
                   frozenset(frozenset(p) for p in sym), frozenset(tuple(p) for p in dir), mode)

    @cached_property
    def class_of(self) -> dict:
        return {t: c for c in self.zero_classes for t in c}

    @property
    def discrete(self) -> bool:
        return len(self.zero_classes) == len(self.taxa)

    def symmetrized(self) -> frozenset:
        return self.sym_edges | frozenset(frozenset(p) for p in self.dir_edges)


@dataclass(frozen=True)
class QuotientGraph:
    """Relation graph on zero-class representatives.

    ``classes`` holds the sorted representatives; ``members`` maps each
    representative to its class. Quotient vertices are taxon ids, so trees
    built on a quotient have the representatives as leaves.
    """

    classes: tuple
    sym_edges: frozenset = frozenset()
    dir_edges: frozenset = frozenset()
    mode: str = "undirected"
    members: tuple = field(default=(), compare=True)

    def __post_init__(self):
        classes = tuple(sorted(set(self.classes)))
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "sym_edges", frozenset(_norm_pair(p) for p in self.sym_edges))
        object.__setattr__(self, "dir_edges", frozenset(tuple(p) for p in self.dir_edges))
        members = dict(self.members) if self.members else {}
        members = tuple(sorted((c, frozenset(members.get(c, (c,)))) for c in classes))
        object.__setattr__(self, "members", members)
        if self.mode not in MODES:
            raise InvariantError(f"unknown mode {self.mode!r}")
        vs = set(classes)
        for p in self.sym_edges:
            if not p <= vs:
                raise InvariantError(f"edge {sorted(p)!r} uses unknown vertices")
        for x, y in self.dir_edges:
            if x == y or x not in vs or y not in vs:
                raise InvariantError(f"bad arc ({x!r}, {y!r})")
            if (y, x) in self.dir_edges or frozenset((x, y)) in self.sym_edges:
                raise InvariantError(f"pair {x!r},{y!r} is related twice")
        if self.mode == "undirected" and self.dir_edges:
            raise ModeError("undirected quotient with arcs")
        if self.mode == "directed" and self.sym_edges:
            raise ModeError("directed quotient with symmetric edges")

    @classmethod
    def from_edges(cls, vertices=(), sym=(), dir=(), mode=None):
        vs = set(vertices)
        for p in list(sym) + list(dir):
            vs.update(p)
        if mode is None:
            mode = "mixed" if (sym and dir) else ("directed" if dir else "undirected")
        return cls(tuple(vs), frozenset(frozenset(p) for p in sym),
                   frozenset(tuple(p) for p in dir), mode)

    @cached_property
    def member_map(self) -> dict:
        return dict(self.members)

    @cached_property
    def underlying(self) -> frozenset:
        return self.sym_edges | frozenset(frozenset(p) for p in self.dir_edges)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.classes}
        for p in self.underlying:
            u, v = tuple(p)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    def components(self) -> list[tuple]:
        return connected_components(self.classes, self.underlying)

    def restrict(self, vertices) -> "QuotientGraph":
        vs = set(vertices)
        sym = frozenset(p for p in self.sym_edges if p <= vs)
        dirs = frozenset(a for a in self.dir_edges if a[0] in vs and a[1] in vs)
        mm = self.member_map
        return QuotientGraph(tuple(vs), sym, dirs, self.mode, tuple((v, mm[v]) for v in vs))

    def as_undirected(self) -> "QuotientGraph":
        return QuotientGraph(self.classes, self.underlying, frozenset(), "undirected", self.members)

    def as_relation(self) -> RelationGraph:
        """The quotient as a relation with discrete zero-classes."""
        return RelationGraph(frozenset(self.classes), frozenset(frozenset([c]) for c in self.classes),
                             self.sym_edges, self.dir_edges, self.mode)

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1


# synthesized vertex ids; copies use one prefix char, everything else two,
# so the families never collide
def copy_id(u: str) -> str:
    return RESERVED + u


HUB_ID = RESERVED * 2 + "z"


def synth_id(kind: str, tag: str = "") -> str:
    return f"{RESERVED * 2}{kind}:{tag}"
