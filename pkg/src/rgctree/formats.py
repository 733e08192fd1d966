"""Newick with 0/1 edge labels, the relation TSV format, and DOT output.

Newick: the branch-length slot carries the edge label and must be exactly
``0`` or ``1``. A leading or trailing ``[&R]`` / ``[&U]`` comment fixes
rootedness; without one, a top node with two children means rooted.

Relation TSV: optional ``#mode=undirected|directed|mixed`` header, then one
record per line: ``a<TAB>b<TAB>sym|dir|zero`` or a lone taxon id.
"""

from __future__ import annotations

from .core import (
    RESERVED,
    EdgeLabeling,
    PhyloTree,
    RelationGraph,
    canonical_form,
    check_taxon_id,
    edge,
    edge_key,
    quote_name,
    synth_id,
)
from .errors import DegreeError, InvalidTree, InvariantError, LabelError, ParseError

_PUNCT = set("(),:;")
_STOP = set(" \t\r\n()[]':;,")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.markers = []

    def pos(self, i=None):
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def error(self, msg, expected=None, cls=ParseError, at=None):
        line, col = self.pos(at)
        return cls(msg, line=line, col=col, expected=expected)

    def skip(self):
        t = self.text
        while self.i < len(t):
            c = t[self.i]
            if c.isspace():
                self.i += 1
            elif c == "[":
                end = t.find("]", self.i)
                if end < 0:
                    raise self.error("unterminated comment", expected="]")
                body = t[self.i + 1:end].strip().upper()
                if body in ("&R", "&U"):
                    self.markers.append(body)
                self.i = end + 1
            else:
                break

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise self.error(f"unexpected {got!r}", expected=repr(ch))
        self.i += 1

    def word(self):
        """A quoted or unquoted token; '' if none."""
        self.skip()
        t = self.text
        if self.i < len(t) and t[self.i] == "'":
            out = []
            j = self.i + 1
            while True:
                if j >= len(t):
                    raise self.error("unterminated quoted name", expected="'")
                if t[j] == "'":
                    if j + 1 < len(t) and t[j + 1] == "'":
                        out.append("'")
                        j += 2
                        continue
                    break
                out.append(t[j])
                j += 1
            self.i = j + 1
            return "".join(out), True
        j = self.i
        while j < len(t) and t[j] not in _STOP:
            j += 1
        w = t[self.i:j]
        self.i = j
        return w, False


class _Node:
    __slots__ = ("name", "children", "label", "at")

    def __init__(self, at):
        self.name = ""
        self.children = []
        self.label = None
        self.at = at


def _parse_node(lx: _Lexer, top: bool) -> _Node:
    lx.skip()
    node = _Node(lx.i)
    if lx.peek() == "(":
        lx.i += 1
        node.children.append(_parse_node(lx, False))
        while lx.peek() == ",":
            lx.i += 1
            node.children.append(_parse_node(lx, False))
        lx.expect(")")
    name, _ = lx.word()
    node.name = name
    if lx.peek() == ":":
        at = lx.i
        lx.i += 1
        val, _ = lx.word()
        if top:
            raise lx.error("the top node cannot carry an edge label", cls=LabelError, at=at)
        if val not in ("0", "1"):
            raise lx.error(f"edge label must be 0 or 1, got {val!r}", cls=LabelError, at=at + 1)
        node.label = int(val)
    elif not top:
        raise lx.error("missing edge label", expected="':0' or ':1'", cls=LabelError)
    return node


def parse_newick(text: str, rooted: bool | None = None):
    """Parse one labeled tree; returns (PhyloTree, EdgeLabeling)."""
    lx = _Lexer(text)
    if not lx.peek():
        raise lx.error("empty input", expected="a tree")
    top = _parse_node(lx, True)
    lx.expect(";")
    if lx.peek():
        raise lx.error("trailing input after ';'", expected="end of input")

    ids = set()
    edges = {}
    counter = [0]

    def ident(node, is_leaf):
        if is_leaf:
            if not node.name:
                raise lx.error("unnamed leaf", expected="a taxon name", at=node.at)
            if node.name.startswith(RESERVED):
                raise lx.error(f"taxon {node.name!r} uses the reserved prefix {RESERVED!r}",
                               at=node.at)
            v = node.name
        elif node.name:
            v = node.name
        else:
            counter[0] += 1
            v = synth_id("n", str(counter[0]))
        if v in ids:
            raise lx.error(f"duplicate vertex name {v!r}", at=node.at)
        ids.add(v)
        return v

    vid = {}

    def walk(node, is_top):
        is_leaf = not node.children and not is_top or (
            is_top and len(node.children) <= 1)
        v = ident(node, is_leaf)
        vid[id(node)] = v
        for c in node.children:
            cv = walk(c, False)
            edges[edge(v, cv)] = c.label
        return v

    root_id = walk(top, True)
    marker = lx.markers[-1] if lx.markers else None
    if rooted is None:
        rooted = marker == "&R" if marker else len(top.children) == 2
    tolerate_top = marker == "&U"

    def check(node, is_top):
        deg = len(node.children) + (0 if is_top else 1)
        if node.children and deg == 2 and not (is_top and (rooted or tolerate_top)):
            raise lx.error(f"vertex of degree 2 at {vid[id(node)]!r}", cls=DegreeError, at=node.at)
        for c in node.children:
            check(c, False)

    check(top, True)
    if rooted and len(top.children) == 1:
        raise lx.error("a rooted tree needs a root with at least two children",
                       cls=DegreeError, at=top.at)
    if not edges:
        tree = PhyloTree(frozenset([root_id]), frozenset(), root_id if rooted else None)
    else:
        try:
            tree = PhyloTree.from_edges([tuple(e) for e in edges], root=root_id if rooted else None)
        except InvalidTree as exc:
            raise lx.error(str(exc)) from None
    return tree, EdgeLabeling(edges)


def serialize_newick(tree: PhyloTree, labeling: EdgeLabeling, inner_names: bool = False) -> str:
    return canonical_form(tree, labeling, inner_names=inner_names)


def serialize_dot(tree: PhyloTree, labeling: EdgeLabeling, name: str = "T") -> str:
    """1-edges solid, 0-edges dashed; the root drawn as a double circle."""
    q = lambda s: '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'  # noqa: E731
    lines = [f"graph {q(name)} {{"]
    for v in sorted(tree.vertices):
        if v == tree.root:
            attrs = 'shape=doublecircle, label=""' if v not in tree.leaves else "shape=doublecircle"
        elif v in tree.leaves:
            attrs = "shape=plaintext"
        else:
            attrs = 'shape=point, label=""'
        lines.append(f"  {q(v)} [{attrs}];")
    for e in sorted(tree.edges, key=edge_key):
        a, b = edge_key(e)
        lab = labeling[e]
        style = "solid" if lab == 1 else "dashed"
        lines.append(f'  {q(a)} -- {q(b)} [style={style}, label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# relation TSV

RELATION_KINDS = ("sym", "dir", "zero")


def parse_relation(text: str) -> RelationGraph:
    mode = None
    taxa: dict = {}
    sym, arcs, zero = [], [], []
    where: dict = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("mode="):
                if mode is not None:
                    raise ParseError("duplicate mode header", line=n, col=1)
                mode = body[5:].strip()
                if mode not in ("undirected", "directed", "mixed"):
                    raise ParseError(f"unknown mode {mode!r}", line=n, col=7,
                                     expected="undirected, directed or mixed")
            continue
        fields = line.split("\t")
        if len(fields) not in (1, 3):
            raise ParseError(f"expected 1 or 3 tab-separated fields, got {len(fields)}",
                             line=n, col=1)
        for f in fields[:2]:
            try:
                check_taxon_id(f.strip())
            except InvariantError as exc:
                raise InvariantError(str(exc), line=n) from None
        if len(fields) == 1:
            taxa.setdefault(fields[0].strip(), n)
            continue
        a, b, kind = (f.strip() for f in fields)
        if kind not in RELATION_KINDS:
            col = len(fields[0]) + len(fields[1]) + 3
            raise ParseError(f"unknown relation kind {kind!r}", line=n, col=col,
                             expected="sym, dir or zero")
        if a == b:
            raise InvariantError(f"pair {a!r},{b!r} relates a taxon to itself", line=n)
        taxa.setdefault(a, n)
        taxa.setdefault(b, n)
        {"sym": sym, "dir": arcs, "zero": zero}[kind].append((a, b))
        where.setdefault((kind, frozenset((a, b))), n)
        if kind == "dir":
            where[("arc", (a, b))] = n
    if not taxa:
        raise ParseError("no taxa", line=1, col=1, expected="at least one taxon")
    if mode is None:
        mode = "mixed" if (sym and arcs) else ("directed" if arcs else "undirected")
    if mode == "undirected" and arcs:
        raise InvariantError("dir record in undirected mode", line=where[("arc", arcs[0])])
    if mode == "directed" and sym:
        raise InvariantError("sym record in directed mode", line=where[("sym", frozenset(sym[0]))])
    base = RelationGraph.build(taxa=list(taxa), zero=zero, mode=mode)
    cls = base.class_of
    for kind, pairs in (("sym", sym), ("dir", arcs)):
        for a, b in pairs:
            if cls[a] == cls[b]:
                raise InvariantError(f"{kind} pair {a!r},{b!r} lies inside a zero-class",
                                     line=where[(kind, frozenset((a, b)))])
    arcset = set(arcs)
    for a, b in arcs:
        if (b, a) in arcset:
            raise InvariantError(f"both {a} -> {b} and {b} -> {a} given",
                                 line=max(where[("arc", (a, b))], where[("arc", (b, a))]))
        if frozenset((a, b)) in {frozenset(p) for p in sym}:
            raise InvariantError(f"pair {a!r},{b!r} is both sym and dir",
                                 line=where[("dir", frozenset((a, b)))])
    return RelationGraph(base.taxa, base.zero_classes, frozenset(frozenset(p) for p in sym),
                         frozenset(arcset), mode)


def serialize_relation(rel: RelationGraph) -> str:
    """Canonical TSV: header, zero-class stars from each class minimum,
    sorted sym and dir records, then taxa not mentioned elsewhere."""
    lines = [f"#mode={rel.mode}"]
    used = set()
    for cls in sorted(rel.zero_classes, key=min):
        rep = min(cls)
        for x in sorted(cls - {rep}):
            lines.append(f"{rep}\t{x}\tzero")
            used |= {rep, x}
    for a, b in sorted(tuple(sorted(p)) for p in rel.sym_edges):
        lines.append(f"{a}\t{b}\tsym")
        used |= {a, b}
    for a, b in sorted(rel.dir_edges):
        lines.append(f"{a}\t{b}\tdir")
        used |= {a, b}
    for t in sorted(rel.taxa - used):
        lines.append(t)
    return "\n".join(lines) + "\n"


def serialize_pairs(pairs, kind: str, ordered: bool = False, header: str | None = None,
                    taxa=()) -> str:
    """Plain pair listing for a single forward relation."""
    lines = [header] if header else []
    used = set()
    rows = sorted(pairs) if ordered else sorted(tuple(sorted(p)) for p in pairs)
    for a, b in rows:
        lines.append(f"{a}\t{b}\t{kind}")
        used |= {a, b}
    for t in sorted(set(taxa) - used):
        lines.append(t)
    return "\n".join(lines) + "\n"


def zero_pairs(classes) -> list:
    out = []
    for cls in sorted(classes, key=min):
        rep = min(cls)
        out += [(rep, x) for x in sorted(cls - {rep})]
    return out


__all__ = [
    "parse_newick", "serialize_newick", "serialize_dot", "parse_relation",
    "serialize_relation", "serialize_pairs", "zero_pairs", "quote_name",
]
