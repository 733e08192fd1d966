"""Command line interface.

Exit codes: 0 success, 1 relation rejected (witness on stderr), 2 malformed
input or bad usage, 3 the brute-force cross-check disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .binary import refine_all_binary_report
from .core import QuotientGraph, RelationGraph, canonical_form
from .directed import rooted_candidates
from .errors import (
    CapExceeded,
    IllDefinedQuotient,
    InvalidTree,
    InvariantError,
    ModeError,
    NotCentral,
    ParseError,
    RejectedRelation,
    RGCError,
    UnknownVertex,
    UnrootedTree,
)
from .formats import (
    parse_newick,
    parse_relation,
    serialize_dot,
    serialize_newick,
    serialize_pairs,
    serialize_relation,
    zero_pairs,
)
from .mixed import admissible_roots, orient
from .quotient import build_quotient, lift_tree
from .recognize import check
from .relations import (
    explains,
    induced_relation,
    relation_at_least_k,
    relation_directed1,
    relation_single1,
    relation_squiggle,
    relation_zero,
)
from .undirected import minimally_resolved

EXIT_OK, EXIT_REJECTED, EXIT_MALFORMED, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(RGCError):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit_json(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


def _rejection_text(res):
    return f"rejected ({res.kind}): {res}"


# --------------------------------------------------------------------------
# subcommands


def cmd_explain(args):
    rooted = True if args.rooted else False if args.unrooted else None
    tree, lab = parse_newick(_read(args.tree), rooted=rooted)
    what = args.relation or []
    if not what:
        rel = induced_relation(tree, lab)
        if args.json:
            _emit_json({"mode": rel.mode, "zero": [sorted(c) for c in sorted(rel.zero_classes, key=min)],
                        "sym": sorted(sorted(p) for p in rel.sym_edges),
                        "dir": sorted(list(p) for p in rel.dir_edges)})
        else:
            sys.stdout.write(serialize_relation(rel))
        return EXIT_OK
    name = what[0]
    if name == "atleast-k":
        if len(what) != 2 or not what[1].isdigit() or int(what[1]) < 1:
            raise UsageError("--relation atleast-k needs a positive integer K")
        k = int(what[1])
        pairs, ordered, kind, header = relation_at_least_k(tree, lab, k), False, "atleast", f"#relation=atleast-k k={k}"
    elif len(what) != 1:
        raise UsageError(f"--relation {name} takes no argument")
    elif name == "single1":
        pairs, ordered, kind, header = relation_single1(tree, lab), False, "sym", "#mode=undirected"
    elif name == "zero":
        pairs, ordered, kind, header = zero_pairs(relation_zero(tree, lab)), True, "zero", "#mode=undirected"
    elif name == "dir1":
        pairs, ordered, kind, header = relation_directed1(tree, lab), True, "dir", "#mode=directed"
    elif name == "squiggle":
        pairs, ordered, kind, header = relation_squiggle(tree, lab), True, "squiggle", "#relation=squiggle"
    else:
        raise UsageError(f"unknown relation {name!r}; choose single1, zero, dir1, atleast-k K or squiggle")
    if args.json:
        rows = sorted(pairs) if ordered else sorted(tuple(sorted(p)) for p in pairs)
        _emit_json({"relation": name, "pairs": [list(r) for r in rows], "taxa": sorted(tree.leaves)})
    else:
        sys.stdout.write(serialize_pairs(pairs, kind, ordered, header, tree.leaves))
    return EXIT_OK


def cmd_check(args):
    rel = parse_relation(_read(args.relation))
    try:
        q = build_quotient(rel)
    except IllDefinedQuotient as exc:
        print(f"rejected (ill-defined quotient): {exc}", file=sys.stderr)
        if args.json:
            _emit_json({"ok": False, "kind": "ill-defined", "witness": list(exc.classes)})
        return EXIT_REJECTED
    res = check(q)
    if not res:
        print(_rejection_text(res), file=sys.stderr)
        if args.json:
            _emit_json({"ok": False, "kind": res.kind, "witness": list(res.witness)})
        return EXIT_REJECTED
    comps = [list(c) for c in res.components]
    report = {"ok": True, "mode": rel.mode, "taxa": len(rel.taxa), "classes": len(q.classes),
              "components": comps}
    if res.sources:
        report["sources"] = [res.sources[c] for c in res.components]
    if res.centers:
        report["centers"] = [sorted(res.centers[c]) for c in res.components]
    if args.json:
        _emit_json(report)
        return EXIT_OK
    print(f"explainable: {len(rel.taxa)} taxa, {len(q.classes)} zero-classes, "
          f"{len(comps)} component(s)")
    for i, c in enumerate(res.components):
        extra = ""
        if res.sources:
            extra = f"\tsource={res.sources[c]}"
        if res.centers:
            extra = "\tcenters=" + ",".join(sorted(res.centers[c]))
        print("component\t" + ",".join(c) + extra)
    return EXIT_OK


def _raise_rejected(q):
    res = check(q)
    if not res:
        raise RejectedRelation(res)


def cmd_infer(args):
    rel = parse_relation(_read(args.relation))
    tree, lab = minimally_resolved(rel)
    print(serialize_newick(tree, lab, inner_names=args.inner_names))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(serialize_dot(tree, lab))
    return EXIT_OK


def _directed_quotient(rel: RelationGraph) -> QuotientGraph:
    q = build_quotient(rel)
    if q.mode == "undirected":
        raise ModeError("infer-rooted needs directed or mixed data")
    if q.mode == "mixed":
        q = orient(q)
    return q


def cmd_infer_rooted(args):
    rel = parse_relation(_read(args.relation))
    q = _directed_quotient(rel)
    cands = rooted_candidates(q)
    if args.all:
        for name, t, lab in cands:
            t2, l2 = lift_tree(t, lab, rel)
            print(f"{name}\t{serialize_newick(t2, l2)}")
        return EXIT_OK
    if args.root is None:
        choice = cands[-1]
    else:
        matches = [c for c in cands if c[0] == args.root]
        if not matches:
            raise UsageError(f"{args.root!r} is not an admissible root; choose from "
                             + ", ".join(c[0] for c in cands))
        choice = matches[0]
    t, lab = lift_tree(choice[1], choice[2], rel)
    print(serialize_newick(t, lab))
    return EXIT_OK


def cmd_enumerate_binary(args):
    rel = parse_relation(_read(args.relation))
    if rel.mode != "undirected":
        rel = RelationGraph(rel.taxa, rel.zero_classes, rel.symmetrized(), (), "undirected")
    _raise_rejected(build_quotient(rel))
    report = refine_all_binary_report(rel)
    if args.count_only:
        data = {"binary_trees": len(report.trees), "raw_candidates": report.raw_total,
                "least_resolved": [
                    {"tree": r.newick, "raw": r.raw, "explaining": r.explaining, "formula": r.formula}
                    for r in report.per_tree]}
        if args.json:
            _emit_json(data)
        else:
            print(f"binary trees\t{len(report.trees)}")
            print(f"raw candidates\t{report.raw_total}")
            for r in report.per_tree:
                print(f"{r.newick}\traw={r.raw}\texplaining={r.explaining}\tformula={r.formula}")
        return EXIT_OK
    for t, lab in report.trees:
        print(serialize_newick(t, lab))
    return EXIT_OK


def cmd_orient(args):
    rel = parse_relation(_read(args.relation))
    q = build_quotient(rel)
    if q.mode == "undirected":
        raise ModeError("orient needs mixed or directed data")
    roots = admissible_roots(q)
    if args.list_centers:
        if args.json:
            _emit_json({"components": [{"vertices": list(c), "centers": sorted(v)}
                                       for c, v in sorted(roots.items())]})
        else:
            for c, v in sorted(roots.items()):
                print(",".join(c) + "\t" + ",".join(sorted(v)))
        return EXIT_OK
    d = orient(q, args.center)
    members = q.member_map
    arcs = {(a, b) for x, y in d.dir_edges for a in members[x] for b in members[y]}
    out = RelationGraph(rel.taxa, rel.zero_classes, (), arcs, "directed")
    sys.stdout.write(serialize_relation(out))
    for c, v in sorted(roots.items()):
        if len(v) > 1:
            print("# centers " + ",".join(c) + ": " + ",".join(sorted(v)), file=sys.stderr)
    return EXIT_OK


def cmd_oracle_verify(args):
    from .oracle import OracleConfig, brute_force_explainers

    rel = parse_relation(_read(args.relation))
    cfg = OracleConfig(max_leaves=args.max_leaves)
    if len(rel.taxa) > cfg.max_leaves:
        raise CapExceeded(f"{len(rel.taxa)} taxa exceeds --max-leaves {cfg.max_leaves}")
    try:
        q = build_quotient(rel)
        res = check(q)
    except IllDefinedQuotient:
        res = None
    accepted = bool(res)
    found = brute_force_explainers(rel, tolerate_degree2=True, config=cfg)
    problems = []
    if accepted != bool(found):
        problems.append(f"recognizer says {'yes' if accepted else 'no'}, "
                        f"oracle found {len(found)} explainers")
    if accepted and found:
        if rel.mode == "undirected":
            t, lab = minimally_resolved(rel)
            if not explains(t, lab, rel):
                problems.append("constructed tree does not explain the relation")
            low = min(len(x.vertices) for x, _ in found)
            if len(t.vertices) != low:
                problems.append(f"constructed tree has {len(t.vertices)} vertices, minimum is {low}")
        else:
            d = q if q.mode == "directed" else orient(q)
            for name, t, lab in rooted_candidates(d):
                t2, l2 = lift_tree(t, lab, rel)
                if not explains(t2, l2, rel):
                    problems.append(f"root choice {name} does not explain the relation")
    forms = {canonical_form(t, lab) for t, lab in found}
    print(f"oracle explainers\t{len(found)} ({len(forms)} distinct)")
    print(f"recognizer\t{'accepted' if accepted else 'rejected'}")
    if problems:
        for p in problems:
            print("disagreement: " + p, file=sys.stderr)
        return EXIT_DISAGREE
    print("agreement")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rgctree", description="Trees from single-event path relations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("explain", help="relations induced by a labeled tree")
    s.add_argument("tree")
    s.add_argument("--relation", nargs="+", metavar="NAME",
                   help="single1 | zero | dir1 | atleast-k K | squiggle")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--rooted", action="store_true")
    g.add_argument("--unrooted", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_explain)

    s = sub.add_parser("check", help="decide whether a relation is explainable")
    s.add_argument("relation")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("infer", help="minimally resolved explaining tree")
    s.add_argument("relation")
    s.add_argument("--dot", metavar="OUT")
    s.add_argument("--inner-names", action="store_true")
    s.set_defaults(func=cmd_infer)

    s = sub.add_parser("infer-rooted", help="rooted explaining trees from directed data")
    s.add_argument("relation")
    s.add_argument("--root", metavar="VERTEX")
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_infer_rooted)

    s = sub.add_parser("enumerate-binary", help="all binary explaining trees")
    s.add_argument("relation")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate_binary)

    s = sub.add_parser("orient", help="resolve mixed data from a central vertex")
    s.add_argument("relation")
    s.add_argument("--center", metavar="VERTEX")
    s.add_argument("--list-centers", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_orient)

    s = sub.add_parser("oracle-verify", help="cross-check against brute force")
    s.add_argument("relation")
    s.add_argument("--max-leaves", type=int, default=6)
    s.set_defaults(func=cmd_oracle_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RejectedRelation as exc:
        print(_rejection_text(exc.rejection), file=sys.stderr)
        return EXIT_REJECTED
    except IllDefinedQuotient as exc:
        print(f"rejected (ill-defined quotient): {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except NotCentral as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (ParseError, InvariantError, ModeError, InvalidTree, UsageError,
            UnknownVertex, UnrootedTree, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
