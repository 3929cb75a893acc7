"""Command-line front end.

Subcommands: list, info, graph, roots, axioms, hamilton, verify, coxeter.
Generator indices are 1-based in every user-facing format, matching the
alpha_1 ... alpha_n convention; exit code 0 means the requested construction
or assertion succeeded.  ``--json`` switches to machine-readable output,
including for errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bichar, catalog, coxeter, groupoid, hamilton


class CliError(RuntimeError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _resolve(entry: str) -> bichar.Bicharacter:
    """Catalog name, alias, or a bicharacter file path."""
    try:
        return catalog.get_entry(entry).bicharacter()
    except KeyError:
        pass
    import os

    if os.path.exists(entry):
        entries = catalog.load_entries(entry)
        if len(entries) != 1:
            raise CliError("AmbiguousFile", f"{entry} holds {len(entries)} entries; name one")
        return entries[0].bicharacter()
    raise CliError("UnknownEntry", f"no catalog entry, alias or file {entry!r}")


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_list(args) -> int:
    table = catalog.all_entries()
    rows = []
    for name in sorted(table):
        e = table[name]
        rows.append(
            {
                "name": name,
                "aliases": list(e.aliases),
                "construction": e.construction,
                "conditional": e.conditional,
            }
        )
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for r in rows:
            alias = f"  (aliases: {', '.join(r['aliases'])})" if r["aliases"] else ""
            print(f"{r['name']:<18} {r['construction']}{alias}")
    return 0


def cmd_info(args) -> int:
    chi = _resolve(args.entry)
    g = groupoid.enumerate(chi)
    is_cartan, label = bichar.is_cartan_type(chi)
    rs = groupoid.roots(g, g.base)
    payload = {
        "entry": args.entry,
        "rank": chi.rank,
        "objects": len(g.objects),
        "vertices": g.nvertices,
        "edges": g.nedges,
        "positive_roots": len(rs.positive),
        "cartan_type": label if is_cartan else None,
    }
    text = (
        f"entry           {args.entry}\n"
        f"rank            {chi.rank}\n"
        f"objects |G|     {len(g.objects)}\n"
        f"vertices |V|    {g.nvertices}\n"
        f"edges |E|       {g.nedges}\n"
        f"positive roots  {len(rs.positive)}\n"
        f"cartan type     {label if is_cartan else 'no'}"
    )
    _emit(payload, args.json, text)
    return 0


def cmd_graph(args) -> int:
    chi = _resolve(args.entry)
    g = groupoid.enumerate(chi)
    if args.dot:
        out = groupoid.graph_to_dot(g)
    else:
        out = json.dumps(groupoid.graph_to_json(g), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_roots(args) -> int:
    chi = _resolve(args.entry)
    g = groupoid.enumerate(chi)
    payload = {}
    lines = []
    for oid, key in enumerate(g.objects):
        rs = groupoid.roots(g, key)
        payload[str(oid)] = [list(r) for r in rs.positive]
        lines.append(f"object {oid} ({key.short_hash()}): {len(rs.positive)} positive roots")
        for r in rs.positive:
            lines.append("  " + " ".join(f"{x:>2}" for x in r))
    _emit(payload, args.json, "\n".join(lines))
    return 0


def cmd_axioms(args) -> int:
    chi = _resolve(args.entry)
    g = groupoid.enumerate(chi)
    rep = groupoid.verify_axioms(g)
    payload = {"checks": rep.checks, "failures": rep.failures, "ok": rep.ok}
    text = f"{rep.checks} checks, {len(rep.failures)} failures"
    for f in rep.failures:
        text += f"\n  FAIL {f}"
    _emit(payload, args.json, text)
    return 0 if rep.ok else 1


def _word_1based(word) -> list[int]:
    return [j + 1 for j in word]


def cmd_hamilton(args) -> int:
    chi = _resolve(args.entry)
    g = groupoid.enumerate(chi)
    require = hamilton.Requirement.parse(args.require)
    if args.method == "backtrack" or require is not None:
        res = hamilton.backtrack_search(g, require, args.budget)
        if not res.found:
            raise CliError("SearchFailed", f"backtracking: {res.status}")
        circ = res.circuit
        rep = hamilton.verify(g, circ)
        rep.method = "backtrack"
    else:
        circ, rep = hamilton.find_circuit(chi, args.method, args.budget, _graph=g)
    doc = {
        "entry": args.entry,
        "word": _word_1based(circ.word),
        "order": "application",
        "length": rep.length,
        "special": rep.special,
        "convenient": [i + 1 for i in rep.convenient],
        "method": rep.method,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    text = " ".join(f"s_{j}" for j in doc["word"])
    text += (
        f"\nlength {rep.length}  method {rep.method}  special {rep.special}"
        f"  convenient {doc['convenient']}"
    )
    _emit(doc, args.json, text)
    return 0


def cmd_verify(args) -> int:
    chi = _resolve(args.entry)
    g = groupoid.enumerate(chi)
    with open(args.circuit, encoding="utf-8") as fh:
        doc = json.load(fh)
    word = tuple(int(j) - 1 for j in doc["word"])
    if doc.get("order", "application") != "application":
        raise CliError("BadCircuitFile", "only application order is supported")
    k = len(word)
    if k != g.nvertices:
        raise CliError("LengthMismatch", f"word length {k} != |V| = {g.nvertices}")
    rep = hamilton.verify(g, hamilton.CircuitMap(g.base, word))
    payload = {
        "valid": rep.valid,
        "length": rep.length,
        "special": rep.special,
        "convenient": [i + 1 for i in rep.convenient],
        "reason": rep.reason,
    }
    text = "valid" if rep.valid else f"INVALID: {rep.reason}"
    if rep.valid:
        text += f"  special {rep.special}  convenient {payload['convenient']}"
    _emit(payload, args.json, text)
    return 0 if rep.valid else 1


def cmd_coxeter(args) -> int:
    cs = coxeter.CoxeterSystem.from_type(args.type)
    order = cs.order()
    payload = {"type": args.type, "rank": cs.n, "order": order}
    lines = [f"type {args.type}  rank {cs.n}  |W| {order}"]
    if args.circuit:
        word = coxeter.csw_circuit(cs)
        graph = coxeter.enumerate_group(cs)
        walk = [0]
        for j in word:
            walk.append(int(graph.adj[walk[-1], j]))
        ok = walk[-1] == 0 and len(set(walk[:-1])) == len(word)
        if not ok:
            raise CliError("Internal", "constructed circuit failed verification")
        payload["word"] = _word_1based(word)
        lines.append(" ".join(f"s_{j + 1}" for j in word))
    _emit(payload, args.json, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="weylgroupoid",
        description="Weyl groupoids of diagonal bicharacters and their Hamilton circuits",
    )
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="catalog entries with aliases")

    p = sub.add_parser("info", help="rank, object/vertex counts, Cartan flag")
    p.add_argument("entry")

    p = sub.add_parser("graph", help="export the Cayley graph")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="DOT output")
    fmt.add_argument("--json-doc", dest="jsondoc", action="store_true", help="JSON output (default)")
    p.add_argument("--out", help="write to file instead of stdout")
    p.add_argument("entry")

    p = sub.add_parser("roots", help="positive roots per object")
    p.add_argument("entry")

    p = sub.add_parser("axioms", help="run the axiom checker")
    p.add_argument("entry")

    p = sub.add_parser("hamilton", help="construct a Hamilton circuit")
    p.add_argument("entry")
    p.add_argument("--method", choices=["auto", "csw", "splice", "backtrack"], default="auto")
    p.add_argument("--require", help="special, convenient:i, or special+convenient:i")
    p.add_argument("--budget", type=int, default=hamilton.DEFAULT_BUDGET)
    p.add_argument("--out", help="write the circuit JSON to a file")

    p = sub.add_parser("verify", help="verify a circuit file against an entry")
    p.add_argument("entry")
    p.add_argument("circuit")

    p = sub.add_parser("coxeter", help="Coxeter system info / CSW circuit")
    p.add_argument("type", help="A4, B3, I2:7, H3, or products like A2xA1")
    p.add_argument("--circuit", action="store_true")
    return ap


_COMMANDS = {
    "list": cmd_list,
    "info": cmd_info,
    "graph": cmd_graph,
    "roots": cmd_roots,
    "axioms": cmd_axioms,
    "hamilton": cmd_hamilton,
    "verify": cmd_verify,
    "coxeter": cmd_coxeter,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CliError as e:
        _fail(args, e.kind, str(e))
        return 2
    except (
        KeyError,
        ValueError,
        OSError,
        groupoid.CapExceeded,
        bichar.InfiniteType,
        hamilton.NotFoundError,
        coxeter.InfiniteGroup,
    ) as e:
        _fail(args, type(e).__name__, str(e))
        return 2


def _fail(args, kind: str, message: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"error": {"kind": kind, "message": message}}))
    else:
        print(f"error: {kind}: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
