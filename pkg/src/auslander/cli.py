"""Command-line front end: enumeration, mutation, verification, DOT graphs.

Subcommands:

* ``algebra``                 -- summary of the algebra for a given t
* ``enumerate sttilt``        -- support tau-tilting pairs
* ``enumerate tilting``       -- basic tilting modules (ordered summands)
* ``enumerate exc``           -- complete exceptional sequences
* ``enumerate tau-exc``       -- complete tau-exceptional sequences
* ``lattice``                 -- mutation/Hasse graph of the pairs
* ``mutate``                  -- psi/phi mutation of a sequence from JSON
* ``verify``                  -- run one named check, the battery, or all

Enumerations print JSON lines after a metadata header line.  ``--dot``
switches graph-producing commands to DOT output.  Flags can be defaulted
through environment variables with the ``AUSWB_`` prefix (``AUSWB_T``,
``AUSWB_SEED``, ``AUSWB_JSON``, ``AUSWB_DOT``, ``AUSWB_CAP_NODES``).

Exit codes: 0 success, 1 verification counterexample, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import bqa, homology, modrep, sequences, tautilt

ENV_PREFIX = "AUSWB_"


def _env(name: str, fallback=None):
    return os.environ.get(ENV_PREFIX + name, fallback)


def get_algebra(t: int):
    """Build the algebra and register deterministic structural names."""
    A = bqa.auslander_algebra(t)
    reg = modrep.registry_for(A)
    for v in range(1, t + 1):
        reg.canon(modrep.structural(A, "P", v), preferred=f"P{v}")
    for v in range(1, t + 1):
        reg.canon(modrep.structural(A, "S", v), preferred=f"S{v}")
    for v in range(1, t + 1):
        reg.canon(modrep.structural(A, "I", v), preferred=f"I{v}")
    return A


def module_label(algebra, name: str) -> str:
    """Registry name together with the dimension vector."""
    M = modrep.registry_for(algebra).module(name)
    return name + "(" + ",".join(str(d) for d in M.dims) + ")"


def _meta(args, command: str) -> dict:
    return {"command": command, "t": args.t, "seed": args.seed,
            "cap_nodes": args.cap_nodes}


def _emit(line) -> None:
    sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")


# -- graphs ------------------------------------------------------------------

def lattice_graph(algebra):
    """Nodes and labeled edges of the support tau-tilting mutation graph.

    Node payload: (parts, shifted, is_tilting).  Edge payload:
    (source, target, exchanged summand, ordered position or None).
    Positions are only defined on edges between tilting nodes.
    """
    lat = tautilt.enumerate_sttilt(algebra)
    tilt_keys = {tuple(sorted(T.names)) for T in tautilt.enumerate_tilting(algebra)}
    nodes = []
    for p in lat.pairs:
        is_tilt = not p.shifted and tuple(sorted(p.parts)) in tilt_keys
        nodes.append((list(p.parts), sorted(p.shifted), is_tilt))
    edges = []
    for up, down, summand in lat.down_edges:
        pos = None
        if nodes[up][2] and nodes[down][2]:
            # exchanging the summand in ordered position p corresponds to
            # sequence mutation at position p + 1
            up_mod = modrep.registry_for(algebra).module(summand)
            pos = tautilt.tilting_position(algebra, up_mod) + 1
        edges.append((up, down, summand, pos))
    return nodes, edges


def sequence_graph(algebra):
    """Nodes and labeled edges of the left mutation graph of complete
    tau-exceptional sequences.

    Node payload: (sequence leftmost-first, is_exceptional).  Edge
    payload: (source, target, position).
    """
    seqs = sequences.enumerate_complete_tau_exceptional(algebra)
    exc = set(sequences.enumerate_exceptional_sequences(algebra))
    index = {s: k for k, s in enumerate(seqs)}
    nodes = [(list(sequences.display(s)), s in exc) for s in seqs]
    edges = []
    for i in range(2, algebra.quiver.vertex_count + 1):
        g = sequences.phi_left_graph(algebra, i)
        for s in seqs:
            edges.append((index[s], index[g[s]], i))
    return nodes, edges


def _dot_escape(s: str) -> str:
    return s.replace('"', '\\"')


def dot_lattice(algebra, args) -> str:
    nodes, edges = lattice_graph(algebra)
    cap = args.cap_nodes or len(nodes)
    out = [f"digraph sttilt_t{args.t} {{"]
    out.append(f'  graph [meta="{_dot_escape(json.dumps(_meta(args, "lattice")))}"];')
    for k, (parts, shifted, is_tilt) in enumerate(nodes[:cap]):
        label = "+".join(module_label(algebra, n) for n in parts) or "0"
        if shifted:
            label += " | " + ",".join(str(v) for v in shifted)
        style = ' style=filled fillcolor="#9370DB"' if is_tilt else ""
        out.append(f'  n{k} [label="{_dot_escape(label)}" '
                   f'tilting={"true" if is_tilt else "false"}{style}];')
    for a, b, summand, pos in edges:
        if a >= cap or b >= cap:
            continue
        attrs = f'label="{_dot_escape(summand)}"'
        if pos is not None:
            attrs += f" pos={pos}"
        out.append(f"  n{a} -> n{b} [{attrs}];")
    out.append("}")
    return "\n".join(out) + "\n"


def dot_sequences(algebra, args) -> str:
    nodes, edges = sequence_graph(algebra)
    cap = args.cap_nodes or len(nodes)
    out = [f"digraph tau_exc_t{args.t} {{"]
    out.append(f'  graph [meta="{_dot_escape(json.dumps(_meta(args, "tau-exc")))}"];')
    for k, (terms, is_exc) in enumerate(nodes[:cap]):
        label = "(" + ",".join(module_label(algebra, n) for n in terms) + ")"
        style = ' style=filled fillcolor="#9370DB"' if is_exc else ""
        out.append(f'  n{k} [label="{_dot_escape(label)}" '
                   f'exceptional={"true" if is_exc else "false"}{style}];')
    for a, b, i in edges:
        if a >= cap or b >= cap:
            continue
        out.append(f'  n{a} -> n{b} [label="{i}" pos={i}];')
    out.append("}")
    return "\n".join(out) + "\n"


# -- subcommand handlers -----------------------------------------------------

def cmd_algebra(args) -> int:
    A = get_algebra(args.t)
    info = {
        "name": A.name,
        "vertices": A.quiver.vertex_count,
        "arrows": [(a.name, a.source, a.target) for a in A.quiver.arrows],
        "dimension": len(A.basis),
        "projective_dims": {
            f"P{v}": list(modrep.structural(A, "P", v).dims)
            for v in range(1, args.t + 1)},
    }
    if args.json:
        _emit(_meta(args, "algebra"))
        _emit(info)
    else:
        print(f"{info['name']}: {info['vertices']} vertices, "
              f"{len(info['arrows'])} arrows, dimension {info['dimension']}")
        for v in range(1, args.t + 1):
            print(f"  P({v}) dims {info['projective_dims'][f'P{v}']}")
    return 0


def cmd_enumerate(args) -> int:
    A = get_algebra(args.t)
    kind = args.kind
    if args.dot:
        if kind in ("tau-exc", "exc"):
            sys.stdout.write(dot_sequences(A, args))
            return 0
        if kind == "sttilt":
            sys.stdout.write(dot_lattice(A, args))
            return 0
        print("--dot is not available for this enumeration", file=sys.stderr)
        return 2
    _emit(_meta(args, f"enumerate {kind}"))
    if kind == "sttilt":
        for p in tautilt.enumerate_sttilt(A).pairs:
            _emit({"parts": [module_label(A, n) for n in p.parts],
                   "shifted": sorted(p.shifted)})
    elif kind == "tilting":
        for T in tautilt.enumerate_tilting(A):
            _emit({"summands": [module_label(A, n) for n in T.names]})
    elif kind == "exc":
        for s in sequences.enumerate_exceptional_sequences(A):
            _emit({"sequence": [module_label(A, n)
                                for n in sequences.display(s)]})
    elif kind == "tau-exc":
        exc = set(sequences.enumerate_exceptional_sequences(A))
        for s in sequences.enumerate_complete_tau_exceptional(A):
            _emit({"sequence": [module_label(A, n)
                                for n in sequences.display(s)],
                   "exceptional": s in exc})
    return 0


def cmd_lattice(args) -> int:
    A = get_algebra(args.t)
    if args.dot:
        sys.stdout.write(dot_lattice(A, args))
        return 0
    _emit(_meta(args, "lattice"))
    nodes, edges = lattice_graph(A)
    for k, (parts, shifted, is_tilt) in enumerate(nodes):
        _emit({"node": k, "parts": [module_label(A, n) for n in parts],
               "shifted": shifted, "tilting": is_tilt})
    for a, b, summand, pos in edges:
        _emit({"from": a, "to": b, "summand": module_label(A, summand),
               "position": pos})
    return 0


def _strip_label(term: str) -> str:
    """Accept either a bare registry name or name + dimension vector."""
    return term.split("(")[0]


def cmd_mutate(args) -> int:
    with open(args.seq, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    t = args.t or payload.get("t")
    if t is None:
        print("--t or a 't' field in the sequence file is required",
              file=sys.stderr)
        return 2
    args.t = t
    A = get_algebra(t)
    reg = modrep.registry_for(A)
    shown = [_strip_label(x) for x in payload["sequence"]]
    unknown = [n for n in shown if n not in reg.by_name]
    if unknown:
        # names outside the structural warm-up require the enumeration
        sequences.enumerate_complete_tau_exceptional(A)
        unknown = [n for n in shown if n not in reg.by_name]
        if unknown:
            print(f"unknown module names: {unknown}", file=sys.stderr)
            return 2
    seq = tuple(reversed(shown))      # stored rightmost-first
    if args.kind == "psi":
        fn = sequences.psi_left if args.dir == "left" else sequences.psi_right
        new = fn(A, seq, args.pos)
    else:
        fn = sequences.phi_left if args.dir == "left" else sequences.phi_right
        new = fn(A, seq, args.pos)
    _emit(_meta(args, f"mutate {args.kind} {args.dir}"))
    if new is None:
        _emit({"defined": False, "sequence": None})
    else:
        _emit({"defined": True,
               "sequence": [module_label(A, n)
                            for n in sequences.display(new)]})
    return 0


def cmd_verify(args) -> int:
    name = args.check
    results: List[dict] = []
    if name in sequences.FIXTURE_CHECKS:
        results.append(sequences.FIXTURE_CHECKS[name]())
    else:
        A = get_algebra(args.t)
        if name == "all":
            results.extend(sequences.run_all(A))
        elif name == "battery":
            results.extend(sequences.CHECKS[n](A) for n in sequences.BATTERY)
        elif name in sequences.CHECKS:
            results.append(sequences.CHECKS[name](A))
        else:
            print(f"unknown check {name}", file=sys.stderr)
            return 2
    if args.json:
        _emit(_meta(args, f"verify {name}"))
    failed = False
    for r in results:
        if args.json:
            _emit(r)
        else:
            status = "PASS" if r["ok"] else "FAIL"
            line = f"{status} {r['name']} [{r['algebra']}] checked={r['checked']}"
            if r["detail"]:
                line += f" ({r['detail']})"
            print(line)
            if not r["ok"]:
                print("  witness: " + json.dumps(r["witness"], sort_keys=True))
        failed = failed or not r["ok"]
    return 1 if failed else 0


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="auslander",
        description="Exact-arithmetic workbench for modules over the "
                    "Auslander algebras of truncated polynomial rings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=int,
                        default=int(_env("T", "0")) or None,
                        help="number of simple modules (vertices)")
    common.add_argument("--seed", type=int, default=int(_env("SEED", "0")),
                        help="seed echoed into output metadata")
    common.add_argument("--json", action="store_true",
                        default=_env("JSON", "") == "1",
                        help="machine-readable JSON-lines output")
    common.add_argument("--dot", action="store_true",
                        default=_env("DOT", "") == "1",
                        help="emit a DOT graph where applicable")
    common.add_argument("--cap-nodes", type=int,
                        default=int(_env("CAP_NODES", "0")) or None,
                        help="cap on emitted graph nodes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", parents=[common],
                       help="print a summary of the algebra")
    p.set_defaults(fn=cmd_algebra)

    p = sub.add_parser("enumerate", parents=[common],
                       help="enumerate pairs, tiltings or sequences")
    p.add_argument("kind", choices=["sttilt", "tilting", "exc", "tau-exc"])
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("lattice", parents=[common],
                       help="the mutation graph of support tau-tilting pairs")
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("mutate", parents=[common],
                       help="mutate a sequence read from a JSON file")
    p.add_argument("--kind", choices=["psi", "phi"], required=True)
    p.add_argument("--dir", choices=["left", "right"], required=True)
    p.add_argument("--pos", type=int, required=True)
    p.add_argument("--seq", required=True,
                   help="JSON file with a 'sequence' list (leftmost first)")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("verify", parents=[common],
                       help="run a named check, 'battery', or 'all'")
    p.add_argument("check",
                   choices=sorted(sequences.CHECKS)
                   + sorted(sequences.FIXTURE_CHECKS) + ["battery", "all"])
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_t = args.command not in ("mutate",) and \
        not (args.command == "verify" and args.check in sequences.FIXTURE_CHECKS)
    if needs_t and not args.t:
        parser.error("--t is required for this command")
    if args.t is not None and args.t < 1:
        parser.error("--t must be a positive integer")
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
