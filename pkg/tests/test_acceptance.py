"""Acceptance gate: one pass/fail line per criterion.

Each criterion prints its verdict to the real stdout (bypassing pytest
capture) so the run log always contains one line per criterion.
"""
import itertools
import json
import re
import sys
import time

import pytest

from auslander import bqa, cli, modrep, sequences, tautilt, torsion

SNAPSHOT_TAU_EXC_COUNTS = {2: 4, 3: 34, 4: 488}


def report(num, ok, desc):
    import conftest
    line = f"{'PASS' if ok else 'FAIL'} criterion {num:02d}: {desc}"
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_tilting_and_exceptional_counts():
    start = time.monotonic()
    ok = True
    for t, count in ((2, 2), (3, 6), (4, 24)):
        A = cli.get_algebra(t)
        ok = ok and len(tautilt.enumerate_tilting(A)) == count
        ok = ok and len(sequences.enumerate_exceptional_sequences(A)) == count
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 120
    report(1, ok, "tilting and exceptional sequence counts are 2/6/24 "
                  f"for t=2/3/4 ({elapsed:.1f}s)")


def test_criterion_02_a2_census_and_torsion_class_oracle():
    from test_tautilt import _is_torsion_class, _nakayama_census
    A = cli.get_algebra(2)
    census = _nakayama_census(A)
    names = sorted(census)
    classes = {frozenset(sub)
               for r in range(len(names) + 1)
               for sub in itertools.combinations(names, r)
               if _is_torsion_class(A, frozenset(sub), census)}
    lat = tautilt.enumerate_sttilt(A)
    gen_classes = {
        frozenset(n for n in names
                  if torsion.in_gen_parts(census[n], p.summand_modules()))
        for p in lat.pairs}
    ok = len(census) == 5 and gen_classes == classes \
        and len(lat.pairs) == len(classes)
    report(2, ok, "A_2 census has 5 indecomposables and the pair "
                  "enumeration matches the brute-force torsion-class oracle")


def test_criterion_03_exceptional_sequences_are_tau_exceptional():
    ok = True
    for t in (2, 3, 4):
        res = sequences.check_thm_3_6(cli.get_algebra(t))
        ok = ok and res["ok"]
    report(3, ok, "every complete exceptional sequence verifies as "
                  "tau-exceptional and matches the quotient route (t<=4)")


def test_criterion_04_structural_property_battery():
    ok = True
    failed = []
    for t in (2, 3, 4):
        A = cli.get_algebra(t)
        for name in sequences.BATTERY:
            res = sequences.CHECKS[name](A)
            if not res["ok"]:
                failed.append((t, name, res["witness"]))
                ok = False
    detail = f" failures: {failed}" if failed else ""
    report(4, ok, "structural battery (partial-tilting, approximations, "
                  f"orderings, Hom/Ext laws) exhaustive for t<=4{detail}")


def test_criterion_05_counterexample_fixtures():
    r1 = sequences.check_rmk_3_7()
    r2 = sequences.check_rmk_3_8()
    ok = r1["ok"] and r2["ok"] and "Hom(P2, tau S1) != 0" in str(r2["detail"])
    report(5, ok, "fixtures: exceptional-but-not-tau-rigid module; "
                  "exceptional sequence failing with witness "
                  "Hom(P2, tau S1) != 0")


def test_criterion_06_psi_equals_phi():
    ok = True
    for t in (2, 3, 4):
        res = sequences.check_thm_4_15(cli.get_algebra(t))
        ok = ok and res["ok"]
    # exactly one instance for t = 2, at (S2, P1), position 2
    A2 = cli.get_algebra(2)
    instances = [
        (s, i)
        for s in sequences.enumerate_exceptional_sequences(A2)
        for i in (2,)
        if sequences.can_psi_left(A2, s, i)]
    ok = ok and len(instances) == 1
    ok = ok and tuple(sequences.display(instances[0][0])) == ("S2", "P1")
    report(6, ok, "psi-mutation agrees with phi-mutation wherever defined; "
                  "exactly one instance at t=2 ((S2,P1), position 2)")


def test_criterion_07_phi_inverse_property_on_full_set():
    ok = True
    counts = {}
    for t in (2, 3, 4):
        A = cli.get_algebra(t)
        seqs = sequences.enumerate_complete_tau_exceptional(A)
        counts[t] = len(seqs)
        ok = ok and len(A.caches["tau_exc_seqs"]["orderings"]) == len(seqs)
        res = sequences.check_thm_4_9(A)
        ok = ok and res["ok"]
    ok = ok and counts == SNAPSHOT_TAU_EXC_COUNTS
    report(7, ok, "left/right phi are mutually inverse on the full set; "
                  f"counts {counts} match the snapshot and the "
                  "TF-ordering census")


def test_criterion_08_tilting_mutation_square():
    ok = True
    for t in (2, 3, 4):
        res = sequences.check_prop_4_17(cli.get_algebra(t))
        ok = ok and res["ok"]
    report(8, ok, "tilting mutation is defined exactly at psi-mutable "
                  "positions and the quotient square commutes (t<=4)")


def test_criterion_09_head_reduction_dimensions():
    ok = True
    for t in (2, 3, 4):
        A = cli.get_algebra(t)
        target_dim = sum(min(i, j) for i in range(1, t)
                         for j in range(1, t))
        for s in sequences.enumerate_exceptional_sequences(A):
            J = sequences._truncation_handle(A, s, 3)
            B = J.algebraB
            if not (B.quiver.vertex_count == t - 1
                    and len(B.quiver.arrows) == 2 * (t - 2)
                    and B.dim == target_dim):
                ok = False
    report(9, ok, "reduction at every exceptional head yields the algebra "
                  "one size down (vertices, arrows, dimension)")


# -- criterion 10: flagged DOT subgraphs are isomorphic ordered graphs --------

NODE_RE = re.compile(r'^\s*n(\d+) \[label="[^"]*" (?:tilting|exceptional)='
                     r'(true|false)')
EDGE_RE = re.compile(r'^\s*n(\d+) -> n(\d+) \[label="[^"]*"(?: pos=(\d+))?\];')


def _flagged_subgraph(dot):
    flagged = set()
    for line in dot.splitlines():
        m = NODE_RE.match(line)
        if m and m.group(2) == "true":
            flagged.add(int(m.group(1)))
    edges = set()
    for line in dot.splitlines():
        m = EDGE_RE.match(line)
        if not m or m.group(3) is None:
            continue
        a, b = int(m.group(1)), int(m.group(2))
        if a in flagged and b in flagged:
            edges.add((a, b, int(m.group(3))))
    return flagged, edges


def _canonical_form(nodes, edges):
    """Minimal relabeling over all node orderings (labels kept on edges)."""
    nodes = sorted(nodes)
    best = None
    for perm in itertools.permutations(range(len(nodes))):
        relabel = {n: perm[k] for k, n in enumerate(nodes)}
        form = tuple(sorted((relabel[a], relabel[b], l) for a, b, l in edges))
        if best is None or form < best:
            best = form
    return len(nodes), best


def _run_cli_capture(argv):
    import io
    buf, old = io.StringIO(), sys.stdout
    sys.stdout = buf
    try:
        code = cli.main(argv)
    finally:
        sys.stdout = old
    assert code == 0
    return buf.getvalue()


def test_criterion_10_flagged_subgraphs_have_the_same_shape():
    start = time.monotonic()
    lattice_dot = _run_cli_capture(["lattice", "--t", "3", "--dot"])
    seq_dot = _run_cli_capture(["enumerate", "tau-exc", "--t", "3", "--dot"])
    g1 = _flagged_subgraph(lattice_dot)
    g2 = _flagged_subgraph(seq_dot)
    ok = len(g1[0]) == 6 and len(g2[0]) == 6
    ok = ok and _canonical_form(*g1) == _canonical_form(*g2)
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 60
    report(10, ok, "tilting-flagged lattice subgraph and exceptional-flagged "
                   "sequence subgraph are isomorphic as ordered graphs "
                   f"({elapsed:.1f}s)")
