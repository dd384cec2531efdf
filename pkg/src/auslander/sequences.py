"""Exceptional and tau-exceptional sequences and their mutations.

A sequence is stored rightmost-first: ``seq[0]`` is the last displayed
term M_1, ``seq[k]`` is M_{k+1}.  Terms are canonical module names from
the registry of the ambient algebra, so sequences are hashable and
comparable.  Display order (leftmost first, as usually written) is the
reverse.

Two mutation operations act on a sequence at a position i in 2..r:

* psi-mutation makes sense for exceptional sequences and uses the unique
  morphism f between the terms at slots i and i-1; left mutation needs f
  injective and replaces the pair (E_i, E_{i-1}) by (L, E_i) with L the
  nonsplit extension of E_i by coker f.  Right mutation is dual, via
  ker f for surjective f.

* phi-mutation makes sense for tau-exceptional sequences.  The pair at
  slots i, i-1 is transported into the tau-perpendicular subcategory cut
  out by the terms at slots 1..i-2 and mutated there, with separate
  recipes for regular and irregular pairs.
"""
from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence as Seq, Tuple

from . import homology, modrep, tautilt, torsion
from .exactlin import Mat, rat
from .modrep import Module


class SequenceError(Exception):
    pass


# -- helpers ----------------------------------------------------------------

def _reg(algebra):
    return modrep.registry_for(algebra)


def seq_names(algebra, mods: Seq[Module]) -> Tuple[str, ...]:
    """Canonical-name tuple (rightmost-first) for a list of modules."""
    reg = _reg(algebra)
    return tuple(reg.canon(m)[0] for m in mods)


def seq_modules(algebra, seq: Seq[str]) -> List[Module]:
    reg = _reg(algebra)
    return [reg.module(n) for n in seq]


def display(seq: Seq[str]) -> Tuple[str, ...]:
    """Leftmost-first order, the way sequences are usually written."""
    return tuple(reversed(tuple(seq)))


# -- exceptional modules and sequences --------------------------------------

def is_exceptional_module(M: Module) -> bool:
    """Indecomposable, trivial endomorphism ring, no self-extensions."""
    if M.total_dim == 0:
        return False
    name, M = modrep.canonical(M)
    cache = M.algebra.caches.setdefault("exc_mod", {})
    if name not in cache:
        ok = modrep.is_indecomposable(M) and len(modrep.end_basis(M)) == 1
        if ok:
            pd = homology.pdim(M)
            if pd is None:
                raise SequenceError("projective dimension out of range")
            ok = all(homology.ext_dim(k, M, M) == 0 for k in range(1, pd + 1))
        cache[name] = ok
    return cache[name]


def thin_modules(algebra) -> List[str]:
    """All iso classes of modules with dimension 0 or 1 at every vertex.

    Arrow entries can be normalised to 0 or 1: scaling the one-dimensional
    vertex spaces rescales the arrows by a coboundary, and any cycle whose
    arrow entries are all nonzero would contradict the vanishing of cycle
    products forced by the relations of the algebras in scope.
    """
    cache = algebra.caches.setdefault("thin_pool", {})
    if "pool" in cache:
        return cache["pool"]
    reg = _reg(algebra)
    n = algebra.quiver.vertex_count
    found: Dict[str, None] = {}
    for support_bits in range(1, 1 << n):
        dims = [(support_bits >> v) & 1 for v in range(n)]
        live = [a for a in algebra.quiver.arrows
                if dims[a.source - 1] and dims[a.target - 1]]
        for choice in itertools.product((0, 1), repeat=len(live)):
            vals = dict(zip((a.name for a in live), choice))
            maps = {}
            for a in algebra.quiver.arrows:
                r, c = dims[a.target - 1], dims[a.source - 1]
                if vals.get(a.name):
                    maps[a.name] = Mat([[rat(1)]], 1, 1)
                else:
                    maps[a.name] = Mat.zeros(r, c)
            try:
                M = Module(algebra, dims, maps)
            except modrep.ModuleError:
                continue
            found[reg.canon(M)[0]] = None
    pool = sorted(found)
    cache["pool"] = pool
    return pool


def exceptional_modules(algebra) -> List[str]:
    """Exceptional modules, searched among thin modules.

    Over the algebras in scope every exceptional module is thin, so the
    thin pool is exhaustive; tests cross-check the resulting sequence
    counts against an independent enumeration.
    """
    cache = algebra.caches.setdefault("exc_pool", {})
    if "pool" not in cache:
        reg = _reg(algebra)
        cache["pool"] = [n for n in thin_modules(algebra)
                         if is_exceptional_module(reg.module(n))]
    return cache["pool"]


def is_exceptional_sequence(algebra, mods: Seq[Module]) -> bool:
    """Hom and Ext from right terms to left terms must vanish.

    ``mods`` is rightmost-first: mods[k] is E_{k+1}, and the condition is
    Hom(E_i, E_j) = 0 = Ext^l(E_i, E_j) for i < j.
    """
    r = len(mods)
    if not all(is_exceptional_module(m) for m in mods):
        return False
    for i in range(r):
        pd = homology.pdim(mods[i])
        for j in range(i + 1, r):
            if modrep.hom_dim(mods[i], mods[j]) != 0:
                return False
            if any(homology.ext_dim(k, mods[i], mods[j]) != 0
                   for k in range(1, pd + 1)):
                return False
    return True


def enumerate_exceptional_sequences(algebra, length: Optional[int] = None
                                    ) -> List[Tuple[str, ...]]:
    """All exceptional sequences of the given length (default: complete)."""
    n = algebra.quiver.vertex_count
    length = n if length is None else length
    cache = algebra.caches.setdefault("exc_seqs", {})
    if length in cache:
        return cache[length]
    reg = _reg(algebra)
    pool = [reg.module(nm) for nm in exceptional_modules(algebra)]
    pds = {reg.canon(m)[0]: homology.pdim(m) for m in pool}

    def compatible(old: Module, new: Module) -> bool:
        # old sits to the right of new: maps old -> new must vanish
        if modrep.hom_dim(old, new) != 0:
            return False
        pd = pds[modrep.canonical(old)[0]]
        return all(homology.ext_dim(k, old, new) == 0
                   for k in range(1, pd + 1))

    out: List[Tuple[str, ...]] = []

    def extend(chosen: List[Module]):
        if len(chosen) == length:
            out.append(seq_names(algebra, chosen))
            return
        for cand in pool:
            if any(modrep.canonical(cand)[0] == modrep.canonical(c)[0]
                   for c in chosen):
                continue
            if all(compatible(c, cand) for c in chosen):
                extend(chosen + [cand])

    extend([])
    out.sort()
    cache[length] = out
    return out


# -- torsion-free ordered decompositions and the sequence bijection ---------

def is_tf_ordered(parts: Seq[Module]) -> bool:
    """No summand lies in Gen of the summands to its right.

    ``parts`` is rightmost-first: parts[k] = T_{k+1}, and the condition is
    T_i not in Gen(T_1 + ... + T_{i-1}).
    """
    for i in range(1, len(parts)):
        if torsion.in_gen_parts(parts[i], parts[:i]):
            return False
    return True


def sequence_of_ordering(algebra, parts: Seq[Module]) -> Tuple[str, ...]:
    """The tau-exceptional sequence attached to a TF-ordered rigid module.

    Term k+1 is the torsion quotient of T_{k+1} by Gen(T_1 + ... + T_k);
    the first term is T_1 itself.
    """
    if not is_tf_ordered(parts):
        raise SequenceError("summand ordering is not torsion-free ordered")
    terms = []
    for k, p in enumerate(parts):
        q = torsion.torsion_quotient_parts(parts[:k], p) if k else p
        if q.total_dim == 0:
            raise SequenceError("torsion quotient term vanished")
        terms.append(q)
    return seq_names(algebra, terms)


def ordering_of_sequence(algebra, seq: Seq[str]) -> List[str]:
    """Inverse of ``sequence_of_ordering``: peel off the summands.

    T_k is the unique indecomposable whose torsion quotient by the
    already-recovered summands is the k-th term.
    """
    reg = _reg(algebra)
    known: List[Module] = []
    for name in seq:
        M = reg.module(name)
        T = tautilt.f_inverse_parts(known, M)
        known.append(T)
    return [reg.canon(m)[0] for m in known]


def enumerate_complete_tau_exceptional(algebra) -> List[Tuple[str, ...]]:
    """All complete tau-exceptional sequences.

    These correspond bijectively to TF-orderings of basic tau-tilting
    modules (the full-support classes of the lattice).
    """
    cache = algebra.caches.setdefault("tau_exc_seqs", {})
    if "all" in cache:
        return cache["all"]
    reg = _reg(algebra)
    lat = tautilt.enumerate_sttilt(algebra)
    seqs: Dict[Tuple[str, ...], Tuple[str, ...]] = {}
    for pair in lat.pairs:
        if pair.shifted:
            continue
        mods = [reg.module(n) for n in pair.parts]
        for perm in itertools.permutations(range(len(mods))):
            ordered = [mods[p] for p in perm]
            if not is_tf_ordered(ordered):
                continue
            s = sequence_of_ordering(algebra, ordered)
            if s in seqs:
                raise SequenceError(
                    "two TF-orderings produced the same sequence")
            seqs[s] = tuple(reg.canon(m)[0] for m in ordered)
    ordered_keys = sorted(seqs)
    cache["all"] = ordered_keys
    cache["orderings"] = seqs
    return ordered_keys


# -- direct verification of the tau-exceptional property --------------------

def verify_tau_exceptional(algebra, mods: Seq[Module]) -> Tuple[bool, str]:
    """Check the recursive definition directly, without the bijection.

    The first (rightmost) term must be indecomposable and tau-rigid, and
    the remaining terms must lie in its tau-perpendicular category and
    form a tau-exceptional sequence there.  Returns (ok, witness); the
    witness names the first failing condition.
    """
    reg = _reg(algebra)
    if not mods:
        return True, ""
    M1 = mods[0]
    name1 = reg.canon(M1)[0] if M1.total_dim else "0"
    if M1.total_dim == 0 or not modrep.is_indecomposable(M1):
        return False, f"term {name1} is not indecomposable"
    if not tautilt.is_tau_rigid(M1):
        return False, f"Hom({name1}, tau {name1}) != 0"
    if len(mods) == 1:
        return True, ""
    J = tautilt.perpendicular_category_parts(algebra, [M1])
    transported = []
    for M in mods[1:]:
        nm = reg.canon(M)[0]
        if modrep.hom_dim(M1, M) != 0:
            return False, f"Hom({name1}, {nm}) != 0"
        if modrep.hom_dim(M, J.tau_parts[0]) != 0:
            return False, f"Hom({nm}, tau {name1}) != 0"
        transported.append(J.to_B(M))
    ok, why = verify_tau_exceptional(J.algebraB, transported)
    if not ok:
        why = f"inside J({name1}): {why}"
    return ok, why


def verify_tau_exceptional_names(algebra, seq: Seq[str]) -> Tuple[bool, str]:
    return verify_tau_exceptional(algebra, seq_modules(algebra, seq))


# -- psi-mutation of exceptional sequences ----------------------------------

def _the_morphism(src: Module, tgt: Module):
    homs = modrep.hom_basis(src, tgt)
    if len(homs) != 1:
        raise SequenceError(
            f"expected a one-dimensional Hom space, got {len(homs)}")
    return homs[0]


def can_psi_left(algebra, seq: Seq[str], i: int) -> bool:
    mods = seq_modules(algebra, seq)
    f = _the_morphism(mods[i - 1], mods[i - 2])
    return f.is_injective()


def can_psi_right(algebra, seq: Seq[str], i: int) -> bool:
    mods = seq_modules(algebra, seq)
    f = _the_morphism(mods[i - 1], mods[i - 2])
    return f.is_surjective()


def psi_left(algebra, seq: Seq[str], i: int) -> Optional[Tuple[str, ...]]:
    """Left mutation at position i (2 <= i <= length).

    Needs the morphism f: E_i -> E_{i-1} injective; the new pair is
    (L, E_i) with L the unique nonsplit extension of E_i by coker f.
    Returns None when f is not injective.
    """
    mods = seq_modules(algebra, seq)
    if not 2 <= i <= len(mods):
        raise SequenceError("mutation position out of range")
    Ei, Eprev = mods[i - 1], mods[i - 2]
    f = _the_morphism(Ei, Eprev)
    if not f.is_injective():
        return None
    C, _ = modrep.cokernel(f)
    d, reps = homology.ext_space(1, Ei, C)
    if d != 1:
        raise SequenceError(
            f"extension space has dimension {d}, expected 1")
    L, _, _ = homology.extension_from_class(Ei, C, reps[0])
    reg = _reg(algebra)
    new = list(seq)
    new[i - 1] = reg.canon(L)[0]
    new[i - 2] = reg.canon(Ei)[0]
    return tuple(new)


def psi_right(algebra, seq: Seq[str], i: int) -> Optional[Tuple[str, ...]]:
    """Right mutation at position i; inverse to ``psi_left``.

    Needs f: E_i -> E_{i-1} surjective; the new pair is (E_{i-1}, R) with
    R the unique nonsplit extension of ker f by E_{i-1}.
    """
    mods = seq_modules(algebra, seq)
    if not 2 <= i <= len(mods):
        raise SequenceError("mutation position out of range")
    Ei, Eprev = mods[i - 1], mods[i - 2]
    f = _the_morphism(Ei, Eprev)
    if not f.is_surjective():
        return None
    K, _ = modrep.kernel(f)
    d, reps = homology.ext_space(1, K, Eprev)
    if d != 1:
        raise SequenceError(
            f"extension space has dimension {d}, expected 1")
    R, _, _ = homology.extension_from_class(K, Eprev, reps[0])
    reg = _reg(algebra)
    new = list(seq)
    new[i - 1] = reg.canon(Eprev)[0]
    new[i - 2] = reg.canon(R)[0]
    return tuple(new)


# -- phi-mutation of tau-exceptional sequences ------------------------------

def _truncation_handle(algebra, seq: Seq[str], i: int):
    """J of the terms to the right of the mutated pair, as one reduction.

    The subcategory attached to (M_{i-2}, ..., M_1) is J of the rigid
    module recovered by ``ordering_of_sequence`` on that truncation.
    """
    trunc = list(seq[: i - 2])
    parts = [ _reg(algebra).module(n)
              for n in ordering_of_sequence(algebra, trunc) ]
    return tautilt.perpendicular_category_parts(algebra, parts)


def is_left_regular(algebra, B: Module, C: Module) -> bool:
    """C projective, or C not a summand of the Bongartz class of f_C^{-1}(B)."""
    if homology.is_projective(C):
        return True
    reg = _reg(algebra)
    X = tautilt.f_inverse_parts([C], B)
    comp = tautilt.bongartz_completion_parts([X])
    return reg.canon(C)[0] not in comp.parts


def is_right_regular(algebra, B: Module, C: Module) -> bool:
    """f_C^{-1}(B) Ext-projective over tau-C-perp, or C outside its Gen."""
    reg = _reg(algebra)
    X = tautilt.f_inverse_parts([C], B)
    comp = tautilt.bongartz_completion_parts([C])
    if reg.canon(X)[0] in comp.parts:
        return True
    return not torsion.in_gen_parts(C, [X])


def _irregular_left_pair(algebra, B: Module, C: Module
                         ) -> Tuple[Module, Module]:
    """Left mutation of an irregular pair (B, C), inside its own algebra.

    With U = f_C^{-1}(B) + C, the class T generated by J(U) has nonsplit
    Ext-projectives Z; X is the split part of the class generated by Z
    and Y the complementary summand of Z.  The mutated pair is
    (f_Y(X), Y).
    """
    reg = _reg(algebra)
    X0 = tautilt.f_inverse_parts([C], B)
    JU = tautilt.perpendicular_category_parts(algebra, [X0, C])
    if JU.proj_gen.total_dim == 0:
        raise SequenceError("irregular mutation hit a zero subcategory")
    T = tautilt.smallest_torsion_class(JU.proj_gen)
    Z = tautilt.nonsplit_projectives(T)
    if not Z:
        raise SequenceError("no nonsplit Ext-projectives in the class")
    zmod = modrep.direct_sum(algebra, [reg.module(n) for n in Z])[0]
    genZ = tautilt.smallest_torsion_class(zmod)
    X_names = [n for n in tautilt.split_projectives(genZ) if n in Z]
    Y_names = [n for n in Z if n not in X_names]
    if len(Y_names) != 1 or len(X_names) != 1:
        raise SequenceError(
            f"irregular mutation split {Z} into {X_names} + {Y_names}")
    X = reg.module(X_names[0])
    Y = reg.module(Y_names[0])
    newB = torsion.torsion_quotient_parts([Y], X)
    if newB.total_dim == 0 or not modrep.is_indecomposable(newB):
        raise SequenceError("irregular mutation produced a bad first entry")
    return reg.canon(newB)[1], Y


def phi_left(algebra, seq: Seq[str], i: int) -> Tuple[str, ...]:
    """Left phi-mutation of a complete tau-exceptional sequence at i.

    The pair at slots i, i-1 is transported into the reduction by the
    terms to its right and mutated there.  For a regular pair only the
    new slot-(i-1) entry is computed directly; the unknown slot-i entry
    is filled in by uniqueness: two complete tau-exceptional sequences
    that agree in all but one term are equal, so the enumeration contains
    exactly one match.
    """
    mods = seq_modules(algebra, seq)
    if not 2 <= i <= len(mods):
        raise SequenceError("mutation position out of range")
    reg = _reg(algebra)
    J = _truncation_handle(algebra, seq, i)
    Bp = J.to_B(mods[i - 1])
    Cp = J.to_B(mods[i - 2])
    Ap = J.algebraB
    if is_left_regular(Ap, Bp, Cp):
        if homology.is_projective(Cp):
            Bhat_p = Bp
        else:
            Bhat_p = tautilt.f_inverse_parts([Cp], Bp)
        Bhat = reg.canon(J.from_B(Bhat_p))[0]
        allseqs = enumerate_complete_tau_exceptional(algebra)
        hits = [s for s in allseqs
                if s[i - 2] == Bhat
                and all(s[k] == seq[k] for k in range(len(seq))
                        if k not in (i - 1, i - 2))]
        if len(hits) != 1:
            raise SequenceError(
                f"uniqueness completion found {len(hits)} sequences")
        return hits[0]
    newB_p, newC_p = _irregular_left_pair(Ap, Bp, Cp)
    newB = reg.canon(J.from_B(newB_p))[0]
    newC = reg.canon(J.from_B(newC_p))[0]
    new = list(seq)
    new[i - 1] = newB
    new[i - 2] = newC
    return tuple(new)


def phi_left_graph(algebra, i: int) -> Dict[Tuple[str, ...], Tuple[str, ...]]:
    """phi_left at position i on every complete sequence, as a dict."""
    key = ("phi_left", i)
    cache = algebra.caches.setdefault("phi_graph", {})
    if key not in cache:
        cache[key] = {s: phi_left(algebra, s, i)
                      for s in enumerate_complete_tau_exceptional(algebra)}
    return cache[key]


def phi_right(algebra, seq: Seq[str], i: int) -> Tuple[str, ...]:
    """Right phi-mutation, realised as the inverse of ``phi_left``.

    Left mutation at each position is a bijection on the finite set of
    complete sequences (checked when the graph is built), so the inverse
    is total.
    """
    graph = phi_left_graph(algebra, i)
    hits = [s for s, t in graph.items() if t == tuple(seq)]
    if len(hits) != 1:
        raise SequenceError(
            f"left mutation at {i} is not a bijection near this sequence"
            f" ({len(hits)} preimages)")
    return hits[0]


# -- verification drivers ----------------------------------------------------
#
# Each driver checks one finite, exactly decidable statement over a given
# algebra and returns a result dict.  The driver names match the labels of
# the command-line ``verify`` subcommands.

def _result(name: str, algebra, ok: bool, checked: int,
            witness=None, detail: str = "") -> dict:
    return {"name": name, "algebra": algebra.name,
            "ok": bool(ok), "checked": checked,
            "witness": witness, "detail": detail}


def _fail(name, algebra, checked, witness, detail=""):
    return _result(name, algebra, False, checked, witness, detail)


def check_thm_2_3(algebra) -> dict:
    """dim End(T) equals the algebra dimension for every basic tilting T."""
    t = algebra.quiver.vertex_count
    expected = sum(min(i, j) for i in range(1, t + 1) for j in range(1, t + 1))
    checked = 0
    for T in tautilt.enumerate_tilting(algebra):
        total = sum(modrep.hom_dim(p, q) for p in T.parts for q in T.parts)
        checked += 1
        if total != expected:
            return _fail("thm_2_3", algebra, checked,
                         {"tilting": T.names, "dim_end": total,
                          "expected": expected})
    return _result("thm_2_3", algebra, True, checked,
                   detail=f"dim End(T) = {expected} for all tiltings")


def _partial_tilting_parts(parts: Seq[Module]) -> bool:
    if any(homology.pdim(p) > 1 for p in parts):
        return False
    return all(homology.ext_dim(1, p, q) == 0 for p in parts for q in parts)


def check_lemma_2_7(algebra) -> dict:
    """Partial tilting implies tau-rigid; tau-rigid with pdim <= 1 is
    partial tilting.  Exhaustive over all modules whose indecomposable
    summands are tau-rigid or thin (with at most two summands; both
    statements are summand-pairwise so this decides all such modules)."""
    reg = _reg(algebra)
    pool_names = sorted(set(tautilt.enumerate_sttilt(algebra).harvest())
                        | set(thin_modules(algebra)))
    pool = [reg.module(n) for n in pool_names]
    checked = 0
    for i, M in enumerate(pool):
        for N in pool[i:]:
            parts = [M] if M is N else [M, N]
            pt = _partial_tilting_parts(parts)
            rigid = tautilt.parts_tau_rigid(parts)
            pd_ok = all(homology.pdim(p) <= 1 for p in parts)
            checked += 1
            if pt and not rigid:
                return _fail("lemma_2_7", algebra, checked,
                             {"module": [reg.canon(p)[0] for p in parts],
                              "partial_tilting": True, "tau_rigid": False})
            if rigid and pd_ok and not pt:
                return _fail("lemma_2_7", algebra, checked,
                             {"module": [reg.canon(p)[0] for p in parts],
                              "tau_rigid": True, "pdim<=1": True,
                              "partial_tilting": False})
    return _result("lemma_2_7", algebra, True, checked,
                   detail=f"pool of {len(pool)} indecomposables")


def check_lemma_3_1(algebra) -> dict:
    """The minimal right approximation of T_i by the earlier summands is a
    monomorphism from the single summand T_{i-1}."""
    reg = _reg(algebra)
    checked = 0
    for T in tautilt.enumerate_tilting(algebra):
        for i in range(1, len(T.parts)):
            copies, f = torsion.minimal_right_approximation(
                T.parts[:i], T.parts[i])
            checked += 1
            prev = reg.canon(T.parts[i - 1])[0]
            srcs = [reg.canon(c)[0] for c in copies]
            if srcs != [prev] or not f.is_injective():
                return _fail("lemma_3_1", algebra, checked,
                             {"tilting": T.names, "position": i + 1,
                              "approximation_source": srcs,
                              "expected": [prev],
                              "injective": f.is_injective()})
    return _result("lemma_3_1", algebra, True, checked)


def check_lemma_3_3(algebra) -> dict:
    """The ordered summands of a basic tilting module are TF-ordered and
    form a tau-tilting module."""
    checked = 0
    for T in tautilt.enumerate_tilting(algebra):
        checked += 1
        if not tautilt.parts_tau_rigid(T.parts):
            return _fail("lemma_3_3", algebra, checked,
                         {"tilting": T.names, "tau_rigid": False})
        if not is_tf_ordered(T.parts):
            return _fail("lemma_3_3", algebra, checked,
                         {"tilting": T.names, "tf_ordered": False})
    return _result("lemma_3_3", algebra, True, checked)


def check_lemma_3_5(algebra) -> dict:
    """dim Hom(P(t), T_i) = i for the ordered summands of each tilting."""
    t = algebra.quiver.vertex_count
    Pt = modrep.structural(algebra, "P", t)
    checked = 0
    for T in tautilt.enumerate_tilting(algebra):
        for i, p in enumerate(T.parts, start=1):
            checked += 1
            d = modrep.hom_dim(Pt, p)
            if d != i:
                return _fail("lemma_3_5", algebra, checked,
                             {"tilting": T.names, "position": i, "dim": d})
    return _result("lemma_3_5", algebra, True, checked)


def check_lemma_4_2(algebra) -> dict:
    """Hom/Ext^1 one-dimensional and Ext^2 zero from left to right terms;
    adjacent morphisms injective or surjective; one-dimensional extension
    space over the cokernel in the injective case."""
    reg = _reg(algebra)
    checked = 0
    for s in enumerate_exceptional_sequences(algebra):
        mods = seq_modules(algebra, s)
        r = len(mods)
        for j in range(r):
            for i in range(j + 1, r):   # slot i+1 left of slot j+1
                checked += 1
                h = modrep.hom_dim(mods[i], mods[j])
                e1 = homology.ext_dim(1, mods[i], mods[j])
                e2 = homology.ext_dim(2, mods[i], mods[j])
                if (h, e1, e2) != (1, 1, 0):
                    return _fail("lemma_4_2", algebra, checked,
                                 {"sequence": display(s),
                                  "pair": (s[i], s[j]),
                                  "hom": h, "ext1": e1, "ext2": e2})
        for i in range(1, r):
            f = _the_morphism(mods[i], mods[i - 1])
            inj, sur = f.is_injective(), f.is_surjective()
            checked += 1
            if not (inj or sur):
                return _fail("lemma_4_2", algebra, checked,
                             {"sequence": display(s), "position": i + 1,
                              "injective": inj, "surjective": sur})
            if inj:
                C, _ = modrep.cokernel(f)
                d = homology.ext_dim(1, modrep.canonical(C)[1], mods[i]) \
                    if C.total_dim else 0
                checked += 1
                if d != 1:
                    return _fail("lemma_4_2", algebra, checked,
                                 {"sequence": display(s), "position": i + 1,
                                  "ext1_coker": d})
    return _result("lemma_4_2", algebra, True, checked)


def check_thm_3_6(algebra) -> dict:
    """Every complete exceptional sequence passes the recursive
    tau-exceptional check, and the sequences attached to ordered tilting
    modules are exactly the complete exceptional sequences, term-by-term
    equal to the successive quotients T_i / T_{i-1}."""
    reg = _reg(algebra)
    checked = 0
    exc = enumerate_exceptional_sequences(algebra)
    for s in exc:
        ok, why = verify_tau_exceptional_names(algebra, s)
        checked += 1
        if not ok:
            return _fail("thm_3_6", algebra, checked,
                         {"sequence": display(s), "reason": why})
    from_tilting = set()
    for T in tautilt.enumerate_tilting(algebra):
        s = sequence_of_ordering(algebra, T.parts)
        # successive-quotient comparison: term i is T_i modulo the image
        # of the approximation from T_{i-1}
        terms = [reg.canon(T.parts[0])[0]]
        for i in range(1, len(T.parts)):
            _, f = torsion.minimal_right_approximation(
                T.parts[:i], T.parts[i])
            Q, _ = modrep.cokernel(f)
            terms.append(reg.canon(Q)[0])
        checked += 1
        if tuple(terms) != s:
            return _fail("thm_3_6", algebra, checked,
                         {"tilting": T.names, "sequence": display(s),
                          "quotients": display(terms)})
        from_tilting.add(s)
    checked += 1
    if from_tilting != set(exc):
        return _fail("thm_3_6", algebra, checked,
                     {"from_tilting": len(from_tilting),
                      "exceptional": len(exc)})
    return _result("thm_3_6", algebra, True, checked,
                   detail=f"{len(exc)} complete exceptional sequences")


def check_rmk_3_7() -> dict:
    """An exceptional module that is not tau-rigid (two-vertex algebra)."""
    from . import bqa
    algebra = bqa.auslander_algebra(2)
    reg = _reg(algebra)
    # thin module with top S(2) and socle S(1): b acts invertibly, a by 0
    M = Module(algebra, [1, 1], {"a1": Mat.zeros(1, 1),
                                 "b1": Mat([[rat(1)]], 1, 1)})
    name = reg.canon(M)[0]
    exc = is_exceptional_module(M)
    rigid = tautilt.is_tau_rigid(M)
    ok = exc and not rigid
    return _result("rmk_3_7", algebra, ok, 2,
                   None if ok else {"module": name, "exceptional": exc,
                                    "tau_rigid": rigid},
                   detail=f"{name} exceptional={exc} tau_rigid={rigid}")


def check_rmk_3_8() -> dict:
    """A complete exceptional sequence that is not tau-exceptional, over
    the three-vertex algebra with one zero relation."""
    from . import bqa
    algebra = bqa.gamma_algebra()
    reg = _reg(algebra)
    P1 = reg.canon(modrep.structural(algebra, "P", 1), preferred="P1")[1]
    P2 = reg.canon(modrep.structural(algebra, "P", 2), preferred="P2")[1]
    S1 = reg.canon(modrep.structural(algebra, "S", 1), preferred="S1")[1]
    mods = [S1, P1, P2]       # displayed (P2, P1, S1)
    exc = is_exceptional_sequence(algebra, mods)
    ok_tau, why = verify_tau_exceptional(algebra, mods)
    ok = exc and not ok_tau
    return _result("rmk_3_8", algebra, ok, 2,
                   None if ok else {"exceptional": exc,
                                    "tau_exceptional": ok_tau},
                   detail=f"witness: {why}")


def check_thm_4_15(algebra) -> dict:
    """psi and phi left mutation agree wherever psi is defined."""
    checked = instances = 0
    for s in enumerate_exceptional_sequences(algebra):
        for i in range(2, len(s) + 1):
            L = psi_left(algebra, s, i)
            checked += 1
            if L is None:
                continue
            instances += 1
            P = phi_left(algebra, s, i)
            if L != P:
                return _fail("thm_4_15", algebra, checked,
                             {"sequence": display(s), "position": i,
                              "psi": display(L), "phi": display(P)})
    return _result("thm_4_15", algebra, True, checked,
                   detail=f"{instances} psi-mutable instances")


def check_prop_4_13(algebra) -> dict:
    """psi and phi agree at position 2 (special case of the above)."""
    checked = instances = 0
    for s in enumerate_exceptional_sequences(algebra):
        L = psi_left(algebra, s, 2)
        checked += 1
        if L is None:
            continue
        instances += 1
        if L != phi_left(algebra, s, 2):
            return _fail("prop_4_13", algebra, checked,
                         {"sequence": display(s)})
    return _result("prop_4_13", algebra, True, checked,
                   detail=f"{instances} instances at position 2")


def check_thm_4_9(algebra) -> dict:
    """Left phi-mutation is a bijection on complete sequences at every
    position and right phi-mutation is its two-sided inverse."""
    te = enumerate_complete_tau_exceptional(algebra)
    checked = 0
    for i in range(2, algebra.quiver.vertex_count + 1):
        g = phi_left_graph(algebra, i)
        if len(set(g.values())) != len(te):
            return _fail("thm_4_9", algebra, checked,
                         {"position": i, "image": len(set(g.values())),
                          "sequences": len(te)})
        for s in te:
            checked += 1
            if phi_right(algebra, g[s], i) != s:
                return _fail("thm_4_9", algebra, checked,
                             {"position": i, "sequence": display(s)})
            if g[phi_right(algebra, s, i)] != s:
                return _fail("thm_4_9", algebra, checked,
                             {"position": i, "sequence": display(s),
                              "side": "left after right"})
    return _result("thm_4_9", algebra, True, checked,
                   detail=f"{len(te)} sequences, all positions")


def check_prop_4_17(algebra) -> dict:
    """Tilting mutation at position i is defined exactly when the attached
    sequence is left psi-mutable at i, and then the mutated tilting maps
    to the mutated sequence with the new module generated by the old."""
    reg = _reg(algebra)
    checked = 0
    for T in tautilt.enumerate_tilting(algebra):
        s = sequence_of_ordering(algebra, T.parts)
        for i in range(2, len(T.parts) + 1):
            can_psi = psi_left(algebra, s, i) is not None
            Tm = tautilt.tilting_mutation(T, i)
            checked += 1
            if (Tm is not None) != can_psi:
                return _fail("prop_4_17", algebra, checked,
                             {"tilting": T.names, "position": i,
                              "tilting_mutation": Tm is not None,
                              "psi_mutable": can_psi})
            if Tm is None:
                continue
            target = psi_left(algebra, s, i)
            if sequence_of_ordering(algebra, Tm.parts) != target \
                    or target != phi_left(algebra, s, i):
                return _fail("prop_4_17", algebra, checked,
                             {"tilting": T.names, "position": i,
                              "square": "does not commute"})
            if not all(torsion.in_gen_parts(p, T.parts) for p in Tm.parts):
                return _fail("prop_4_17", algebra, checked,
                             {"tilting": T.names, "position": i,
                              "in_gen": False})
    return _result("prop_4_17", algebra, True, checked)


def check_lemma_4_10(algebra) -> dict:
    """If a complete exceptional sequence is left psi-mutable at 2 and its
    last pair is left regular, the last term is projective and phi agrees
    with psi."""
    checked = instances = 0
    for s in enumerate_exceptional_sequences(algebra):
        mods = seq_modules(algebra, s)
        L = psi_left(algebra, s, 2)
        checked += 1
        if L is None:
            continue
        if not is_left_regular(algebra, mods[1], mods[0]):
            continue
        instances += 1
        if not homology.is_projective(mods[0]):
            return _fail("lemma_4_10", algebra, checked,
                         {"sequence": display(s), "projective": False})
        if phi_left(algebra, s, 2) != L:
            return _fail("lemma_4_10", algebra, checked,
                         {"sequence": display(s), "phi!=psi": True})
    return _result("lemma_4_10", algebra, True, checked,
                   detail=f"{instances} left regular instances")


def check_lemma_4_11(algebra) -> dict:
    """If a complete exceptional sequence is right psi-mutable at 2 and its
    last pair is right regular, the preimage f_{E_1}^{-1}(E_2) is
    Ext-projective over the class perpendicular to tau E_1, and right phi
    agrees with right psi."""
    reg = _reg(algebra)
    checked = instances = 0
    for s in enumerate_exceptional_sequences(algebra):
        mods = seq_modules(algebra, s)
        R = psi_right(algebra, s, 2)
        checked += 1
        if R is None:
            continue
        if not is_right_regular(algebra, mods[1], mods[0]):
            continue
        instances += 1
        X = tautilt.f_inverse_parts([mods[0]], mods[1])
        comp = tautilt.bongartz_completion_parts([mods[0]])
        if reg.canon(X)[0] not in comp.parts:
            return _fail("lemma_4_11", algebra, checked,
                         {"sequence": display(s), "preimage_projective": False})
        if phi_right(algebra, s, 2) != R:
            return _fail("lemma_4_11", algebra, checked,
                         {"sequence": display(s), "phi!=psi": True})
    return _result("lemma_4_11", algebra, True, checked,
                   detail=f"{instances} right regular instances")


def check_prop_4_12(algebra) -> dict:
    """Structure of the mutated pair for sequences left psi-mutable at 2:
    partial tilting sums, the preimage identity, right mutability, equal
    perpendicular categories, and the irregular-case consequences."""
    reg = _reg(algebra)
    checked = 0
    for s in enumerate_exceptional_sequences(algebra):
        mods = seq_modules(algebra, s)
        L = psi_left(algebra, s, 2)
        if L is None:
            continue
        E1, E2 = mods[0], mods[1]
        T2 = reg.module(ordering_of_sequence(algebra, s)[1])
        Lmod = reg.module(L[1])
        checked += 1
        if not (_partial_tilting_parts([T2, E1])
                and _partial_tilting_parts([T2, E2])):
            return _fail("prop_4_12", algebra, checked,
                         {"sequence": display(s), "clause": 1})
        if reg.canon(tautilt.f_inverse_parts([E2], Lmod))[0] \
                != reg.canon(T2)[0]:
            return _fail("prop_4_12", algebra, checked,
                         {"sequence": display(s), "clause": 2})
        pair = [E2, Lmod]      # rightmost-first: (L, E_2) displayed
        if not is_exceptional_sequence(algebra, pair) \
                or not _the_morphism(Lmod, E2).is_surjective():
            return _fail("prop_4_12", algebra, checked,
                         {"sequence": display(s), "clause": 3})
        J1 = tautilt.perpendicular_category_parts(algebra, [T2, E1])
        J2 = tautilt.perpendicular_category_parts(algebra, [T2, E2])
        if [reg.canon(g)[0] for g in J1.gen_parts] \
                != [reg.canon(g)[0] for g in J2.gen_parts]:
            return _fail("prop_4_12", algebra, checked,
                         {"sequence": display(s), "clause": 4})
        if not is_left_regular(algebra, E2, E1):
            if homology.is_projective(T2):
                return _fail("prop_4_12", algebra, checked,
                             {"sequence": display(s), "clause": 5})
            if is_right_regular(algebra, Lmod, E2):
                return _fail("prop_4_12", algebra, checked,
                             {"sequence": display(s), "clause": 6})
    return _result("prop_4_12", algebra, True, checked)


def check_lemma_4_14(algebra) -> dict:
    """The reduction by the first k terms of a complete exceptional
    sequence is the analogous algebra on t-k vertices: correct vertex
    count, arrow count 2(t-k-1) and dimension sum min(i,j)."""
    t = algebra.quiver.vertex_count
    checked = 0
    for s in enumerate_exceptional_sequences(algebra):
        for k in range(1, t):
            J = _truncation_handle(algebra, s, k + 2)
            B = J.algebraB
            n = t - k
            dims = (B.quiver.vertex_count, len(B.quiver.arrows),
                    len(B.basis))
            want = (n, 2 * (n - 1) if n > 1 else 0,
                    sum(min(i, j) for i in range(1, n + 1)
                        for j in range(1, n + 1)))
            checked += 1
            if dims != want:
                return _fail("lemma_4_14", algebra, checked,
                             {"sequence": display(s), "terms": k,
                              "got": dims, "expected": want})
    return _result("lemma_4_14", algebra, True, checked)


def check_lemma_4_16(algebra) -> dict:
    """The quotients T_i/T_1 form a basic tilting object in the reduction
    by T_1, for every basic tilting module."""
    checked = 0
    for T in tautilt.enumerate_tilting(algebra):
        T1 = T.parts[0]
        J = tautilt.perpendicular_category_parts(algebra, [T1])
        quots = [torsion.torsion_quotient_parts([T1], p)
                 for p in T.parts[1:]]
        transported = [J.to_B(q) for q in quots]
        checked += 1
        if not tautilt.tilting_parts_check(J.algebraB, transported):
            return _fail("lemma_4_16", algebra, checked,
                         {"tilting": T.names})
    return _result("lemma_4_16", algebra, True, checked)


BATTERY = ("lemma_2_7", "lemma_3_1", "lemma_3_3", "lemma_3_5",
           "lemma_4_2", "thm_2_3")

CHECKS = {
    "thm_2_3": check_thm_2_3,
    "lemma_2_7": check_lemma_2_7,
    "lemma_3_1": check_lemma_3_1,
    "lemma_3_3": check_lemma_3_3,
    "lemma_3_5": check_lemma_3_5,
    "lemma_4_2": check_lemma_4_2,
    "thm_3_6": check_thm_3_6,
    "thm_4_15": check_thm_4_15,
    "prop_4_13": check_prop_4_13,
    "thm_4_9": check_thm_4_9,
    "prop_4_17": check_prop_4_17,
    "lemma_4_10": check_lemma_4_10,
    "lemma_4_11": check_lemma_4_11,
    "prop_4_12": check_prop_4_12,
    "lemma_4_14": check_lemma_4_14,
    "lemma_4_16": check_lemma_4_16,
}

FIXTURE_CHECKS = {
    "rmk_3_7": check_rmk_3_7,
    "rmk_3_8": check_rmk_3_8,
}


def run_all(algebra) -> List[dict]:
    """The whole battery over one algebra, plus the fixed counterexample
    fixtures (which build their own algebras)."""
    out = [CHECKS[name](algebra) for name in sorted(CHECKS)]
    out.extend(FIXTURE_CHECKS[name]() for name in sorted(FIXTURE_CHECKS))
    return out
