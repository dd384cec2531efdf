"""Torsion-theoretic primitives: traces, Gen-membership, approximations.

For a module T, ``Gen T`` is the class of quotients of finite sums of
copies of T.  The trace of T in M is the sum of images of all morphisms
T -> M; M lies in Gen T exactly when the trace is all of M, and for
tau-rigid T the trace is the torsion part of M in the torsion pair
(Gen T, T-perp).
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import modrep
from .exactlin import Mat
from .modrep import Module, Morphism


class TorsionError(Exception):
    pass


def trace_parts(parts: Sequence[Module], M: Module) -> Tuple[Module, Morphism]:
    """The trace of the direct sum of the parts in M.

    Gen(sum of parts) only depends on add, so homs are taken part by part;
    these are small systems and hit the name-keyed hom cache.
    """
    spans: List[List[List[Fraction]]] = [[] for _ in range(len(M.dims))]
    for part in parts:
        if part.total_dim == 0:
            continue
        for f in modrep.hom_basis(part, M):
            for i, m in enumerate(f.mats):
                spans[i].extend(m.col(j) for j in range(m.cols))
    return modrep._subspace_module(M, spans)


def trace(T: Module, M: Module) -> Tuple[Module, Morphism]:
    """The trace of T in M, as a submodule with inclusion."""
    return trace_parts([T], M)


def _part_names(parts: Sequence[Module]) -> Tuple[str, ...]:
    regs = [modrep.registry_for(p.algebra) for p in parts]
    return tuple(sorted(r.canon(p)[0] for r, p in zip(regs, parts)
                        if p.total_dim))


def in_gen_parts(M: Module, parts: Sequence[Module]) -> bool:
    """Whether M lies in Gen(sum of parts).  Cached via canonical names."""
    if M.total_dim == 0:
        return True
    reg = modrep.registry_for(M.algebra)
    pnames = _part_names(parts)
    if not pnames:
        return False
    nm, _ = reg.canon(M)
    cache = M.algebra.caches.setdefault("in_gen", {})
    key = (nm, pnames)
    if key not in cache:
        tr, _ = trace_parts([reg.module(n) for n in pnames], reg.module(nm))
        cache[key] = tr.dims == reg.module(nm).dims
    return cache[key]


def in_gen(M: Module, T: Module) -> bool:
    """Whether M lies in Gen T."""
    return in_gen_parts(M, [T])


def tf_decompose_parts(parts: Sequence[Module], M: Module):
    """Torsion/torsion-free decomposition of M along Gen(sum of parts).

    Returns ``(tM, incl, fM, proj)`` realising the exact sequence
    0 -> t_T(M) -> M -> f_T(M) -> 0.
    """
    tM, incl = trace_parts(parts, M)
    fM, proj = modrep.quotient(M, incl)
    return tM, incl, fM, proj


def tf_decompose(T: Module, M: Module):
    return tf_decompose_parts([T], M)


def torsion_quotient_parts(parts: Sequence[Module], M: Module) -> Module:
    """f_T(M) for T the sum of the parts, canonicalised."""
    reg = modrep.registry_for(M.algebra)
    pnames = _part_names(parts)
    if not pnames:
        return reg.canon(M)[1]
    nM, _ = reg.canon(M)
    cache = M.algebra.caches.setdefault("f_quot", {})
    key = (pnames, nM)
    if key not in cache:
        _, _, fM, _ = tf_decompose_parts(
            [reg.module(n) for n in pnames], reg.module(nM))
        cache[key] = reg.canon(fM)[1]
    return cache[key]


def torsion_quotient(T: Module, M: Module) -> Module:
    """f_T(M), the torsion-free quotient, canonicalised."""
    return torsion_quotient_parts([T], M)


def minimal_right_approximation(parts: Sequence[Module], M: Module) -> Tuple[List[Module], Morphism]:
    """Minimal right add(X)-approximation of M, X = sum of the given parts.

    Starts from the universal map out of one copy of X per basis morphism
    and greedily removes summand copies while every morphism part -> M
    still factors.  Returns the list of surviving summand copies and the
    approximation morphism from their sum.
    """
    A = M.algebra
    pieces: List[Tuple[Module, Morphism]] = []
    for part in parts:
        for f in modrep.hom_basis(part, M):
            pieces.append((part, f))
    changed = True
    while changed:
        changed = False
        for k in range(len(pieces)):
            trial = pieces[:k] + pieces[k + 1:]
            if _right_covers(trial, parts, M):
                pieces = trial
                changed = True
                break
    kept = [p for p, _ in pieces]
    if not kept:
        Z = modrep.zero_module(A)
        return [], modrep.zero_morphism(Z, M)
    total, incls, _ = modrep.direct_sum(A, kept)
    mor = modrep.zero_morphism(total, M)
    for (p, f), inc in zip(pieces, incls):
        # assemble: component from each copy
        mats = [f.mats[i].mul(_pinv_incl(inc.mats[i])) for i in range(len(M.dims))]
        mor = mor.add(Morphism(total, M, mats, check=False))
    return kept, mor


def _pinv_incl(inc: Mat) -> Mat:
    """Left inverse of a coordinate inclusion (transpose works)."""
    return inc.transpose()


def _right_covers(pieces, parts, M) -> bool:
    """Whether every morphism part -> M factors through the given pieces."""
    for part in parts:
        targets = modrep.hom_basis(part, M)
        if not targets:
            continue
        # basis of maps part -> M factoring through pieces:
        # h : part -> piece_source composed with piece map
        cols = []
        for src, f in pieces:
            for h in modrep.hom_basis(part, src):
                comp = h.then(f)
                cols.append(_flatten_morphism(comp))
        dim_flat = len(_flatten_morphism(targets[0]))
        span = Mat.from_cols(cols, dim_flat) if cols else Mat.zeros(dim_flat, 0)
        for g in targets:
            if span.solve(_flatten_morphism(g)) is None:
                return False
    return True


def minimal_left_approximation(M: Module, parts: Sequence[Module]) -> Tuple[List[Module], Morphism]:
    """Minimal left add(X)-approximation M -> X0 (dual construction)."""
    A = M.algebra
    pieces: List[Tuple[Module, Morphism]] = []
    for part in parts:
        for f in modrep.hom_basis(M, part):
            pieces.append((part, f))
    changed = True
    while changed:
        changed = False
        for k in range(len(pieces)):
            trial = pieces[:k] + pieces[k + 1:]
            if _left_covers(trial, M, parts):
                pieces = trial
                changed = True
                break
    kept = [p for p, _ in pieces]
    if not kept:
        Z = modrep.zero_module(A)
        return [], modrep.zero_morphism(M, Z)
    total, incls, _ = modrep.direct_sum(A, kept)
    mor = modrep.zero_morphism(M, total)
    for (p, f), inc in zip(pieces, incls):
        mor = mor.add(f.then(inc))
    return kept, mor


def _left_covers(pieces, M, parts) -> bool:
    """Whether every morphism M -> part factors through the given pieces."""
    for part in parts:
        targets = modrep.hom_basis(M, part)
        if not targets:
            continue
        cols = []
        for src, f in pieces:
            for h in modrep.hom_basis(src, part):
                cols.append(_flatten_morphism(f.then(h)))
        dim_flat = len(_flatten_morphism(targets[0]))
        span = Mat.from_cols(cols, dim_flat) if cols else Mat.zeros(dim_flat, 0)
        for g in targets:
            if span.solve(_flatten_morphism(g)) is None:
                return False
    return True


def _flatten_morphism(f: Morphism) -> List[Fraction]:
    out: List[Fraction] = []
    for m in f.mats:
        for row in m.data:
            out.extend(row)
    return out
