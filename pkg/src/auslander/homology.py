"""Homological algebra: presentations, Ext, the Nakayama functor and tau.

Minimal projective presentations are computed from tops; the Auslander-
Reiten translate is the kernel of the Nakayama functor applied to the
presentation map, using the identification Hom(P(i), P(j)) = e_j A e_i
(and its counterpart for injectives).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import bqa, modrep
from .exactlin import Mat, hstack, rat, vstack
from .modrep import Module, Morphism


class HomologyError(Exception):
    pass


class ProjSum:
    """An explicit direct sum of indecomposable projectives.

    Coordinates at vertex w are grouped by summand; within the summand
    P(v) they follow the algebra's basis paths v -> w.  This layout is what
    lets morphisms between projective sums be read off as algebra elements.
    """

    def __init__(self, algebra, verts: Sequence[int]):
        self.algebra = algebra
        self.verts = list(verts)
        parts = [bqa.structural_module(algebra, "P", v) for v in self.verts]
        self.module, self.incls, self.projs = modrep.direct_sum(algebra, parts)
        self.parts = parts

    def generator_coords(self, k: int) -> Tuple[int, List[Fraction]]:
        """The coordinates of the generator e_v of summand k, inside the sum."""
        v = self.verts[k]
        part = self.parts[k]
        idx = self.algebra.basis_between(v, v).index(self.algebra.idempotent(v))
        vec = [Fraction(0)] * part.dims[v - 1]
        vec[idx] = Fraction(1)
        return v, self.incls[k].mats[v - 1].apply(vec)

    def morphism_to(self, target: Module,
                    images: Sequence[Tuple[int, Sequence]]) -> Morphism:
        """Morphism determined by generator images (vertex, coords in target)."""
        if len(images) != len(self.verts):
            raise HomologyError("need one generator image per summand")
        n = self.algebra.quiver.vertex_count
        mats = [Mat.zeros(target.dims[i], self.module.dims[i]) for i in range(n)]
        col_off = [0] * n
        for k, v in enumerate(self.verts):
            gen_v, coords = images[k]
            if gen_v != v:
                raise HomologyError("generator image at wrong vertex")
            part = self.parts[k]
            for w in self.algebra.quiver.vertices():
                for j, bidx in enumerate(self.algebra.basis_between(v, w)):
                    path = self.algebra.basis[bidx]
                    tv, img = target.act_path(v, coords, path[1])
                    col = col_off[w - 1] + j
                    for r, x in enumerate(img):
                        mats[w - 1].data[r][col] = x
            for w in self.algebra.quiver.vertices():
                col_off[w - 1] += part.dims[w - 1]
        return Morphism(self.module, target, mats, check=False)

    def block_element(self, f: Morphism, k: int, l: int) -> Dict[int, Fraction]:
        """The element of e_{verts[l]} A e_{verts[k]} giving block k -> l of f.

        f must be a morphism from this sum to another ProjSum's module,
        passed with the target sum via ``block_elements``.
        """
        raise NotImplementedError


def proj_sum_block_elements(src: ProjSum, tgt: ProjSum, f: Morphism) -> List[List[Dict[int, Fraction]]]:
    """Blocks of f: ProjSum -> ProjSum as algebra elements.

    Entry [l][k] is the element a of e_{tgt.verts[l]} A e_{src.verts[k]}
    with block action "left multiplication by a".
    """
    A = src.algebra
    out = []
    for l in range(len(tgt.verts)):
        row = []
        jl = tgt.verts[l]
        for k in range(len(src.verts)):
            ik = src.verts[k]
            gv, coords = src.generator_coords(k)
            img = f.mats[gv - 1].apply(coords)
            # restrict to the slice of target summand l at vertex ik
            sl = tgt.projs[l].mats[ik - 1].apply(img)
            elem: Dict[int, Fraction] = {}
            for j, bidx in enumerate(A.basis_between(jl, ik)):
                if sl[j]:
                    elem[bidx] = sl[j]
            row.append(elem)
        out.append(row)
    return out


class InjSum:
    """An explicit direct sum of indecomposable injectives I(v)."""

    def __init__(self, algebra, verts: Sequence[int]):
        self.algebra = algebra
        self.verts = list(verts)
        parts = [bqa.structural_module(algebra, "I", v) for v in self.verts]
        self.module, self.incls, self.projs = modrep.direct_sum(algebra, parts)
        self.parts = parts


def nakayama_morphism(src: ProjSum, tgt: ProjSum, f: Morphism) -> Tuple[InjSum, InjSum, Morphism]:
    """Apply the Nakayama functor to a morphism between projective sums.

    nu P(i) = I(i); a block "left multiplication by a" becomes the
    transpose of right multiplication by a on the dual path coordinates.
    """
    A = src.algebra
    blocks = proj_sum_block_elements(src, tgt, f)
    nsrc, ntgt = InjSum(A, src.verts), InjSum(A, tgt.verts)
    n = A.quiver.vertex_count
    mats = [Mat.zeros(ntgt.module.dims[i], nsrc.module.dims[i]) for i in range(n)]
    for l in range(len(tgt.verts)):
        jl = tgt.verts[l]
        for k in range(len(src.verts)):
            ik = src.verts[k]
            a = blocks[l][k]
            if not a:
                continue
            for w in A.quiver.vertices():
                rows_idx = A.basis_between(w, jl)   # coordinates of I(jl) at w
                cols_idx = A.basis_between(w, ik)   # coordinates of I(ik) at w
                if not rows_idx or not cols_idx:
                    continue
                # right multiplication by a: e_w A e_jl -> e_w A e_ik
                block = Mat.zeros(len(cols_idx), len(rows_idx))
                cpos = {b: i for i, b in enumerate(cols_idx)}
                for jj, bidx in enumerate(rows_idx):
                    prod: Dict[int, Fraction] = {}
                    for ai, ac in a.items():
                        for kk, e in A.mult(bidx, ai).items():
                            prod[kk] = prod.get(kk, Fraction(0)) + ac * e
                    for kk, e in prod.items():
                        if e and kk in cpos:
                            block.data[cpos[kk]][jj] = e
                # transpose of that block maps I(ik)_w -> I(jl)_w
                tb = block.transpose()
                # place into the big matrix
                roff = sum(p.dims[w - 1] for p in ntgt.parts[:l])
                coff = sum(p.dims[w - 1] for p in nsrc.parts[:k])
                for r in range(tb.rows):
                    for c in range(tb.cols):
                        mats[w - 1].data[roff + r][coff + c] = \
                            mats[w - 1].data[roff + r][coff + c] + tb.data[r][c]
    mor = Morphism(nsrc.module, ntgt.module, mats, check=False)
    return nsrc, ntgt, mor


class Presentation:
    """Minimal projective presentation P1 -d-> P0 -cover-> M."""

    def __init__(self, M: Module, P0: ProjSum, cover: Morphism,
                 syzygy: Module, syz_incl: Morphism,
                 P1: ProjSum, syz_cover: Morphism):
        self.M = M
        self.P0 = P0
        self.cover = cover
        self.syzygy = syzygy
        self.syz_incl = syz_incl
        self.P1 = P1
        self.syz_cover = syz_cover
        self.d = syz_cover.then(syz_incl) if P1.verts else \
            modrep.zero_morphism(P1.module, P0.module)


def projective_cover(M: Module) -> Tuple[ProjSum, Morphism]:
    """Minimal projective cover of M."""
    A = M.algebra
    top, proj = modrep.top_quotient(M)
    verts = []
    images: List[Tuple[int, List[Fraction]]] = []
    n = A.quiver.vertex_count
    for i in range(n):
        d = top.dims[i]
        if d == 0:
            continue
        # lift a basis of top at vertex i through the projection
        sols = proj.mats[i].solve_many(
            [[Fraction(1) if r == s else Fraction(0) for r in range(d)]
             for s in range(d)])
        if sols is None:
            raise HomologyError("top projection not surjective")
        for s in range(d):
            verts.append(i + 1)
            images.append((i + 1, sols[s]))
    P0 = ProjSum(A, verts)
    cover = P0.morphism_to(M, images)
    if not cover.is_surjective():
        raise HomologyError("projective cover construction failed")
    return P0, cover


def minimal_presentation(M: Module) -> Presentation:
    A = M.algebra
    P0, cover = projective_cover(M)
    K, kincl = modrep.kernel(cover)
    if K.total_dim == 0:
        P1 = ProjSum(A, [])
        syz_cover = modrep.zero_morphism(P1.module, K)
        return Presentation(M, P0, cover, K, kincl, P1, syz_cover)
    P1, kcover = projective_cover(K)
    return Presentation(M, P0, cover, K, kincl, P1, kcover)


def pdim(M: Module, cap: int = 16) -> Optional[int]:
    """Projective dimension, or None for the zero module."""
    if M.total_dim == 0:
        return None
    name, M = modrep.canonical(M)
    cache = M.algebra.caches.setdefault("pdim", {})
    if name in cache:
        return cache[name]
    cache[name] = _pdim_raw(M, cap)
    return cache[name]


def _pdim_raw(M: Module, cap: int) -> int:
    cur = M
    for d in range(cap + 1):
        P0, cover = projective_cover(cur)
        K, _ = modrep.kernel(cover)
        if K.total_dim == 0:
            return d
        cur = K
    raise HomologyError(f"projective dimension exceeds cap {cap}")


def syzygy(M: Module) -> Module:
    P0, cover = projective_cover(M)
    K, _ = modrep.kernel(cover)
    return K


def ext_space(k: int, M: Module, N: Module) -> Tuple[int, List[Morphism]]:
    """Ext^k(M, N): dimension and class representatives.

    For k >= 1 representatives are morphisms from the k-th syzygy of M to
    N spanning a complement of the restrictions from the covering
    projective; a class is zero iff its morphism extends to that
    projective.
    """
    if k < 0:
        raise HomologyError("negative Ext degree")
    if k == 0:
        basis = modrep.hom_basis(M, N)
        return len(basis), basis
    cur = M
    for _ in range(k - 1):
        cur = syzygy(cur)
        if cur.total_dim == 0:
            return 0, []
    if cur.total_dim == 0:
        return 0, []
    P0, cover = projective_cover(cur)
    K, kincl = modrep.kernel(cover)
    if K.total_dim == 0:
        return 0, []
    homs = modrep.hom_basis(K, N)
    if not homs:
        return 0, []
    restrict = [kincl.then(g) for g in modrep.hom_basis(P0.module, N)]

    def flatten(f: Morphism) -> List[Fraction]:
        out: List[Fraction] = []
        for m in f.mats:
            for row in m.data:
                out.extend(row)
        return out

    dim_flat = len(flatten(homs[0]))
    img = [flatten(f) for f in restrict]
    img_rank = Mat.from_cols(img, dim_flat).rank() if img else 0
    dim_ext = len(homs) - img_rank
    # greedy complement: homs whose flattening extends the image span
    reps = []
    cols = list(img)
    cur_rank = img_rank
    for h in homs:
        if len(reps) == dim_ext:
            break
        cand = cols + [flatten(h)]
        r = Mat.from_cols(cand, dim_flat).rank()
        if r > cur_rank:
            cols = cand
            cur_rank = r
            reps.append(h)
    return dim_ext, reps


def ext_dim(k: int, M: Module, N: Module) -> int:
    if M.total_dim == 0 or N.total_dim == 0:
        return 0
    nm, M = modrep.canonical(M)
    nn, N = modrep.canonical(N)
    cache = M.algebra.caches.setdefault("ext_dim", {})
    key = (k, nm, nn)
    if key not in cache:
        cache[key] = ext_space(k, M, N)[0]
    return cache[key]


def extension_from_class(M: Module, N: Module, class_rep: Morphism) -> Tuple[Module, Morphism, Morphism]:
    """Middle term of the extension of M by N given by an Ext^1 class.

    ``class_rep`` must be a morphism from the syzygy of (a minimal
    presentation of) M into N, as produced by ``ext_space``.  Returns
    ``(E, incl, proj)`` realising 0 -> N -> E -> M -> 0.
    """
    pres = minimal_presentation(M)
    K = pres.syzygy
    if class_rep.source is not K and class_rep.source.dims != K.dims:
        raise HomologyError("class representative has wrong source")
    big, incls, projs = modrep.direct_sum(M.algebra, [N, pres.P0.module])
    # submodule spanned by (g(x), -incl(x)) for x in K
    gens = []
    n = M.algebra.quiver.vertex_count
    for i in range(n):
        for j in range(K.dims[i]):
            x = [Fraction(1) if r == j else Fraction(0) for r in range(K.dims[i])]
            top_part = class_rep.mats[i].apply(x)
            bot_part = [-v for v in pres.syz_incl.mats[i].apply(x)]
            vec = incls[0].mats[i].apply(top_part)
            vec = [a + b for a, b in zip(vec, incls[1].mats[i].apply(bot_part))]
            gens.append((i + 1, vec))
    W, w_incl = modrep.submodule(big, gens)
    E, eproj = modrep.quotient(big, w_incl)
    incl = incls[0].then(eproj)
    # E -> M: descend (n, p) -> cover(p)
    to_m_big = projs[1].then(pres.cover)
    # solve for the induced map on the quotient: find F with F . eproj = to_m_big
    mats = []
    for i in range(n):
        P = eproj.mats[i]
        sols = P.transpose().solve_many([row for row in to_m_big.mats[i].data])
        if sols is None:
            raise HomologyError("extension projection did not descend")
        mats.append(Mat(sols, to_m_big.mats[i].rows, E.dims[i]) if sols else
                    Mat.zeros(M.dims[i], E.dims[i]))
    proj = Morphism(E, M, mats, check=False)
    if not incl.is_injective() or not proj.is_surjective():
        raise HomologyError("extension construction failed")
    return E, incl, proj


def extension_splits(M: Module, N: Module, class_rep: Morphism) -> bool:
    """Whether the class is zero (middle term iso to the direct sum)."""
    pres = minimal_presentation(M)
    flat = []
    for m in class_rep.mats:
        for row in m.data:
            flat.extend(row)
    if all(x == 0 for x in flat):
        return True
    restrict = [pres.syz_incl.then(g)
                for g in modrep.hom_basis(pres.P0.module, N)]
    if not restrict:
        return False
    dim_flat = len(flat)
    cols = []
    for f in restrict:
        v = []
        for m in f.mats:
            for row in m.data:
                v.extend(row)
        cols.append(v)
    return Mat.from_cols(cols, dim_flat).solve(flat) is not None


def tau(M: Module) -> Module:
    """Auslander-Reiten translate (zero for projectives)."""
    reg = modrep.registry_for(M.algebra)
    name = reg.canon(M)[0]
    cache = M.algebra.caches.setdefault("tau", {})
    if name in cache:
        return cache[name]
    rep = reg.module(name)
    pres = minimal_presentation(rep)
    if not pres.P1.verts:
        out = modrep.zero_module(M.algebra)
    else:
        _, _, nu_d = nakayama_morphism(pres.P1, pres.P0, pres.d)
        out, _ = modrep.kernel(nu_d)
    out = reg.canon(out)[1]
    cache[name] = out
    return out


def dual_module(M: Module, op=None) -> Module:
    """The dual D(M) as a module over the opposite algebra."""
    A = M.algebra
    if op is None:
        op = bqa.opposite_algebra(A)
    maps = {a.name: M.maps[a.name].transpose() for a in A.quiver.arrows}
    return Module(op, M.dims, maps)


def tau_inverse(M: Module) -> Module:
    """Inverse AR translate, computed as D tau D over the opposite algebra."""
    reg = modrep.registry_for(M.algebra)
    name = reg.canon(M)[0]
    cache = M.algebra.caches.setdefault("tau_inv", {})
    if name in cache:
        return cache[name]
    rep = reg.module(name)
    op = bqa.opposite_algebra(M.algebra)
    out = dual_module(tau(dual_module(rep, op)), M.algebra)
    out = reg.canon(out)[1]
    cache[name] = out
    return out


def is_projective(M: Module) -> bool:
    if M.total_dim == 0:
        return True
    return syzygy(M).total_dim == 0


def is_injective_module(M: Module) -> bool:
    if M.total_dim == 0:
        return True
    op = bqa.opposite_algebra(M.algebra)
    return is_projective(dual_module(M, op))
