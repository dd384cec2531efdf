"""Quiver representations (right modules) and maps between them.

A module over a bound quiver algebra assigns a rational vector space to
each vertex and a matrix to each arrow ``α : i -> j`` mapping the space at
``i`` to the space at ``j``.  Relations of the algebra are checked at
construction.  Elements are "graded vectors": lists of coordinate vectors,
one per vertex.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Mat, hstack, rat, vstack

DEFAULT_SEED = 0
ISO_TRIALS = 32


class ModuleError(Exception):
    pass


class DecompositionError(Exception):
    """Raised when a Krull-Schmidt split cannot be certified."""


class Module:
    """A finite dimensional right module, given by its representation."""

    def __init__(self, algebra, dims: Sequence[int],
                 maps: Dict[str, Mat], check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.quiver.vertex_count:
            raise ModuleError("dimension vector length mismatch")
        if any(d < 0 for d in self.dims):
            raise ModuleError("negative dimension")
        self.maps = dict(maps)
        for a in algebra.quiver.arrows:
            m = self.maps.get(a.name)
            if m is None:
                raise ModuleError(f"missing matrix for arrow {a.name}")
            if (m.rows, m.cols) != (self.dims[a.target - 1], self.dims[a.source - 1]):
                raise ModuleError(f"matrix shape mismatch for arrow {a.name}")
        self.total_dim = sum(self.dims)
        if check:
            self._check_relations()

    def _check_relations(self):
        for r in self.algebra.relations:
            src = self.dims[r.source - 1]
            tgt = self.dims[r.target - 1]
            if src == 0 or tgt == 0:
                continue
            acc = Mat.zeros(tgt, src)
            for coeff, path in r.terms:
                acc = acc.add(self.path_matrix(r.source, path).scale(coeff))
            if not acc.is_zero():
                raise ModuleError("representation violates a relation")

    def path_matrix(self, source: int, path: Sequence[str]) -> Mat:
        """Matrix of the action of a path, acting on the space at source."""
        m = Mat.identity(self.dims[source - 1])
        cur = source
        for name in path:
            a = self.algebra.quiver.by_name[name]
            if a.source != cur:
                raise ModuleError("path not composable")
            m = self.maps[name].mul(m)
            cur = a.target
        return m

    def act_path(self, vertex: int, vec: Sequence, path: Sequence[str]) -> Tuple[int, List[Fraction]]:
        """Apply a path to a vector sitting at the given vertex."""
        cur = vertex
        v = [rat(x) for x in vec]
        for name in path:
            a = self.algebra.quiver.by_name[name]
            if a.source != cur:
                raise ModuleError("path not composable")
            v = self.maps[name].apply(v)
            cur = a.target
        return cur, v

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def is_thin(self) -> bool:
        return all(d <= 1 for d in self.dims)

    def __repr__(self):
        return f"Module(dim={list(self.dims)})"

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {a.name: [[str(x) for x in row] for row in self.maps[a.name].data]
                     for a in self.algebra.quiver.arrows},
        }

    @staticmethod
    def from_json(algebra, obj: dict) -> "Module":
        dims = obj["dims"]
        maps = {}
        for a in algebra.quiver.arrows:
            rows = obj["maps"][a.name]
            maps[a.name] = Mat([[rat(x) for x in row] for row in rows],
                               dims[a.target - 1], dims[a.source - 1])
        return Module(algebra, dims, maps)


def zero_module(algebra) -> Module:
    n = algebra.quiver.vertex_count
    maps = {a.name: Mat.zeros(0, 0) for a in algebra.quiver.arrows}
    return Module(algebra, [0] * n, maps)


class Morphism:
    """A homomorphism of modules: one matrix per vertex, intertwining arrows."""

    def __init__(self, source: Module, target: Module,
                 mats: Sequence[Mat], check: bool = True):
        self.source = source
        self.target = target
        self.mats = list(mats)
        if len(self.mats) != source.algebra.quiver.vertex_count:
            raise ModuleError("wrong number of matrices")
        for v0, m in enumerate(self.mats):
            if (m.rows, m.cols) != (target.dims[v0], source.dims[v0]):
                raise ModuleError("morphism matrix shape mismatch")
        if check and not self._intertwines():
            raise ModuleError("matrices do not define a morphism")

    def _intertwines(self) -> bool:
        for a in self.source.algebra.quiver.arrows:
            s, t = a.source - 1, a.target - 1
            lhs = self.target.maps[a.name].mul(self.mats[s])
            rhs = self.mats[t].mul(self.source.maps[a.name])
            if lhs != rhs:
                return False
        return True

    def then(self, other: "Morphism") -> "Morphism":
        """self followed by other."""
        if other.source is not self.target and other.source.dims != self.target.dims:
            raise ModuleError("morphisms not composable")
        return Morphism(self.source, other.target,
                        [g.mul(f) for f, g in zip(self.mats, other.mats)],
                        check=False)

    def add(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        [a.add(b) for a, b in zip(self.mats, other.mats)],
                        check=False)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target,
                        [m.scale(c) for m in self.mats], check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_injective(self) -> bool:
        return all(m.rank() == m.cols for m in self.mats)

    def is_surjective(self) -> bool:
        return all(m.rank() == m.rows for m in self.mats)

    def is_isomorphism(self) -> bool:
        return (self.source.dims == self.target.dims
                and all(m.is_invertible() for m in self.mats))

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def zero_morphism(M: Module, N: Module) -> Morphism:
    return Morphism(M, N, [Mat.zeros(N.dims[i], M.dims[i])
                           for i in range(len(M.dims))], check=False)


def identity_morphism(M: Module) -> Morphism:
    return Morphism(M, M, [Mat.identity(d) for d in M.dims], check=False)


def direct_sum(algebra, parts: Sequence[Module]):
    """Direct sum with inclusion and projection morphisms."""
    from .exactlin import block_diag
    n = algebra.quiver.vertex_count
    parts = list(parts)
    dims = [sum(p.dims[i] for p in parts) for i in range(n)]
    maps = {}
    for a in algebra.quiver.arrows:
        maps[a.name] = block_diag([p.maps[a.name] for p in parts]) if parts \
            else Mat.zeros(0, 0)
        # fix shape when there are no parts or zero dims
        m = maps[a.name]
        if (m.rows, m.cols) != (dims[a.target - 1], dims[a.source - 1]):
            maps[a.name] = Mat.zeros(dims[a.target - 1], dims[a.source - 1])
    total = Module(algebra, dims, maps, check=False)
    incls, projs = [], []
    offsets = [[0] * n]
    for p in parts:
        offsets.append([offsets[-1][i] + p.dims[i] for i in range(n)])
    for k, p in enumerate(parts):
        inc = []
        prj = []
        for i in range(n):
            mi = Mat.zeros(dims[i], p.dims[i])
            mp = Mat.zeros(p.dims[i], dims[i])
            for j in range(p.dims[i]):
                mi.data[offsets[k][i] + j][j] = Fraction(1)
                mp.data[j][offsets[k][i] + j] = Fraction(1)
            inc.append(mi)
            prj.append(mp)
        incls.append(Morphism(p, total, inc, check=False))
        projs.append(Morphism(total, p, prj, check=False))
    return total, incls, projs


# -- hom spaces -------------------------------------------------------------

def _carries_canonical_matrices(reg, M: Module, name: str) -> bool:
    """Whether M has exactly the matrices of the registered representative.

    Registered aliases are merely isomorphic, so cached morphism matrices
    are only transferable when the matrices agree entry for entry.
    """
    C = reg.module(name)
    if M is C:
        return True
    if tuple(M.dims) != tuple(C.dims):
        return False
    return all(M.maps[a].data == C.maps[a].data for a in M.maps)


def hom_basis(M: Module, N: Module) -> List[Morphism]:
    """Deterministic basis of Hom(M, N)."""
    reg = registry_for(M.algebra)
    key = None
    nm, nn = reg.name_of(M), reg.name_of(N)
    if nm is not None and nn is not None \
            and _carries_canonical_matrices(reg, M, nm) \
            and _carries_canonical_matrices(reg, N, nn):
        key = (nm, nn)
        cache = M.algebra.caches.setdefault("hom", {})
        hit = cache.get(key)
        if hit is not None:
            # re-target at the exact module objects passed in
            return [Morphism(M, N, f.mats, check=False) for f in hit]
    basis = _hom_basis_raw(M, N)
    if key is not None:
        cache[key] = basis
    return basis


def _hom_basis_raw(M: Module, N: Module) -> List[Morphism]:
    n = M.algebra.quiver.vertex_count
    sizes = [N.dims[i] * M.dims[i] for i in range(n)]
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    total = offs[-1]
    if total == 0:
        return []
    rows = []
    for a in M.algebra.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        # constraint: N_a * f_s - f_t * M_a = 0
        Na, Ma = N.maps[a.name], M.maps[a.name]
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                row = [Fraction(0)] * total
                # (N_a f_s)[r][c] = sum_k Na[r][k] f_s[k][c]
                for k in range(N.dims[s]):
                    if Na.data[r][k]:
                        row[offs[s] + k * M.dims[s] + c] += Na.data[r][k]
                # (f_t M_a)[r][c] = sum_k f_t[r][k] Ma[k][c]
                for k in range(M.dims[t]):
                    if Ma.data[k][c]:
                        row[offs[t] + r * M.dims[t] + k] -= Ma.data[k][c]
                if any(row):
                    rows.append(row)
    if not rows:
        kernel = [[Fraction(1) if i == j else Fraction(0) for j in range(total)]
                  for i in range(total)]
    else:
        kernel = Mat(rows).kernel_basis()
    out = []
    for vec in kernel:
        mats = []
        for i in range(n):
            m = Mat.zeros(N.dims[i], M.dims[i])
            for r in range(N.dims[i]):
                for c in range(M.dims[i]):
                    m.data[r][c] = vec[offs[i] + r * M.dims[i] + c]
            mats.append(m)
        out.append(Morphism(M, N, mats, check=False))
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_basis(M, N))


def end_basis(M: Module) -> List[Morphism]:
    return hom_basis(M, M)


# -- isomorphism ------------------------------------------------------------

def is_isomorphic(M: Module, N: Module, seed: int = DEFAULT_SEED) -> bool:
    """Exact isomorphism test.

    Dimension vectors must agree; then a generic element of Hom(M, N) is
    sampled (seeded, 32 trials) and tested for invertibility.  If sampling
    fails, the answer is decided exactly: for indecomposables M iso N iff
    some composite N -> M -> N escapes the radical of End(M) (End is
    local); otherwise the indecomposable summand multisets are compared.
    """
    if M is N:
        return True
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    homs = hom_basis(M, N)
    if not homs:
        return False
    if len(hom_basis(M, M)) != len(hom_basis(N, N)):
        return False
    rng = random.Random((seed, M.total_dim, len(homs)).__hash__())
    for trial in range(ISO_TRIALS):
        if trial < len(homs):
            cand = homs[trial]
        else:
            cand = zero_morphism(M, N)
            for h in homs:
                cand = cand.add(h.scale(rng.randint(-8, 8)))
        if cand.is_isomorphism():
            return True
    # raw indecomposability here: the registry calls back into this
    # function while canonicalising, so the cached wrapper cannot be used
    if _is_indec_raw(M):
        if not _is_indec_raw(N):
            return False
        return _indecomposable_iso(M, N, homs)
    if _is_indec_raw(N):
        return False
    return _summand_multisets_match(M, N, seed)


def _is_indec_raw(M: Module) -> bool:
    return len(end_basis(M)) - len(end_radical(M)) == 1


def _indecomposable_iso(M: Module, N: Module, homs: List[Morphism]) -> bool:
    """M iso N for indecomposables iff some g.f avoids rad End(M)."""
    from .exactlin import Mat
    rad = end_radical(M)
    rad_cols = [_flatten_endo(f) for f in rad]
    dim_flat = sum(d * d for d in M.dims)
    rank = Mat.from_cols(rad_cols, dim_flat).rank() if rad_cols else 0
    back = hom_basis(N, M)
    for f in homs:
        for g in back:
            v = _flatten_endo(f.then(g))
            if Mat.from_cols(rad_cols + [v], dim_flat).rank() > rank:
                return True
    return False


def _flatten_endo(f: Morphism) -> List[Fraction]:
    out: List[Fraction] = []
    for m in f.mats:
        for row in m.data:
            out.extend(row)
    return out


def _summand_multisets_match(M: Module, N: Module, seed: int) -> bool:
    parts_m = decompose(M, seed)
    parts_n = decompose(N, seed)
    if len(parts_m) != len(parts_n):
        return False
    remaining = list(parts_n)
    for p in parts_m:
        hit = None
        for i, q in enumerate(remaining):
            if is_isomorphic(p, q, seed):
                hit = i
                break
        if hit is None:
            return False
        remaining.pop(hit)
    return True


# -- submodules and quotients ----------------------------------------------

def submodule(M: Module, generators: Sequence[Tuple[int, Sequence]]):
    """Submodule generated by graded vectors ``(vertex, coords)``.

    Returns ``(S, incl)`` with ``incl : S -> M`` the inclusion.
    """
    n = M.algebra.quiver.vertex_count
    spans: List[List[List[Fraction]]] = [[] for _ in range(n)]

    def contains(v: int, vec: List[Fraction]) -> bool:
        if not spans[v]:
            return all(x == 0 for x in vec)
        return Mat.from_cols(spans[v], M.dims[v]).solve(vec) is not None

    queue = [(v - 1, [rat(x) for x in coords]) for v, coords in generators]
    for v, vec in queue:
        if len(vec) != M.dims[v]:
            raise ModuleError("generator length mismatch")
    while queue:
        v, vec = queue.pop()
        if all(x == 0 for x in vec) or contains(v, vec):
            continue
        spans[v].append(vec)
        for a in M.algebra.quiver.arrows_from(v + 1):
            queue.append((a.target - 1, M.maps[a.name].apply(vec)))
    return _subspace_module(M, spans)


def _subspace_module(M: Module, spans: Sequence[Sequence[Sequence]]):
    """Module structure on arrow-invariant per-vertex subspaces."""
    from .exactlin import echelon_cols
    n = M.algebra.quiver.vertex_count
    bases = [echelon_cols(list(spans[i]), M.dims[i]) for i in range(n)]
    dims = [b.cols for b in bases]
    maps = {}
    for a in M.algebra.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        imgs = [M.maps[a.name].apply(bases[s].col(j)) for j in range(dims[s])]
        if dims[t] == 0:
            if any(any(x != 0 for x in im) for im in imgs):
                raise ModuleError("subspaces not arrow-invariant")
            maps[a.name] = Mat.zeros(0, dims[s])
        else:
            sols = bases[t].solve_many(imgs)
            if sols is None:
                raise ModuleError("subspaces not arrow-invariant")
            maps[a.name] = Mat.from_cols(sols, dims[t])
    S = Module(M.algebra, dims, maps, check=False)
    incl = Morphism(S, M, bases, check=False)
    return S, incl


def quotient(M: Module, sub_incl: Morphism):
    """Quotient of M by the image of an (injective) morphism into it.

    Returns ``(Q, proj)`` with ``proj : M -> Q`` the projection.
    """
    n = M.algebra.quiver.vertex_count
    projs = []
    lifts = []
    for i in range(n):
        B = sub_incl.mats[i]
        # echelon basis of the subspace; non-pivot coordinates survive
        R, rank, _ = B.transpose().rref()
        ech = [R.data[r] for r in range(rank)]
        piv_positions = []
        for row in ech:
            for j, x in enumerate(row):
                if x != 0:
                    piv_positions.append(j)
                    break
        pivset = set(piv_positions)
        free = [j for j in range(M.dims[i]) if j not in pivset]
        # projection: reduce modulo the echelon basis, read free coordinates
        P = Mat.zeros(len(free), M.dims[i])
        for col in range(M.dims[i]):
            v = [Fraction(1) if j == col else Fraction(0) for j in range(M.dims[i])]
            for row, p in zip(ech, piv_positions):
                if v[p]:
                    c = v[p] / row[p]
                    v = [x - c * y for x, y in zip(v, row)]
            for r, j in enumerate(free):
                P.data[r][col] = v[j]
        L = Mat.zeros(M.dims[i], len(free))
        for r, j in enumerate(free):
            L.data[j][r] = Fraction(1)
        projs.append(P)
        lifts.append(L)
    dims = [p.rows for p in projs]
    maps = {}
    for a in M.algebra.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        maps[a.name] = projs[t].mul(M.maps[a.name]).mul(lifts[s])
    Q = Module(M.algebra, dims, maps, check=False)
    proj = Morphism(M, Q, projs, check=False)
    return Q, proj


def kernel(f: Morphism):
    """Kernel submodule with its inclusion."""
    n = f.source.algebra.quiver.vertex_count
    spans = [f.mats[i].kernel_basis() for i in range(n)]
    return _subspace_module(f.source, spans)


def image(f: Morphism):
    """Image submodule of the target, with its inclusion."""
    n = f.source.algebra.quiver.vertex_count
    spans = [[f.mats[i].col(j) for j in range(f.mats[i].cols)] for i in range(n)]
    return _subspace_module(f.target, spans)


def cokernel(f: Morphism):
    """Cokernel with the projection from the target."""
    _, incl = image(f)
    return quotient(f.target, incl)


def radical_submodule(M: Module):
    """rad M = sum of the images of all arrow maps."""
    n = M.algebra.quiver.vertex_count
    spans: List[List[List[Fraction]]] = [[] for _ in range(n)]
    for a in M.algebra.quiver.arrows:
        t = a.target - 1
        m = M.maps[a.name]
        spans[t].extend(m.col(j) for j in range(m.cols))
    return _subspace_module(M, spans)


def socle_submodule(M: Module):
    """soc M = the largest semisimple submodule (joint arrow kernels)."""
    n = M.algebra.quiver.vertex_count
    spans = []
    for i in range(n):
        outgoing = [M.maps[a.name] for a in M.algebra.quiver.arrows_from(i + 1)]
        if not outgoing:
            spans.append([[Fraction(1) if j == k else Fraction(0)
                           for j in range(M.dims[i])] for k in range(M.dims[i])])
        else:
            spans.append(vstack(outgoing).kernel_basis())
    return _subspace_module(M, spans)


def top_quotient(M: Module):
    """top M = M / rad M with the projection."""
    _, incl = radical_submodule(M)
    return quotient(M, incl)


# -- decomposition ----------------------------------------------------------

def end_radical(M: Module) -> List[Morphism]:
    """Basis of the Jacobson radical of End(M), via the trace form."""
    ends = end_basis(M)
    k = len(ends)
    if k == 0:
        return []
    gram = Mat.zeros(k, k)
    for i in range(k):
        for j in range(k):
            comp = ends[i].then(ends[j])
            gram.data[i][j] = sum(comp.mats[v].data[d][d]
                                  for v in range(len(M.dims))
                                  for d in range(M.dims[v]))
    out = []
    for vec in gram.kernel_basis():
        f = zero_morphism(M, M)
        for c, h in zip(vec, ends):
            if c:
                f = f.add(h.scale(c))
        out.append(f)
    return out


def is_indecomposable(M: Module) -> bool:
    if M.total_dim == 0:
        return False
    name, M = canonical(M)
    cache = M.algebra.caches.setdefault("indec", {})
    if name not in cache:
        cache[name] = _is_indec_raw(M)
    return cache[name]


def decompose(M: Module, seed: int = DEFAULT_SEED) -> List[Module]:
    """Indecomposable direct summands of M (with multiplicity).

    Uses Fitting's lemma on endomorphisms: for an endomorphism f, the
    stable kernel and image of f split M.  Candidates are the endomorphism
    basis followed by seeded random combinations; if the number of summands
    promised by End(M)/rad cannot be realised, DecompositionError is raised
    rather than returning a wrong answer.
    """
    if M.total_dim == 0:
        return []
    ends = end_basis(M)
    semis = len(ends) - len(end_radical(M))
    if semis == 1:
        return [M]
    rng = random.Random((seed, M.total_dim, len(ends)).__hash__())
    candidates = list(ends)
    for _ in range(64):
        f = zero_morphism(M, M)
        for h in ends:
            f = f.add(h.scale(rng.randint(-5, 5)))
        candidates.append(f)
    for f in candidates:
        # stabilise: g = f^(total_dim)
        g = f
        for _ in range(max(1, M.total_dim.bit_length())):
            g = g.then(g)
        K, kincl = kernel(g)
        if K.total_dim == 0 or K.total_dim == M.total_dim:
            continue
        I, _ = image(g)
        if K.total_dim + I.total_dim != M.total_dim:
            continue
        return decompose(K, seed) + decompose(I, seed)
    raise DecompositionError(
        "decomposition inconclusive: End(M)/rad promises a split that no "
        "sampled endomorphism realises")


def summand_multiset(M: Module, seed: int = DEFAULT_SEED) -> List[Tuple[str, Module]]:
    """Decompose and name the summands via the registry."""
    reg = registry_for(M.algebra)
    return [reg.canon(S) for S in decompose(M, seed)]


# -- registry of canonical representatives ----------------------------------

class Registry:
    """Per-algebra store of canonical representatives of iso classes.

    Names are assigned in first-discovery order; structural modules get
    readable names (P1, S2, I3, ...).  All caches downstream key on these
    names, so canonicalising early keeps everything shared.
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.by_name: Dict[str, Module] = {}
        self.buckets: Dict[Tuple[int, ...], List[str]] = {}
        # id() keys are only valid while the object is alive, so the module
        # itself is pinned in the value and checked by identity on lookup
        self.ids: Dict[int, Tuple[Module, str]] = {}
        self.counter = 0

    def name_of(self, M: Module) -> Optional[str]:
        entry = self.ids.get(id(M))
        if entry is not None and entry[0] is M:
            return entry[1]
        return None

    def canon(self, M: Module, preferred: Optional[str] = None) -> Tuple[str, Module]:
        """Canonical (name, representative) of the iso class of M."""
        known = self.name_of(M)
        if known is not None:
            return known, self.by_name[known]
        bucket = self.buckets.setdefault(M.dims, [])
        for name in bucket:
            if is_isomorphic(self.by_name[name], M):
                self.ids[id(M)] = (M, name)
                return name, self.by_name[name]
        if preferred is not None and preferred not in self.by_name:
            name = preferred
        else:
            self.counter += 1
            name = f"X{self.counter}"
        self.by_name[name] = M
        bucket.append(name)
        self.ids[id(M)] = (M, name)
        return name, M

    def module(self, name: str) -> Module:
        return self.by_name[name]


def registry_for(algebra) -> Registry:
    reg = algebra.caches.get("registry")
    if reg is None:
        reg = Registry(algebra)
        algebra.caches["registry"] = reg
    return reg


def canonical(M: Module, preferred: Optional[str] = None) -> Tuple[str, Module]:
    return registry_for(M.algebra).canon(M, preferred)


def structural(algebra, kind: str, v: int) -> Module:
    """Registry-backed P(v) / I(v) / S(v)."""
    from . import bqa
    reg = registry_for(algebra)
    name = f"{kind}{v}"
    if name in reg.by_name:
        return reg.by_name[name]
    M = bqa.structural_module(algebra, kind, v)
    got, rep = reg.canon(M, preferred=name)
    return rep
