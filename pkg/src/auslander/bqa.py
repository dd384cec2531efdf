"""Bound quiver algebras with an exact path-basis presentation.

An algebra is a quiver with relations (linear combinations of parallel
paths).  Construction enumerates paths by length and reduces them against
the two-sided ideal generated by the relations, stopping at the first
length where every path of that length reduces to shorter ones; the
surviving paths form a basis and multiplication is computed by normal
forms.  Paths compose left to right: ``p * q`` means "first p, then q".

The central example is the algebra ``A_t`` whose quiver has vertices
``1..t``, arrows ``a_i : i -> i+1`` and ``b_i : i+1 -> i``, bound by
``a_1 b_1 = 0`` and ``a_{i+1} b_{i+1} = b_i a_i``.  Its dimension is
``sum(min(i, j) for i, j in [1..t]^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Mat, rat

DEFAULT_LENGTH_CAP_FACTOR = 4


class AlgebraError(Exception):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """A finite quiver on vertices 1..vertex_count."""

    def __init__(self, vertex_count: int, arrows: Sequence[Tuple[str, int, int]]):
        self.vertex_count = vertex_count
        self.arrows: List[Arrow] = []
        self.by_name: Dict[str, Arrow] = {}
        for name, s, t in arrows:
            if not (1 <= s <= vertex_count and 1 <= t <= vertex_count):
                raise AlgebraError(f"arrow {name} endpoints out of range")
            if name in self.by_name:
                raise AlgebraError(f"duplicate arrow name {name}")
            a = Arrow(name, s, t)
            self.arrows.append(a)
            self.by_name[name] = a

    def arrows_from(self, v: int) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: int) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)


class Relation:
    """A linear combination of parallel paths, each a tuple of arrow names."""

    def __init__(self, quiver: Quiver, terms: Sequence[Tuple[object, Sequence[str]]]):
        if not terms:
            raise AlgebraError("empty relation")
        self.terms: List[Tuple[Fraction, Tuple[str, ...]]] = []
        src = tgt = None
        for coeff, path in terms:
            path = tuple(path)
            if not path:
                raise AlgebraError("relations may not involve trivial paths")
            s, t = _path_endpoints(quiver, path)
            if src is None:
                src, tgt = s, t
            elif (s, t) != (src, tgt):
                raise AlgebraError("relation terms are not parallel")
            self.terms.append((rat(coeff), path))
        self.source = src
        self.target = tgt

    def max_length(self) -> int:
        return max(len(p) for _, p in self.terms)


def _path_endpoints(quiver: Quiver, path: Tuple[str, ...]) -> Tuple[int, int]:
    cur = None
    src = None
    for name in path:
        a = quiver.by_name.get(name)
        if a is None:
            raise AlgebraError(f"unknown arrow {name}")
        if cur is None:
            src = a.source
        elif a.source != cur:
            raise AlgebraError(f"path {path} is not composable")
        cur = a.target
    return src, cur


# A path is (source_vertex, tuple_of_arrow_names); the target is derived.
Path = Tuple[int, Tuple[str, ...]]


def _path_key(p: Path):
    return (len(p[1]), p[0], p[1])


class _SparseRREF:
    """Row-reduced spanning set of sparse vectors over the path space.

    Vectors are dicts path -> Fraction.  The pivot of a row is its largest
    path under the (length, source, names) order, so long paths get
    rewritten in terms of shorter ones.
    """

    def __init__(self):
        self.rows: Dict[Path, Dict[Path, Fraction]] = {}

    def reduce(self, vec: Dict[Path, Fraction]) -> Dict[Path, Fraction]:
        vec = {p: c for p, c in vec.items() if c}
        while True:
            hits = [p for p in vec if p in self.rows]
            if not hits:
                return vec
            piv = max(hits, key=_path_key)
            row = self.rows[piv]
            c = vec[piv]
            for p, x in row.items():
                vec[p] = vec.get(p, Fraction(0)) - c * x
                if not vec[p]:
                    del vec[p]

    def add(self, vec: Dict[Path, Fraction]) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = max(vec, key=_path_key)
        c = vec[piv]
        vec = {p: x / c for p, x in vec.items()}
        # back-substitute into existing rows
        for q, row in self.rows.items():
            if piv in row:
                f = row[piv]
                for p, x in vec.items():
                    row[p] = row.get(p, Fraction(0)) - f * x
                    if not row[p]:
                        del row[p]
        self.rows[piv] = vec
        return True


class Algebra:
    """A finite dimensional bound quiver algebra with explicit path basis."""

    def __init__(self, quiver: Quiver, relations: Sequence[Relation],
                 basis: List[Path], rref: _SparseRREF, stop_length: int,
                 name: str = ""):
        self.quiver = quiver
        self.relations = list(relations)
        self.basis = basis
        self.basis_index = {p: i for i, p in enumerate(basis)}
        self._rref = rref
        self._stop_length = stop_length
        self.name = name or f"algebra({quiver.vertex_count} vertices)"
        self.dim = len(basis)
        self.is_auslander = False
        self.t = None  # set for Auslander algebras
        self._nf_cache: Dict[Path, Dict[int, Fraction]] = {}
        self._mult_cache: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        self._between: Dict[Tuple[int, int], List[int]] = {}
        for i, (s, names) in enumerate(basis):
            t = _path_endpoints(quiver, names)[1] if names else s
            self._between.setdefault((s, t), []).append(i)
        self.caches: Dict[str, dict] = {}

    # -- path arithmetic ------------------------------------------------

    def path_target(self, p: Path) -> int:
        if not p[1]:
            return p[0]
        return self.quiver.by_name[p[1][-1]].target

    def nf(self, p: Path) -> Dict[int, Fraction]:
        """Normal form of a path as a combination of basis paths."""
        cached = self._nf_cache.get(p)
        if cached is not None:
            return cached
        if len(p[1]) <= self._stop_length:
            red = self._rref.reduce({p: Fraction(1)})
            out = {self.basis_index[q]: c for q, c in red.items()}
        else:
            # peel the last arrow and reduce recursively
            prefix = (p[0], p[1][:-1])
            last = p[1][-1]
            out = {}
            for i, c in self.nf(prefix).items():
                q = self.basis[i]
                ext = (q[0], q[1] + (last,))
                if self.path_target(q) != self.quiver.by_name[last].source:
                    continue
                for j, d in self.nf(ext).items():
                    out[j] = out.get(j, Fraction(0)) + c * d
            out = {j: c for j, c in out.items() if c}
        self._nf_cache[p] = out
        return out

    def mult(self, i: int, j: int) -> Dict[int, Fraction]:
        """Product of basis elements i and j (i first, then j)."""
        cached = self._mult_cache.get((i, j))
        if cached is not None:
            return cached
        pi, pj = self.basis[i], self.basis[j]
        if self.path_target(pi) != pj[0]:
            out: Dict[int, Fraction] = {}
        else:
            out = self.nf((pi[0], pi[1] + pj[1]))
        self._mult_cache[(i, j)] = out
        return out

    def mult_vec(self, u: Dict[int, Fraction], v: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, c in u.items():
            for j, d in v.items():
                for k, e in self.mult(i, j).items():
                    out[k] = out.get(k, Fraction(0)) + c * d * e
        return {k: c for k, c in out.items() if c}

    def idempotent(self, v: int) -> int:
        """Basis index of the trivial path at vertex v."""
        return self.basis_index[(v, ())]

    def basis_between(self, i: int, j: int) -> List[int]:
        """Basis indices of paths from vertex i to vertex j."""
        return self._between.get((i, j), [])

    def check_associativity(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.mult(i, j)
                for k in range(n):
                    left = {}
                    for m, c in ij.items():
                        for q, d in self.mult(m, k).items():
                            left[q] = left.get(q, Fraction(0)) + c * d
                    right = {}
                    for m, c in self.mult(j, k).items():
                        for q, d in self.mult(i, m).items():
                            right[q] = right.get(q, Fraction(0)) + c * d
                    left = {q: c for q, c in left.items() if c}
                    right = {q: c for q, c in right.items() if c}
                    if left != right:
                        return False
        return True

    def describe(self) -> dict:
        """Dimensions of e_i A e_j for all vertex pairs, plus global data."""
        t = self.quiver.vertex_count
        table = [[len(self.basis_between(i, j)) for j in range(1, t + 1)]
                 for i in range(1, t + 1)]
        return {
            "name": self.name,
            "vertices": t,
            "arrows": [[a.name, a.source, a.target] for a in self.quiver.arrows],
            "dim": self.dim,
            "hom_dims": table,
        }

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim})"


def build_algebra(quiver: Quiver, relations: Sequence[Relation],
                  length_cap: Optional[int] = None, name: str = "") -> Algebra:
    """Construct a bound quiver algebra, or raise if it looks infinite.

    Paths are enumerated by length; at each length the two-sided ideal
    generated by the relations is extended with all products landing at
    that length, and construction stops at the first length L where every
    path of length L reduces to a combination of shorter paths.  Exceeding
    the cap raises AlgebraError.
    """
    if length_cap is None:
        length_cap = max(DEFAULT_LENGTH_CAP_FACTOR * quiver.vertex_count, 8)
    paths_by_len: List[List[Path]] = [[(v, ()) for v in quiver.vertices()]]
    rref = _SparseRREF()

    def extend(paths: List[Path]) -> List[Path]:
        out = []
        for p in paths:
            tgt = quiver.by_name[p[1][-1]].target if p[1] else p[0]
            for a in quiver.arrows_from(tgt):
                out.append((p[0], p[1] + (a.name,)))
        return out

    def add_generators(L: int):
        # all u * r * v whose longest term has length exactly L
        for r in relations:
            mlen = r.max_length()
            if L < mlen:
                continue
            for lu in range(L - mlen + 1):
                lv = L - mlen - lu
                us = [p for p in paths_by_len[lu]
                      if (quiver.by_name[p[1][-1]].target if p[1] else p[0]) == r.source]
                vs = [p for p in paths_by_len[lv] if p[0] == r.target]
                for u in us:
                    for v in vs:
                        vec: Dict[Path, Fraction] = {}
                        for coeff, names in r.terms:
                            q = (u[0], u[1] + names + v[1])
                            vec[q] = vec.get(q, Fraction(0)) + coeff
                        rref.add(vec)

    stop = None
    L = 1
    while L <= length_cap:
        paths_by_len.append(extend(paths_by_len[L - 1]))
        add_generators(L)
        done = True
        for p in paths_by_len[L]:
            red = rref.reduce({p: Fraction(1)})
            if any(len(q[1]) >= L for q in red):
                done = False
                break
        if done:
            stop = L
            break
        L += 1
    if stop is None:
        raise AlgebraError(
            f"algebra not finite dimensional within length cap {length_cap}")

    pivots = set(rref.rows.keys())
    basis = [p for ln in range(stop) for p in sorted(paths_by_len[ln], key=_path_key)
             if p not in pivots]
    return Algebra(quiver, relations, basis, rref, stop, name=name)


_AUSLANDER_CACHE: Dict[int, Algebra] = {}


def auslander_algebra(t: int) -> Algebra:
    """The Auslander algebra A_t of K[x]/(x^t)."""
    if t < 1:
        raise AlgebraError("t must be >= 1")
    if t in _AUSLANDER_CACHE:
        return _AUSLANDER_CACHE[t]
    arrows = []
    for i in range(1, t):
        arrows.append((f"a{i}", i, i + 1))
        arrows.append((f"b{i}", i + 1, i))
    q = Quiver(t, arrows)
    rels = []
    if t >= 2:
        rels.append(Relation(q, [(1, ("a1", "b1"))]))
    for i in range(1, t - 1):
        rels.append(Relation(q, [(1, (f"a{i+1}", f"b{i+1}")),
                                 (-1, (f"b{i}", f"a{i}"))]))
    A = build_algebra(q, rels, name=f"A_{t}")
    A.is_auslander = True
    A.t = t
    expected = sum(min(i, j) for i in range(1, t + 1) for j in range(1, t + 1))
    if A.dim != expected:
        raise AlgebraError(f"A_{t} has dimension {A.dim}, expected {expected}")
    _AUSLANDER_CACHE[t] = A
    return A


_GAMMA_CACHE: List[Algebra] = []


def gamma_algebra() -> Algebra:
    """The five dimensional algebra K(1 -a-> 2 -b-> 3) / (ab)."""
    if _GAMMA_CACHE:
        return _GAMMA_CACHE[0]
    q = Quiver(3, [("a", 1, 2), ("b", 2, 3)])
    G = build_algebra(q, [Relation(q, [(1, ("a", "b"))])], name="Gamma")
    if G.dim != 5:
        raise AlgebraError(f"Gamma has dimension {G.dim}, expected 5")
    _GAMMA_CACHE.append(G)
    return G


# -- modules from the algebra itself ---------------------------------------

def structural_module(A: Algebra, kind: str, v: int):
    """P(v), I(v) or S(v) as an explicit representation."""
    from . import modrep

    t = A.quiver.vertex_count
    if not 1 <= v <= t:
        raise AlgebraError(f"vertex {v} out of range")
    if kind == "S":
        dims = [1 if w == v else 0 for w in A.quiver.vertices()]
        maps = {a.name: Mat.zeros(dims[a.target - 1], dims[a.source - 1])
                for a in A.quiver.arrows}
        return modrep.Module(A, dims, maps)
    if kind == "P":
        # coordinates at vertex w: basis paths v -> w
        layout = {w: A.basis_between(v, w) for w in A.quiver.vertices()}
        dims = [len(layout[w]) for w in A.quiver.vertices()]
        maps = {}
        for a in A.quiver.arrows:
            src, tgt = layout[a.source], layout[a.target]
            m = Mat.zeros(len(tgt), len(src))
            pos = {b: i for i, b in enumerate(tgt)}
            for j, bidx in enumerate(src):
                p = A.basis[bidx]
                for k, c in A.nf((p[0], p[1] + (a.name,))).items():
                    m.data[pos[k]][j] = c
            maps[a.name] = m
        return modrep.Module(A, dims, maps)
    if kind == "I":
        # coordinates at vertex w: dual basis of paths w -> v
        layout = {w: A.basis_between(w, v) for w in A.quiver.vertices()}
        dims = [len(layout[w]) for w in A.quiver.vertices()]
        maps = {}
        for a in A.quiver.arrows:
            src, tgt = layout[a.source], layout[a.target]
            # transpose of "prepend the arrow": e_tgt A e_v -> e_src A e_v
            m = Mat.zeros(len(tgt), len(src))
            pos = {b: i for i, b in enumerate(src)}
            for j, bidx in enumerate(tgt):
                p = A.basis[bidx]
                ext = (a.source, (a.name,) + p[1])
                for k, c in A.nf(ext).items():
                    if k in pos:
                        m.data[j][pos[k]] = c
            maps[a.name] = m
        return modrep.Module(A, dims, maps)
    raise AlgebraError(f"unknown structural module kind {kind}")


def ideal_subspace(A: Algebra, generators: Sequence[Dict[int, Fraction]]) -> List[Dict[int, Fraction]]:
    """Basis (echelonised, sparse) of the two-sided ideal generated in A."""
    # closure under left and right multiplication by basis elements
    rr = _IdealSpan(A.dim)
    queue = [dict(g) for g in generators]
    while queue:
        vec = queue.pop()
        if not rr.add(vec):
            continue
        for side in ("l", "r"):
            for b in range(A.dim):
                prod: Dict[int, Fraction] = {}
                for i, c in vec.items():
                    table = A.mult(b, i) if side == "l" else A.mult(i, b)
                    for k, e in table.items():
                        prod[k] = prod.get(k, Fraction(0)) + c * e
                prod = {k: c for k, c in prod.items() if c}
                if prod:
                    queue.append(prod)
    return rr.basis()


class _IdealSpan:
    """Sparse echelon span over basis indices."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: Dict[int, Dict[int, Fraction]] = {}

    def reduce(self, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        vec = {i: c for i, c in vec.items() if c}
        while vec:
            piv = max(vec)
            row = self.rows.get(piv)
            if row is None:
                return vec
            c = vec[piv]
            for i, x in row.items():
                vec[i] = vec.get(i, Fraction(0)) - c * x
                if not vec[i]:
                    del vec[i]
        return vec

    def add(self, vec: Dict[int, Fraction]) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = max(vec)
        c = vec[piv]
        vec = {i: x / c for i, x in vec.items()}
        for q, row in self.rows.items():
            if piv in row:
                f = row[piv]
                for i, x in vec.items():
                    row[i] = row.get(i, Fraction(0)) - f * x
                    if not row[i]:
                        del row[i]
        self.rows[piv] = vec
        return True

    def basis(self) -> List[Dict[int, Fraction]]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def ideal_module(A: Algebra, span: Sequence[Dict[int, Fraction]]):
    """A right-mult-closed subspace of A, turned into a right module.

    The span must already be closed under right multiplication (two-sided
    ideals and e_i * ideal slices are); coordinates at vertex w are the
    span vectors supported on paths ending at w.
    """
    from . import modrep

    by_vertex: Dict[int, List[Dict[int, Fraction]]] = {w: [] for w in A.quiver.vertices()}
    for vec in span:
        # split by target vertex (right multiplication by idempotents)
        parts: Dict[int, Dict[int, Fraction]] = {}
        for i, c in vec.items():
            w = A.path_target(A.basis[i])
            parts.setdefault(w, {})[i] = c
        for w, part in parts.items():
            by_vertex[w].append(part)
    # echelonise per vertex for a deterministic basis
    layout: Dict[int, List[Dict[int, Fraction]]] = {}
    for w in A.quiver.vertices():
        span_w = _IdealSpan(A.dim)
        for v in by_vertex[w]:
            span_w.add(v)
        layout[w] = span_w.basis()
    dims = [len(layout[w]) for w in A.quiver.vertices()]
    maps = {}
    for a in A.quiver.arrows:
        src, tgt = layout[a.source], layout[a.target]
        cols = []
        for vec in src:
            prod: Dict[int, Fraction] = {}
            aidx = A.basis_index.get((a.source, (a.name,)))
            for i, c in vec.items():
                table = A.mult(i, aidx) if aidx is not None else {}
                for k, e in table.items():
                    prod[k] = prod.get(k, Fraction(0)) + c * e
            prod = {k: c for k, c in prod.items() if c}
            cols.append(prod)
        # express each product in the target basis
        m = Mat.zeros(len(tgt), len(src))
        if tgt:
            full = Mat.from_cols([_densify(v, A.dim) for v in tgt], A.dim)
            sols = full.solve_many([_densify(c, A.dim) for c in cols])
            if sols is None:
                raise AlgebraError("subspace not closed under right multiplication")
            for j, sol in enumerate(sols):
                for i, x in enumerate(sol):
                    m.data[i][j] = x
        elif any(cols):
            raise AlgebraError("subspace not closed under right multiplication")
        maps[a.name] = m
    from . import modrep
    return modrep.Module(A, dims, maps)


def _densify(vec: Dict[int, Fraction], dim: int) -> List[Fraction]:
    out = [Fraction(0)] * dim
    for i, c in vec.items():
        out[i] = c
    return out


def regular_module(A: Algebra):
    """A as a right module over itself (direct sum of all P(v))."""
    from . import modrep
    parts = [structural_module(A, "P", v) for v in A.quiver.vertices()]
    return modrep.direct_sum(A, parts)[0]


def vertex_ideal(A: Algebra, v: int) -> List[Dict[int, Fraction]]:
    """The two-sided ideal generated by 1 - e_v."""
    gens = [{A.idempotent(w): Fraction(1)} for w in A.quiver.vertices() if w != v]
    return ideal_subspace(A, gens)


_OP_CACHE: Dict[int, Algebra] = {}


def opposite_algebra(A: Algebra) -> Algebra:
    """The opposite algebra, as a bound quiver algebra with reversed arrows."""
    if id(A) in _OP_CACHE:
        return _OP_CACHE[id(A)]
    q = Quiver(A.quiver.vertex_count,
               [(a.name, a.target, a.source) for a in A.quiver.arrows])
    rels = [Relation(q, [(c, tuple(reversed(p))) for c, p in r.terms])
            for r in A.relations]
    op = build_algebra(q, rels, name=A.name + "^op")
    if op.dim != A.dim:
        raise AlgebraError("opposite algebra dimension mismatch")
    _OP_CACHE[id(A)] = op
    return op


_QUOT_CACHE: Dict[Tuple[int, Tuple[int, ...]], Tuple[Algebra, Dict[int, int]]] = {}


def idempotent_quotient(A: Algebra, kill: Sequence[int]) -> Tuple[Algebra, Dict[int, int]]:
    """A / <e_v : v in kill> plus the old-vertex -> new-vertex map."""
    kill_set = frozenset(kill)
    key = (id(A), tuple(sorted(kill_set)))
    if key in _QUOT_CACHE:
        return _QUOT_CACHE[key]
    keep = [v for v in A.quiver.vertices() if v not in kill_set]
    if not keep:
        raise AlgebraError("cannot kill every vertex")
    vmap = {v: i + 1 for i, v in enumerate(keep)}
    arrows = [(a.name, vmap[a.source], vmap[a.target]) for a in A.quiver.arrows
              if a.source not in kill_set and a.target not in kill_set]
    q = Quiver(len(keep), arrows)
    rels = []
    for r in A.relations:
        if r.source in kill_set or r.target in kill_set:
            continue
        terms = [(c, p) for c, p in r.terms
                 if all(q.by_name.get(n) is not None for n in p)]
        if terms:
            rels.append(Relation(q, terms))
    B = build_algebra(q, rels, name=f"{A.name}/e{sorted(kill_set)}")
    # cross-check the dimension against the ideal computed inside A
    gens = [{A.idempotent(v): Fraction(1)} for v in kill_set]
    ideal = ideal_subspace(A, gens)
    if B.dim != A.dim - len(ideal):
        raise AlgebraError("idempotent quotient dimension mismatch")
    _QUOT_CACHE[key] = (B, vmap)
    return B, vmap
