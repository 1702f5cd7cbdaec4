"""Modules over a finite-dimensional graded path algebra with relations.

Right modules throughout: ``P(i) = e_i A`` has basis the basis paths starting
at ``i``, and an arrow ``a : s -> t`` maps ``M_s -> M_t`` by right
multiplication.  A representation stores one matrix per arrow acting on
column vectors, so the path "a then b" acts by ``M_b @ M_a``.

Minimal resolutions run on an internal description of syzygies as graded
subspaces of explicit projective modules.  Every algebra built by
``normalform`` is graded by path length, so all kernels split into
(vertex, degree) blocks and the linear algebra stays blockwise.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Echelon, Field, Vector, axpy, det, kernel, scale, solve
from .normalform import GradedAlgebra

SCHEMA_VERSION = 1
DEFAULT_STEP_CAP = 12

Matrix = list  # list of rows


def zeros(r: int, c: int, f: Field) -> Matrix:
    z = f(0)
    return [[z] * c for _ in range(r)]


def identity(n: int, f: Field) -> Matrix:
    m = zeros(n, n, f)
    for i in range(n):
        m[i][i] = f(1)
    return m


def column(m: Matrix, j: int) -> Vector:
    return {i: row[j] for i, row in enumerate(m) if row[j]}


def apply(m: Matrix, v: Vector, f: Field) -> Vector:
    out: Vector = {}
    for j, x in v.items():
        for i, row in enumerate(m):
            if row[j]:
                s = f.norm(out.get(i, 0) + row[j] * x)
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
    return out


def from_columns(cols: list[Vector], rows: int, f: Field) -> Matrix:
    m = zeros(rows, len(cols), f)
    for j, c in enumerate(cols):
        for i, x in c.items():
            m[i][j] = x
    return m


# -- representations ---------------------------------------------------------

@dataclass
class Representation:
    algebra: GradedAlgebra
    dims: tuple[int, ...]
    actions: dict[int, Matrix]
    grading: tuple[tuple[int, ...], ...] | None = None
    name: str = ""

    def __post_init__(self):
        q = self.algebra.quiver
        if len(self.dims) != q.vertex_count:
            raise ValueError(f"dimension vector {self.dims} does not match {q.vertex_count} vertices")
        for a in q.arrows:
            m = self.actions.setdefault(a.id, zeros(self.dims[a.target], self.dims[a.source],
                                                    self.algebra.field))
            if len(m) != self.dims[a.target] or any(len(r) != self.dims[a.source] for r in m):
                raise ValueError(f"action of {a.label} has the wrong shape")
        if self.grading is not None:
            for v in range(q.vertex_count):
                if len(self.grading[v]) != self.dims[v]:
                    raise ValueError(f"grading at vertex {v} has the wrong length")
        bad = self.relation_violations()
        if bad:
            raise ValueError(f"representation violates relations {bad}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def path_apply(self, arrows, vec: Vector) -> Vector:
        """Apply the arrow word to a vector at its starting vertex."""
        for a in arrows:
            if not vec:
                break
            vec = apply(self.actions[a], vec, self.field)
        return vec

    def act(self, v: int, vec: Vector, u: int) -> Vector:
        """``vec`` in M_v times basis element ``u`` (zero unless u starts at v)."""
        if self.algebra.source[u] != v:
            return {}
        return self.path_apply(self.algebra.paths[u].arrows, vec)

    def relation_violations(self) -> list[int]:
        f = self.field
        bad = []
        one = f(1)
        for r, rel in enumerate(self.algebra.presentation.relations):
            src = rel.terms[0][1].source
            for k in range(self.dims[src]):
                total: Vector = {}
                for c, p in rel.terms:
                    axpy(total, f(c), self.path_apply(p.arrows, {k: one}), f)
                if total:
                    bad.append(r)
                    break
        return bad

    def label(self) -> str:
        return self.name or f"M{self.dims}"


@dataclass
class ModuleMap:
    domain: Representation
    codomain: Representation
    blocks: list[Matrix]  # per vertex, codomain_dim x domain_dim

    def commutes(self) -> bool:
        f = self.domain.field
        one = f(1)
        for a in self.domain.algebra.quiver.arrows:
            s, t = a.source, a.target
            for k in range(self.domain.dims[s]):
                lhs = apply(self.blocks[t], apply(self.domain.actions[a.id], {k: one}, f), f)
                rhs = apply(self.codomain.actions[a.id], apply(self.blocks[s], {k: one}, f), f)
                if lhs != rhs:
                    return False
        return True

    def is_invertible(self) -> bool:
        f = self.domain.field
        if self.domain.dims != self.codomain.dims:
            return False
        return all(not b or det(b, f) for b in self.blocks)


def _check_vertex(alg: GradedAlgebra, i: int) -> None:
    if not 0 <= i < alg.vertex_count:
        raise ValueError(f"vertex index {i} out of range 0..{alg.vertex_count - 1}")


def simple(alg: GradedAlgebra, i: int) -> Representation:
    _check_vertex(alg, i)
    dims = tuple(int(v == i) for v in range(alg.vertex_count))
    grading = tuple((0,) if v == i else () for v in range(alg.vertex_count))
    return Representation(alg, dims, {}, grading, name=f"S({alg.quiver.labels[i]})")


def projective(alg: GradedAlgebra, i: int) -> Representation:
    """``e_i A``: paths starting at ``i``, arrows acting by right multiplication."""
    _check_vertex(alg, i)
    f = alg.field
    at = [[u for u in alg.from_vertex[i] if alg.target[u] == v] for v in range(alg.vertex_count)]
    pos = {u: k for block in at for k, u in enumerate(block)}
    dims = tuple(len(b) for b in at)
    actions = {}
    for a in alg.quiver.arrows:
        m = zeros(dims[a.target], dims[a.source], f)
        for u in at[a.source]:
            for w, c in alg.basis.times_arrow({u: f(1)}, a.id).items():
                m[pos[w]][pos[u]] = c
        actions[a.id] = m
    grading = tuple(tuple(alg.degree[u] for u in b) for b in at)
    return Representation(alg, dims, actions, grading, name=f"P({alg.quiver.labels[i]})")


def injective(alg: GradedAlgebra, i: int) -> Representation:
    """``D(A e_i)``: dual of the paths ending at ``i``."""
    _check_vertex(alg, i)
    f = alg.field
    at = [[u for u in alg.to_vertex[i] if alg.source[u] == v] for v in range(alg.vertex_count)]
    pos = {u: k for block in at for k, u in enumerate(block)}
    dims = tuple(len(b) for b in at)
    top = alg.nilpotency - 1
    actions = {}
    for a in alg.quiver.arrows:
        m = zeros(dims[a.target], dims[a.source], f)
        arrow = alg.arrow_element(a.id)
        # (f . a)(x) = f(a x) for x in e_t A e_i; entry [x*, u*] = coeff of u in a x
        for x in at[a.target]:
            for u, c in alg.mul_vec(arrow, {x: f(1)}).items():
                m[pos[x]][pos[u]] = c
        actions[a.id] = m
    # the dual grading is reversed so arrows still raise degree
    grading = tuple(tuple(top - alg.degree[u] for u in b) for b in at)
    return Representation(alg, dims, actions, grading, name=f"I({alg.quiver.labels[i]})")


def direct_sum(mods: list[Representation]) -> Representation:
    alg = mods[0].algebra
    f = alg.field
    nv = alg.vertex_count
    dims = tuple(sum(m.dims[v] for m in mods) for v in range(nv))
    actions = {}
    for a in alg.quiver.arrows:
        big = zeros(dims[a.target], dims[a.source], f)
        r0 = c0 = 0
        for m in mods:
            for i, row in enumerate(m.actions[a.id]):
                for j, x in enumerate(row):
                    big[r0 + i][c0 + j] = x
            r0 += m.dims[a.target]
            c0 += m.dims[a.source]
        actions[a.id] = big
    grading = None
    if all(m.grading is not None for m in mods):
        grading = tuple(tuple(d for m in mods for d in m.grading[v]) for v in range(nv))
    return Representation(alg, dims, actions, grading)


# -- sub- and quotient representations ---------------------------------------

def _span_basis(vectors: list[Vector], f: Field) -> list[Vector]:
    return Echelon(f).basis() if not vectors else _echelon(vectors, f).basis()


def _echelon(vectors: list[Vector], f: Field) -> Echelon:
    e = Echelon(f)
    for v in vectors:
        e.add(v)
    return e


def subrepresentation(m: Representation, spaces: list[list[Vector]]) -> tuple[Representation, ModuleMap]:
    """Submodule spanned by ``spaces[v]`` (assumed closed) with its inclusion."""
    f = m.field
    alg = m.algebra
    bases = [_span_basis(spaces[v], f) for v in range(alg.vertex_count)]
    dims = tuple(len(b) for b in bases)
    actions = {}
    for a in alg.quiver.arrows:
        cols = []
        for vec in bases[a.source]:
            img = apply(m.actions[a.id], vec, f)
            coords = solve(bases[a.target], img, f)
            if coords is None:
                raise ValueError("subspace is not closed under the arrow actions")
            cols.append(coords)
        actions[a.id] = from_columns(cols, dims[a.target], f)
    grading = None
    if m.grading is not None:
        grading = tuple(tuple(m.grading[v][min(vec)] for vec in bases[v])
                        for v in range(alg.vertex_count))
    sub = Representation(alg, dims, actions, grading)
    inc = ModuleMap(sub, m, [from_columns(bases[v], m.dims[v], f) for v in range(alg.vertex_count)])
    return sub, inc


def quotient(m: Representation, spaces: list[list[Vector]]) -> tuple[Representation, ModuleMap]:
    """``M / U`` for a closed subspace family ``U``, with the projection."""
    f = m.field
    alg = m.algebra
    nv = alg.vertex_count
    echs = [_echelon(spaces[v], f) for v in range(nv)]
    # complement: standard basis vectors that are not pivots of U
    comps = [[k for k in range(m.dims[v]) if k not in echs[v].rows] for v in range(nv)]
    pos = [{k: j for j, k in enumerate(c)} for c in comps]

    def coords(v: int, vec: Vector) -> Vector:
        r = echs[v].reduce(vec)
        return {pos[v][k]: x for k, x in r.items()}

    dims = tuple(len(c) for c in comps)
    actions = {}
    for a in alg.quiver.arrows:
        cols = [coords(a.target, apply(m.actions[a.id], {k: f(1)}, f)) for k in comps[a.source]]
        actions[a.id] = from_columns(cols, dims[a.target], f)
    grading = None
    if m.grading is not None:
        grading = tuple(tuple(m.grading[v][k] for k in comps[v]) for v in range(nv))
    q = Representation(m.algebra, dims, actions, grading)
    proj_blocks = [from_columns([coords(v, {k: f(1)}) for k in range(m.dims[v])], dims[v], f)
                   for v in range(nv)]
    return q, ModuleMap(m, q, proj_blocks)


def radical_spaces(m: Representation) -> list[list[Vector]]:
    f = m.field
    spaces: list[list[Vector]] = [[] for _ in m.dims]
    for a in m.algebra.quiver.arrows:
        mat = m.actions[a.id]
        for j in range(m.dims[a.source]):
            c = column(mat, j)
            if c:
                spaces[a.target].append(c)
    return [_span_basis(s, f) for s in spaces]


def socle_spaces(m: Representation) -> list[list[Vector]]:
    f = m.field
    out = []
    for v in range(len(m.dims)):
        leaving = [a for a in m.algebra.quiver.arrows if a.source == v]
        # stack the arrow matrices; socle at v is their common kernel
        images = []
        for k in range(m.dims[v]):
            img: Vector = {}
            off = 0
            for a in leaving:
                for i, x in column(m.actions[a.id], k).items():
                    img[off + i] = x
                off += m.dims[a.target]
            images.append(img)
        out.append(kernel(images, f))
    return out


def radical(m: Representation) -> tuple[Representation, ModuleMap]:
    return subrepresentation(m, radical_spaces(m))


def top(m: Representation) -> tuple[Representation, ModuleMap]:
    return quotient(m, radical_spaces(m))


def socle(m: Representation) -> tuple[Representation, ModuleMap]:
    return subrepresentation(m, socle_spaces(m))


def top_generators(m: Representation) -> list[tuple[int, Vector]]:
    """Vectors whose classes form a basis of ``top(M)``, vertex by vertex."""
    f = m.field
    gens = []
    for v, rad in enumerate(radical_spaces(m)):
        ech = _echelon(rad, f)
        for k in range(m.dims[v]):
            if ech.add({k: f(1)}):
                gens.append((v, {k: f(1)}))
    return gens


def projective_cover(m: Representation) -> tuple[Representation, ModuleMap]:
    """Minimal projective ``P -> M`` with summands ordered by vertex."""
    if m.total_dim == 0:
        raise ValueError("the zero module has no projective cover")
    alg = m.algebra
    f = m.field
    gens = top_generators(m)
    pieces = [projective(alg, v) for v, _ in gens]
    p = direct_sum(pieces)
    blocks = [zeros(m.dims[v], p.dims[v], f) for v in range(alg.vertex_count)]
    offset = [0] * alg.vertex_count
    for (v, vec), piece in zip(gens, pieces):
        for w in range(alg.vertex_count):
            basis_w = [u for u in alg.from_vertex[v] if alg.target[u] == w]
            for k, u in enumerate(basis_w):
                for i, x in m.act(v, vec, u).items():
                    blocks[w][i][offset[w] + k] = x
            offset[w] += piece.dims[w]
    names = [f"P({alg.quiver.labels[v]})" for v, _ in gens]
    p.name = " + ".join(names)
    return p, ModuleMap(p, m, blocks)


# -- homomorphisms and isomorphism -------------------------------------------

def hom_basis(m: Representation, n: Representation) -> list[list[Matrix]]:
    """Basis of Hom(M, N) as per-vertex block lists."""
    f = m.field
    alg = m.algebra
    nv = alg.vertex_count
    # unknown (v, r, c): entry r,c of the block at v
    index = {}
    for v in range(nv):
        for r in range(n.dims[v]):
            for c in range(m.dims[v]):
                index[(v, r, c)] = len(index)
    # each unknown's contribution to all equations F_t M_a - N_a F_s = 0
    contributions: list[Vector] = [{} for _ in index]
    eq = 0
    for a in alg.quiver.arrows:
        s, t = a.source, a.target
        ma, na = m.actions[a.id], n.actions[a.id]
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                # (F_t M_a)[r, c] = sum_k F_t[r, k] M_a[k, c]
                for k in range(m.dims[t]):
                    x = ma[k][c]
                    if x:
                        d = contributions[index[(t, r, k)]]
                        d[eq] = f.norm(d.get(eq, 0) + x)
                # (N_a F_s)[r, c] = sum_k N_a[r, k] F_s[k, c]
                for k in range(n.dims[s]):
                    x = na[r][k]
                    if x:
                        d = contributions[index[(s, k, c)]]
                        d[eq] = f.norm(d.get(eq, 0) - x)
                eq += 1
    contributions = [{k: x for k, x in d.items() if x} for d in contributions]
    out = []
    for vec in kernel(contributions, f):
        blocks = [zeros(n.dims[v], m.dims[v], f) for v in range(nv)]
        for (v, r, c), idx in index.items():
            if idx in vec:
                blocks[v][r][c] = vec[idx]
        out.append(blocks)
    return out


@dataclass(frozen=True)
class Iso:
    witness: ModuleMap


@dataclass(frozen=True)
class NotIso:
    reason: str


@dataclass(frozen=True)
class Undecided:
    reason: str


GRID = (1, 0, -1, 2, -2)


def module_isomorphic(m: Representation, n: Representation, grid=GRID,
                      budget: int = 50_000) -> Iso | NotIso | Undecided:
    """Search small integer combinations of a Hom basis for an invertible map."""
    if m.algebra is not n.algebra:
        raise ValueError("modules live over different algebras")
    if m.dims != n.dims:
        return NotIso(f"dimension vectors differ: {m.dims} vs {n.dims}")
    for name, inv in (("top", lambda x: top(x)[0].dims), ("socle", lambda x: socle(x)[0].dims)):
        if inv(m) != inv(n):
            return NotIso(f"{name} dimension vectors differ: {inv(m)} vs {inv(n)}")
    f = m.field
    nv = m.algebra.vertex_count
    basis = hom_basis(m, n)
    if not basis:
        if m.total_dim == 0:
            return Iso(ModuleMap(m, n, [zeros(0, 0, f) for _ in range(nv)]))
        return NotIso("Hom(M, N) = 0")
    tried = 0
    for coeffs in itertools.product(grid, repeat=len(basis)):
        tried += 1
        if tried > budget:
            break
        if not any(coeffs):
            continue
        blocks = [zeros(n.dims[v], m.dims[v], f) for v in range(nv)]
        for c, b in zip(coeffs, basis):
            if not c:
                continue
            c = f(c)
            for v in range(nv):
                for r, row in enumerate(b[v]):
                    for k, x in enumerate(row):
                        if x:
                            blocks[v][r][k] = f.norm(blocks[v][r][k] + c * x)
        phi = ModuleMap(m, n, blocks)
        if phi.is_invertible():
            return Iso(phi)
        if len(basis) == 1:
            # every map is a scalar multiple of the single basis map
            return NotIso("the only maps are multiples of a non-invertible map")
    return Undecided(f"no invertible map among {min(tried, budget)} grid combinations "
                     f"of a {len(basis)}-dimensional Hom space")


# -- invariants of the algebra -----------------------------------------------

def cartan_matrix(alg: GradedAlgebra) -> list[list[int]]:
    """Entry (i, j) is the multiplicity of S(j) in P(i): the paths from i to j."""
    nv = alg.vertex_count
    c = [[0] * nv for _ in range(nv)]
    for u in range(alg.dim):
        c[alg.source[u]][alg.target[u]] += 1
    return c


def cartan_determinant(alg: GradedAlgebra) -> Fraction:
    from .linalg import RATIONAL
    return det(cartan_matrix(alg), RATIONAL) if alg.vertex_count else Fraction(1)


@dataclass(frozen=True)
class NakayamaData:
    sigma: tuple[int, ...]  # vertex index -> vertex index
    witnesses: tuple[ModuleMap, ...]


@dataclass(frozen=True)
class SelfInjective:
    nakayama: NakayamaData

    @property
    def sigma(self) -> tuple[int, ...]:
        return self.nakayama.sigma


@dataclass(frozen=True)
class NotSelfInjective:
    reason: str


@dataclass(frozen=True)
class SelfInjectivityUndecided:
    reason: str


def self_injectivity(alg: GradedAlgebra):
    labels = alg.quiver.labels
    nv = alg.vertex_count
    sigma = []
    for i in range(nv):
        soc, _ = socle(projective(alg, i))
        if soc.total_dim != 1:
            return NotSelfInjective(
                f"soc P({labels[i]}) has dimension vector {soc.dims}, not a simple module"
            )
        sigma.append(soc.dims.index(1))
    if len(set(sigma)) != nv:
        return NotSelfInjective(f"socle vertices {[labels[j] for j in sigma]} do not form a permutation")
    witnesses = []
    for i in range(nv):
        res = module_isomorphic(projective(alg, i), injective(alg, sigma[i]))
        if isinstance(res, NotIso):
            return NotSelfInjective(f"P({labels[i]}) is not isomorphic to I({labels[sigma[i]]}): {res.reason}")
        if isinstance(res, Undecided):
            return SelfInjectivityUndecided(f"P({labels[i]}) vs I({labels[sigma[i]]}): {res.reason}")
        witnesses.append(res.witness)
    return SelfInjective(NakayamaData(tuple(sigma), tuple(witnesses)))


# -- minimal projective resolutions ------------------------------------------

class _Projective:
    """Explicit ``(+)_k P(v_k)<shift_k>`` with basis pairs (summand, path)."""

    def __init__(self, alg: GradedAlgebra, summands: list[tuple[int, int]], graded: bool):
        self.alg = alg
        self.summands = summands
        self.graded = graded
        self.offsets = []
        self.elems: list[tuple[int, int]] = []
        for k, (v, _) in enumerate(summands):
            self.offsets.append(len(self.elems))
            self.elems.extend((k, u) for u in alg.from_vertex[v])
        self.pos = {e: i for i, e in enumerate(self.elems)}
        self.blocks: dict[tuple[int, int], list[int]] = {}
        for i, (k, u) in enumerate(self.elems):
            self.blocks.setdefault(self.key(k, u), []).append(i)

    def key(self, k: int, u: int) -> tuple[int, int]:
        v, shift = self.summands[k]
        deg = shift + self.alg.degree[u] if self.graded else 0
        return (self.alg.target[u], deg)

    @property
    def dim(self) -> int:
        return len(self.elems)

    def times(self, x: Vector, w: int) -> Vector:
        """Right multiplication of an element by the algebra basis element ``w``."""
        alg = self.alg
        f = alg.field
        out: Vector = {}
        for i, c in x.items():
            k, u = self.elems[i]
            prod = alg.products.get((u, w))
            if prod:
                for u2, c2 in prod.items():
                    j = self.pos[(k, u2)]
                    s = f.norm(out.get(j, 0) + c * c2)
                    if s:
                        out[j] = s
                    else:
                        out.pop(j, None)
        return out

    def is_radical(self, x: Vector) -> bool:
        return all(self.alg.degree[self.elems[i][1]] > 0 for i in x)


@dataclass
class ResolutionStep:
    betti: tuple[int, ...]  # multiplicity of P(v) per vertex index
    summands: list[tuple[int, int]]  # (vertex, internal degree) per generator
    images: list[Vector]  # differential: image of each generator in the previous term


@dataclass
class Resolution:
    algebra: GradedAlgebra
    module_name: str
    steps: list[ResolutionStep]
    complete: bool
    step_cap: int
    checks: dict = field(default_factory=dict)

    @property
    def projective_dimension(self) -> int | None:
        return len(self.steps) - 1 if self.complete else None

    @property
    def status(self) -> str:
        if self.complete:
            return f"Complete(pd={self.projective_dimension})"
        return f"TruncatedAt({self.step_cap})"

    def betti_labels(self) -> list[dict[int, int]]:
        labels = self.algebra.quiver.labels
        return [{labels[v]: m for v, m in enumerate(s.betti) if m} for s in self.steps]

    def display(self) -> str:
        labels = self.algebra.quiver.labels
        terms = []
        for s in self.steps:
            parts = []
            for v, m in enumerate(s.betti):
                if m:
                    parts.append(f"P({labels[v]})" + (f"^⊕{m}" if m > 1 else ""))
            terms.append(" ⊕ ".join(parts) if parts else "0")
        chain = " → ".join(reversed(terms))
        head = "0 → " if self.complete else "… → "
        return f"{head}{chain} → {self.module_name} → 0"


def _generator_search(alg, proj: _Projective, omega: dict, f: Field) -> list[tuple[tuple, Vector]]:
    """Pick homogeneous elements of the syzygy that span its top."""
    rad: dict[tuple[int, int], Echelon] = {}
    arrows = [(a, alg.arrow_element(a.id)) for a in alg.quiver.arrows]
    for key, ech in omega.items():
        for x in ech.basis():
            for a, elem in arrows:
                if a.source != key[0]:
                    continue
                y = _times_vec(proj, x, elem, f)
                if y:
                    k2 = (a.target, key[1] + 1 if proj.graded else 0)
                    rad.setdefault(k2, Echelon(f)).add(y)
    gens = []
    for key in sorted(omega):
        span = rad.get(key)
        span = Echelon(f) if span is None else _copy(span)
        for x in omega[key].basis():
            if span.add(x):
                gens.append((key, x))
    return gens


def _times_vec(proj: _Projective, x: Vector, y: Vector, f: Field) -> Vector:
    out: Vector = {}
    for w, c in y.items():
        axpy(out, c, proj.times(x, w), f)
    return out


def _copy(e: Echelon) -> Echelon:
    c = Echelon(e.field)
    c.rows = {k: dict(v) for k, v in e.rows.items()}
    return c


def _kernel_blocks(new: _Projective, image_of, f: Field) -> dict:
    """Kernel of a map out of ``new`` given on basis pairs, blockwise."""
    omega: dict[tuple[int, int], Echelon] = {}
    for key, idxs in new.blocks.items():
        imgs = [image_of(*new.elems[i]) for i in idxs]
        vecs = kernel(imgs, f)
        if vecs:
            ech = omega[key] = Echelon(f)
            for vec in vecs:
                ech.add({idxs[j]: c for j, c in vec.items()})
    return omega


def minimal_resolution(alg: GradedAlgebra, m: Representation,
                       step_cap: int = DEFAULT_STEP_CAP, check: bool = True) -> Resolution:
    """Minimal projective resolution of ``m``, computing at most ``step_cap`` terms.

    The result is complete when a syzygy vanishes; otherwise the module has
    projective dimension at least ``step_cap``.
    """
    if step_cap < 1:
        raise ValueError("step cap must be positive")
    f = alg.field
    nv = alg.vertex_count
    graded = m.grading is not None
    steps: list[ResolutionStep] = []
    checks = {"d_squared_zero": True, "exact": True, "minimal": True}

    if m.total_dim == 0:
        return Resolution(alg, m.label(), [], True, step_cap, checks)

    gens0 = top_generators(m)
    summands = [(v, m.grading[v][min(vec)] if graded else 0) for v, vec in gens0]
    prev = _Projective(alg, summands, graded)
    betti = tuple(sum(1 for v, _ in gens0 if v == w) for w in range(nv))
    steps.append(ResolutionStep(betti, summands, [vec for _, vec in gens0]))
    offsets = [sum(m.dims[:v]) for v in range(nv)]

    def d_prev(k, u):
        # M's vertex spaces laid out on disjoint coordinate ranges
        v, vec = gens0[k]
        off = offsets[alg.target[u]]
        return {off + i: x for i, x in m.act(v, vec, u).items()}

    omega = _kernel_blocks(prev, d_prev, f)
    dim_omega = sum(len(e) for e in omega.values())
    if prev.dim - dim_omega != m.total_dim:
        checks["exact"] = False

    while omega:
        if len(steps) >= step_cap:
            return Resolution(alg, m.label(), steps, False, step_cap, checks)
        gens = _generator_search(alg, prev, omega, f)
        images = [x for _, x in gens]
        if not all(prev.is_radical(x) for x in images):
            checks["minimal"] = False
        if check:
            for x in images:
                acc: Vector = {}
                for i, c in x.items():
                    axpy(acc, c, d_prev(*prev.elems[i]), f)
                if acc:
                    checks["d_squared_zero"] = False
        summands = [key for key, _ in gens]
        new = _Projective(alg, summands, graded)
        betti = tuple(sum(1 for key, _ in gens if key[0] == w) for w in range(nv))
        steps.append(ResolutionStep(betti, summands, images))

        def d_new(k, u, images=images, prev=prev):
            return prev.times(images[k], u)

        new_omega = _kernel_blocks(new, d_new, f)
        dim_new = sum(len(e) for e in new_omega.values())
        if new.dim - dim_new != dim_omega:
            checks["exact"] = False
        prev, d_prev, omega, dim_omega = new, d_new, new_omega, dim_new

    return Resolution(alg, m.label(), steps, True, step_cap, checks)


@dataclass(frozen=True)
class Finite:
    value: int


@dataclass(frozen=True)
class AtLeast:
    value: int


def resolve_simple(alg: GradedAlgebra, i: int, step_cap: int = DEFAULT_STEP_CAP,
                   check: bool = True) -> Resolution:
    return minimal_resolution(alg, simple(alg, i), step_cap, check)


def global_dimension(alg: GradedAlgebra, step_cap: int = DEFAULT_STEP_CAP,
                     check: bool = True) -> tuple[Finite | AtLeast, list[Resolution]]:
    """Maximum projective dimension of the simples, or a lower bound."""
    resolutions = [resolve_simple(alg, i, step_cap, check) for i in range(alg.vertex_count)]
    if all(r.complete for r in resolutions):
        return Finite(max((r.projective_dimension for r in resolutions), default=0)), resolutions
    return AtLeast(step_cap), resolutions


def resolution_to_dict(res: Resolution, with_differentials: bool = False) -> dict:
    labels = res.algebra.quiver.labels
    f = res.algebra.field
    doc = {
        "version": SCHEMA_VERSION,
        "module": res.module_name,
        "status": {"kind": "complete" if res.complete else "truncated",
                   "pd": res.projective_dimension, "step_cap": res.step_cap},
        "steps": [{"betti": {str(labels[v]): b for v, b in enumerate(s.betti) if b}}
                  for s in res.steps],
        "display": res.display(),
        "checks": dict(sorted(res.checks.items())),
    }
    if with_differentials:
        for s, step in zip(doc["steps"], res.steps):
            s["differential"] = [
                [[i, *_nd(f.to_fraction(c))] for i, c in sorted(img.items())] for img in step.images
            ]
    return doc


def _nd(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def resolution_to_json(res: Resolution, with_differentials: bool = False) -> str:
    return json.dumps(resolution_to_dict(res, with_differentials), sort_keys=True, indent=2) + "\n"
