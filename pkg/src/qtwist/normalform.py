"""Degreewise normal forms for graded quotients of path algebras.

For a presentation with homogeneous relations the degree-d piece is

    A_d = (A_{d-1} (x) arrows) / span{ b * r : b in A_{d-k}, r a relation of degree k }

so each degree is one exact rank computation on the products of the previous
basis with single arrows.  Candidate words are eliminated in descending
degree-lexicographic order (arrow ids order families x < y < z, then vertex
index), which makes the surviving non-pivot words the standard monomials.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import RATIONAL, Echelon, Field, Vector, axpy
from .presentations import (
    GroupData,
    PathExpr,
    Presentation,
    idempotent,
    validate_presentation,
)

SCHEMA_VERSION = 1


def default_degree_cap(pres: Presentation) -> int:
    """3n + 3 for a McKay presentation, otherwise a margin over the vertex count."""
    if pres.group is not None:
        return 3 * pres.group.n + 3
    return 3 * max(pres.quiver.vertex_count, 1) + 3


@dataclass
class GradedBasis:
    presentation: Presentation
    field: Field
    degree_cap: int
    paths: list[PathExpr] = field(default_factory=list)
    by_degree: list[list[int]] = field(default_factory=list)
    # (basis index, arrow id) -> reduced product in the next degree
    right: dict[tuple[int, int], Vector] = field(default_factory=dict)
    nilpotency: int | None = None

    @property
    def stabilized(self) -> bool:
        return self.nilpotency is not None

    @property
    def top_degree(self) -> int:
        return len(self.by_degree) - 1

    @property
    def total_dim(self) -> int:
        return len(self.paths)

    def dims(self) -> list[int]:
        return [len(b) for b in self.by_degree]

    def degree(self, i: int) -> int:
        return self.paths[i].length

    def block_dim(self, source: int, target: int, d: int) -> int:
        if d >= len(self.by_degree):
            return 0
        return sum(1 for i in self.by_degree[d]
                   if self.paths[i].source == source and self.paths[i].target == target)

    def times_arrow(self, vec: Vector, arrow: int) -> Vector:
        """Right multiplication of a reduced vector by one arrow."""
        out: Vector = {}
        a = self.presentation.quiver.arrows[arrow]
        for i, c in vec.items():
            p = self.paths[i]
            if p.target != a.source:
                continue
            if p.length >= self.top_degree and not self.stabilized:
                raise ValueError(
                    f"product leaves the computed range (degree cap {self.degree_cap})"
                )
            prod = self.right.get((i, arrow))
            if prod:
                axpy(out, c, prod, self.field)
        return out

    def reduce(self, p: PathExpr) -> Vector:
        """Normal form of a path as a combination of basis paths."""
        if self.stabilized and p.length >= self.nilpotency:
            return {}
        if p.length > self.top_degree:
            raise ValueError(
                f"path of length {p.length} exceeds the computed degree {self.top_degree}"
            )
        vec: Vector = {self.by_degree[0][p.source]: self.field(1)}
        for a in p.arrows:
            vec = self.times_arrow(vec, a)
            if not vec:
                break
        return vec

    def reduce_vector(self, vec: dict[PathExpr, object]) -> Vector:
        out: Vector = {}
        for p, c in vec.items():
            axpy(out, self.field(c), self.reduce(p), self.field)
        return out


def graded_basis(pres: Presentation, degree_cap: int | None = None,
                 field: Field = RATIONAL) -> GradedBasis:
    """Standard-monomial basis in each degree up to ``degree_cap``.

    Stops early (and records the nilpotency degree) at the first empty degree.
    """
    if degree_cap is None:
        degree_cap = default_degree_cap(pres)
    if degree_cap < 1:
        raise ValueError(f"degree cap must be at least 1, got {degree_cap}")
    report = validate_presentation(pres)
    if not report.valid:
        raise ValueError("invalid presentation: " + "; ".join(report.violations))
    for r, rel in enumerate(pres.relations):
        if rel.degree < 1:
            raise ValueError(f"relation {r} has degree 0; relations must lie in the arrow ideal")

    quiver = pres.quiver
    rels_by_degree: dict[int, list] = defaultdict(list)
    for rel in pres.relations:
        rels_by_degree[rel.degree].append(rel)

    gb = GradedBasis(pres, field, degree_cap)
    for v in range(quiver.vertex_count):
        gb.paths.append(idempotent(v))
    gb.by_degree.append(list(range(quiver.vertex_count)))
    if quiver.vertex_count == 0:
        gb.nilpotency = 0
        return gb

    out_arrows = defaultdict(list)
    for a in quiver.arrows:
        out_arrows[a.source].append(a)

    for d in range(1, degree_cap + 1):
        # candidate words b*a grouped into (source, target) blocks
        blocks: dict[tuple[int, int], list[tuple[tuple[int, ...], int, int]]] = defaultdict(list)
        for b in gb.by_degree[d - 1]:
            pb = gb.paths[b]
            for a in out_arrows[pb.target]:
                blocks[(pb.source, a.target)].append((pb.arrows + (a.id,), b, a.id))

        col_of: dict[tuple[int, int], tuple[tuple[int, int], int]] = {}
        for key, cands in blocks.items():
            cands.sort(reverse=True)
            for c, (_, b, a) in enumerate(cands):
                col_of[(b, a)] = (key, c)

        echelons = {key: Echelon(field) for key in blocks}
        for k, rels in rels_by_degree.items():
            if k > d:
                continue
            for rel in rels:
                src = rel.terms[0][1].source
                for b in gb.by_degree[d - k]:
                    pb = gb.paths[b]
                    if pb.target != src:
                        continue
                    row: dict = {}
                    key = None
                    for coeff, p in rel.terms:
                        vec = {b: field(1)}
                        for a in p.arrows[:-1]:
                            vec = gb.times_arrow(vec, a)
                        for b2, c2 in vec.items():
                            key, col = col_of[(b2, p.arrows[-1])]
                            s = field.norm(row.get(col, 0) + field(coeff) * c2)
                            if s:
                                row[col] = s
                            else:
                                row.pop(col, None)
                    if row:
                        echelons[key].add(row)

        new_basis: list[int] = []
        for key in sorted(blocks):
            cands = blocks[key]
            ech = echelons[key]
            standard = [c for c in range(len(cands)) if c not in ech.rows]
            local: dict[int, int] = {}
            for c in sorted(standard, key=lambda c: cands[c][0]):
                word, b, a = cands[c]
                idx = len(gb.paths)
                gb.paths.append(PathExpr(word, key[0], key[1]))
                new_basis.append(idx)
                local[c] = idx
            one = field(1)
            for c, (_, b, a) in enumerate(cands):
                if c in local:
                    gb.right[(b, a)] = {local[c]: one}
                else:
                    row = ech.rows[c]
                    red = {local[k]: field.norm(-x) for k, x in row.items() if k != c}
                    if red:
                        gb.right[(b, a)] = red
        gb.by_degree.append(new_basis)
        if not new_basis:
            gb.nilpotency = d
            break
    return gb


@dataclass(frozen=True)
class FiniteDim:
    total_dim: int
    nilpotency: int


@dataclass(frozen=True)
class Inconclusive:
    cap: int


def is_finite_dimensional(pres: Presentation, degree_cap: int | None = None,
                          field: Field = RATIONAL) -> FiniteDim | Inconclusive:
    gb = graded_basis(pres, degree_cap, field)
    if gb.stabilized:
        return FiniteDim(gb.total_dim, gb.nilpotency)
    return Inconclusive(gb.degree_cap)


class GradedAlgebra:
    """A finite-dimensional graded algebra with a path basis and product table."""

    def __init__(self, basis: GradedBasis):
        if not basis.stabilized:
            raise ValueError(
                f"algebra did not stabilize below degree {basis.degree_cap}; "
                "structure constants exist only for finite-dimensional algebras"
            )
        self.basis = basis
        self.presentation = basis.presentation
        self.quiver = basis.presentation.quiver
        self.field = basis.field
        self.paths = basis.paths
        self.dim = basis.total_dim
        self.nilpotency = basis.nilpotency
        self.vertex_count = self.quiver.vertex_count
        self.source = [p.source for p in self.paths]
        self.target = [p.target for p in self.paths]
        self.degree = [p.length for p in self.paths]
        self.from_vertex = [[i for i in range(self.dim) if self.source[i] == v]
                            for v in range(self.vertex_count)]
        self.to_vertex = [[i for i in range(self.dim) if self.target[i] == v]
                          for v in range(self.vertex_count)]
        self.products: dict[tuple[int, int], Vector] = {}
        for i in range(self.dim):
            for j in self.from_vertex[self.target[i]]:
                prod = self._compute(i, j)
                if prod:
                    self.products[(i, j)] = prod

    def _compute(self, i: int, j: int) -> Vector:
        if self.degree[i] + self.degree[j] >= self.nilpotency:
            return {}
        vec = {i: self.field(1)}
        for a in self.paths[j].arrows:
            vec = self.basis.times_arrow(vec, a)
            if not vec:
                break
        return vec

    def mul(self, i: int, j: int) -> Vector:
        return self.products.get((i, j), {})

    def mul_vec(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.products.get((i, j))
                if prod:
                    axpy(out, self.field.norm(a * b), prod, self.field)
        return out

    def idempotent(self, v: int) -> int:
        return self.basis.by_degree[0][v]

    def arrow_element(self, arrow_id: int) -> Vector:
        a = self.quiver.arrows[arrow_id]
        return self.basis.times_arrow({self.idempotent(a.source): self.field(1)}, arrow_id)

    def label(self, i: int) -> str:
        p = self.paths[i]
        if not p.arrows:
            return f"e_{self.quiver.labels[p.source]}"
        return " ".join(self.quiver.arrows[a].label for a in p.arrows)


def structure_constants(basis: GradedBasis) -> GradedAlgebra:
    return GradedAlgebra(basis)


def algebra(pres: Presentation, degree_cap: int | None = None,
            field: Field = RATIONAL) -> GradedAlgebra:
    return GradedAlgebra(graded_basis(pres, degree_cap, field))


def hilbert_row(group: GroupData, i: int, j: int, d: int) -> int:
    """Number of degree-d monomials x^a y^b z^c of weight congruent to i - j."""
    n = group.n
    w1, w2, w3 = group.weights
    target = (i - j) % n
    count = 0
    for a in range(d + 1):
        for b in range(d - a + 1):
            c = d - a - b
            if (a * w1 + b * w2 + c * w3) % n == target:
                count += 1
    return count


def algebra_to_dict(alg: GradedAlgebra) -> dict:
    f = alg.field

    def num_den(x):
        x = f.to_fraction(x)
        return [x.numerator, x.denominator]

    return {
        "version": SCHEMA_VERSION,
        "field": f.name,
        "basis": [{"source": alg.quiver.labels[p.source], "target": alg.quiver.labels[p.target],
                   "arrows": list(p.arrows)} for p in alg.paths],
        "degree_dims": alg.basis.dims(),
        "nilpotency": alg.nilpotency,
        "products": [
            [i, j, [[k, *num_den(c)] for k, c in sorted(prod.items())]]
            for (i, j), prod in sorted(alg.products.items())
        ],
    }


def algebra_to_json(alg: GradedAlgebra) -> str:
    return json.dumps(algebra_to_dict(alg), sort_keys=True, indent=2) + "\n"


def as_fraction(x, field: Field) -> Fraction:
    return field.to_fraction(x)
