"""Degree-truncated computations inside the full McKay algebra R#G.

R#G is infinite dimensional, so everything here lives in degrees 0..D.  The
graded pieces are checked against the commutative monomial count before
use, and the ideal K = <e_V> and its square are built degree by degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .linalg import RATIONAL, Echelon, Field, Vector, axpy
from .normalform import GradedBasis, graded_basis, hilbert_row
from .presentations import GroupData, PathExpr, Presentation, delete_vertices, mckay_presentation

DEFAULT_ORDER_CAP = 8


@dataclass
class TruncatedAlgebra:
    group: GroupData
    presentation: Presentation
    degree_cap: int
    basis: GradedBasis
    _left: dict = field(default_factory=dict, repr=False)

    @property
    def field(self) -> Field:
        return self.basis.field

    def dims(self) -> list[int]:
        return self.basis.dims()[: self.degree_cap + 1]

    def degree_basis(self, d: int) -> list[int]:
        return self.basis.by_degree[d]

    def right_arrow(self, vec: Vector, arrow: int) -> Vector:
        return self.basis.times_arrow(vec, arrow)

    def left_arrow(self, arrow: int, vec: Vector) -> Vector:
        """``a * vec`` for a single arrow ``a``."""
        a = self.presentation.quiver.arrows[arrow]
        out: Vector = {}
        for u, c in vec.items():
            p = self.basis.paths[u]
            if p.source != a.target:
                continue
            prod = self._left.get((arrow, u))
            if prod is None:
                prod = self.basis.reduce(PathExpr((arrow,) + p.arrows, a.source, p.target))
                self._left[(arrow, u)] = prod
            axpy(out, c, prod, self.field)
        return out

    def mul(self, x: Vector, y: Vector) -> Vector:
        """Product of two homogeneous elements, staying within the cap."""
        f = self.field
        out: Vector = {}
        for w, c in y.items():
            prod = dict(x)
            for a in self.basis.paths[w].arrows:
                prod = self.right_arrow(prod, a)
                if not prod:
                    break
            axpy(out, c, prod, f)
        return out


def truncate(group: GroupData, degree_cap: int, field: Field = RATIONAL) -> TruncatedAlgebra:
    """Graded pieces of R#G up to ``degree_cap``, checked against the monomial count."""
    if degree_cap < 0:
        raise ValueError(f"degree cap must be non-negative, got {degree_cap}")
    pres = mckay_presentation(group)
    basis = graded_basis(pres, max(degree_cap, 1), field)
    n = group.n
    for d in range(degree_cap + 1):
        for i in range(n):
            for j in range(n):
                got = basis.block_dim(i, j, d)
                want = hilbert_row(group, i, j, d)
                if got != want:
                    raise RuntimeError(
                        f"graded piece e_{i} A_{d} e_{j} has dimension {got}, "
                        f"monomial count gives {want}"
                    )
    return TruncatedAlgebra(group, pres, degree_cap, basis)


@dataclass
class GradedIdeal:
    trunc: TruncatedAlgebra
    vertices: tuple[int, ...]
    pieces: list[Echelon]  # degree d -> echelon form over the global basis indices

    def dims(self) -> list[int]:
        return [len(p) for p in self.pieces]


def _check_vertices(trunc: TruncatedAlgebra, V) -> tuple[int, ...]:
    n = trunc.group.n
    vs = tuple(sorted(set(V)))
    for v in vs:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} is outside 0..{n - 1}")
    return vs


def graded_ideal(trunc: TruncatedAlgebra, V) -> GradedIdeal:
    """Degreewise span of the reduced paths through a vertex of ``V``.

    A path p e_v q of degree d either ends at v (q trivial) or is a path of
    degree d - 1 through v followed by an arrow, so
    K_d = K_{d-1} A_1 + A_d e_V.
    """
    vs = _check_vertices(trunc, V)
    f = trunc.field
    paths = trunc.basis.paths
    arrows = trunc.presentation.quiver.arrows
    pieces: list[Echelon] = []
    for d in range(trunc.degree_cap + 1):
        ech = Echelon(f)
        for u in trunc.degree_basis(d):
            if paths[u].target in vs:
                ech.add({u: f(1)})
        if d:
            for x in pieces[d - 1].basis():
                for a in arrows:
                    y = trunc.right_arrow(x, a.id)
                    if y:
                        ech.add(y)
        pieces.append(ech)
    return GradedIdeal(trunc, vs, pieces)


def ideal_square(trunc: TruncatedAlgebra, K: GradedIdeal, literal: bool = False) -> list[Echelon]:
    """Degree pieces of K^2 = sum over a + b = d of K_a K_b.

    K is generated by e_V, so K^2 = A e_V A e_V A is the ideal generated by
    e_V A e_V and satisfies L_d = L_{d-1} A_1 + A_1 L_{d-1} + e_V A_d e_V.
    ``literal`` forms every product K_a K_b instead, which is slow but makes
    no use of the generators.
    """
    f = trunc.field
    paths = trunc.basis.paths
    arrows = trunc.presentation.quiver.arrows
    vs = K.vertices
    out: list[Echelon] = []
    for d in range(trunc.degree_cap + 1):
        ech = Echelon(f)
        if literal:
            for a in range(d + 1):
                for x in K.pieces[a].basis():
                    for y in K.pieces[d - a].basis():
                        z = trunc.mul(x, y)
                        if z:
                            ech.add(z)
        else:
            for u in trunc.degree_basis(d):
                if paths[u].source in vs and paths[u].target in vs:
                    ech.add({u: f(1)})
            if d:
                for x in out[d - 1].basis():
                    for a in arrows:
                        for y in (trunc.right_arrow(x, a.id), trunc.left_arrow(a.id, x)):
                            if y:
                                ech.add(y)
        out.append(ech)
    return out


@dataclass
class DegreeRow:
    degree: int
    dim_a: int
    dim_k: int
    dim_k2: int
    contained: bool
    equal: bool
    dim_b: int | None = None


@dataclass
class IdealSquareReport:
    n: int
    weights: tuple[int, int, int]
    vertices: tuple[int, ...]
    degree_cap: int
    rows: list[DegreeRow]
    quotient_nilpotency: int | None = None

    @property
    def equal(self) -> bool:
        return all(r.equal for r in self.rows)

    @property
    def contained(self) -> bool:
        return all(r.contained for r in self.rows)

    @property
    def duality(self) -> bool | None:
        checked = [r for r in self.rows if r.dim_b is not None]
        if not checked:
            return None
        return all(r.dim_k + r.dim_b == r.dim_a for r in checked)

    @property
    def status(self) -> str:
        return "verified at truncation" if self.equal else "fails at truncation"

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "group": {"n": self.n, "weights": list(self.weights)},
            "V": list(self.vertices),
            "degree_cap": self.degree_cap,
            "table": {
                str(r.degree): {"dimA": r.dim_a, "dimK": r.dim_k, "dimK2": r.dim_k2,
                                "equal": r.equal, "contained": r.contained, "dimB": r.dim_b}
                for r in self.rows
            },
            "equal": self.equal,
            "duality": self.duality,
            "quotient_nilpotency": self.quotient_nilpotency,
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def ideal_square_test(trunc: TruncatedAlgebra, V, literal: bool = False,
                      with_quotient: bool = True) -> IdealSquareReport:
    """Compare (K^2)_d with K_d for K = <e_V> in every degree up to the cap.

    With ``with_quotient`` the quotient B = A/K is also computed so that
    dim K_d + dim B_d = dim A_d can be checked up to B's nilpotency degree.
    """
    K = graded_ideal(trunc, V)
    K2 = ideal_square(trunc, K, literal)
    dims_b = None
    nil_b = None
    vs = K.vertices
    if with_quotient and vs and len(vs) < trunc.group.n:
        quo = graded_basis(delete_vertices(trunc.presentation, vs), field=trunc.field)
        dims_b = quo.dims()
        nil_b = quo.nilpotency
    rows = []
    for d in range(trunc.degree_cap + 1):
        k, k2 = K.pieces[d], K2[d]
        contained = all(k.contains(x) for x in k2.basis())
        dim_b = None
        if dims_b is not None and (nil_b is None or d <= nil_b):
            dim_b = dims_b[d] if d < len(dims_b) else 0
        rows.append(DegreeRow(d, len(trunc.degree_basis(d)), len(k), len(k2),
                              contained, contained and len(k) == len(k2), dim_b))
    g = trunc.group
    return IdealSquareReport(g.n, g.weights, vs, trunc.degree_cap, rows, nil_b)
