"""Exact sparse linear algebra over the rationals or a prime field.

Vectors are plain dicts ``{column: nonzero value}``.  Column indices double
as the elimination order: a smaller column index is eliminated first, so a
caller who wants a particular pivot preference simply numbers columns in
that order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Vector = dict  # {int: scalar}


@dataclass(frozen=True)
class Field:
    """Scalar field: ``p == 0`` means the rationals, otherwise GF(p)."""

    p: int = 0

    @property
    def name(self) -> str:
        return "rational" if self.p == 0 else f"fp:{self.p}"

    def __call__(self, x) -> object:
        if self.p == 0:
            return Fraction(x)
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / x
        return pow(x, -1, self.p)

    def norm(self, x):
        return x % self.p if self.p else x

    def to_fraction(self, x) -> Fraction:
        # GF(p) values are reported by their symmetric representative.
        if self.p == 0:
            return x
        return Fraction(x - self.p if x > self.p // 2 else x)


RATIONAL = Field(0)


def parse_field(spec: str | None) -> Field:
    """Parse ``rational`` or ``fp:<prime>``."""
    if spec is None or spec == "" or spec == "rational":
        return RATIONAL
    if spec.startswith("fp:"):
        p = int(spec[3:])
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"fp:{p} is not a prime field")
        return Field(p)
    raise ValueError(f"unknown field {spec!r}; expected 'rational' or 'fp:<prime>'")


def field_from_env() -> Field:
    return parse_field(os.environ.get("QTWIST_FIELD"))


def axpy(y: Vector, a, x: Vector, field: Field) -> None:
    """In place ``y += a * x``."""
    p = field.p
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if p:
            s %= p
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(x: Vector, a, field: Field) -> Vector:
    if not a:
        return {}
    p = field.p
    if p:
        return {k: v * a % p for k, v in x.items()}
    return {k: v * a for k, v in x.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form of a span.

    Each stored row has a pivot equal to 1 and every other stored row is
    zero in that pivot column.
    """

    def __init__(self, field: Field = RATIONAL):
        self.field = field
        self.rows: dict[int, Vector] = {}  # pivot column -> row

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        """Remainder of ``v`` modulo the span (a copy, never ``v`` itself)."""
        v = dict(v)
        rows = self.rows
        for col in sorted(c for c in v if c in rows):
            a = v.get(col)
            if a:
                axpy(v, -a, rows[col], self.field)
        return v

    def add(self, v: Vector) -> bool:
        """Add ``v`` to the span; return whether the span grew."""
        r = self.reduce(v)
        if not r:
            return False
        field = self.field
        piv = min(r)
        r = scale(r, field.inv(r[piv]), field)
        for row in self.rows.values():
            a = row.get(piv)
            if a:
                axpy(row, -a, r, field)
        self.rows[piv] = r
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[Vector]:
        return [self.rows[c] for c in sorted(self.rows)]


def rref(vectors: Iterable[Vector], field: Field = RATIONAL) -> Echelon:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech


def rank(vectors: Iterable[Vector], field: Field = RATIONAL) -> int:
    return len(rref(vectors, field))


def kernel(images: list[Vector], field: Field = RATIONAL) -> list[Vector]:
    """Basis of ``{c : sum_i c_i images[i] = 0}`` as vectors indexed by i.

    Elimination tracks the combination producing each reduced row, so this is
    a single pass.  Each returned vector has a distinct largest index.
    """
    p = field.p
    piv_rows: dict[int, tuple[Vector, Vector]] = {}
    out: list[Vector] = []
    for i, img in enumerate(images):
        v = dict(img)
        comb: Vector = {i: 1 if p else Fraction(1)}
        while v:
            col = min(v)
            if col not in piv_rows:
                break
            prow, pcomb = piv_rows[col]
            a = v[col]
            axpy(v, -a, prow, field)
            axpy(comb, -a, pcomb, field)
        if v:
            col = min(v)
            s = field.inv(v[col])
            piv_rows[col] = (scale(v, s, field), scale(comb, s, field))
        else:
            out.append(comb)
    return out


def solve(rows: list[Vector], rhs: Vector, field: Field = RATIONAL) -> Vector | None:
    """Find coefficients ``c`` with ``sum_i c_i rows[i] == rhs``, or None."""
    p = field.p
    piv_rows: dict[int, tuple[Vector, Vector]] = {}
    for i, r in enumerate(rows):
        v = dict(r)
        comb: Vector = {i: 1 if p else Fraction(1)}
        while v:
            col = min(v)
            if col not in piv_rows:
                break
            prow, pcomb = piv_rows[col]
            a = v[col]
            axpy(v, -a, prow, field)
            axpy(comb, -a, pcomb, field)
        if v:
            col = min(v)
            s = field.inv(v[col])
            piv_rows[col] = (scale(v, s, field), scale(comb, s, field))
    v = dict(rhs)
    sol: Vector = {}
    while v:
        col = min(v)
        if col not in piv_rows:
            return None
        prow, pcomb = piv_rows[col]
        a = v[col]
        axpy(v, -a, prow, field)
        axpy(sol, a, pcomb, field)
    return sol


def dense_to_sparse(row) -> Vector:
    return {j: x for j, x in enumerate(row) if x}


def sparse_to_dense(v: Vector, n: int, zero=0) -> list:
    out = [zero] * n
    for k, x in v.items():
        out[k] = x
    return out


def det(matrix: list[list], field: Field = RATIONAL):
    """Determinant of a square matrix by fraction-exact elimination."""
    n = len(matrix)
    m = [[field(x) for x in row] for row in matrix]
    d = field(1)
    for c in range(n):
        r = next((r for r in range(c, n) if m[r][c]), None)
        if r is None:
            return field(0)
        if r != c:
            m[c], m[r] = m[r], m[c]
            d = field.norm(-d)
        piv = m[c][c]
        d = field.norm(d * piv)
        inv = field.inv(piv)
        for r in range(c + 1, n):
            f = field.norm(m[r][c] * inv)
            if f:
                m[r] = [field.norm(a - f * b) for a, b in zip(m[r], m[c])]
    return d
