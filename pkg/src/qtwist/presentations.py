"""Quivers with relations and the McKay presentation of R#G for cyclic G.

Paths compose left to right: the word ``a b`` means "a then b", so the
target of ``a`` must equal the source of ``b``.  Vertex idempotents are the
length-zero paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

FAMILIES = ("x", "y", "z")
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GroupData:
    """Cyclic group of order ``n`` acting on C^3 with the given weights."""

    n: int
    weights: tuple[int, int, int]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"group order must be positive, got {self.n}")
        if len(self.weights) != 3:
            raise ValueError(f"need three weights, got {self.weights!r}")
        w = tuple(int(x) % self.n for x in self.weights)
        if sum(w) % self.n:
            raise ValueError(
                f"weights {tuple(self.weights)} do not sum to 0 mod {self.n}; "
                "the group is not inside SL(3)"
            )
        object.__setattr__(self, "weights", w)

    def in_criterion_family(self) -> bool:
        """Odd n > 3 with weights (1, 1, n - 2)."""
        n = self.n
        return n > 3 and n % 2 == 1 and self.weights == (1, 1, n - 2)


@dataclass(frozen=True)
class Arrow:
    id: int
    source: int
    target: int
    family: str
    index: int

    @property
    def label(self) -> str:
        return f"{self.family}_{self.index}"


@dataclass(frozen=True)
class Quiver:
    """Vertices are ``0..vertex_count-1``; ``labels`` keeps the original names."""

    vertex_count: int
    arrows: tuple[Arrow, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.vertex_count)))

    def index_of(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"vertex {label} is not in the quiver {self.labels}") from None

    def arrows_from(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrow_by_label(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)


@dataclass(frozen=True)
class PathExpr:
    arrows: tuple[int, ...]
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)


def idempotent(v: int) -> PathExpr:
    return PathExpr((), v, v)


def path(quiver: Quiver, arrow_ids: Sequence[int], start: int | None = None) -> PathExpr:
    """Build a checked path from arrow ids (``start`` is needed only when empty)."""
    if not arrow_ids:
        if start is None:
            raise ValueError("an empty path needs an explicit vertex")
        return idempotent(start)
    arrows = [quiver.arrows[i] for i in arrow_ids]
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise ValueError(
                f"{a.label} ends at {a.target} but {b.label} starts at {b.source}"
            )
    return PathExpr(tuple(arrow_ids), arrows[0].source, arrows[-1].target)


def compose_paths(p: PathExpr, q: PathExpr) -> PathExpr:
    """``p`` then ``q``."""
    if p.target != q.source:
        raise ValueError(
            f"cannot compose: first path ends at vertex {p.target}, "
            f"second starts at vertex {q.source}"
        )
    return PathExpr(p.arrows + q.arrows, p.source, q.target)


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[Fraction, PathExpr], ...]

    @property
    def degree(self) -> int:
        return self.terms[0][1].length if self.terms else 0


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    group: GroupData | None = None
    deleted: tuple[int, ...] = ()
    name: str = ""


def mckay_presentation(group: GroupData) -> Presentation:
    """McKay quiver of ``group`` with its commutation relations.

    Arrow ``a^(j)_k`` runs from ``k + w_j`` to ``k``.  For each target ``t`` and
    each pair of families ``j < l`` there is one relation
    ``a^(j)_{t+w_l} a^(l)_t - a^(l)_{t+w_j} a^(j)_t``.
    """
    n, w = group.n, group.weights
    arrows = []
    for j, fam in enumerate(FAMILIES):
        for k in range(n):
            arrows.append(Arrow(j * n + k, (k + w[j]) % n, k, fam, k))
    quiver = Quiver(n, tuple(arrows))

    def a(j: int, k: int) -> int:
        return j * n + k % n

    one = Fraction(1)
    relations = []
    for t in range(n):
        for j, l in ((0, 1), (0, 2), (1, 2)):
            p = path(quiver, (a(j, t + w[l]), a(l, t)))
            q = path(quiver, (a(l, t + w[j]), a(j, t)))
            relations.append(Relation(((one, p), (-one, q))))
    return Presentation(quiver, tuple(relations), group=group, deleted=())


def delete_vertices(pres: Presentation, vertices: Iterable[int]) -> Presentation:
    """Presentation of the quotient by the idempotents at ``vertices``.

    ``vertices`` are given by label.  Terms passing through a deleted vertex
    are dropped from each relation; a relation losing every term disappears.
    """
    q = pres.quiver
    drop = {q.index_of(v) for v in vertices if v not in pres.deleted}
    if not drop:
        return pres
    if len(drop) == q.vertex_count:
        raise ValueError("cannot delete every vertex: the quotient would be zero")

    keep = [v for v in range(q.vertex_count) if v not in drop]
    new_index = {v: i for i, v in enumerate(keep)}
    arrow_map = {}
    arrows = []
    for a in q.arrows:
        if a.source in new_index and a.target in new_index:
            arrow_map[a.id] = len(arrows)
            arrows.append(Arrow(len(arrows), new_index[a.source], new_index[a.target],
                                a.family, a.index))
    quiver = Quiver(len(keep), tuple(arrows), tuple(q.labels[v] for v in keep))

    relations = []
    for rel in pres.relations:
        collected: dict[PathExpr, Fraction] = {}
        for c, p in rel.terms:
            if p.source in drop or any(x not in arrow_map for x in p.arrows):
                continue
            np_ = PathExpr(tuple(arrow_map[x] for x in p.arrows),
                           new_index[p.source], new_index[p.target])
            collected[np_] = collected.get(np_, 0) + c
        terms = tuple((c, p) for p, c in collected.items() if c)
        if terms:
            relations.append(Relation(terms))

    deleted = tuple(sorted(set(pres.deleted) | {q.labels[v] for v in drop}))
    return Presentation(quiver, tuple(relations), group=pres.group, deleted=deleted,
                        name=pres.name)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_presentation(pres: Presentation) -> ValidationReport:
    report = ValidationReport()
    q = pres.quiver
    bad = report.violations
    if len(q.labels) != q.vertex_count:
        bad.append(f"quiver has {q.vertex_count} vertices but {len(q.labels)} labels")
    for pos, a in enumerate(q.arrows):
        if a.id != pos:
            bad.append(f"arrow {a.label} has id {a.id}, expected {pos}")
        if not (0 <= a.source < q.vertex_count and 0 <= a.target < q.vertex_count):
            bad.append(f"arrow {a.label} has endpoint outside 0..{q.vertex_count - 1}")
    n_arrows = len(q.arrows)
    for r, rel in enumerate(pres.relations):
        if not rel.terms:
            bad.append(f"relation {r}: no terms")
            continue
        ends = set()
        lengths = set()
        for c, p in rel.terms:
            if not c:
                bad.append(f"relation {r}: zero coefficient")
            lengths.add(p.length)
            ends.add((p.source, p.target))
            if any(not 0 <= x < n_arrows for x in p.arrows):
                bad.append(f"relation {r}: unknown arrow id in {p.arrows}")
                continue
            if p.arrows:
                arrows = [q.arrows[x] for x in p.arrows]
                if arrows[0].source != p.source or arrows[-1].target != p.target:
                    bad.append(f"relation {r}: path endpoints do not match its arrows")
                for a, b in zip(arrows, arrows[1:]):
                    if a.target != b.source:
                        bad.append(f"relation {r}: {a.label} then {b.label} is not a path")
            elif p.source != p.target:
                bad.append(f"relation {r}: empty path with distinct endpoints")
        if len(ends) > 1:
            bad.append(f"relation {r}: paths are not parallel {sorted(ends)}")
        if len(lengths) > 1:
            bad.append(f"relation {r}: not homogeneous, lengths {sorted(lengths)}")
    return report


def is_mckay_shaped(pres: Presentation) -> bool:
    """Every relation a two-term +1/-1 difference of length-2 paths."""
    for rel in pres.relations:
        if len(rel.terms) != 2 or sorted(c for c, _ in rel.terms) != [-1, 1]:
            return False
        if any(p.length != 2 for _, p in rel.terms):
            return False
    return True


# -- serialization -----------------------------------------------------------

def _frac(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def presentation_to_dict(pres: Presentation) -> dict:
    q = pres.quiver
    g = pres.group
    return {
        "version": SCHEMA_VERSION,
        "name": pres.name,
        "n": g.n if g else None,
        "weights": list(g.weights) if g else None,
        "vertices": list(q.labels),
        "arrows": [
            {"id": a.id, "src": q.labels[a.source], "tgt": q.labels[a.target],
             "family": a.family, "index": a.index}
            for a in q.arrows
        ],
        "relations": [
            [[*_frac(c), list(p.arrows)] for c, p in rel.terms] for rel in pres.relations
        ],
        "deleted": list(pres.deleted),
    }


def presentation_from_dict(doc: dict) -> Presentation:
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported presentation version {doc.get('version')!r}")
    labels = tuple(doc["vertices"])
    index = {v: i for i, v in enumerate(labels)}
    arrows = tuple(
        Arrow(a["id"], index[a["src"]], index[a["tgt"]], a["family"], a["index"])
        for a in doc["arrows"]
    )
    quiver = Quiver(len(labels), arrows, labels)
    relations = []
    for rel in doc["relations"]:
        terms = []
        for num, den, ids in rel:
            if not ids:
                raise ValueError("relation terms must be paths of positive length")
            terms.append((Fraction(num, den), path(quiver, ids)))
        relations.append(Relation(tuple(terms)))
    group = GroupData(doc["n"], tuple(doc["weights"])) if doc.get("n") else None
    return Presentation(quiver, tuple(relations), group=group,
                        deleted=tuple(doc.get("deleted", ())), name=doc.get("name", ""))


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def presentation_to_json(pres: Presentation) -> str:
    return dumps(presentation_to_dict(pres))


def presentation_from_json(text: str) -> Presentation:
    return presentation_from_dict(json.loads(text))


_EDGE_STYLE = {"x": "solid", "y": "dashed", "z": "dotted"}


def to_dot(pres: Presentation) -> str:
    q = pres.quiver
    lines = ["digraph quiver {"]
    for v in q.labels:
        lines.append(f'  v{v} [label="{v}"];')
    for a in q.arrows:
        style = _EDGE_STYLE.get(a.family, "solid")
        lines.append(f'  v{q.labels[a.source]} -> v{q.labels[a.target]} '
                     f'[label="{a.label}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
