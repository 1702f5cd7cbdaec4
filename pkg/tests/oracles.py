"""Independent brute-force oracles.

Nothing here imports the package.  The quotient algebra is rebuilt by
listing every path avoiding the deleted vertices and ranking the span of
all products p * r * q, with r a commutation relation.
"""

import itertools
from collections import defaultdict

from sympy import QQ, Matrix
from sympy.polys.matrices import DomainMatrix


def mckay_arrows(n, weights):
    # (family, index, source, target)
    return [(j, k, (k + weights[j]) % n, k) for j in range(3) for k in range(n)]


class PathsAvoiding(dict):
    """Degree -> list of (word, source, target), extended on demand."""

    def __init__(self, n, weights, V):
        super().__init__()
        self.arrows = [a for a in mckay_arrows(n, weights) if a[2] not in V and a[3] not in V]
        self[0] = [((), v, v) for v in range(n) if v not in V]

    def __missing__(self, d):
        prev = self[d - 1]
        self[d] = [(p + (a,), s, a[3]) for p, s, t in prev for a in self.arrows if a[2] == t]
        return self[d]


def quotient_dims(n, weights, V, max_degree):
    """``dims[d][(i, j)]`` = dimension of e_i B_d e_j for B = A / <e_V>."""
    V = set(V)
    paths = PathsAvoiding(n, weights, V)
    arrow = {(j, k): (j, k, (k + weights[j]) % n, k) for j in range(3) for k in range(n)}
    relations = []  # list of dict path -> coeff, each from s to s - w_j - w_l
    for s in range(n):
        for j, l in ((0, 1), (0, 2), (1, 2)):
            mid1, mid2 = (s - weights[j]) % n, (s - weights[l]) % n
            t = (s - weights[j] - weights[l]) % n
            rel = {}
            if s not in V and t not in V:
                if mid1 not in V:
                    rel[(arrow[(j, mid1)], arrow[(l, t)])] = 1
                if mid2 not in V:
                    w = (arrow[(l, mid2)], arrow[(j, t)])
                    rel[w] = rel.get(w, 0) - 1
            rel = {k: c for k, c in rel.items() if c}
            if rel:
                relations.append((s, t, rel))
    dims = []
    for d in range(max_degree + 1):
        blocks = defaultdict(list)
        for p, s, t in paths[d]:
            blocks[(s, t)].append(p)
        gens = defaultdict(list)
        for a in range(d - 1):
            b = d - 2 - a
            for (s, t, rel), (p, ps, pt) in itertools.product(relations, paths[a]):
                if pt != s:
                    continue
                for q, qs, qt in paths[b]:
                    if qs != t:
                        continue
                    gens[(ps, qt)].append({p + w + q: c for w, c in rel.items()})
        row = {}
        for key, words in blocks.items():
            index = {w: i for i, w in enumerate(words)}
            vecs = gens.get(key, [])
            r = 0
            if vecs:
                m = [[0] * len(words) for _ in vecs]
                for i, v in enumerate(vecs):
                    for w, c in v.items():
                        m[i][index[w]] += c
                r = DomainMatrix([[QQ(x) for x in rr] for rr in m], (len(m), len(words)), QQ).rank()
            if len(words) - r:
                row[key] = len(words) - r
        dims.append(row)
        if not row:
            break  # B is generated in degree 1, so it vanishes from here on
    return dims


def cartan(n, weights, V, max_degree):
    """Cartan matrix (rows: source) over the surviving vertices and its determinant."""
    dims = quotient_dims(n, weights, V, max_degree)
    if dims[-1]:
        raise ValueError("quotient has not vanished by the given degree")
    keep = [v for v in range(n) if v not in set(V)]
    c = [[sum(dims[d].get((i, j), 0) for d in range(len(dims))) for j in keep] for i in keep]
    return c, int(Matrix(c).det())


def four_run(n, V):
    """Complement of V has four cyclically consecutive residues (scan of all starts)."""
    return any(all((s + k) % n not in V for k in range(4)) for s in range(n))


def rotation_classes(n):
    seen = set()
    for r in range(1, n):
        for V in itertools.combinations(range(n), r):
            orbit = frozenset(frozenset((v + s) % n for v in V) for s in range(n))
            seen.add(orbit)
    return seen


def catalogue_counts(n):
    """Rotation classes of nonempty proper V split by the four-run rule."""
    classes = rotation_classes(n)
    bad = sum(1 for orbit in classes if four_run(n, next(iter(orbit))))
    return {"classes": len(classes), "no_four_run": len(classes) - bad, "four_run": bad,
            "subsets": 2 ** n - 2}


def monomial_count(n, weights, i, j, d):
    """Monomials x^a y^b z^c of degree d whose weight moves vertex i to vertex j."""
    return sum(1 for a in range(d + 1) for b in range(d + 1 - a)
               if (i - a * weights[0] - b * weights[1] - (d - a - b) * weights[2]) % n == j)
