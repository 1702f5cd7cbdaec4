import itertools

import pytest
from oracles import monomial_count, quotient_dims

from qtwist import order
from qtwist.linalg import Echelon
from qtwist.order import graded_ideal, ideal_square, ideal_square_test, truncate
from qtwist.presentations import GroupData, PathExpr


@pytest.fixture(scope="module")
def t3():
    return truncate(GroupData(3, (1, 1, 1)), 6)


def test_truncate_dims():
    assert truncate(GroupData(3, (1, 1, 1)), 4).dims() == [3, 9, 18, 30, 45]
    assert truncate(GroupData(7, (1, 1, 5)), 2).dims() == [7, 21, 42]
    assert truncate(GroupData(5, (1, 1, 3)), 0).dims() == [5]


def test_truncate_blocks_against_monomials():
    g = GroupData(5, (1, 1, 3))
    t = truncate(g, 5)
    for d in range(6):
        for i, j in itertools.product(range(5), repeat=2):
            assert t.basis.block_dim(i, j, d) == monomial_count(5, g.weights, i, j, d)


def test_truncate_oracle_mismatch_is_fatal(monkeypatch):
    monkeypatch.setattr(order, "hilbert_row", lambda g, i, j, d: 0)
    with pytest.raises(RuntimeError, match="monomial count"):
        truncate(GroupData(3, (1, 1, 1)), 1)


def test_ideal_degree_one_n3(t3):
    K = graded_ideal(t3, {2})
    assert K.dims()[0] == 1
    assert K.dims()[1] == 6
    assert t3.dims()[1] - K.dims()[1] == 3


def test_ideal_empty_and_full(t3):
    assert graded_ideal(t3, set()).dims() == [0] * 7
    assert graded_ideal(t3, {0, 1, 2}).dims() == t3.dims()


def _through(t, V, d):
    """Span of every reduced path of length d passing through V."""
    arrows = t.presentation.quiver.arrows
    ech = Echelon(t.field)
    words = [((), v, v) for v in range(t.group.n)]
    for _ in range(d):
        words = [(w + (a.id,), s, a.target) for w, s, e in words for a in arrows if a.source == e]
    for w, s, e in words:
        visits = {s} | {arrows[a].target for a in w}
        if visits & set(V):
            ech.add(t.basis.reduce(PathExpr(w, s, e)))
    return len(ech)


@pytest.mark.parametrize("V", [{0}, {1, 2}])
def test_ideal_equals_paths_through_v(t3, V):
    K = graded_ideal(t3, V)
    for d in range(5):
        assert K.dims()[d] == _through(t3, V, d)


@pytest.mark.parametrize("n,V,D", [(3, {2}, 5), (5, {0, 1}, 4), (5, {2}, 4)])
def test_literal_square_matches(n, V, D):
    t = truncate(GroupData(n, (1, 1, n - 2)), D)
    K = graded_ideal(t, V)
    fast = ideal_square(t, K)
    slow = ideal_square(t, K, literal=True)
    for a, b in zip(fast, slow):
        assert len(a) == len(b)
        assert all(a.contains(x) for x in b.basis())


def test_square_report_n3(t3):
    rep = ideal_square_test(t3, {2})
    assert rep.equal and rep.contained and rep.duality
    assert [r.dim_k for r in rep.rows][:3] == [1, 6, 18]
    assert rep.status == "verified at truncation"


def test_square_report_n7():
    t = truncate(GroupData(7, (1, 1, 5)), 8)
    rep = ideal_square_test(t, {1, 5})
    assert rep.equal and rep.duality
    doc = rep.to_dict()
    assert set(doc["table"]["3"]) >= {"dimA", "dimK", "dimK2", "equal"}


def test_duality_against_brute_force():
    t = truncate(GroupData(7, (1, 1, 5)), 6)
    V = (0, 1, 3)
    rep = ideal_square_test(t, V)
    oracle = quotient_dims(7, (1, 1, 5), V, 10)
    for r in rep.rows:
        if r.degree < len(oracle):
            assert r.dim_a - r.dim_k == sum(oracle[r.degree].values())
        else:
            assert r.dim_a == r.dim_k


def test_empty_v():
    t = truncate(GroupData(3, (1, 1, 1)), 3)
    rep = ideal_square_test(t, set())
    assert rep.equal and all(r.dim_k == r.dim_k2 == 0 for r in rep.rows)
    assert rep.duality is None


def test_bad_vertex():
    t = truncate(GroupData(3, (1, 1, 1)), 1)
    with pytest.raises(ValueError):
        graded_ideal(t, {3})
    with pytest.raises(ValueError):
        truncate(GroupData(3, (1, 1, 1)), -1)
