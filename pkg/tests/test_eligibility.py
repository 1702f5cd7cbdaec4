import itertools
import json
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import cartan, catalogue_counts, four_run

from qtwist.eligibility import (
    Caps,
    CriterionConflict,
    canonical,
    check_quotient,
    enumerate_quotients,
    four_successive,
    kernel_idempotency,
    longest_run,
    proper_subsets,
)
from qtwist.presentations import GroupData

G7 = GroupData(7, (1, 1, 5))
G5 = GroupData(5, (1, 1, 3))
G3 = GroupData(3, (1, 1, 1))


def test_four_successive_examples():
    assert four_successive(7, {1})
    assert not four_successive(7, {1, 5})
    assert not four_successive(7, set(range(7)))
    assert longest_run(7, {1}) == 6 and longest_run(7, {1, 5}) == 3


@pytest.mark.parametrize("n", [4, 5, 7, 9])
def test_four_successive_matches_scan(n):
    for r in range(n + 1):
        for V in itertools.combinations(range(n), r):
            assert four_successive(n, V) == four_run(n, set(V))


subsets7 = st.sets(st.integers(0, 6), min_size=1, max_size=6)


@given(subsets7, st.integers(0, 6))
@settings(max_examples=100, deadline=None)
def test_canonical_is_rotation_invariant_and_idempotent(V, s):
    c = canonical(7, V)
    assert canonical(7, c) == c
    assert canonical(7, {(v + s) % 7 for v in V}) == c
    assert four_successive(7, V) == four_successive(7, c)


@given(subsets7, subsets7)
@settings(max_examples=100, deadline=None)
def test_monotone_run_rule(V, W):
    U = V | W
    if len(U) < 7 and not four_successive(7, V):
        assert not four_successive(7, U)


def test_pinned_oracle_fixture_is_reproducible():
    text = resources.files("qtwist.fixtures").joinpath("catalogue_oracle.json").read_text()
    pinned = json.loads(text)["catalogues"]
    for n in (5, 7):
        counts = catalogue_counts(n)
        for key in ("classes", "no_four_run", "four_run", "subsets"):
            assert pinned[str(n)][key] == counts[key]
    assert len(proper_subsets(7, up_to_rotation=True)) == pinned["7"]["classes"]


def test_kronecker_report():
    rep = check_quotient(G3, {2})
    assert rep.eligible == "yes"
    assert rep.total_dim == 5 and rep.gldim["kind"] == "finite" and rep.gldim["value"] == 1
    assert rep.criterion is None and rep.criterion_agrees is None
    assert "RHom_A(ker p, -)" in rep.prediction and "e_2" in rep.prediction


def test_single_vertex_deleted_n7():
    rep = check_quotient(G7, {1})
    assert rep.criterion == {"four_successive": True, "predicts": "infinite"}
    assert rep.gldim["engine"] == {"kind": "at_least", "value": 12}
    assert rep.eligible == "no" and rep.criterion_agrees


def test_three_run_quotient_has_infinite_gldim():
    # the run-length rule says finite; the Cartan determinant says otherwise
    rep = check_quotient(G7, {1, 5})
    _, det = cartan(7, (1, 1, 5), (1, 5), 12)
    assert rep.cartan_det == det == 2
    assert rep.gldim["kind"] == "infinite" and rep.gldim["source"] == "cartan determinant"
    assert rep.criterion_agrees is False and rep.eligible == "no"
    with pytest.raises(CriterionConflict):
        check_quotient(G7, {1, 5}, strict=True)


def test_self_injective_prediction():
    rep = check_quotient(G7, (0, 1, 2, 4, 5))
    assert rep.self_injective["verdict"] == "yes"
    assert rep.self_injective["sigma"] == {"3": 3, "6": 6}
    assert "S(3)) = S(3)[-2]" in rep.prediction


def test_rejects_empty_and_full():
    with pytest.raises(ValueError):
        check_quotient(G5, set())
    with pytest.raises(ValueError):
        check_quotient(G5, range(5))
    with pytest.raises(ValueError):
        check_quotient(G5, {7})


def test_caps_validated_and_recorded():
    with pytest.raises(ValueError):
        Caps(step_cap=0)
    rep = check_quotient(G5, {0, 2}, Caps(step_cap=5, order_cap=4))
    assert rep.caps == {"degree_cap": 18, "step_cap": 5, "order_cap": 4}


def test_small_degree_cap_is_inconclusive():
    rep = check_quotient(G7, {1}, Caps(degree_cap=3))
    assert not rep.finite_dimensional and rep.eligible == "inconclusive"


def test_kernel_idempotency():
    for group, V, cap in [(G3, {2}, 6), (G7, {1, 5}, 8)]:
        kv = kernel_idempotency(group, V, cap)
        assert kv.holds and kv.numerical == "verified at truncation"
    assert kernel_idempotency(G3, set(), 3).holds


def test_engine_only_n3():
    cat = enumerate_quotients(G3)
    assert len(cat.reports) == 6
    assert all(r.criterion is None for r in cat.reports)
    assert all(r.eligible in ("yes", "no") for r in cat.reports)


def test_rotation_invariance_n5():
    cat = enumerate_quotients(G5)
    by_class = {}
    for r in cat.reports:
        key = (r.eligible, r.gldim["kind"], r.gldim.get("value"), r.total_dim,
               r.self_injective["verdict"], r.cartan_det)
        by_class.setdefault(r.canonical_V, set()).add(key)
    assert all(len(v) == 1 for v in by_class.values())


def test_enumerate_order_and_jobs():
    one = enumerate_quotients(G5, up_to_rotation=True)
    two = enumerate_quotients(G5, up_to_rotation=True, jobs=2)
    assert [r.V for r in one.reports] == sorted(r.V for r in one.reports)
    assert one.to_json() == two.to_json()
    md = one.to_markdown()
    assert md.count("\n| {") == 6 and "eligible:" in md
