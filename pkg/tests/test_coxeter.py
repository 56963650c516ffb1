from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxbridge.coxeter import (
    COXETER_MATRICES,
    D4_LISTED,
    GROUP_ORDERS,
    REFLECTION_COUNTS,
    check_coxeter_matrix,
    d4_from_listing,
    determinant,
    enumerate_group,
    get_group,
    minus_one_eigenspace_dim,
    reflections,
    standard_generators,
    trace,
)
from coxbridge.errors import MultipleClasses, OrderOverflow, UnsupportedLabel
from coxbridge.golden import GoldenInt, pidentity, pmatmul, pmatvec, to_pair_array

SMALL = ["A2", "A3", "H3", "A4", "D4"]


def order_of(m: np.ndarray, cap: int = 20) -> int:
    ident = pidentity(m.shape[-1])
    p = m
    for k in range(1, cap + 1):
        if np.array_equal(p, ident):
            return k
        p = pmatmul(p, m)
    raise AssertionError("order exceeds cap")


def involutions_with_reflection_trace(gt) -> set[int]:
    """Oracle: non-identity involutions whose trace is n - 2."""
    n = gt.rank
    sq = pmatmul(gt.elements, gt.elements)
    ident = pidentity(n)
    out = set()
    for i in range(1, gt.order):
        if np.array_equal(sq[i], ident) and trace(gt.elements[i]) == GoldenInt(n - 2):
            out.add(i)
    return out


@pytest.mark.parametrize("name", sorted(COXETER_MATRICES))
def test_generators_realize_coxeter_matrix(name):
    cm = COXETER_MATRICES[name]
    gens = standard_generators(cm)
    for i, si in enumerate(gens):
        assert determinant(si) == -1
        for j, sj in enumerate(gens):
            assert order_of(pmatmul(si, sj)) == cm[i][j]


def test_geometric_entries():
    h3 = standard_generators(COXETER_MATRICES["H3"])
    assert GoldenInt(h3[1][0, 1, 2], h3[1][1, 1, 2]) == GoldenInt(0, 1)  # m=5
    assert h3[0][0, 0, 1] == 1 and h3[0][0, 0, 0] == -1  # m=3, diagonal


@pytest.mark.parametrize("name", SMALL)
def test_reflections_match_oracle(name):
    gt = get_group(name)
    assert gt.order == GROUP_ORDERS[name]
    assert set(gt.reflections) == involutions_with_reflection_trace(gt)
    assert gt.n_reflections == REFLECTION_COUNTS[name]


@pytest.mark.parametrize("name", ["A3", "H3", "D4"])
def test_roots_are_negated(name):
    gt = get_group(name)
    for k in range(gt.n_reflections):
        r, v = gt.reflection_matrix(k), gt.roots[k]
        assert np.array_equal(pmatvec(r, v), -v)
        assert minus_one_eigenspace_dim(r) == 1


def test_first_reflection_is_first_generator():
    for name in ["A3", "H3", "D4", "H4"]:
        gt = get_group(name)
        assert gt.reflections[0] == gt.generators[0]


@pytest.mark.parametrize("name", ["H3", "D4"])
def test_conj_table_explicit(name):
    gt = get_group(name)
    for a in range(gt.n_reflections):
        ra = gt.reflection_matrix(a)
        for b in range(gt.n_reflections):
            prod = pmatmul(pmatmul(ra, gt.reflection_matrix(b)), ra)
            assert gt.lookup(prod) == gt.reflections[gt.conj[a, b]]


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_action_and_right_mul_explicit(data):
    gt = get_group(data.draw(st.sampled_from(["A3", "H3", "D4", "A4"])))
    g = data.draw(st.integers(0, gt.order - 1))
    k = data.draw(st.integers(0, gt.n_reflections - 1))
    m = gt.elements[g]
    # g^-1 by search: the element whose product with g is the identity
    ident = pidentity(gt.rank)
    prods = pmatmul(gt.elements, m)
    ginv = next(i for i in range(gt.order) if np.array_equal(prods[i], ident))
    conj = pmatmul(pmatmul(m, gt.reflection_matrix(k)), gt.elements[ginv])
    assert gt.lookup(conj) == gt.reflections[gt.action[g, k]]
    assert gt.lookup(pmatmul(m, gt.reflection_matrix(k))) == gt.right_mul[g, k]


def test_subgroup_orders():
    a3, h3 = get_group("A3"), get_group("H3")
    assert a3.subgroup_order([0]) == 2
    s = [a3.reflection_pos[g] for g in a3.generators]
    assert a3.subgroup_order(s[:2]) == 6
    assert a3.subgroup_order([s[0], s[2]]) == 4
    t = [h3.reflection_pos[g] for g in h3.generators]
    assert h3.subgroup_order(t[1:]) == 10
    assert h3.subgroup_order(t) == 120


def test_unsupported_label():
    with pytest.raises(UnsupportedLabel):
        check_coxeter_matrix([[1, 4], [4, 1]])
    with pytest.raises(ValueError):
        check_coxeter_matrix([[1, 3], [2, 1]])
    with pytest.raises(ValueError):
        check_coxeter_matrix([[2, 3], [3, 1]])


def test_multiple_classes_detected():
    gt = enumerate_group(standard_generators([[1, 2], [2, 1]]), "A1xA1", 4)
    with pytest.raises(MultipleClasses):
        reflections(gt)


def test_order_overflow():
    with pytest.raises(OrderOverflow):
        enumerate_group(standard_generators(COXETER_MATRICES["A3"]), "A3", 23)


def test_listed_d4_defect():
    mats = [to_pair_array(m) for m in D4_LISTED]
    ident = pidentity(4)
    squares = [np.array_equal(pmatmul(m, m), ident) for m in mats]
    assert squares == [True, True, False, False]
    with pytest.raises(OrderOverflow):
        enumerate_group(mats, "D4", 192)


def test_fixed_listing_is_standard_d4():
    gt = d4_from_listing()
    assert gt.order == 192
    assert gt.n_reflections == 12
    assert gt.gens_hash == get_group("D4").gens_hash
