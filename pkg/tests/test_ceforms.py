from fractions import Fraction
from itertools import combinations

import pytest

from conftest import build
from liedual import ceforms, rootdatum, tduality
from liedual.ceforms import (
    AbelianAlgebra,
    InvariantForm,
    ce_differential,
    cartan_three_form,
    extended_root_form,
    is_closed,
    is_invariant,
    torus_fm_transform,
    wedge,
)
from liedual.chevalley import build_lie_algebra


def _sl2():
    d = build("A1:sc")
    L = build_lie_algebra(d)
    ri = L.simple_indices[0]
    neg = d.roots.index(tuple(-x for x in d.roots[ri]))
    return d, L, ri, neg


def test_wedge_of_a_one_form_with_itself_vanishes():
    _, L, ri, _ = _sl2()
    a = extended_root_form(L, ri)
    assert wedge(a, a).is_zero()


def test_wedge_on_a_torus():
    T = AbelianAlgebra(2)
    dx = InvariantForm(T, 1, {(0,): Fraction(1)})
    dy = InvariantForm(T, 1, {(1,): Fraction(1)})
    w = wedge(dx, dy)
    assert w.value_on_indices((0, 1)) == 1
    assert w.value_on_indices((1, 0)) == -1


def test_wedge_of_root_with_dual_root_in_product_context():
    pair = tduality.build_pair(build("A1:sc"))
    ri = pair.L.simple_indices[0]
    a = tduality.pullback_first(pair, extended_root_form(pair.L, ri))
    av = tduality.pullback_second(pair, extended_root_form(pair.Ldual, ri))
    w = wedge(a, av)
    h = pair.embed_left(pair.L.coroot_vector(ri))
    hv = pair.embed_right(pair.Ldual.coroot_vector(ri))
    assert w.evaluate(h, hv) == 4


def test_differential_on_abelian_algebra_is_zero():
    T = AbelianAlgebra(3)
    w = InvariantForm(T, 2, {(0, 1): Fraction(5), (1, 2): Fraction(-1)})
    assert ce_differential(w).is_zero()


def test_differential_of_extended_root_in_sl2():
    _, L, ri, neg = _sl2()
    da = ce_differential(extended_root_form(L, ri))
    xi, yi = L.index[("x", ri)], L.index[("x", neg)]
    assert da.value_on_indices((xi, yi)) == -2


@pytest.mark.parametrize("typ", ["A2:sc", "D4:sc", "A1xT1:sc"])
def test_d_squared_is_zero_on_one_form_basis(typ):
    L = build_lie_algebra(build(typ))
    for b in range(L.dim):
        e = InvariantForm(L, 1, {(b,): Fraction(1)})
        assert ce_differential(ce_differential(e)).is_zero()


def test_leibniz_rule_sample():
    L = build_lie_algebra(build("A2:sc"))
    a = extended_root_form(L, L.simple_indices[0])
    b = extended_root_form(L, L.simple_indices[1])
    lhs = ce_differential(wedge(a, b))
    rhs = wedge(ce_differential(a), b).sub(wedge(a, ce_differential(b)))
    assert lhs == rhs


def test_cartan_three_form_values_in_sl2():
    _, L, ri, neg = _sl2()
    H = cartan_three_form(L)
    hi, xi, yi = L.index[("h", 0)], L.index[("x", ri)], L.index[("x", neg)]
    assert H.value_on_indices((hi, xi, yi)) == 8
    assert H.tag == ceforms.TAG_CARTAN


def test_cartan_three_form_kills_the_radical():
    L = build_lie_algebra(build("A1xT1:sc"))
    H = cartan_three_form(L)
    zi = L.index[("z", 0)]
    assert all(zi not in key for key in H.terms)


def test_cartan_three_form_of_a_torus_is_zero():
    L = build_lie_algebra(build("T2"))
    assert cartan_three_form(L).is_zero()


@pytest.mark.parametrize("typ", ["A2:sc", "D4:sc", "B2:sc", "G2"])
def test_cartan_three_form_closed_and_invariant(typ):
    H = cartan_three_form(build_lie_algebra(build(typ)))
    assert is_closed(H)
    assert is_invariant(H)


def test_a_non_closed_form_is_detected():
    _, L, ri, _ = _sl2()
    # The dual of a root vector: d picks up -2 on (h, X).
    w = InvariantForm(L, 1, {(L.index[("x", ri)],): Fraction(1)})
    assert not is_closed(w)
    # And a non-closed 2-form one rank up.
    L2 = build_lie_algebra(build("A2:sc"))
    xi = L2.index[("x", L2.simple_indices[0])]
    w2 = InvariantForm(L2, 2, {tuple(sorted((L2.index[("h", 0)], xi))): Fraction(1)})
    assert not is_closed(w2)


def test_top_degree_forms_are_closed():
    L = build_lie_algebra(build("A1:sc"))
    w = InvariantForm(L, 3, {(0, 1, 2): Fraction(7)})
    assert is_closed(w)


def test_extended_root_form_values():
    d, L, ri, _ = _sl2()
    a = extended_root_form(L, ri)
    assert a.evaluate(L.coroot_vector(ri)) == 2
    for rj in range(d.nroots):
        assert a.evaluate(L.root_vector(rj)) == 0


@pytest.mark.parametrize("typ", ["A2:sc", "A1xT1:sc"])
def test_extended_root_form_matches_killing_formula(typ):
    d = build(typ)
    L = build_lie_algebra(d)
    for ri in range(d.nroots):
        a = extended_root_form(L, ri)
        h = L.coroot_vector(ri)
        khh = L.killing_form(h, h)
        for b in range(L.dim):
            e = [Fraction(int(i == b)) for i in range(L.dim)]
            assert a.evaluate(e) == 2 * L.killing_form(e, h) / khh


def test_torus_transform_first_order():
    T = AbelianAlgebra(1)
    one = InvariantForm(T, 0, {(): Fraction(1)})
    out = torus_fm_transform(one, [[Fraction(3)]])
    assert out.degree == 1 and out.terms == {(0,): Fraction(3)}


def test_torus_transform_degree_count():
    T = AbelianAlgebra(2)
    vol = InvariantForm(T, 2, {(0, 1): Fraction(1)})
    I = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert torus_fm_transform(vol, I).degree == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_torus_transform_degree_reversal_and_involutivity(n):
    T = AbelianAlgebra(n)
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n + 1):
        signs = set()
        for key in combinations(range(n), k):
            w = InvariantForm(T, k, {key: Fraction(1)})
            t1 = torus_fm_transform(w, I)
            assert t1.degree == n - k
            t2 = torus_fm_transform(t1, I)
            assert t2.degree == k
            assert t2.terms in ({key: Fraction(1)}, {key: Fraction(-1)})
            signs.add(t2.terms[key])
        assert len(signs) == 1  # one scalar per graded piece


def test_torus_transform_rejects_bad_input():
    with pytest.raises(ValueError):
        torus_fm_transform(
            InvariantForm(AbelianAlgebra(2), 0, {(): Fraction(1)}),
            [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]],
        )
    L = build_lie_algebra(build("A1:sc"))
    with pytest.raises(ValueError):
        torus_fm_transform(InvariantForm(L, 0, {(): Fraction(1)}), [[1]])


def test_tags_multiply_under_wedge():
    T = AbelianAlgebra(2)
    a = InvariantForm(T, 1, {(0,): Fraction(1)}, ceforms.TAG_CARTAN)
    b = InvariantForm(T, 1, {(1,): Fraction(1)}, ceforms.TAG_CARTAN)
    assert wedge(a, b).tag == ceforms.NormalizationTag(Fraction(1, 16), -4)


def test_form_serialization_schema():
    _, L, ri, _ = _sl2()
    obj = cartan_three_form(L).as_dict()
    assert set(obj) == {"degree", "tag", "terms"}
    assert obj["tag"] == {"rat": "-1/4", "pi_pow": -2}
    for t in obj["terms"]:
        assert set(t) == {"labels", "coeff"}
