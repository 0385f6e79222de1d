from fractions import Fraction

import pytest

from conftest import build
from liedual import chevalley, rootdatum
from liedual.chevalley import build_lie_algebra


DIMS = {"A1:sc": 3, "A1:adj": 3, "A2:sc": 8, "B2:sc": 10, "G2": 14,
        "A3:adj": 15, "D4:sc": 28, "A1xT1:sc": 4, "T2": 2}


@pytest.mark.parametrize("typ,dim", sorted(DIMS.items()))
def test_dimension(typ, dim):
    assert build_lie_algebra(build(typ)).dim == dim


@pytest.mark.parametrize("typ", sorted(DIMS))
def test_jacobi_certified(typ):
    # build_lie_algebra raises on a Jacobi failure; re-assert explicitly.
    L = build_lie_algebra(build(typ))
    assert chevalley.jacobi_witness(L) is None


def test_sl2_relations():
    d = build("A1:sc")
    L = build_lie_algebra(d)
    ri = L.simple_indices[0]
    neg = d.roots.index(tuple(-x for x in d.roots[ri]))
    h = L.coroot_vector(ri)
    x = L.root_vector(ri)
    y = L.root_vector(neg)
    assert L.bracket(x, y) == h
    assert L.bracket(h, x) == [2 * v for v in x]
    assert L.bracket(h, y) == [-2 * v for v in y]
    assert L.killing_form(h, h) == 8


def test_a2_killing_value():
    L = build_lie_algebra(build("A2:sc"))
    h1 = [Fraction(0)] * L.dim
    h1[L.index[("h", 0)]] = Fraction(1)
    assert L.killing_form(h1, h1) == 12


def test_killing_form_kills_the_radical():
    L = build_lie_algebra(build("A1xT1:sc"))
    z = [Fraction(0)] * L.dim
    z[L.index[("z", 0)]] = Fraction(1)
    K = L.killing_matrix()
    zi = L.index[("z", 0)]
    assert all(K[zi][j] == 0 for j in range(L.dim))
    assert L.killing_form(z, z) == 0


@pytest.mark.parametrize("typ", ["A2:sc", "B2:sc", "G2", "D4:sc"])
def test_structure_constants_are_pm_p_plus_one(typ):
    d = build(typ)
    L = build_lie_algebra(d)
    by_vec = {d.roots[i]: i for i in range(d.nroots)}
    for (i, j), out in L.table.items():
        li, lj = L.labels[i], L.labels[j]
        if li[0] != "x" or lj[0] != "x":
            continue
        a, b = d.roots[li[1]], d.roots[lj[1]]
        s = tuple(x + y for x, y in zip(a, b))
        if s not in by_vec:
            continue
        (k, n), = out.items()
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while cur in by_vec:
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        assert n.denominator == 1 and abs(n) == p + 1, (typ, a, b)


@pytest.mark.parametrize("typ", sorted(DIMS))
def test_coroot_identity(typ):
    L = build_lie_algebra(build(typ))
    assert chevalley.verify_coroot_identity(L) == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_n_oracle_matches(n):
    oracle = chevalley.sl_n_oracle(n)
    L = build_lie_algebra(build(f"A{n-1}:sc"))
    assert chevalley.sln_matching_killing(L, oracle) == oracle.killing_matrix()


def test_sl_n_oracle_is_a_lie_algebra():
    orc = chevalley.sl_n_oracle(3)
    e = lambda b: [Fraction(int(i == b)) for i in range(orc.dim)]
    # Jacobi spot check in the matrix model.
    for a, b, c in [(0, 2, 5), (1, 3, 6), (2, 4, 7)]:
        lhs = orc.bracket(e(a), orc.bracket(e(b), e(c)))
        m1 = orc.bracket(e(b), orc.bracket(e(c), e(a)))
        m2 = orc.bracket(e(c), orc.bracket(e(a), e(b)))
        assert lhs == [-(u + v) for u, v in zip(m1, m2)]


def test_dual_algebra_shares_the_structure_table_for_ade():
    for typ in ("A2:sc", "D4:sc", "E6:sc"):
        d = build(typ)
        L = build_lie_algebra(d)
        Ld = build_lie_algebra(rootdatum.dualize(d), simple_indices=L.simple_indices)
        assert L.labels == Ld.labels
        assert L.table == Ld.table


def test_invalid_datum_is_rejected():
    d = build("A1:sc")
    broken = rootdatum.RootDatum(rank=1, roots=d.roots, coroots=((3,), (-3,)))
    with pytest.raises(ValueError):
        build_lie_algebra(broken)


def test_structure_constant_dump_schema():
    L = build_lie_algebra(build("A1:sc"))
    dump = chevalley.structure_constant_dump(L)
    assert set(dump) == {"pairs"}
    for rec in dump["pairs"]:
        assert set(rec) == {"x", "y", "out"}
        for lab, coeff in rec["out"]:
            num, den = coeff.split("/")
            int(num), int(den)
