"""Left-invariant differential forms as alternating multilinear forms on a
Lie algebra: wedge products, the invariant-form differential, the Cartan
3-form, extended-root 1-forms, and the flat-torus duality transform.

Forms are stored sparsely on sorted index subsets with exact rational
coefficients; a transcendental prefactor (a rational multiple of a power of
pi) rides along as a NormalizationTag and is never mixed into coefficients.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import exactlin


@dataclass(frozen=True)
class NormalizationTag:
    rat: Fraction = Fraction(1)
    pi_pow: int = 0

    def __mul__(self, other):
        return NormalizationTag(self.rat * other.rat, self.pi_pow + other.pi_pow)

    def as_dict(self):
        return {"rat": f"{self.rat.numerator}/{self.rat.denominator}", "pi_pow": self.pi_pow}


TAG_ONE = NormalizationTag()
TAG_CARTAN = NormalizationTag(Fraction(-1, 4), -2)


class AbelianAlgebra:
    """Abelian Lie algebra of a given dimension (flat-torus model)."""

    def __init__(self, dim, labels=None):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(("t", i) for i in range(dim))

    def bracket_basis(self, i, j):
        return {}

    def brackets(self):
        return iter(())


def _sort_sign(idx):
    """Sort an index tuple; return (sorted tuple, permutation sign) or
    (None, 0) when an index repeats."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return None, 0
    return tuple(idx), sign


class InvariantForm:
    """Degree-k alternating form, sparse over sorted k-subsets of basis
    indices.  Degree 0 is a single scalar stored under the empty tuple."""

    def __init__(self, algebra, degree, terms=None, tag=TAG_ONE):
        self.algebra = algebra
        self.degree = degree
        self.tag = tag
        clean = {}
        for key, val in (terms or {}).items():
            val = Fraction(val)
            if len(key) != degree:
                raise ValueError("term arity does not match the degree")
            if list(key) != sorted(set(key)):
                raise ValueError("term keys must be sorted and distinct")
            if val:
                clean[tuple(key)] = val
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def value_on_indices(self, idx):
        """Value on a tuple of basis indices (any order)."""
        key, sign = _sort_sign(idx)
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    def evaluate(self, *vectors):
        """Multilinear evaluation on coefficient vectors."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
        total = Fraction(0)
        def rec(pos, chosen, coeff):
            nonlocal total
            if pos == len(supports):
                total += coeff * self.value_on_indices(chosen)
                return
            for i, c in supports[pos]:
                rec(pos + 1, chosen + (i,), coeff * c)
        rec(0, (), Fraction(1))
        return total

    def scale(self, c):
        c = Fraction(c)
        return InvariantForm(
            self.algebra, self.degree, {k: c * v for k, v in self.terms.items()}, self.tag
        )

    def add(self, other):
        if other.algebra is not self.algebra or other.degree != self.degree:
            raise ValueError("can only add forms of equal degree on the same algebra")
        if other.tag != self.tag:
            raise ValueError("cannot add forms with different normalization tags")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return InvariantForm(self.algebra, self.degree, out, self.tag)

    def sub(self, other):
        return self.add(other.scale(-1))

    def __eq__(self, other):
        return (
            isinstance(other, InvariantForm)
            and self.algebra is other.algebra
            and self.degree == other.degree
            and self.tag == other.tag
            and self.terms == other.terms
        )

    def as_dict(self):
        labels = getattr(self.algebra, "labels", None)
        def name(i):
            if labels is not None:
                lab = labels[i]
                return f"{lab[0]}{lab[1]}"
            return str(i)
        return {
            "degree": self.degree,
            "tag": self.tag.as_dict(),
            "terms": [
                {"labels": [name(i) for i in key], "coeff": f"{v.numerator}/{v.denominator}"}
                for key, v in sorted(self.terms.items())
            ],
        }


def zero_form(algebra, degree, tag=TAG_ONE):
    return InvariantForm(algebra, degree, {}, tag)


def wedge(a: InvariantForm, b: InvariantForm) -> InvariantForm:
    if a.algebra is not b.algebra:
        raise ValueError("wedge requires forms on the same algebra")
    out = {}
    for ka, va in a.terms.items():
        sa = set(ka)
        for kb, vb in b.terms.items():
            if sa & set(kb):
                continue
            key, sign = _sort_sign(ka + kb)
            out[key] = out.get(key, Fraction(0)) + sign * va * vb
    return InvariantForm(a.algebra, a.degree + b.degree, out, a.tag * b.tag)


def ce_differential(w: InvariantForm) -> InvariantForm:
    """Invariant-form differential:
    dw(x_0..x_k) = sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..hat i..hat j..)."""
    alg = w.algebra
    if w.degree == 0:
        return zero_form(alg, 1, w.tag)
    # Candidate supports: replace one index of a term by a bracket pair.
    candidates = set()
    for i, j, outs in alg.brackets():
        for k in outs:
            for key in w.terms:
                if k in key:
                    cand = set(key)
                    cand.discard(k)
                    cand.add(i)
                    cand.add(j)
                    if len(cand) == w.degree + 1:
                        candidates.add(tuple(sorted(cand)))
    out = {}
    for cand in candidates:
        total = Fraction(0)
        for a, b in combinations(range(len(cand)), 2):
            rest = tuple(cand[t] for t in range(len(cand)) if t != a and t != b)
            sgn = (-1) ** (a + b)
            for k, c in alg.bracket_basis(cand[a], cand[b]).items():
                total += sgn * c * w.value_on_indices((k,) + rest)
        if total:
            out[cand] = total
    return InvariantForm(alg, w.degree + 1, out, w.tag)


def is_closed(w: InvariantForm) -> bool:
    return ce_differential(w).is_zero()


def is_invariant(w: InvariantForm) -> bool:
    """Infinitesimal invariance: sum_a w(.., [z, x_a], ..) = 0 for every
    basis generator z and every basis tuple."""
    alg = w.algebra
    for g in range(alg.dim):
        rev = {}
        for j in range(alg.dim):
            for k, c in alg.bracket_basis(g, j).items():
                rev.setdefault(k, {})[j] = c
        candidates = set()
        for key in w.terms:
            for k in key:
                for j in rev.get(k, ()):
                    cand = set(key)
                    cand.discard(k)
                    cand.add(j)
                    if len(cand) == w.degree:
                        candidates.add(tuple(sorted(cand)))
        for cand in candidates:
            total = Fraction(0)
            for a in range(len(cand)):
                for k, c in alg.bracket_basis(g, cand[a]).items():
                    replaced = cand[:a] + (k,) + cand[a + 1 :]
                    total += c * w.value_on_indices(replaced)
            if total:
                return False
    return True


def cartan_three_form(L) -> InvariantForm:
    """H(x,y,z) = K(x,[y,z]) on basis triples, carrying the -1/(4 pi^2)
    normalization as a tag.  Total antisymmetry is verified while filling."""
    K = L.killing_matrix()
    terms = {}
    for j, k, outs in L.brackets():
        vals = {}
        for i in range(L.dim):
            v = sum((c * K[i][m] for m, c in outs.items()), Fraction(0))
            if v:
                vals[i] = v
        for i, v in vals.items():
            if i == j or i == k:
                continue
            key, sign = _sort_sign((i, j, k))
            stored = sign * v
            prev = terms.get(key)
            if prev is None:
                terms[key] = stored
            elif prev != stored:
                raise ValueError(f"K(x,[y,z]) is not totally antisymmetric at {key}")
    return InvariantForm(L, 3, terms, TAG_CARTAN)


def extended_root_form(L, root_index) -> InvariantForm:
    """The root alpha as a 1-form: alpha on the Cartan block, zero on all
    root vectors and the radical."""
    terms = {}
    for b in range(len(L.radical_basis) + len(L.simple_indices)):
        v = L.root_value(root_index, b)
        if v:
            terms[(b,)] = Fraction(v)
    return InvariantForm(L, 1, terms)


# ---------------------------------------------------------------------------
# Flat-torus duality transform


def torus_fm_transform(w: InvariantForm, pairing) -> InvariantForm:
    """Form-level Fourier-Mukai transform on a flat torus.

    w lives on an abelian algebra t of dimension n; pairing is a
    nondegenerate n x n rational matrix coupling t to the dual torus t^dual.
    The transform wedges w with exp of the pairing 2-form on t + t^dual and
    integrates out t (extracts the coefficient of the full t-volume, with
    the ordered basis of t as positive orientation).  Degree k maps to n-k.
    """
    alg = w.algebra
    n = alg.dim
    for i, j, _ in alg.brackets():
        raise ValueError("torus transform requires an abelian base")
    if len(pairing) != n or any(len(row) != n for row in pairing):
        raise ValueError("pairing must be an n x n matrix")
    if exactlin.det_exact([[Fraction(x) for x in row] for row in pairing]) == 0:
        raise ValueError("pairing form is degenerate")

    product = AbelianAlgebra(2 * n)
    lifted = InvariantForm(product, w.degree, dict(w.terms), w.tag)
    f0 = InvariantForm(
        product,
        2,
        {(i, n + j): Fraction(pairing[i][j]) for i in range(n) for j in range(n) if pairing[i][j]},
    )
    # w ^ exp(F0): graded pieces of every degree, truncated at 2n.
    pieces = [lifted]
    power = lifted
    fact = 1
    for k in range(1, n + 1):
        power = wedge(power, f0)
        fact *= k
        if power.is_zero():
            break
        pieces.append(power.scale(Fraction(1, fact)))
    # Fiber integration: keep terms containing the whole t-block 0..n-1;
    # those indices are the leading block of every sorted key, so no sign.
    fiber = tuple(range(n))
    out = {}
    for piece in pieces:
        for key, v in piece.terms.items():
            if key[:n] == fiber:
                out[tuple(i - n for i in key[n:])] = v
    dual = AbelianAlgebra(n)
    return InvariantForm(dual, n - w.degree, out, w.tag)
