"""T-duality verification for reductive groups with Cartan 3-form flux.

Assembles the direct sum of a Lie algebra and the algebra of its Langlands
dual, the coroot-preserving isomorphism between them (ADE only), the
dualizing 2-form with its central correction, and runs every condition of
the T-duality definition as an exact algebraic identity.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import ceforms, chevalley, exactlin, rootdatum
from .ceforms import InvariantForm, TAG_CARTAN
from .chevalley import ReductiveLieAlgebra, build_lie_algebra
from .rootdatum import RootDatum, pair


class NotADEError(ValueError):
    """The coroot-preserving isomorphism only exists for ADE-type data."""


class ProductAlgebra:
    """Direct sum of two Lie algebras with the block-diagonal bracket."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.offset = left.dim
        self.dim = left.dim + right.dim
        self.labels = tuple(("L",) + lab for lab in left.labels) + tuple(
            ("R",) + lab for lab in right.labels
        )

    def bracket_basis(self, i, j):
        n = self.offset
        if i < n and j < n:
            return self.left.bracket_basis(i, j)
        if i >= n and j >= n:
            return {k + n: c for k, c in self.right.bracket_basis(i - n, j - n).items()}
        return {}

    def brackets(self):
        for i, j, out in self.left.brackets():
            yield i, j, out
        n = self.offset
        for i, j, out in self.right.brackets():
            yield i + n, j + n, {k + n: c for k, c in out.items()}


@dataclass
class ProductPair:
    datum: RootDatum
    dual_datum: RootDatum
    L: ReductiveLieAlgebra
    Ldual: ReductiveLieAlgebra
    product: ProductAlgebra
    spanning_set: list = field(default_factory=list)       # (name, vector)

    def embed_left(self, v):
        return list(v) + [Fraction(0)] * self.Ldual.dim

    def embed_right(self, v):
        return [Fraction(0)] * self.L.dim + list(v)


def good_isomorphism(L: ReductiveLieAlgebra, Ldual: ReductiveLieAlgebra):
    """Coroot-preserving isomorphism g -> g_dual for ADE data.

    With the dual algebra built on the same simple indices, the map sending
    each basis vector to its namesake (h_i to h_i^dual, x_alpha to
    x_alpha^dual, radical to the dual radical basis) does the job; it is
    certified as a bracket homomorphism by comparing structure tables.
    """
    if not rootdatum.is_ade(L.datum):
        witness = rootdatum.ade_symmetry_witness(L.datum)
        raise NotADEError(
            f"no coroot-preserving isomorphism for non-ADE datum (witness root pair {witness})"
        )
    if L.labels != Ldual.labels or L.table != Ldual.table:
        raise NotADEError("basis-wise identification is not a bracket homomorphism")
    return {lab: lab for lab in L.labels}


def build_pair(d: RootDatum) -> ProductPair:
    """Build g, g_dual on a shared simple system, check the isomorphism,
    and assemble the spanning set of the fiber-product tangent space."""
    L = build_lie_algebra(d)
    dd = rootdatum.dualize(d)
    Ldual = build_lie_algebra(dd, simple_indices=L.simple_indices) if d.nroots else build_lie_algebra(dd)
    good_isomorphism(L, Ldual)
    pairobj = ProductPair(d, dd, L, Ldual, ProductAlgebra(L, Ldual))

    S = []
    seen = set()

    def add(name, vec):
        key = tuple(vec)
        if key not in seen:
            seen.add(key)
            S.append((name, vec))

    for ri in range(d.nroots):
        add(f"h[{ri}]", pairobj.embed_left(L.coroot_vector(ri)))
        # X_xi + phi(X_xi); the Y-vector of xi is the X-vector of -xi.
        xv = [Fraction(0)] * pairobj.product.dim
        xv[L.index[("x", ri)]] = Fraction(1)
        xv[L.dim + Ldual.index[("x", ri)]] = Fraction(1)
        add(f"x+phix[{ri}]", xv)
        add(f"hdual[{ri}]", pairobj.embed_right(Ldual.coroot_vector(ri)))
    for k in range(len(L.radical_basis)):
        zv = [Fraction(0)] * pairobj.product.dim
        zv[L.index[("z", k)]] = Fraction(1)
        add(f"z[{k}]", zv)
        wv = [Fraction(0)] * pairobj.product.dim
        wv[L.dim + Ldual.index[("z", k)]] = Fraction(1)
        add(f"zdual[{k}]", wv)
    pairobj.spanning_set = S
    return pairobj


# ---------------------------------------------------------------------------
# The dualizing 2-form


def tautological_two_form(pairobj: ProductPair) -> InvariantForm:
    """F = sum over roots of (q* alpha) wedge (qdual* alpha-dual)."""
    P = pairobj.product
    n = P.offset
    terms = {}
    for ri in range(pairobj.datum.nroots):
        a = ceforms.extended_root_form(pairobj.L, ri)
        b = ceforms.extended_root_form(pairobj.Ldual, ri)
        for (i,), va in a.terms.items():
            for (j,), vb in b.terms.items():
                key = (i, n + j)
                terms[key] = terms.get(key, Fraction(0)) + va * vb
    return InvariantForm(P, 2, terms, TAG_CARTAN)


def poincare_correction(pairobj: ProductPair) -> InvariantForm:
    """F_P = sum_k z_k wedge z_k-dual over the radical basis, pairing each
    central basis vector with its namesake in the dual algebra."""
    P = pairobj.product
    n = P.offset
    terms = {}
    for k in range(len(pairobj.L.radical_basis)):
        i = pairobj.L.index[("z", k)]
        j = pairobj.Ldual.index[("z", k)]
        terms[(i, n + j)] = Fraction(1)
    return InvariantForm(P, 2, terms, TAG_CARTAN)


def pullback_first(pairobj, w: InvariantForm) -> InvariantForm:
    return InvariantForm(pairobj.product, w.degree, dict(w.terms), w.tag)


def pullback_second(pairobj, w: InvariantForm) -> InvariantForm:
    n = pairobj.product.offset
    return InvariantForm(
        pairobj.product,
        w.degree,
        {tuple(i + n for i in key): v for key, v in w.terms.items()},
        w.tag,
    )


def flux_residual_form(pairobj: ProductPair, scale=1) -> InvariantForm:
    """d(n F + n F_P) - (n q*H - n qdual*Hdual) as a stored 3-form on the
    full product; identically zero only after restriction to span(S)."""
    F = tautological_two_form(pairobj).add(poincare_correction(pairobj)).scale(scale)
    dF = ceforms.ce_differential(F)
    H = ceforms.cartan_three_form(pairobj.L).scale(scale)
    Hd = ceforms.cartan_three_form(pairobj.Ldual).scale(scale)
    return dF.sub(pullback_first(pairobj, H)).add(pullback_second(pairobj, Hd))


def _sweep_range(phi_terms, vectors, start, stop):
    """Evaluate the 3-form on all triples (u, v, w) with start <= u < stop,
    u < v < w; return the first nonzero triple or None."""
    supports = [{i: c for i, c in enumerate(v) if c} for v in vectors]
    nvec = len(vectors)
    for u in range(start, stop):
        su = supports[u]
        # Rows of the contraction iota_u Phi: row[j][k] = (iota_u Phi)(e_j, e_k).
        row = {}

        def put(j, k, x):
            rj = row.setdefault(j, {})
            rj[k] = rj.get(k, Fraction(0)) + x
            rk = row.setdefault(k, {})
            rk[j] = rk.get(j, Fraction(0)) - x

        for (a, b, c), v in phi_terms.items():
            if a in su:
                put(b, c, su[a] * v)
            if b in su:
                put(a, c, -su[b] * v)
            if c in su:
                put(a, b, su[c] * v)
        if not row:
            continue
        for v_i in range(u + 1, nvec):
            one = {}
            for j, cj in supports[v_i].items():
                for k, val in row.get(j, {}).items():
                    one[k] = one.get(k, Fraction(0)) + cj * val
            one = {k: v for k, v in one.items() if v}
            if not one:
                continue
            for w_i in range(v_i + 1, nvec):
                total = Fraction(0)
                for k, ck in supports[w_i].items():
                    t = one.get(k)
                    if t is not None:
                        total += ck * t
                if total:
                    return (u, v_i, w_i, total)
    return None


def check_flux_equation(pairobj: ProductPair, scale=1, jobs=1):
    """dF = q*H - qdual*Hdual on every triple from the spanning set."""
    t0 = time.monotonic()
    phi = flux_residual_form(pairobj, scale)
    vectors = [v for _, v in pairobj.spanning_set]
    names = [n for n, _ in pairobj.spanning_set]
    bad = None
    if jobs > 1 and len(vectors) > 4 * jobs:
        bad = _parallel_sweep(phi.terms, vectors, jobs)
    else:
        bad = _sweep_range(phi.terms, vectors, 0, len(vectors))
    if bad is None:
        return CheckRecord("flux_equation", True, None, None, time.monotonic() - t0)
    u, v, w, r = bad
    return CheckRecord(
        "flux_equation",
        False,
        [names[u], names[v], names[w]],
        f"{r.numerator}/{r.denominator}",
        time.monotonic() - t0,
    )


def _parallel_sweep(phi_terms, vectors, jobs):
    from concurrent.futures import ProcessPoolExecutor

    n = len(vectors)
    bounds = [(n * t) // jobs for t in range(jobs + 1)]
    hits = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futs = [
            ex.submit(_sweep_range, phi_terms, vectors, bounds[t], bounds[t + 1])
            for t in range(jobs)
        ]
        for f in futs:
            r = f.result()
            if r is not None:
                hits.append(r)
    return min(hits) if hits else None


def full_space_residual(pairobj: ProductPair):
    """The flux residual on a triple outside span(S): (h, X, Y) of the
    first root, embedded in the first factor only.  Nonzero whenever the
    group is nonabelian — the restriction to E0 is essential."""
    if pairobj.datum.nroots == 0:
        return None
    phi = flux_residual_form(pairobj)
    L = pairobj.L
    ri = L.simple_indices[0]
    neg = next(
        j
        for j in range(pairobj.datum.nroots)
        if pairobj.datum.roots[j] == tuple(-x for x in pairobj.datum.roots[ri])
    )
    h = pairobj.embed_left(L.coroot_vector(ri))
    x = pairobj.embed_left(L.root_vector(ri))
    y = pairobj.embed_left(L.root_vector(neg))
    return phi.evaluate(h, x, y)


# ---------------------------------------------------------------------------
# The remaining checks


@dataclass
class CheckRecord:
    name: str
    passed: bool
    witness: object = None
    residual: str = None
    seconds: float = 0.0

    def as_dict(self, timing=True):
        out = {"name": self.name, "pass": self.passed, "witness": self.witness, "residual": self.residual}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fiber_pairing_matrix(pairobj: ProductPair, include_correction=True, scale=1):
    """Matrix of F (+ F_P) on the Cartan bases of the two factors."""
    F = tautological_two_form(pairobj)
    if include_correction:
        F = F.add(poincare_correction(pairobj))
    F = F.scale(scale)
    L, Ld = pairobj.L, pairobj.Ldual
    n_cartan = len(L.radical_basis) + len(L.simple_indices)
    n = pairobj.product.offset
    return [
        [F.value_on_indices((a, n + b)) for b in range(n_cartan)]
        for a in range(n_cartan)
    ]


def check_nondegeneracy(pairobj: ProductPair):
    """det of the fiber pairing is nonzero, and the eigen-relation
    sum_alpha alpha(h_beta) h_alpha = (K(h_beta,h_beta)/2) h_beta holds
    for every coroot."""
    t0 = time.monotonic()
    M = fiber_pairing_matrix(pairobj)
    det = exactlin.det_exact(M) if M else Fraction(1)
    if det == 0:
        return CheckRecord("nondegeneracy", False, "fiber pairing matrix is singular", "0/1", time.monotonic() - t0)
    d = pairobj.datum
    L = pairobj.L
    for ri in range(d.nroots):
        hb = L.coroot_vector(ri)
        c = L.killing_form(hb, hb) / 2
        lhs = [Fraction(0)] * d.rank
        for rj in range(d.nroots):
            a_on_hb = pair(d.coroots[ri], d.roots[rj])
            for t in range(d.rank):
                lhs[t] += a_on_hb * d.coroots[rj][t]
        rhs = [c * x for x in d.coroots[ri]]
        if lhs != rhs:
            return CheckRecord(
                "nondegeneracy", False, f"eigen-relation fails for coroot {ri}", None, time.monotonic() - t0
            )
    return CheckRecord("nondegeneracy", True, None, _frac_str(det), time.monotonic() - t0)


def lattice_pairing_matrix(pairobj: ProductPair, scale=1):
    """Values of n(F0 + F_P) on the lattice bases of the two fibers: rows
    over the standard basis of the weight lattice, columns over its dual."""
    d = pairobj.datum
    F = tautological_two_form(pairobj).add(poincare_correction(pairobj)).scale(scale)
    n = pairobj.product.offset
    rows = []
    for a in range(d.rank):
        lam = [Fraction(1) if t == a else Fraction(0) for t in range(d.rank)]
        lam_vec = pairobj.embed_left(pairobj.L.cartan_vector(lam))
        row = []
        for b in range(d.rank):
            mu = [Fraction(1) if t == b else Fraction(0) for t in range(d.rank)]
            mu_vec = pairobj.embed_right(pairobj.Ldual.cartan_vector(mu))
            row.append(F.evaluate(lam_vec, mu_vec))
        rows.append(row)
    return rows


def check_integrality(pairobj: ProductPair, scale=1):
    t0 = time.monotonic()
    M = lattice_pairing_matrix(pairobj, scale)
    for a, row in enumerate(M):
        for b, v in enumerate(row):
            if v.denominator != 1:
                return CheckRecord(
                    "integrality", False, f"lattice pairing ({a},{b})", _frac_str(v), time.monotonic() - t0
                )
    return CheckRecord("integrality", True, None, None, time.monotonic() - t0)


def check_angle_positivity(pairobj: ProductPair):
    """alpha(h_beta) beta(h_alpha) lies in {0,...,4} for all root pairs."""
    t0 = time.monotonic()
    d = pairobj.datum
    for i in range(d.nroots):
        for j in range(d.nroots):
            v = pair(d.coroots[j], d.roots[i]) * pair(d.coroots[i], d.roots[j])
            if v < 0 or v > 4:
                return CheckRecord(
                    "angle_positivity", False, [i, j], _frac_str(v), time.monotonic() - t0
                )
    return CheckRecord("angle_positivity", True, None, None, time.monotonic() - t0)


def check_ade_symmetry(d: RootDatum):
    t0 = time.monotonic()
    w = rootdatum.ade_symmetry_witness(d)
    if w is None:
        return CheckRecord("ade_symmetry", True, None, None, time.monotonic() - t0)
    i, j = w
    return CheckRecord(
        "ade_symmetry",
        False,
        {
            "roots": [i, j],
            "alpha(h_beta)": _frac_str(pair(d.coroots[j], d.roots[i])),
            "beta(h_alpha)": _frac_str(pair(d.coroots[i], d.roots[j])),
        },
        None,
        time.monotonic() - t0,
    )


# ---------------------------------------------------------------------------
# Pipeline


@dataclass
class VerificationReport:
    datum: RootDatum
    dual: RootDatum = None
    phi: object = None
    checks: list = field(default_factory=list)
    scaled_n: list = field(default_factory=list)

    @property
    def overall(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    @staticmethod
    def _datum_dict(d):
        out = rootdatum.to_json_dict(d)
        out["type"] = rootdatum.classify_label(d)
        out["pi1"] = rootdatum.fundamental_group(d)
        return out

    def as_dict(self, timing=True):
        return {
            "datum": self._datum_dict(self.datum),
            "dual": self._datum_dict(self.dual) if self.dual is not None else None,
            "phi": self.phi,
            "checks": [c.as_dict(timing) for c in self.checks],
            "overall": self.overall,
            "scaled_n": list(self.scaled_n),
        }


def verify_all(d: RootDatum, scales=(), jobs=1) -> VerificationReport:
    """Run the full T-duality check pipeline on a root datum.

    Order: ADE symmetry (abort on failure), nondegeneracy, integrality,
    angle positivity, flux equation, then the flux and integrality checks
    again for each requested nonzero integer scale.
    """
    rep = rootdatum.validate(d)
    if not rep.ok:
        raise ValueError(f"invalid root datum: {rep.as_dict()}")
    report = VerificationReport(datum=rootdatum.canonicalize(d))
    sym = check_ade_symmetry(d)
    report.checks.append(sym)
    if not sym.passed:
        return report
    report.dual = rootdatum.canonicalize(rootdatum.dualize(d))
    pairobj = build_pair(d)
    report.phi = {
        f"{a[0]}{a[1]}": f"{b[0]}{b[1]}"
        for a, b in good_isomorphism(pairobj.L, pairobj.Ldual).items()
    }
    report.checks.append(check_nondegeneracy(pairobj))
    report.checks.append(check_integrality(pairobj))
    report.checks.append(check_angle_positivity(pairobj))
    report.checks.append(check_flux_equation(pairobj, jobs=jobs))
    for n in scales:
        if n == 0:
            raise ValueError("scale must be a nonzero integer")
        report.scaled_n.append(n)
        rec = check_flux_equation(pairobj, scale=n, jobs=jobs)
        rec.name = f"flux_equation[scale={n}]"
        report.checks.append(rec)
        rec = check_integrality(pairobj, scale=n)
        rec.name = f"integrality[scale={n}]"
        report.checks.append(rec)
    return report
