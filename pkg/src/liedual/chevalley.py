"""Reductive Lie algebras from root data: Chevalley basis, bracket,
adjoint action, Killing form, and the structural identity checks.

Basis labels are tuples: ("z", k) for the radical block, ("h", i) for the
i-th simple coroot, ("x", ri) for the root vector of root index ri.
Structure constants are exact rationals; the sign convention comes from the
extraspecial-pair method and is certified post hoc by a full Jacobi sweep.
"""

from fractions import Fraction
from itertools import combinations

from . import exactlin, rootdatum
from .rootdatum import RootDatum, pair


class JacobiError(RuntimeError):
    """Raised when the constructed structure constants violate Jacobi."""


class ReductiveLieAlgebra:
    def __init__(self, datum, labels, table, radical_basis, simple_indices, coroot_coords):
        self.datum = datum
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.dim = len(labels)
        self.table = table                      # {(i, j) i<j: {k: Fraction}}
        self.radical_basis = radical_basis      # integer vectors in Lambda
        self.simple_indices = tuple(simple_indices)
        self.coroot_coords = coroot_coords      # root index -> coords in simple coroots
        self._killing = None

    # -- bracket ----------------------------------------------------------

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a sparse {index: coefficient} dict."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def brackets(self):
        """Iterate nonzero basis brackets as (i, j, {k: c}) with i < j."""
        for (i, j), out in self.table.items():
            yield i, j, out

    def bracket(self, x, y):
        """Bilinear extension of the basis table to coefficient vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vectors must have length dim")
        out = [Fraction(0)] * self.dim
        nz_x = [(i, c) for i, c in enumerate(x) if c]
        nz_y = [(j, c) for j, c in enumerate(y) if c]
        for i, a in nz_x:
            for j, b in nz_y:
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += a * b * c
        return out

    def ad_entries(self, i):
        """Sparse matrix of ad(e_i): {(row, col): coeff}."""
        out = {}
        for j in range(self.dim):
            for k, c in self.bracket_basis(i, j).items():
                out[(k, j)] = out.get((k, j), Fraction(0)) + c
        return out

    # -- Killing form -----------------------------------------------------

    def killing_matrix(self):
        """Exact trace form Tr(ad X ad Y) on the basis, cached."""
        if self._killing is None:
            ads = [self.ad_entries(i) for i in range(self.dim)]
            K = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                for j in range(i, self.dim):
                    s = Fraction(0)
                    for (r, c), v in ads[j].items():
                        w = ads[i].get((c, r))
                        if w is not None:
                            s += v * w
                    K[i][j] = K[j][i] = s
            self._killing = K
        return self._killing

    def killing_form(self, x, y):
        K = self.killing_matrix()
        out = Fraction(0)
        for i, a in enumerate(x):
            if not a:
                continue
            row = K[i]
            for j, b in enumerate(y):
                if b:
                    out += a * b * row[j]
        return out

    # -- coordinates ------------------------------------------------------

    def cartan_vector(self, t_vec):
        """Express a vector of Lambda (x) Q in the (z, h) basis, as a basis
        coefficient vector; raises if it is not in the Cartan span."""
        cols = [list(map(Fraction, z)) for z in self.radical_basis] + [
            [Fraction(x) for x in self.datum.coroots[i]] for i in self.simple_indices
        ]
        A = [[cols[c][r] for c in range(len(cols))] for r in range(self.datum.rank)]
        sol = exactlin.solve_exact(A, [Fraction(v) for v in t_vec])
        if sol is None:
            raise ValueError("vector outside the Cartan subalgebra")
        out = [Fraction(0)] * self.dim
        for c, v in enumerate(sol):
            out[c] = v
        return out

    def coroot_vector(self, root_index):
        """h_alpha as a basis coefficient vector."""
        out = [Fraction(0)] * self.dim
        nz = len(self.radical_basis)
        for s, c in enumerate(self.coroot_coords[root_index]):
            out[nz + s] = Fraction(c)
        return out

    def root_vector(self, root_index):
        out = [Fraction(0)] * self.dim
        out[self.index[("x", root_index)]] = Fraction(1)
        return out

    def root_value(self, root_index, basis_index):
        """alpha(e_b) for a Cartan-block basis element, 0 on root vectors."""
        lab = self.labels[basis_index]
        if lab[0] == "z":
            return 0
        if lab[0] == "h":
            return pair(self.datum.coroots[self.simple_indices[lab[1]]], self.datum.roots[root_index])
        return 0


# ---------------------------------------------------------------------------
# Structure constants


def _root_sum_sq(datum, i):
    """K(h_alpha, h_alpha) computed by the root-sum formula (exact int)."""
    return sum(pair(datum.coroots[i], r) ** 2 for r in datum.roots)


class _NTable:
    """Chevalley constants N_{a,b} for all root pairs with a+b a root.

    Positive-pair values are fixed by the extraspecial-pair method; mixed
    and negative pairs reduce through N_{-a,-b} = -N_{a,b} and the cyclic
    relation N_{a,b} K(h_c,h_c) = N_{b,c} K(h_a,h_a) for a+b+c = 0.
    """

    def __init__(self, datum, pos_indices, simple_indices):
        self.datum = datum
        self.by_vec = {datum.roots[i]: i for i in range(datum.nroots)}
        self.pos = set(datum.roots[i] for i in pos_indices)
        self.K = {datum.roots[i]: _root_sum_sq(datum, i) for i in range(datum.nroots)}
        # Simple-root coordinates for height and ordering.
        simple_mat = [[Fraction(x) for x in datum.roots[s]] for s in simple_indices]
        A = [[simple_mat[c][r] for c in range(len(simple_indices))] for r in range(datum.rank)]
        self.coords = {}
        for v in self.pos:
            sol = exactlin.solve_exact(A, [Fraction(x) for x in v])
            self.coords[v] = tuple(int(c) for c in sol)
        self.order = {
            v: (sum(self.coords[v]), self.coords[v]) for v in self.pos
        }
        self.table = {}
        self._fill()

    def _p(self, a, b):
        """Largest p with b - p a a root."""
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while cur in self.by_vec:
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        return p

    def _fill(self):
        positives = sorted(self.pos, key=lambda v: self.order[v])
        for gamma in positives:
            specials = sorted(
                (
                    (a, tuple(x - y for x, y in zip(gamma, a)))
                    for a in self.pos
                    if tuple(x - y for x, y in zip(gamma, a)) in self.pos
                    and self.order[a] < self.order[tuple(x - y for x, y in zip(gamma, a))]
                ),
                key=lambda ab: self.order[ab[0]],
            )
            if not specials:
                continue
            a1, b1 = specials[0]
            self._set(a1, b1, Fraction(self._p(a1, b1) + 1))
            for a, b in specials[1:]:
                self._derive(a, b, a1, b1, gamma)

    def _set(self, a, b, val):
        self.table[(a, b)] = val
        self.table[(b, a)] = -val

    def _derive(self, a, b, a1, b1, gamma):
        # Jacobi on (x_{a1}, x_{-a}, x_{-b}); all terms land in g_{-b1}.
        neg = lambda v: tuple(-x for x in v)
        t1 = Fraction(0)
        d = tuple(x - y for x, y in zip(a1, a))
        if d in self.by_vec:
            t1 = self.get(a1, neg(a)) * self.get(d, neg(b))
        t2 = Fraction(0)
        d2 = tuple(x - y for x, y in zip(a1, b))
        if d2 in self.by_vec:
            t2 = self.get(neg(b), a1) * self.get(d2, neg(a))
        # N(-gamma, a1) = N(a1, b1) K_gamma / K_{b1}  (cycle -gamma+a1+b1=0).
        coeff = self.table[(a1, b1)] * Fraction(self.K[gamma], self.K[b1])
        n_neg = -(t1 + t2) / coeff
        self._set(a, b, -n_neg)

    def get(self, a, b):
        """N_{a,b} for roots a, b with a+b a root."""
        s = tuple(x + y for x, y in zip(a, b))
        if s not in self.by_vec:
            raise ValueError("a+b is not a root")
        if (a, b) in self.table:
            return self.table[(a, b)]
        neg = lambda v: tuple(-x for x in v)
        if a not in self.pos and b not in self.pos:
            return -self.get(neg(a), neg(b))
        if a in self.pos and b in self.pos:
            raise KeyError((a, b))  # must already be tabulated
        if b in self.pos:
            return -self.get(b, a)
        # Mixed: a positive, b negative.  c = -a-b closes the cycle.
        c = neg(s)
        if s in self.pos:
            # (-b, -c) are positive with sum a.
            n_bc = -self.get(neg(b), neg(c))
            return n_bc * Fraction(self.K[a], self.K[c])
        # (c, a) are positive with sum -b.
        return self.get(c, a) * Fraction(self.K[b], self.K[c])


def build_lie_algebra(d: RootDatum, simple_indices=None) -> ReductiveLieAlgebra:
    """Construct the reductive Lie algebra of a valid root datum.

    The radical block is the integral kernel of the roots on Lambda; the
    semisimple block is built on the simple coroots and one root vector per
    root.  Jacobi is verified on all basis triples before returning.

    simple_indices optionally prescribes the simple system (root indices);
    the induced positive system must be a genuine chamber.
    """
    rep = rootdatum.validate(d)
    if not rep.ok:
        raise ValueError(f"invalid root datum: {rep.as_dict()}")

    if simple_indices is None:
        pos_indices, simple_indices = rootdatum.positive_system(d)
    else:
        simple_indices = list(simple_indices)
        pos_indices = _positive_from_simples(d, simple_indices)

    if d.nroots:
        radical_basis = exactlin.integer_kernel([list(r) for r in d.roots])
    else:
        radical_basis = [[1 if i == j else 0 for j in range(d.rank)] for i in range(d.rank)]

    ntab = _NTable(d, pos_indices, simple_indices) if d.nroots else None

    # Basis order: radical, simple coroots, root vectors (positives by
    # height/lex, then the matching negatives).
    pos_sorted = sorted(pos_indices, key=lambda i: ntab.order[d.roots[i]])
    neg_of = {}
    for i in pos_sorted:
        neg = tuple(-x for x in d.roots[i])
        neg_of[i] = next(j for j in range(d.nroots) if d.roots[j] == neg)
    root_order = pos_sorted + [neg_of[i] for i in pos_sorted]
    labels = (
        [("z", k) for k in range(len(radical_basis))]
        + [("h", i) for i in range(len(simple_indices))]
        + [("x", ri) for ri in root_order]
    )
    index = {lab: i for i, lab in enumerate(labels)}
    nz = len(radical_basis)
    ns = len(simple_indices)

    # Coroot coordinates in the simple-coroot basis.
    simple_coroots = [[Fraction(x) for x in d.coroots[s]] for s in simple_indices]
    A = [[simple_coroots[c][r] for c in range(ns)] for r in range(d.rank)]
    coroot_coords = {}
    for ri in root_order:
        sol = exactlin.solve_exact(A, [Fraction(x) for x in d.coroots[ri]])
        if sol is None:
            raise ValueError("coroot outside the span of simple coroots")
        coroot_coords[ri] = tuple(sol)

    table = {}

    def put(i, j, out):
        out = {k: v for k, v in out.items() if v}
        if not out:
            return
        if i < j:
            table[(i, j)] = out
        else:
            table[(j, i)] = {k: -v for k, v in out.items()}

    # [h, x_alpha] = alpha(h) x_alpha ; the radical brackets to zero.
    for s, si in enumerate(simple_indices):
        hi = nz + s
        for ri in root_order:
            v = pair(d.coroots[si], d.roots[ri])
            if v:
                put(hi, index[("x", ri)], {index[("x", ri)]: Fraction(v)})

    by_vec = {d.roots[i]: i for i in range(d.nroots)}
    for ri, rj in combinations(root_order, 2):
        a, b = d.roots[ri], d.roots[rj]
        s = tuple(x + y for x, y in zip(a, b))
        i, j = index[("x", ri)], index[("x", rj)]
        if all(x == 0 for x in s):
            # [x_alpha, x_{-alpha}] = h_alpha; orientation: alpha = roots[ri].
            out = {}
            for c, v in enumerate(coroot_coords[ri]):
                if v:
                    out[nz + c] = Fraction(v)
            put(i, j, out)
        elif s in by_vec:
            n = ntab.get(a, b)
            if n:
                put(i, j, {index[("x", by_vec[s])]: n})

    L = ReductiveLieAlgebra(d, labels, table, radical_basis, simple_indices, coroot_coords)
    bad = jacobi_witness(L)
    if bad is not None:
        raise JacobiError(f"Jacobi identity fails on basis triple {bad}")
    return L


def _positive_from_simples(d, simple_indices):
    """Positive root indices generated by a prescribed simple system."""
    simple_mat = [[Fraction(x) for x in d.roots[s]] for s in simple_indices]
    A = [[simple_mat[c][r] for c in range(len(simple_indices))] for r in range(d.rank)]
    pos = []
    for i in range(d.nroots):
        sol = exactlin.solve_exact(A, [Fraction(x) for x in d.roots[i]])
        if sol is None or any(v.denominator != 1 for v in sol):
            raise ValueError("prescribed simple set does not span the root lattice")
        if all(v >= 0 for v in sol) and any(v > 0 for v in sol):
            pos.append(i)
        elif not all(v <= 0 for v in sol):
            raise ValueError("prescribed simple set is not a simple system")
    if 2 * len(pos) != d.nroots:
        raise ValueError("prescribed simple set is not a simple system")
    return pos


def jacobi_witness(L: ReductiveLieAlgebra):
    """First basis triple violating Jacobi, or None."""
    dim = L.dim
    # Only triples meeting at least one nonzero bracket can fail.
    for i, j, k in combinations(range(dim), 3):
        acc = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            inner = L.bracket_basis(a, b)
            for m, cm in inner.items():
                for n, cn in L.bracket_basis(m, c).items():
                    acc[n] = acc.get(n, Fraction(0)) + cm * cn
        if any(v for v in acc.values()):
            return (i, j, k)
    return None


def verify_coroot_identity(L: ReductiveLieAlgebra):
    """Check alpha(h) K(h_a,h_a) = 2 K(h, h_a) for every root and every
    Cartan-block basis vector; returns the list of failing pairs."""
    failures = []
    nz = len(L.radical_basis)
    ns = len(L.simple_indices)
    for ri in range(L.datum.nroots):
        ha = L.coroot_vector(ri)
        kaa = L.killing_form(ha, ha)
        for b in range(nz + ns):
            hvec = [Fraction(0)] * L.dim
            hvec[b] = Fraction(1)
            lhs = Fraction(L.root_value(ri, b)) * kaa
            rhs = 2 * L.killing_form(hvec, ha)
            if lhs != rhs:
                failures.append((ri, L.labels[b]))
    return failures


# ---------------------------------------------------------------------------
# sl(n) matrix oracle


class SlnOracle:
    """Traceless-matrix realization of sl(n), 2 <= n <= 4.

    Basis: H_1..H_{n-1} (E_ii - E_{i+1,i+1}) then E_ij (i != j) ordered so
    positive root vectors (i < j) precede negatives, matching the Chevalley
    basis of the A_{n-1} simply-connected datum under h_i -> H_i and
    x_{e_i - e_j} -> E_ij.
    """

    def __init__(self, n):
        if not 2 <= n <= 4:
            raise ValueError("sl(n) oracle supports 2 <= n <= 4")
        self.n = n
        ij_pos = sorted(
            ((i, j) for i in range(n) for j in range(n) if i < j),
            key=lambda p: (p[1] - p[0], p),
        )
        self.pairs = ij_pos + [(j, i) for i, j in ij_pos]
        self.labels = [("h", i) for i in range(n - 1)] + [("e", p) for p in self.pairs]
        self.dim = len(self.labels)

    def matrix(self, b):
        n = self.n
        M = [[Fraction(0)] * n for _ in range(n)]
        lab = self.labels[b]
        if lab[0] == "h":
            i = lab[1]
            M[i][i] = Fraction(1)
            M[i + 1][i + 1] = Fraction(-1)
        else:
            i, j = lab[1]
            M[i][j] = Fraction(1)
        return M

    def _from_matrix(self, M):
        """Coordinates of a traceless matrix in the basis."""
        out = [Fraction(0)] * self.dim
        for k, (i, j) in enumerate(self.pairs):
            out[self.n - 1 + k] = M[i][j]
        # Diagonal part: partial sums give H-coordinates.
        acc = Fraction(0)
        for i in range(self.n - 1):
            acc += M[i][i]
            out[i] = acc
        return out

    def bracket(self, x, y):
        Mx = self._lincomb(x)
        My = self._lincomb(y)
        comm = [
            [
                sum(Mx[i][k] * My[k][j] - My[i][k] * Mx[k][j] for k in range(self.n))
                for j in range(self.n)
            ]
            for i in range(self.n)
        ]
        return self._from_matrix(comm)

    def _lincomb(self, x):
        M = [[Fraction(0)] * self.n for _ in range(self.n)]
        for b, c in enumerate(x):
            if c:
                Mb = self.matrix(b)
                for i in range(self.n):
                    for j in range(self.n):
                        M[i][j] += c * Mb[i][j]
        return M

    def killing_matrix(self):
        """K(X, Y) = 2n Tr(XY), the trace form of sl(n)."""
        K = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        mats = [self.matrix(b) for b in range(self.dim)]
        for a in range(self.dim):
            for b in range(a, self.dim):
                tr = sum(
                    mats[a][i][j] * mats[b][j][i]
                    for i in range(self.n)
                    for j in range(self.n)
                )
                K[a][b] = K[b][a] = 2 * self.n * tr
        return K


def sl_n_oracle(n) -> SlnOracle:
    return SlnOracle(n)


def sln_matching_killing(L: ReductiveLieAlgebra, oracle: SlnOracle):
    """Killing matrix of the Chevalley algebra of A_{n-1} (sc), re-indexed
    through the generator-matching map onto the oracle basis order."""
    n = oracle.n
    d = L.datum
    chain = _chain_order(L)
    # Each root of A_{n-1} is an interval sum of chain-ordered simple
    # roots: coords with c_k = 1 for a <= k < b give the matrix unit E_ab.
    perm = []
    for lab in oracle.labels:
        if lab[0] == "h":
            perm.append(L.index[("h", chain[lab[1]])])
        else:
            i, j = lab[1]
            target = None
            for ri in range(d.nroots):
                raw = _simple_coords(L, ri)
                coords = [raw[chain[k]] for k in range(len(raw))]
                lo = [k for k, c in enumerate(coords) if c == 1]
                hi = [k for k, c in enumerate(coords) if c == -1]
                if i < j and not hi and lo == list(range(i, j)):
                    target = ri
                    break
                if i > j and not lo and hi == list(range(j, i)):
                    target = ri
                    break
            perm.append(L.index[("x", target)])
    K = L.killing_matrix()
    return [[K[perm[a]][perm[b]] for b in range(oracle.dim)] for a in range(oracle.dim)]


def _chain_order(L):
    """Order the simple system of an A-type algebra along its Dynkin path."""
    d = L.datum
    ns = len(L.simple_indices)
    adj = {a: [] for a in range(ns)}
    for a in range(ns):
        for b in range(a + 1, ns):
            if pair(d.coroots[L.simple_indices[a]], d.roots[L.simple_indices[b]]):
                adj[a].append(b)
                adj[b].append(a)
    if ns == 1:
        return [0]
    ends = sorted(a for a in range(ns) if len(adj[a]) == 1)
    if len(ends) != 2 or any(len(v) > 2 for v in adj.values()):
        raise ValueError("simple system is not an A-type chain")
    chain = [ends[0]]
    while len(chain) < ns:
        nxt = [b for b in adj[chain[-1]] if b not in chain]
        chain.append(nxt[0])
    return chain


def _simple_coords(L, ri):
    d = L.datum
    simple_mat = [[Fraction(x) for x in d.roots[s]] for s in L.simple_indices]
    A = [[simple_mat[c][r] for c in range(len(L.simple_indices))] for r in range(d.rank)]
    sol = exactlin.solve_exact(A, [Fraction(x) for x in d.roots[ri]])
    return [int(v) for v in sol]


def structure_constant_dump(L: ReductiveLieAlgebra) -> dict:
    """Debug dump of the structure constants as JSON-ready data."""

    def name(lab):
        return f"{lab[0]}{lab[1]}"

    pairs = []
    for (i, j), out in sorted(L.table.items()):
        pairs.append(
            {
                "x": name(L.labels[i]),
                "y": name(L.labels[j]),
                "out": [[name(L.labels[k]), f"{v.numerator}/{v.denominator}"] for k, v in sorted(out.items())],
            }
        )
    return {"pairs": pairs}
