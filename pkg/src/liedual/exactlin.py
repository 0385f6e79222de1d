"""Exact rational linear algebra over arbitrary-precision integers.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator).
Matrices and vectors are plain lists; nothing here ever rounds.
"""

from fractions import Fraction
from math import gcd, lcm

Scalar = Fraction


def identity(n):
    """n x n identity matrix with Fraction entries."""
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_vec(A, v):
    if A and len(A[0]) != len(v):
        raise ValueError("dimension mismatch in mat_vec")
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


def mat_mul(A, B):
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in mat_mul")
    n = len(B[0]) if B else 0
    return [
        [sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(n)]
        for i in range(len(A))
    ]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def rref(M):
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    R = [[Fraction(x) for x in row] for row in M]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def solve_exact(A, b):
    """Solve A x = b exactly.

    Returns the solution vector, or None when the system is inconsistent.
    When solutions form an affine space, free variables are set to zero.
    """
    if len(A) != len(b):
        raise ValueError("A must have as many rows as b has entries")
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    if not aug:
        return []
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = R[r][ncols]
    return x


def det_exact(A):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("det_exact requires a square matrix")
    if n == 0:
        return Fraction(1)
    # Clear denominators row by row so the Bareiss sweep stays in integers.
    scale = Fraction(1)
    M = []
    for row in A:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        scale *= d
        M.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if pr is None:
                return Fraction(0)
            M[k], M[pr] = M[pr], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], 1) / scale


def rank_exact(A):
    if not A:
        return 0
    return len(rref(A)[1])


def smith_normal_form(A):
    """Invariant factors d_1 | d_2 | ... of an integer matrix.

    Returns the full diagonal of the Smith normal form: nonzero factors
    first, then zeros for the free part.  The empty matrix gives [].
    """
    return _snf(A)[0]


def _snf(A, want_v=False):
    """Smith normal form diagonal; optionally the right transform V.

    V is unimodular with A V in column-reduced form, so the columns of V
    beyond the rank span the integer kernel of A.
    """
    M = [[int(x) for x in row] for row in A]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)] if want_v else None
    diag = []
    t = 0
    while t < min(nrows, ncols):
        # Find a nonzero pivot in the remaining block.
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if M[i][j] != 0:
                    if piv is None or abs(M[i][j]) < abs(M[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        while True:
            i, j = piv
            M[t], M[i] = M[i], M[t]
            if j != t:
                for row in M:
                    row[t], row[j] = row[j], row[t]
                if want_v:
                    for row in V:
                        row[t], row[j] = row[j], row[t]
            # Reduce column t then row t by the pivot.
            done = True
            for i in range(t + 1, nrows):
                q = M[i][t] // M[t][t]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t] != 0:
                    done = False
            for j in range(t + 1, ncols):
                q = M[t][j] // M[t][t]
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                    if want_v:
                        for row in V:
                            row[j] -= q * row[t]
                if M[t][j] != 0:
                    done = False
            if done:
                break
            piv = min(
                ((i, j) for i in range(t, nrows) for j in range(t, ncols) if M[i][j] != 0),
                key=lambda ij: abs(M[ij[0]][ij[1]]),
            )
        diag.append(abs(M[t][t]))
        t += 1
    # Enforce the divisibility chain d_i | d_{i+1}.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            l = diag[i] * diag[j] // g if g else 0
            diag[i], diag[j] = g, l
    diag += [0] * (min(nrows, ncols) - len(diag))
    return diag, V


def integer_kernel(A):
    """Z-basis of the integer kernel {x : A x = 0} of an integer matrix.

    A is given as a list of rows; kernel vectors have one entry per column.
    """
    if not A:
        return []
    diag, V = _snf(A, want_v=True)
    r = sum(1 for d in diag if d != 0)
    ncols = len(A[0])
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]
