"""Exact integer and rational linear algebra on lists of lists."""
from fractions import Fraction
from math import gcd


def hermite_rows(rows):
    """Row-style Hermite normal form of an integer matrix.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and
    zero rows are dropped.  The result depends only on the row lattice.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    m, ncols = len(A), len(A[0])
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r] if any(row)]


def reversed_hermite_rows(rows):
    """Hermite form with pivots taken from the last column backwards.

    Rows are returned ordered by pivot column, leftmost pivot first.
    """
    if not rows:
        return []
    rev = hermite_rows([list(reversed(r)) for r in rows])
    return [list(reversed(r)) for r in reversed(rev)]


def integer_kernel(columns):
    """Basis of {l in Z^N : sum_j l_j * columns[j] = 0}.

    ``columns`` is the list of N integer vectors.  The basis is put in
    reversed Hermite form so it is canonical for the lattice.
    """
    N = len(columns)
    if N == 0:
        return []
    n = len(columns[0])
    aug = [list(columns[j]) + [int(i == j) for i in range(N)] for j in range(N)]
    H = hermite_rows(aug)
    kernel = [row[n:] for row in H if not any(row[:n])]
    return reversed_hermite_rows(kernel)


def lattice_coordinates(basis, v):
    """Integer coefficients x with sum x_i basis[i] = v, or None.

    ``basis`` may be any list of independent integer vectors.
    """
    v = list(v)
    if not basis:
        return [] if not any(v) else None
    # solve over Q, then check integrality
    cols = len(v)
    sol = solve_rational([[basis[i][c] for i in range(len(basis))] for c in range(cols)], v)
    if isinstance(sol, InconsistentSystem):
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return [int(x) for x in sol]


class InconsistentSystem:
    """Marker result of :func:`solve_rational`; ``witness`` certifies it.

    The witness y satisfies y^T M = 0 and y . rhs != 0.
    """

    def __init__(self, witness):
        self.witness = witness

    def __repr__(self):
        return f"InconsistentSystem(witness={self.witness})"


def solve_rational(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly.

    Returns the solution from reduced echelon form with every free variable
    set to 0, or an :class:`InconsistentSystem` carrying a left-null witness.
    """
    m = len(matrix)
    ncols = len(matrix[0]) if m else 0
    # track row operations so an inconsistent row can be explained
    rows = [
        [Fraction(x) for x in matrix[i]] + [Fraction(rhs[i])] + [Fraction(int(i == k)) for k in range(m)]
        for i in range(m)
    ]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if rows[i][ncols] != 0:
            y = rows[i][ncols + 1:]
            den = 1
            for q in y:
                den = den * q.denominator // gcd(den, q.denominator)
            return InconsistentSystem([int(q * den) for q in y])
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][ncols]
    return x


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for a in v:
        g = gcd(g, int(a))
    if g == 0:
        return [int(a) for a in v]
    return [int(a) // g for a in v]
