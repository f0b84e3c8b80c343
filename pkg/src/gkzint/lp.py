"""Exact two-phase simplex over the rationals, Bland's rule throughout.

Problems are in standard form::

    minimize  c . x   subject to  A x = b,  x >= 0

No floating point is used; every pivot is a :class:`fractions.Fraction`
operation, and Bland's rule makes the pivot sequence (hence the returned
vertex) deterministic.
"""
from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple = None
    value: Fraction = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        inv = 1 / self.rows[r][c]
        self.rows[r] = [a * inv for a in self.rows[r]]
        self.rhs[r] *= inv
        for i in range(len(self.rows)):
            if i != r and self.rows[i][c] != 0:
                f = self.rows[i][c]
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Minimize ``cost`` over columns in ``allowed``; returns status."""
        while True:
            cb = [cost[b] for b in self.basis]
            entering = None
            for j in allowed:
                if j in self.basis:
                    continue
                red = cost[j] - sum(cb[i] * self.rows[i][j] for i in range(len(self.rows)))
                if red < 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = self.rhs[i] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)


def solve_lp(c, A, b):
    """Minimize ``c . x`` subject to ``A x = b``, ``x >= 0``.

    Returns an :class:`LPResult`.  For an optimal result ``x`` is a basic
    optimal solution and ``value`` the optimal objective.
    """
    m = len(A)
    nvar = len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # artificials occupy columns nvar .. nvar+m-1
    rows = [A[i] + [Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    tab = _Tableau(rows, list(b), [nvar + i for i in range(m)])
    phase1 = [Fraction(0)] * nvar + [Fraction(1)] * m
    tab.run(phase1, range(nvar + m))
    if sum(tab.rhs[i] for i in range(m) if tab.basis[i] >= nvar) != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= nvar:
            col = next((j for j in range(nvar) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1
    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    status = tab.run(cost, range(nvar))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nvar
    for i, bvar in enumerate(tab.basis):
        x[bvar] = tab.rhs[i]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, tuple(x), value)


def feasible_point(A, b):
    """A basic feasible point of ``A x = b, x >= 0`` or None."""
    res = solve_lp([0] * (len(A[0]) if A else 0), A, b)
    return res.x if res.status == OPTIMAL else None
