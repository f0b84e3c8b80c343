"""Pointedness of the cone spanned by the orthant sublattices L_k.

The exponents of every G_k lie in the real cone generated by the union of
the L_k.  When that cone contains no line, a rational functional w that is
positive on it grades all G_k at once; this module searches for w by exact
linear programming and, failing that, returns an explicit obstruction.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .config import AConfiguration, enumerate_orthant, kernel_basis
from .errors import NotPointed
from .intlinalg import primitive
from .lp import INFEASIBLE, OPTIMAL, solve_lp
from .report import FAIL, PASS, Report


@dataclass(frozen=True)
class PointednessCertificate:
    """A functional w with w . g >= 1 on every listed generator."""

    w: tuple
    generators: tuple
    margins: tuple

    def verify(self):
        margins = tuple(sum(wi * gi for wi, gi in zip(self.w, g)) for g in self.generators)
        return margins == self.margins and all(m >= 1 for m in margins)

    def to_dict(self):
        return {
            "w": [str(x) for x in self.w],
            "generators": [list(g) for g in self.generators],
            "margins": [str(m) for m in self.margins],
        }


@dataclass(frozen=True)
class NonPointedWitness:
    """Nonnegative integers c_g, not all zero, with sum c_g g = 0."""

    coefficients: tuple
    generators: tuple

    def verify(self):
        if not self.generators or any(c < 0 for c in self.coefficients):
            return False
        if not any(self.coefficients):
            return False
        N = len(self.generators[0])
        total = [sum(c * g[j] for c, g in zip(self.coefficients, self.generators)) for j in range(N)]
        return not any(total)

    def to_dict(self):
        return {
            "coefficients": list(self.coefficients),
            "generators": [list(g) for g in self.generators],
        }


def pointedness_certificate(gens):
    """Find w with w . g >= 1 for all g, or a :class:`NonPointedWitness`.

    Among feasible w the LP minimizes the l1 norm of w, which keeps levels
    small; Bland's rule fixes the returned vertex.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        return PointednessCertificate((), (), ())
    if any(not any(g) for g in gens):
        raise ValueError("generators must be nonzero")
    N = len(gens[0])
    G = len(gens)
    # variables: w+ (N), w- (N), slack (G);  g.w+ - g.w- - s = 1
    A = [list(g) + [-x for x in g] + [-int(i == r) for i in range(G)] for r, g in enumerate(gens)]
    c = [1] * (2 * N) + [0] * G
    res = solve_lp(c, A, [1] * G)
    if res.status == OPTIMAL:
        w = tuple(res.x[j] - res.x[N + j] for j in range(N))
        margins = tuple(sum(wi * gi for wi, gi in zip(w, g)) for g in gens)
        cert = PointednessCertificate(w, tuple(gens), margins)
        assert cert.verify()
        return cert
    # Gordan alternative: c >= 0, sum c = 1, sum c_g g = 0
    A = [[g[j] for g in gens] for j in range(N)] + [[1] * G]
    res = solve_lp([0] * G, A, [0] * N + [1])
    assert res.status == OPTIMAL, "LP alternative failed; simplex bug"
    den = 1
    for x in res.x:
        den = lcm(den, x.denominator)
    coeffs = primitive([int(x * den) for x in res.x])
    witness = NonPointedWitness(tuple(coeffs), tuple(gens))
    assert witness.verify()
    return witness


def duplicate_vector_check(cfg):
    """Flag repeated vectors, which put a configuration outside the
    distinct-vector setting in which the cone is known to be pointed."""
    dups = cfg.duplicate_pairs()
    return Report(
        check="duplicate_vectors",
        target=cfg.name or "configuration",
        verdict=FAIL if dups else PASS,
        witness={"pairs": [list(p) for p in dups]} if dups else None,
        details={"pointedness_guaranteed": not dups},
    )


def _orthant_lp(cfg, k, objective):
    """min objective . x over x >= 0 (indexed by j != k) with
    sum_{j != k} x_j a_j = a_k.  ``objective`` is indexed by all j."""
    free = [j for j in range(cfg.N) if j != k - 1]
    if not free:
        return None, free
    A = [[cfg.vectors[j][i] for j in free] for i in range(cfg.n)]
    b = list(cfg.vectors[k - 1])
    res = solve_lp([objective[j] for j in free], A, b)
    return res, free


def orthant_is_trivial(cfg, k):
    """True when L_k = {0}, i.e. a_k is not a convex combination of the others."""
    res, _ = _orthant_lp(cfg, k, [0] * cfg.N)
    return res is None or res.status == INFEASIBLE


def orthant_minimum(cfg, k, w):
    """Minimum of w . x over the slice x_k = -1 of the real cone of L_k.

    Returns ``(value, point)`` with ``point`` a full N-vector of rationals,
    or None if L_k is trivial.  Since sum_j x_j = 0 the slice is a
    polytope, so the minimum exists.
    """
    res, free = _orthant_lp(cfg, k, [Fraction(x) for x in w])
    if res is None or res.status == INFEASIBLE:
        return None
    x = [Fraction(0)] * cfg.N
    x[k - 1] = Fraction(-1)
    for j, v in zip(free, res.x):
        x[j] = v
    value = sum(Fraction(wj) * xj for wj, xj in zip(w, x))
    return value, tuple(x)


def orthant_support(cfg, k):
    """Indices j != k (1-based) with l_j > 0 for some l in L_k."""
    support = []
    for j in range(1, cfg.N + 1):
        if j == k:
            continue
        obj = [0] * cfg.N
        obj[j - 1] = -1
        out = orthant_minimum(cfg, k, obj)
        if out is None:
            return []
        if out[0] < 0:
            support.append(j)
    return support


def orthant_step(cfg, k):
    """gcd of the values -l_k over L_k (1 when L_k is trivial).

    The integer points of the cone of L_k generate the lattice of relations
    supported on its support together with k, so the gcd is read off a
    kernel basis of that sub-configuration.
    """
    support = orthant_support(cfg, k)
    if not support:
        return 1
    idx = sorted(support + [k])
    sub = AConfiguration(cfg.n, tuple(cfg.vectors[j - 1] for j in idx), cfg.h)
    pos = idx.index(k)
    g = 0
    for rel in kernel_basis(sub):
        g = gcd(g, rel[pos])
    return g or 1


def orthant_grading(cfg, k):
    """The grading w = -e_k / d_k, under which L_k has levels 1, 2, ...."""
    d = orthant_step(cfg, k)
    return tuple(Fraction(-1, d) if j == k - 1 else Fraction(0) for j in range(cfg.N))


def cone_generators(cfg, m_max, ks=None, node_cap=None):
    """Union of the enumerated L_k for k in ``ks`` (default: all)."""
    ks = range(1, cfg.N + 1) if ks is None else ks
    kwargs = {} if node_cap is None else {"node_cap": node_cap}
    gens = []
    for k in ks:
        gens.extend(tuple(l) for l in enumerate_orthant(cfg, k, m_max, **kwargs))
    return gens


@dataclass(frozen=True)
class CommonGrading:
    """A grading positive on the whole cone of the selected L_k.

    ``slopes[k]`` is the minimum of w . l / (-l_k) over nonzero l in L_k,
    so that w-level <= B forces -l_k <= B / slopes[k].
    """

    w: tuple
    certificate: PointednessCertificate
    slopes: dict


def common_grading(cfg, ks=None, m_max=6, node_cap=None):
    """Certificate grading for the cones L_k, k in ``ks``.

    Starts from the generators enumerated to ``m_max`` and adds the
    minimizing vertex of any orthant slice on which w fails to be
    positive, until w is positive on every full cone.  Raises
    :class:`NotPointed` (carrying the witness) if the generators force a
    line into the cone.
    """
    ks = [k for k in (range(1, cfg.N + 1) if ks is None else ks) if not orthant_is_trivial(cfg, k)]
    gens = cone_generators(cfg, m_max, ks, node_cap=node_cap)
    while True:
        cert = pointedness_certificate(gens)
        if isinstance(cert, NonPointedWitness):
            raise NotPointed("the cone generated by the orthant relations contains a line", witness=cert)
        w = cert.w or tuple(Fraction(0) for _ in range(cfg.N))
        slopes = {}
        added = False
        for k in ks:
            value, point = orthant_minimum(cfg, k, w)
            if value <= 0:
                den = 1
                for x in point:
                    den = lcm(den, x.denominator)
                gens.append(tuple(int(x * den) for x in point))
                added = True
            slopes[k] = value
        if not added:
            return CommonGrading(w, cert, slopes)
