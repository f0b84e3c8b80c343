"""Exact sparse Laurent series graded by a rational level functional.

A :class:`ConeSeries` stores the terms of a series whose level
``w . u`` is at most ``bound``; the stored terms are exact, terms above the
bound are unknown.  A :class:`LogSeries` is a polynomial in the symbols
``log(lambda_j)`` with ConeSeries coefficients; its ``bound`` is the level
up to which its stored terms are guaranteed.
"""
import heapq
import math
from fractions import Fraction

from .errors import GradingMismatch, NonzeroConstantTerm, NotPrime


def level(u, grading):
    return sum(w * x for w, x in zip(grading, u) if x)


def _as_grading(w):
    return tuple(Fraction(x) for x in w)


class ConeSeries:
    """Sparse series sum_u c_u lambda^u truncated at a level bound.

    Zero coefficients and terms above the bound are dropped on
    construction.  Instances are treated as immutable.
    """

    __slots__ = ("terms", "grading", "bound", "N")

    def __init__(self, terms, grading, bound):
        self.grading = _as_grading(grading)
        self.bound = Fraction(bound)
        self.N = len(self.grading)
        clean = {}
        for u, c in dict(terms).items():
            u = tuple(int(x) for x in u)
            if len(u) != self.N:
                raise ValueError(f"exponent {u} has wrong length")
            c = Fraction(c)
            if c and level(u, self.grading) <= self.bound:
                clean[u] = c
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, grading, bound):
        return cls({}, grading, bound)

    @classmethod
    def one(cls, grading, bound):
        return cls({(0,) * len(grading): 1}, grading, bound)

    @classmethod
    def monomial(cls, u, grading, bound, c=1):
        return cls({tuple(u): c}, grading, bound)

    def like(self, terms, bound=None):
        return ConeSeries(terms, self.grading, self.bound if bound is None else bound)

    def level(self, u):
        return level(u, self.grading)

    def items(self):
        """Terms sorted by (level, exponent)."""
        return sorted(self.terms.items(), key=lambda t: (self.level(t[0]), t[0]))

    def coefficient(self, u):
        return self.terms.get(tuple(u), Fraction(0))

    def constant_term(self):
        return self.coefficient((0,) * self.N)

    def is_zero(self):
        return not self.terms

    def min_level(self):
        return min((self.level(u) for u in self.terms), default=None)

    def truncate(self, bound):
        """Same series viewed at a lower (or equal) bound."""
        bound = Fraction(bound)
        if bound > self.bound:
            raise ValueError("cannot raise the bound of a truncated series")
        return self.like(self.terms, bound)

    def compatible(self, other):
        if self.N != other.N or self.grading != other.grading or self.bound != other.bound:
            raise GradingMismatch(
                f"grading/bound mismatch: ({self.grading}, {self.bound}) vs ({other.grading}, {other.bound})"
            )

    def __eq__(self, other):
        if not isinstance(other, ConeSeries):
            return NotImplemented
        return (self.grading, self.bound, self.terms) == (other.grading, other.bound, other.terms)

    def __hash__(self):
        return hash((self.grading, self.bound, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        body = " + ".join(f"{c}*L^{u}" for u, c in self.items()) or "0"
        return f"ConeSeries({body}; bound={self.bound})"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, ConeSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def to_dict(self):
        return {
            "grading": [str(w) for w in self.grading],
            "bound": str(self.bound),
            "terms": [{"u": list(u), "c": str(c)} for u, c in self.items()],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            {tuple(t["u"]): Fraction(t["c"]) for t in data["terms"]},
            [Fraction(w) for w in data["grading"]],
            Fraction(data["bound"]),
        )


def add(f, g):
    f.compatible(g)
    terms = dict(f.terms)
    for u, c in g.terms.items():
        terms[u] = terms.get(u, 0) + c
    return f.like(terms)


def scale(f, c):
    c = Fraction(c)
    return f.like({u: c * v for u, v in f.terms.items()})


def _check_graded(f, allow_constant=True):
    zero = (0,) * f.N
    for u in f.terms:
        if u == zero:
            if not allow_constant:
                raise NonzeroConstantTerm("series has a nonzero constant term")
        elif f.level(u) <= 0:
            raise ValueError(f"exponent {u} has level {f.level(u)} <= 0; grading is not pointed on the support")


def mul(f, g):
    """Product truncated at the shared bound.

    Both factors must have positive level on every nonconstant exponent;
    that is what makes the truncated product exact.
    """
    f.compatible(g)
    _check_graded(f)
    _check_graded(g)
    bound = f.bound
    gl = sorted(((g.level(v), v, d) for v, d in g.terms.items()))
    terms = {}
    for u, c in f.terms.items():
        lu = f.level(u)
        for lv, v, d in gl:
            if lu + lv > bound:
                break
            w = tuple(a + b for a, b in zip(u, v))
            terms[w] = terms.get(w, 0) + c * d
    return f.like(terms)


def _closure(f, support, compute):
    """Run ``compute(u, lev)`` over every sum of support exponents up to
    the bound, in increasing level order, starting from 0."""
    zero = (0,) * f.N
    heap = [(Fraction(0), zero)]
    seen = {zero}
    while heap:
        lu, u = heapq.heappop(heap)
        compute(u, lu)
        for lv, v, _ in support:
            if lu + lv > f.bound:
                break
            w = tuple(a + b for a, b in zip(u, v))
            if w not in seen:
                seen.add(w)
                heapq.heappush(heap, (lu + lv, w))


def exp_series(f):
    """exp(f) for f without constant term, truncated at f's bound.

    Uses the graded Euler derivation D(lambda^u) = level(u) lambda^u:
    D exp(f) = exp(f) D f gives, term by term,
    level(u) E_u = sum_v level(v) f_v E_{u-v}.
    """
    _check_graded(f, allow_constant=False)
    support = sorted((f.level(v), v, c) for v, c in f.terms.items())
    E = {}

    def compute(u, lu):
        if lu == 0:
            E[u] = Fraction(1)
            return
        s = Fraction(0)
        for lv, v, c in support:
            if lv > lu:
                break
            prev = E.get(tuple(a - b for a, b in zip(u, v)))
            if prev:
                s += lv * c * prev
        E[u] = s / lu

    _closure(f, support, compute)
    return f.like(E)


def inverse(g):
    """1/g for g with nonzero constant term, truncated at g's bound."""
    _check_graded(g)
    zero = (0,) * g.N
    g0 = g.coefficient(zero)
    if g0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    support = sorted((g.level(v), v, c) for v, c in g.terms.items() if v != zero)
    inv0 = 1 / g0
    I = {}

    def compute(u, lu):
        if u == zero:
            I[u] = inv0
            return
        s = Fraction(0)
        for lv, v, c in support:
            if lv > lu:
                break
            prev = I.get(tuple(a - b for a, b in zip(u, v)))
            if prev:
                s += c * prev
        I[u] = -inv0 * s

    _closure(g, support, compute)
    return g.like(I)


def power(f, e):
    """f**e for an integer e; negative e inverts first."""
    if e < 0:
        return power(inverse(f), -e)
    result = ConeSeries.one(f.grading, f.bound)
    base = f
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_power(f, p):
    """f(lambda^p): every exponent multiplied by p, bound multiplied by p."""
    if p < 2:
        raise ValueError("p must be at least 2")
    return ConeSeries({tuple(p * x for x in u): c for u, c in f.terms.items()}, f.grading, p * f.bound)


def shift(f, v):
    """lambda^v * f as a Laurent series; the bound moves with the shift."""
    lv = f.level(v)
    return ConeSeries({tuple(a + b for a, b in zip(u, v)): c for u, c in f.terms.items()}, f.grading, f.bound + lv)


def coefficient(f, u):
    return f.coefficient(u)


def is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


INF = math.inf


def _vp_int(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_valuation(c, p):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not a prime")
    c = Fraction(c)
    if c == 0:
        return INF
    return _vp_int(abs(c.numerator), p) - _vp_int(c.denominator, p)


class LogSeries:
    """sum_alpha (prod_j log(lambda_j)^alpha_j) * F_alpha(lambda).

    All parts share one grading and bound; ``bound`` is the level up to
    which every stored coefficient is exact (the guaranteed-valid level).
    """

    __slots__ = ("parts", "grading", "bound", "N")

    def __init__(self, parts, grading, bound):
        self.grading = _as_grading(grading)
        self.bound = Fraction(bound)
        self.N = len(self.grading)
        clean = {}
        for alpha, f in dict(parts).items():
            alpha = tuple(int(a) for a in alpha)
            if any(a < 0 for a in alpha) or len(alpha) != self.N:
                raise ValueError(f"bad log multidegree {alpha}")
            if not isinstance(f, ConeSeries):
                f = ConeSeries(f, self.grading, self.bound)
            elif f.grading != self.grading:
                raise GradingMismatch("log part has a different grading")
            f = ConeSeries(f.terms, self.grading, self.bound)
            if not f.is_zero():
                clean[alpha] = f
        self.parts = clean

    @classmethod
    def from_series(cls, f):
        return cls({(0,) * f.N: f}, f.grading, f.bound)

    @classmethod
    def log(cls, j, grading, bound):
        """The symbol log(lambda_j), j 1-based."""
        N = len(grading)
        alpha = tuple(int(i == j - 1) for i in range(N))
        return cls({alpha: ConeSeries.one(grading, bound)}, grading, bound)

    @property
    def valid_level(self):
        return self.bound

    def log_degree(self):
        return max((sum(a) for a in self.parts), default=0)

    def is_zero(self):
        return not self.parts

    def truncate(self, bound):
        bound = Fraction(bound)
        if bound > self.bound:
            raise ValueError("cannot raise the bound of a truncated series")
        return LogSeries(self.parts, self.grading, bound)

    def items(self):
        """(alpha, u, c) triples ordered by level, then alpha, then u."""
        out = []
        for alpha, f in self.parts.items():
            for u, c in f.terms.items():
                out.append((f.level(u), alpha, u, c))
        out.sort()
        return [(a, u, c) for _, a, u, c in out]

    def first_term(self):
        """Lowest-level stored term as a dict, or None."""
        items = self.items()
        if not items:
            return None
        alpha, u, c = items[0]
        return {"log": list(alpha), "u": list(u), "c": c, "level": level(u, self.grading)}

    def compatible(self, other):
        if self.grading != other.grading or self.bound != other.bound:
            raise GradingMismatch("log series grading/bound mismatch")

    def __add__(self, other):
        other = _as_log(other)
        self.compatible(other)
        parts = dict(self.parts)
        for a, f in other.parts.items():
            parts[a] = add(parts[a], f) if a in parts else f
        return LogSeries(parts, self.grading, self.bound)

    def __sub__(self, other):
        return self + _as_log(other) * -1

    def __mul__(self, c):
        return LogSeries({a: scale(f, c) for a, f in self.parts.items()}, self.grading, self.bound)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        return (self.grading, self.bound, self.parts) == (other.grading, other.bound, other.parts)

    def __repr__(self):
        return f"LogSeries({self.parts!r}; bound={self.bound})"

    def to_dict(self):
        return {
            "grading": [str(w) for w in self.grading],
            "bound": str(self.bound),
            "parts": [{"log": list(a), "terms": f.to_dict()["terms"]} for a, f in sorted(self.parts.items())],
        }


def _as_log(f):
    return f if isinstance(f, LogSeries) else LogSeries.from_series(f)


def apply_derivation(f, j):
    """d/d(lambda_j) of a LogSeries (or ConeSeries), j 1-based.

    Every exponent drops by e_j, so the guaranteed level moves from
    ``bound`` to ``bound - w_j``.
    """
    f = _as_log(f)
    if not 1 <= j <= f.N:
        raise ValueError(f"j must lie in 1..{f.N}")
    i = j - 1
    new_bound = f.bound - f.grading[i]
    acc = {}
    for alpha, series in f.parts.items():
        lowered = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:] if alpha[i] else None
        for u, c in series.terms.items():
            v = u[:i] + (u[i] - 1,) + u[i + 1:]
            if u[i]:
                bucket = acc.setdefault(alpha, {})
                bucket[v] = bucket.get(v, 0) + c * u[i]
            if lowered is not None:
                bucket = acc.setdefault(lowered, {})
                bucket[v] = bucket.get(v, 0) + c * alpha[i]
    parts = {a: ConeSeries(t, f.grading, new_bound) for a, t in acc.items()}
    return LogSeries(parts, f.grading, new_bound)


def apply_monomial_operator(f, orders):
    """prod_j (d/d lambda_j)^orders[j] applied to f."""
    f = _as_log(f)
    for j, k in enumerate(orders, start=1):
        for _ in range(k):
            f = apply_derivation(f, j)
    return f


def apply_box(f, l):
    """Box operator for the relation l: d^{l+} f - d^{l-} f.

    The result is cut at the smaller of the two guaranteed levels, which
    becomes its own guaranteed level.
    """
    l = tuple(l)
    f = _as_log(f)
    left = apply_monomial_operator(f, [max(x, 0) for x in l])
    right = apply_monomial_operator(f, [max(-x, 0) for x in l])
    bound = min(left.bound, right.bound)
    return left.truncate(bound) - right.truncate(bound)
