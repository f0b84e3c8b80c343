"""Divisibility of multinomial coefficients by powers of a prime."""
import itertools
from dataclasses import dataclass
from math import comb, factorial, inf

from .report import FAIL, PASS, Report
from .seriesring import is_prime, p_valuation
from .errors import NotPrime


@dataclass(frozen=True)
class MultiIndex:
    parts: tuple

    def __post_init__(self):
        if any(e < 0 for e in self.parts):
            raise ValueError("parts must be nonnegative")

    @property
    def total(self):
        return sum(self.parts)

    def scaled(self, p):
        return MultiIndex(tuple(p * e for e in self.parts))

    def a(self, p):
        """v_p of the total (inf when the total is 0)."""
        return p_valuation(self.total, p)

    def b(self, p):
        """Smallest v_p over the parts; zero parts count as inf."""
        return min((p_valuation(e, p) for e in self.parts), default=inf)


def multinomial(m):
    """e! / prod e_i! via a product of binomials."""
    parts = m.parts if isinstance(m, MultiIndex) else tuple(m)
    out, running = 1, 0
    for e in parts:
        running += e
        out *= comb(running, e)
    return out


def multinomial_by_factorials(m):
    """Independent route: the factorial quotient itself."""
    parts = m.parts if isinstance(m, MultiIndex) else tuple(m)
    den = 1
    for e in parts:
        den *= factorial(e)
    q, r = divmod(factorial(sum(parts)), den)
    assert r == 0
    return q


def legendre_vp_factorial(e, p):
    """v_p(e!) = sum_i floor(e / p^i)."""
    v, q = 0, p
    while q <= e:
        v += e // q
        q *= p
    return v


def _require_prime(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not a prime")


def check_prop31(m, p):
    """v_p(multinomial) >= a - b, with inf - inf read as 0."""
    _require_prime(p)
    a, b = m.a(p), m.b(p)
    need = 0 if a == inf and b == inf else a - b
    v = p_valuation(multinomial(m), p)
    ok = v >= need
    return Report(
        check="multinomial_divisibility",
        target=f"{list(m.parts)} p={p}",
        verdict=PASS if ok else FAIL,
        witness=None if ok else {"parts": list(m.parts), "valuation": v, "required": need},
        details={"a": _fmt(a), "b": _fmt(b), "valuation": _fmt(v)},
    )


def check_prop32(m, p):
    """v_p(multinomial(p*m) - multinomial(m)) >= a + 1."""
    _require_prime(p)
    a = m.a(p)
    diff = multinomial(m.scaled(p)) - multinomial(m)
    v = p_valuation(diff, p)
    need = a + 1
    ok = v >= need
    return Report(
        check="multinomial_frobenius",
        target=f"{list(m.parts)} p={p}",
        verdict=PASS if ok else FAIL,
        witness=None if ok else {"parts": list(m.parts), "valuation": _fmt(v), "required": _fmt(need)},
        details={"a": _fmt(a), "valuation": _fmt(v)},
    )


def _fmt(v):
    return "inf" if v == inf else v


def multi_indices(N, e_max):
    """All MultiIndex with exactly N parts and total <= e_max."""
    for parts in itertools.product(range(e_max + 1), repeat=N):
        if sum(parts) <= e_max:
            yield MultiIndex(parts)


def scan_congruences(N_max, e_max, primes, cross_check=True):
    """Check both divisibility statements on every multi-index with
    1 <= N <= N_max parts and total <= e_max, for each prime.

    With ``cross_check`` the two multinomial routes are compared too.
    The first failure in scan order is reported as the witness.
    """
    for p in primes:
        _require_prime(p)
    counts = {"cases": 0, "divisibility_failures": 0, "frobenius_failures": 0, "oracle_mismatches": 0}
    first = None
    for N in range(1, N_max + 1):
        for m in multi_indices(N, e_max):
            if cross_check and multinomial(m) != multinomial_by_factorials(m):
                counts["oracle_mismatches"] += 1
                first = first or {"parts": list(m.parts), "check": "oracle"}
            for p in primes:
                counts["cases"] += 1
                r31 = check_prop31(m, p)
                r32 = check_prop32(m, p)
                if not r31.passed:
                    counts["divisibility_failures"] += 1
                    first = first or dict(r31.witness, p=p, check=r31.check)
                if not r32.passed:
                    counts["frobenius_failures"] += 1
                    first = first or dict(r32.witness, p=p, check=r32.check)
    failed = first is not None
    return Report(
        check="congruence_scan",
        target=f"N<={N_max} e<={e_max} primes={list(primes)}",
        verdict=FAIL if failed else PASS,
        witness=first,
        details=counts,
    )
