"""Integrality of exp(G_k) and of mirror maps, checked at truncation.

Two independent routes to the same fact are provided per prime: the
series route forms p*G_k(lambda) - G_k(lambda^p) and inspects its
coefficients, the valuation route evaluates the underlying multinomial
congruences term by term.  Integrality over all primes at once is checked
by exponentiating over Q.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf

from .config import DEFAULT_NODE_CAP, enumerate_orthant, relation_gcd
from .congruence import multinomial
from .errors import InsufficientTruncation
from .geometry import orthant_step
from .report import FAIL, PASS, Report
from .seriesring import ConeSeries, exp_series, mul, p_valuation, power, scale, shift, substitute_power
from .solutions import build_gk, solution_grading

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class IntegralityReport(Report):
    """Report with per-prime verdicts and the least-margin witness."""

    levels_checked: Fraction = None
    primes: tuple = ()
    per_prime: dict = field(default_factory=dict)
    series: ConeSeries = None

    def to_dict(self):
        out = super().to_dict()
        out.setdefault("details", {})
        out["details"].update(
            levels_checked=None if self.levels_checked is None else str(self.levels_checked),
            primes=list(self.primes),
            per_prime={str(p): v for p, v in self.per_prime.items()},
        )
        if self.series is not None:
            out["details"]["series"] = self.series.to_dict()
        return out


def _require_level(gk, m_max):
    if gk.m_max < m_max:
        raise InsufficientTruncation(f"G_{gk.k} is built to level {gk.m_max}, {m_max} requested")


def dwork_series(gk, p, m_max):
    """p*G_k(lambda) - G_k(lambda^p) truncated at ``m_max``."""
    _require_level(gk, m_max)
    g = gk.series.truncate(m_max)
    return scale(g, p) - substitute_power(g, p).truncate(m_max)


def dwork_criterion(gk, p, m_max):
    """Every coefficient of p*G_k(lambda) - G_k(lambda^p) up to ``m_max``
    must have p-adic valuation at least 1."""
    d = dwork_series(gk, p, m_max)
    worst = None
    failures = 0
    for u, c in d.items():
        margin = p_valuation(c, p) - 1
        if margin < 0:
            failures += 1
        if worst is None or margin < worst["margin"]:
            worst = {"u": list(u), "c": c, "level": d.level(u), "margin": margin}
    verdict = FAIL if failures else PASS
    return IntegralityReport(
        check="dwork",
        target=f"G_{gk.k} p={p}",
        verdict=verdict,
        witness=worst,
        valid_level=Fraction(m_max),
        details={"terms": len(d.terms), "failures": failures},
        levels_checked=Fraction(m_max),
        primes=(p,),
        per_prime={p: verdict},
    )


def dwork_all_primes(gk, primes, m_max):
    subs = [dwork_criterion(gk, p, m_max) for p in primes]
    failed = [r for r in subs if not r.passed]
    worst = min((r.witness for r in subs if r.witness), key=lambda w: w["margin"], default=None)
    return IntegralityReport(
        check="dwork",
        target=f"G_{gk.k}",
        verdict=FAIL if failed else PASS,
        witness=failed[0].witness if failed else worst,
        valid_level=Fraction(m_max),
        levels_checked=Fraction(m_max),
        primes=tuple(primes),
        per_prime={r.primes[0]: r.verdict for r in subs},
    )


def _integrality_of(series, check, target, m_max):
    bad = [(u, c) for u, c in series.items() if c.denominator != 1]
    witness = None
    if bad:
        u, c = bad[0]
        witness = {"u": list(u), "c": c, "level": series.level(u)}
    return IntegralityReport(
        check=check,
        target=target,
        verdict=FAIL if bad else PASS,
        witness=witness,
        valid_level=Fraction(m_max),
        details={"terms": len(series.terms), "nonintegral": len(bad)},
        levels_checked=Fraction(m_max),
        series=series,
    )


def exp_integrality(gk, m_max):
    """exp(G_k) up to ``m_max``; passes iff every coefficient is an integer.

    The computed series is attached as ``report.series``.
    """
    _require_level(gk, m_max)
    e = exp_series(gk.series.truncate(m_max))
    return _integrality_of(e, "exp_integrality", f"exp G_{gk.k}", m_max)


def mirror_map(cfg, rel, m_max, allow_duplicates=False, node_cap=DEFAULT_NODE_CAP):
    """q / lambda^rel = prod_k (exp G_k)^rel_k up to ``m_max``.

    The product is compared with exp(sum_k rel_k G_k) computed directly;
    the report passes iff both agree and every coefficient is an integer.
    Raises NotPointed when no common grading exists.
    """
    rel = tuple(rel)
    grading = solution_grading(cfg, rel, allow_duplicates=allow_duplicates)
    total = ConeSeries.zero(grading, m_max)
    product = ConeSeries.one(grading, m_max)
    for k in range(1, cfg.N + 1):
        if not rel[k - 1]:
            continue
        gk = build_gk(cfg, k, m_max, grading=grading, node_cap=node_cap)
        if gk.is_zero():
            continue
        total = total + gk.series * rel[k - 1]
        product = mul(product, power(exp_series(gk.series), rel[k - 1]))
    direct = exp_series(total)
    report = _integrality_of(product, "mirror_integrality", f"mirror rel={list(rel)}", m_max)
    report.details["product_matches_direct_exp"] = product == direct
    if product != direct:
        report.verdict = FAIL
        diff = product - direct
        u, c = diff.items()[0]
        report.witness = {"u": list(u), "c": c, "reason": "product and direct exponential differ"}
    return product, report


def mirror_coordinate(series, rel):
    """Multiply q / lambda^rel back by lambda^rel."""
    return shift(series, rel)


def _valuation_or_inf(x, p):
    return inf if x == 0 else p_valuation(x, p)


def verify_congruence_4_3_to_4_8(cfg, k, m_max, primes, node_cap=DEFAULT_NODE_CAP):
    """Term-by-term valuation check of the congruences behind the Dwork
    criterion for G_k, independent of any series arithmetic.

    For l in L_k with m = -l_k up to level ``m_max`` and M(l) the
    multinomial of the l_j (j != k):
      * if p does not divide every l_j:  M(l) / m  is p-integral;
      * always:  (M(p l) - M(l)) / m  lies in p Z_p;
      * if p = 2 and m is odd:  (M(2 l) + M(l)) / m  lies in 2 Z_2 as well,
        since the two signs (-1)^(pm-1), (-1)^(m-1) differ exactly there.
    """
    d = orthant_step(cfg, k)
    rels = list(enumerate_orthant(cfg, k, d * m_max, node_cap=node_cap)) if m_max >= 1 else []
    per_prime = {}
    counts = {"integral": 0, "difference": 0, "exceptional": 0, "sign_flips": 0}
    first = None
    for p in primes:
        ok = True
        for rel in rels:
            l = rel.entries
            m = -l[k - 1]
            others = [x for j, x in enumerate(l) if j != k - 1]
            M = multinomial(others)
            Mp = multinomial([p * x for x in others])
            if relation_gcd(l) % p:
                counts["integral"] += 1
                if p_valuation(Fraction(M, m), p) < 0:
                    ok = False
                    first = first or {"l": list(l), "p": p, "condition": "integral"}
            counts["difference"] += 1
            if _valuation_or_inf(Fraction(Mp - M, m), p) < 1:
                ok = False
                first = first or {"l": list(l), "p": p, "condition": "difference"}
            flip = (-1) ** (p * m - 1) != (-1) ** (m - 1)
            if flip != (p == 2 and m % 2 == 1):
                ok = False
                first = first or {"l": list(l), "p": p, "condition": "sign"}
            if flip:
                counts["sign_flips"] += 1
            if p == 2 and m % 2 == 1:
                counts["exceptional"] += 1
                if _valuation_or_inf(Fraction(Mp + M, m), p) < 1:
                    ok = False
                    first = first or {"l": list(l), "p": p, "condition": "exceptional_sum"}
        per_prime[p] = PASS if ok else FAIL
    failed = any(v == FAIL for v in per_prime.values())
    return IntegralityReport(
        check="congruence_route",
        target=f"G_{k}",
        verdict=FAIL if failed else PASS,
        witness=first,
        valid_level=Fraction(m_max),
        details=dict(counts, relations=len(rels)),
        levels_checked=Fraction(m_max),
        primes=tuple(primes),
        per_prime=per_prime,
    )
