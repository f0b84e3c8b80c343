"""The series G_k, the logarithmic solutions, and operator checks."""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .config import DEFAULT_NODE_CAP, Relation, enumerate_orthant, kernel_basis, relations_in_box
from .errors import NotPointed
from .geometry import common_grading, orthant_grading, orthant_is_trivial, orthant_minimum
from .report import FAIL, PASS, Report, combine
from .seriesring import ConeSeries, LogSeries, apply_box


@dataclass(frozen=True)
class GkSeries:
    """Truncation of G_k; ``m_max`` is the level bound of ``series``."""

    k: int
    series: ConeSeries
    m_max: Fraction

    @property
    def grading(self):
        return self.series.grading

    def is_zero(self):
        return self.series.is_zero()


def gk_coefficient(l, k):
    """(-1)^(m-1) (m-1)! / prod_{j != k} l_j!  with m = -l_k (k 1-based)."""
    m = -l[k - 1]
    den = 1
    for j, x in enumerate(l):
        if j != k - 1:
            den *= factorial(x)
    sign = -1 if (m - 1) % 2 else 1
    return Fraction(sign * factorial(m - 1), den)


def build_gk(cfg, k, m_max, grading=None, node_cap=DEFAULT_NODE_CAP):
    """G_k truncated at level ``m_max``.

    Without ``grading`` the orthant grading -e_k/d_k is used, where d_k is
    the gcd of the -l_k; its levels are 1, 2, ... along L_k.  With an
    explicit grading w, the smallest ratio w.l / (-l_k) over L_k bounds how
    far the enumeration must go; a nonpositive ratio raises NotPointed.
    """
    if orthant_is_trivial(cfg, k):
        w = grading if grading is not None else orthant_grading(cfg, k)
        return GkSeries(k, ConeSeries.zero(w, m_max), Fraction(m_max))
    if grading is None:
        grading = orthant_grading(cfg, k)
    slope, _ = orthant_minimum(cfg, k, grading)
    if slope <= 0:
        raise NotPointed(f"grading {grading} is not positive on the cone of L_{k}")
    raw = int(Fraction(m_max) / slope)
    terms = {}
    if raw >= 1:
        for rel in enumerate_orthant(cfg, k, raw, node_cap=node_cap):
            terms[rel.entries] = gk_coefficient(rel.entries, k)
    return GkSeries(k, ConeSeries(terms, grading, m_max), Fraction(m_max))


def involved_indices(cfg, rel):
    """k with rel_k != 0 and L_k nontrivial."""
    return [k for k in range(1, cfg.N + 1) if rel[k - 1] and not orthant_is_trivial(cfg, k)]


def solution_grading(cfg, rel, allow_duplicates=False, generator_level=6):
    """A grading in which every G_k needed for ``rel`` can be truncated.

    One nonzero G_k uses its own orthant grading.  Several need a common
    pointed grading from :func:`common_grading`.
    """
    ks = involved_indices(cfg, rel)
    if len(ks) <= 1:
        return orthant_grading(cfg, ks[0] if ks else 1)
    dups = cfg.duplicate_pairs()
    if dups and not allow_duplicates:
        raise NotPointed(f"repeated vectors {dups}: no common pointed cone is guaranteed")
    return common_grading(cfg, ks, m_max=generator_level).w


def log_solution(cfg, rel, gks):
    """log(lambda^rel) + sum_k rel_k G_k as a LogSeries.

    ``gks`` lists G_1..G_N at a common grading and bound; entries whose
    coefficient rel_k is 0 may be None.
    """
    rel = tuple(rel)
    if len(gks) != cfg.N:
        raise ValueError("need one G_k per vector")
    used = [g for g, r in zip(gks, rel) if r and g is not None]
    if not used:
        raise ValueError("no G_k supplied")
    grading, bound = used[0].grading, used[0].m_max
    nonzero = [g for g in used if not g.is_zero()]
    for g in used:
        if g.grading != grading or g.m_max != bound:
            if len(nonzero) > 1:
                raise NotPointed("G_k series do not share a common grading")
            raise ValueError("G_k series must share grading and bound")
    series = ConeSeries.zero(grading, bound)
    for g, r in zip(gks, rel):
        if r and g is not None:
            series = series + g.series * r
    out = LogSeries.from_series(series)
    for j, r in enumerate(rel, start=1):
        if r:
            out = out + LogSeries.log(j, grading, bound) * r
    return out


def build_log_solution(cfg, rel, m_max, allow_duplicates=False, node_cap=DEFAULT_NODE_CAP):
    """Choose a grading, build the needed G_k and assemble the solution."""
    grading = solution_grading(cfg, rel, allow_duplicates=allow_duplicates)
    gks = [
        build_gk(cfg, k, m_max, grading=grading, node_cap=node_cap) if rel[k - 1] else None
        for k in range(1, cfg.N + 1)
    ]
    if not any(rel):
        return LogSeries({}, grading, m_max)
    return log_solution(cfg, rel, gks)


def _series_of(f):
    return f.series if isinstance(f, GkSeries) else f


def euler_residuals(cfg, f):
    """[Z_1 f, ..., Z_n f] for a LogSeries, with beta = 0."""
    out = []
    for i in range(cfg.n):
        a = cfg.row(i)
        acc = {}
        for alpha, series in f.parts.items():
            for u, c in series.terms.items():
                s = sum(aj * uj for aj, uj in zip(a, u))
                if s:
                    b = acc.setdefault(alpha, {})
                    b[u] = b.get(u, 0) + c * s
                for j, aj in enumerate(a):
                    if aj and alpha[j]:
                        lowered = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]
                        b = acc.setdefault(lowered, {})
                        b[u] = b.get(u, 0) + c * aj * alpha[j]
        out.append(LogSeries(acc, f.grading, f.bound))
    return out


def check_euler(cfg, f, target="series"):
    """Apply the Euler operators Z_i = sum_j a_ij lambda_j d/d lambda_j.

    A series without log terms is checked termwise (each exponent must be a
    relation), which is exact at every truncation.
    """
    f = _series_of(f)
    if isinstance(f, ConeSeries):
        bad = [u for u, _ in f.items() if any(cfg.apply(u))]
        witness = None
        if bad:
            u = bad[0]
            i = next(i for i, x in enumerate(cfg.apply(u)) if x)
            witness = {"u": list(u), "c": f.coefficient(u), "operator": i + 1, "residual": cfg.apply(u)[i] * f.coefficient(u)}
        return Report(
            check="euler",
            target=target,
            verdict=FAIL if bad else PASS,
            witness=witness,
            valid_level=f.bound,
            details={"mode": "termwise", "terms": len(f.terms)},
        )
    residuals = euler_residuals(cfg, f)
    for i, r in enumerate(residuals, start=1):
        if not r.is_zero():
            return Report("euler", target, FAIL, dict(r.first_term(), operator=i), f.bound, {"mode": "operator"})
    return Report("euler", target, PASS, None, f.bound, {"mode": "operator"})


def relation_slab(cfg, coord_bound=3):
    """Kernel basis followed by every other relation with |l_j| <= coord_bound."""
    rels = [r.entries for r in kernel_basis(cfg)]
    seen = set(rels)
    for r in relations_in_box(cfg, coord_bound):
        if r.entries not in seen:
            seen.add(r.entries)
            rels.append(r.entries)
    return [Relation(r) for r in rels]


def check_box(cfg, f, rels, target="series"):
    """Apply the box operator of every relation in ``rels``.

    A residual passes when every coefficient up to its guaranteed level is
    exactly zero; that level is reported per relation.
    """
    if isinstance(f, ConeSeries):
        f = LogSeries.from_series(f)
    subs = []
    for rel in rels:
        rel = tuple(rel)
        if not cfg.is_relation(rel):
            raise ValueError(f"{rel} is not a relation")
        res = apply_box(f, rel)
        subs.append(
            Report(
                check="box",
                target=f"{target} rel={list(rel)}",
                verdict=PASS if res.is_zero() else FAIL,
                witness=res.first_term(),
                valid_level=res.bound,
            )
        )
    valid = min((r.valid_level for r in subs), default=f.bound)
    return combine("box", target, subs, valid_level=valid, details={"relations": len(subs)})


def log_plus_gk(gk):
    """log(lambda_k) + G_k as a LogSeries."""
    s = gk.series
    return LogSeries.log(gk.k, s.grading, s.bound) + LogSeries.from_series(s)
