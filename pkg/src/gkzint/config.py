"""A-configurations, their relation lattice, and orthant enumeration."""
import itertools
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import BadConfiguration, BudgetExceeded, NoUnitForm
from .intlinalg import InconsistentSystem, integer_kernel, solve_rational

DEFAULT_NODE_CAP = 10**7


@dataclass(frozen=True)
class AConfiguration:
    """Integer vectors a_1..a_N in Z^n together with the unit form h."""

    n: int
    vectors: tuple
    h: tuple
    name: str = None

    @property
    def N(self):
        return len(self.vectors)

    def row(self, i):
        """The i-th coordinate (0-based) of every vector: (a_i1, ..., a_iN)."""
        return tuple(a[i] for a in self.vectors)

    def apply(self, l):
        """sum_j l_j a_j as an n-tuple."""
        return tuple(sum(lj * a[i] for lj, a in zip(l, self.vectors)) for i in range(self.n))

    def is_relation(self, l):
        return len(l) == self.N and not any(self.apply(l))

    def duplicate_pairs(self):
        """1-based index pairs (i, j), i < j, with a_i == a_j."""
        return [
            (i + 1, j + 1)
            for i, j in itertools.combinations(range(self.N), 2)
            if self.vectors[i] == self.vectors[j]
        ]

    def to_dict(self):
        return {"name": self.name, "n": self.n, "vectors": [list(a) for a in self.vectors]}


def validate_configuration(n, vectors, name=None):
    """Check shapes and compute the unit form h with h . a_j = 1.

    Raises :class:`BadConfiguration` on malformed input and
    :class:`NoUnitForm` (with an integer witness) when no such h exists.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise BadConfiguration(f"n must be a positive integer, got {n!r}")
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise BadConfiguration("at least one vector is required")
    for j, v in enumerate(vectors):
        if len(v) != n:
            raise BadConfiguration(f"vector {j + 1} has {len(v)} entries, expected {n}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise BadConfiguration(f"vector {j + 1} has non-integer entries")
    sol = solve_rational([list(v) for v in vectors], [1] * len(vectors))
    if isinstance(sol, InconsistentSystem):
        raise NoUnitForm(
            "no linear form h satisfies h(a_j) = 1 for all j "
            f"(witness multipliers {sol.witness})",
            witness=sol.witness,
        )
    cfg = AConfiguration(n=n, vectors=tuple(vectors), h=tuple(sol), name=name)
    dups = cfg.duplicate_pairs()
    if dups:
        warnings.warn(
            f"configuration {name or ''} repeats vectors {dups}; "
            "the pointed-cone guarantee does not apply",
            stacklevel=2,
        )
    return cfg


_CONFIG_KEYS = {"name", "n", "vectors"}


def config_from_dict(data):
    if not isinstance(data, dict):
        raise BadConfiguration("configuration must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise BadConfiguration(f"unknown keys: {sorted(unknown)}")
    for key in ("n", "vectors"):
        if key not in data:
            raise BadConfiguration(f"missing key {key!r}")
    if not isinstance(data["vectors"], list) or not all(isinstance(v, list) for v in data["vectors"]):
        raise BadConfiguration("'vectors' must be a list of integer lists")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise BadConfiguration("'name' must be a string")
    return validate_configuration(data["n"], data["vectors"], name=name)


def load_configuration(path):
    """Read a JSON configuration file.

    Parse errors are re-raised as :class:`BadConfiguration` with the line
    and column reported by the JSON decoder.
    """
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadConfiguration(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(data)


@dataclass(frozen=True)
class Relation:
    """An integer vector l with sum_j l_j a_j = 0."""

    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def __neg__(self):
        return Relation(tuple(-x for x in self.entries))

    def positive_part(self):
        return tuple(max(x, 0) for x in self.entries)

    def negative_part(self):
        return tuple(max(-x, 0) for x in self.entries)

    def is_zero(self):
        return not any(self.entries)


def kernel_basis(cfg):
    """Canonical integer basis of the relation lattice L."""
    return [Relation(tuple(v)) for v in integer_kernel([list(a) for a in cfg.vectors])]


@dataclass(frozen=True)
class OrthantRelationSet:
    """Nonzero l in L_k with 1 <= -l_k <= level_bound, sorted."""

    k: int
    level_bound: int
    relations: tuple = field(default=())
    complete: bool = True

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)


def enumerate_orthant(cfg, k, m_max, node_cap=DEFAULT_NODE_CAP):
    """All l in L_k (l_k < 0, l_j >= 0 otherwise) with -l_k <= m_max.

    ``k`` is 1-based.  For each level m the nonnegative l_j (j != k) with
    sum l_j = m and sum l_j a_j = m a_k are found by depth-first search; a
    branch is cut when the remaining target leaves the box spanned by the
    remaining vectors.  Raises :class:`BudgetExceeded` past ``node_cap``
    search nodes.
    """
    N = cfg.N
    if not 1 <= k <= N:
        raise ValueError(f"k must lie in 1..{N}")
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    free = [j for j in range(N) if j != k - 1]
    vecs = [cfg.vectors[j] for j in free]
    n = cfg.n
    # coordinate-wise min/max over vecs[t:], used to prune
    lo = [[min(v[i] for v in vecs[t:]) for i in range(n)] for t in range(len(vecs))]
    hi = [[max(v[i] for v in vecs[t:]) for i in range(n)] for t in range(len(vecs))]
    nodes = 0
    found = []

    def feasible(t, rem, target):
        return all(rem * lo[t][i] <= target[i] <= rem * hi[t][i] for i in range(n))

    def dfs(t, rem, target, partial):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded(f"orthant enumeration exceeded {node_cap} nodes")
        if t == len(vecs) - 1:
            v = vecs[t]
            if all(rem * v[i] == target[i] for i in range(n)):
                yield partial + [rem]
            return
        v = vecs[t]
        for c in range(rem, -1, -1):
            nt = [target[i] - c * v[i] for i in range(n)]
            if feasible(t + 1, rem - c, nt):
                yield from dfs(t + 1, rem - c, nt, partial + [c])

    if not vecs:
        return OrthantRelationSet(k, m_max, (), True)
    a_k = cfg.vectors[k - 1]
    for m in range(1, m_max + 1):
        target = [m * x for x in a_k]
        if not feasible(0, m, target):
            continue
        level = []
        for sol in dfs(0, m, target, []):
            l = [0] * N
            for j, c in zip(free, sol):
                l[j] = c
            l[k - 1] = -m
            level.append(tuple(l))
        level.sort()
        found.extend(Relation(l) for l in level)
    return OrthantRelationSet(k, m_max, tuple(found), True)


def relations_in_box(cfg, bound):
    """All nonzero l in L with |l_j| <= bound, in lexicographic order.

    The last coordinate is solved for rather than scanned when possible.
    """
    N = cfg.N
    out = []
    rng = range(-bound, bound + 1)
    for head in itertools.product(rng, repeat=N - 1):
        # sum l_j = 0 pins the last entry
        last = -sum(head)
        if abs(last) > bound:
            continue
        l = head + (last,)
        if any(l) and cfg.is_relation(l):
            out.append(Relation(l))
    return out


def relation_gcd(l):
    g = 0
    for x in l:
        g = gcd(g, x)
    return g


def level_of(l, grading):
    return sum(Fraction(w) * x for w, x in zip(grading, l))
