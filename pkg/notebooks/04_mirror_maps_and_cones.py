# %% [markdown]
# # Mirror maps and the common cone
#
# Combining several G_k needs a grading positive on all their exponents at
# once.  An exact LP either finds one or exhibits nonnegative multipliers
# that sum the generators to zero.

# %%
from gkzint import mirror_coordinate, mirror_map, pointedness_certificate
from gkzint.corpus import corpus_config
from gkzint.geometry import common_grading, cone_generators

for name in ("E1", "E2", "E5"):
    cfg = corpus_config(name)
    out = pointedness_certificate(cone_generators(cfg, 6))
    print(name, type(out).__name__, [str(x) for x in getattr(out, "w", ())])

# %% [markdown]
# For E2, q = lambda^l exp(-2 G_1) with l = (-2, 1, 1) is C(x) - 1, the
# Catalan generating function without its constant term.

# %%
E2 = corpus_config("E2")
series, rep = mirror_map(E2, (-2, 1, 1), 10)
q = mirror_coordinate(series, (-2, 1, 1))
print(rep.verdict, [str(c) for _, c in q.items()])

# %% [markdown]
# E5 has two nontrivial orthants; the mirror map for a mixed relation uses
# the certificate grading.

# %%
E5 = corpus_config("E5")
print("common grading:", [str(x) for x in common_grading(E5).w])
series, rep = mirror_map(E5, (-1, -1, 1, 1), 8)
print(rep.verdict, len(series.terms), "terms; product equals direct exp:", rep.details["product_matches_direct_exp"])
