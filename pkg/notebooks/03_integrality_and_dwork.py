# %% [markdown]
# # Integrality of exp(G_k)
#
# exp(G_k) has integer coefficients.  Per prime p this is equivalent to
# p*G_k(lambda) - G_k(lambda^p) having coefficients divisible by p, which in
# turn reduces to divisibility properties of multinomial coefficients.

# %%
from fractions import Fraction

from gkzint import build_gk, dwork_criterion, exp_integrality, scan_congruences, verify_congruence_4_3_to_4_8
from gkzint.corpus import corpus_config

E2 = corpus_config("E2")
g = build_gk(E2, 1, 10)
rep = exp_integrality(g, 10)
print("exp G_1 along x:", [str(c) for _, c in rep.series.items()])

# %% [markdown]
# The same fact prime by prime, through two independent routes.

# %%
for p in (2, 3, 5, 7):
    series_route = dwork_criterion(g, p, 10)
    valuation_route = verify_congruence_4_3_to_4_8(E2, 1, 10, [p])
    print(p, series_route.verdict, valuation_route.verdict, "least margin:", series_route.witness["margin"])

# %% [markdown]
# Dividing G_k by 2 breaks integrality at p = 2, and both checks notice.

# %%
half = type(g)(g.k, g.series * Fraction(1, 2), g.m_max)
print(dwork_criterion(half, 2, 10).verdict, exp_integrality(half, 10).verdict)

# %%
print(scan_congruences(3, 8, [2, 3, 5]).to_json())
