# %% [markdown]
# # Relations and orthant sublattices
#
# A configuration is a list of integer vectors a_1..a_N.  Its relations are
# the integer vectors l with sum_j l_j a_j = 0; the orthant piece L_k keeps
# those with l_k < 0 and every other entry nonnegative.

# %%
from gkzint import enumerate_orthant, kernel_basis, validate_configuration
from gkzint.corpus import corpus

cfg = validate_configuration(2, [(1, 0), (0, 1), (2, -1)], name="E2")
print("unit form h =", cfg.h)
print("kernel basis:", [r.entries for r in kernel_basis(cfg)])

# %% [markdown]
# Only k = 1 has a nontrivial orthant here: a_1 = (a_2 + a_3) / 2 is the
# midpoint of the other two vectors.

# %%
for k in range(1, cfg.N + 1):
    rels = enumerate_orthant(cfg, k, 8)
    print(f"L_{k} up to -l_k <= 8:", [r.entries for r in rels])

# %% [markdown]
# The whole built-in corpus at a glance.

# %%
for c in corpus():
    sizes = [len(enumerate_orthant(c, k, 6)) for k in range(1, c.N + 1)]
    print(f"{c.name}: rank {len(kernel_basis(c))}, |L_k| to level 6 = {sizes}, repeats {c.duplicate_pairs()}")
