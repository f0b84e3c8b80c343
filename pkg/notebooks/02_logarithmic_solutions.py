# %% [markdown]
# # The series G_k and logarithmic solutions
#
# G_k collects the relations of L_k with coefficients
# (-1)^(m-1) (m-1)! / prod_{j != k} l_j!, where m = -l_k.  The sum
# log(lambda_k) + G_k is killed by every box operator, and the combination
# log(lambda^l) + sum_k l_k G_k is a full solution for every relation l.

# %%
from gkzint import build_gk, build_log_solution, check_box, check_euler
from gkzint.corpus import corpus_config
from gkzint.solutions import log_plus_gk, relation_slab

E1 = corpus_config("E1")
g = build_gk(E1, 2, 6)
print("G_2 for E1:", g.series)

# %% [markdown]
# For E1 the series is log(1 + lambda_1/lambda_2), so the box operator
# d/dl1 - d/dl2 kills log(lambda_2) + G_2 up to the truncation level.

# %%
print(check_box(E1, log_plus_gk(g), [(1, -1)]).to_json())

# %% [markdown]
# For E2 the coefficients along x = lambda^(-2,1,1) are -C(2t,t)/(2t).

# %%
E2 = corpus_config("E2")
g = build_gk(E2, 1, 5)
for u, c in g.series.items():
    print(u, c)

sol = build_log_solution(E2, (-2, 1, 1), 8)
print("Euler:", check_euler(E2, sol).verdict)
rep = check_box(E2, sol, relation_slab(E2, 3))
print("box over", rep.details["relations"], "relations:", rep.verdict, "valid to level", rep.valid_level)
