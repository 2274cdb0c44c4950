# %% [markdown]
# # D_k and the conjugation by P_{z/M}
#
# D_k F = F[X + M/z] E[-zX] at z^k. Conjugating D_1 by the plethystic
# exponential P_{z/M} produces the whole positive family D_1, D_2, ...

# %%
from qtsym import SymFunc, apply, d_k, macdonald_Ht, parse_operator

one = SymFunc.one()
for k in range(4):
    print(f"D_{k}(1) =", d_k(k, one).format("e"))

# %% [markdown]
# With the signed nabla, D_1 is nabla e_1 nabla^{-1}:

# %%
op = parse_operator("nabla o mul(e[1]) o nabla^-1")
H = macdonald_Ht((2, 1))
print(apply(op, H) == d_k(1, H))

# %% [markdown]
# The z-series z P_{-z/M} D_1 P_{z/M} against D_k, coefficient by
# coefficient, on Ht_(2,1).

# %%
series = apply(parse_operator("P[-z/M] o D[1] o P[z/M]"), H, 3 + 3)
for k in range(1, 4):
    print(k, series.z_coefficient(k - 1) == d_k(k, H))
