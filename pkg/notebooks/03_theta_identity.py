# %% [markdown]
# # Theta operators
#
# Theta_k = Pi e_k[X/M] Pi^{-1}. The commutator with D_1 telescopes into
# the higher D's; here it is checked on one Ht_mu, then by the suite runner.

# %%
from qtsym import SymFunc, apply_theta, d_k, macdonald_Ht, run_suite

H = macdonald_Ht((2, 1))
k = 2
lhs = apply_theta(k, d_k(1, H)) - d_k(1, apply_theta(k, H))
rhs = SymFunc.zero()
for i in range(1, k + 1):
    rhs = rhs + d_k(i + 1, apply_theta(k - i, H)) * (-1) ** i
print("commutator identity on Ht_(2,1), k = 2:", lhs == rhs)

# %%
rep = run_suite("theta-commutator", 3, 3)
print(rep.summary())
