# %% [markdown]
# # Modified Macdonald polynomials
#
# Build Ht_mu, look at it in the Schur basis and check the standard
# symmetries by hand. Run with `python notebooks/01_macdonald_basics.py`.

# %%
from qtsym import macdonald_Ht, to_Ht_basis
from qtsym import partition as P
from qtsym.coeffring import swap_qt
from qtsym.symfunc import p, s

for mu in [(1,), (2,), (1, 1), (2, 1), (3,)]:
    print(f"Ht{list(mu)} =", macdonald_Ht(mu).format("s"))

# %% [markdown]
# Swapping q and t matches conjugating the partition, and q = t = 1
# collapses everything to p_1^n.

# %%
mu = (3, 1)
H = macdonald_Ht(mu)
print("q<->t symmetry:", H.map_coefficients(swap_qt) == macdonald_Ht(P.conjugate(mu)))
print("q=t=1 gives p_1^4:", H.substitute("q", 1).substitute("t", 1) == p(1) ** 4)

# %% [markdown]
# Coordinates in the Ht basis. The two coefficients of s_{1,1} are
# exchanged (with a sign) by q <-> t.

# %%
for nu, c in to_Ht_basis(s(1, 1)).items():
    print(nu, c.coefficient(0))
print("Ht[2,2] =", macdonald_Ht((2, 2)).format("s"))
