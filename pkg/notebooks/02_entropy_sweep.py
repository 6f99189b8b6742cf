# %% [markdown]
# # Free energy and entropy through the crossover
#
# The crossover parameter A grows as T^(1/3).  Below A ~ 0.3 the small-A
# closed form applies, above A ~ 100 the large-A one; the contour-form
# engine covers everything in between.  With alpha_s = 0 the entropy stays
# negative and vanishes as T^(2/3) at the lowest temperatures.
#
# The "computed" alpha_p cancels the static p-term only to first order in
# the screening length; the O(u^2) remainder is linear in T and adds a tiny
# constant to S, visible once S itself is ~1e-17.  The self-consistent
# alpha_p cancels it exactly.

# %%
import numpy as np

from nonlocal_casimir import asymptotics
from nonlocal_casimir.lifshitz import AlphaParameterization, entropy, tau
from nonlocal_casimir.material import ResponseKind, gold_like
from nonlocal_casimir.validation import temperature_for_A

model = gold_like(response=ResponseKind.ANOMALOUS_LIMIT)
a = 2e-7
alpha = AlphaParameterization(0.0, "computed")
exact_alpha = AlphaParameterization(0.0, "self_consistent")

# %%
for A in (0.01, 0.03, 0.1, 0.3, 1.0, 3.0):
    T = temperature_for_A(model, a, A)
    first_order = entropy(model, a, T, alpha).S
    numeric = entropy(model, a, T, exact_alpha).S
    closed = asymptotics.entropy_small_A(model, a, T, 0.0) if A < 1 else float("nan")
    print(f"A={A:5.2f}  T={T:9.3e} K  tau={tau(a, T):8.2e}  S(computed)={first_order:11.4e}  "
          f"S={numeric:11.4e}  S_small_A={closed:11.4e}  S/T^(2/3)={numeric / T ** (2 / 3):10.4e}")

# %% [markdown]
# With alpha_s = 1/2 the entropy instead tends to a nonzero constant,
# (k / 8 pi a^2) zeta(3) / 2.

# %%
from scipy.constants import k
from nonlocal_casimir.quadrature import zeta3

half = AlphaParameterization(0.5, "computed")
T = temperature_for_A(model, a, 0.01)
print(entropy(model, a, T, half).S / (k / (8 * np.pi * a * a) * zeta3() / 2))
