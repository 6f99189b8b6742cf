# %% [markdown]
# # How large must A be for the large-A closed form?
#
# The large-A form keeps terms through 1/A.  Comparing with the contour
# engine (itself checked against the direct Matsubara sum) shows the
# remainder behaves like c/A^2 with c of order 70, so a 5 % agreement
# needs A of order 100.

# %%
from nonlocal_casimir import asymptotics
from nonlocal_casimir.lifshitz import (
    AlphaParameterization, delta_f_abel_plana, energy_prefactor, temperature_from_tau,
)
from nonlocal_casimir.material import ResponseKind, gold_like
from nonlocal_casimir.quadrature import zeta3
from nonlocal_casimir.validation import separation_for

model = gold_like(response=ResponseKind.ANOMALOUS_LIMIT)
alpha = AlphaParameterization(0.0, "self_consistent")
tau_value = 1e-4

# %%
for A in (10, 30, 100, 300, 1000):
    a = separation_for(model, A, tau_value)
    T = temperature_from_tau(a, tau_value)
    pref = energy_prefactor(a, T)
    engine = delta_f_abel_plana(model, a, T, alpha).delta_F / pref
    closed = asymptotics.delta_f_large_A(model, a, T, alpha) / pref
    print(f"A={A:5d}  engine={engine:.6f}  closed={closed:.6f}  "
          f"rel={closed / engine - 1:+.3%}  (engine-closed) A^2/zeta3={(engine - closed) * A * A / zeta3():.1f}")
