# %% [markdown]
# # Anomalous-skin surface impedance
#
# F(b) and G(b) interpolate between the local limit (b -> 0, F = 1,
# G = 1/2) and the Leontovich limit (b -> inf, b F = b G = 4/(3 sqrt 3)).
# This walk-through compares the closed form with brute-force quadrature
# and shows where the Leontovich impedance takes over.

# %%
import numpy as np

from nonlocal_casimir.impedance import (
    KAPPA, anomalous_b, fg, impedance_anomalous, impedance_leontovich, special_F, special_G,
)
from nonlocal_casimir.material import gold_like

b = np.geomspace(1e-2, 1e4, 13)
F, G = fg(b)
for bi, f, g in zip(b, F, G):
    print(f"b={bi:9.3g}  F={f:.10f}  G={g:.10f}  bF/kappa={bi * f / KAPPA:.6f}")

# %% [markdown]
# The closed form agrees with the defining integrals to round-off.

# %%
worst = max(max(abs(fg(x)[0] - special_F(x)), abs(fg(x)[1] - special_G(x))) for x in b)
print(f"largest |closed - quadrature| = {worst:.2e}")

# %% [markdown]
# At fixed frequency, z_s approaches the momentum-independent Leontovich
# value once b exceeds a few tens.

# %%
model = gold_like()
zeta = 1e14
for target_b in (0.1, 1.0, 10.0, 100.0, 1000.0):
    q = float(anomalous_b(model, zeta, 1.0)) / target_b
    z = impedance_anomalous(model, zeta, q).z_s
    print(f"b={target_b:7.1f}  z_s / z_Leontovich = {z / impedance_leontovich(model, zeta):.5f}")
