# %% [markdown]
# # A single bright pulse
#
# One eigenvalue zeta = 0.3 + 0.2i with unit norming constants and every
# coefficient A_n = 1.  The pulse is a hyperbolic secant of height 2 Im(zeta)
# that travels at constant speed.

# %%
import numpy as np

from nls8.model import Coefficients, SpectralPoint, make_dataset
from nls8.soliton import one_soliton_shape, q_nsoliton, q_one_soliton_closed
from nls8.verify import peak_position

A = Coefficients.all_ones()
d = make_dataset((0.3 + 0.2j, 1.0, 1.0))
x = np.linspace(-40, 40, 8001)

# %%
shape = one_soliton_shape(SpectralPoint(0.3, 0.2), 1.0, A)
print(f"height {shape.amplitude:.6f}, velocity {shape.velocity:.6f}")

# %% [markdown]
# The general formula and the sech form are two different code paths.

# %%
for t in (-2.0, 0.0, 2.0):
    q = q_nsoliton(d, A, x, t)
    qc = q_one_soliton_closed(SpectralPoint(0.3, 0.2), 1.0, A, x, t)
    print(f"t={t:+.1f}  max|q|={np.abs(q).max():.12f}  max|q - q_sech|={np.abs(q - qc).max():.1e}")

# %% [markdown]
# Track the maximum in time; its slope is the velocity printed above.

# %%
ts = np.linspace(-2, 2, 9)
centres = [peak_position(lambda s, t: q_nsoliton(d, A, s, t), t, -40, 40)[0] for t in ts]
for t, c in zip(ts, centres):
    print(f"t={t:+.2f}  x_peak={c:+.6f}")
print("fitted slope", np.polyfit(ts, centres, 1)[0])
