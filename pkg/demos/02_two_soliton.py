# %% [markdown]
# # Two pulses passing through each other
#
# Eigenvalues 0.3 + 0.1i and 0.2i, all coefficients one.  Far from the
# interaction the pulses have heights 0.2 and 0.4; near it they overlap.
# The printout shows how long the overlap lasts for these parameters.

# %%
import numpy as np
from scipy.signal import find_peaks

from nls8.model import Coefficients, make_dataset
from nls8.phase import sech_argument_coefficient
from nls8.soliton import q_nsoliton, q_two_soliton_closed

A = Coefficients.all_ones()
d = make_dataset((0.3 + 0.1j, 1.0, 1.0), (0.2j, 1.0, 1.0))
x = np.linspace(-80, 80, 160001)

# %%
speeds = [-sech_argument_coefficient(e.point, A) for e in d.entries]
print("pulse speeds", np.round(speeds, 6), "relative", round(abs(speeds[0] - speeds[1]), 6))

# %%
for t in (-30, -20, -10, -5, 0, 5, 10, 20, 30):
    a = np.abs(q_nsoliton(d, A, x, t))
    peaks, _ = find_peaks(a, height=0.05)
    print(f"t={t:+4d}  maxima at {np.round(x[peaks], 2).tolist()}  heights {np.round(a[peaks], 4).tolist()}")

# %% [markdown]
# The cosh form of the two-soliton and the general formula agree.

# %%
X, T = np.meshgrid(np.linspace(-20, 20, 401), np.linspace(-2, 2, 41), indexing="ij")
q = q_nsoliton(d, A, X, T)
print("max relative difference", np.max(np.abs(q - q_two_soliton_closed(d, A, X, T)) / np.abs(q)))
