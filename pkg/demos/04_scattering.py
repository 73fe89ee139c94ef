# %% [markdown]
# # Scattering data of a soliton
#
# Integrate the Jost solutions of the one-soliton potential at t = 0 and read
# off the scattering matrix.  The potential is reflectionless (s12 = 0) and
# its transmission coefficient s22 vanishes at the eigenvalue.

# %%
import numpy as np

from nls8.model import Coefficients, make_dataset
from nls8.scattering import s22_at, s22_reflectionless, scattering_matrices, soliton_slice

A = Coefficients.all_ones()
d = make_dataset((0.3 + 0.2j, 1.0, 1.0))
qs = soliton_slice(d, A, 0.0)
TOL = 1e-6   # |q(+-40)| is about 1e-7

# %%
for s in scattering_matrices(qs, np.linspace(-2, 2, 9), decay_tol=TOL):
    print(f"zeta={s.zeta.real:+.2f}  |s12|={abs(s.s12):.1e}  s22={s.s22:.6f}  "
          f"exact={s22_reflectionless(d, s.zeta):.6f}  |det S - 1|={abs(s.det - 1):.1e}")

# %%
for z in (0.3 + 0.2j, 0.3 + 0.6j, -0.5 + 0.1j, 1.0 + 1.0j):
    print(f"s22({z}) = {s22_at(qs, z, decay_tol=TOL):.8f}   exact {s22_reflectionless(d, z):.8f}")
