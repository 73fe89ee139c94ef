# %% [markdown]
# # Finite differences against the rounding floor
#
# K8 needs eighth x-derivatives.  An eighth-order stencil has truncation error
# O(h^8) but amplifies rounding like eps / h^8, so refining the grid helps only
# down to h of order 0.1.  Exact derivatives of the soliton formula avoid the
# floor altogether.

# %%
from nls8.model import Coefficients, ComplexField, Grid, make_dataset
from nls8.operators import convergence_order, pde_residual, soliton_stack
from nls8.soliton import q_nsoliton

A = Coefficients.all_ones()
d = make_dataset((0.3 + 0.2j, 1.0, 1.0))


def field(h):
    g = Grid.from_spacing(-40, 40, h, -0.02, 0.02, 0.002)
    X, T = g.mesh()
    return ComplexField(g, q_nsoliton(d, A, X, T))


# %%
hs = [0.8, 0.4, 0.2, 0.1, 0.05, 0.025]
errs = []
for h in hs:
    errs.append(pde_residual(field(h), A, 8)[1].sup_norm)
    print(f"h={h:<6}  finite-difference residual {errs[-1]:.2e}")
print("slope before the floor: %.2f over %d grids" % convergence_order(hs, errs))

# %%
q = field(0.02)
for stride in (1, 4, 8):
    print(f"h=0.02 stride {stride}: {pde_residual(q, A, 8, stride=stride)[1].sup_norm:.2e}")
stack = soliton_stack(d, A, q.grid, 8)
print(f"h=0.02 exact x-derivatives: {pde_residual(q, A, 8, stack=stack)[1].sup_norm:.2e}")
