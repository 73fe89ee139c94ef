# %% [markdown]
# # Which Lax pair?
#
# Two transcriptions of the V coefficient tables are shipped.  The
# zero-curvature residual U_t - V_x + [U, V] on the one-soliton tells them
# apart.  The same happens for the equation itself: the soliton satisfies the
# sign convention produced by the Lax pair, not the other one.

# %%
from nls8.laxpair import zero_curvature_residual
from nls8.model import Coefficients, ComplexField, Grid, make_dataset
from nls8.operators import pde_residual, soliton_stack

A = Coefficients.all_ones()
d = make_dataset((0.3 + 0.2j, 1.0, 1.0))
g = Grid.from_spacing(-20, 20, 0.02, -0.02, 0.02, 0.002)

# %%
for variant in ("reconciled", "printed"):
    _, rep = zero_curvature_residual(d, A, 0.5 + 0.3j, g, variant=variant)
    print(f"{variant:10s} zero-curvature sup {rep.sup_norm:.2e}")

# %%
stack = soliton_stack(d, A, g, 8)
q = ComplexField(g, stack.dx[0])
for convention in ("lax", "printed"):
    for variant in ("reconciled", "printed"):
        _, rep = pde_residual(q, A, 8, stack=stack, variant=variant, convention=convention)
        print(f"odd sign {convention:8s} K7/K8 {variant:10s} residual sup {rep.sup_norm:.2e}")
