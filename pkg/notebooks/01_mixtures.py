# %% [markdown]
# # Mixtures and their targets
#
# A mixture is a set of weights gamma_p. Everything downstream depends on
# xi(z) = sum gamma_p^2 z^p and its second derivative.

# %%
import numpy as np

from glasslab import MixtureSpec, full_rsb_check, ground_state_target, xi_eval

pure = MixtureSpec.pure(2)
mixed = MixtureSpec({2: 1.0, 3: 1.0})

# %% [markdown]
# xi'' at a few radii. For the pure 2-spin model it is flat at 2, so the
# local spectral scale does not depend on where we are in the ball.

# %%
z = np.linspace(0, 1, 5)
print("z       ", z)
print("pure  xi''", xi_eval(pure, z, 2))
print("mixed xi''", xi_eval(mixed, z, 2))

# %% [markdown]
# The energy per site reached by Hessian descent is the integral of
# sqrt(xi''). For gamma_2 = gamma_3 = 1 it has a closed form.

# %%
for name, m in [("pure 2-spin", pure), ("2+3 mixture", mixed)]:
    print(f"{name:12s} target {ground_state_target(m):.10f}")
print("closed form  ", (8**1.5 - 2**1.5) / 9)

# %% [markdown]
# Whether that target is also the ground state depends on concavity of
# xi''^(-1/2). A mixture with no 2-spin term fails at q = 0.

# %%
for m in (pure, mixed, MixtureSpec.pure(3), MixtureSpec({2: 1.0, 4: 1.0})):
    r = full_rsb_check(m)
    print(dict(m.gammas), r.is_concave, r.reason or "")
