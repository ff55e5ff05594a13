# %% [markdown]
# # Hessian descent
#
# Start at the origin and take K orthogonal steps of length sqrt(N/K), each
# along the bottom eigenvector of the tangent-space Hessian. The squared norm
# grows by N/K per step, so the walk ends on the sphere.

# %%
import math

import numpy as np

from glasslab import DescentConfig, MixtureSpec, build_model, euclidean_hessian, ground_state_target, hessian_descent

N, K = 300, 150
pure = build_model(MixtureSpec.pure(2), N, seed=5)
trace = hessian_descent(pure, DescentConfig(steps=K), seed=5)
lam = np.linalg.eigvalsh(euclidean_hessian(pure, np.zeros(N)))[0]
print(f"pure 2-spin: E/N = {trace.energy_per_site:.4f}")
print(f"  sphere minimum lambda_min/2 = {lam / 2:.4f}, limit -sqrt(2) = {-math.sqrt(2):.4f}")
print(f"  |x_K|^2 / N = {trace.rho[-1]:.12f}")

# %% [markdown]
# For a mixture the per-step gain follows sqrt(xi''(k/K)), so increments
# grow along the path.

# %%
mixed = build_model(MixtureSpec({2: 1.0, 3: 1.0}), 150, seed=6)
trace = hessian_descent(mixed, DescentConfig(steps=K), seed=6)
inc = trace.increments
print(f"2+3 mixture: E/N = {trace.energy_per_site:.4f}, target {-ground_state_target(mixed.mixture):.4f}")
print("corr(increments, prediction) =", np.corrcoef(inc, trace.predicted_increment)[0, 1].round(3))
for k in range(0, K, K // 5):
    print(f"step {k:3d} increment {inc[k]:8.4f}  predicted {trace.predicted_increment[k]:8.4f}")
