# %% [markdown]
# # The Hamiltonian and its derivatives
#
# Coefficients come from a counter-based generator keyed by (seed, order),
# so the same seed always gives the same tensors, whatever the chunking.

# %%
import numpy as np

from glasslab import (
    MixtureSpec,
    build_model,
    energy,
    euclidean_hessian,
    gradient,
    projected_hessian,
    random_sphere_point,
)

N = 12
model = build_model(MixtureSpec({2: 1.0, 3: 1.0}), N, seed=3)
x = random_sphere_point(N, np.random.default_rng(0), rho=0.5)
print("H(x) =", energy(model, x))

# %% [markdown]
# Central differences of the energy against the analytic gradient and
# Hessian. The energy is a cubic, so only rounding error remains.

# %%
h = 1e-4
E = np.eye(N)
fd_g = np.array([(energy(model, x + h * e) - energy(model, x - h * e)) / (2 * h) for e in E])
print("gradient rel err", np.abs(fd_g - gradient(model, x)).max() / np.abs(fd_g).max())

H = euclidean_hessian(model, x)
fd_h = np.array(
    [
        [
            (energy(model, x + h * a + h * b) - energy(model, x + h * a - h * b)
             - energy(model, x - h * a + h * b) + energy(model, x - h * a - h * b)) / (4 * h * h)
            for b in E
        ]
        for a in E
    ]
)
print("hessian rel err ", np.abs(fd_h - H).max() / np.abs(H).max())

# %% [markdown]
# Projecting onto the tangent space of the sphere through x leaves a zero
# mode along x, and the remaining eigenvalues interlace the Euclidean ones.

# %%
P = projected_hessian(model, x)
print("|P x| =", np.linalg.norm(P @ x))
print("euclidean:", np.round(np.linalg.eigvalsh(H), 3))
print("projected:", np.round(np.linalg.eigvalsh(P), 3))
