# %% [markdown]
# # Semicircle law and Catalan moments
#
# At a point with radius parameter rho, the projected Hessian spectrum is
# close to a semicircle of radius 2 sqrt(xi''(rho)).

# %%
import math

import numpy as np

from glasslab import (
    MixtureSpec,
    SemicircleLaw,
    build_model,
    catalan_target,
    esd,
    north_pole,
    random_sphere_point,
    trace_moments,
    w1_distance,
)

N = 300
mixed = MixtureSpec({2: 1.0, 3: 1.0})
model = build_model(mixed, N, seed=1)
rng = np.random.default_rng(1)

for rho in (0.25, 0.5, 1.0):
    x = random_sphere_point(N, rng, rho=rho)
    radius = 2 * math.sqrt(model.xi2(x))
    d = esd(model, x)
    print(f"rho={rho:4.2f} radius={radius:.3f} W1={w1_distance(d, SemicircleLaw(radius)):.4f}")

# %% [markdown]
# A coarse text histogram against the semicircle density at the north pole.

# %%
x = north_pole(N)
radius = 2 * math.sqrt(model.xi2(x))
counts, edges = np.histogram(esd(model, x).values, bins=12, range=(-radius, radius))
law = SemicircleLaw(radius)
for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
    expected = N * (law.cdf(hi) - law.cdf(lo))
    print(f"{lo:6.2f} {'#' * int(c // 2):30s} {c:3d} (semicircle {expected:5.1f})")

# %% [markdown]
# Normalized trace moments tend to Catalan numbers for even k and to zero
# for odd k. Five fresh disorder draws per estimate.

# %%
for r in trace_moments(model, x, [2, 3, 4, 6], trials=5):
    print(f"k={r.k} normalized={r.normalized:7.4f} +- {r.stderr:.4f}  target {catalan_target(r.k)}")
