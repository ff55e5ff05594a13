# %% [markdown]
# # Mass near the lower edge
#
# The fraction of eigenvalues within eps of the bottom of the semicircle
# stays bounded below at every point of the ball. This is what makes
# descent directions plentiful.

# %%
from glasslab import ExperimentConfig, delta_calibration, run_edge, xi_eval, MixtureSpec

mixed = MixtureSpec({2: 1.0, 3: 1.0})
for eps in (0.25, 0.5, 0.9):
    print(f"eps={eps}: semicircle mass below the edge + eps is {delta_calibration(xi_eval(mixed, 1.0, 2), eps):.4f}")

# %% [markdown]
# The edge experiment samples points in the ball and on the sphere and
# compares each mass with a quarter of that calibration. Uniform points of a
# high-dimensional ball sit close to its boundary; use `radii_grid` to probe
# the interior.

# %%
cfg = ExperimentConfig.from_dict(
    {
        "mixture": {"gammas": {"2": 1.0, "3": 1.0}},
        "N": 150,
        "eps": 0.5,
        "seed": 4,
        "x_sampling": [{"mode": "ball_uniform", "n": 10, "min_rho": 0.2}, {"mode": "sphere_uniform", "n": 10}],
    }
)
report = run_edge(cfg)
print(report.summary)
for r in report.records[:5]:
    print(f"{r['point']:24s} rho={r['rho']:.3f} mass={r['edge_mass']:.4f} passes={r['passes']}")
