"""Evaluation metrics on constructed inputs."""

import numpy as np

from dyadicmotion.metrics import (
    GaussianFit,
    KeypointTrack,
    boundary_smoothness,
    condition_following,
    correlate,
    diversity,
    frechet_distance,
    frechet_from_fits,
    mean_jerk,
)

rng = np.random.default_rng(0)

# squared Frechet distance: N(0,1) vs N(1,1) in 1-d is exactly 1
print("FFD N(0,1) vs N(1,1):",
      frechet_from_fits(GaussianFit([0.0], [[1.0]]), GaussianFit([1.0], [[1.0]]), eps_reg=0.0))

a = rng.normal(size=(500, 8))
b = rng.normal(0.3, 1.2, size=(500, 8))
print(f"FFD on sampled 8-d sets: {frechet_distance(a, b):.3f} "
      f"(self-distance {frechet_distance(a, a.copy()):.2e})")

# diversity over time-averaged features
samples = [rng.normal(loc=i % 3, size=(30, 8)) for i in range(10)]
print(f"diversity over 5 random disjoint pairs: {diversity(samples, pairs=5, seed=1):.3f}")

# jerk: cubic trajectories have constant third derivative
t = np.arange(20.0)
track = np.zeros((20, 1, 3))
track[:, 0, 0] = t**3
print("mean jerk of p(t)=t^3 at 1 fps:", mean_jerk(KeypointTrack(track, fps=1.0)))

# boundary smoothness: exp(-jerk/sigma) around condition transitions
quiet = KeypointTrack(np.zeros((60, 2, 3)), fps=30.0)
print("smoothness of a perfectly still track:", boundary_smoothness(quiet, [30]))

# condition following error over a conditioned window
gen = np.zeros((40, 6))
gen[10:30, 0] = 0.5
print("following error with 0.5-norm deviation:",
      condition_following(gen, np.zeros((40, 6)), 10, 30))

# metric-vs-human correlation with p-values
human = np.array([-1.8, -0.4, 0.2, 0.6, 1.0, 1.6])
metric = 2.0 * human + rng.normal(0, 0.05, size=6)
result = correlate(human, metric)
print(f"pearson {result.pearson_r:.3f}, kendall {result.kendall_tau:.3f}, "
      f"spearman {result.spearman_rho:.3f}")
