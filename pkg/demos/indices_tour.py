"""Modified and area-based epigraph/hypograph indices on a small sample.

Two curves can share the same modified indices while one of them sits
much further from the bulk. The area-based indices see the difference.

Run:  python3 demos/indices_tour.py
"""

import numpy as np

from ehyout import FunctionalSample, area_indices, equispaced_grid, modified_indices

grid = equispaced_grid(101)
t = grid.points
rng = np.random.default_rng(0)

bulk = np.sin(2 * np.pi * t) + 0.2 * rng.standard_normal((30, 1))
near = np.sin(2 * np.pi * t) + 0.7    # just above the bulk
far = np.sin(2 * np.pi * t) + 5.0     # far above the bulk
X = np.vstack([bulk, near, far])

mei, mhi = modified_indices(X, grid)
abei, abhi = area_indices(X, grid)

print("curve   MEI     MHI     ABEI      ABHI")
for name, k in (("near", 30), ("far", 31), ("bulk0", 0)):
    print(f"{name:6s} {mei[k]:.3f}  {mhi[k]:.3f}  {abei[k]:8.3f}  {abhi[k]:8.3f}")

# both shifted curves dominate the bulk, so MHI differs only by the one curve
# between them;
# ABHI grows with the size of the gap
assert abs(mhi[30] - mhi[31]) <= 1 / X.shape[0] + 1e-12
assert abhi[31] > 4 * abhi[30]

# ABEI + ABHI is the total absolute area to every other curve
w = grid.trapezoid_weights()
total = np.abs(X - X[31]).sum(axis=0) @ w
print(f"\nABEI + ABHI for 'far' = {abei[31] + abhi[31]:.6f}, direct area = {total:.6f}")

# reflecting the sample swaps the roles of the two indices
print("reflection holds:", np.array_equal(abhi, area_indices(-X, grid)[0]))
sample = FunctionalSample(grid, X)
print(f"{sample.n} curves on {sample.m} points")
