"""Shared benchmark systems and helpers for the test suite.

All systems are small underdetermined problems with closed-form solutions,
chosen so each exhibits one behavior of interest.
"""

import math

import numpy as np

# Unique least-l1 nonnegative solution at support {0, 1}; an analytic
# range-space witness is y = (1, -1, 0) giving eta = (1, 1, 0, -7).
UNIQUE_A = np.array([
    [1.0, 0.0, -1.0, -1.0],
    [0.0, -1.0, -1.0, 6.0],
    [0.0, 0.0, -1.0, 1.0],
])
UNIQUE_B = np.array([0.5, -0.5, 0.0])
UNIQUE_X = np.array([0.5, 0.5, 0.0, 0.0])
UNIQUE_WITNESS_Y = np.array([1.0, -1.0, 0.0])
UNIQUE_WITNESS_ETA = np.array([1.0, 1.0, 0.0, -7.0])

# Two tied least-l1 optima (both of norm 10.5): the full-support candidate
# passes the range-space check but its support columns are rank deficient,
# the sparse candidate has full-rank support columns but fails the check
# (its optimal margin is exactly 1).
TIED_A = np.array([
    [1.0, 0.0, -1.0, 1.0],
    [1.0, -0.1, 0.0, -0.2],
    [0.0, 0.0, -1.0, 1.0],
])
TIED_B = np.array([0.5, -0.5, 0.0])
TIED_X_FULL = np.array([0.5, 10.0 / 3.0, 10.0 / 3.0, 10.0 / 3.0])
TIED_X_SPARSE = np.array([0.5, 10.0, 0.0, 0.0])

# Last two columns are antiparallel (spark 2) yet the single sparsest support
# {0, 2} still certifies, so l1 minimization recovers it.
_S3 = 1.0 / math.sqrt(3.0)
_S2 = 1.0 / math.sqrt(2.0)
COHERENT_A = np.array([
    [0.0, -1.0, _S3, 0.0, _S2, -_S2],
    [0.0, 0.0, _S3, -1.0, 0.0, 0.0],
    [-1.0, 0.0, _S3, 0.0, _S2, -_S2],
])
COHERENT_B = np.array([1.0, 1.0, 0.0])
COHERENT_X = np.array([1.0, 0.0, math.sqrt(3.0), 0.0, 0.0, 0.0])

# Three sparsest supports of size two; only {0, 4} certifies, and its
# representative is the unique least-l1 solution.  Analytic witness at
# {0, 4}: y = (5, 5/3, 0), eta = (1, 1/3, -2/3, -1/6, 1, -7/6).
TRIPLE_A = np.array([
    [0.2, 0.0, -0.3, -0.1, 0.5, -0.25],
    [0.0, 0.2, 0.5, 0.2, -0.9, 0.05],
    [0.2, 0.0, -0.3, -0.1, 0.5, -0.25],
])
TRIPLE_B = np.array([0.1, -0.1, 0.1])
TRIPLE_X1 = np.array([0.0, 0.4, 0.0, 0.0, 0.2, 0.0])        # support {1, 4}
TRIPLE_X2 = np.array([0.0, 0.0, 0.0, 4.0, 1.0, 0.0])        # support {3, 4}
TRIPLE_X3 = np.array([2.0 / 9.0, 0.0, 0.0, 0.0, 1.0 / 9.0, 0.0])  # support {0, 4}
TRIPLE_WITNESS_Y = np.array([5.0, 5.0 / 3.0, 0.0])
TRIPLE_WITNESS_ETA = np.array([1.0, 1.0 / 3.0, -2.0 / 3.0, -1.0 / 6.0, 1.0, -7.0 / 6.0])

# The unique least-l1 solution (support {0, 1}, norm 5/6) is denser than the
# unique sparsest solution (the single column 3), so l1 and l0 optima differ.
DENSE_A = np.array([
    [6.0, 4.0, 1.5, 4.0, -1.0],
    [6.0, 4.0, -0.5, 4.0, 0.0],
    [0.0, -2.0, 31.5, -1.0, -1.5],
])
DENSE_B = np.array([4.0, 4.0, -1.0])
DENSE_X = np.array([1.0 / 3.0, 0.5, 0.0, 0.0, 0.0])
DENSE_SPARSEST = np.array([0.0, 0.0, 0.0, 1.0, 0.0])

ALL_SYSTEMS = [
    (UNIQUE_A, UNIQUE_B),
    (TIED_A, TIED_B),
    (COHERENT_A, COHERENT_B),
    (TRIPLE_A, TRIPLE_B),
    (DENSE_A, DENSE_B),
]


def planted_system(rng, m, n, k, low=0.1, high=1.0):
    """Gaussian matrix plus measurements of a random k-sparse positive vector."""
    A = rng.standard_normal((m, n))
    x = np.zeros(n)
    support = rng.choice(n, size=k, replace=False)
    x[support] = rng.uniform(low, high, size=k)
    return A, A @ x, x


def write_csv_matrix(path, A):
    with open(path, "w", encoding="utf-8") as handle:
        for row in np.atleast_2d(A):
            handle.write(",".join(repr(float(v)) for v in row) + "\n")


def write_csv_vector(path, v):
    with open(path, "w", encoding="utf-8") as handle:
        for value in np.asarray(v).reshape(-1):
            handle.write(repr(float(value)) + "\n")
