"""
Splitting a row into binomial pieces
====================================

After k shuffles, the label at position i is an equal-weight mixture of 2^k
shifted sums of two binomials.  Here n = 40, i = 15, k = 2.
"""

import numpy as np

from riffleguess import DeckConfig, k_shuffle_matrix, row_pmf
from riffleguess.mixture import component_moments, components, peak_estimate, recompose

n, i, k = 40, 15, 2

for c in components(n, i, k):
    mean, var = component_moments(c)
    peak = peak_estimate(c)
    print(f"t={c.t} L={list(c.index.bits)}  "
          f"Bin({c.b1_trials},{c.b1_prob}) + Bin({c.b2_trials},{c.b2_prob}) + 1  "
          f"mean={float(mean):6.2f} var={float(var):5.2f} mode={peak.mode}")

# Averaging the pieces gives back the matrix row exactly
row = row_pmf(k_shuffle_matrix(DeckConfig(n, k)), i)
assert recompose(n, i, k) == row

# The narrowest piece has the tallest peak, and it decides the best guess
probs = row.to_float()
print("most likely label at position 15:", int(np.argmax(probs)) + 1)
