"""
Checking the exact score by simulation
======================================

Shuffle a 52 card deck many times and count correct guesses.  The sample
mean should land within a few standard errors of the exact value.
"""

from riffleguess import DeckConfig, closed_form_strategy, expected_score, k_shuffle_matrix
from riffleguess.simulator import SimConfig, estimate_score

for k in (1, 2, 3, 7):
    s = closed_form_strategy(52, k)
    exact = float(expected_score(k_shuffle_matrix(DeckConfig(52, k)), s))
    # same seed gives the same answer for any number of workers
    sim = estimate_score(SimConfig(52, k, 200_000, seed=2024), s, workers=4)
    z = (sim.mean_score - exact) / sim.std_error
    print(f"k={k}: exact {exact:.4f}  simulated {sim.mean_score:.4f} +- {sim.std_error:.4f}  z={z:+.2f}")
