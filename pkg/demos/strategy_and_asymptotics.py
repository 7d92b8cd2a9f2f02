"""
Block strategies and how the score decays
=========================================

The optimal guess follows blocks of width 2^k mirrored about the centre
once the deck is large enough.  The score itself grows like sqrt(n) and
drops by about sqrt(2) per extra shuffle when k is large.
"""

from riffleguess import (Backend, asymptotic_expected, closed_form_strategy, exact_strategy,
                         expected_score, shuffle_powers)

print(closed_form_strategy(24, 2).guesses)

print(f"{'n':>5} {'k':>2} {'optimal':>9} {'blocks':>9} {'leading':>9}")
for n in (52, 256, 1024):
    for P in shuffle_powers(n, 4, Backend.FLOAT64):
        if P.k == 0:
            continue
        best = expected_score(P, exact_strategy(P))
        blocks = expected_score(P, closed_form_strategy(n, P.k))
        print(f"{n:5d} {P.k:2d} {best:9.4f} {blocks:9.4f} {asymptotic_expected(n, P.k):9.4f}")

# Ratio of leading terms between consecutive k; it approaches sqrt(2) only slowly
for k in range(1, 6):
    print(k, asymptotic_expected(1, k) / asymptotic_expected(1, k + 1))
