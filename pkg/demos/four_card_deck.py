"""
A four card deck, shuffled once
===============================

The smallest interesting case, worked entirely in exact arithmetic.
"""

from riffleguess import closed_form_strategy, exact_strategy, expected_score, single_shuffle_matrix
from riffleguess.oracle import enumerate_single_shuffle

# Count where each label lands over all 16 equally likely bit strings
freq = enumerate_single_shuffle(4)
print("interleaving counts (total %d):" % freq.total)
print(freq.counts)

# The closed formula gives the same matrix, divided by 2^4
P = single_shuffle_matrix(4)
print(P.fractions())
assert freq.normalized() == P.data

# Guess the most likely label at every position
s = exact_strategy(P)
print("best guesses:", s.guesses)
print("expected correct guesses:", expected_score(P, s))

# Row 3 shows why the mirrored block rule is preferred over the literal one:
# label 3 has probability 6/16 there, label 4 only 4/16
print("row 3:", [str(P.entry(3, j)) for j in range(1, 5)])
print("closed-form guess at position 3:", closed_form_strategy(4, 1).guess(3))
