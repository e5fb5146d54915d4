# THE MATCHING SCHEME AND ITS SPECTRUM
# Points are perfect matchings of K_2n; two matchings are related by the
# partition of n read off from the cycles of their union.
from fractions import Fraction

import numpy as np

from matchscheme import Matching, coset_distance, zonal_table, eigenvalue_matrices, krein_q_mumumu
from matchscheme.partitions import format_partition, odd_double_factorial

# two matchings of K_8 whose union has a 6-cycle and a doubled edge
m1 = Matching([(1, 2), (3, 6), (4, 8), (5, 7)])
m2 = Matching([(1, 2), (3, 8), (4, 5), (6, 7)])
print("distance", coset_distance(m1, m2))  # (3, 1)

# ZONAL SPHERICAL FUNCTIONS, n = 4
t = zonal_table(4)
print("\nvalencies", dict(zip(map(format_partition, t.partitions), t.valency)))
print("sum of valencies", sum(t.valency), "= 7!! =", odd_double_factorial(4))
for mu, row in zip(t.partitions, t.omega):
    print(f"{format_partition(mu):>8}", " ".join(f"{str(w):>6}" for w in row))

# P @ Q = |X| I, computed exactly
P, Q = eigenvalue_matrices(t)
PQ = P.dot(Q)
print("\nP Q diagonal", [str(PQ[i, i]) for i in range(len(PQ))])

# floats are only for looking at; the library never uses them
print(np.array(P, dtype=float).round(3))

# KREIN VALUE FOR mu = (1^n): nonzero at n = 4, zero from n = 5 on
for n in (4, 5, 6):
    print("n =", n, "krein", krein_q_mumumu(n))
