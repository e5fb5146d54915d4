# KNOWN FACTORISATIONS, TWO CHECKERS
# check_by_definition counts refinements of every set partition of shape 2*lambda;
# check_by_design looks at the dual distribution only.  They always agree.
from matchscheme import (
    agl11_factorisation,
    check_by_definition,
    check_by_design,
    derive,
    dual_distribution,
    hyperoval_factorisation,
    round_robin,
)
from matchscheme.partitions import format_partition

R = round_robin(4)  # 7 matchings, every edge of K_8 once
print(check_by_definition(R, (3, 1)), check_by_design(R, (3, 1)))

# hyperoval in PG(2,8): 63 matchings of 10 points, every pair of disjoint edges once
H = hyperoval_factorisation(3)
print(len(H), check_by_definition(H, (3, 1, 1)))

# AGL(1,11) acting on the projective line over F_11
A = agl11_factorisation()
print(len(A), check_by_definition(A, (4, 2)), check_by_definition(A, (5, 1)))

# the dual distribution vanishes on every shape dominating (4,2) except (6)
for mu, v in dual_distribution(A).items():
    print(f"  {format_partition(mu):>12}: {v}")

# DERIVATION: keep members containing the edge {9,10} and drop it
D = derive(H, {9, 10})
print("derived", len(D), check_by_definition(D, (3, 1)))

# a broken set gets a witness
bad = R.without(R.matchings[0])
print(check_by_definition(bad, (3, 1)))
