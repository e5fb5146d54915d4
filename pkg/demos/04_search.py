# EXACT COVER WITH MULTIPLICITY
# rows: set partitions of shape 2*lambda, columns: matchings, each row needs c columns
from matchscheme import build_system, solve, seed_from_derivation, hyperoval_factorisation

s = build_system(3, (2, 1))
print(s.num_rows, "rows", s.num_cols, "columns")
out = solve(s)
print(out.status, [str(m) for m in out.solution])

# all 1-factorisations of K_6, with and without fixing the base matching
print(len(solve(s, enumerate_all=True).solutions), len(solve(s, enumerate_all=True, force_base=True).solutions))

# nonexistence at n = 4
for lam in [(2, 1, 1), (2, 2)]:
    out = solve(build_system(4, lam))
    print(lam, out.status, out.nodes, "nodes")

# n = 6, lambda = (3,1,1,1): force the derivation at {11,12} to be the hyperoval set
big = build_system(6, (3, 1, 1, 1))
pins = seed_from_derivation(big, hyperoval_factorisation(3), {11, 12})
out = solve(big, pins=pins, node_limit=100_000)
print("(3,1,1,1) seeded:", out.status, out.nodes, "nodes", round(out.seconds, 1), "s")
