# WHICH n CAN CARRY A lambda-FACTORISATION OF INDEX 1?
# Only necessary conditions: divisibility of sizes, the parts rule, the
# two-part chain and the shapes obtained by deleting parts.
from matchscheme import feasibility_screen, screen_table
from matchscheme.partitions import partitions_of, format_partition

for pattern in ["n-2,2", "n-3,3", "n-3,2,1", "n-4,4", "n-4,3,1", "n-4,2,2", "n-5,5"]:
    table = screen_table(pattern, range(1, 400))
    ok = [n for n, v in table.items() if not v]
    print(f"{pattern:>10}: {ok[:10]}{' ...' if len(ok) > 10 else ''}")

# all shapes at n = 6, with the reasons
for lam in partitions_of(6):
    reasons = sorted({v.rule for v in feasibility_screen(lam)})
    print(f"{format_partition(lam):>12}", reasons or "not ruled out")

# higher index can reopen a shape
print("(2,2) index 3:", [v.rule for v in feasibility_screen((2, 2), 3)])
