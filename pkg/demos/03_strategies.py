"""
Bennett's recursion and the springboard strategy
================================================

The recursive strategy pebbles node 2^n - 1 with n pebbles in (3^n - 1)/2
moves.  Allowing a few erasures lets two extra pebbles leapfrog
along, reaching m * 2^n with n + 2 pebbles.
"""
from revpebble.strategies import bennett_pebble, erasure_strategy, move_count

for n in range(1, 7):
    s = bennett_pebble(0, n)
    t = s.verify()
    print(f"bennett n={n}: {len(s)} moves (expected {move_count(n)}), "
          f"peak {t.peak_pebbles}, top node {max(t.final.occupied)}")

for n, m in [(1, 3), (2, 4), (3, 6)]:
    s = erasure_strategy(n, m)
    t = s.verify()
    print(f"erasure n={n} m={m}: reaches {m * 2 ** n}: {t.final.pebbled(m * 2 ** n)}, "
          f"peak {t.peak_pebbles}, erasures {t.erasures_used}, {len(s)} moves")

print(erasure_strategy(1, 3).to_text(), end="")
