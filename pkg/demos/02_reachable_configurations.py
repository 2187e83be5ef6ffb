"""
Which configurations can be reached?
====================================

Breadth-first search lists every reachable configuration, and the greedy
removal test decides the same question for one configuration without
searching.  Both agree, and with n pebbles nothing past node 2^n - 1 is
ever pebbled.
"""
from revpebble.game import PebbleConfig, format_config
from revpebble.solvability import enumerate_reachable, is_weakly_solvable

reach = enumerate_reachable(game_length=8, total_pebbles=3)
print(f"{len(reach)} reachable configurations, furthest node {reach.max_node}")
for line in reach.lines()[:8]:
    print("  ", line)

for occ in [{2, 3}, {3}, {4, 6, 7}, {5, 6, 7}]:
    c = PebbleConfig(8, frozenset(occ), 3)
    verdict = is_weakly_solvable(c)
    print(format_config(c), "realizable" if verdict else "not realizable",
          "removal order", verdict.removal_order)
    assert bool(verdict) == (c in reach)

for n in range(1, 5):
    print(f"n={n}: max node {enumerate_reachable(2 ** n, n).max_node}")
