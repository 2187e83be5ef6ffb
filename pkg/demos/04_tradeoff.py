"""
Trading space for erased bits
=============================

Each row gives up k blocks of space and pays 2^(k+2) - 1 erased blocks.
The trade-off strategy is then replayed to check that it reaches the end
of the game within those budgets.
"""
from revpebble.strategies import TRADEOFF_CSV_HEADER, tradeoff_strategy, tradeoff_table

n = 10
print(TRADEOFF_CSV_HEADER)
for row in tradeoff_table(n, range(1, 8)):
    print(row.csv())

for row in tradeoff_table(n, range(1, 5)):
    t = tradeoff_strategy(row.erased_bits_blocks, n).verify()
    print(f"k={row.k}: peak {t.peak_pebbles} <= {row.space_blocks}, "
          f"erasures {t.erasures_used} <= {row.erased_bits_blocks}, "
          f"top node {max(t.final.occupied)} >= {2 ** n - 1}")
