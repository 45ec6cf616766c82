"""Chi-square goodness of fit on bounded draws, under both rekey policies.

Generates uniform integers in [0, 99] by rejection sampling and checks that
the 100 bins are equally filled (df = 99). Uses 4M draws for a quick demo;
pass a count argument for the full 39.6M-draw run.

Run: python3 demos/03_chi_square_quality.py [count]
"""

import sys

from arc4rng import (
    Engine,
    Histogram,
    RekeyPolicy,
    SEED_SIZE,
    chi_square_test,
    uniform_batch,
)

count = int(sys.argv[1]) if len(sys.argv) > 1 else 4_000_000
seed = bytes(range(SEED_SIZE))

print(f"{count:,} draws of uniform(100), 100 bins, df = 99")
print()
for policy in (RekeyPolicy.fixed(), RekeyPolicy.fuzzed()):
    engine = Engine(seed, policy)
    values, drawn = uniform_batch(engine, 100, count)
    hist = Histogram.categorical(values, 100)
    result = chi_square_test(hist, [count / 100] * 100)
    print(f"{policy.describe():>22}: chi2 = {result.statistic:8.3f}  "
          f"p = {result.p_value:.4f}  rekeys = {engine.rekey_count}  "
          f"rejected draws = {drawn - count}")

print()
print("a p-value comfortably inside (0.001, 0.999) means the bins are as")
print("even as a true uniform source would make them.")
