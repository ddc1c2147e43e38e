"""A reduced Monte-Carlo table over a few simulation models.

Prints median (sd) of TPR, FPR, MCC and AUC per model and writes the long
format CSV. Increase REPS for tighter numbers; replication r uses seed 1 + r.

Run:  python3 demos/small_benchmark.py [out.csv]
"""

import sys

from ehyout import run_benchmark

REPS = 5
summary = run_benchmark([1, 4, 9, 14, 19], [0.05, 0.1], REPS, seed=1)
print(summary.format_table())
if len(sys.argv) > 1:
    summary.to_csv(sys.argv[1])
    print("wrote", sys.argv[1])
