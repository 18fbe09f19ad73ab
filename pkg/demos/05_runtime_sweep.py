# Runtime versus n for the exhaustive and greedy solvers, 20-bit weights.
# Same data as `subsum bench`, printed as a table with a log2 slope fit.
import sys
from statistics import median

import numpy as np

from subsum.cli import bench_rows

ns = list(range(8, 25))
rows = list(bench_rows(ns, ["all"], trials=3, bits=20, seed=0, budget=10.0))
millis = {n: median(float(r["millis"]) for r in rows if r["n"] == n) for n in ns}
for n in ns:
    print(f"n={n:2d}  {millis[n]:9.2f} ms")
top = ns[len(ns) // 2 :]
print("log2(time) slope over upper half:", np.polyfit(top, np.log2([millis[n] for n in top]), 1)[0])

rows = list(bench_rows([64], ["greedy"], trials=5, bits=20, seed=0, budget=10.0))
for r in rows:
    print("greedy n=64 trial", r["trial"], r["outcome"], r["millis"], "ms")
sys.exit(0)
