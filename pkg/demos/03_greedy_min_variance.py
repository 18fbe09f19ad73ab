# Greedy prune-and-merge for positive weights.
from itertools import combinations

from subsum import GreedyConfig, Instance, TrackedResidual, prune_and_merge, solve_greedy
from subsum.core import SolverStats
from subsum.gen import GenSpec, gen_random
from subsum.greedy import sample_variance, solution_variance

# Round-by-round residuals for t=24, W=1..8 (weights taken largest first).
live = [TrackedResidual(24)]
for k, w in enumerate(range(8, 0, -1), start=1):
    live = prune_and_merge(live, w, w, k)
    print(f"round {k} (w={w}): {len(live):2d} residuals, smallest {live[-1].value}")
    if live[-1].value == 0:
        print("   zero reached via", sorted(live[-1].taken, reverse=True))
        break

sol = solve_greedy(Instance(24, tuple(range(1, 9))))
print("solve_greedy:", sorted(sol.values, reverse=True), "variance %.4f" % solution_variance(sol)[0])

# Compare against every solution of the same instance.
allsols = [c for r in range(1, 9) for c in combinations(range(1, 9), r) if sum(c) == 24]
ranked = sorted((sample_variance(c), c) for c in allsols if len(c) > 1)
print("lowest-variance solutions:", ranked[:3])

# At n=64 with 20-bit weights the residual set is kept as a bitset.
stats = SolverStats()
inst = gen_random(GenSpec(n=64, bit_length=20, seed=3))
sol = solve_greedy(inst, GreedyConfig(round_bound=64), stats)
print("n=64:", "found" if sol else "none", "after", stats.rounds, "rounds; peak residuals", stats.peak_residuals)

# A beam bound trades completeness for memory.
stats = SolverStats()
sol = solve_greedy(inst, GreedyConfig(beam_limit=5000), stats)
print("beam 5000:", "found" if sol else "not found", stats.as_dict())
