# Bellman's table, capped sumsets and ColorCoding.
from subsum import ColorCodingConfig, Instance, bellman_decides, capped_sumset, color_coding
from subsum.baselines import brute_force_sumset
from subsum.core import SolverStats

stats = SolverStats()
print("t=5, W=1..4 reachable:", bellman_decides(Instance(5, (1, 2, 3, 4)), stats), "lookups", stats.ops)
print("t=1, W={2,3} reachable:", bellman_decides(Instance(1, (2, 3))))

print("{1} (+)_10 {2} =", sorted(capped_sumset({1}, {2}, 10)))
print("{1} (+)_2  {2} =", sorted(capped_sumset({1}, {2}, 2)))

z, t = [3, 5, 8, 13, 21, 34], 40
truth = brute_force_sumset(z, t, max_size=3)
for delta in (0.5, 0.25, 0.1):
    cfg = ColorCodingConfig(k=3, delta=delta, seed=0)
    out = set(color_coding(z, t, cfg))
    print(f"delta={delta}: {cfg.rounds} rounds, recovered {len(out & truth)}/{len(truth)} small-witness sums")
