# Probabilistic search over short random pieces.
#
# Each round samples indices with replacement, keeps the distinct ones and
# runs the doubling expansion with an early exit.  Anything returned is
# certified; None only means "not found this time".
from subsum import GenSpec, ProbeConfig, gen_planted, solve_probabilistic
from subsum.core import SolverStats

inst, witness = gen_planted(GenSpec(n=40, bit_length=20, planted_size=4, seed=7))
print("n =", inst.n, "target =", inst.target, "planted indices", witness.indices)

for piece in (8, 12, 16):
    stats = SolverStats()
    sol = solve_probabilistic(inst, ProbeConfig(piece_length=piece, repeat_times=2000, seed=1), stats)
    found = sol.indices if sol else None
    print(f"piece_length={piece:2d}: rounds used {stats.rounds:4d}, found {found}")

# Success rate as a function of the round budget.
hits = {r: 0 for r in (10, 50, 200)}
for seed in range(50):
    inst, _ = gen_planted(GenSpec(n=12, bit_length=20, planted_size=3, seed=seed))
    for r in hits:
        hits[r] += solve_probabilistic(inst, ProbeConfig(6, r, seed=seed)) is not None
print({r: h / 50 for r, h in hits.items()})
