# The doubling residual sequence and exhaustive enumeration.
#
# Start from [t]; each weight appends a shifted copy of everything so far.
# A zero at position k means the weights picked out by the bits of k-1 sum
# to t.
import numpy as np

from subsum import Instance, decode_position, position_of, residual_at, solve_all
from subsum.enumerative import doubling_sequence

inst = Instance(5, (1, 2, 3, 4))
seq = doubling_sequence(inst)
print("sequence:", seq.tolist())

zeros = np.flatnonzero(seq == 0) + 1
print("zero positions:", zeros.tolist())
for k in zeros:
    print(f"  k={k}: indices {decode_position(int(k), inst.n)}")

# Positions decode without touching the sequence at all.
for k in (14, 9, 5):
    print(f"k={k} -> {decode_position(k, 4)}, residual {residual_at(inst, k)}")
print("position of {1,3,4}:", position_of({1, 3, 4}, 4))

# solve_all streams the sequence in blocks and never holds all 2**n values.
for sol in solve_all(inst):
    print("solution", sol.indices, "values", sol.values)

# Multisets and negative weights are fine; t = 0 never reports the empty set.
print(solve_all(Instance(0, (2, -2, 3, -1, -2))))
