import pytest

from subsum.core import Instance, ResourceError, SolverStats
from subsum.gen import GenSpec, gen_planted
from subsum.randomized import ProbeConfig, make_rng, piece_from_draws, sample_piece, solve_probabilistic


class ScriptedRng:
    def __init__(self, draws):
        self.draws = list(draws)

    def integers(self, low, high, size):
        assert all(low <= d < high for d in self.draws)
        out, self.draws = self.draws[:size], self.draws[size:]
        return out


def test_piece_dedup_and_order():
    inst = Instance(5, (10, 20, 30, 40))
    assert sample_piece(inst, 3, ScriptedRng([3, 3, 1])) == [(1, 10), (3, 30)]
    assert piece_from_draws(inst, [4, 2, 4]) == [(2, 20), (4, 40)]


def test_piece_sizes():
    inst = Instance(5, (1, 2, 3, 4, 5, 6))
    rng = make_rng(3)
    for _ in range(200):
        assert len(sample_piece(inst, 1, rng)) == 1
        piece = sample_piece(inst, 4, rng)
        assert 1 <= len(piece) <= 4
        idx = [i for i, _ in piece]
        assert idx == sorted(set(idx))
    assert sample_piece(Instance(9, (9,)), 5, rng) == [(1, 9)]


def test_worked_instance_returns_valid_solution():
    sol = solve_probabilistic(Instance(5, (1, 2, 3, 4)), ProbeConfig(4, 50, seed=0))
    assert sol is not None and sol.indices in {(1, 4), (2, 3)}


def test_unsolvable_fails():
    for seed in range(20):
        assert solve_probabilistic(Instance(1, (2, 3)), ProbeConfig(2, 10, seed=seed)) is None


def test_singleton_regression():
    # seed 0 is the recorded regression run
    sol = solve_probabilistic(Instance(7, (7, 5)), ProbeConfig(2, 20, seed=0))
    assert sol is not None and sol.indices == (1,) and sol.values == (7,)
    hits = sum(
        solve_probabilistic(Instance(7, (7, 5)), ProbeConfig(2, 20, seed=s)) is not None
        for s in range(200)
    )
    assert hits == 200


def test_first_zero_wins():
    # piece covers everything; doubling order puts {2,3} (k=7) before {1,4} (k=10)
    sol = solve_probabilistic(Instance(5, (1, 2, 3, 4)), ProbeConfig(30, 1, seed=0))
    assert sol.indices == (2, 3)


def test_zero_target_never_returns_empty():
    sol = solve_probabilistic(Instance(0, (3, -3, 5)), ProbeConfig(6, 50, seed=1))
    assert sol is not None and sol.indices == (1, 2)


def test_reproducible():
    inst, _ = gen_planted(GenSpec(n=12, bit_length=10, planted_size=3, seed=5))
    cfg = ProbeConfig(6, 50, seed=123)
    a, b = solve_probabilistic(inst, cfg), solve_probabilistic(inst, cfg)
    assert a == b


def test_piece_length_bound():
    with pytest.raises(ResourceError):
        solve_probabilistic(Instance(1, (1,)), ProbeConfig(40, 1, max_n=30))


def test_stats_record_rounds():
    stats = SolverStats()
    solve_probabilistic(Instance(1, (2, 3)), ProbeConfig(2, 7, seed=0), stats)
    assert stats.rounds == 7 and stats.ops > 0


@pytest.mark.parametrize("kwargs", [dict(piece_length=0, repeat_times=1), dict(piece_length=1, repeat_times=0)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ProbeConfig(**kwargs)
