from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsum.baselines import brute_force_all
from subsum.core import Instance, PreconditionError, SolverStats
from subsum.greedy import (
    GreedyConfig,
    TrackedResidual,
    VarianceError,
    prune_and_merge,
    sample_variance,
    solution_variance,
    solve_greedy,
    variance_gap,
)

TABLE = [
    ((8, 7, 6, 2, 1), 9.7000),
    ((8, 7, 5, 3, 1), 8.2000),
    ((8, 6, 4, 3, 2, 1), 6.8000),
    ((8, 6, 5, 4, 1), 6.7000),
    ((8, 7, 4, 3, 2), 6.7000),
    ((8, 6, 5, 3, 2), 5.7000),
    ((7, 6, 5, 3, 2, 1), 5.6000),
    ((8, 7, 6, 3), 4.6667),
    ((7, 6, 5, 4, 2), 3.7000),
    ((8, 7, 5, 4), 3.3333),
]


@pytest.mark.parametrize("values, expected", TABLE)
def test_variance_table(values, expected):
    assert sum(values) == 24
    assert sample_variance(values) == pytest.approx(expected, abs=1e-4)


def test_variance_edge_cases():
    assert sample_variance([5, 5]) == 0
    with pytest.raises(VarianceError):
        sample_variance([3])


def test_prune_and_merge_walkthrough():
    r = prune_and_merge([TrackedResidual(24)], 8, 8, 1)
    assert [x.value for x in r] == [24, 16]
    r = prune_and_merge(r, 7, 7, 2)
    assert [x.value for x in r] == [24, 17, 16, 9]
    assert r[1].chosen == (7,) and r[3].chosen == (8, 7)
    assert all(x.value == 24 - sum(x.taken) for x in r)


def test_prune_everything_negative():
    start = [TrackedResidual(5), TrackedResidual(3, (1,), 1, (2,))]
    assert [x.value for x in prune_and_merge(start, 9, 2, 2)] == [5, 3]


def test_merge_prefers_larger_elements():
    # residual 4 reachable as 10-6 and 10-5-1 style paths; keep the one led by 6
    live = [TrackedResidual(10), TrackedResidual(4, (1,), 1, (6,)), TrackedResidual(5, (2,), 2, (5,))]
    merged = prune_and_merge(live, 1, 3, 3)
    four = next(x for x in merged if x.value == 4)
    assert four.taken == (6,)


def test_prune_rejects_nonpositive_weight():
    with pytest.raises(PreconditionError):
        prune_and_merge([TrackedResidual(3)], 0, 1)


@pytest.mark.parametrize("engine", ["tracked", "bitset"])
def test_variance_table_best_row(engine):
    stats = SolverStats()
    sol = solve_greedy(Instance(24, tuple(range(1, 9))), GreedyConfig(round_bound=8), stats, engine=engine)
    assert sorted(sol.values, reverse=True) == [8, 7, 5, 4]
    assert solution_variance(sol) == (pytest.approx(3.3333, abs=1e-4), False)
    assert stats.rounds == 5
    best = min(TABLE, key=lambda row: row[1])
    assert set(sol.values) == set(best[0])


@pytest.mark.parametrize("engine", ["tracked", "bitset"])
def test_small_examples(engine):
    sol = solve_greedy(Instance(7, (7, 1)), GreedyConfig(2), engine=engine)
    assert sol.values == (7,) and solution_variance(sol) == (0.0, True)
    assert solve_greedy(Instance(6, (4, 4, 3)), GreedyConfig(3), engine=engine) is None


def test_duplicates_keep_index_order():
    sol = solve_greedy(Instance(4, (4, 4, 4)))
    assert sol.indices == (1,)


def test_round_bound_limits_search():
    inst = Instance(1, (5, 4, 3, 1))
    assert solve_greedy(inst, GreedyConfig(round_bound=3)) is None
    assert solve_greedy(inst, GreedyConfig(round_bound=4)).indices == (4,)


@pytest.mark.parametrize("instance", [Instance(3, (1, -1, 3)), Instance(0, (1, 2)), Instance(-2, (1,))])
def test_domain(instance):
    with pytest.raises(PreconditionError):
        solve_greedy(instance)


def test_bitset_rejects_beam():
    with pytest.raises(ValueError):
        solve_greedy(Instance(3, (3,)), GreedyConfig(beam_limit=4), engine="bitset")


def lex_greatest_oracle(instance):
    """First prefix of the sorted weights with a solution, then its best subset by brute force."""
    order = sorted(range(1, instance.n + 1), key=lambda i: -instance.weight(i))
    for k in range(1, instance.n + 1):
        prefix = order[:k]
        hits = [
            c
            for r in range(1, k + 1)
            for c in combinations(prefix, r)
            if sum(instance.weight(i) for i in c) == instance.target
        ]
        if hits:
            best = max(hits, key=lambda c: (tuple(instance.weight(i) for i in c), tuple(-i for i in c)))
            return tuple(sorted(best)), k
    return None, None


positive_instances = st.tuples(
    st.integers(1, 60), st.lists(st.integers(1, 20), min_size=1, max_size=9)
).map(lambda tw: Instance(tw[0], tuple(tw[1])))


@settings(max_examples=300, deadline=None)
@given(positive_instances)
def test_engines_agree_with_lex_oracle(inst):
    expected, k = lex_greatest_oracle(inst)
    for engine in ("tracked", "bitset"):
        stats = SolverStats()
        sol = solve_greedy(inst, stats=stats, engine=engine)
        if expected is None:
            assert sol is None
        else:
            assert sol.indices == expected
            assert stats.rounds == k


@settings(max_examples=100, deadline=None)
@given(positive_instances)
def test_prune_safety(inst):
    has_solution = bool(brute_force_all(inst))
    assert (solve_greedy(inst, GreedyConfig(round_bound=inst.n)) is not None) == has_solution


def test_merge_safety_values(rng):
    for _ in range(30):
        n = rng.randint(1, 14)
        weights = tuple(rng.randint(1, 40) for _ in range(n))
        t = rng.randint(1, sum(weights))
        order = sorted(weights, reverse=True)
        live = [TrackedResidual(t)]
        for k, w in enumerate(order, start=1):
            live = prune_and_merge(live, w, k, k)
            direct = {
                t - sum(c)
                for r in range(k + 1)
                for c in combinations(order[:k], r)
                if t - sum(c) >= 0
            }
            assert {x.value for x in live} == direct
            assert [x.value for x in live] == sorted(direct, reverse=True)


def test_beam_limit_drops_low_values():
    inst = Instance(10, (6, 5, 4, 3, 1))
    stats = SolverStats()
    sol = solve_greedy(inst, GreedyConfig(beam_limit=2), stats)
    assert stats.peak_residuals <= 2
    assert stats.extra["exhaustive"] is False
    if sol is not None:
        assert sum(sol.values) == 10


def test_variance_gap_report(rng):
    gaps = []
    for _ in range(40):
        weights = tuple(rng.randint(1, 30) for _ in range(rng.randint(2, 12)))
        inst = Instance(rng.randint(1, sum(weights)), weights)
        sol = solve_greedy(inst)
        if sol is None:
            continue
        report = variance_gap(inst, sol)
        assert report["gap"] >= -1e-12
        gaps.append(report["gap"])
    inst = Instance(24, tuple(range(1, 9)))
    assert variance_gap(inst, solve_greedy(inst))["gap"] == pytest.approx(0.0, abs=1e-12)
