"""Hellman table construction, inversion correctness, and tradeoff shape."""

import numpy as np
import pytest

from perminv import attacks as at


def single_cycle(n: int) -> np.ndarray:
    return np.roll(np.arange(n), -1)  # i -> i+1 mod n


def test_identity_has_no_entries():
    table = at.build_table(np.arange(10), 3)
    assert table.s_entries == 0
    assert table.cycle_count == 10
    assert table.long_cycles == 0


def test_identity_inverts_in_one_query():
    table = at.build_table(np.arange(10), 3)
    for y in range(10):
        oracle = at.OracleCounter(np.arange(10))
        assert at.invert(table, oracle, y) == y
        assert oracle.queries == 1


def test_single_cycle_checkpoint_count():
    n, t = 256, 16
    table = at.build_table(single_cycle(n), t)
    assert table.s_entries == 16  # ceil(n / t)
    assert table.long_cycles == 1


def test_entries_point_t_steps_back():
    rng = np.random.default_rng(0)
    perm = rng.permutation(200)
    t = 7
    table = at.build_table(perm, t)
    for checkpoint, back in table.entries.items():
        z = back
        for _ in range(t):
            z = int(perm[z])
        assert z == checkpoint


def test_invert_exhaustive_single_cycle():
    n, t = 144, 12
    perm = single_cycle(n)
    table = at.build_table(perm, t)
    worst = 0
    for y in range(n):
        oracle = at.OracleCounter(perm)
        x = at.invert(table, oracle, y)
        assert perm[x] == y
        worst = max(worst, oracle.queries)
    assert worst <= 2 * t + 2


def test_invert_random_permutation_full_sweep():
    rng = np.random.default_rng(5)
    n, t = 1 << 12, 64
    perm = rng.permutation(n)
    table = at.build_table(perm, t)
    stats = at.measure_all(perm, table)
    assert stats.success_rate == 1.0
    assert stats.t_max <= 2 * t + 2


def test_scalar_and_batch_agree_exactly():
    rng = np.random.default_rng(3)
    perm = rng.permutation(512)
    table = at.build_table(perm, 32)
    queries = []
    for y in range(512):
        oracle = at.OracleCounter(perm)
        x = at.invert(table, oracle, y)
        assert perm[x] == y
        queries.append(oracle.queries)
    stats = at.measure_all(perm, table)
    assert stats.t_max == max(queries)
    assert abs(stats.t_avg - float(np.mean(queries))) < 1e-12
    assert stats.success_rate == 1.0


def test_mismatched_table_raises():
    rng = np.random.default_rng(1)
    perm_a = rng.permutation(64)
    perm_b = rng.permutation(64)
    table = at.build_table(perm_a, 4)
    tripped = False
    for y in range(64):
        oracle = at.OracleCounter(perm_b)
        try:
            x = at.invert(table, oracle, y)
        except at.InversionError:
            tripped = True
            continue
        if perm_b[x] != y:
            tripped = True
    assert tripped


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        at.OracleCounter([0, 0, 1])
    with pytest.raises(ValueError):
        at.build_table(np.arange(8), 0)


def test_bits_accounting():
    n, t = 1 << 10, 16
    rng = np.random.default_rng(2)
    perm = rng.permutation(n)
    table = at.build_table(perm, t)
    assert table.s_bits == table.s_entries * 2 * 10


def test_advice_free_regime_large_t():
    n = 512
    rng = np.random.default_rng(9)
    perm = rng.permutation(n)
    table = at.build_table(perm, n)  # t >= n: no cycle is longer than t
    assert table.s_entries == 0
    stats = at.measure_all(perm, table)
    assert stats.success_rate == 1.0
    assert stats.t_max <= 2 * n + 2


def test_sweep_entries_track_n_over_t():
    n = 1 << 12
    rows = at.tradeoff_sweep(n, [16, 64, 256], trials=2, seed=0)
    for r in rows:
        assert r.success_rate == 1.0
        # S is about n/t up to the count of long cycles (roughly ln n).
        assert r.s_entries >= n // r.t // 2
        assert r.s_entries <= n // r.t + 40


def test_sweep_loglog_slope_is_minus_one():
    n = 1 << 12
    t_values = [64, 128, 256, 512, 1024]  # sqrt(n) .. n/4
    rows = at.tradeoff_sweep(n, t_values, trials=2, seed=1)
    xs = np.log([r.s_entries for r in rows])
    ys = np.log([r.t_max for r in rows])
    slope = np.polyfit(xs, ys, 1)[0]
    assert abs(slope + 1.0) <= 0.15


def test_sweep_product_bounds():
    n = 1 << 12
    rows = at.tradeoff_sweep(n, [64, 256, 1024], trials=2, seed=0)
    for r in rows:
        assert n / 8 <= r.st_product <= 8 * n


def test_csv_format():
    n = 1 << 10
    rows = at.tradeoff_sweep(n, [32], trials=1, seed=0)
    text = at.stats_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "n,t,s_entries,s_bits,t_max,t_avg,success,st_product"
    assert len(lines) == 2
    assert lines[1].startswith("1024,32,")


def test_permutation_fixture_roundtrip(tmp_path):
    rng = np.random.default_rng(8)
    perm = rng.permutation(1000)
    path = tmp_path / "perm.u32"
    at.save_permutation(path, perm)
    loaded = at.load_permutation(path)
    assert np.array_equal(loaded, perm)


def test_sampled_targets():
    n = 1 << 12
    rows = at.tradeoff_sweep(n, [64], trials=1, seed=0, sample_targets=500)
    assert rows[0].success_rate == 1.0
