"""Unit tests for CLI parsing and config validation."""

import pytest
from hypothesis import given, settings, strategies as st

from parslice import BenchConfig, InvalidConfig, parse_config
from parslice.config import default_worker_counts


def test_minimal_quicksort_invocation_parses():
    config = parse_config(["--benchmark", "quicksort", "--size", "1000",
                           "--workers", "1,2"])
    assert config.benchmark == "quicksort"
    assert config.size == 1000
    assert config.worker_counts == [1, 2]
    assert config.mode == "slicing"
    assert config.seed == 42
    assert config.runs == 20
    assert config.out == "results.csv"
    assert config.warmup == 0
    assert config.spawn_cutoff == 0


def test_matmul_dims_parse():
    config = parse_config(["--benchmark", "matmul", "--dims", "400x160x400"])
    assert config.dims == (400, 160, 400)


def test_defaults_apply_without_flags():
    config = parse_config([])
    assert config.benchmark == "quicksort"
    assert config.size == 1_000_000
    assert config.worker_counts == default_worker_counts()


def test_workers_zero_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--workers", "0"])


def test_workers_negative_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--workers", "2,-1"])


def test_workers_empty_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--workers", ""])


def test_workers_garbage_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--workers", "1,x"])


def test_dims_with_zero_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--benchmark", "matmul", "--dims", "4x0x4"])


def test_dims_wrong_arity_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--benchmark", "matmul", "--dims", "4x4"])


def test_dims_garbage_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--benchmark", "matmul", "--dims", "axbxc"])


def test_dims_on_quicksort_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--benchmark", "quicksort", "--dims", "4x4x4"])


def test_size_on_matmul_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--benchmark", "matmul", "--size", "100"])


def test_serialized_matmul_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--benchmark", "matmul", "--mode", "serialized"])


def test_serialized_needs_two_elements():
    with pytest.raises(InvalidConfig):
        parse_config(["--mode", "serialized", "--size", "1"])


def test_nonpositive_size_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--size", "0"])


def test_runs_must_be_positive():
    with pytest.raises(InvalidConfig):
        parse_config(["--runs", "0"])


def test_warmup_must_be_nonnegative():
    with pytest.raises(InvalidConfig):
        parse_config(["--warmup", "-1"])


def test_cutoff_must_be_nonnegative():
    with pytest.raises(InvalidConfig):
        parse_config(["--cutoff", "-5"])


def test_unknown_flag_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--frobnicate", "1"])


def test_unparsable_number_rejected():
    with pytest.raises(InvalidConfig):
        parse_config(["--size", "many"])


def test_error_message_names_the_bad_flag():
    with pytest.raises(InvalidConfig, match="--workers"):
        parse_config(["--workers", "0"])
    with pytest.raises(InvalidConfig, match="--dims"):
        parse_config(["--benchmark", "matmul", "--dims", "4x0x4"])


def test_round_trip_through_dict():
    config = parse_config(["--benchmark", "matmul", "--dims", "8x4x8",
                           "--workers", "1,2,4", "--runs", "5",
                           "--seed", "7", "--out", "x.csv", "--warmup", "2",
                           "--cutoff", "100", "--mode", "threads"])
    assert BenchConfig.from_dict(config.to_dict()) == config


def test_from_dict_rejects_unknown_keys():
    with pytest.raises(InvalidConfig):
        BenchConfig.from_dict({"benchmark": "quicksort", "bogus": 1})


@given(
    benchmark=st.sampled_from(["quicksort", "matmul"]),
    mode=st.sampled_from(["slicing", "threads"]),
    size=st.integers(min_value=2, max_value=10**8),
    dims=st.tuples(st.integers(1, 2000), st.integers(1, 2000),
                   st.integers(1, 2000)),
    seed=st.integers(min_value=0, max_value=2**63 - 1),
    workers=st.lists(st.integers(1, 64), min_size=1, max_size=6),
    runs=st.integers(1, 100),
    warmup=st.integers(0, 10),
    cutoff=st.integers(0, 10**6),
)
@settings(max_examples=200, deadline=None)
def test_every_valid_config_round_trips(benchmark, mode, size, dims, seed,
                                        workers, runs, warmup, cutoff):
    config = BenchConfig(benchmark=benchmark, mode=mode, size=size, dims=dims,
                         seed=seed, worker_counts=workers, runs=runs,
                         out="r.csv", warmup=warmup, spawn_cutoff=cutoff)
    config.validate()
    assert BenchConfig.from_dict(config.to_dict()) == config
