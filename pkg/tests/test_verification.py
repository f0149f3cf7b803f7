import json
import math

import numpy as np
import pytest

from hardyseq.verification import (
    ALL_SUITES,
    SweepSpec,
    rand_dyadic_window,
    rand_window,
    replay_instance,
    run_verification,
)


def test_all_suites_pass_on_small_ensemble():
    spec = SweepSpec(seed=9, ensemble=6, window_sizes=(3, 6), regimes=((1.0, 1.0), (0.5, 0.5)))
    report = run_verification(spec)
    assert report["passed"] is True
    assert set(report["suites"]) == set(ALL_SUITES)
    assert report["schema_version"] == 1
    stats = report["suites"]["equivalence-ratio"]["ratio_stats"]
    for entry in stats.values():
        assert entry["min"] <= entry["median"] <= entry["max"]


def test_report_is_json_serializable_and_deterministic():
    spec = SweepSpec(seed=4, ensemble=3, suites=("chain", "doubling"))
    r1 = json.dumps(run_verification(spec), sort_keys=True)
    r2 = json.dumps(run_verification(spec), sort_keys=True)
    assert r1 == r2


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(suites=())
    with pytest.raises(ValueError):
        SweepSpec(suites=("nope",))
    with pytest.raises(ValueError):
        SweepSpec(regimes=())
    with pytest.raises(ValueError):
        SweepSpec(regimes=((0.0, 1.0),))
    with pytest.raises(ValueError):
        SweepSpec(ensemble=0)


def test_spec_json_round_trip():
    spec = SweepSpec(seed=7, ensemble=5, out="report.json")
    again = SweepSpec.from_json(spec.to_json())
    assert again == spec


def test_rand_window_respects_zero_prob():
    rng = np.random.default_rng(0)
    w = rand_window(rng, 50, exponent=2.0, zero_prob=0.5)
    assert any(v == 0 for v in w.values)
    assert any(v > 0 for v in w.values)
    assert all(0.25 <= v <= 4.0 for v in w.values if v > 0)


def test_rand_dyadic_window_is_exactly_dyadic():
    rng = np.random.default_rng(1)
    w = rand_dyadic_window(rng, 30)
    for v in w.values:
        assert (v * 8) == int(v * 8)


def test_replay_unknown_suite():
    with pytest.raises(ValueError):
        replay_instance({"suite": "mystery"})


def test_replay_all_suites():
    entries = [
        {"suite": "chain", "a": {"start": 0, "values": [1, 2]}, "p": 0.5, "n": 0},
        {
            "suite": "bridge",
            "u": {"start": 0, "values": [1]},
            "v": {"start": 0, "values": [1]},
            "w": {"start": 0, "values": [1]},
            "a": {"start": 0, "values": [2]},
            "q": 2,
        },
        {"suite": "partition", "w": {"start": 0, "values": [1, 1, 1, 1]}, "n0": 0},
        {
            "suite": "linft",
            "u": {"start": 0, "values": [2, 1]},
            "v": {"start": 0, "values": [4, 1]},
            "p": 1.0,
        },
        {
            "suite": "equivalence-ratio",
            "u": {"start": 0, "values": [1, 1]},
            "v": {"start": 0, "values": [1, 1]},
            "w": {"start": 0, "values": [1, 1]},
            "p": 1.0,
            "q": 1.0,
            "form": "gop",
        },
        {
            "suite": "chain-equivalence",
            "u": {"start": 0, "values": [1, 1]},
            "v": {"start": 0, "values": [1, 1]},
            "w": {"start": 0, "values": [1, 1]},
            "p": 0.5,
            "q": 1.0,
            "family": "antigop",
        },
        {
            "suite": "doubling",
            "b": {"start": 0, "values": [1, 2, 4]},
            "c": {"start": 0, "values": [1, 1, 1]},
            "alpha": 1.0,
        },
    ]
    for entry in entries:
        out = replay_instance(entry)
        assert out["passed"], entry["suite"]
