import math

import numpy as np
import pytest

from ratcheb import (
    DomainSpec,
    LawsonOptions,
    error_ratio_pade_cheb,
    match_nodes,
    registry_get,
    run_full_sweep,
    sweep_node_convergence,
    sweep_pointwise_profile,
    sweep_uniform_error,
)
from ratcheb.errors import DegeneratePade

INTERVAL = DomainSpec.interval(-1, 1)
FAST = LawsonOptions(grid=512)


@pytest.fixture(scope="module")
def exp_fn():
    return registry_get("exp")


def test_uniform_error_sweep(exp_fn):
    res = sweep_uniform_error(exp_fn, 1, 1, INTERVAL, [0.2, 0.1], FAST)
    for rec in res.records:
        assert rec.converged
        assert rec.predicted == pytest.approx(rec.eps**3 / 48.0)
        assert abs(rec.ratio - 1.0) < 0.05
    assert res.records[0].eps == 0.2


def test_eps_list_must_decrease(exp_fn):
    with pytest.raises(ValueError):
        sweep_uniform_error(exp_fn, 1, 1, INTERVAL, [0.1, 0.2], FAST)


def test_degenerate_aborts():
    geom = registry_get("geom")
    with pytest.raises(DegeneratePade):
        sweep_uniform_error(geom, 0, 1, INTERVAL, [0.2, 0.1], FAST)  # a_mn = 0
    with pytest.raises(DegeneratePade):
        sweep_uniform_error(geom, 1, 2, INTERVAL, [0.2, 0.1], FAST)  # degenerate


def test_node_convergence_sweep(exp_fn):
    res = sweep_node_convergence(exp_fn, 1, 1, INTERVAL, [0.2, 0.1], FAST)
    d = [rec.node_distance for rec in res.records]
    assert all(math.isfinite(x) for x in d)
    assert d[1] < d[0]
    assert all(rec.winding == 3 for rec in res.records)
    assert not res.flags


def test_pointwise_profile_sweep(exp_fn):
    res = sweep_pointwise_profile(exp_fn, 1, 1, INTERVAL, [0.2, 0.1], grid_size=256, opts=FAST)
    r = [rec.pointwise_residual for rec in res.records]
    assert r[1] < r[0]
    # profile tends to (1/12)(z^3 - 0.75 z) whose max magnitude is 1/48
    assert r[1] < 0.25 * (1.0 / 48.0)


def test_error_ratio_trend(exp_fn):
    ratios = error_ratio_pade_cheb(exp_fn, 1, 1, INTERVAL, [0.2, 0.1], FAST)
    assert abs(ratios[1] - 4.0) < abs(ratios[0] - 4.0)  # limit is 2^(m+n) = 4
    assert ratios[1] == pytest.approx(4.0, rel=0.15)


def test_full_sweep_fills_everything(exp_fn):
    res = run_full_sweep(exp_fn, 1, 1, INTERVAL, [0.2, 0.1], grid_size=128, opts=FAST)
    for rec in res.records:
        assert math.isfinite(rec.uniform_error)
        assert math.isfinite(rec.ratio)
        assert math.isfinite(rec.node_distance)
        assert math.isfinite(rec.pointwise_residual)
        assert rec.winding == 3
        assert rec.converged
    assert not res.flags


def test_match_nodes_greedy():
    tau = np.array([0.8, 0.0, -0.8])
    extracted = np.array([0.05, -0.78, 0.82])
    assert match_nodes(extracted, tau) == pytest.approx(0.05)
    assert match_nodes(tau, tau) == 0.0
