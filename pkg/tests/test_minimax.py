import numpy as np
import pytest

from ratcheb import (
    DomainSpec,
    LawsonOptions,
    best_approx,
    extract_nodes,
    interp_at_scaled_cheb,
    interpolate,
    pade_approx,
    registry_get,
    uniform_norm,
    unitary_best_exp,
)
from ratcheb.errors import PreconditionError, WindingMismatch

INTERVAL = DomainSpec.interval(-1, 1)
DISK = DomainSpec.disk(1.0)


@pytest.fixture(scope="module")
def exp_fn():
    return registry_get("exp")


def test_best_constant_closed_form(exp_fn):
    # best constant on [-eps, eps] is cosh(eps) with error sinh(eps)
    res = best_approx(exp_fn, 0, 0, INTERVAL, 0.5, LawsonOptions(lawson_tol=1e-10))
    assert abs(res.uniform_error - np.sinh(0.5)) < 1e-9
    assert abs(res.r(0.123) - np.cosh(0.5)) < 1e-9
    assert res.converged
    assert res.equioscillation_count == 2


def test_best_constant_error_over_eps_tends_to_one(exp_fn):
    prev = None
    for eps in (0.4, 0.2, 0.1):
        res = best_approx(exp_fn, 0, 0, INTERVAL, eps)
        dev = abs(res.uniform_error / eps - 1.0)
        if prev is not None:
            assert dev < prev
        prev = dev
    assert prev < 0.005


def test_disk_11_error_law(exp_fn):
    res = best_approx(exp_fn, 1, 1, DISK, 0.1, LawsonOptions(grid=1024))
    pred = 0.1**3 / 12.0
    assert abs(res.uniform_error - pred) <= 0.1 * pred
    assert res.converged


def test_feasibility_dominance(exp_fn):
    for m, n, K, eps in ((0, 0, INTERVAL, 0.3), (1, 1, INTERVAL, 0.1), (1, 0, DISK, 0.2)):
        res = best_approx(exp_fn, m, n, K, eps)
        warm = interp_at_scaled_cheb(exp_fn, m, n, K, eps)
        warm_err = uniform_norm(lambda z: warm.r(z) - np.exp(z), K, eps, M=512)
        assert res.uniform_error <= warm_err + 1e-9


def test_extracted_nodes_are_error_zeros(exp_fn):
    res = best_approx(exp_fn, 1, 1, INTERVAL, 0.1)
    assert res.nodes_extracted is not None and len(res.nodes_extracted) == 3
    for z in res.nodes_extracted:
        assert abs(res.r(z) - np.exp(z)) <= 1e-7 * res.uniform_error


def test_equioscillation_counts(exp_fn):
    for m, n in ((0, 0), (1, 0), (1, 1)):
        res = best_approx(exp_fn, m, n, INTERVAL, 0.1)
        assert res.equioscillation_count >= m + n + 2


def test_winding_one_zero_case(exp_fn):
    res = best_approx(exp_fn, 0, 0, INTERVAL, 0.5, LawsonOptions(lawson_tol=1e-10))
    nodes = res.nodes_extracted
    assert len(nodes) == 1
    want = np.log(np.cosh(0.5))
    assert abs(nodes.nodes[0] - want) < 1e-6


def test_extract_pade_triple_zero(exp_fn):
    rp = pade_approx(exp_fn, 1, 1).r
    nm = extract_nodes(rp, exp_fn, 0.05, 2.0, 3)
    assert len(nm) == 3
    assert max(abs(z) for z in nm) < 1e-4  # all at the origin up to root fuzz


def test_extract_winding_counts(exp_fn):
    # module-level zero-count property, incl. the (1,0) pair not in acceptance
    for K in (INTERVAL, DISK):
        res = best_approx(exp_fn, 1, 0, K, 0.1)
        assert res.winding == 2 and len(res.nodes_extracted) == 2


def test_winding_mismatch_on_contour_through_zero(exp_fn):
    res = best_approx(exp_fn, 0, 0, INTERVAL, 0.5, LawsonOptions(lawson_tol=1e-10))
    node = np.log(np.cosh(0.5))
    with pytest.raises(WindingMismatch):
        extract_nodes(res.r, exp_fn, 0.5, node / 0.5, 1)


def test_degenerate_pade_skips_extraction():
    geom = registry_get("geom")
    with pytest.warns(UserWarning):
        res = best_approx(geom, 1, 2, INTERVAL, 0.1)
    assert res.nodes_extracted is None
    assert "node-extraction-skipped" in res.warnings


def test_exactly_rational_function_early_exit():
    geom = registry_get("geom")
    res = best_approx(geom, 0, 1, INTERVAL, 0.3)
    assert res.uniform_error <= 1e-13
    assert res.converged


def test_determinism(exp_fn):
    r1 = best_approx(exp_fn, 1, 1, INTERVAL, 0.1)
    r2 = best_approx(exp_fn, 1, 1, INTERVAL, 0.1)
    assert np.array_equal(r1.r.num.coeffs, r2.r.num.coeffs)
    assert np.array_equal(r1.r.den.coeffs, r2.r.den.coeffs)
    assert r1.uniform_error == r2.uniform_error


def test_outside_domain():
    geom = registry_get("geom")
    with pytest.raises(Exception) as exc_info:
        best_approx(geom, 1, 1, INTERVAL, 1.5)
    assert "holomorphy" in str(exc_info.value)


# ----------------------------------------------------------------- unitary


def test_unitary_n1(exp_fn):
    res = unitary_best_exp(1, 0.1)
    pred = 0.1**3 / 48.0
    assert abs(res.uniform_error - pred) <= 0.1 * pred
    assert res.unitarity_defect <= 1e-6
    nodes = res.nodes_extracted
    assert len(nodes) == 3
    assert max(abs(z.real) for z in nodes) <= 1e-6
    assert max(abs(z.imag) for z in nodes) <= 0.1 * (1 + 1e-6)
    assert "nodes-off-segment" not in res.warnings


def test_unitary_n0():
    res = unitary_best_exp(0, 0.1)
    ys = np.linspace(-0.3, 0.3, 50)
    assert np.abs(np.abs(res.r(1j * ys)) - 1.0).max() <= 1e-6
    assert len(res.nodes_extracted) == 1


def test_unitary_eps_window():
    with pytest.raises(PreconditionError):
        unitary_best_exp(1, 4 * np.pi)


def test_unitary_interpolants_are_unitary(exp_fn, rng=np.random.default_rng(11)):
    # interpolation at imaginary nodes forces |r| = 1 on the imaginary axis
    yy = np.linspace(-0.6, 0.6, 101)
    for n in (1, 2):
        ys = rng.uniform(-0.5, 0.5, 2 * n + 1)
        res = interpolate(exp_fn, 1j * ys, n, n)
        assert np.abs(np.abs(res.r(1j * yy)) - 1.0).max() <= 1e-8
