import numpy as np
import pytest

from ratcheb import DomainSpec, cheb_constant, cheb_system, sample_domain, uniform_norm
from ratcheb.errors import UnsupportedDomain


def test_interval_cheb_n2():
    K = DomainSpec.interval(-1, 1)
    cs = cheb_system(K, 2)
    got = sorted(z.real for z in cs.nodes)
    np.testing.assert_allclose(got, [-np.sqrt(2) / 2, np.sqrt(2) / 2], rtol=1e-14)
    assert cs.constant == pytest.approx(0.5)


def test_disk_cheb_n3():
    cs = cheb_system(DomainSpec.disk(1.0), 3)
    np.testing.assert_allclose(cs.nodes, np.zeros(3))
    assert cs.constant == pytest.approx(1.0)


def test_interval_cheb_n1_general():
    cs = cheb_system(DomainSpec.interval(0.0, 2.0), 1)
    np.testing.assert_allclose(cs.nodes.real, [1.0], atol=1e-14)
    assert cs.constant == pytest.approx(1.0)  # max over [0,2] of |z-1|


def test_monic_poly_matches_constant():
    for K in (DomainSpec.interval(-1, 1), DomainSpec.interval(-0.5, 2.0), DomainSpec.disk(0.7)):
        for N in (1, 2, 3, 4):
            cs = cheb_system(K, N)
            norm = uniform_norm(cs.monic_poly, K, 1.0, M=2048)
            assert abs(norm - cs.constant) <= 1e-8 * cs.constant


def test_discrete_samples_recover_interval_system():
    pts = np.cos(np.pi * np.arange(200) / 199)
    K = DomainSpec.samples(pts)
    cs = cheb_system(K, 2)
    exact = cheb_system(DomainSpec.interval(-1, 1), 2)
    assert abs(cs.constant - exact.constant) <= 1e-3
    got = sorted(z.real for z in cs.nodes)
    want = sorted(z.real for z in exact.nodes)
    np.testing.assert_allclose(got, want, atol=1e-3)


def test_samples_too_few():
    with pytest.raises(UnsupportedDomain):
        cheb_system(DomainSpec.samples([0.0, 1.0, 2.0]), 2)


def test_t0_convention():
    assert cheb_constant(DomainSpec.interval(-1, 1), 0) == 1.0
    assert cheb_constant(DomainSpec.disk(2.0), 0) == 1.0


def test_scaling_law():
    for K in (DomainSpec.interval(-1, 1), DomainSpec.disk(1.0)):
        for N in (1, 2, 3):
            base = cheb_system(K, N)
            scaled = cheb_system(K.scaled(0.25), N)
            np.testing.assert_allclose(scaled.nodes, 0.25 * base.nodes, atol=1e-10)
            assert abs(scaled.constant - 0.25**N * base.constant) <= 1e-10 * base.constant


def test_cheb_minimality_under_perturbation():
    K = DomainSpec.interval(-1, 1)
    grid = np.linspace(-1, 1, 2000)
    for N in (1, 2, 3, 4):
        cs = cheb_system(K, N)
        nodes = cs.nodes.copy()

        def maxprod(nds):
            vals = np.ones_like(grid)
            for nd in nds:
                vals = vals * np.abs(grid - nd)
            return vals.max()

        base = maxprod(nodes)
        for j in range(N):
            for delta in (0.05, -0.05):
                pert = nodes.copy()
                pert[j] += delta
                assert maxprod(pert) > base


def test_sample_domain_interval_endpoints():
    zs = sample_domain(DomainSpec.interval(-1, 1), 3, 1.0)
    np.testing.assert_allclose(sorted(zs.real), [-1.0, 0.0, 1.0], atol=1e-15)
    zs = sample_domain(DomainSpec.interval(-1, 1), 64, 0.5)
    assert zs[0] == -0.5 and zs[-1] == 0.5


def test_sample_domain_disk():
    zs = sample_domain(DomainSpec.disk(1.0), 4, 0.5)
    np.testing.assert_allclose(zs, [0.5, 0.5j, -0.5, -0.5j, 0.0], atol=1e-15)


def test_sample_domain_samples_pointwise():
    zs = sample_domain(DomainSpec.samples([1.0, 1j]), 99, 2.0)
    np.testing.assert_allclose(zs, [2.0, 2.0j])


def test_uniform_norm_identity():
    assert uniform_norm(lambda z: z, DomainSpec.interval(-1, 1), 1.0, 64) == pytest.approx(1.0)


def test_uniform_norm_disk_square():
    got = uniform_norm(lambda z: z**2, DomainSpec.disk(1.0), 0.5, 128)
    assert got == pytest.approx(0.25, rel=1e-12)


def test_uniform_norm_exp_minus_one():
    got = uniform_norm(lambda z: np.exp(z) - 1, DomainSpec.interval(-1, 1), 0.1, 512)
    assert got == pytest.approx(np.exp(0.1) - 1, rel=1e-12)


def test_parse_roundtrip(tmp_path):
    assert DomainSpec.parse("interval:-1,1").kind == "interval"
    assert DomainSpec.parse("disk:2.5").radius == 2.5
    path = tmp_path / "pts.json"
    path.write_text("[[1.0, 0.0], [0.0, 1.0], 0.5]")
    K = DomainSpec.parse(f"samples:{path}")
    assert K.points == (1.0 + 0j, 1j, 0.5 + 0j)
    with pytest.raises(ValueError):
        DomainSpec.parse("triangle:1")


def test_hull_radius():
    assert DomainSpec.interval(-2, 1).hull_radius() == 2.0
    assert DomainSpec.disk(0.7).hull_radius() == 0.7
    assert DomainSpec.samples([1j, -2.0]).hull_radius() == 2.0
