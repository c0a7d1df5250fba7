import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratcheb import (
    ComplexPolynomial,
    RationalFunction,
    compute_defect,
    poly_eval,
    poly_from_roots,
    poly_roots,
    rational_eval,
)
from ratcheb.errors import PoleAtEvaluationPoint

from .conftest import relerr


def test_poly_eval_constant():
    p = ComplexPolynomial([1])
    assert poly_eval(p, 5 + 2j) == 1


def test_poly_eval_square():
    p = ComplexPolynomial([0, 0, 1])
    assert relerr(poly_eval(p, 1 + 1j), 2j) < 1e-15


def test_poly_eval_affine():
    p = ComplexPolynomial([1, 0.5])
    assert poly_eval(p, 0.1) == pytest.approx(1.05)


def test_trim_keeps_degree():
    p = ComplexPolynomial([1.0, 2.0, 1e-16])
    assert p.degree == 1


def test_roots_quadratic_factored():
    roots = sorted(poly_roots(ComplexPolynomial([-1, 0, 1])), key=lambda z: z.real)
    assert relerr(roots[0], -1) < 1e-12 and relerr(roots[1], 1) < 1e-12


def test_roots_linear():
    (root,) = poly_roots(ComplexPolynomial([1, 1]))
    assert relerr(root, -1) < 1e-12


def test_roots_against_quadratic_formula():
    # independent oracle: roots of z^2 - 3z + 2 by the quadratic formula
    a, b, c = 1.0, -3.0, 2.0
    disc = np.sqrt(b * b - 4 * a * c)
    expected = sorted([(-b - disc) / (2 * a), (-b + disc) / (2 * a)])
    got = sorted(poly_roots(ComplexPolynomial([c, b, a])).real)
    assert np.allclose(got, expected, rtol=1e-12)


def test_roots_errors():
    with pytest.raises(ValueError):
        poly_roots(ComplexPolynomial([3.0]))
    with pytest.raises(ValueError):
        poly_roots(ComplexPolynomial([0.0]))


@st.composite
def small_polys(draw, max_degree=8):
    deg = draw(st.integers(min_value=1, max_value=max_degree))
    parts = st.floats(min_value=-3, max_value=3, allow_nan=False)
    coeffs = [complex(draw(parts), draw(parts)) for _ in range(deg)]
    lead_re = draw(st.floats(min_value=0.5, max_value=3))
    coeffs.append(complex(lead_re, draw(parts)))
    return ComplexPolynomial(coeffs)


@given(small_polys())
@settings(max_examples=40, deadline=None)
def test_roots_residual_contract(p):
    roots = poly_roots(p)
    bound = 1e-8 * np.abs(p.coeffs).max()
    for z in roots:
        assert abs(p(z)) <= bound * (1 + abs(z)) ** p.degree


@given(small_polys())
@settings(max_examples=40, deadline=None)
def test_roots_reconstruct_coefficients(p):
    roots = poly_roots(p)
    rebuilt = poly_from_roots(roots, leading=p.coeffs[-1])
    a = np.zeros(p.degree + 1, dtype=complex)
    b = np.zeros(p.degree + 1, dtype=complex)
    a[: len(p.coeffs)] = p.coeffs
    b[: len(rebuilt.coeffs)] = rebuilt.coeffs
    assert np.abs(a - b).max() <= 1e-7 * np.abs(a).max()


def test_rational_eval_constant():
    r = RationalFunction([1], [1], 0, 0)
    assert rational_eval(r, 3 - 4j) == 1


def test_rational_eval_normalization_point():
    r = RationalFunction([1, 0.5], [1, -0.5], 1, 1)
    assert rational_eval(r, 0.0) == 1


def test_rational_eval_pole():
    r = RationalFunction([1, 0.5], [1, -0.5], 1, 1)
    with pytest.raises(PoleAtEvaluationPoint):
        rational_eval(r, 2.0)


@given(
    st.floats(min_value=0.1, max_value=5),
    st.floats(min_value=-3.1, max_value=3.1),
)
@settings(max_examples=30, deadline=None)
def test_rational_eval_scaling_invariance(mag, phase):
    alpha = mag * np.exp(1j * phase)
    r1 = RationalFunction([1, 0.5], [1, -0.5], 1, 1)
    r2 = RationalFunction(np.array([1, 0.5]) * alpha, np.array([1, -0.5]) * alpha, 1, 1)
    for z in (0.3, -0.7 + 0.2j, 1j):
        assert relerr(r2(z), r1(z)) < 1e-13


def test_defect_identical_factors():
    r = RationalFunction([1, 1], [1, 1], 1, 1)
    assert compute_defect(r) == 1


def test_defect_distinct_roots():
    r = RationalFunction([1, 0.5], [1, -0.5], 1, 1)
    assert compute_defect(r) == 0


def test_defect_common_root_by_factoring():
    # num = z^2 - 1 has roots {1, -1}; den = z - 1 has root {1}; one match,
    # so r reduces to (z+1)/1 in R_{1,0} and the defect for (m,n)=(2,1) is 1
    r = RationalFunction([-1, 0, 1], [-1, 1], 2, 1)
    assert compute_defect(r) == 1


def test_defect_zero_means_no_shared_roots():
    r = RationalFunction([2, -3, 1], [6, 5, 1], 2, 2)  # roots {1,2} vs {-2,-3}
    assert compute_defect(r) == 0
    nroots = poly_roots(r.num)
    droots = poly_roots(r.den)
    assert min(abs(a - b) for a in nroots for b in droots) > 1e-9


def test_rational_taylor_geometric():
    r = RationalFunction([1], [1, -1], 0, 1)
    assert np.allclose(r.taylor_coeffs(6), np.ones(6))


def test_rational_derivative_quotient_rule():
    r = RationalFunction([1, 0.5], [1, -0.5], 1, 1)
    dr = r.derivative()
    h = 1e-7
    z = 0.3 + 0.1j
    fd = (r(z + h) - r(z - h)) / (2 * h)
    assert relerr(dr(z), fd) < 1e-7
