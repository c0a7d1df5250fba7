"""Linearized rational interpolation (Newton-Pade) at arbitrary node multisets.

The interpolant is defined by vanishing divided differences of p - q*f over
every node prefix.  Assembling one divided-difference column per basis
function z^k (k <= m) and z^k*f (k <= n) turns this into a homogeneous
linear system whose nontrivial null vector gives the coefficients; a
solution always exists, so failure to find one numerically is a tolerance
error, not a mathematical one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .divdiff import NodeMultiset, dd_full_table, dd_recursive
from .errors import NodeOutsideDomain, NoNontrivialSolution, PoleAtNode
from .functions import HoloFunction, monomial_times
from .poly import RationalFunction, poly_from_roots

#: linearized residual must stay below this times the local scale
RESIDUAL_REL = 1e-8
#: pole-to-node distance margin (in units of the confluency threshold)
POLE_MARGIN = 10.0


@dataclass
class InterpolationResult:
    r: RationalFunction
    nodes: NodeMultiset
    linearized_residual: float
    degenerate: bool
    hermite_valid: bool


@dataclass
class HermiteReport:
    passed: bool
    max_abs_error: float
    worst_node: complex
    worst_order: int


def _system_matrix(f: HoloFunction, nodes: NodeMultiset, m: int, n: int) -> np.ndarray:
    cols = [dd_full_table(monomial_times(None, k), nodes) for k in range(m + 1)]
    cols += [-dd_full_table(monomial_times(f, k), nodes) for k in range(n + 1)]
    return np.column_stack(cols)


def interpolate(f: HoloFunction, nodes, m: int, n: int) -> InterpolationResult:
    """Newton-Pade approximant of f at m+n+1 nodes (multiplicities allowed)."""
    nodes = NodeMultiset.of(nodes)
    if len(nodes) != m + n + 1:
        raise ValueError(f"need {m + n + 1} nodes for degrees ({m},{n}), got {len(nodes)}")
    if nodes.max_abs >= f.domain_radius:
        raise NodeOutsideDomain(
            f"nodes reach |z|={nodes.max_abs:.3g}, holomorphy radius is {f.domain_radius:.3g}"
        )
    M = _system_matrix(f, nodes, m, n)
    _, _, Vh = np.linalg.svd(M)
    v = Vh[-1].conj()
    r = RationalFunction(v[: m + 1], v[m + 1 :], m, n)
    coeffs = np.concatenate([r.num.coeffs, np.zeros(m + 1 - len(r.num.coeffs))])
    coeffs = np.concatenate(
        [coeffs, r.den.coeffs, np.zeros(n + 1 - len(r.den.coeffs))]
    ).astype(complex)
    residual = float(np.abs(M @ coeffs).max())
    zs = nodes.as_array()
    scale = max(
        1.0,
        float(np.abs(r.den(zs)).max() * np.abs(np.asarray(f.eval(zs))).max()),
    )
    if residual > RESIDUAL_REL * scale:
        raise NoNontrivialSolution(
            f"linearized residual {residual:.2e} exceeds {RESIDUAL_REL:.0e} * scale={scale:.2g}"
        )
    hermite_valid = True
    if r.den.degree >= 1:
        margin = POLE_MARGIN * nodes.delta_conf
        for pole in r.poles():
            if np.abs(zs - pole).min() <= margin:
                hermite_valid = False
                break
    return InterpolationResult(
        r=r,
        nodes=nodes,
        linearized_residual=residual,
        degenerate=r.defect > 0,
        hermite_valid=hermite_valid,
    )


def determinant_denominator_remainder(
    f: HoloFunction, nodes, m: int, n: int, z: complex
):
    """Denominator and linearized remainder values from the determinant
    representation: q(z) = det H(z) and vtilde(z) = -det E(z), where the
    matrices are assembled from divided differences over contiguous node
    runs.  Serves as an independent oracle for `interpolate` (same rational
    function up to a scalar multiple).
    """
    nodes = NodeMultiset.of(nodes)
    if len(nodes) != m + n + 1:
        raise ValueError(f"need {m + n + 1} nodes for degrees ({m},{n}), got {len(nodes)}")
    zs = list(nodes.nodes)
    z = complex(z)
    if max(nodes.max_abs, abs(z)) >= f.domain_radius:
        raise NodeOutsideDomain("evaluation point or node outside holomorphy radius")

    def dd_range(lo, hi, extra=None):
        # f[z_lo, ..., z_hi] (plus an appended point), zero when hi < lo
        if hi < lo:
            return 0.0 + 0.0j
        pts = zs[lo : hi + 1] + ([extra] if extra is not None else [])
        return dd_recursive(f, pts)

    H = np.zeros((n + 1, n + 1), dtype=complex)
    E = np.zeros((n + 1, n + 1), dtype=complex)
    for row, ell in enumerate(range(n, -1, -1)):
        for col, k in enumerate(range(m + 1, m + n + 1)):
            H[row, col] = E[row, col] = dd_range(ell, k)
        prod = 1.0 + 0.0j
        for j in range(ell):
            prod *= z - zs[j]
        H[row, n] = prod
        E[row, n] = dd_range(ell, m + n, extra=z)
    q_val = complex(np.linalg.det(H))
    vtilde_val = -complex(np.linalg.det(E))
    return q_val, vtilde_val


def hermite_check(result: InterpolationResult, f: HoloFunction) -> HermiteReport:
    """Verify r^(l)(z_j) = f^(l)(z_j) for every distinct node and derivative
    order below its multiplicity; r-derivatives come from the quotient rule.
    """
    if not result.hermite_valid:
        raise PoleAtNode("a denominator root sits on an interpolation node")
    reps, mults = result.nodes.distinct()
    max_order = max(mults) - 1
    derivs = [result.r]
    for _ in range(max_order):
        derivs.append(derivs[-1].derivative())
    passed = True
    worst = (0.0, reps[0], 0)
    for rep, mult in zip(reps, mults):
        for order in range(mult):
            fv = complex(f.deriv(order, rep))
            rv = derivs[order](rep)
            err = abs(rv - fv)
            if err > worst[0]:
                worst = (err, rep, order)
            if err > 1e-7 * (1.0 + abs(fv)):
                passed = False
    return HermiteReport(
        passed=passed, max_abs_error=worst[0], worst_node=worst[1], worst_order=worst[2]
    )


def interp_at_scaled_cheb(f: HoloFunction, m: int, n: int, K, eps: float):
    """Interpolate at eps times the m+n+1 Chebyshev nodes of K."""
    from .domains import cheb_system

    if eps * K.hull_radius() >= f.domain_radius:
        raise NodeOutsideDomain(
            f"eps*K reaches |z|={eps * K.hull_radius():.3g}, holomorphy radius is "
            f"{f.domain_radius:.3g}"
        )
    cs = cheb_system(K, m + n + 1)
    nodes = NodeMultiset.of(eps * cs.nodes)
    return interpolate(f, nodes, m, n)


def error_profile_poly(nodes) -> "poly_from_roots":
    """Monic polynomial prod (z - z_j) over the node multiset."""
    return poly_from_roots(NodeMultiset.of(nodes).as_array())
