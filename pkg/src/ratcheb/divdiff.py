"""Divided differences g[z_0,...,z_j] with arbitrary node multiplicities.

Two independent methods are provided: the confluent recurrence (table fill
over a grouped node ordering) and trapezoidal contour quadrature of

    (1/2 pi i) * integral of g(zeta) / prod_j (zeta - z_j) d zeta

on a circle enclosing the nodes.  Their agreement is the main correctness
check for everything built on top.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConditioningWarning,
    ContourOutsideDomain,
    ContourTooSmall,
    NodeOutsideDomain,
)
from .functions import HoloFunction

#: nodes closer than DELTA_CONF_REL * (1 + max|node|) count as equal
DELTA_CONF_REL = 1e-9
#: gaps between DELTA_CONF and this (absolute, same scaling) warn about conditioning
NEAR_CONF_REL = 1e-6


def delta_conf(max_abs: float) -> float:
    return DELTA_CONF_REL * (1.0 + max_abs)


@dataclass(frozen=True)
class NodeMultiset:
    """Ordered complex nodes with multiplicity bookkeeping.

    Two nodes are "the same" iff their distance is at most delta_conf; the
    distinct/multiplicity structure is recomputed deterministically from the
    ordered list (first occurrence is the representative).
    """

    nodes: tuple

    def __post_init__(self):
        vals = tuple(complex(z) for z in self.nodes)
        if len(vals) == 0:
            raise ValueError("node multiset must be non-empty")
        object.__setattr__(self, "nodes", vals)

    @classmethod
    def of(cls, values) -> "NodeMultiset":
        if isinstance(values, NodeMultiset):
            return values
        if np.ndim(values) == 0:
            values = [values]
        return cls(tuple(complex(v) for v in np.asarray(values).ravel()))

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    @property
    def max_abs(self) -> float:
        return max(abs(z) for z in self.nodes)

    @property
    def delta_conf(self) -> float:
        return delta_conf(self.max_abs)

    def distinct(self):
        """Representatives (first-appearance order) and their multiplicities."""
        tol = self.delta_conf
        reps, mults = [], []
        for z in self.nodes:
            for i, r in enumerate(reps):
                if abs(z - r) <= tol:
                    mults[i] += 1
                    break
            else:
                reps.append(z)
                mults.append(1)
        return reps, mults

    def grouped(self) -> list:
        """Canonical node order: equal nodes adjacent, snapped to their
        representative; fully distinct inputs keep their original order."""
        reps, mults = self.distinct()
        out = []
        for r, m in zip(reps, mults):
            out.extend([r] * m)
        return out

    def as_array(self) -> np.ndarray:
        return np.asarray(self.nodes, dtype=complex)


def _check_domain(g: HoloFunction, nodes: NodeMultiset):
    if nodes.max_abs >= g.domain_radius:
        raise NodeOutsideDomain(
            f"node with |z|={nodes.max_abs:.3g} outside holomorphy radius "
            f"{g.domain_radius:.3g} of {g.name}"
        )


def _prefix_table(g: HoloFunction, w: list) -> np.ndarray:
    """Divided differences over every prefix of the grouped node list w."""
    n = len(w)
    tol = delta_conf(max(abs(z) for z in w))
    near = NEAR_CONF_REL * (1.0 + max(abs(z) for z in w))
    col = np.array([complex(g.eval(z)) for z in w])
    out = np.empty(n, dtype=complex)
    out[0] = col[0]
    for j in range(1, n):
        nxt = np.empty(n - j, dtype=complex)
        for i in range(n - j):
            gap = w[i + j] - w[i]
            if abs(gap) > tol:
                if abs(gap) <= near:
                    warnings.warn(
                        f"node gap {abs(gap):.2e} close to confluency threshold; "
                        "difference quotient may be ill-conditioned",
                        ConditioningWarning,
                        stacklevel=3,
                    )
                nxt[i] = (col[i + 1] - col[i]) / gap
            else:
                nxt[i] = complex(g.deriv(j, w[i])) / math.factorial(j)
        col = nxt
        out[j] = col[0]
    return out


def dd_full_table(g: HoloFunction, nodes) -> np.ndarray:
    """g[z_0,...,z_j] for every prefix j of the node list.

    The prefixes follow the caller's order for fully distinct inputs and the
    canonical grouped order otherwise (the top value is order-independent).
    """
    nodes = NodeMultiset.of(nodes)
    _check_domain(g, nodes)
    return _prefix_table(g, nodes.grouped())


def dd_recursive(g: HoloFunction, nodes) -> complex:
    """Divided difference over all nodes by the confluent recurrence."""
    return complex(dd_full_table(g, nodes)[-1])


def default_contour_radius(g: HoloFunction, nodes: NodeMultiset) -> float:
    return min(2.0 * nodes.max_abs + 0.5, 0.9 * g.domain_radius)


def dd_contour(
    g: HoloFunction,
    nodes,
    contour_radius: float | None = None,
    quad_points: int = 512,
) -> complex:
    """Divided difference by trapezoidal contour quadrature on |zeta| = R.

    The trapezoid rule on a circle converges geometrically for holomorphic
    integrands, so the point count is uncritical once R clears the nodes.
    """
    nodes = NodeMultiset.of(nodes)
    _check_domain(g, nodes)
    if quad_points < 32:
        raise ValueError("quad_points must be >= 32")
    R = default_contour_radius(g, nodes) if contour_radius is None else float(contour_radius)
    if R <= nodes.max_abs:
        raise ContourTooSmall(
            f"contour radius {R:.3g} does not enclose nodes (max |z| = {nodes.max_abs:.3g})"
        )
    if R >= g.domain_radius:
        raise ContourOutsideDomain(
            f"contour radius {R:.3g} outside holomorphy radius {g.domain_radius:.3g}"
        )
    theta = 2.0 * np.pi * np.arange(quad_points) / quad_points
    zeta = R * np.exp(1j * theta)
    denom = np.ones_like(zeta)
    for z in nodes:
        denom = denom * (zeta - z)
    vals = np.asarray(g.eval(zeta), dtype=complex)
    return complex(np.mean(vals * zeta / denom))
