"""Sweep experiments over shrinking domain scales eps.

Each sweep runs the minimax solver per eps and measures one of the
asymptotic laws: the uniform error against t_(m+n+1)|a_mn| eps^(m+n+1), the
convergence of rescaled interpolation nodes to the Chebyshev nodes of K,
the rescaled pointwise error profile against a_mn * prod(z - tau_j), and
the Pade-to-best uniform error ratio.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .domains import DomainSpec, cheb_constant, cheb_system, sample_domain, uniform_norm
from .errors import DegeneratePade, WindingMismatch
from .functions import HoloFunction
from .minimax import LawsonOptions, MinimaxResult, best_approx
from .pade import PadeResult, pade_approx

#: sweep-level flag: node distances should shrink by this factor per eps halving
NODE_SHRINK_FACTOR = 1.3


@dataclass
class SweepRecord:
    eps: float
    uniform_error: float = math.nan
    predicted: float = math.nan
    ratio: float = math.nan
    node_distance: float = math.nan
    pointwise_residual: float = math.nan
    winding: int | None = None
    converged: bool = True

    FIELDS = (
        "eps",
        "uniform_error",
        "predicted",
        "ratio",
        "node_distance",
        "pointwise_residual",
        "winding",
        "converged",
    )


@dataclass
class SweepResult:
    records: list
    slope: float | None = None
    flags: list = field(default_factory=list)


def _check_eps_list(eps_list):
    eps_list = [float(e) for e in eps_list]
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise ValueError("eps_list must be strictly decreasing")
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps values must be positive")
    return eps_list


def _require_usable_pade(f: HoloFunction, m: int, n: int) -> PadeResult:
    info = pade_approx(f, m, n)
    if info.degenerate:
        raise DegeneratePade(f"{f.name} has a degenerate ({m},{n}) Pade approximant")
    if abs(info.a_mn) == 0.0:
        raise DegeneratePade(
            f"leading error coefficient a_mn vanishes for {f.name} at ({m},{n}); "
            "the asymptotic laws assume a_mn != 0"
        )
    return info


def predicted_error(f: HoloFunction, m: int, n: int, K: DomainSpec, eps: float) -> float:
    info = _require_usable_pade(f, m, n)
    return cheb_constant(K, m + n + 1) * abs(info.a_mn) * eps ** (m + n + 1)


def match_nodes(extracted, targets) -> float:
    """Max matched distance, angle-sorted greedy nearest-neighbor assignment."""
    ex = sorted(
        (complex(z) for z in extracted), key=lambda z: (np.angle(z), abs(z))
    )
    remaining = [complex(t) for t in targets]
    worst = 0.0
    for z in ex:
        dists = [abs(z - t) for t in remaining]
        i = int(np.argmin(dists))
        worst = max(worst, dists[i])
        remaining.pop(i)
    return worst


def _fit_slope(eps_vals, deviations):
    """Log-log slope over the last three sweep points (asymptotic regime)."""
    pts = [(e, d) for e, d in zip(eps_vals, deviations) if d > 0 and math.isfinite(d)]
    pts = pts[-3:]
    if len(pts) < 2:
        return None
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def sweep_uniform_error(
    f: HoloFunction, m: int, n: int, K: DomainSpec, eps_list, opts: LawsonOptions | None = None
) -> SweepResult:
    """Uniform error of the minimax approximant against the predicted law."""
    eps_list = _check_eps_list(eps_list)
    info = _require_usable_pade(f, m, n)
    t = cheb_constant(K, m + n + 1)
    records = []
    for eps in eps_list:
        res = best_approx(f, m, n, K, eps, opts)
        pred = t * abs(info.a_mn) * eps ** (m + n + 1)
        records.append(
            SweepRecord(
                eps=eps,
                uniform_error=res.uniform_error,
                predicted=pred,
                ratio=res.uniform_error / pred,
                winding=res.winding,
                converged=res.converged,
            )
        )
    slope = _fit_slope(eps_list, [abs(r.ratio - 1.0) for r in records])
    return SweepResult(records=records, slope=slope)


def sweep_node_convergence(
    f: HoloFunction, m: int, n: int, K: DomainSpec, eps_list, opts: LawsonOptions | None = None
) -> SweepResult:
    """Distance of rescaled extracted nodes to the Chebyshev nodes of K."""
    eps_list = _check_eps_list(eps_list)
    _require_usable_pade(f, m, n)
    tau = cheb_system(K, m + n + 1).nodes
    records = []
    flags = []
    for eps in eps_list:
        rec = SweepRecord(eps=eps)
        try:
            res = best_approx(f, m, n, K, eps, opts)
            rec.uniform_error = res.uniform_error
            rec.converged = res.converged
            rec.winding = res.winding
            if res.nodes_extracted is not None:
                zeta = res.nodes_extracted.as_array() / eps
                rec.node_distance = match_nodes(zeta, tau)
        except WindingMismatch as exc:
            rec.winding = exc.winding
            rec.converged = False
            flags.append(f"eps={eps}: {exc}")
        records.append(rec)
    dists = [r.node_distance for r in records]
    for (ea, da), (eb, db) in zip(zip(eps_list, dists), zip(eps_list[1:], dists[1:])):
        if abs(ea / eb - 2.0) < 1e-9 and math.isfinite(da) and math.isfinite(db):
            if da < NODE_SHRINK_FACTOR * db:
                warnings.warn(
                    f"node distance shrank only {da / db:.2f}x from eps={ea} to {eb}",
                    stacklevel=2,
                )
                flags.append(f"slow-node-convergence:{ea}->{eb}")
    return SweepResult(records=records, slope=_fit_slope(eps_list, dists), flags=flags)


def sweep_pointwise_profile(
    f: HoloFunction,
    m: int,
    n: int,
    K: DomainSpec,
    eps_list,
    grid_size: int = 512,
    opts: LawsonOptions | None = None,
) -> SweepResult:
    """Max deviation of the rescaled error from a_mn * prod(z - tau_j) on K."""
    eps_list = _check_eps_list(eps_list)
    info = _require_usable_pade(f, m, n)
    monic = cheb_system(K, m + n + 1).monic_poly
    zg = sample_domain(K, grid_size, 1.0)
    target = info.a_mn * monic(zg)
    records = []
    for eps in eps_list:
        res = best_approx(f, m, n, K, eps, opts)
        scaled = (res.r(eps * zg) - np.asarray(f.eval(eps * zg))) / eps ** (m + n + 1)
        rec = SweepRecord(
            eps=eps,
            uniform_error=res.uniform_error,
            pointwise_residual=float(np.abs(scaled - target).max()),
            winding=res.winding,
            converged=res.converged,
        )
        records.append(rec)
    return SweepResult(
        records=records,
        slope=_fit_slope(eps_list, [r.pointwise_residual for r in records]),
    )


def error_ratio_pade_cheb(
    f: HoloFunction, m: int, n: int, K: DomainSpec, eps_list, opts: LawsonOptions | None = None
) -> list:
    """Per eps: ||r_Pade - f|| / ||r_best - f|| on eps*K.

    Converges to max_K |z|^(m+n+1) / t_(m+n+1): 2^(m+n) on [-1,1], 1 on the
    unit disk.
    """
    eps_list = _check_eps_list(eps_list)
    info = _require_usable_pade(f, m, n)
    opts = opts or LawsonOptions()
    ratios = []
    for eps in eps_list:
        res = best_approx(f, m, n, K, eps, opts)
        pade_err = uniform_norm(
            lambda z: info.r(z) - np.asarray(f.eval(z)), K, eps, M=opts.grid
        )
        ratios.append(pade_err / res.uniform_error)
    return ratios


def run_full_sweep(
    f: HoloFunction,
    m: int,
    n: int,
    K: DomainSpec,
    eps_list,
    grid_size: int = 512,
    opts: LawsonOptions | None = None,
) -> SweepResult:
    """One minimax run per eps filling every SweepRecord field (CLI `sweep`)."""
    eps_list = _check_eps_list(eps_list)
    info = _require_usable_pade(f, m, n)
    cs = cheb_system(K, m + n + 1)
    t = cheb_constant(K, m + n + 1)
    zg = sample_domain(K, grid_size, 1.0)
    target = info.a_mn * cs.monic_poly(zg)
    records = []
    flags = []
    for eps in eps_list:
        rec = SweepRecord(eps=eps)
        try:
            res = best_approx(f, m, n, K, eps, opts)
        except WindingMismatch as exc:
            rec.winding = exc.winding
            rec.converged = False
            flags.append(f"eps={eps}: {exc}")
            records.append(rec)
            continue
        pred = t * abs(info.a_mn) * eps ** (m + n + 1)
        rec.uniform_error = res.uniform_error
        rec.predicted = pred
        rec.ratio = res.uniform_error / pred
        rec.converged = res.converged
        rec.winding = res.winding
        if res.nodes_extracted is not None:
            rec.node_distance = match_nodes(res.nodes_extracted.as_array() / eps, cs.nodes)
        scaled = (res.r(eps * zg) - np.asarray(f.eval(eps * zg))) / eps ** (m + n + 1)
        rec.pointwise_residual = float(np.abs(scaled - target).max())
        records.append(rec)
    slope = _fit_slope(eps_list, [abs(r.ratio - 1.0) for r in records])
    return SweepResult(records=records, slope=slope, flags=flags)
