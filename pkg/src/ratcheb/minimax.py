"""Best (minimax) rational approximation on scaled domains by Lawson iteration.

The solver minimizes the weighted linearized residual sum w_i |p - q f|^2
over unit coefficient vectors (smallest singular direction), updates the
weights multiplicatively by the true error |r - f|, and interleaves a
restricted "support polish": Lawson re-run on the refined locations of the
near-maximal error peaks.  The polish is what levels the error to high
precision; candidates are only adopted when they do not increase the full
grid error, so the returned approximant never loses to the scaled-Chebyshev
interpolant it is warm-started from.

Convergence is declared when the current approximant's error peaks (its
near-active set) are levelled: at least m+n+2 peaks within 2% of the
maximum whose max/min ratio is within `lawson_tol` of 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .divdiff import NodeMultiset, delta_conf
from .domains import DomainSpec, cheb_constant, cheb_system, sample_domain, uniform_norm
from .errors import (
    NewtonDivergence,
    NodeOutsideDomain,
    PreconditionError,
    UnitarityViolated,
    WindingMismatch,
)
from .functions import HoloFunction, registry_get
from .interpolation import interp_at_scaled_cheb, interpolate
from .pade import pade_approx
from .poly import RationalFunction

#: grid points with |error| >= ACTIVE_FRAC * max are considered active
ACTIVE_FRAC = 0.98
#: peaks considered for support polish
POLISH_FRAC = 0.90
#: leading coefficients below this magnitude disable node extraction
AMN_TINY = 1e-13


@dataclass
class LawsonOptions:
    grid: int = 512
    lawson_tol: float = 1e-3
    max_iters: int = 200
    rho: float | None = None
    polish_every: int = 10
    polish_iters: int = 300
    quad_points: int = 512


@dataclass
class MinimaxResult:
    r: RationalFunction
    uniform_error: float
    nodes_extracted: NodeMultiset | None
    lawson_iters: int
    converged: bool
    equioscillation_count: int | None = None
    winding: int | None = None
    unitarity_defect: float | None = None
    warnings: list = field(default_factory=list)


# ---------------------------------------------------------------- internals


def _basis_matrix(zs, fs, m, n):
    cols = [zs ** k for k in range(m + 1)] + [-fs * zs ** k for k in range(n + 1)]
    return np.column_stack(cols)


def _conj_reverse(c):
    # coefficient map c_k -> conj(c_k) * (-1)^k; on the imaginary axis this
    # turns a polynomial value into its complex conjugate
    signs = (-1.0) ** np.arange(len(c))
    return np.conj(c) * signs


def _symmetrize(v, m, n):
    """Project onto the subspace fixed by (p, q) -> (q~, p~).

    Fixed vectors give q = p~, hence |p/q| = 1 on the imaginary axis.
    """
    if m != n:
        return v
    p, q = v[: m + 1], v[m + 1 :]
    tv = np.concatenate([_conj_reverse(q), _conj_reverse(p)])
    w = v + tv
    if np.linalg.norm(w) < 1e-6 * np.linalg.norm(v):
        w = 1j * (v - tv)
    return w / np.linalg.norm(w)


def _solve(zs, fs, m, n, w, symmetrize=False):
    A = np.sqrt(w)[:, None] * _basis_matrix(zs, fs, m, n)
    _, _, Vh = np.linalg.svd(A)
    v = Vh[-1].conj()
    if symmetrize:
        v = _symmetrize(v, m, n)
    return v[: m + 1], v[m + 1 :]


def _true_errors(p, q, zs, fs):
    pv = np.polyval(p[::-1], zs)
    qv = np.polyval(q[::-1], zs)
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.abs(pv - fs * qv) / np.abs(qv)
    return np.where(np.isfinite(e), e, np.inf)


def _peak_indices(e, circular):
    """Local maxima in path order, adjacent plateaus collapsed."""
    n = len(e)
    if n < 3:
        return np.arange(n)
    if circular:
        left, right = np.roll(e, 1), np.roll(e, -1)
        idx = np.where((e >= left) & (e >= right))[0]
    else:
        mask = np.zeros(n, dtype=bool)
        mask[0] = e[0] >= e[1]
        mask[-1] = e[-1] >= e[-2]
        mask[1:-1] = (e[1:-1] >= e[:-2]) & (e[1:-1] >= e[2:])
        idx = np.where(mask)[0]
    if len(idx) > 1:
        keep = [idx[0]]
        for i in idx[1:]:
            if i - keep[-1] > 1:
                keep.append(i)
        idx = np.array(keep)
    return idx


def _levelled(e, circular, min_active, tol):
    """(converged?, active peak count) for the error profile e."""
    E = e.max()
    if not np.isfinite(E) or E == 0.0:
        return False, 0
    pk = _peak_indices(e, circular)
    act = pk[e[pk] >= ACTIVE_FRAC * E]
    if len(act) < min_active:
        return False, len(act)
    return (E / e[act].min() - 1.0 <= tol), len(act)


def _lawson_on_points(zs, fs, m, n, iters, tol, symmetrize=False, w0=None):
    """Plain Lawson on a fixed point set; returns the best iterate by max error."""
    w = np.full(len(zs), 1.0 / len(zs)) if w0 is None else w0 / w0.sum()
    best = None
    for _ in range(iters):
        p, q = _solve(zs, fs, m, n, w, symmetrize)
        e = _true_errors(p, q, zs, fs)
        E = e.max()
        if np.isfinite(E) and (best is None or E < best[0]):
            best = (E, p, q)
        if not np.isfinite(E):
            w = np.full(len(zs), 1.0 / len(zs))
            continue
        if 1.0 - (w @ e) / E <= tol:
            break
        w = w * e
        s = w.sum()
        if not np.isfinite(s) or s == 0.0:
            w = np.full(len(zs), 1.0 / len(zs))
        else:
            w = w / s
    return best


class _Grid:
    """Sampled eps*K with enough structure to refine peak locations."""

    def __init__(self, K: DomainSpec, eps: float, M: int):
        self.K = K
        self.eps = eps
        self.zs = sample_domain(K, M, eps)
        if K.kind == "disk":
            self.circular = True
            self.path_len = len(self.zs) - 1  # origin appended after boundary
            self.param = 2.0 * np.pi * np.arange(self.path_len) / self.path_len
        else:
            self.circular = False
            self.path_len = len(self.zs)
            if K.kind == "interval":
                self.param = self.zs.real.copy()
            else:
                self.param = np.arange(self.path_len, dtype=float)

    def path_errors(self, e):
        return e[: self.path_len]

    def refine_peak(self, e, i):
        """Parabolic vertex of |e| around path index i, as a grid point."""
        t = self.param
        if self.K.kind == "samples":
            return self.zs[i]
        if not self.circular and (i == 0 or i == self.path_len - 1):
            return self.zs[i]
        j0, j1, j2 = (i - 1) % self.path_len, i, (i + 1) % self.path_len
        t0, t1, t2 = t[j0], t[j1], t[j2]
        if self.circular:
            if t0 > t1:
                t0 -= 2.0 * np.pi
            if t2 < t1:
                t2 += 2.0 * np.pi
        y0, y1, y2 = e[j0], e[j1], e[j2]
        d1 = (y1 - y0) / (t1 - t0)
        d2 = (y2 - y1) / (t2 - t1)
        a = (d2 - d1) / (t2 - t0)
        if a >= 0.0:
            return self.zs[j1]
        ts = 0.5 * (t0 + t1) - d1 / (2.0 * a)
        ts = min(max(ts, t0), t2)
        if self.circular:
            return self.eps * self.K.radius * np.exp(1j * ts)
        return complex(ts)


def _run_lawson(f, m, n, grid: _Grid, opts: LawsonOptions, warm, symmetrize=False):
    """Grid Lawson with interleaved support polish.

    `warm` is an (p, q) coefficient pair used for the initial weights and as
    the incumbent best.  Returns (p, q, iters, converged).
    """
    zs, fs = grid.zs, np.asarray(f.eval(grid.zs), dtype=complex)
    min_active = m + n + 2

    def full_errors(p, q):
        return _true_errors(p, q, zs, fs)

    e_warm = full_errors(*warm)
    fscale = np.abs(fs).max()
    if e_warm.max() <= 1e-15 * max(fscale, 1.0):
        return warm[0], warm[1], 0, True  # f itself is (m,n)-rational

    best = (e_warm.max(), warm[0], warm[1])
    w = e_warm + 1e-30 * e_warm.max()
    w = w / w.sum()
    converged = False
    iters = 0

    def polish(candidate):
        """Re-level on refined peak locations of the candidate's error."""
        E, p, q = candidate
        e = full_errors(p, q)
        ep = grid.path_errors(e)
        pk = _peak_indices(ep, grid.circular)
        pk = pk[ep[pk] >= POLISH_FRAC * ep.max()]
        if len(pk) < min_active:
            return None
        support = np.array([grid.refine_peak(ep, i) for i in pk], dtype=complex)
        out = _lawson_on_points(
            support,
            np.asarray(f.eval(support), dtype=complex),
            m,
            n,
            opts.polish_iters,
            1e-13,
            symmetrize,
        )
        if out is None:
            return None
        e2 = full_errors(out[1], out[2])
        E2 = e2.max()
        if not np.isfinite(E2) or E2 > E * (1.0 + 1e-12):
            return None
        return (E2, out[1], out[2])

    for it in range(1, opts.max_iters + 1):
        iters = it
        p, q = _solve(zs, fs, m, n, w, symmetrize)
        e = full_errors(p, q)
        E = e.max()
        if np.isfinite(E) and E < best[0]:
            best = (E, p, q)
        if np.isfinite(E):
            ok, _ = _levelled(grid.path_errors(e), grid.circular, min_active, opts.lawson_tol)
            if ok:
                better = polish((E, p, q))
                if better is not None and better[0] <= best[0]:
                    best = better
                converged = True
                break
        if it % opts.polish_every == 0 or it == opts.max_iters:
            better = polish(best)
            if better is not None:
                best = better
                eb = full_errors(best[1], best[2])
                ok, _ = _levelled(
                    grid.path_errors(eb), grid.circular, min_active, opts.lawson_tol
                )
                if ok:
                    converged = True
                    break
        w = w * np.where(np.isfinite(e), e, 0.0)
        s = w.sum()
        w = np.full(len(zs), 1.0 / len(zs)) if (not np.isfinite(s) or s == 0.0) else w / s
    return best[1], best[2], iters, converged


def _coeff_pair(r: RationalFunction, m, n):
    p = np.zeros(m + 1, dtype=complex)
    q = np.zeros(n + 1, dtype=complex)
    p[: len(r.num.coeffs)] = r.num.coeffs
    q[: len(r.den.coeffs)] = r.den.coeffs
    return p, q


def _equioscillation_count(r, f, K: DomainSpec, eps, M):
    """Alternating near-maximal extrema of the real error on an interval."""
    xs = sample_domain(K, max(M, 1024), eps).real
    e = (r(xs.astype(complex)) - np.asarray(f.eval(xs), dtype=complex)).real
    ae = np.abs(e)
    E = ae.max()
    if E == 0.0:
        return 0
    pk = _peak_indices(ae, circular=False)
    pk = pk[ae[pk] >= ACTIVE_FRAC * E]
    signs = np.sign(e[pk])
    count = best = 1 if len(pk) else 0
    for a, b in zip(signs[:-1], signs[1:]):
        count = count + 1 if a != b else 1
        best = max(best, count)
    return int(best)


def default_rho(K: DomainSpec, m: int, n: int) -> float:
    """Extraction radius 2 t_(m+n+1)/t_(m+n) + max_K |z| (with t_0 = 1)."""
    N = m + n + 1
    return 2.0 * cheb_constant(K, N) / cheb_constant(K, N - 1) + K.hull_radius()


def best_approx(
    f: HoloFunction,
    m: int,
    n: int,
    K: DomainSpec,
    eps: float,
    opts: LawsonOptions | None = None,
) -> MinimaxResult:
    """Chebyshev (minimax) rational approximant to f on eps*K.

    Warm-started at the scaled-Chebyshev-node interpolant, which also makes
    that interpolant a feasible competitor: the returned uniform error never
    exceeds the interpolant's.  Interpolation nodes of the result are
    extracted from the zeros of r - f unless the Pade approximant is
    degenerate or its leading error coefficient vanishes (then extraction is
    skipped with a warning attached).
    """
    opts = opts or LawsonOptions()
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps * K.hull_radius() >= f.domain_radius:
        raise NodeOutsideDomain(
            f"eps*K reaches |z|={eps * K.hull_radius():.3g}, holomorphy radius is "
            f"{f.domain_radius:.3g}"
        )
    notes = []
    pinfo = pade_approx(f, m, n)
    if pinfo.degenerate:
        warnings.warn(
            f"Pade approximant of {f.name} at ({m},{n}) is degenerate; "
            "minimax hypotheses are violated",
            stacklevel=2,
        )
        notes.append("degenerate-pade")
    warm = interp_at_scaled_cheb(f, m, n, K, eps)
    grid = _Grid(K, eps, opts.grid)
    p, q, iters, converged = _run_lawson(
        f, m, n, grid, opts, _coeff_pair(warm.r, m, n)
    )
    r = RationalFunction(p, q, m, n)

    def err_fn(rr):
        return uniform_norm(lambda z: rr(z) - np.asarray(f.eval(z)), K, eps, M=opts.grid)

    uerr = err_fn(r)
    warm_err = err_fn(warm.r)
    if warm_err < uerr:
        r, uerr = warm.r, warm_err
        notes.append("warm-start-retained")

    eq_count = None
    if K.kind == "interval":
        fs_real = np.asarray(f.eval(grid.zs), dtype=complex)
        if np.abs(fs_real.imag).max() == 0.0 and np.abs(r.num.coeffs.imag).max() == 0.0:
            eq_count = _equioscillation_count(r, f, K, eps, opts.grid)

    nodes = None
    winding = None
    skip_extract = pinfo.degenerate or (
        np.isfinite(abs(pinfo.a_mn)) and abs(pinfo.a_mn) <= AMN_TINY
    )
    if skip_extract:
        notes.append("node-extraction-skipped")
    else:
        rho = opts.rho if opts.rho is not None else default_rho(K, m, n)
        seeds = eps * cheb_system(K, m + n + 1).nodes
        nodes = extract_nodes(
            r, f, eps, rho, m + n + 1, seeds=seeds, quad_points=opts.quad_points
        )
        winding = m + n + 1
    return MinimaxResult(
        r=r,
        uniform_error=uerr,
        nodes_extracted=nodes,
        lawson_iters=iters,
        converged=converged,
        equioscillation_count=eq_count,
        winding=winding,
        warnings=notes,
    )


# ------------------------------------------------------------ node extraction


def _winding_and_moment(g, gprime, center, radius, npts):
    """Winding number of g and first moment of its zeros inside the circle."""
    theta = 2.0 * np.pi * np.arange(npts) / npts
    zeta = center + radius * np.exp(1j * theta)
    gv = np.asarray(g(zeta), dtype=complex)
    gpv = np.asarray(gprime(zeta), dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = gpv / gv
    if not np.all(np.isfinite(ratio)):
        raise WindingMismatch("logarithmic derivative singular on the contour")
    step = (zeta - center) * ratio
    total = complex(np.mean(step))
    moment = complex(np.mean(step * zeta))
    w = round(total.real)
    if abs(total - w) > 0.25:
        raise WindingMismatch(
            f"winding quadrature did not settle (got {total:.3f}); "
            "a zero or pole may sit on the contour",
            winding=None,
        )
    return int(w), moment, float(np.abs(gv).max())


def extract_nodes(
    r: RationalFunction,
    f: HoloFunction,
    eps: float,
    rho: float,
    count: int,
    seeds=None,
    quad_points: int = 512,
) -> NodeMultiset:
    """Zeros of r - f inside |z| = eps*rho, certified by the argument principle.

    The winding number along the circle must equal `count`; individual zeros
    are then located by Newton iteration from the seeds (scaled Chebyshev
    nodes, by default a small ring), deduplicated, and clusters are assigned
    multiplicities by local winding numbers.
    """
    R = eps * rho
    if R >= f.domain_radius:
        raise NodeOutsideDomain("extraction contour outside holomorphy radius")
    rp = r.derivative()

    def g(z):
        return r(np.asarray(z, dtype=complex)) - np.asarray(f.eval(z), dtype=complex)

    def gp(z):
        return rp(np.asarray(z, dtype=complex)) - np.asarray(f.deriv(1, z), dtype=complex)

    w_total, _, gmax = _winding_and_moment(g, gp, 0.0, R, quad_points)
    if w_total != count:
        raise WindingMismatch(
            f"winding number {w_total} on |z|={R:.3g}, expected {count}",
            winding=w_total,
        )

    if seeds is None:
        seeds = 0.4 * R * np.exp(2j * np.pi * np.arange(count) / max(count, 1))
    seeds = np.asarray(seeds, dtype=complex).ravel().copy()
    big = np.abs(seeds) >= 0.9 * R
    seeds[big] = 0.8 * R * seeds[big] / np.abs(seeds[big])

    def newton_pool(seed_list):
        found = []
        for z0 in seed_list:
            z = complex(z0)
            for _ in range(80):
                gv = complex(g(z))
                gpv = complex(gp(z))
                if gpv == 0.0:
                    break
                step = gv / gpv
                z -= step
                if abs(step) <= 1e-15 * (1.0 + abs(z)):
                    break
            if abs(complex(g(z))) <= 1e-7 * gmax and abs(z) < R:
                found.append(z)
        return found

    ring = [0.25 * R * np.exp(1j * (2 * k + 1) * np.pi / 4) for k in range(4)]
    pool = list(seeds) + [s + d for s in seeds for d in ring]
    points = newton_pool(pool)
    for attempt in range(2):
        clusters = _cluster(points, 2e-4 * R)
        total, nodes = _assign_multiplicities(clusters, g, gp, R, count)
        if total == count:
            return NodeMultiset(tuple(nodes))
        if attempt == 0:
            extra = 0.7 * R * np.exp(2j * np.pi * np.arange(2 * count + 3) / (2 * count + 3))
            points += newton_pool(extra)
    raise NewtonDivergence(
        f"located zeros account for multiplicity {total}, expected {count}"
    )


def _cluster(points, tol):
    """Group Newton results that fell into the same zero (or zero cluster)."""
    groups = []
    tol = max(tol, 4.0 * delta_conf(max((abs(z) for z in points), default=0.0)))
    for z in sorted(points, key=lambda w: (w.real, w.imag)):
        for g in groups:
            if abs(z - np.mean(g)) <= tol:
                g.append(z)
                break
        else:
            groups.append([z])
    return [(complex(np.mean(g)), g) for g in groups]


def _assign_multiplicities(clusters, g, gp, R, count):
    if not clusters:
        return 0, []
    centers = [c for c, _ in clusters]
    total = 0
    nodes = []
    for (center, members) in clusters:
        spread = max((abs(z - center) for z in members), default=0.0)
        r_loc = max(4.0 * spread, 8e-4 * R)
        others = [abs(center - c) for c in centers if c is not center]
        if others:
            r_loc = min(r_loc, 0.45 * min(others))
        r_loc = min(r_loc, 0.9 * (R - abs(center)))
        if r_loc <= 0:
            continue
        try:
            mult, moment, _ = _winding_and_moment(g, gp, center, r_loc, 256)
        except WindingMismatch:
            mult, moment = 1, center
        if mult <= 0:
            continue
        # simple zeros keep the machine-precise Newton location; clusters get
        # the first zero moment, which equals the mean of the enclosed zeros
        loc = complex(np.mean(members)) if mult == 1 else moment / mult
        nodes.extend([complex(loc)] * mult)
        total += mult
    nodes.sort(key=lambda z: (round(z.real, 14), round(z.imag, 14)))
    return total, nodes


# ------------------------------------------------------------------- unitary


def unitary_best_exp(n: int, eps: float, opts: LawsonOptions | None = None) -> MinimaxResult:
    """Unitary best (n,n)-approximation to exp on the segment i*eps*[-1,1].

    The weighted least-squares step is symmetrized under the coefficient
    involution fixed by unitary rationals (q = p~), so every iterate
    satisfies |r(iy)| = 1 up to roundoff; the best unitary approximant is a
    fixed point of that involution because it interpolates exp on the
    imaginary axis.  Valid for 0 < eps < (n+1)*pi.
    """
    opts = opts or LawsonOptions()
    if not 0.0 < eps < (n + 1) * np.pi:
        raise PreconditionError(
            f"eps must lie in (0, {(n + 1) * np.pi:.6g}), got {eps}"
        )
    f = registry_get("exp")
    N = 2 * n + 1
    M = max(opts.grid, 64)
    ys = np.cos(np.pi * np.arange(M) / (M - 1))[::-1]
    K = DomainSpec.samples(1j * ys)

    tau = 1j * np.cos((2.0 * np.arange(N) + 1.0) * np.pi / (2.0 * N))
    warm = interpolate(f, NodeMultiset.of(eps * tau), n, n)
    grid = _Grid(K, eps, M)
    p, q, iters, converged = _run_lawson(
        f, n, n, grid, opts, _coeff_pair(warm.r, n, n), symmetrize=True
    )
    v = _symmetrize(np.concatenate([p, q]), n, n)
    r = RationalFunction(v[: n + 1], v[n + 1 :], n, n)

    def err_fn(rr):
        return uniform_norm(lambda z: rr(z) - np.asarray(f.eval(z)), K, eps, M=M)

    uerr = err_fn(r)
    notes = []
    warm_err = err_fn(warm.r)
    if warm_err < uerr:
        r, uerr = warm.r, warm_err
        notes.append("warm-start-retained")

    ygrid = np.linspace(-3.0 * eps, 3.0 * eps, 100)
    defect = float(np.abs(np.abs(r(1j * ygrid)) - 1.0).max())
    if converged and defect > 1e-6:
        raise UnitarityViolated(f"max ||r(iy)|-1| = {defect:.2e} exceeds 1e-6")

    # segment Chebyshev constants equal the interval's by rotation invariance
    t_N = 2.0 ** (1 - N)
    t_Nm1 = 1.0 if N == 1 else 2.0 ** (2 - N)
    rho = opts.rho if opts.rho is not None else 2.0 * t_N / t_Nm1 + 1.0
    nodes = extract_nodes(r, f, eps, rho, N, seeds=eps * tau, quad_points=opts.quad_points)
    off_axis = max(abs(z.real) for z in nodes)
    beyond = max(abs(z.imag) for z in nodes) - eps
    if off_axis > 1e-6 or beyond > 1e-6 * (1.0 + eps):
        notes.append("nodes-off-segment")
    return MinimaxResult(
        r=r,
        uniform_error=uerr,
        nodes_extracted=nodes,
        lawson_iters=iters,
        converged=converged,
        equioscillation_count=None,
        winding=N,
        unitarity_defect=defect,
        warnings=notes,
    )
