"""Compact domains K, their scalings eps*K, Chebyshev nodes and constants.

Supported kinds: a real interval [a, b], a disk of radius R centered at 0,
and a finite sample cloud.  The Chebyshev system of degree N consists of the
roots of the monic degree-N polynomial of least sup norm on K; on the
interval and the disk closed forms are used, on sample clouds a discrete
minimax problem is solved by Lawson iteration.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDomain
from .poly import ComplexPolynomial, poly_from_roots, poly_roots

#: Lawson iterations for the discrete monic minimax fallback
_DISCRETE_LAWSON_ITERS = 30
_DISCRETE_WEIGHT_FLOOR = 1e-12


@dataclass(frozen=True)
class DomainSpec:
    """Compact approximation domain: interval(a,b), disk(R), or samples."""

    kind: str
    a: float = 0.0
    b: float = 0.0
    radius: float = 0.0
    points: tuple = ()

    @classmethod
    def interval(cls, a: float, b: float) -> "DomainSpec":
        if not a < b:
            raise ValueError(f"interval needs a < b, got [{a}, {b}]")
        return cls(kind="interval", a=float(a), b=float(b))

    @classmethod
    def disk(cls, radius: float) -> "DomainSpec":
        if radius <= 0:
            raise ValueError("disk radius must be positive")
        return cls(kind="disk", radius=float(radius))

    @classmethod
    def samples(cls, points) -> "DomainSpec":
        pts = tuple(complex(p) for p in np.asarray(points).ravel())
        if len(pts) < 1:
            raise ValueError("sample domain needs at least one point")
        return cls(kind="samples", points=pts)

    @classmethod
    def parse(cls, text: str) -> "DomainSpec":
        """CLI syntax: interval:a,b | disk:R | samples:file.json"""
        kind, _, rest = text.partition(":")
        if kind == "interval":
            a, b = (float(t) for t in rest.split(","))
            return cls.interval(a, b)
        if kind == "disk":
            return cls.disk(float(rest))
        if kind == "samples":
            with open(rest) as fh:
                data = json.load(fh)
            pts = [complex(p[0], p[1]) if isinstance(p, list) else complex(p) for p in data]
            return cls.samples(pts)
        raise ValueError(f"unknown domain spec {text!r}")

    @property
    def sample_count(self) -> int:
        return len(self.points)

    def hull_radius(self) -> float:
        if self.kind == "interval":
            return max(abs(self.a), abs(self.b))
        if self.kind == "disk":
            return self.radius
        return max(abs(p) for p in self.points)

    def scaled(self, eps: float) -> "DomainSpec":
        if self.kind == "interval":
            return DomainSpec.interval(eps * self.a, eps * self.b)
        if self.kind == "disk":
            return DomainSpec.disk(eps * self.radius)
        return DomainSpec.samples(tuple(eps * p for p in self.points))

    def describe(self) -> str:
        if self.kind == "interval":
            return f"interval:{self.a:g},{self.b:g}"
        if self.kind == "disk":
            return f"disk:{self.radius:g}"
        return f"samples[{len(self.points)}]"


@dataclass
class ChebSystem:
    N: int
    nodes: np.ndarray
    constant: float
    monic_poly: ComplexPolynomial


def cheb_system(K: DomainSpec, N: int) -> ChebSystem:
    """Chebyshev nodes and constant of degree N on K.

    Interval [-1,1]: nodes cos((2j+1)pi/(2N)), constant 2^(1-N); a general
    interval maps affinely with constant 2*((b-a)/4)^N.  Disk: all nodes 0,
    constant R^N.  Sample clouds: discrete monic minimax by Lawson.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if K.kind == "interval":
        mid = 0.5 * (K.a + K.b)
        half = 0.5 * (K.b - K.a)
        u = np.cos((2.0 * np.arange(N) + 1.0) * np.pi / (2.0 * N))
        nodes = mid + half * u
        constant = 2.0 * (half / 2.0) ** N
        monic = poly_from_roots(nodes)
    elif K.kind == "disk":
        nodes = np.zeros(N, dtype=complex)
        constant = K.radius ** N
        monic = ComplexPolynomial([0.0] * N + [1.0])
    elif K.kind == "samples":
        if len(K.points) < 3 * N:
            raise UnsupportedDomain(
                f"sample domain has {len(K.points)} points, degree {N} needs >= {3 * N}"
            )
        monic, nodes = _discrete_cheb(np.asarray(K.points, dtype=complex), N)
        constant = float(np.abs(monic(np.asarray(K.points, dtype=complex))).max())
    else:
        raise UnsupportedDomain(f"unknown domain kind {K.kind!r}")
    return ChebSystem(N=N, nodes=np.asarray(nodes, dtype=complex), constant=float(constant), monic_poly=monic)


def cheb_constant(K: DomainSpec, N: int) -> float:
    """t_N, using the convention t_0 = 1."""
    if N == 0:
        return 1.0
    return cheb_system(K, N).constant


def _discrete_cheb(pts: np.ndarray, N: int):
    """Monic minimax z^N - g on a point cloud by Lawson-weighted least squares."""
    V = np.column_stack([pts ** k for k in range(N)])
    target = pts ** N
    w = np.full(len(pts), 1.0 / len(pts))
    best = None
    for _ in range(_DISCRETE_LAWSON_ITERS):
        sw = np.sqrt(w)
        coef, *_ = np.linalg.lstsq(sw[:, None] * V, sw * target, rcond=None)
        res = np.abs(target - V @ coef)
        worst = res.max()
        if best is None or worst < best[0]:
            best = (worst, coef)
        w = w * res
        w = np.maximum(w, _DISCRETE_WEIGHT_FLOOR * w.max())
        w = w / w.sum()
    coef = best[1]
    monic = ComplexPolynomial(np.concatenate([-coef, [1.0]]))
    nodes = poly_roots(monic)
    return monic, nodes


def sample_domain(K: DomainSpec, M: int, eps: float) -> np.ndarray:
    """Discretize eps*K with M points.

    Interval: endpoint-inclusive Chebyshev-distributed points (ascending).
    Disk: M boundary points plus the origin (appended last); boundary-only
    sampling is justified by the maximum principle for holomorphic errors.
    Samples: the stored points, scaled (M ignored).
    """
    if K.kind == "interval":
        if M < 2:
            return np.array([0.5 * (K.a + K.b) * eps], dtype=complex)
        u = np.cos(np.pi * np.arange(M) / (M - 1))[::-1]
        mid = 0.5 * (K.a + K.b)
        half = 0.5 * (K.b - K.a)
        return (eps * (mid + half * u)).astype(complex)
    if K.kind == "disk":
        theta = 2.0 * np.pi * np.arange(M) / M
        boundary = eps * K.radius * np.exp(1j * theta)
        return np.concatenate([boundary, [0.0 + 0.0j]])
    return eps * np.asarray(K.points, dtype=complex)


def uniform_norm(g, K: DomainSpec, eps: float, M: int = 512) -> float:
    """max |g| over a discretization of eps*K; on intervals the discrete
    argmax is refined by local parabolic maximization.
    """
    zs = sample_domain(K, M, eps)
    vals = np.abs(np.asarray(g(zs), dtype=complex))
    out = float(vals.max())
    if K.kind == "interval" and len(zs) >= 3:
        i = int(vals.argmax())
        if 0 < i < len(zs) - 1:
            x0, x1, x2 = zs[i - 1].real, zs[i].real, zs[i + 1].real
            y0, y1, y2 = vals[i - 1], vals[i], vals[i + 1]
            d1 = (y1 - y0) / (x1 - x0)
            d2 = (y2 - y1) / (x2 - x1)
            a = (d2 - d1) / (x2 - x0)
            if a < 0.0:
                xs = 0.5 * (x0 + x1) - d1 / (2.0 * a)
                xs = min(max(xs, x0), x2)
                out = max(out, float(abs(complex(g(complex(xs))))))
    return out
