"""Adaptive Gauss-Kronrod quadrature and line integrals over conics.

The 15-point Kronrod rule is paired with its embedded 7-point Gauss rule;
``|K15 - G7|`` is the (deliberately pessimistic) local error estimate.
Unbounded conics are integrated arc by arc: a core interval in the chart
angle, then windows that halve their distance to each root of ``lam``
until the contributions have died out.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

# abscissae and weights of the 15-point Kronrod rule and its 7-point Gauss rule
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # ascending, 15 nodes
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod abscissae (1, 3, 5 and the centre)
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


class Status(enum.Enum):
    OK = "OK"
    NOT_INTEGRABLE = "NotIntegrable"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances of the adaptive scheme.

    ``eps_decay`` is the relative size below which two successive windows
    and the arc-end integrand count as decayed; ``max_windows`` bounds
    the window halving toward each root.  ``min_windows`` is large on
    purpose: a bump far out on an unbounded arc sits at a tiny angular
    offset, and earlier windows that are exactly zero say nothing about it.
    ``growth_windows`` consecutive growing windows end a divergent arc early.
    ``initial_pieces`` is the starting partition of every core and window,
    so narrow features (a conic running almost along a null direction) are
    seen by at least a few nodes.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_intervals: int = 4000
    eps_decay: float = 1e-14
    min_windows: int = 40
    max_windows: int = 60
    growth_windows: int = 12
    initial_pieces: int = 32
    abs_floor: float = 1e-13


@dataclass
class QuadResult:
    value: float
    error: float
    status: Status
    evaluations: int = 0
    message: str = ""

    @property
    def ok(self):
        return self.status is Status.OK


def gk15(f, a, b):
    """Kronrod value and ``|K - G|`` on each of the intervals ``[a_i, b_i]``.

    ``f`` maps an array of abscissae to an array of values of the same shape.
    Also returns the sum of ``|f| * weight`` for the round-off floor.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    half = 0.5 * (b - a)
    centre = 0.5 * (a + b)
    x = centre[:, None] + half[:, None] * KRONROD_NODES[None, :]
    y = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    k = half * (y @ KRONROD_WEIGHTS)
    g = half * (y @ GAUSS_WEIGHTS)
    resabs = np.abs(half) * (np.abs(y) @ KRONROD_WEIGHTS)
    return k, np.abs(k - g), resabs


def _refine(f, lo, hi, spec: QuadratureSpec):
    """Adaptive refinement of an initial partition; returns the result and the final intervals.

    Each round splits, in one vectorised batch, every interval whose error
    exceeds its length-proportional share of the target.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    val, err, rabs = gk15(f, lo, hi)
    nevals = 15 * lo.size
    total_len = float(np.sum(np.abs(hi - lo)))
    while True:
        if not (np.all(np.isfinite(val)) and np.all(np.isfinite(err))):
            res = QuadResult(float("nan"), float("inf"), Status.NOT_INTEGRABLE, nevals, "non-finite integrand")
            return res, lo, hi, val
        total = float(np.sum(val))
        e = float(np.sum(err))
        target = max(spec.abs_tol, spec.rel_tol * abs(total), 50 * np.finfo(float).eps * float(np.sum(rabs)))
        if e <= target:
            return QuadResult(total, e, Status.OK, nevals), lo, hi, val
        if lo.size >= spec.max_intervals:
            return QuadResult(total, e, Status.NOT_INTEGRABLE, nevals, "subdivision limit reached"), lo, hi, val
        share = target * np.abs(hi - lo) / total_len if total_len > 0 else np.full(lo.size, target)
        split = err > share
        if not np.any(split):
            split = err == err.max()
        mid = 0.5 * (lo[split] + hi[split])
        if np.any((mid <= lo[split]) | (mid >= hi[split])):
            return QuadResult(total, e, Status.OK, nevals, "interval resolution limit"), lo, hi, val
        nlo = np.concatenate([lo[split], mid])
        nhi = np.concatenate([mid, hi[split]])
        nv, ne, nr = gk15(f, nlo, nhi)
        nevals += 15 * nlo.size
        keep = ~split
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        rabs = np.concatenate([rabs[keep], nr])


def _partition(los, his, pieces):
    """Each ``[los[i], his[i]]`` cut into ``pieces`` equal intervals."""
    t = np.linspace(0.0, 1.0, pieces + 1)
    los = np.atleast_1d(los)[:, None]
    his = np.atleast_1d(his)[:, None]
    e = los + (his - los) * t[None, :]
    return e[:, :-1].ravel(), e[:, 1:].ravel()


def adaptive_gk(f, a, b, spec: QuadratureSpec = QuadratureSpec(), pieces: int = 1) -> QuadResult:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``, starting from ``pieces`` equal intervals."""
    lo, hi = _partition(float(a), float(b), pieces)
    return _refine(f, lo, hi, spec)[0]


def integrate_toward(f_offset, delta0, spec: QuadratureSpec, running: float):
    """Integrate ``f_offset(delta)`` over ``(0, delta0]`` by halving windows toward 0.

    Window ``k`` is ``[delta0 / 2^(k+1), delta0 / 2^k]``.  The first
    ``min_windows`` are integrated together in one refinement; further
    windows follow one at a time.  Stops once two successive windows and
    the integrand at the inner edge (times the window width) are below
    ``eps_decay`` times the running total.

    Returns ``(value, error, evaluations, status, message)``; ``running``
    is the integral accumulated elsewhere on the curve.
    """
    nb = min(spec.min_windows, spec.max_windows)
    his = delta0 / 2.0 ** np.arange(nb)
    los = his / 2.0
    lo, hi = _partition(los, his, spec.initial_pieces)
    res, flo, fhi, fval = _refine(f_offset, lo, hi, spec)
    nevals = res.evaluations
    if not res.ok:
        return 0.0, float("inf"), nevals, Status.NOT_INTEGRABLE, res.message
    # window index of each final interval from its midpoint
    k_of = np.floor(-np.log2(0.5 * (flo + fhi) / delta0)).astype(int)
    window_vals = np.bincount(np.clip(k_of, 0, nb - 1), weights=fval, minlength=nb)
    edges = np.asarray(f_offset(los), dtype=float)
    nevals += nb

    total, err = 0.0, res.error
    small = growing = 0
    prev = None
    for k in range(spec.max_windows):
        if k < nb:
            wv, edge, lo_k = float(window_vals[k]), float(edges[k]), float(los[k])
        else:
            lo_k = delta0 / 2.0 ** (k + 1)
            r = adaptive_gk(f_offset, lo_k, 2.0 * lo_k, spec, spec.initial_pieces)
            nevals += r.evaluations + 1
            if not r.ok:
                return total, err, nevals, Status.NOT_INTEGRABLE, r.message
            wv, edge = r.value, float(np.asarray(f_offset(np.array([lo_k])))[0])
            err += r.error
        if not np.isfinite(edge):
            return total, err, nevals, Status.NOT_INTEGRABLE, "non-finite integrand near a point at infinity"
        total += wv
        bound = spec.eps_decay * abs(running + total)
        small = small + 1 if abs(wv) <= bound and abs(edge) * lo_k <= bound else 0
        if k + 1 >= spec.min_windows and small >= 2:
            return total, err, nevals, Status.OK, ""
        substantial = abs(wv) > 1e-3 * abs(running + total)
        growing = growing + 1 if substantial and prev is not None and abs(wv) > abs(prev) > 0 else 0
        if growing >= spec.growth_windows:
            return total, err, nevals, Status.NOT_INTEGRABLE, "window contributions grow toward a point at infinity"
        prev = wv
    return total, err, nevals, Status.NOT_INTEGRABLE, "no decay toward a point at infinity"
