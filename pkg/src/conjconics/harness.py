"""Mean-value experiments: line integrals of solutions over conic pairs."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import rng
from .conformal import Dilation, LinearIsometry, SWAP, Translation, from_generators, random_isometry, random_map
from .conics import (Conic, ConicPair, LINE_V_BASIS, PairClass, apply_map, classify_pair, lambda_roots,
                     pair_from_basis, parabola_pair, respan_pair, standard_pair)
from .errors import ConicsError
from .quadrature import QuadResult, QuadratureSpec, Status, adaptive_gk, integrate_toward

SKIPPED_LINE_EMPTY = "SkippedLineEmpty"


# ---------------------------------------------------------------------------
# Integration over one conic
# ---------------------------------------------------------------------------

def _arc_integrand(u, ch, root, direction, double):
    """Integrand as a function of the angular offset from ``root`` (``direction`` = +1 or -1)."""

    def f(delta):
        delta = np.asarray(delta, dtype=float)
        d = direction * delta
        X, speed, _ = ch.evaluate(root + d, lam=ch.lam_near(root, d, double))
        return u.eval(X) * speed
    return f


def integrate_conic(u, S: Conic, spec: QuadratureSpec = QuadratureSpec()) -> QuadResult:
    """``integral of u dl`` over ``S``, or a ``NotIntegrable`` result."""
    ch = S.chart
    lc = lambda_roots(ch)
    if lc.roots == "all":
        return QuadResult(float("nan"), float("inf"), Status.NOT_INTEGRABLE, 0, "conic has no finite points")
    if lc.roots == 0:
        def f(theta):
            X, speed, _ = ch.evaluate(theta)
            return u.eval(X) * speed
        return adaptive_gk(f, 0.0, 2.0 * np.pi, spec, spec.initial_pieces)

    roots = list(lc.root_thetas)
    double = lc.roots == 1
    arcs = [(roots[0], roots[0] + 2 * np.pi)] if double else [(roots[0], roots[1]), (roots[1], roots[0] + 2 * np.pi)]
    total, err, nevals = 0.0, 0.0, 0
    for ra, rb in arcs:
        length = rb - ra
        d0 = min(0.25 * length, 0.5)
        fa = _arc_integrand(u, ch, ra, +1.0, double)
        fb = _arc_integrand(u, ch, rb, -1.0, double)
        # core, split at the middle so each half measures lam from its nearer root
        for r in (adaptive_gk(fa, d0, 0.5 * length, spec, spec.initial_pieces),
                  adaptive_gk(fb, d0, 0.5 * length, spec, spec.initial_pieces)):
            nevals += r.evaluations
            if not r.ok:
                return QuadResult(float("nan"), r.error, Status.NOT_INTEGRABLE, nevals, r.message)
            total += r.value
            err += r.error
        for g in (fa, fb):
            v, e, n, status, msg = integrate_toward(g, d0, spec, total)
            nevals += n
            if status is not Status.OK:
                return QuadResult(float("nan"), float("inf"), Status.NOT_INTEGRABLE, nevals, msg)
            total += v
            err += e
    return QuadResult(total, err, Status.OK, nevals)


# ---------------------------------------------------------------------------
# Trials
# ---------------------------------------------------------------------------

@dataclass
class TrialReport:
    pair_class: str
    solution_id: str
    I_S: float
    I_Sp: float
    abs_diff: float
    rel_diff: float
    status: str
    pair_id: str = ""

    @property
    def ok(self):
        return self.status == Status.OK.value


def _report(cls_name, u, rS: QuadResult, rP: QuadResult, spec, pair_id=""):
    name = getattr(u, "name", "") or type(u).__name__
    if not (rS.ok and rP.ok):
        return TrialReport(cls_name, name, rS.value, rP.value, float("nan"), float("nan"),
                           Status.NOT_INTEGRABLE.value, pair_id)
    diff = abs(rS.value - rP.value)
    rel = diff / max(abs(rS.value), abs(rP.value), spec.abs_floor)
    return TrialReport(cls_name, name, rS.value, rP.value, diff, rel, Status.OK.value, pair_id)


def circle_pair(a, b, c, d, r) -> ConicPair:
    """The circles ``(a + r cos, b + r sin, c, d)`` and ``(a, b, c + r cos, d + r sin)``."""
    L = from_generators([Dilation(r), Translation((a, b, c, d))])
    return apply_map(L, standard_pair())


def asgeirsson_check(u, a, b, c, d, r, spec: QuadratureSpec = QuadratureSpec()) -> TrialReport:
    if not r > 0:
        raise ValueError("radius must be positive")
    pair = circle_pair(a, b, c, d, r)
    return _report(PairClass.CIRCLES.value, u, integrate_conic(u, pair.S, spec),
                   integrate_conic(u, pair.Sperp, spec), spec)


def mean_value_check(u, pair: ConicPair, spec: QuadratureSpec = QuadratureSpec(), pair_id="") -> TrialReport:
    cls = classify_pair(pair).cls
    name = getattr(u, "name", "") or type(u).__name__
    if cls is PairClass.LINE_EMPTY:
        return TrialReport(cls.value, name, float("nan"), float("nan"), float("nan"), float("nan"),
                           SKIPPED_LINE_EMPTY, pair_id)
    return _report(cls.value, u, integrate_conic(u, pair.S, spec), integrate_conic(u, pair.Sperp, spec),
                   spec, pair_id)


# ---------------------------------------------------------------------------
# Random pairs by class
# ---------------------------------------------------------------------------

def random_similarity(gen: np.random.Generator, allow_swap=True):
    """A random composition of a neutral isometry, a dilation and a translation.

    These fix the subspace of plane coordinates, so the class of a pair
    is preserved.
    """
    gens = [LinearIsometry(random_isometry(gen))]
    if allow_swap and gen.random() < 0.5:
        gens.append(LinearIsometry(SWAP))
    gens.append(Dilation(float(np.exp(gen.uniform(np.log(0.5), np.log(2.0))))))
    gens.append(Translation(tuple(gen.uniform(-1.0, 1.0, size=4))))
    return from_generators(gens)


def _random_respan(pair: ConicPair, gen: np.random.Generator):
    def mat():
        while True:
            A = gen.normal(size=(3, 3))
            if abs(np.linalg.det(A)) > 0.1:
                return A
    return respan_pair(pair, mat(), mat())


def _constructed_pair(base: ConicPair, gen, swap_sides=False):
    pair = apply_map(random_similarity(gen), base)
    pair = _random_respan(pair, gen)
    if swap_sides and gen.random() < 0.5:
        pair = pair.swapped()
    return pair


_FILTERS = {
    None: None, "any": None, "all": None,
    "circles": PairClass.CIRCLES, "hyperbolae": PairClass.HYPERBOLAE,
    "parabolae": PairClass.PARABOLAE, "line_empty": PairClass.LINE_EMPTY, "lineempty": PairClass.LINE_EMPTY,
}


def parse_class_filter(f):
    if isinstance(f, PairClass):
        return f
    key = None if f is None else str(f).lower()
    if key not in _FILTERS:
        raise ValueError(f"unknown class filter {f!r}")
    return _FILTERS[key]


def generate_pairs(seed: int, count: int, class_filter=None, n_generators: int = 5, max_attempts: int = 10000) -> list:
    """Deterministic random pairs.

    Circles and Hyperbolae (and the unfiltered case) are conformal images
    of the standard pair, rejection-sampled on the class; Parabolae and
    LineEmpty pairs are built from the worked parabola and line pairs by
    random similarities and random re-spanning.
    """
    cls = parse_class_filter(class_filter)
    out = []
    if cls is PairClass.PARABOLAE or cls is PairClass.LINE_EMPTY:
        base = parabola_pair() if cls is PairClass.PARABOLAE else pair_from_basis(LINE_V_BASIS)
        for i in range(count):
            gen = rng.stream(seed, 0xC0, i)
            out.append(_constructed_pair(base, gen, swap_sides=cls is PairClass.LINE_EMPTY))
        return out
    i = 0
    while len(out) < count:
        if i >= max_attempts:
            raise ConicsError(f"class {cls} not reached after {max_attempts} attempts")
        L = random_map(seed, n_generators, 0xA0, i)
        i += 1
        pair = apply_map(L, standard_pair())
        try:
            got = classify_pair(pair).cls
        except ConicsError:
            continue
        if cls is None or got is cls:
            out.append(pair)
    return out


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

REPORT_HEADER = ["pair_id", "class", "solution_id", "I_S", "I_Sperp", "abs_diff", "rel_diff", "status"]


def _fmt(v):
    return "%.17g" % v if isinstance(v, float) else str(v)


def report_csv(reports, timestamp: str | None = None) -> str:
    buf = io.StringIO()
    if timestamp is not None:
        buf.write(f"# generated {timestamp}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for r in reports:
        w.writerow([r.pair_id, r.pair_class, r.solution_id, _fmt(r.I_S), _fmt(r.I_Sp), _fmt(r.abs_diff),
                    _fmt(r.rel_diff), r.status])
    return buf.getvalue()


def run_grid(pairs, solutions, spec: QuadratureSpec = QuadratureSpec(), ids=None) -> list:
    ids = ids or [f"p{i}" for i in range(len(pairs))]
    return [mean_value_check(u, p, spec, pid) for pid, p in zip(ids, pairs) for u in solutions]
