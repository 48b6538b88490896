"""Lines of 3-space as points of R^{2,2}.

A non-horizontal line ``{(A z + B, C z + D, z)}`` is a point of
R^{2,2} through the John coordinates below, under which two lines meet
(or are parallel) exactly when the points are null-separated:
``||x_l - x_m||^2 = 4 (dA dD - dB dC)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conics import ConicPair, classify_pair, PairClass
from .errors import DegenerateConfiguration, HorizontalLine, NotSkew, RankDeficient
from .neutral import jacobi_eigh


@dataclass(frozen=True)
class LineABCD:
    """The line ``{(A z + B, C z + D, z) : z real}``."""

    A: float
    B: float
    C: float
    D: float

    def point(self, z):
        z = np.asarray(z, dtype=float)
        return np.stack([self.A * z + self.B, self.C * z + self.D, z], axis=-1)

    @property
    def direction(self):
        return np.array([self.A, self.C, 1.0])

    def as_array(self):
        return np.array([self.A, self.B, self.C, self.D])

    @classmethod
    def from_array(cls, a):
        A, B, C, D = (float(v) for v in a)
        return cls(A, B, C, D)


@dataclass(frozen=True, eq=False)
class PluckerLine:
    """Direction ``q`` and moment ``p = point x q``."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        if not np.any(q):
            raise DegenerateConfiguration("line direction must be nonzero")
        if abs(np.dot(p, q)) > 1e-12 * max(1.0, np.linalg.norm(p) * np.linalg.norm(q)):
            raise DegenerateConfiguration("moment is not orthogonal to direction")

    @classmethod
    def through(cls, point, direction):
        point = np.asarray(point, dtype=float)
        q = np.asarray(direction, dtype=float)
        return cls(q, np.cross(point, q))


def plucker_from_abcd(l: LineABCD) -> PluckerLine:
    q = np.array([l.A, l.C, 1.0])
    return PluckerLine(q, np.cross([l.B, l.D, 0.0], q))


def abcd_from_plucker(L: PluckerLine, tol=1e-12) -> LineABCD:
    q, p = L.q, L.p
    if abs(q[2]) <= tol * np.linalg.norm(q):
        raise HorizontalLine("horizontal lines are outside the chart")
    return LineABCD(q[0] / q[2], -p[1] / q[2], q[1] / q[2], p[0] / q[2])


def john_coords(L: PluckerLine, tol=1e-12) -> np.ndarray:
    q, p = L.q, L.p
    if abs(q[2]) <= tol * np.linalg.norm(q):
        raise HorizontalLine("horizontal lines are at infinity in R^{2,2}")
    return np.array([p[1] + q[1], -p[0] - q[0], p[1] - q[1], -p[0] + q[0]]) / q[2]


def john_from_abcd(l) -> np.ndarray:
    """John coordinates of one line or of an (n, 4) array of ABCD rows."""
    a = l.as_array() if isinstance(l, LineABCD) else np.asarray(l, dtype=float)
    A, B, C, D = np.moveaxis(a, -1, 0)
    return np.stack([C - B, -D - A, -B - C, A - D], axis=-1)


def abcd_array_from_john(x) -> np.ndarray:
    """Vectorised inverse of :func:`john_from_abcd`, rows ``(A, B, C, D)``."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3, x4 = np.moveaxis(x, -1, 0)
    return np.stack([(x4 - x2) / 2.0, -(x1 + x3) / 2.0, (x1 - x3) / 2.0, -(x2 + x4) / 2.0], axis=-1)


def abcd_from_john(x) -> LineABCD:
    return LineABCD.from_array(abcd_array_from_john(x))


def incidence_residual(l: LineABCD, m: LineABCD) -> float:
    dA, dB, dC, dD = l.as_array() - m.as_array()
    return float(dA * dD - dB * dC)


def incident(l: LineABCD, m: LineABCD, tol=1e-9) -> bool:
    scale = 1.0 + float(np.dot(l.as_array(), l.as_array()) + np.dot(m.as_array(), m.as_array()))
    return abs(incidence_residual(l, m)) <= tol * scale


def _line_with_direction(P, d, tol=1e-12):
    if abs(d[2]) <= tol * np.linalg.norm(d):
        return None
    A, C = d[0] / d[2], d[1] / d[2]
    return LineABCD(float(A), float(P[0] - A * P[2]), float(C), float(P[1] - C * P[2]))


def transversal_through_point(P, l: LineABCD, m: LineABCD, tol=1e-12):
    """The line through ``P`` meeting ``l`` and ``m``; ``None`` if horizontal or the planes are parallel."""
    P = np.asarray(P, dtype=float)
    normals = []
    for line in (l, m):
        r = line.point(0.0) - P
        n = np.cross(r, line.direction)
        if np.linalg.norm(n) <= tol * (1.0 + np.linalg.norm(r)) * np.linalg.norm(line.direction):
            raise DegenerateConfiguration("point lies on one of the lines")
        normals.append(n / np.linalg.norm(n))
    d = np.cross(normals[0], normals[1])
    if np.linalg.norm(d) <= tol:
        return None
    return _line_with_direction(P, d, tol)


def regulus_from_three(l1: LineABCD, l2: LineABCD, l3: LineABCD, params, tol=1e-9) -> list:
    """Transversals to ``l2, l3`` through the points of ``l1`` at heights ``params``."""
    for a, b in ((l1, l2), (l1, l3), (l2, l3)):
        if incident(a, b, tol):
            raise NotSkew("input lines must be pairwise skew")
    out = []
    for z in params:
        t = transversal_through_point(l1.point(float(z)), l2, l3)
        if t is not None:
            out.append(t)
    return out


def h0_residual(points) -> np.ndarray:
    """``x^2 + y^2 - (1 + z^2)/4`` for each 3-point."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    return p[:, 0] ** 2 + p[:, 1] ** 2 - 0.25 * (1.0 + p[:, 2] ** 2)


# ---------------------------------------------------------------------------
# Quadrics
# ---------------------------------------------------------------------------

def _monomials(p):
    X, Y, Z = p[:, 0], p[:, 1], p[:, 2]
    return np.stack([X * X, Y * Y, Z * Z, X * Y, X * Z, Y * Z, X, Y, Z, np.ones_like(X)], axis=1)


def _matrix_from_coeffs(c):
    return np.array([
        [c[0], c[3] / 2, c[4] / 2, c[6] / 2],
        [c[3] / 2, c[1], c[5] / 2, c[7] / 2],
        [c[4] / 2, c[5] / 2, c[2], c[8] / 2],
        [c[6] / 2, c[7] / 2, c[8] / 2, c[9]],
    ])


def canonical_quadric(M, tol=1e-14) -> np.ndarray:
    """Unit Frobenius norm with the first nonzero entry (row-major) positive."""
    M = np.asarray(M, dtype=float)
    M = 0.5 * (M + M.T)
    M = M / np.linalg.norm(M)
    flat = M.ravel()
    nz = np.flatnonzero(np.abs(flat) > tol)
    if nz.size and flat[nz[0]] < 0:
        M = -M
    return M


H0_MATRIX = canonical_quadric(np.diag([1.0, 1.0, -0.25, -0.25]))


@dataclass
class Quadric:
    matrix: np.ndarray
    max_residual: float = 0.0
    rms_residual: float = 0.0

    def __call__(self, points):
        p = np.atleast_2d(np.asarray(points, dtype=float))
        h = np.hstack([p, np.ones((p.shape[0], 1))])
        return np.einsum("ni,ij,nj->n", h, self.matrix, h)

    def relative_residuals(self, points):
        p = np.atleast_2d(np.asarray(points, dtype=float))
        return np.abs(self(p)) / (1.0 + np.sum(p * p, axis=1))

    def kind(self, tol=1e-8) -> str:
        w, _ = jacobi_eigh(self.matrix[:3, :3])
        scale = max(1e-300, float(np.max(np.abs(w))))
        if np.min(np.abs(w)) <= tol * scale:
            return "hyperbolic_paraboloid"
        if np.all(w > 0) or np.all(w < 0):
            return "ellipsoid_like"
        return "hyperboloid"

    def deviation_from(self, other) -> float:
        B = other.matrix if isinstance(other, Quadric) else np.asarray(other, dtype=float)
        return float(np.max(np.abs(canonical_quadric(self.matrix) - canonical_quadric(B))))


def fit_quadric(points, rank_tol=1e-10) -> Quadric:
    """Least-squares quadric through 3-points (smallest right singular vector of the design matrix)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if p.shape[0] < 10:
        raise RankDeficient("at least 10 points are needed")
    centre = p.mean(axis=0)
    s = float(np.mean(np.linalg.norm(p - centre, axis=1))) / np.sqrt(3.0)
    if s == 0.0:
        raise RankDeficient("all points coincide")
    q = (p - centre) / s
    rows = _monomials(q)
    rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    # SVD of the rows rather than an eigensolve of rows^T rows, which squares the condition number
    _, sv, Vt = np.linalg.svd(rows, full_matrices=False)
    if sv[-2] <= rank_tol * sv[0]:
        raise RankDeficient("the points do not determine a unique quadric")
    Mn = _matrix_from_coeffs(Vt[-1])
    T = np.eye(4)
    T[:3, :3] /= s
    T[:3, 3] = -centre / s
    M = canonical_quadric(T.T @ Mn @ T)
    out = Quadric(M)
    r = out.relative_residuals(p)
    out.max_residual = float(np.max(r))
    out.rms_residual = float(np.sqrt(np.mean(r * r)))
    return out


# ---------------------------------------------------------------------------
# Doubly ruled surfaces from conic pairs
# ---------------------------------------------------------------------------

@dataclass
class RulSurfReport:
    n_lines: tuple
    absent: tuple
    cross_max: float
    same_side_incident: tuple
    quadric: Quadric | None
    quadric_residual: float
    regulus_max: float
    regulus_skipped: int
    checks: dict = field(default_factory=dict)
    lines_S: list = field(default_factory=list, repr=False)
    lines_Sp: list = field(default_factory=list, repr=False)
    thetas_S: np.ndarray = field(default=None, repr=False)
    thetas_Sp: np.ndarray = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def side_lines(conic, n, lam_cut=1e-3):
    """Lines for ``n`` evenly spaced chart angles, skipping those too close to infinity."""
    ch = conic.chart
    thetas = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    X, _, lam = ch.evaluate(thetas)
    keep = np.abs(lam) > lam_cut * (abs(ch.alpha) + ch.R)
    rows = abcd_array_from_john(X[keep])
    return [LineABCD.from_array(r) for r in rows], thetas[keep], int(np.sum(~keep))


def _crossing_height(l: LineABCD, m: LineABCD):
    """Height at which ``m`` meets ``l``, or ``None`` when they are parallel."""
    M = np.array([[l.A - m.A], [l.C - m.C]])
    rhs = np.array([m.B - l.B, m.D - l.D])
    if np.linalg.norm(M) <= 1e-12 * (1.0 + np.linalg.norm(rhs)):
        return None
    z, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    return float(z[0])


def _regulus_closure(ls, ms):
    """Rebuild each of ``ms`` from three of ``ls``; max relative ABCD error and skip count."""
    k = len(ls)
    l1, l2, l3 = ls[0], ls[k // 3], ls[(2 * k) // 3]
    worst, skipped = 0.0, 0
    for m in ms:
        z = _crossing_height(l1, m)
        if z is None:
            skipped += 1
            continue
        try:
            got = regulus_from_three(l1, l2, l3, [z])
        except DegenerateConfiguration:
            skipped += 1
            continue
        if not got:
            skipped += 1
            continue
        err = np.linalg.norm(got[0].as_array() - m.as_array()) / (1.0 + np.linalg.norm(m.as_array()))
        worst = max(worst, float(err))
    return worst, skipped


def verify_rulsurf(pair: ConicPair, n: int = 16, z_grid=None, tol_cross=1e-9, tol_quadric=1e-8,
                   tol_regulus=1e-8) -> RulSurfReport:
    """Check that the two sides of a pair are the two rulings of one doubly ruled surface."""
    if classify_pair(pair).cls is PairClass.LINE_EMPTY:
        raise ValueError("line-empty pairs have no ruled surface")
    z_grid = np.linspace(-2.0, 2.0, 9) if z_grid is None else np.asarray(z_grid, dtype=float)
    ls, ts, absent = side_lines(pair.S, n)
    ms, tps, absent_p = side_lines(pair.Sperp, n)
    La = np.array([l.as_array() for l in ls])
    Ma = np.array([m.as_array() for m in ms])

    def pair_residuals(P, Q):
        d = P[:, None, :] - Q[None, :, :]
        res = d[..., 0] * d[..., 3] - d[..., 1] * d[..., 2]
        scale = 1.0 + np.sum(P * P, axis=1)[:, None] + np.sum(Q * Q, axis=1)[None, :]
        return np.abs(res) / scale

    cross = pair_residuals(La, Ma)
    cross_max = float(np.max(cross)) if cross.size else 0.0
    same = []
    for A in (La, Ma):
        r = pair_residuals(A, A)
        iu = np.triu_indices(len(A), 1)
        same.append(int(np.sum(r[iu] <= tol_cross)))

    pts = np.vstack([l.point(z_grid) for l in ls + ms])
    quad = fit_quadric(pts)
    worst1, skip1 = _regulus_closure(ls, ms)
    worst2, skip2 = _regulus_closure(ms, ls)
    checks = {
        "cross_incidence": cross_max <= tol_cross,
        "same_side_skew": max(same) <= 2,
        "common_quadric": quad.max_residual <= tol_quadric,
        "regulus_closure": max(worst1, worst2) <= tol_regulus,
    }
    return RulSurfReport((len(ls), len(ms)), (absent, absent_p), cross_max, tuple(same), quad,
                         quad.max_residual, max(worst1, worst2), skip1 + skip2, checks,
                         ls, ms, ts, tps)
