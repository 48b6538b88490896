"""Conics of R^{2,2} as 3-subspaces of R^{3,3}, and conjugate pairs of them.

A conic is stored through its associated subspace ``V`` (spanned by the
DPC of hyperspheres that cut it out).  Its points are the ``x`` whose cone
coordinates are orthogonal to ``V``, i.e. the null rays of the complement
``W`` that meet the slice ``s0 + s5 = 1``.  Writing the null rays of ``W``
as ``e + cos(t) f1 + sin(t) f2`` gives one chart of the whole conic, with
points at infinity where ``lam(t) = alpha + beta cos t + gamma sin t``
vanishes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .conformal import ConformalMap
from .dpc import phi
from .errors import (DegenerateComplement, DegenerateConic, DependentBasis, DependentSpheres,
                     NotAConic, NullSeparatedCenters, WrongCase)
from .neutral import (DEFAULT_TOL, G22, J33, MetricClass, P_PERP, Signature, Subspace33, gram33,
                      inner22, inner33, intersection, jacobi_eigh, mid, norm22, null_space,
                      orthogonal_complement, orthonormal_rows, p_subspace, rank, signature)


class PairClass(enum.Enum):
    LINE_EMPTY = "line_empty"
    CIRCLES = "circles"
    HYPERBOLAE = "hyperbolae"
    PARABOLAE = "parabolae"


_CLASS_OF_PLANE = {
    MetricClass.DEFINITE: PairClass.CIRCLES,
    MetricClass.INDEFINITE: PairClass.HYPERBOLAE,
    MetricClass.DEGENERATE: PairClass.PARABOLAE,
}


# ---------------------------------------------------------------------------
# Null-ray chart
# ---------------------------------------------------------------------------

def neutral_gram_schmidt(basis, tol=DEFAULT_TOL):
    """Pseudo-orthonormalise rows under the (3,3) form.

    The remaining vector with the largest ``|(v, v)|`` is taken first.  If
    every remaining vector is (numerically) null, the pair with the largest
    mutual pairing is merged into a non-null vector first.

    Returns a list of ``(vector, sign)`` with ``(vector, vector) = sign``.
    """
    rem = [np.asarray(v, dtype=float) / np.linalg.norm(v) for v in np.atleast_2d(basis)]
    out = []
    while rem:
        selfs = np.array([inner33(v, v) for v in rem])
        k = int(np.argmax(np.abs(selfs)))
        if abs(selfs[k]) <= tol * float(np.dot(rem[k], rem[k])):
            if len(rem) == 1:
                raise DegenerateConic("subspace is degenerate")
            best, pair = 0.0, None
            for i in range(len(rem)):
                for j in range(i + 1, len(rem)):
                    c = abs(inner33(rem[i], rem[j]))
                    if c > best:
                        best, pair = c, (i, j)
            if pair is None or best <= tol:
                raise DegenerateConic("subspace is degenerate")
            i, j = pair
            rem[i] = rem[i] + rem[j]
            rem[i] /= np.linalg.norm(rem[i])
            continue
        v = rem.pop(k)
        sgn = 1 if selfs[k] > 0 else -1
        e = v / np.sqrt(abs(selfs[k]))
        out.append((e, sgn))
        rem = [w - sgn * inner33(w, e) * e for w in rem]
        rem = [w / np.linalg.norm(w) for w in rem]
    return out


@dataclass(frozen=True, eq=False)
class NullChart:
    """Null rays ``e + cos t f1 + sin t f2`` of an indefinite 3-subspace."""

    e: np.ndarray
    f1: np.ndarray
    f2: np.ndarray

    @property
    def alpha(self):
        return float(self.e[0] + self.e[5])

    @property
    def beta(self):
        return float(self.f1[0] + self.f1[5])

    @property
    def gamma(self):
        return float(self.f2[0] + self.f2[5])

    @property
    def R(self):
        return float(np.hypot(self.beta, self.gamma))

    @property
    def scale(self):
        return float(max(np.linalg.norm(self.e), np.linalg.norm(self.f1), np.linalg.norm(self.f2)))

    def rays(self, theta):
        t = np.asarray(theta, dtype=float)[..., None]
        return self.e + np.cos(t) * self.f1 + np.sin(t) * self.f2

    def lam(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.alpha + self.beta * np.cos(theta) + self.gamma * np.sin(theta)

    def lam_near(self, root, delta, double=False):
        """``lam(root + delta)`` without the cancellation of the direct formula."""
        delta = np.asarray(delta, dtype=float)
        a = self.alpha
        sr = 0.0 if double else self.R * np.sin(root - np.arctan2(self.gamma, self.beta))
        return 2.0 * a * np.sin(delta / 2.0) ** 2 - sr * np.sin(delta)

    def evaluate(self, theta, lam=None):
        """Points, speeds dl/dtheta and lam at the given angles.

        Because every ray is null and ``(f1, f1) = (f2, f2) = -(e, e)``,
        the induced metric on the curve is ``(f1, f1) dtheta^2 / lam^2``,
        so the speed is ``1/|lam|`` up to the frame normalisation.
        ``lam`` may be supplied when it is known more accurately than the
        direct formula (next to a root).  Points where lam vanishes come
        back as NaN rows.
        """
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        cs = np.stack([np.ones_like(theta), np.cos(theta), np.sin(theta)], axis=1)
        v = cs @ self._frame
        if lam is None:
            lam = v[:, 0] + v[:, 5]
        else:
            lam = np.broadcast_to(np.asarray(lam, dtype=float), theta.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            x = v[:, 1:5] / lam[:, None]
            speed = self._fnorm / np.abs(lam)
        return x, speed, lam

    @cached_property
    def _frame(self):
        return np.array([self.e, self.f1, self.f2])

    @cached_property
    def _fnorm(self):
        return float(np.sqrt(abs(inner33(self.f1, self.f1))))

    def speed_by_quotient_rule(self, theta):
        """Speed from differentiating ``mid(v)/lam`` by the quotient rule.

        Used for reported samples; the integrator uses the closed form of
        :meth:`evaluate`, which keeps full accuracy next to a double root
        where the neutral norm of this derivative cancels.
        """
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        c = np.cos(theta)[:, None]
        s = np.sin(theta)[:, None]
        m = mid(self.e) + c * mid(self.f1) + s * mid(self.f2)
        dm = -s * mid(self.f1) + c * mid(self.f2)
        lam = self.alpha + self.beta * c[:, 0] + self.gamma * s[:, 0]
        dlam = -self.beta * s[:, 0] + self.gamma * c[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            dx = (dm * lam[:, None] - m * dlam[:, None]) / (lam * lam)[:, None]
        return np.sqrt(np.abs(norm22(dx)))


def null_chart(W: Subspace33, tol=DEFAULT_TOL) -> NullChart:
    """Chart of the null rays of an indefinite 3-subspace ``W``."""
    if W.dim != 3:
        raise DegenerateConic(f"expected a 3-subspace, got dimension {W.dim}")
    frame = neutral_gram_schmidt(W.basis, tol)
    signs = [s for _, s in frame]
    if abs(sum(signs)) != 1:
        raise DegenerateConic("subspace is definite")
    odd = -sum(signs)   # the sign appearing once
    e = next(v for v, s in frame if s == odd)
    f1, f2 = [v for v, s in frame if s != odd]
    a = e[0] + e[5]
    if abs(a) > tol * np.linalg.norm(e):
        if a < 0:
            e = -e
    else:
        nz = np.flatnonzero(np.abs(e) > tol)
        if nz.size and e[nz[0]] < 0:
            e = -e
    return NullChart(e, f1, f2)


# ---------------------------------------------------------------------------
# Conics and pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConicSample:
    theta: float
    point: np.ndarray
    speed: float
    finite: bool


@dataclass(frozen=True)
class ContainingPlane:
    base: np.ndarray
    span1: np.ndarray
    span2: np.ndarray
    metric_class: MetricClass
    normals: np.ndarray = field(repr=False, default=None)
    offsets: np.ndarray = field(repr=False, default=None)

    def contains(self, x, tol=1e-9):
        x = np.asarray(x, dtype=float)
        r = self.normals @ x - self.offsets
        return bool(np.max(np.abs(r)) <= tol * (1.0 + np.max(np.abs(self.offsets)) + np.linalg.norm(x)))


class Conic:
    """A conic given by its associated 3-subspace ``V``."""

    def __init__(self, V: Subspace33, complement: Subspace33 | None = None):
        if V.dim != 3:
            raise DegenerateConic(f"associated subspace must be 3-dimensional, got {V.dim}")
        self.V = V
        if complement is not None:
            self.__dict__["W"] = complement

    @cached_property
    def W(self) -> Subspace33:
        return orthogonal_complement(self.V)

    @cached_property
    def chart(self) -> NullChart:
        return null_chart(self.W, self.V.tol)

    def signature(self) -> Signature:
        return signature(self.V)

    def is_nondegenerate(self) -> bool:
        return self.signature().cls is MetricClass.INDEFINITE

    def __repr__(self):
        return f"Conic(V={self.V.basis.tolist()!r})"


class ConicPair:
    """Two conics whose associated subspaces are complementary and orthogonal.

    Side ``S`` has associated subspace ``V``; side ``Sperp`` has ``Vp``.
    """

    def __init__(self, V, Vp, tol=DEFAULT_TOL, check=True):
        V = V if isinstance(V, Subspace33) else Subspace33(V, tol)
        Vp = Vp if isinstance(Vp, Subspace33) else Subspace33(Vp, tol)
        self.V = V
        self.Vp = Vp
        if check:
            self.check()

    def check(self, tol=None):
        tol = self.V.tol if tol is None else tol
        if self.V.dim != 3 or self.Vp.dim != 3:
            raise DegenerateConic("both associated subspaces must be 3-dimensional")
        Q, Qp = orthonormal_rows(self.V.basis), orthonormal_rows(self.Vp.basis)
        if np.max(np.abs(Q @ J33 @ Qp.T)) > tol:
            raise DegenerateConic("associated subspaces are not orthogonal")
        if rank(np.vstack([Q, Qp]), tol) < 6:
            raise DegenerateConic("associated subspaces are not complementary")
        for W in (self.V, self.Vp):
            if signature(W).cls is not MetricClass.INDEFINITE:
                raise DegenerateConic("associated subspace is not indefinite")
        return self

    @property
    def S(self) -> Conic:
        return Conic(self.V, complement=self.Vp)

    @property
    def Sperp(self) -> Conic:
        return Conic(self.Vp, complement=self.V)

    def side(self, which: str) -> Conic:
        if which in ("S", "s"):
            return self.S
        if which in ("Sperp", "sperp", "S_perp"):
            return self.Sperp
        raise ValueError(f"unknown side {which!r}")

    def swapped(self) -> "ConicPair":
        return ConicPair(self.Vp, self.V, self.V.tol, check=False)

    def to_dict(self):
        return {"V": self.V.basis.tolist(), "Vp": self.Vp.basis.tolist()}

    @classmethod
    def from_dict(cls, d, tol=DEFAULT_TOL):
        V = np.asarray(d["V"], dtype=float)
        Vp = np.asarray(d["Vp"], dtype=float)
        if V.shape != (3, 6) or Vp.shape != (3, 6):
            raise ValueError("pair file needs V and Vp as 3 rows of 6 numbers")
        return cls(V, Vp, tol)

    def __repr__(self):
        return f"ConicPair(V={self.V.basis.tolist()!r}, Vp={self.Vp.basis.tolist()!r})"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

V0_BASIS = np.array([[1.0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]])
V0PERP_BASIS = np.array([[0.0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])

# parabola pair: S = {((1-w^2)/2, 0, (1-w^2)/2, w)}, Sperp = {(1-v^2/2, v, -v^2/2, 0)}
PARABOLA_V_BASIS = np.array([[0.0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 1]])

# S is the x1-axis (x2 = x3 = x4 = 0); Sperp is empty
LINE_V_BASIS = np.array([[0.0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]])


def standard_pair(tol=DEFAULT_TOL) -> ConicPair:
    return ConicPair(V0_BASIS, V0PERP_BASIS, tol)


def pair_from_basis(V_basis, tol=DEFAULT_TOL) -> ConicPair:
    return pair_from_conic(Conic(Subspace33(V_basis, tol)))


def parabola_pair(tol=DEFAULT_TOL) -> ConicPair:
    return pair_from_basis(PARABOLA_V_BASIS, tol)


def line_pair(tol=DEFAULT_TOL) -> ConicPair:
    return pair_from_basis(LINE_V_BASIS, tol)


def conic_from_hyperspheres(s1, s2, s3, tol=DEFAULT_TOL) -> Conic:
    B = np.array([s1, s2, s3], dtype=float)
    try:
        V = Subspace33(B, tol)
    except DependentBasis as exc:
        raise DependentSpheres("hypersphere coordinates are linearly dependent") from exc
    if signature(V).cls is not MetricClass.INDEFINITE:
        raise DegenerateConic("associated subspace is not indefinite")
    return Conic(V)


def conic_from_three_cones(a, b, c, tol=DEFAULT_TOL) -> Conic:
    """Conic cut out by the isotropic cones at three points."""
    pts = [np.asarray(p, dtype=float) for p in (a, b, c)]
    for i in range(3):
        for j in range(i + 1, 3):
            d = float(norm22(pts[i] - pts[j]))
            if abs(d) <= tol * (1.0 + np.dot(pts[i], pts[i]) + np.dot(pts[j], pts[j])):
                raise NullSeparatedCenters(f"centers {i} and {j} are null-separated")
    B = phi(np.array(pts))
    V = Subspace33(B, tol)
    return Conic(V)


def three_cone_gram_check(a, b, c):
    """Gram matrix of the cone coordinates and its determinant versus 2 (s,s')(s',s'')(s,s'')."""
    B = phi(np.array([a, b, c], dtype=float))
    G = gram33(B)
    return G, float(np.linalg.det(G)), 2.0 * G[0, 1] * G[1, 2] * G[0, 2]


def pair_from_conic(S: Conic) -> ConicPair:
    if not S.is_nondegenerate():
        raise DegenerateConic("conic is degenerate")
    Vp = S.W
    if signature(Vp).cls is not MetricClass.INDEFINITE:
        raise DegenerateComplement("complement of an indefinite subspace must be indefinite")
    return ConicPair(S.V, Vp, S.V.tol)


def apply_map(L: ConformalMap, pair: ConicPair) -> ConicPair:
    """Image of a pair under a conformal map; bases are re-orthonormalised."""
    tol = pair.V.tol
    V = Subspace33(orthonormal_rows(pair.V.basis @ L.m.T, tol), tol)
    Vp = Subspace33(orthonormal_rows(pair.Vp.basis @ L.m.T, tol), tol)
    return ConicPair(V, Vp, tol, check=False)


def respan_pair(pair: ConicPair, A, Ap) -> ConicPair:
    return ConicPair(pair.V.respanned(A), pair.Vp.respanned(Ap), pair.V.tol, check=False)


# ---------------------------------------------------------------------------
# Parametrisation
# ---------------------------------------------------------------------------

def parametrize(S: Conic, thetas, tol=1e-12) -> list:
    ch = S.chart
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    X, _, lam = ch.evaluate(thetas)
    speed = ch.speed_by_quotient_rule(thetas)
    lam_tol = tol * (abs(ch.alpha) + ch.R + ch.scale)
    out = []
    for t, x, sp, l in zip(thetas, X, speed, lam):
        finite = bool(abs(l) > lam_tol and np.all(np.isfinite(x)))
        if finite:
            out.append(ConicSample(float(t), x, float(sp), True))
        else:
            out.append(ConicSample(float(t), np.full(4, np.nan), float("nan"), False))
    return out


def finite_points(S: Conic, thetas, tol=1e-12):
    """Finite points of ``S`` at the given angles, as an (n, 4) array."""
    pts = [s.point for s in parametrize(S, thetas, tol) if s.finite]
    return np.array(pts).reshape(len(pts), 4)


@dataclass
class LambdaClass:
    roots: object          # 0, 1, 2 or "all"
    class_hint: str        # "bounded", "hyperbola", "parabola_or_line", "empty"
    alpha: float
    beta: float
    gamma: float
    root_thetas: tuple


def lambda_roots(ch: NullChart, rel_tol=1e-8, zero_tol=1e-9) -> LambdaClass:
    a, b, g = ch.alpha, ch.beta, ch.gamma
    R = ch.R
    if max(abs(a), R) <= zero_tol * ch.scale:
        return LambdaClass("all", "empty", a, b, g, ())
    theta0 = float(np.arctan2(g, b))
    if abs(abs(a) - R) <= rel_tol * (abs(a) + R) and R > zero_tol * ch.scale:
        # double root: cos(t - t0) = -sign(a)
        root = theta0 + (np.pi if a > 0 else 0.0)
        return LambdaClass(1, "parabola_or_line", a, b, g, (float(np.mod(root, 2 * np.pi)),))
    if abs(a) > R:
        return LambdaClass(0, "bounded", a, b, g, ())
    d = float(np.arccos(np.clip(-a / R, -1.0, 1.0)))
    roots = sorted(float(np.mod(theta0 + s * d, 2 * np.pi)) for s in (-1, 1))
    return LambdaClass(2, "hyperbola", a, b, g, tuple(roots))


def classify_by_lambda(S: Conic, rel_tol=1e-8) -> LambdaClass:
    return lambda_roots(S.chart, rel_tol)


# ---------------------------------------------------------------------------
# Classification through the containing planes
# ---------------------------------------------------------------------------

@dataclass
class PairClassification:
    cls: PairClass
    line_side: str | None
    dim_S: int
    dim_Sperp: int
    sig_S: Signature | None
    sig_Sperp: Signature | None


def _plane_part(V: Subspace33) -> Subspace33:
    return intersection(V, p_subspace(V.tol))


def classify_pair(pair: ConicPair) -> PairClassification:
    I = _plane_part(pair.V)
    Ip = _plane_part(pair.Vp)
    tol = pair.V.tol
    in_V = pair.V.contains_vector(P_PERP, tol)
    in_Vp = pair.Vp.contains_vector(P_PERP, tol)
    if (I.dim == 3 and Ip.dim == 3) or (I.dim == 3 and in_V) or (Ip.dim == 3 and in_Vp):
        raise NotAConic("both subspaces lie in P and contain its radical")
    if I.dim == 3:
        return PairClassification(PairClass.LINE_EMPTY, "S", 3, Ip.dim, None, None)
    if Ip.dim == 3:
        return PairClassification(PairClass.LINE_EMPTY, "Sperp", I.dim, 3, None, None)
    sig, sigp = signature(I), signature(Ip)
    if sig.cls is not sigp.cls or sig.sgn + sigp.sgn != 0:
        raise DegenerateConic(f"plane parts disagree: {sig} vs {sigp}")
    return PairClassification(_CLASS_OF_PLANE[sig.cls], None, I.dim, Ip.dim, sig, sigp)


def _hyperplanes_of(I: Subspace33):
    """Normals (as Euclidean rows) and offsets of the hyperplanes spanning ``I``."""
    rows = orthonormal_rows(I.basis, I.tol)
    a = mid(rows)
    b = (rows[:, 5] - rows[:, 0]) / 2.0
    return a @ G22, b


def containing_plane(S: Conic) -> ContainingPlane | None:
    """The affine 2-plane holding ``S``.

    ``None`` unless ``V ∩ P`` is 2-dimensional and free of the radical of
    ``P`` (which would make one of its "hyperplanes" the empty one, as on
    the empty side of a line pair).
    """
    I = _plane_part(S.V)
    if I.dim != 2 or I.contains_vector(P_PERP):
        return None
    N, b = _hyperplanes_of(I)
    base, *_ = np.linalg.lstsq(N, b, rcond=None)
    _, _, vt = np.linalg.svd(N)
    span1, span2 = vt[2], vt[3]
    Gm = np.array([[inner22(span1, span1), inner22(span1, span2)],
                   [inner22(span2, span1), inner22(span2, span2)]])
    w, _ = jacobi_eigh(Gm)
    thresh = S.V.tol * max(1.0, float(np.max(np.abs(w))))
    pos, neg = int(np.sum(w > thresh)), int(np.sum(w < -thresh))
    cls = Signature(pos, neg, 2 - pos - neg).cls
    return ContainingPlane(base, span1, span2, cls, N, b)


@dataclass
class Case2Data:
    cls: PairClass
    plane: ContainingPlane
    plane_perp: ContainingPlane
    center: np.ndarray | None = None          # circles / hyperbolae
    radius_sq: float | None = None            # sphere through S
    radius_sq_perp: float | None = None       # sphere through Sperp
    p: np.ndarray | None = None               # parabolae: Sperp = plane_perp ∩ C_p, p in plane
    p_tilde: np.ndarray | None = None         # parabolae: S = plane ∩ C_p_tilde, p_tilde in plane_perp


def _orth_within(V: Subspace33, I: Subspace33):
    """Vector of ``V`` neutral-orthogonal to all of ``I`` (one-dimensional here)."""
    Q = orthonormal_rows(V.basis, V.tol)
    c = null_space(orthonormal_rows(I.basis, I.tol) @ J33 @ Q.T, V.tol)
    if c.shape[0] != 1:
        raise DegenerateConic("plane part is degenerate")
    return c[0] @ Q


def _cone_in(V: Subspace33, I: Subspace33):
    """Null ``s''`` of ``V`` outside ``P`` that pairs to zero with the non-null part of ``I``."""
    Qi = orthonormal_rows(I.basis, I.tol)
    w, vec = jacobi_eigh(gram33(Qi))
    k = int(np.argmin(np.abs(w)))
    s = vec[:, k] @ Qi          # null direction of the plane part
    sp = vec[:, 1 - k] @ Qi     # Euclidean-orthogonal partner, non-null
    Q = orthonormal_rows(V.basis, V.tol)
    resid = Q - (Q @ Qi.T) @ Qi
    t = resid[int(np.argmax(np.linalg.norm(resid, axis=1)))]
    t = t - inner33(t, sp) / inner33(sp, sp) * sp
    ts = inner33(t, s)
    if abs(ts) <= V.tol * np.linalg.norm(t) * np.linalg.norm(s):
        raise DegenerateConic("associated subspace is degenerate")
    return t - inner33(t, t) / (2.0 * ts) * s


def extract_case2_data(pair: ConicPair) -> Case2Data:
    cl = classify_pair(pair)
    if cl.cls is PairClass.LINE_EMPTY:
        raise WrongCase("line-empty pairs have no containing-plane data")
    I, Ip = _plane_part(pair.V), _plane_part(pair.Vp)
    plane, plane_p = containing_plane(pair.S), containing_plane(pair.Sperp)
    if cl.cls in (PairClass.CIRCLES, PairClass.HYPERBOLAE):
        N = np.vstack([plane.normals, plane_p.normals])
        b = np.concatenate([plane.offsets, plane_p.offsets])
        center = np.linalg.solve(N, b)
        s2 = _orth_within(pair.V, I)
        s2p = _orth_within(pair.Vp, Ip)
        rho = float(inner33(s2, s2) / (s2[0] + s2[5]) ** 2)
        rhop = float(inner33(s2p, s2p) / (s2p[0] + s2p[5]) ** 2)
        return Case2Data(cl.cls, plane, plane_p, center=center, radius_sq=rho, radius_sq_perp=rhop)
    cone = _cone_in(pair.V, I)
    cone_p = _cone_in(pair.Vp, Ip)
    p_tilde = mid(cone) / (cone[0] + cone[5])
    p = mid(cone_p) / (cone_p[0] + cone_p[5])
    return Case2Data(cl.cls, plane, plane_p, p=p, p_tilde=p_tilde)


def planes_intersect(a: ContainingPlane, b: ContainingPlane, tol=1e-9) -> bool:
    N = np.vstack([a.normals, b.normals])
    rhs = np.concatenate([a.offsets, b.offsets])
    x, *_ = np.linalg.lstsq(N, rhs, rcond=None)
    return bool(np.max(np.abs(N @ x - rhs)) <= tol * (1.0 + np.max(np.abs(rhs))))
