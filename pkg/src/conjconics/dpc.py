"""Hyperspheres of R^{2,2} and their diagonal polyspherical coordinates.

A hypersphere is the zero set of

    (s0 + s5) ||x||^2 - 2 <s, x> + (s5 - s0) = 0

for a nonzero 6-vector ``(s0, s, s5)`` taken up to scale.  The vector is
its DPC; the neutral (3,3) norm of a DPC normalised to ``s0 + s5 = 1`` is
the radius-square.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .errors import EmptyHypersphere, ZeroVector
from .neutral import DEFAULT_TOL, inner22, inner33, mid, norm22


class Kind(enum.Enum):
    PROPER = "proper"
    PLANE = "plane"
    EMPTY = "empty"


@dataclass(frozen=True, eq=False)
class Hypersphere:
    """Proper sphere ``||x - center||^2 = radius_sq``, hyperplane ``<normal, x> = offset``, or empty.

    ``radius_sq == 0`` is the isotropic cone at ``center``.
    """

    kind: Kind
    center: np.ndarray | None = None
    radius_sq: float | None = None
    normal: np.ndarray | None = None
    offset: float | None = None

    @classmethod
    def proper(cls, center, radius_sq):
        return cls(Kind.PROPER, center=np.asarray(center, dtype=float), radius_sq=float(radius_sq))

    @classmethod
    def cone(cls, center):
        return cls.proper(center, 0.0)

    @classmethod
    def plane(cls, normal, offset, tol=DEFAULT_TOL):
        normal = np.asarray(normal, dtype=float)
        if np.linalg.norm(normal) <= tol * max(1.0, abs(offset)):
            raise ZeroVector("hyperplane normal must be nonzero")
        return cls(Kind.PLANE, normal=normal, offset=float(offset))

    @classmethod
    def empty(cls):
        return cls(Kind.EMPTY)

    def contains(self, x, tol=DEFAULT_TOL):
        x = np.asarray(x, dtype=float)
        if self.kind is Kind.PROPER:
            d = norm22(x - self.center)
            return bool(abs(d - self.radius_sq) <= tol * (1.0 + abs(self.radius_sq) + float(np.dot(x - self.center, x - self.center))))
        if self.kind is Kind.PLANE:
            v = inner22(self.normal, x)
            return bool(abs(v - self.offset) <= tol * (1.0 + abs(self.offset) + np.linalg.norm(self.normal) * np.linalg.norm(x)))
        return False

    def canonical(self):
        """Hyperplanes rescaled so their DPC has unit length and a positive leading entry."""
        if self.kind is not Kind.PLANE:
            return self
        s = dpc_from_hypersphere(self)
        s = normalize_dpc(s)
        return Hypersphere(Kind.PLANE, normal=mid(s).copy(), offset=float(s[5]))

    def to_dict(self):
        d = {"kind": self.kind.value}
        if self.kind is Kind.PROPER:
            d["center"] = [float(c) for c in self.center]
            d["radius_sq"] = float(self.radius_sq)
        elif self.kind is Kind.PLANE:
            d["normal"] = [float(c) for c in self.normal]
            d["offset"] = float(self.offset)
        if self.kind is not Kind.EMPTY:
            d["dpc"] = [float(c) for c in dpc_from_hypersphere(self)]
        return d

    @classmethod
    def from_dict(cls, d):
        kind = Kind(d["kind"])
        if kind is Kind.PROPER:
            return cls.proper(d["center"], d["radius_sq"])
        if kind is Kind.PLANE:
            return cls.plane(d["normal"], d["offset"])
        return cls.empty()


def same_hypersphere(H: Hypersphere, K: Hypersphere, tol=1e-10) -> bool:
    """Equality of hyperspheres; hyperplanes compare up to scale."""
    if H.kind is not K.kind:
        return False
    if H.kind is Kind.PROPER:
        scale = 1.0 + np.linalg.norm(H.center)
        return bool(np.linalg.norm(H.center - K.center) <= tol * scale
                    and abs(H.radius_sq - K.radius_sq) <= tol * (1.0 + abs(H.radius_sq) + scale ** 2))
    if H.kind is Kind.PLANE:
        a = normalize_dpc(dpc_from_hypersphere(H))
        b = normalize_dpc(dpc_from_hypersphere(K))
        return bool(np.linalg.norm(a - b) <= tol)
    return True


# ---------------------------------------------------------------------------
# DPC <-> hypersphere
# ---------------------------------------------------------------------------

def dpc_from_hypersphere(H: Hypersphere) -> np.ndarray:
    if H.kind is Kind.PROPER:
        p = H.center
        pp = float(norm22(p))
        rho = H.radius_sq
        return np.concatenate([[(1.0 - pp + rho) / 2.0], p, [(1.0 + pp - rho) / 2.0]])
    if H.kind is Kind.PLANE:
        b = H.offset
        return np.concatenate([[-b], H.normal, [b]])
    raise EmptyHypersphere("the empty hypersphere has no constructor DPC")


def phi(p) -> np.ndarray:
    """DPC of the isotropic cone at ``p``; a null vector with s0 + s5 = 1.

    Works row-wise on an (n, 4) stack of points.
    """
    p = np.asarray(p, dtype=float)
    pp = norm22(p)[..., None]
    return np.concatenate([(1.0 - pp) / 2.0, p, (1.0 + pp) / 2.0], axis=-1)


def classify_dpc(s, tol=DEFAULT_TOL) -> Kind:
    s = np.asarray(s, dtype=float)
    n = np.linalg.norm(s)
    if n == 0.0:
        raise ZeroVector("DPC must be nonzero")
    if abs(s[0] + s[5]) > tol * n:
        return Kind.PROPER
    if np.linalg.norm(s[1:5]) > tol * n:
        return Kind.PLANE
    return Kind.EMPTY


def normalize_dpc(s, tol=DEFAULT_TOL) -> np.ndarray:
    """Projective representative: s0 + s5 = 1 when possible, else unit length with first nonzero entry positive."""
    s = np.asarray(s, dtype=float)
    n = np.linalg.norm(s)
    if n == 0.0:
        raise ZeroVector("DPC must be nonzero")
    if abs(s[0] + s[5]) > tol * n:
        return s / (s[0] + s[5])
    u = s / n
    nz = np.flatnonzero(np.abs(u) > tol)
    if nz.size and u[nz[0]] < 0:
        u = -u
    return u


def hypersphere_from_dpc(s, tol=DEFAULT_TOL) -> Hypersphere:
    kind = classify_dpc(s, tol)
    t = normalize_dpc(s, tol)
    if kind is Kind.PROPER:
        return Hypersphere.proper(mid(t).copy(), float(inner33(t, t)))
    if kind is Kind.PLANE:
        return Hypersphere(Kind.PLANE, normal=mid(t).copy(), offset=float(t[5]))
    return Hypersphere.empty()


def in_q1(s, tol=1e-12) -> bool:
    """Null and on the slice s0 + s5 = 1."""
    s = np.asarray(s, dtype=float)
    scale = max(1.0, float(np.dot(s, s)))
    return bool(abs(inner33(s, s)) <= tol * scale and abs(s[0] + s[5] - 1.0) <= tol * max(1.0, np.linalg.norm(s)))


def point_on(s_H, x, tol=DEFAULT_TOL) -> bool:
    """Whether ``x`` lies on the hypersphere with DPC ``s_H``."""
    s_H = np.asarray(s_H, dtype=float)
    if not np.any(s_H):
        raise ZeroVector("DPC must be nonzero")
    sx = phi(x)
    scale = np.linalg.norm(sx) * np.linalg.norm(s_H)
    return bool(abs(inner33(sx, s_H)) <= tol * scale)


def separation(a, b):
    """Neutral squared distance ||a - b||^2."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return norm22(a - b)


def complementary_hyperplane_points(s, samples, tol=DEFAULT_TOL):
    """Membership of each sample, decided without going through :func:`phi`.

    For a sample ``x`` the slice ``x0 + x5 = 1`` and the polar hyperplane
    ``s0 x0 + <s, x> - s5 x5 = 0`` fix ``(x0, x5)``; the sample is on the
    hypersphere when the resulting 6-vector is null.  When the 2x2 system
    is singular (a hyperplane) it must be consistent instead, and the
    null condition can always be met.
    """
    s = np.asarray(s, dtype=float)
    s0, s5 = s[0], s[5]
    ms = s[1:5]
    out = []
    snorm = np.linalg.norm(s)
    for x in np.atleast_2d(np.asarray(samples, dtype=float)):
        c = inner22(ms, x)
        det = s0 + s5
        xscale = 1.0 + float(np.dot(x, x))
        if abs(det) > tol * snorm:
            # s0 x0 - s5 x5 = -c,  x0 + x5 = 1
            x0 = (-c + s5) / det
            x5 = 1.0 - x0
            null = x0 * x0 + norm22(x) - x5 * x5
            # null * det equals -2 (phi(x), s), so this matches point_on's scale
            out.append(bool(abs(null) * abs(det) <= tol * snorm * xscale))
        else:
            # s0 (x0 + x5) + c = 0 on the slice
            out.append(bool(abs(s0 + c) <= 0.5 * tol * snorm * xscale))
    return out


@dataclass
class OrthogonalityVerdict:
    by_dpc: bool
    by_geometry: bool
    clause: str


def orthogonality_oracle(H: Hypersphere, K: Hypersphere, tol=DEFAULT_TOL) -> OrthogonalityVerdict:
    """Orthogonality read two ways: from the DPC pairing and from the geometric clauses."""
    if H.kind is Kind.EMPTY or K.kind is Kind.EMPTY:
        raise EmptyHypersphere("orthogonality is undefined for the empty hypersphere")
    sh = dpc_from_hypersphere(H)
    sk = dpc_from_hypersphere(K)
    if H.kind is Kind.PLANE:
        sh = normalize_dpc(sh)
    if K.kind is Kind.PLANE:
        sk = normalize_dpc(sk)
    by_dpc = abs(float(inner33(sh, sk))) <= tol * np.linalg.norm(sh) * np.linalg.norm(sk)

    if H.kind is Kind.PLANE and K.kind is Kind.PROPER:
        H, K = K, H
    if H.kind is Kind.PROPER and K.kind is Kind.PROPER:
        d = float(norm22(H.center - K.center))
        rhs = H.radius_sq + K.radius_sq
        cones = (H.radius_sq == 0.0) + (K.radius_sq == 0.0)
        clause = {0: "i", 1: "ii", 2: "iii"}[cones]
        scale = 1.0 + abs(d) + abs(H.radius_sq) + abs(K.radius_sq) + float(np.dot(H.center - K.center, H.center - K.center))
        by_geo = abs(d - rhs) <= tol * scale
    elif H.kind is Kind.PLANE and K.kind is Kind.PLANE:
        clause = "iv"
        v = float(inner22(H.normal, K.normal))
        by_geo = abs(v) <= tol * np.linalg.norm(H.normal) * np.linalg.norm(K.normal)
    else:
        clause = "v"
        a, b = K.normal, K.offset
        v = float(inner22(a, H.center)) - b
        by_geo = abs(v) <= tol * (np.linalg.norm(a) * (1.0 + np.linalg.norm(H.center)) + abs(b))
    return OrthogonalityVerdict(bool(by_dpc), bool(by_geo), clause)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def hypersphere_to_json(H: Hypersphere) -> str:
    return json.dumps(H.to_dict())


def hypersphere_from_json(text: str) -> Hypersphere:
    return Hypersphere.from_dict(json.loads(text))


def dpc_to_json(s) -> str:
    s = np.asarray(s, dtype=float)
    return json.dumps({"kind": classify_dpc(s).value, "dpc": [float(c) for c in s]})


def dpc_from_json(text: str) -> np.ndarray:
    d = json.loads(text)
    s = np.asarray(d["dpc"], dtype=float)
    if s.shape != (6,):
        raise ValueError("dpc must have 6 components")
    return s
