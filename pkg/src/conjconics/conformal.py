"""Conformal maps of R^{2,2} as linear maps of R^{3,3}.

A map ``L`` with ``L^T J L = sign * J`` sends the cone coordinates of a
point to (a multiple of) the cone coordinates of its image, and acts on
the DPC of every hypersphere the same way.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .dpc import phi
from .errors import InvalidGenerator, NearInfinity, Singular
from .neutral import G22, J33, mid, norm22

# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Translation:
    v: tuple

    def act(self, x):
        return np.asarray(x, dtype=float) + np.asarray(self.v, dtype=float)


@dataclass(frozen=True)
class Dilation:
    factor: float

    def act(self, x):
        return self.factor * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class Inversion:
    def act(self, x):
        x = np.asarray(x, dtype=float)
        n = norm22(x)
        if abs(n) <= 1e-300:
            return None
        return x / n


@dataclass(frozen=True, eq=False)
class LinearIsometry:
    """``x -> M x`` with ``M^T g M = +g`` (isometry) or ``-g`` (anti-isometry)."""

    M: np.ndarray = field(default_factory=lambda: np.eye(4))

    def act(self, x):
        return np.asarray(self.M, dtype=float) @ np.asarray(x, dtype=float)

    def form_sign(self, tol=1e-10):
        M = np.asarray(self.M, dtype=float)
        if M.shape != (4, 4):
            raise InvalidGenerator("isometry matrix must be 4x4")
        P = M.T @ G22 @ M
        for sgn in (1, -1):
            if np.max(np.abs(P - sgn * G22)) <= tol * max(1.0, float(np.max(np.abs(M))) ** 2):
                return sgn
        raise InvalidGenerator("matrix does not preserve the neutral form up to sign")


def plane_rotation(i, j, angle):
    """Rotation (same-sign axes) or boost (mixed-sign axes) in the (i, j) coordinate plane."""
    M = np.eye(4)
    same = (i < 2) == (j < 2)
    if same:
        c, s = np.cos(angle), np.sin(angle)
        M[i, i], M[i, j], M[j, i], M[j, j] = c, -s, s, c
    else:
        c, s = np.cosh(angle), np.sinh(angle)
        M[i, i], M[i, j], M[j, i], M[j, j] = c, s, s, c
    return M


SWAP = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)


# ---------------------------------------------------------------------------
# Maps of R^{3,3}
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConformalMap:
    m: np.ndarray
    sign: int = 1

    def defect(self):
        return float(np.max(np.abs(self.m.T @ J33 @ self.m - self.sign * J33)))

    def validate(self, tol=1e-10):
        scale = max(1.0, float(np.max(np.abs(self.m)))) ** 2
        if self.sign not in (1, -1) or self.defect() > tol * scale:
            raise InvalidGenerator(f"L^T J L deviates from {self.sign} J by {self.defect():.3e}")
        return self

    def __matmul__(self, other):
        return compose(self, other)

    def apply(self, s):
        """Action on DPC vectors (rows of an (n, 6) stack or a single vector)."""
        s = np.asarray(s, dtype=float)
        return s @ self.m.T

    def to_dict(self):
        return {"lambda_matrix": self.m.tolist(), "sign": int(self.sign)}

    @classmethod
    def from_dict(cls, d):
        return from_matrix(d["lambda_matrix"])


IDENTITY = ConformalMap(np.eye(6), 1)


def from_matrix(m, tol=1e-10) -> ConformalMap:
    """Wrap a 6x6 matrix with ``m^T J m = mu J``, rescaling so ``|mu| = 1``."""
    m = np.asarray(m, dtype=float)
    if m.shape != (6, 6):
        raise InvalidGenerator("conformal matrix must be 6x6")
    P = m.T @ J33 @ m
    mu = float(np.trace(P @ J33) / 6.0)
    if mu == 0.0:
        raise Singular("matrix does not preserve the null cone")
    out = ConformalMap(m / np.sqrt(abs(mu)), 1 if mu > 0 else -1)
    return out.validate(tol)


def lift(g) -> ConformalMap:
    if isinstance(g, Translation):
        v = np.asarray(g.v, dtype=float)
        if v.shape != (4,):
            raise InvalidGenerator("translation vector must have 4 components")
        gv = G22 @ v   # <s, v> = s . (g v)
        vv = float(norm22(v))
        m = np.eye(6)
        # s0' = s0 - <s,v> - |v|^2/2 (s0 + s5)
        m[0, 1:5] = -gv
        m[0, 0] -= vv / 2
        m[0, 5] -= vv / 2
        # mid' = mid + (s0 + s5) v
        m[1:5, 0] = v
        m[1:5, 5] = v
        # s5' = s5 + <s,v> + |v|^2/2 (s0 + s5)
        m[5, 1:5] = gv
        m[5, 0] += vv / 2
        m[5, 5] += vv / 2
        return ConformalMap(m, 1)
    if isinstance(g, Dilation):
        lam = float(g.factor)
        if not lam > 0:
            raise InvalidGenerator("dilation factor must be positive")
        m = np.eye(6)
        m[0, 0] = m[5, 5] = (1 + lam * lam) / (2 * lam)
        m[0, 5] = m[5, 0] = (1 - lam * lam) / (2 * lam)
        return ConformalMap(m, 1)
    if isinstance(g, Inversion):
        return ConformalMap(np.diag([-1.0, 1, 1, 1, 1, 1]), 1)
    if isinstance(g, LinearIsometry):
        sgn = g.form_sign()
        M = np.asarray(g.M, dtype=float)
        m = np.zeros((6, 6))
        m[1:5, 1:5] = M
        if sgn == 1:
            m[0, 0] = m[5, 5] = 1.0
        else:
            # ||Mx||^2 = -||x||^2 exchanges the roles of s0 and s5
            m[0, 5] = m[5, 0] = 1.0
        return ConformalMap(m, sgn)
    raise InvalidGenerator(f"unknown generator {g!r}")


def compose(a: ConformalMap, b: ConformalMap) -> ConformalMap:
    """``a`` after ``b``."""
    return ConformalMap(a.m @ b.m, a.sign * b.sign)


def inverse(a: ConformalMap) -> ConformalMap:
    # L^T J L = s J  =>  L^{-1} = s J L^T J
    inv = a.sign * (J33 @ a.m.T @ J33)
    if not np.all(np.isfinite(inv)):
        raise Singular("non-finite inverse")
    return ConformalMap(inv, a.sign)


def apply_point(L: ConformalMap, x, tol=1e-12):
    """Image of a point, or ``None`` when it is sent to infinity."""
    t = L.apply(phi(x))
    w = t[0] + t[5]
    if abs(w) <= tol * np.linalg.norm(t):
        return None
    return mid(t) / w


def apply_points(L: ConformalMap, X, tol=1e-12):
    """Vectorised :func:`apply_point`; rows sent to infinity come back as NaN."""
    T = L.apply(phi(np.atleast_2d(X)))
    w = T[:, 0] + T[:, 5]
    bad = np.abs(w) <= tol * np.linalg.norm(T, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = T[:, 1:5] / w[:, None]
    out[bad] = np.nan
    return out


# ---------------------------------------------------------------------------
# Random maps
# ---------------------------------------------------------------------------

_BOOST_PLANES = [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)]


def random_isometry(gen: np.random.Generator) -> np.ndarray:
    M = np.eye(4)
    for i, j in _BOOST_PLANES:
        M = plane_rotation(i, j, gen.uniform(-1.0, 1.0)) @ M
    return M


def random_generator(gen: np.random.Generator):
    u = gen.random()
    if u < 0.25:
        return Inversion()
    if u < 0.5:
        return Translation(tuple(gen.uniform(-1.0, 1.0, size=4)))
    if u < 0.75:
        return Dilation(float(np.exp(gen.uniform(np.log(0.5), np.log(2.0)))))
    return LinearIsometry(random_isometry(gen))


def random_generators(seed: int, n: int, *path: int) -> list:
    return [random_generator(rng.stream(seed, *path, i)) for i in range(n)]


def random_map(seed: int, n: int, *path: int) -> ConformalMap:
    """Product of ``n`` random generators; draw ``i`` uses stream ``(seed, *path, i)``."""
    L = IDENTITY
    for g in random_generators(seed, n, *path):
        L = compose(lift(g), L)
    return L


def from_generators(gens) -> ConformalMap:
    """Map obtained by applying ``gens`` in order (first element acts first)."""
    L = IDENTITY
    for g in gens:
        L = compose(lift(g), L)
    return L


# ---------------------------------------------------------------------------
# Conformality by finite differences
# ---------------------------------------------------------------------------


@dataclass
class ConformalityReport:
    lam: float
    max_residual: float
    jacobian: np.ndarray


def pointwise_conformality_check(L: ConformalMap, x, h=1e-4) -> ConformalityReport:
    """Central-difference Jacobian of the induced point map and its deviation from a scaled isometry."""
    x = np.asarray(x, dtype=float)
    D = np.empty((4, 4))
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        fp = apply_point(L, x + e)
        fm = apply_point(L, x - e)
        if fp is None or fm is None:
            raise NearInfinity(f"stencil point along axis {i} is mapped to infinity")
        D[:, i] = (fp - fm) / (2 * h)
    pulled = D.T @ G22 @ D
    lam = float(pulled[0, 0])
    resid = 0.0
    for i in range(4):
        for j in range(i, 4):
            resid = max(resid, abs(pulled[i, j] - lam * G22[i, j]))
    return ConformalityReport(lam, resid, D)


# ---------------------------------------------------------------------------
# JSON generator scripts
# ---------------------------------------------------------------------------

def generator_to_dict(g) -> dict:
    if isinstance(g, Translation):
        return {"type": "translation", "v": [float(c) for c in g.v]}
    if isinstance(g, Dilation):
        return {"type": "dilation", "factor": float(g.factor)}
    if isinstance(g, Inversion):
        return {"type": "inversion"}
    if isinstance(g, LinearIsometry):
        return {"type": "isometry", "M": np.asarray(g.M, dtype=float).tolist()}
    raise InvalidGenerator(f"unknown generator {g!r}")


def generator_from_dict(d: dict):
    kind = d.get("type")
    if kind == "translation":
        return Translation(tuple(float(c) for c in d["v"]))
    if kind == "dilation":
        return Dilation(float(d["factor"]))
    if kind == "inversion":
        return Inversion()
    if kind == "isometry":
        return LinearIsometry(np.asarray(d["M"], dtype=float))
    raise InvalidGenerator(f"unknown generator type {kind!r}")


def script_to_json(gens) -> str:
    return json.dumps([generator_to_dict(g) for g in gens])


def script_from_json(text: str) -> list:
    data = json.loads(text)
    if not isinstance(data, list):
        raise InvalidGenerator("generator script must be a JSON array")
    return [generator_from_dict(d) for d in data]


def map_to_json(L: ConformalMap) -> str:
    return json.dumps(L.to_dict())


def map_from_json(text: str) -> ConformalMap:
    return ConformalMap.from_dict(json.loads(text))

