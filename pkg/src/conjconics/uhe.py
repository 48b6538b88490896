"""Exact solutions of the ultrahyperbolic equation u11 + u22 - u33 - u44 = 0.

Three families: plane waves ``F(<k, x>)`` with null ``k``, quadratics
whose matrix is trace-free for the neutral form, and X-ray transforms of
Gaussian mixtures in 3-space read through the John line chart.  All
evaluators take an (n, 4) array of points and return n values.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import ConicsError
from .lines import abcd_array_from_john
from .neutral import G22, inner22, norm22


class InvalidSolution(ConicsError):
    pass


class Decay(enum.Enum):
    COMPACTISH = "compact-ish"
    GAUSSIAN = "gaussian"
    POLYNOMIAL = "polynomial"


# ---------------------------------------------------------------------------
# Profiles for plane waves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gaussian:
    def __call__(self, t):
        return np.exp(-t * t)

    def second(self, t):
        return (4 * t * t - 2) * np.exp(-t * t)

    def to_dict(self):
        return {"gaussian": {}}


@dataclass(frozen=True)
class Cosine:
    omega: float = 1.0

    def __call__(self, t):
        return np.cos(self.omega * t)

    def second(self, t):
        return -self.omega ** 2 * np.cos(self.omega * t)

    def to_dict(self):
        return {"cosine": {"omega": self.omega}}


@dataclass(frozen=True)
class Monomial:
    """``(t + shift) ** degree``."""

    degree: int = 1
    shift: float = 0.0

    def __post_init__(self):
        if not 0 <= self.degree <= 4:
            raise InvalidSolution("monomial profile degree must be between 0 and 4")

    def __call__(self, t):
        return (t + self.shift) ** self.degree

    def second(self, t):
        d = self.degree
        return d * (d - 1) * (t + self.shift) ** max(d - 2, 0) if d >= 2 else np.zeros_like(t)

    def to_dict(self):
        return {"monomial": {"degree": self.degree, "shift": self.shift}}


def profile_from_dict(d):
    if not isinstance(d, dict) or len(d) != 1:
        raise InvalidSolution("profile must be a single-key object")
    (name, args), = d.items()
    args = args or {}
    if name == "gaussian":
        return Gaussian()
    if name == "cosine":
        return Cosine(float(args.get("omega", 1.0)))
    if name == "monomial":
        return Monomial(int(args.get("degree", 1)), float(args.get("shift", 0.0)))
    raise InvalidSolution(f"unknown profile {name!r}")


# ---------------------------------------------------------------------------
# Solutions
# ---------------------------------------------------------------------------

class Solution:
    decay: Decay = Decay.POLYNOMIAL
    name: str = ""

    def __call__(self, X):
        return self.eval(X)

    def eval(self, X):
        raise NotImplementedError

    def __add__(self, other):
        return Sum([self, other])


@dataclass(frozen=True, eq=False)
class PlaneWave(Solution):
    """``profile(<k, x>)`` for a null vector ``k``."""

    k: np.ndarray
    profile: object = field(default_factory=Gaussian)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "k", np.asarray(self.k, dtype=float))
        if self.k.shape != (4,):
            raise InvalidSolution("plane-wave vector must have 4 components")
        if abs(norm22(self.k)) > 1e-12 * float(np.dot(self.k, self.k)):
            raise InvalidSolution("plane-wave vector must be null")

    @classmethod
    def _unchecked(cls, k, profile=None, name=""):
        """Plane wave without the null check; only for negative controls."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "k", np.asarray(k, dtype=float))
        object.__setattr__(obj, "profile", Gaussian() if profile is None else profile)
        object.__setattr__(obj, "name", name)
        return obj

    @property
    def decay(self):
        return Decay.GAUSSIAN if isinstance(self.profile, Gaussian) else Decay.POLYNOMIAL

    def eval(self, X):
        X = np.asarray(X, dtype=float)
        return self.profile(inner22(X, self.k))

    def to_dict(self):
        return {"kind": "plane_wave", "k": self.k.tolist(), "profile": self.profile.to_dict()}


@dataclass(frozen=True, eq=False)
class Quadratic(Solution):
    """``x^T Q x + <linear, x> + const`` with ``Q11 + Q22 - Q33 - Q44 = 0``."""

    Q: np.ndarray
    linear: np.ndarray = field(default_factory=lambda: np.zeros(4))
    const: float = 0.0
    name: str = ""
    decay = Decay.POLYNOMIAL

    def __post_init__(self):
        Q = np.asarray(self.Q, dtype=float)
        object.__setattr__(self, "Q", 0.5 * (Q + Q.T))
        object.__setattr__(self, "linear", np.asarray(self.linear, dtype=float))
        if self.Q.shape != (4, 4) or self.linear.shape != (4,):
            raise InvalidSolution("quadratic needs a 4x4 matrix and a 4-vector")
        if abs(np.trace(G22 @ self.Q)) > 1e-12 * max(1.0, float(np.max(np.abs(self.Q)))):
            raise InvalidSolution("quadratic part is not trace-free for the neutral form")

    def eval(self, X):
        X = np.asarray(X, dtype=float)
        return np.einsum("...i,ij,...j->...", X, self.Q, X) + inner22(X, self.linear) + self.const

    def to_dict(self):
        return {"kind": "quadratic", "Q": self.Q.tolist(), "linear": self.linear.tolist(),
                "const": float(self.const)}


@dataclass(frozen=True)
class GaussianBlob:
    center: tuple
    sigma: float
    weight: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise InvalidSolution("Gaussian width must be positive")
        if len(self.center) != 3:
            raise InvalidSolution("Gaussian centre must be a 3-vector")


def xray_abcd(components, abcd):
    """Integral over ``z`` of the mixture along the lines ``(A z + B, C z + D, z)``."""
    abcd = np.asarray(abcd, dtype=float)
    A, B, C, D = np.moveaxis(abcd, -1, 0)
    a = A * A + C * C + 1.0
    total = np.zeros(np.shape(A))
    for g in components:
        c1, c2, c3 = g.center
        b = A * (B - c1) + C * (D - c2) - c3
        e = (B - c1) ** 2 + (D - c2) ** 2 + c3 * c3
        total = total + g.weight * g.sigma * np.sqrt(np.pi / a) * np.exp(-(e - b * b / a) / g.sigma ** 2)
    return total


@dataclass(frozen=True, eq=False)
class XRayGaussianMix(Solution):
    components: tuple
    name: str = ""
    decay = Decay.COMPACTISH

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise InvalidSolution("mixture needs at least one component")

    def eval(self, X):
        return xray_abcd(self.components, abcd_array_from_john(X))

    def to_dict(self):
        return {"kind": "xray_gaussians",
                "components": [{"c": list(map(float, g.center)), "sigma": float(g.sigma), "w": float(g.weight)}
                               for g in self.components]}


def xray_u(mix: XRayGaussianMix, x):
    return mix.eval(x)


@dataclass(frozen=True, eq=False)
class Sum(Solution):
    terms: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def decay(self):
        kinds = {t.decay for t in self.terms}
        for d in (Decay.POLYNOMIAL, Decay.COMPACTISH, Decay.GAUSSIAN):
            if d in kinds:
                return d
        return Decay.GAUSSIAN

    def eval(self, X):
        X = np.asarray(X, dtype=float)
        out = np.zeros(X.shape[:-1])
        for t in self.terms:
            out = out + t.eval(X)
        return out

    def to_dict(self):
        return {"kind": "sum", "terms": [t.to_dict() for t in self.terms]}


def solution_from_dict(d) -> Solution:
    kind = d.get("kind")
    name = d.get("name", "")
    if kind == "plane_wave":
        return PlaneWave(d["k"], profile_from_dict(d.get("profile", {"gaussian": {}})), name)
    if kind == "quadratic":
        return Quadratic(d["Q"], d.get("linear", [0, 0, 0, 0]), float(d.get("const", 0.0)), name)
    if kind == "xray_gaussians":
        comps = [GaussianBlob(tuple(c["c"]), float(c["sigma"]), float(c.get("w", 1.0))) for c in d["components"]]
        return XRayGaussianMix(comps, name)
    if kind == "sum":
        return Sum([solution_from_dict(t) for t in d["terms"]], name)
    raise InvalidSolution(f"unknown solution kind {kind!r}")


def solution_to_json(u: Solution) -> str:
    return json.dumps(u.to_dict())


def solution_from_json(text: str) -> Solution:
    return solution_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Finite-difference certificate
# ---------------------------------------------------------------------------

def laplacian_residual(u: Solution, x, h: float):
    """Neutral-signed sum of central second differences at ``x`` (one point or an (n, 4) stack)."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    centre = u.eval(X)
    total = np.zeros(X.shape[0])
    for i, sgn in enumerate((1.0, 1.0, -1.0, -1.0)):
        e = np.zeros(4)
        e[i] = h
        total += sgn * (u.eval(X + e) - 2.0 * centre + u.eval(X - e)) / (h * h)
    return float(total[0]) if single else total


@dataclass
class UHECertificate:
    max_residual: float
    max_residual_half: float
    order: float
    h: float
    n: int

    def passes(self, tol):
        return self.max_residual <= tol


def uhe_certificate(u: Solution, n: int = 200, seed: int = 0, h: float = 1e-2, box: float = 2.0) -> UHECertificate:
    """Residuals at ``n`` random points of ``[-box, box]^4`` at steps ``h`` and ``h/2``."""
    X = rng.stream(seed, 0x0E).uniform(-box, box, size=(n, 4))
    r1 = float(np.max(np.abs(laplacian_residual(u, X, h))))
    r2 = float(np.max(np.abs(laplacian_residual(u, X, h / 2))))
    order = float(np.log2(r1 / r2)) if r1 > 0 and r2 > 0 else float("nan")
    return UHECertificate(r1, r2, order, h, n)


# ---------------------------------------------------------------------------
# Built-in solution sets
# ---------------------------------------------------------------------------

def null_vector(theta, phi, scale=1.0):
    """``scale * (cos t, sin t, cos p, sin p)``; null for every ``t, p``."""
    return scale * np.array([np.cos(theta), np.sin(theta), np.cos(phi), np.sin(phi)])


def builtin_quadratics():
    return [
        Quadratic(np.diag([1.0, 0, 1, 0]), name="q_x1x1_x3x3"),
        Quadratic(np.zeros((4, 4)), const=1.0, name="q_one"),
        Quadratic(np.diag([1.0, 1, 1, 1]), linear=[0.3, -0.2, 0.5, 0.1], const=-0.7, name="q_norm_sum"),
        Quadratic(np.array([[1.0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0.5], [0, 0, 0.5, 1]]), name="q_cross"),
        Quadratic(np.array([[2.0, 0, 0.4, 0], [0, -1, 0, 0.3], [0.4, 0, 1, 0], [0, 0.3, 0, 0]]),
                  linear=[1.0, 0, 0, 0], name="q_mixed"),
    ]


def builtin_plane_waves():
    """Ten null plane waves: six Gaussian-profile, two cosine, two monomial."""
    out = []
    angles = [(0.0, 0.0), (0.7, 2.1), (1.9, -0.4), (3.0, 1.2), (-2.2, 0.5), (2.6, -2.9)]
    scales = [1.0, 0.8, 1.3, 0.6, 1.1, 0.9]
    for i, ((t, p), s) in enumerate(zip(angles, scales)):
        out.append(PlaneWave(null_vector(t, p, s), Gaussian(), name=f"pw_gauss_{i}"))
    out.append(PlaneWave(null_vector(0.4, 1.7), Cosine(1.5), name="pw_cos_0"))
    out.append(PlaneWave(null_vector(-1.1, 0.3), Cosine(0.7), name="pw_cos_1"))
    out.append(PlaneWave(null_vector(2.3, 0.9), Monomial(3, 0.5), name="pw_cubic"))
    out.append(PlaneWave(null_vector(0.2, -2.5), Monomial(4), name="pw_quartic"))
    return out


def builtin_xray_mixes():
    blobs = [
        [GaussianBlob((0.0, 0.0, 0.0), 1.0, 1.0)],
        [GaussianBlob((0.5, -0.3, 0.2), 0.7, 1.0), GaussianBlob((-0.4, 0.6, -0.5), 0.9, -0.6)],
        [GaussianBlob((1.0, 0.0, 0.5), 0.5, 2.0)],
        [GaussianBlob((0.2, 0.2, -1.0), 1.2, 0.5), GaussianBlob((-0.8, -0.1, 0.3), 0.6, 1.5),
         GaussianBlob((0.0, 0.9, 0.9), 0.8, -1.0)],
        [GaussianBlob((-0.3, 0.4, 0.0), 1.5, 0.8)],
    ]
    return [XRayGaussianMix(b, name=f"xray_{i}") for i, b in enumerate(blobs)]


def builtin_solutions():
    """The 20 built-in solutions: 5 quadratics, 10 null plane waves, 5 X-ray mixtures."""
    return builtin_quadratics() + builtin_plane_waves() + builtin_xray_mixes()


def gaussian_decay_solutions():
    """Solutions that decay along unbounded conics in generic directions."""
    return [u for u in builtin_plane_waves() if isinstance(u.profile, Gaussian)]


def mean_value_solutions():
    """Ten solutions for conformal mean-value trials on bounded pairs.

    A subset of the built-ins covering every family; the cubic wave and
    the cross-term quadratic are exercised by the Asgeirsson sweep.
    """
    by_name = {u.name: u for u in builtin_solutions()}
    names = ["q_one", "q_norm_sum", "q_mixed", "pw_gauss_0", "pw_gauss_3", "pw_cos_0", "pw_quartic",
             "xray_0", "xray_1", "xray_3"]
    return [by_name[n] for n in names]
