"""Linear algebra over the neutral spaces R^{2,2} and R^{3,3}.

Points of R^{2,2} are length-4 arrays, vectors of R^{3,3} are length-6
arrays ``(s0, s1, s2, s3, s4, s5)``.  All inner products act on the last
axis so they broadcast over stacks of vectors.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DependentBasis

DEFAULT_TOL = 1e-9

G22 = np.diag([1.0, 1.0, -1.0, -1.0])
J33 = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])
_SIGNS22 = np.array([1.0, 1.0, -1.0, -1.0])
_SIGNS33 = np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


def inner22(x, y):
    """Neutral pairing x1y1 + x2y2 - x3y3 - x4y4."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.sum(x * _SIGNS22 * y, axis=-1)


def norm22(x):
    return inner22(x, x)


def inner33(s, t):
    """Neutral pairing of signature (3,3) on the last axis."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.sum(s * _SIGNS33 * t, axis=-1)


def norm33(s):
    return inner33(s, s)


def mid(s):
    """Middle four components of a vector of R^{3,3}."""
    return np.asarray(s, dtype=float)[..., 1:5]


def gram33(basis):
    B = np.atleast_2d(np.asarray(basis, dtype=float))
    return B @ J33 @ B.T


# ---------------------------------------------------------------------------
# Symmetric eigensolver
# ---------------------------------------------------------------------------

def off_norm(A):
    """Frobenius norm of the off-diagonal part."""
    A = np.asarray(A, dtype=float)
    off = A[~np.eye(A.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(A, tol=1e-15, max_sweeps=60):
    """Eigen-decomposition of a small symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(w, V)`` with eigenvalues ``w`` in ascending order and the
    matching orthonormal eigenvectors as the columns of ``V``.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("jacobi_eigh expects a square matrix")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    V = np.eye(n)
    scale = np.linalg.norm(A)
    if n == 1 or scale == 0.0:
        return np.diag(A).copy(), V

    for _ in range(max_sweeps):
        if off_norm(A) <= tol * scale:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                # the rotation angle would underflow against the diagonal
                if abs(apq) < 1e-18 * (abs(A[p, p]) + abs(A[q, q])):
                    A[p, q] = A[q, p] = 0.0
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
                rotated = True
        if not rotated:
            break

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


# ---------------------------------------------------------------------------
# Elimination helpers
# ---------------------------------------------------------------------------

def rank(M, tol=DEFAULT_TOL):
    """Numerical rank from singular values, relative to the largest one."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def rref(M, tol=DEFAULT_TOL):
    """Reduced row echelon form with partial pivoting.

    Returns the reduced matrix and the list of pivot columns.  Entries
    below ``tol`` times the largest absolute entry count as zero.
    """
    R = np.array(M, dtype=float)
    R = np.atleast_2d(R)
    rows, cols = R.shape
    thresh = tol * max(np.max(np.abs(R)) if R.size else 0.0, 1e-300)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        k = r + int(np.argmax(np.abs(R[r:, c])))
        if abs(R[k, c]) <= thresh:
            R[r:, c] = 0.0
            continue
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] /= R[r, c]
        for i in range(rows):
            if i != r and R[i, c] != 0.0:
                R[i] -= R[i, c] * R[r]
        R[r, c] = 1.0
        pivots.append(c)
        r += 1
    return R, pivots


def null_space(M, tol=DEFAULT_TOL):
    """Basis (as rows) of {x : M x = 0}, read off the reduced echelon form.

    The basis is a function of the row space of ``M`` only, so any two
    matrices with the same row space give the same basis.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    cols = M.shape[1]
    R, pivots = rref(M, tol)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols)
        v[f] = 1.0
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return np.array(basis).reshape(len(basis), cols)


def orthonormal_rows(B, tol=DEFAULT_TOL):
    """Euclidean orthonormal basis (rows) of the row space of ``B``."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.size == 0:
        return np.zeros((0, B.shape[-1]))
    _, sv, vt = np.linalg.svd(B, full_matrices=False)
    if sv[0] == 0.0:
        return np.zeros((0, B.shape[1]))
    r = int(np.sum(sv > tol * sv[0]))
    return vt[:r]


# ---------------------------------------------------------------------------
# Subspaces of R^{3,3}
# ---------------------------------------------------------------------------

class MetricClass(enum.Enum):
    DEFINITE = "definite"
    INDEFINITE = "indefinite"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Signature:
    pos: int
    neg: int
    zero: int

    @property
    def cls(self) -> MetricClass:
        if self.zero > 0:
            return MetricClass.DEGENERATE
        if self.pos * self.neg == 0:
            return MetricClass.DEFINITE
        return MetricClass.INDEFINITE

    @property
    def sgn(self) -> int:
        return self.pos - self.neg

    def __iter__(self):
        return iter((self.pos, self.neg, self.zero))


class Subspace33:
    """A linear subspace of R^{3,3} held as a list of basis rows.

    Parameters
    ----------
    basis : array_like, shape (k, 6)
        Spanning vectors; they must be independent at ``tol``.
    tol : float
        Relative threshold used for rank and eigenvalue decisions.
    """

    def __init__(self, basis, tol=DEFAULT_TOL):
        B = np.asarray(basis, dtype=float)
        if B.size == 0:
            B = np.zeros((0, 6))
        B = np.atleast_2d(B)
        if B.shape[1] != 6:
            raise ValueError(f"basis vectors must have 6 components, got {B.shape[1]}")
        if B.shape[0] > 0 and rank(B, tol) < B.shape[0]:
            raise DependentBasis(f"{B.shape[0]} basis vectors span a space of rank {rank(B, tol)}")
        self.basis = B
        self.tol = tol

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"Subspace33(dim={self.dim}, basis={self.basis.tolist()!r})"

    def orthonormal(self):
        return orthonormal_rows(self.basis, self.tol)

    def projector(self):
        Q = self.orthonormal()
        return Q.T @ Q

    def gram(self):
        return gram33(self.basis)

    def contains_vector(self, v, tol=None):
        tol = self.tol if tol is None else tol
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if n == 0.0:
            return True
        r = v - self.projector() @ v
        return bool(np.linalg.norm(r) <= tol * n)

    def transformed(self, M):
        """Image under a linear map of R^6 given as a 6x6 matrix."""
        return Subspace33(self.basis @ np.asarray(M, dtype=float).T, self.tol)

    def respanned(self, coeffs):
        """Same subspace with basis ``coeffs @ basis``."""
        return Subspace33(np.asarray(coeffs, dtype=float) @ self.basis, self.tol)


def full_space(tol=DEFAULT_TOL):
    return Subspace33(np.eye(6), tol)


def p_subspace(tol=DEFAULT_TOL):
    """The hyperplane {s0 + s5 = 0}, which holds the coordinates of hyperplanes."""
    return Subspace33([
        [1, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
    ], tol)


P_PERP = np.array([1.0, 0.0, 0.0, 0.0, 0.0, -1.0])


def signature(V: Subspace33, tol=None) -> Signature:
    """Inertia of the neutral form restricted to ``V``.

    The Gram matrix is taken on a Euclidean-orthonormal basis of ``V`` so
    the zero threshold does not depend on how the input basis is scaled.
    """
    tol = V.tol if tol is None else tol
    if V.dim == 0:
        return Signature(0, 0, 0)
    if rank(V.basis, tol) < V.dim:
        raise DependentBasis("basis is not independent")
    Q = orthonormal_rows(V.basis, tol)
    w, _ = jacobi_eigh(gram33(Q))
    thresh = tol * max(1.0, float(np.max(np.abs(w))))
    pos = int(np.sum(w > thresh))
    neg = int(np.sum(w < -thresh))
    return Signature(pos, neg, V.dim - pos - neg)


def orthogonal_complement(V: Subspace33) -> Subspace33:
    """Neutral orthogonal complement {w : (v, w) = 0 for all v in V}."""
    if V.dim == 0:
        return full_space(V.tol)
    if rank(V.basis, V.tol) < V.dim:
        raise DependentBasis("basis is not independent")
    constraints = V.basis @ J33
    return Subspace33(null_space(constraints, V.tol), V.tol)


def intersection(V: Subspace33, W: Subspace33) -> Subspace33:
    tol = max(V.tol, W.tol)
    if V.dim == 0 or W.dim == 0:
        return Subspace33(np.zeros((0, 6)), tol)
    # coefficients (a, b) with a V = b W
    stacked = np.hstack([V.basis.T, -W.basis.T])
    coeffs = null_space(stacked, tol)
    if coeffs.shape[0] == 0:
        return Subspace33(np.zeros((0, 6)), tol)
    vecs = coeffs[:, :V.dim] @ V.basis
    return Subspace33(orthonormal_rows(vecs, tol), tol)


def subspace_distance(V: Subspace33, W: Subspace33) -> float:
    """Spectral norm of the difference of the orthogonal projectors.

    Zero iff the subspaces coincide; equals the sine of the largest
    principal angle when the dimensions agree, and 1 otherwise.
    """
    return float(np.linalg.norm(V.projector() - W.projector(), 2))


def subspaces_equal(V: Subspace33, W: Subspace33, tol=None) -> bool:
    tol = max(V.tol, W.tol) if tol is None else tol
    return V.dim == W.dim and subspace_distance(V, W) <= tol


@dataclass
class SubspaceRelations:
    contains: bool        # W is a subspace of V
    equal: bool
    complementary: bool   # V + W = R^6 and V ∩ W = 0
    orthogonal: bool      # every pair of basis vectors pairs to zero
    intersection: Subspace33


def subspace_relations(V: Subspace33, W: Subspace33) -> SubspaceRelations:
    tol = max(V.tol, W.tol)
    stacked = np.vstack([V.basis, W.basis]) if V.dim + W.dim else np.zeros((0, 6))
    r = rank(stacked, tol) if stacked.shape[0] else 0
    contains = r == V.dim
    equal = contains and V.dim == W.dim
    complementary = V.dim + W.dim == 6 and r == 6
    cross = V.basis @ J33 @ W.basis.T if V.dim and W.dim else np.zeros((0, 0))
    scale = max(1.0, float(np.max(np.abs(V.basis))) if V.dim else 1.0) * \
        max(1.0, float(np.max(np.abs(W.basis))) if W.dim else 1.0)
    orthogonal = bool(cross.size == 0 or np.max(np.abs(cross)) <= tol * scale)
    return SubspaceRelations(contains, equal, complementary, orthogonal, intersection(V, W))
