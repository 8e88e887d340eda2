"""Points of G(r, r+s) with the orthogonal structure induced by I_{r,s}.

A point is held by its canonical (RREF) r x (r+s) representative matrix.  A
chart matrix ``Z`` (r x s) stands for the point with representative
``[I_r, Z]``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotInChart, RankDeficient, ZeroVector
from .forms import Signature
from .scalars import (
    DEFAULT_TOL,
    GaussianRational,
    as_rng,
    decode_matrix,
    encode_matrix,
    eye,
    float_array,
    hermitian,
    is_exact,
    max_abs,
    random_complex,
    random_exact,
)
from .subspaces import Subspace, inertia, rref


@dataclass(frozen=True, eq=False)
class GrassPoint:
    r: int
    s: int
    A: np.ndarray

    @property
    def signature(self) -> Signature:
        return Signature(self.r, self.s)

    @property
    def exact(self) -> bool:
        return is_exact(self.A)

    def subspace(self) -> Subspace:
        return Subspace(self.r + self.s, self.A)

    def __eq__(self, other):
        if not isinstance(other, GrassPoint):
            return NotImplemented
        return (self.r, self.s) == (other.r, other.s) and bool(np.all(self.A == other.A))

    __hash__ = None

    def distance(self, other: "GrassPoint") -> float:
        """Max-entry difference of the canonical representatives."""
        _same_shape(self, other)
        return max_abs(float_array(self.A) - float_array(other.A))

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s, "A": encode_matrix(self.A)}

    @classmethod
    def from_json(cls, obj: dict, exact: bool = False, tol: float = DEFAULT_TOL) -> "GrassPoint":
        A = decode_matrix(obj["A"], exact)
        p = point_from_matrix(A, tol)
        if (p.r, p.s) != (int(obj["r"]), int(obj["s"])):
            raise DimensionMismatch("declared shape does not match the matrix")
        return p

    def __repr__(self):
        return f"GrassPoint(r={self.r}, s={self.s})"


class PointClass(enum.Enum):
    NULL = "Null"
    POSITIVE = "Positive"
    INDEFINITE = "Indefinite"
    DEGENERATE = "Degenerate"


def _same_shape(p: GrassPoint, q: GrassPoint):
    if (p.r, p.s) != (q.r, q.s):
        raise DimensionMismatch(f"points of G({p.r},{p.s}) and G({q.r},{q.s})")


def point_from_matrix(A, tol: float = DEFAULT_TOL) -> GrassPoint:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] > A.shape[1]:
        raise DimensionMismatch(f"representative must be r x (r+s), got {A.shape}")
    if not is_exact(A):
        A = A.astype(complex)
    r = A.shape[0]
    R, piv = rref(A, tol)
    if len(piv) < r:
        raise RankDeficient(f"representative has rank {len(piv)} < {r}")
    return GrassPoint(r, A.shape[1] - r, R)


def chart_point(Z) -> GrassPoint:
    Z = np.atleast_2d(np.asarray(Z))
    if not is_exact(Z):
        Z = Z.astype(complex)
    r, s = Z.shape
    return GrassPoint(r, s, np.concatenate([eye(r, is_exact(Z)), Z], axis=1))


def to_chart(p: GrassPoint, tol: float = DEFAULT_TOL) -> np.ndarray:
    R, piv = rref(p.A, tol)
    if piv != list(range(p.r)):
        raise NotInChart("leading r x r block is singular")
    return R[:, p.r:]


def pairing(p: GrassPoint, q: GrassPoint) -> np.ndarray:
    """A_p I_{r,s} A_q^H on the canonical representatives."""
    _same_shape(p, q)
    A, B = p.A, q.A
    if is_exact(A) != is_exact(B):
        A, B = float_array(A), float_array(B)
    return A @ p.signature.matrix(is_exact(A)) @ hermitian(B)


def is_orthogonal(p: GrassPoint, q: GrassPoint, tol: float = DEFAULT_TOL) -> bool:
    P = pairing(p, q)
    if is_exact(P):
        return bool(np.all(P == 0))
    return max_abs(P) <= tol


def classify_point(p: GrassPoint, tol: float = DEFAULT_TOL) -> PointClass:
    a, b, c = inertia(pairing(p, p), tol)
    if c == p.r:
        return PointClass.NULL
    if a == p.r:
        return PointClass.POSITIVE
    if c == 0:
        return PointClass.INDEFINITE
    return PointClass.DEGENERATE


def _defect(Z: np.ndarray) -> np.ndarray:
    """I_r - Z Z^H."""
    Z = np.atleast_2d(np.asarray(Z))
    return eye(Z.shape[0], is_exact(Z)) - Z @ hermitian(Z)


def in_domain(Z, tol: float = DEFAULT_TOL) -> bool:
    Z = np.atleast_2d(np.asarray(Z))
    return inertia(_defect(Z), tol).a == Z.shape[0]


def in_shilov(Z, tol: float = DEFAULT_TOL) -> bool:
    D = _defect(Z)
    if is_exact(D):
        return bool(np.all(D == 0))
    return max_abs(D) <= tol


def shilov_residual(Z) -> float:
    return max_abs(float_array(_defect(Z)))


def orthonormal_rows(M: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on the rows of M with one re-orthogonalization pass."""
    Q = np.array(M, dtype=complex)
    for i in range(Q.shape[0]):
        v = Q[i]
        for _ in range(2):
            for j in range(i):
                v = v - np.vdot(Q[j], v) * Q[j]
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise RankDeficient("rows are linearly dependent")
        Q[i] = v / nrm
    return Q


def random_unitary(n: int, seed) -> np.ndarray:
    rng = as_rng(seed)
    return orthonormal_rows(random_complex(rng, (n, n)))


def sample_shilov(r: int, s: int, seed) -> np.ndarray:
    """A chart matrix Z with Z Z^H = I_r (a point of the Shilov boundary)."""
    if r > s:
        raise ValueError(f"S(Omega_{{{r},{s}}}) is empty for r > s")
    return random_unitary(s, seed)[:r].copy()


def sample_orthogonal_partner(z, seed, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A chart vector w (1 x s) with sum_k z_k conj(w_k) = 1, i.e. [1, z] ⊥ [1, w].

    All coordinates of conj(w) but the pivot are drawn freely; the pivot is
    solved from the single linear constraint.  Exact input gives exact output.
    """
    z = np.asarray(z).reshape(-1)
    rng = as_rng(seed)
    exact = is_exact(z)
    s = z.size
    if exact:
        nz = [k for k in range(s) if z[k] != 0]
        if not nz:
            raise ZeroVector("z = 0 has no orthogonal partner in the chart")
        j = nz[0]
        u = random_exact(rng, (s,))
        rest = sum((z[k] * u[k] for k in range(s) if k != j), start=GaussianRational(0))
        u[j] = (GaussianRational(1) - rest) / z[j]
    else:
        z = z.astype(complex)
        j = int(np.argmax(np.abs(z)))
        if abs(z[j]) <= tol:
            raise ZeroVector("z = 0 has no orthogonal partner in the chart")
        u = random_complex(rng, (s,))
        u[j] = 0
        u[j] = (1 - np.dot(z, u)) / z[j]
    return np.conjugate(u).reshape(1, s)


def sample_open_point(s: int, seed, exact: bool = False, margin: float = 0.1) -> np.ndarray:
    """A generic 1 x s chart point kept away from the Shilov boundary."""
    rng = as_rng(seed)
    for _ in range(1000):
        if exact:
            z = random_exact(rng, (1, s), num=8, den=8)
            q = abs(1 - float(sum(x.abs2() for x in z[0])))
        else:
            z = random_complex(rng, (1, s), scale=1.0 / np.sqrt(s))
            q = abs(1 - float(np.sum(np.abs(z) ** 2)))
        if q > margin:
            return z
    raise RuntimeError("could not draw a point away from the Shilov boundary")


def chart_to_json(Z) -> dict:
    Z = np.atleast_2d(np.asarray(Z))
    return {"r": int(Z.shape[0]), "s": int(Z.shape[1]), "Z": encode_matrix(Z)}


def chart_from_json(obj: dict, exact: bool = False) -> np.ndarray:
    Z = decode_matrix(obj["Z"], exact)
    if Z.shape != (int(obj["r"]), int(obj["s"])):
        raise DimensionMismatch("declared shape does not match Z")
    return Z


def base_null_chart(r: int, s: int, exact: bool = False) -> np.ndarray:
    """[I_r | 0_{r x (s-r)}], the reference Shilov point."""
    if r > s:
        raise ValueError("base null point needs r <= s")
    return eye(s, exact)[:r].copy() if exact else np.eye(r, s, dtype=complex)
