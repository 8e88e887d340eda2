"""The indefinite unitary group U(r, s) acting on G(r, r+s) and on charts.

Points transform by right multiplication of their row representatives with
``g^T`` (each basis row moves as a vector), so A_p I A_q^H is untouched by
the action.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotInChart, NotNull
from .forms import Signature
from .grassmannian import (
    GrassPoint,
    PointClass,
    base_null_chart,
    chart_point,
    classify_point,
    orthonormal_rows,
    point_from_matrix,
    random_unitary,
)
from .scalars import (
    DEFAULT_TOL,
    as_rng,
    decode_matrix,
    encode_matrix,
    eye,
    float_array,
    hermitian,
    is_exact,
    max_abs,
)
from .subspaces import orth_complement, solve, span


@dataclass(frozen=True, eq=False)
class IndefUnitary:
    M: np.ndarray
    sig: Signature

    def __post_init__(self):
        if self.sig.t != 0:
            raise ValueError("U(r, s) needs a nondegenerate signature")
        if self.M.shape != (self.sig.n, self.sig.n):
            raise DimensionMismatch(f"matrix of shape {self.M.shape} for {self.sig}")

    def inverse(self) -> "IndefUnitary":
        J = self.sig.matrix(is_exact(self.M))
        return IndefUnitary(J @ hermitian(self.M) @ J, self.sig)

    def __matmul__(self, other: "IndefUnitary") -> "IndefUnitary":
        if self.sig != other.sig:
            raise DimensionMismatch("signatures differ")
        return IndefUnitary(self.M @ other.M, self.sig)

    def residual(self) -> float:
        J = float_array(self.sig.matrix())
        M = float_array(self.M)
        return max_abs(M @ J @ hermitian(M) - J)

    def to_json(self) -> dict:
        return {"sig": [self.sig.r, self.sig.s], "M": encode_matrix(self.M)}

    @classmethod
    def from_json(cls, obj: dict, exact: bool = False) -> "IndefUnitary":
        r, s = obj["sig"]
        return cls(decode_matrix(obj["M"], exact), Signature(int(r), int(s)))


def identity(sig: Signature, exact: bool = False) -> IndefUnitary:
    return IndefUnitary(eye(sig.n, exact), sig)


def verify_indefinite_unitary(M, sig: Signature, tol: float = DEFAULT_TOL) -> bool:
    M = np.asarray(M)
    if M.shape != (sig.n, sig.n):
        raise DimensionMismatch(f"matrix of shape {M.shape} for {sig}")
    J = sig.matrix(is_exact(M))
    D = M @ J @ hermitian(M) - J
    if is_exact(D):
        return bool(np.all(D == 0))
    return max_abs(D) <= tol


def _block_diag(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    r, s = U.shape[0], V.shape[0]
    out = np.zeros((r + s, r + s), dtype=complex)
    out[:r, :r] = U
    out[r:, r:] = V
    return out


def boost(sig: Signature, i: int, j: int, a: float) -> np.ndarray:
    """Hyperbolic rotation mixing positive direction i with negative direction j."""
    B = np.eye(sig.n, dtype=complex)
    c, sh = math.cosh(a), math.sinh(a)
    B[i, i] = B[j, j] = c
    B[i, j] = B[j, i] = sh
    return B


def random_automorphism(sig: Signature, seed, n_boosts: int = 2) -> IndefUnitary:
    """Seeded product diag(U_r, U_s) * boosts * diag(U_r', U_s')."""
    if sig.t != 0:
        raise ValueError("U(r, s) needs t = 0")
    rng = as_rng(seed)
    r, s = sig.r, sig.s

    def block():
        U = random_unitary(r, rng) if r else np.zeros((0, 0), dtype=complex)
        V = random_unitary(s, rng) if s else np.zeros((0, 0), dtype=complex)
        return _block_diag(U, V)

    M = block()
    if n_boosts and r and s:
        for _ in range(n_boosts):
            i = int(rng.integers(0, r))
            j = r + int(rng.integers(0, s))
            M = M @ boost(sig, i, j, float(rng.uniform(-1.0, 1.0)))
        M = M @ block()
    return IndefUnitary(M, sig)


def _check_point(g: IndefUnitary, p: GrassPoint):
    if (p.r, p.s) != (g.sig.r, g.sig.s):
        raise DimensionMismatch(f"G({p.r},{p.s}) point acted on by U{g.sig.r, g.sig.s}")


def _pair(A: np.ndarray, B: np.ndarray):
    if is_exact(A) != is_exact(B):
        return float_array(A), float_array(B)
    return A, B


def act_on_point(g: IndefUnitary, p: GrassPoint, tol: float = DEFAULT_TOL) -> GrassPoint:
    _check_point(g, p)
    A, M = _pair(p.A, g.M)
    return point_from_matrix(A @ M.T, tol)


def act_on_chart(g: IndefUnitary, Z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Z' = (M11 + Z M21)^{-1} (M12 + Z M22) with g^T = [[M11, M12], [M21, M22]]."""
    Z = np.atleast_2d(np.asarray(Z))
    r, s = g.sig.r, g.sig.s
    if Z.shape != (r, s):
        raise DimensionMismatch(f"chart matrix {Z.shape} for U{r, s}")
    Z, M = _pair(Z, g.M)
    T = M.T
    lead = T[:r, :r] + Z @ T[r:, :r]
    tail = T[:r, r:] + Z @ T[r:, r:]
    try:
        return solve(lead, tail, tol)
    except np.linalg.LinAlgError as exc:
        raise NotInChart("image leaves the chart") from exc


def move_null_to_base(p: GrassPoint, seed=None, tol: float = DEFAULT_TOL) -> IndefUnitary:
    """An element g of U(r, s) with act_on_point(g, p) = [I_r, I_r, 0].

    Witt extension: an orthonormal null frame N of V_p is paired with a dual
    null frame M (<n_i, m_j> = delta_ij, <m_i, m_j> = 0), the complement of
    span(N, M) is given a (-1)-orthonormal basis C, and the adapted basis
    ((N+M)/sqrt2, (N-M)/sqrt2, C) is sent to the standard one.
    """
    r, s = p.r, p.s
    if r > s:
        raise ValueError("move_null_to_base needs r <= s")
    if classify_point(p, tol) is not PointClass.NULL:
        raise NotNull("point is not null")
    sig = p.signature
    J = np.diag(np.array(sig.diagonal(), dtype=complex))

    N = orthonormal_rows(float_array(p.A))
    Y = N @ J
    G = Y @ J @ hermitian(Y)
    Mdual = Y - 0.5 * G @ N

    W = span(np.concatenate([N, Mdual]), tol)
    C = float_array(orth_complement(W, sig, tol).basis)
    if C.shape[0] != s - r:
        raise NotNull("null frame does not extend; point is not null within tolerance")
    if C.shape[0]:
        C = random_unitary(C.shape[0], as_rng(seed)) @ C
        C = _neg_orthonormal(C, J)

    root = math.sqrt(0.5)
    E = np.concatenate([root * (N + Mdual), root * (N - Mdual), C])
    T = J @ hermitian(E) @ J
    return IndefUnitary(T.T, sig)


def _neg_orthonormal(C: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Gram-Schmidt for the negative definite form v -> <v, v> on the rows of C."""
    out = np.array(C, dtype=complex)
    for i in range(out.shape[0]):
        v = out[i]
        for _ in range(2):
            for j in range(i):
                # <c_j, c_j> = -1
                v = v + (v @ J @ np.conj(out[j])) * out[j]
        q = float(np.real(v @ J @ np.conj(v)))
        out[i] = v / math.sqrt(-q)
    return out


def base_null_point(r: int, s: int) -> GrassPoint:
    return chart_point(base_null_chart(r, s))
