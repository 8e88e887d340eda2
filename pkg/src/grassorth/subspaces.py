"""Linear subspaces of C^n and the signature of restricted forms.

Subspaces are stored by a canonical basis (reduced row-echelon form with unit
pivots), so two values describing the same set of vectors compare equal.
Rank decisions in float mode use a pivot threshold ``tol * max(1, scale)``
where ``scale`` is the largest entry magnitude of the matrix being reduced;
exact mode decides rank exactly and ignores ``tol``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotHermitian
from .forms import Signature
from .scalars import (
    DEFAULT_TOL,
    GaussianRational,
    decode_matrix,
    encode_matrix,
    exact_array,
    eye,
    float_array,
    hermitian,
    is_exact,
    max_abs,
    real_part,
    zeros,
)


def _threshold(A: np.ndarray, tol: float) -> float:
    return tol * max(1.0, max_abs(A))


def rref(A, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns).

    Float mode uses partial pivoting (largest magnitude in the column),
    exact mode takes the first nonzero entry.
    """
    A = np.array(A, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    exact = is_exact(A)
    if not exact:
        A = A.astype(complex)
    m, n = A.shape
    thr = 0.0 if exact else _threshold(A, tol)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        if exact:
            cand = [i for i in range(row, m) if A[i, col] != 0]
            if not cand:
                continue
            i = cand[0]
        else:
            colabs = np.abs(A[row:, col])
            i = row + int(np.argmax(colabs))
            if colabs[i - row] <= thr:
                continue
        if i != row:
            A[[row, i]] = A[[i, row]]
        A[row] = A[row] / A[row, col]
        others = [j for j in range(m) if j != row]
        if others:
            A[others] = A[others] - np.outer(A[others, col], A[row])
        A[row, col] = GaussianRational(1) if exact else 1.0
        for j in others:
            A[j, col] = GaussianRational(0) if exact else 0.0
        pivots.append(col)
        row += 1
    return A[:row], pivots


def rank(A, tol: float = DEFAULT_TOL) -> int:
    return len(rref(A, tol)[1])


def kernel(A, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Basis of {x : A x = 0} as rows."""
    A = np.asarray(A)
    exact = is_exact(A)
    n = A.shape[1]
    R, piv = rref(A, tol)
    free = [j for j in range(n) if j not in piv]
    out = zeros((len(free), n), exact)
    for k, f in enumerate(free):
        out[k, f] = GaussianRational(1) if exact else 1.0
        for i, p in enumerate(piv):
            out[k, p] = -R[i, f]
    return out


def solve(A, B, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Solve A X = B for square A, raising LinAlgError when A is singular within tol."""
    A = np.asarray(A)
    B = np.asarray(B)
    n = A.shape[0]
    vec = B.ndim == 1
    B2 = B.reshape(n, -1)
    exact = is_exact(A) or is_exact(B)
    if exact:
        A, B2 = exact_array(A), exact_array(B2)
    else:
        A, B2 = float_array(A), float_array(B2)
    # threshold from A alone: the right-hand side must not mask a singular A
    thr_scale = max(1.0, max_abs(A))
    aug = np.concatenate([A, B2], axis=1)
    R, piv = rref(aug, tol * thr_scale / max(1.0, max_abs(aug)))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise np.linalg.LinAlgError("matrix is singular within tolerance")
    if len(piv) > n:
        raise np.linalg.LinAlgError("inconsistent system")
    X = R[:n, n:]
    return X.reshape(-1) if vec else X


def inverse(A, tol: float = DEFAULT_TOL) -> np.ndarray:
    A = np.asarray(A)
    return solve(A, eye(A.shape[0], is_exact(A)), tol)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^n held by its canonical (RREF) basis."""

    ambient: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def exact(self) -> bool:
        return is_exact(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient != other.ambient or self.basis.shape != other.basis.shape:
            return False
        return bool(np.all(self.basis == other.basis))

    __hash__ = None

    def isclose(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        if self.ambient != other.ambient or self.basis.shape != other.basis.shape:
            return False
        if self.dim == 0:
            return True
        return max_abs(float_array(self.basis) - float_array(other.basis)) <= tol

    def contains(self, v, tol: float = DEFAULT_TOL) -> bool:
        v = np.atleast_2d(np.asarray(v))
        return span(np.concatenate([self.basis, _match(v, self.basis)]), tol).dim == self.dim

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": encode_matrix(self.basis)}

    @classmethod
    def from_json(cls, obj: dict, exact: bool = False, tol: float = DEFAULT_TOL) -> "Subspace":
        n = int(obj["ambient"])
        rows = obj["basis"]
        if not rows:
            return zero_subspace(n, exact)
        return span(decode_matrix(rows, exact), tol)

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def _match(v: np.ndarray, ref: np.ndarray) -> np.ndarray:
    if is_exact(ref) and not is_exact(v):
        return exact_array(v)
    if is_exact(v) and not is_exact(ref):
        return float_array(v)
    return v


def zero_subspace(n: int, exact: bool = False) -> Subspace:
    return Subspace(n, zeros((0, n), exact))


def full_space(n: int, exact: bool = False) -> Subspace:
    return Subspace(n, eye(n, exact))


def span(vectors, tol: float = DEFAULT_TOL, ambient: int | None = None) -> Subspace:
    """Canonical basis of the span of the given vectors (rows)."""
    if isinstance(vectors, np.ndarray):
        M = vectors
    else:
        vectors = list(vectors)
        if not vectors:
            if ambient is None:
                raise ValueError("ambient dimension needed for an empty span")
            return zero_subspace(ambient)
        M = np.array([np.asarray(v) for v in vectors])
        if M.dtype != object and any(is_exact(np.asarray(v)) for v in vectors):
            M = exact_array(M)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    n = M.shape[1] if M.ndim == 2 else 0
    if ambient is not None and n != ambient:
        raise DimensionMismatch(f"vectors of length {n} in C^{ambient}")
    if M.shape[0] == 0:
        return zero_subspace(n, is_exact(M))
    R, _ = rref(M, tol)
    return Subspace(n, R)


def _same_ambient(U: Subspace, V: Subspace):
    if U.ambient != V.ambient:
        raise DimensionMismatch(f"ambient dimensions {U.ambient} and {V.ambient} differ")


def subspace_sum(U: Subspace, V: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    _same_ambient(U, V)
    return span(np.concatenate([U.basis, _match(V.basis, U.basis)]), tol)


def intersect(U: Subspace, V: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """U ∩ V from the left kernel of the stacked bases."""
    _same_ambient(U, V)
    exact = U.exact
    if U.dim == 0 or V.dim == 0:
        return zero_subspace(U.ambient, exact)
    S = np.concatenate([U.basis, _match(V.basis, U.basis)])
    coeffs = kernel(S.T, tol)
    if coeffs.shape[0] == 0:
        return zero_subspace(U.ambient, exact)
    return span(coeffs[:, : U.dim] @ U.basis, tol)


def _check_sig(V: Subspace, sig: Signature):
    if V.ambient != sig.n:
        raise DimensionMismatch(f"subspace of C^{V.ambient} used with {sig}")


def orth_complement(V: Subspace, sig: Signature, tol: float = DEFAULT_TOL) -> Subspace:
    """{w : <v, w> = 0 for all v in V}."""
    _check_sig(V, sig)
    exact = V.exact
    if V.dim == 0:
        return full_space(V.ambient, exact)
    A = np.conjugate(V.basis) @ sig.matrix(exact)
    K = kernel(A, tol)
    if K.shape[0] == 0:
        return zero_subspace(V.ambient, exact)
    return span(K, tol)


def gram(V: Subspace, sig: Signature) -> np.ndarray:
    """G[i, j] = <b_i, b_j> over the canonical basis."""
    _check_sig(V, sig)
    return V.basis @ sig.matrix(V.exact) @ hermitian(V.basis)


class SubSignature(NamedTuple):
    a: int
    b: int
    c: int


def congruence_diagonalize(H, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Return (D, P) with P H P^H = diag(D), D real.

    Symmetric pivoting with rank-1 clearing; when no usable diagonal pivot
    exists, an isotropic pair (i, j) is folded into row i first, which is the
    radical-free way of splitting a hyperbolic block into a +/- pair.
    """
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NotHermitian("congruence_diagonalize expects a square matrix")
    exact = is_exact(H)
    n = H.shape[0]
    if exact:
        A = exact_array(H)
        if np.any(A != hermitian(A)):
            raise NotHermitian("matrix is not Hermitian")
    else:
        A = float_array(H)
        if max_abs(A - hermitian(A)) > _threshold(A, tol):
            raise NotHermitian("matrix is not Hermitian within tolerance")
        A = (A + hermitian(A)) / 2
    thr = 0.0 if exact else _threshold(A, tol)
    P = eye(n, exact)

    def swap(i, k):
        if i != k:
            A[[i, k]] = A[[k, i]]
            A[:, [i, k]] = A[:, [k, i]]
            P[[i, k]] = P[[k, i]]

    for k in range(n):
        diag = [A[i, i] for i in range(k, n)]
        pivot = None
        if exact:
            nz = [i for i, d in enumerate(diag, start=k) if d != 0]
            if nz:
                pivot = nz[0]
        else:
            dabs = np.abs(np.array(diag, dtype=complex))
            block = np.abs(A[k:, k:]).astype(float)
            np.fill_diagonal(block, 0.0)
            offmax = block.max() if block.size else 0.0
            i = int(np.argmax(dabs))
            if dabs[i] > thr and dabs[i] >= 0.5 * offmax:
                pivot = k + i
        if pivot is None:
            # fold an isotropic pair (i, j) into row i
            if exact:
                pairs = [(i, j) for i in range(k, n) for j in range(k, n) if i != j and A[i, j] != 0]
                if not pairs:
                    break
                i, j = pairs[0]
                alpha = A[i, j]
            else:
                block = np.abs(A[k:, k:]).astype(float)
                np.fill_diagonal(block, 0.0)
                if block.size == 0 or block.max() <= thr:
                    break
                i, j = np.unravel_index(int(np.argmax(block)), block.shape)
                i, j = k + int(i), k + int(j)
                alpha = A[i, j] / abs(A[i, j])
            A[i] = A[i] + alpha * A[j]
            A[:, i] = A[:, i] + np.conjugate(alpha) * A[:, j]
            P[i] = P[i] + alpha * P[j]
            pivot = i
        swap(pivot, k)
        p = A[k, k]
        if k + 1 < n:
            c = A[k + 1:, k] / p
            A[k + 1:, :] = A[k + 1:, :] - np.outer(c, A[k, :])
            A[:, k + 1:] = A[:, k + 1:] - np.outer(A[:, k], np.conjugate(c))
            P[k + 1:, :] = P[k + 1:, :] - np.outer(c, P[k, :])
    D = np.array([real_part(A[i, i]) for i in range(n)], dtype=object if exact else float)
    return D, P


def inertia_of_diagonal(D, thr: float = 0.0) -> SubSignature:
    a = sum(1 for d in D if d > thr)
    b = sum(1 for d in D if d < -thr)
    return SubSignature(a, b, len(D) - a - b)


def inertia(H, tol: float = DEFAULT_TOL) -> SubSignature:
    """Sylvester inertia (positive, negative, zero) of a Hermitian matrix."""
    H = np.asarray(H)
    if H.shape[0] == 0:
        return SubSignature(0, 0, 0)
    D, _ = congruence_diagonalize(H, tol)
    thr = 0.0 if is_exact(H) else _threshold(H, tol)
    return inertia_of_diagonal(D, thr)


def subspace_signature(V: Subspace, sig: Signature, tol: float = DEFAULT_TOL) -> SubSignature:
    if V.dim == 0:
        _check_sig(V, sig)
        return SubSignature(0, 0, 0)
    return inertia(gram(V, sig), tol)


def is_maximal_null(V: Subspace, sig: Signature, tol: float = DEFAULT_TOL) -> bool:
    if sig.t != 0:
        raise ValueError("maximal null spaces are defined for t = 0")
    return V.dim == min(sig.r, sig.s) and subspace_signature(V, sig, tol) == (0, 0, V.dim)


def containment_residual(U: Subspace, V: Subspace) -> float:
    """Largest Euclidean distance from a unit vector of U's basis to V (float)."""
    _same_ambient(U, V)
    if U.dim == 0:
        return 0.0
    B = float_array(U.basis)
    B = B / np.linalg.norm(B, axis=1, keepdims=True)
    if V.dim == 0:
        return float(np.linalg.norm(B, axis=1).max())
    Q, _ = np.linalg.qr(float_array(V.basis).T)
    R = B - (B @ np.conj(Q)) @ Q.T
    return float(np.linalg.norm(R, axis=1).max())


def form_residual(U: Subspace, V: Subspace, sig: Signature) -> float:
    """max |<u, v>| over unit-normalized canonical basis vectors of U and V."""
    if U.dim == 0 or V.dim == 0:
        return 0.0
    Bu = float_array(U.basis)
    Bv = float_array(V.basis)
    Bu = Bu / np.linalg.norm(Bu, axis=1, keepdims=True)
    Bv = Bv / np.linalg.norm(Bv, axis=1, keepdims=True)
    return float(np.abs(Bu @ float_array(sig.matrix()) @ np.conj(Bv).T).max())


__all__ = [
    "Subspace",
    "SubSignature",
    "congruence_diagonalize",
    "containment_residual",
    "form_residual",
    "full_space",
    "gram",
    "inertia",
    "intersect",
    "inverse",
    "is_maximal_null",
    "kernel",
    "orth_complement",
    "rank",
    "rref",
    "solve",
    "span",
    "subspace_signature",
    "subspace_sum",
    "zero_subspace",
]
