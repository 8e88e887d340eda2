"""The indefinite Hermitian form of signature (r; s; t) on C^n."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .scalars import DEFAULT_TOL, GaussianRational, is_exact, real_part, zeros


@dataclass(frozen=True)
class Signature:
    r: int
    s: int
    t: int = 0

    def __post_init__(self):
        if min(self.r, self.s, self.t) < 0:
            raise ValueError(f"negative signature entry in {self}")
        if self.n < 1:
            raise ValueError("ambient dimension must be at least 1")

    @property
    def n(self) -> int:
        return self.r + self.s + self.t

    def diagonal(self) -> list[int]:
        return [1] * self.r + [-1] * self.s + [0] * self.t

    def matrix(self, exact: bool = False) -> np.ndarray:
        J = zeros((self.n, self.n), exact)
        for i, d in enumerate(self.diagonal()):
            J[i, i] = GaussianRational(d) if exact else float(d)
        return J

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)


class VectorClass(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NULL = "Null"


def _check(z, sig: Signature):
    if len(z) != sig.n:
        raise DimensionMismatch(f"vector of length {len(z)} used with {sig}")


def inner_product(z, w, sig: Signature):
    """<z, w> = sum_{i<=r} z_i conj(w_i) - sum_{r<i<=r+s} z_i conj(w_i)."""
    z = np.asarray(z)
    w = np.asarray(w)
    _check(z, sig)
    _check(w, sig)
    r, s = sig.r, sig.s
    if is_exact(z) or is_exact(w):
        acc = GaussianRational(0)
        for i in range(r):
            acc = acc + z[i] * w[i].conjugate()
        for i in range(r, r + s):
            acc = acc - z[i] * w[i].conjugate()
        return acc
    return complex(np.dot(z[:r], np.conj(w[:r])) - np.dot(z[r:r + s], np.conj(w[r:r + s])))


def norm_sq(z, sig: Signature):
    """Indefinite squared norm; a Fraction in exact mode, a float otherwise."""
    z = np.asarray(z)
    _check(z, sig)
    if is_exact(z):
        r, s = sig.r, sig.s
        return sum((x.abs2() for x in z[:r]), start=0) - sum(
            (x.abs2() for x in z[r:r + s]), start=0
        )
    return real_part(inner_product(z, z, sig))


def classify_vector(z, sig: Signature, tol: float | None = None) -> VectorClass:
    z = np.asarray(z)
    exact = is_exact(z)
    if tol is None:
        tol = 0.0 if exact else DEFAULT_TOL
    if tol < 0:
        raise ValueError("tol must be non-negative")
    if exact and tol != 0:
        raise ValueError("exact vectors are classified with tol = 0")
    q = norm_sq(z, sig)
    if abs(q) <= tol:
        return VectorClass.NULL
    return VectorClass.POSITIVE if q > 0 else VectorClass.NEGATIVE
