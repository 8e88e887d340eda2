"""Scalar backends.

Two realizations of a complex scalar are supported:

* Float: ``complex`` / numpy ``complex128`` arrays.
* Exact: :class:`GaussianRational`, held in numpy ``object`` arrays.

Every routine that works on arrays decides the backend from the dtype
(``object`` means exact).  Float comparisons against zero always take an
explicit tolerance.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import MapFormatError

DEFAULT_TOL = 1e-9


class GaussianRational:
    """Complex number ``re + i*im`` with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (Rational, int)):
            return cls(x)
        if isinstance(x, str):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")

    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (Rational, int)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(float(self.abs2()))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GQ({self.re})"
        return f"GQ({self.re}, {self.im})"


GQ = GaussianRational


def is_exact(a) -> bool:
    """True when ``a`` (array or scalar) lives in the exact backend."""
    if isinstance(a, np.ndarray):
        return a.dtype == object
    return isinstance(a, (GaussianRational, Rational))


def exact_array(data) -> np.ndarray:
    """Convert nested data (ints, Fractions, strings, GaussianRationals) to an exact array."""
    arr = np.array(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        if isinstance(x, (float, complex, np.floating, np.complexfloating)):
            raise TypeError("float entries cannot enter the exact backend")
        out[idx] = GaussianRational.coerce(x)
    return out


def float_array(data) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype == object:
        return np.vectorize(complex, otypes=[complex])(arr) if arr.size else arr.astype(complex)
    return arr.astype(complex)


def like(data, ref: np.ndarray) -> np.ndarray:
    """Convert ``data`` to the backend of ``ref``."""
    return exact_array(data) if is_exact(ref) else float_array(data)


def zeros(shape, exact: bool) -> np.ndarray:
    if not exact:
        return np.zeros(shape, dtype=complex)
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(out.shape):
        out[idx] = GaussianRational(0)
    return out


def eye(n: int, exact: bool) -> np.ndarray:
    out = zeros((n, n), exact)
    for i in range(n):
        out[i, i] = GaussianRational(1) if exact else 1.0
    return out


def conj(a: np.ndarray) -> np.ndarray:
    return np.conjugate(a)


def hermitian(a: np.ndarray) -> np.ndarray:
    return np.conjugate(a).T


def abs_array(a: np.ndarray) -> np.ndarray:
    """Entrywise modulus as a float array (works for both backends)."""
    if is_exact(a):
        return np.vectorize(abs, otypes=[float])(a) if a.size else np.zeros(a.shape)
    return np.abs(a)


def max_abs(a: np.ndarray) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(abs_array(a).max())


def is_zero(x, thr: float) -> bool:
    if isinstance(x, GaussianRational):
        return x.re == 0 and x.im == 0
    return abs(x) <= thr


def real_part(x):
    """Real part as Fraction (exact) or float."""
    if isinstance(x, GaussianRational):
        return x.re
    return float(np.real(x))


# -- JSON encoding -----------------------------------------------------------

def encode_scalar(x) -> dict:
    if isinstance(x, GaussianRational):
        return {"re": str(x.re), "im": str(x.im)}
    if isinstance(x, Rational):
        return {"re": str(Fraction(x)), "im": "0"}
    z = complex(x)
    return {"re": repr(z.real), "im": repr(z.imag)}


def _parse_part(s) -> Fraction:
    if isinstance(s, bool):
        raise MapFormatError("boolean is not a scalar")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MapFormatError(f"bad scalar component {s!r}") from exc


def decode_scalar(obj, exact: bool):
    """Decode ``{"re": str, "im": str}`` (bare numbers/strings are taken as real)."""
    if isinstance(obj, dict):
        if "re" not in obj:
            raise MapFormatError(f"scalar object without 're': {obj!r}")
        re, im = _parse_part(obj["re"]), _parse_part(obj.get("im", "0"))
    elif isinstance(obj, (int, float, str)) and not isinstance(obj, bool):
        re, im = _parse_part(obj), Fraction(0)
    else:
        raise MapFormatError(f"bad scalar {obj!r}")
    if exact:
        return GaussianRational(re, im)
    return complex(float(re), float(im))


def encode_matrix(a) -> list:
    a = np.asarray(a)
    if a.ndim == 1:
        return [encode_scalar(x) for x in a]
    return [encode_matrix(row) for row in a]


def decode_matrix(rows, exact: bool) -> np.ndarray:
    try:
        data = [[decode_scalar(x, exact) for x in row] for row in rows]
    except TypeError as exc:
        raise MapFormatError("matrix must be a list of rows") from exc
    if exact:
        return exact_array(data) if data else np.empty((0, 0), dtype=object)
    return np.array(data, dtype=complex)


# -- randomness --------------------------------------------------------------

def as_rng(seed) -> np.random.Generator:
    """Accept an int seed, a seed sequence or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_complex(rng: np.random.Generator, shape, scale: float = 1.0) -> np.ndarray:
    """Standard complex normal entries (E|x|^2 = scale^2)."""
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return g * (scale / math.sqrt(2.0))


def random_exact(rng: np.random.Generator, shape, num: int = 64, den: int = 16) -> np.ndarray:
    """Gaussian-rational entries with bounded numerators and denominators."""
    size = int(np.prod(shape)) if shape != () else 1
    re_n = rng.integers(-num, num + 1, size=size)
    im_n = rng.integers(-num, num + 1, size=size)
    re_d = rng.integers(1, den + 1, size=size)
    im_d = rng.integers(1, den + 1, size=size)
    out = np.empty(size, dtype=object)
    for k in range(size):
        out[k] = GaussianRational(
            Fraction(int(re_n[k]), int(re_d[k])), Fraction(int(im_n[k]), int(im_d[k]))
        )
    return out.reshape(shape)
