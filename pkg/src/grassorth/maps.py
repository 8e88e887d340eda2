"""Polynomial chart-to-chart maps and the two verification engines.

A map from G(r, s) to G(r', s') is stored in chart form: the r' x s' matrix
F(Z) of polynomials in the r*s source variables z_11, ..., z_rs (row-major),
standing for Z -> [I_r', F(Z)].

Sampling engines evaluate in floating point on seeded samples.  The exact
engine polarizes the orthogonality identity (conjugated variables become
independent ones) and tests it at random Gaussian-rational points of the
variety sum_k z_k v_k = 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .automorphisms import act_on_chart
from .errors import DimensionMismatch, MapFormatError, NotExactMode
from .grassmannian import sample_orthogonal_partner, sample_shilov
from .scalars import (
    DEFAULT_TOL,
    GaussianRational,
    as_rng,
    decode_scalar,
    encode_matrix,
    encode_scalar,
    exact_array,
    eye,
    float_array,
    hermitian,
    is_exact,
    max_abs,
    random_complex,
    random_exact,
)

Exponent = tuple[int, ...]


def _is_zero_coef(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial: a tuple of (exponent, coefficient) with distinct exponents."""

    nvars: int
    terms: tuple[tuple[Exponent, object], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, coeffs: dict) -> "MultiPoly":
        terms = []
        for exp, c in coeffs.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp, default=0) < 0:
                raise MapFormatError(f"bad exponent {exp} for {nvars} variables")
            if not _is_zero_coef(c):
                terms.append((exp, c))
        terms.sort(key=lambda t: t[0])
        return cls(nvars, tuple(terms))

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, k: int, c=GaussianRational(1)) -> "MultiPoly":
        exp = [0] * nvars
        exp[k] = 1
        return cls.from_dict(nvars, {tuple(exp): c})

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def exact(self) -> bool:
        return all(isinstance(c, GaussianRational) for _, c in self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out[e] + c if e in out else c
        return MultiPoly.from_dict(self.nvars, out)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly.from_dict(self.nvars, {e: c * other for e, c in self.terms})
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return MultiPoly.from_dict(self.nvars, out)

    __rmul__ = __mul__

    def conj_coeffs(self) -> "MultiPoly":
        """Coefficient-conjugated polynomial; the variables stay free."""
        return MultiPoly(self.nvars, tuple((e, c.conjugate()) for e, c in self.terms))

    def to_float(self) -> "MultiPoly":
        return MultiPoly(self.nvars, tuple((e, complex(c)) for e, c in self.terms))

    def substitute(self, polys: list["MultiPoly"]) -> "MultiPoly":
        """Replace variable k by polys[k]."""
        if len(polys) != self.nvars:
            raise DimensionMismatch("one polynomial per variable required")
        m = polys[0].nvars if polys else self.nvars
        out = MultiPoly(m)
        for e, c in self.terms:
            term = MultiPoly.constant(m, c)
            for k, d in enumerate(e):
                for _ in range(d):
                    term = term * polys[k]
            out = out + term
        return out

    def __call__(self, values):
        return evaluate_poly(self, values)


def evaluate_poly(p: MultiPoly, values):
    values = np.asarray(values).reshape(-1)
    if values.size != p.nvars:
        raise DimensionMismatch(f"{values.size} values for {p.nvars} variables")
    exact = is_exact(values) and p.exact
    if not exact:
        values = float_array(values)
    acc = GaussianRational(0) if exact else 0j
    for e, c in p.terms:
        t = c if exact else complex(c)
        for k, d in enumerate(e):
            if d:
                t = t * values[k] ** d
        acc = acc + t
    return acc


@dataclass(frozen=True)
class PolyMatrixMap:
    src: tuple[int, int]
    tgt: tuple[int, int]
    F: tuple[tuple[MultiPoly, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        r, s = self.src
        r2, s2 = self.tgt
        if len(self.F) != r2 or any(len(row) != s2 for row in self.F):
            raise DimensionMismatch(f"entry matrix is not {r2} x {s2}")
        for row in self.F:
            for p in row:
                if p.nvars != r * s:
                    raise DimensionMismatch(f"entry with {p.nvars} variables, expected {r * s}")

    @property
    def nvars(self) -> int:
        return self.src[0] * self.src[1]

    @property
    def exact(self) -> bool:
        return all(p.exact for row in self.F for p in row)

    def __call__(self, Z) -> np.ndarray:
        return evaluate(self, Z)

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.F[i][j]

    def conj_coeffs(self) -> "PolyMatrixMap":
        return PolyMatrixMap(
            self.src, self.tgt, tuple(tuple(p.conj_coeffs() for p in row) for row in self.F), self.name
        )

    def to_float(self) -> "PolyMatrixMap":
        return PolyMatrixMap(
            self.src, self.tgt, tuple(tuple(p.to_float() for p in row) for row in self.F), self.name
        )

    def replace_entry(self, i: int, j: int, poly: MultiPoly, name: str = "") -> "PolyMatrixMap":
        rows = [list(row) for row in self.F]
        rows[i][j] = poly
        return PolyMatrixMap(self.src, self.tgt, tuple(tuple(r) for r in rows), name or self.name)

    def coefficient_sites(self) -> list[tuple[int, int, Exponent]]:
        return [(i, j, e) for i, row in enumerate(self.F) for j, p in enumerate(row) for e, _ in p.terms]

    def perturb(self, i: int, j: int, exp: Exponent, delta) -> "PolyMatrixMap":
        """Add ``delta`` to the coefficient of z^exp in entry (i, j)."""
        p = self.F[i][j]
        d = p.as_dict()
        exp = tuple(exp)
        d[exp] = d[exp] + delta if exp in d else delta
        return self.replace_entry(i, j, MultiPoly.from_dict(p.nvars, d), self.name + "+perturbed")

    def to_json(self) -> dict:
        entries = []
        for i, row in enumerate(self.F):
            for j, p in enumerate(row):
                if p.is_zero():
                    continue
                entries.append({
                    "row": i,
                    "col": j,
                    "terms": [{"exp": list(e), "coef": encode_scalar(c)} for e, c in p.terms],
                })
        return {"src": list(self.src), "tgt": list(self.tgt), "entries": entries}


def evaluate(F: PolyMatrixMap, Z) -> np.ndarray:
    Z = np.atleast_2d(np.asarray(Z))
    if Z.shape != tuple(F.src):
        raise DimensionMismatch(f"chart matrix {Z.shape} for source {F.src}")
    values = Z.reshape(-1)
    exact = is_exact(values) and F.exact
    if not exact:
        values = float_array(values)
    r2, s2 = F.tgt
    out = np.empty((r2, s2), dtype=object if exact else complex)
    for i in range(r2):
        for j in range(s2):
            out[i, j] = evaluate_poly(F.F[i][j], values)
    return out


@dataclass(frozen=True)
class FunctionMap:
    """A chart map given by a callable (used for pointwise compositions)."""

    src: tuple[int, int]
    tgt: tuple[int, int]
    func: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __call__(self, Z) -> np.ndarray:
        return np.asarray(self.func(np.atleast_2d(np.asarray(Z))))


def compose_pointwise(F, source=None, target=None, tol: float = DEFAULT_TOL) -> FunctionMap:
    """z -> target . F . source, with automorphisms acting on charts."""

    def func(Z):
        if source is not None:
            Z = act_on_chart(source, Z, tol)
        W = F(Z)
        if target is not None:
            W = act_on_chart(target, W, tol)
        return W

    return FunctionMap(tuple(F.src), tuple(F.tgt), func, getattr(F, "name", "") + "@aut")


# -- built-in witnesses ---------------------------------------------------------

_ONE = GaussianRational(1)


def _zero_rows(r2: int, s2: int, nvars: int) -> list[list[MultiPoly]]:
    return [[MultiPoly(nvars) for _ in range(s2)] for _ in range(r2)]


def _freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def standard_embedding(s: int, rp: int, sp: int) -> PolyMatrixMap:
    """z -> [[I_{r'-1}, 0, 0], [0, z, 0]] (r' x s')."""
    if rp < 2 or s < 1:
        raise ValueError("standard embedding needs r' >= 2 and s >= 1")
    if sp < s + rp - 1:
        raise ValueError(f"blocks do not fit: s' = {sp} < s + r' - 1 = {s + rp - 1}")
    rows = _zero_rows(rp, sp, s)
    for i in range(rp - 1):
        rows[i][i] = MultiPoly.constant(s, _ONE)
    for k in range(s):
        rows[rp - 1][rp - 1 + k] = MultiPoly.variable(s, k)
    return PolyMatrixMap((1, s), (rp, sp), _freeze(rows), f"standard(s={s},r'={rp},s'={sp})")


def whitney_map(s: int, rp: int) -> PolyMatrixMap:
    """Generalized Whitney map into r' x (2s + r' - 2) charts.

    Row 1 is [z_1, ..., z_{s-1}, z_1 z_s, ..., z_s^2, 0, ..., 0]; rows 2..r'
    carry I_{r'-1} in the last r'-1 columns.
    """
    if s < 2 or rp < 1:
        raise ValueError("Whitney map needs s >= 2 and r' >= 1")
    sp = 2 * s + rp - 2
    rows = _zero_rows(rp, sp, s)
    for k in range(s - 1):
        rows[0][k] = MultiPoly.variable(s, k)
    for k in range(s):
        exp = [0] * s
        exp[k] += 1
        exp[s - 1] += 1
        rows[0][s - 1 + k] = MultiPoly.from_dict(s, {tuple(exp): _ONE})
    for i in range(1, rp):
        rows[i][2 * s - 2 + i] = MultiPoly.constant(s, _ONE)
    return PolyMatrixMap((1, s), (rp, sp), _freeze(rows), f"whitney(s={s},r'={rp})")


def constant_map(s: int, C, r: int = 1) -> PolyMatrixMap:
    C = np.atleast_2d(np.asarray(C))
    if np.issubdtype(C.dtype, np.integer):
        C = exact_array(C)
    rp, sp = C.shape
    rows = _zero_rows(rp, sp, r * s)
    for i in range(rp):
        for j in range(sp):
            c = C[i, j] if is_exact(C) else complex(C[i, j])
            rows[i][j] = MultiPoly.constant(r * s, c)
    return PolyMatrixMap((r, s), (rp, sp), _freeze(rows), f"constant({rp}x{sp})")


def shilov_constant(s: int, rp: int, sp: int) -> PolyMatrixMap:
    """The constant map to [I_r' | 0], a Shilov boundary value."""
    C = np.eye(rp, sp)
    return constant_map(s, C.astype(int))


def builtin(name: str, s: int, rp: int, sp: int | None = None) -> PolyMatrixMap:
    if name == "standard":
        if sp is None:
            raise ValueError("standard embedding needs s'")
        return standard_embedding(s, rp, sp)
    if name == "whitney":
        return whitney_map(s, rp)
    if name == "constant":
        if sp is None:
            raise ValueError("constant map needs s'")
        return shilov_constant(s, rp, sp)
    raise ValueError(f"unknown built-in map {name!r}")


def linear_source_change(F: PolyMatrixMap, V: np.ndarray) -> PolyMatrixMap:
    """The map Z -> F(Z V) for an s x s matrix V."""
    r, s = F.src
    V = np.asarray(V)
    exact = is_exact(V)
    subs = []
    for i in range(r):
        for k in range(s):
            terms = {}
            for j in range(s):
                c = V[j, k] if exact else complex(V[j, k])
                if c != 0:
                    exp = [0] * (r * s)
                    exp[i * s + j] = 1
                    terms[tuple(exp)] = c
            subs.append(MultiPoly.from_dict(r * s, terms))
    rows = [[p.substitute(subs) for p in row] for row in F.F]
    return PolyMatrixMap(F.src, F.tgt, _freeze(rows), F.name + "@src")


def linear_target_change(F: PolyMatrixMap, A: np.ndarray, B: np.ndarray) -> PolyMatrixMap:
    """The map Z -> A F(Z) B for constant matrices A (r' x r') and B (s' x s')."""
    r2, s2 = F.tgt
    rows = _zero_rows(r2, s2, F.nvars)
    for i in range(r2):
        for j in range(s2):
            acc = MultiPoly(F.nvars)
            for a in range(r2):
                if A[i, a] == 0:
                    continue
                for b in range(s2):
                    if B[b, j] == 0 or F.F[a][b].is_zero():
                        continue
                    acc = acc + F.F[a][b] * (A[i, a] * B[b, j])
            rows[i][j] = acc
    return PolyMatrixMap(F.src, F.tgt, _freeze(rows), F.name + "@tgt")


def rotated_variant(F: PolyMatrixMap, seed) -> PolyMatrixMap:
    """Z -> A F(Z V) B with random unitaries A, B, V (float coefficients)."""
    from .grassmannian import random_unitary

    rng = as_rng(seed)
    V = random_unitary(F.src[1], rng)
    A = random_unitary(F.tgt[0], rng)
    B = random_unitary(F.tgt[1], rng)
    G = linear_target_change(linear_source_change(F.to_float(), V), A, B)
    return PolyMatrixMap(G.src, G.tgt, G.F, F.name + "@rotated")


# -- map files -----------------------------------------------------------------

def map_from_json(obj: dict, exact: bool = True) -> PolyMatrixMap:
    try:
        r, s = (int(x) for x in obj["src"])
        r2, s2 = (int(x) for x in obj["tgt"])
        nvars = r * s
        rows = _zero_rows(r2, s2, nvars)
        for entry in obj.get("entries", []):
            i, j = int(entry["row"]), int(entry["col"])
            if not (0 <= i < r2 and 0 <= j < s2):
                raise MapFormatError(f"entry ({i}, {j}) outside {r2} x {s2}")
            coeffs: dict = {}
            for term in entry["terms"]:
                exp = tuple(int(e) for e in term["exp"])
                c = decode_scalar(term["coef"], exact)
                coeffs[exp] = coeffs[exp] + c if exp in coeffs else c
            rows[i][j] = MultiPoly.from_dict(nvars, coeffs)
        return PolyMatrixMap((r, s), (r2, s2), _freeze(rows), obj.get("name", "file"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MapFormatError):
            raise
        raise MapFormatError(f"malformed map: {exc}") from exc


def load_map(path, exact: bool = True) -> PolyMatrixMap:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MapFormatError(f"cannot read map file {path}: {exc}") from exc
    return map_from_json(obj, exact)


# -- verification engines ----------------------------------------------------

@dataclass
class VerificationReport:
    check: str
    mode: str
    trials: int
    tol: float
    max_residual: float | None = None
    all_zero: bool | None = None
    n_failures: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.n_failures == 0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "mode": self.mode,
            "trials": self.trials,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "all_zero": self.all_zero,
            "passed": self.passed,
            "n_failures": self.n_failures,
            "failures": self.failures,
        }


MAX_WITNESSES = 5


def trial_rng(seed: int, i: int) -> np.random.Generator:
    """Per-trial generator derived from the master seed by counter."""
    return np.random.default_rng([int(seed), int(i)])


def _record(report: VerificationReport, witness: dict):
    report.n_failures += 1
    if len(report.failures) < MAX_WITNESSES:
        report.failures.append(witness)


def check_null_preservation(F, n_samples: int = 1000, tol: float = DEFAULT_TOL, seed: int = 0,
                            samples: Iterable | None = None) -> VerificationReport:
    """Max ||I - F(Z) F(Z)^H|| over sampled Shilov points Z."""
    r, s = F.src
    r2 = F.tgt[0]
    if samples is None:
        samples = (sample_shilov(r, s, trial_rng(seed, i)) for i in range(n_samples))
    report = VerificationReport("null_preservation", "Sampling", 0, tol, max_residual=0.0)
    I = np.eye(r2)
    for i, Z in enumerate(samples):
        W = float_array(F(Z))
        res = max_abs(I - W @ hermitian(W))
        report.trials += 1
        report.max_residual = max(report.max_residual, res)
        if not res <= tol:
            _record(report, {"trial": i, "z": encode_matrix(Z), "residual": res})
    return report


def sample_orthogonal_pair(s: int, rng) -> tuple[np.ndarray, np.ndarray]:
    rng = as_rng(rng)
    z = random_complex(rng, (1, s), scale=1.0 / np.sqrt(s))
    return z, sample_orthogonal_partner(z, rng)


def check_orthogonality_preservation(F, n_pairs: int = 1000, tol: float = DEFAULT_TOL,
                                     seed: int = 0) -> VerificationReport:
    """Max ||I - F(z) F(w)^H|| over sampled orthogonal pairs [1, z] ⊥ [1, w]."""
    r, s = F.src
    if r != 1:
        raise ValueError("pair sampler needs source rank 1")
    r2 = F.tgt[0]
    report = VerificationReport("orthogonality_preservation", "Sampling", 0, tol, max_residual=0.0)
    I = np.eye(r2)
    for i in range(n_pairs):
        z, w = sample_orthogonal_pair(s, trial_rng(seed, i))
        Fz, Fw = float_array(F(z)), float_array(F(w))
        res = max_abs(I - Fz @ hermitian(Fw))
        report.trials += 1
        report.max_residual = max(report.max_residual, res)
        if not res <= tol:
            _record(report, {"trial": i, "z": encode_matrix(z), "w": encode_matrix(w), "residual": res})
    return report


def polarized_gram(F: PolyMatrixMap, Z, V) -> np.ndarray:
    """G(Z, V) = F(Z) F~(V)^T - I, F~ the coefficient-conjugated map.

    On the diagonal V = conj(Z) this is F(Z) F(Z)^H - I.
    """
    Z = np.atleast_2d(np.asarray(Z))
    V = np.atleast_2d(np.asarray(V))
    if V.size != F.nvars:
        raise DimensionMismatch(f"{V.size} values for {F.nvars} variables")
    V = V.reshape(F.src)
    FZ = evaluate(F, Z)
    FV = evaluate(F.conj_coeffs(), V)
    exact = is_exact(FZ) and is_exact(FV)
    if not exact:
        FZ, FV = float_array(FZ), float_array(FV)
    return FZ @ FV.T - eye(F.tgt[0], exact)


def pit_orthogonality(F: PolyMatrixMap, trials: int = 100, seed: int = 0) -> VerificationReport:
    """Randomized identity test of G(z, v) = 0 on the variety sum_k z_k v_k = 1.

    Each trial draws Gaussian-rational z (pivot: first nonzero coordinate) and
    free v_k for k != pivot, solves for v_pivot, and evaluates G exactly.  A
    single nonzero G disproves orthogonality and is kept as the witness.
    """
    if not isinstance(F, PolyMatrixMap) or not F.exact:
        raise NotExactMode("exact identity testing needs Gaussian-rational coefficients")
    r, s = F.src
    if r != 1:
        raise ValueError("identity test is implemented for source rank 1")
    report = VerificationReport("orthogonality_pit", "ExactPIT", 0, 0.0, all_zero=True)
    for i in range(trials):
        rng = trial_rng(seed, i)
        z = random_exact(rng, (s,))
        nz = [k for k in range(s) if z[k] != 0]
        while not nz:
            z = random_exact(rng, (s,))
            nz = [k for k in range(s) if z[k] != 0]
        j = nz[0]
        v = random_exact(rng, (s,))
        rest = sum((z[k] * v[k] for k in range(s) if k != j), start=GaussianRational(0))
        v[j] = (_ONE - rest) / z[j]
        G = polarized_gram(F, z.reshape(1, s), v.reshape(1, s))
        report.trials += 1
        if any(x != 0 for x in G.reshape(-1)):
            report.all_zero = False
            _record(report, {
                "trial": i,
                "z": encode_matrix(z.reshape(1, s)),
                "v": encode_matrix(v.reshape(1, s)),
                "G": encode_matrix(G),
            })
    return report
