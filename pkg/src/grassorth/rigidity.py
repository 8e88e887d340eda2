"""Rigidity analyzer for local orthogonal maps G(1, s) -> G(r', s').

The pipeline follows the structure of the rigidity argument for rank-1
sources: regime lookup, null slices N_p = V_F(p) ∩ V_F(p^⊥), the common null
subspace N, the splitting V_F(p) = L_p ⊕ N with L_p inside a nondegenerate
complement K of N in N^⊥, and a projective linearity test for p -> L_p.

"Span of the image of an open set" is decided by sampling: draws are added
until the dimension has been stable for 3 (r' + s') consecutive additions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    DegenerateComplement,
    EmptyIntersection,
    GrassorthError,
    SamplerExhausted,
    VerificationFailed,
)
from .forms import Signature
from .grassmannian import (
    sample_open_point,
    sample_orthogonal_partner,
    shilov_residual,
)
from .maps import trial_rng
from .scalars import (
    DEFAULT_TOL,
    GaussianRational,
    as_rng,
    encode_matrix,
    eye,
    float_array,
    is_exact,
    max_abs,
    random_complex,
    random_exact,
)
from .subspaces import (
    Subspace,
    containment_residual,
    form_residual,
    full_space,
    intersect,
    kernel,
    orth_complement,
    span,
    subspace_signature,
    subspace_sum,
    zero_subspace,
)


# -- regimes -------------------------------------------------------------------

class RegimeTag(enum.Enum):
    CONSTANT = "Constant"
    LINEAR_RIGID = "LinearRigid"
    NO_RIGIDITY = "NoRigidity"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    bounds: tuple[int, int]
    hypotheses_ok: bool = True

    @property
    def hypothesis_violation(self) -> bool:
        return not self.hypotheses_ok

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "bounds": list(self.bounds),
            "hypothesis_violation": self.hypothesis_violation,
        }


def regime(s: int, rp: int, sp: int) -> Regime:
    """Constant if s'-r' < s-1, LinearRigid if s-1 <= s'-r' < 2s-2, else NoRigidity.

    Parameters outside s >= 2, 2 <= r' <= s' still get the arithmetic answer,
    flagged with ``hypotheses_ok=False``.
    """
    lo, hi = s - 1, 2 * s - 2
    gap = sp - rp
    if gap < lo:
        tag = RegimeTag.CONSTANT
    elif gap < hi:
        tag = RegimeTag.LINEAR_RIGID
    else:
        tag = RegimeTag.NO_RIGIDITY
    ok = s >= 2 and 2 <= rp <= sp
    return Regime(tag, (lo, hi), ok)


# -- helpers -----------------------------------------------------------------------

def _src_tgt(F):
    r, s = F.src
    if r != 1:
        raise ValueError("the analyzer handles source rank 1 only")
    rp, sp = F.tgt
    return s, rp, sp


def image_plane(F, z) -> Subspace:
    """V_F(p) = row space of [I_r', F(z)]; already in canonical form."""
    W = np.asarray(F(z))
    rp = W.shape[0]
    exact = is_exact(W)
    if not exact:
        W = W.astype(complex)
    return Subspace(rp + W.shape[1], np.concatenate([eye(rp, exact), W], axis=1))


def window_for(F) -> int:
    rp, sp = F.tgt
    return 3 * (rp + sp)


@dataclass
class SpanEstimate:
    space: Subspace
    draws: int
    saturated: bool


def saturated_span(draw: Callable[[int], Subspace], ambient: int, window: int,
                   max_draws: int, tol: float, exact: bool = False) -> SpanEstimate:
    """Sum of draw(0), draw(1), ... until the dimension is stable for ``window`` draws."""
    acc = zero_subspace(ambient, exact)
    stable = 0
    i = 0
    while i < max_draws:
        nxt = subspace_sum(acc, draw(i), tol)
        i += 1
        if nxt.dim == acc.dim:
            stable += 1
        else:
            stable = 0
        acc = nxt
        if stable >= window or acc.dim == ambient:
            return SpanEstimate(acc, i, True)
    return SpanEstimate(acc, i, False)


def _open_point(s: int, rng, exact: bool):
    return sample_open_point(s, rng, exact=exact)


# -- null slices and the common null subspace ----------------------------------------

def null_slice(F, z, n_partners: int = 200, tol: float = DEFAULT_TOL, seed=0,
               return_estimate: bool = False):
    """N_p = V_F(p) ∩ V_F(p^⊥), with V_F(p^⊥) the saturated span over partners q ⊥ p."""
    s, rp, sp = _src_tgt(F)
    Vp = image_plane(F, z)
    rng = as_rng(seed)

    def draw(_):
        return image_plane(F, sample_orthogonal_partner(z, rng, tol))

    est = saturated_span(draw, rp + sp, window_for(F), max(n_partners, 1), tol, Vp.exact)
    N = intersect(Vp, est.space, tol)
    if return_estimate:
        return N, est
    return N


def common_null_subspace(F, n_points: int = 4, n_partners: int = 200, tol: float = DEFAULT_TOL,
                         seed=0, exact: bool = False, verify: bool = True) -> Subspace:
    """Intersection of null slices over sampled base points.

    With ``verify`` the result is checked to be null and to lie in V_F(p)
    for fresh samples.
    """
    s, rp, sp = _src_tgt(F)
    sig = Signature(rp, sp)
    N = None
    for i in range(n_points):
        rng = trial_rng(seed, i)
        z = _open_point(s, rng, exact)
        Ni = null_slice(F, z, n_partners, tol, rng)
        N = Ni if N is None else intersect(N, Ni, tol)
    if N is None or N.dim == 0:
        raise EmptyIntersection("null slices have no common vector")
    if verify:
        a, b, c = subspace_signature(N, sig, tol)
        if (a, b) != (0, 0):
            raise VerificationFailed(f"common slice has signature {(a, b, c)}, not null")
        for i in range(n_points):
            z = _open_point(s, trial_rng(seed, 10_000 + i), exact)
            Vp = image_plane(F, z)
            if subspace_sum(Vp, N, tol).dim != Vp.dim:
                raise VerificationFailed("common null subspace leaves V_F(p) at a fresh sample")
    return N


# -- splitting V_F(p) = L_p ⊕ N ----------------------------------------------------

@dataclass
class Decomposition:
    N: Subspace
    N_perp: Subspace
    K: Subspace
    lines: list = field(default_factory=list)  # (z, L_p)
    bad_lines: int = 0

    @property
    def F2(self) -> Subspace:
        return self.N


def euclidean_complement(N: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """{w : sum_i n_i conj(w_i) = 0 for n in N} (the auxiliary positive-definite metric)."""
    if N.dim == 0:
        return full_space(N.ambient, N.exact)
    return span(kernel(np.conjugate(N.basis), tol), tol)


def nondegenerate_complement(N: Subspace, sig: Signature, tol: float = DEFAULT_TOL,
                             seed=0, retries: int = 5) -> tuple[Subspace, Subspace]:
    """(N^⊥, K) with K ⊕ N = N^⊥ and the form nondegenerate on K."""
    Nperp = orth_complement(N, sig, tol)
    target = Nperp.dim - N.dim
    K = intersect(Nperp, euclidean_complement(N, tol), tol)
    rng = as_rng(seed)
    for attempt in range(retries + 1):
        if K.dim == target and subspace_signature(K, sig, tol).c == 0:
            return Nperp, K
        # random shear inside N^⊥: k_i + sum_j c_ij n_j
        base = K.basis if K.dim == target else Nperp.basis[:target]
        if N.exact:
            C = random_exact(rng, (base.shape[0], N.dim))
        else:
            C = random_complex(rng, (base.shape[0], N.dim))
        K = span(base + C @ N.basis, tol)
    raise DegenerateComplement("no nondegenerate complement of N in N^⊥ found")


def decompose(F, N: Subspace, n_points: int = 20, tol: float = DEFAULT_TOL, seed=0,
              exact: bool = False) -> Decomposition:
    s, rp, sp = _src_tgt(F)
    if N.dim != rp - 1:
        raise ValueError(f"decompose needs dim N = r' - 1 = {rp - 1}, got {N.dim}")
    sig = Signature(rp, sp)
    Nperp, K = nondegenerate_complement(N, sig, tol, trial_rng(seed, 99_999))
    out = Decomposition(N, Nperp, K)
    for i in range(n_points):
        z = _open_point(s, trial_rng(seed, i), exact)
        L = intersect(image_plane(F, z), K, tol)
        if L.dim != 1:
            out.bad_lines += 1
            continue
        out.lines.append((z, L))
    return out


# -- projective linearity ---------------------------------------------------------------

@dataclass
class LinearFit:
    model: np.ndarray | None  # (r'+s') x (s+1)
    pinned: int
    residual: float


def fit_linear_model(lines: list, tol: float = DEFAULT_TOL) -> LinearFit:
    """Fit L_p ∝ M (1, z) over sampled lines.

    Each direction is pinned to 1 in the coordinate with the largest average
    magnitude; the unknown M then solves the homogeneous linear system
    M u_i - (m_pin . u_i) l_i = 0.  Float mode takes the least singular
    vector, exact mode an exact kernel vector.  The residual is the largest
    deviation between the model's pinned direction and the observed one.
    """
    if not lines:
        return LinearFit(None, -1, float("inf"))
    exact = all(is_exact(L.basis) for _, L in lines)
    ells = [L.basis[0] for _, L in lines]
    us = []
    for z, _ in lines:
        z = np.asarray(z).reshape(-1)
        one = GaussianRational(1) if exact else 1.0
        us.append(np.concatenate([np.array([one], dtype=object if exact else complex), z]))
    mags = np.array([np.abs(float_array(l)) / np.linalg.norm(float_array(l)) for l in ells])
    pin = int(np.argmax(mags.mean(axis=0)))
    n, m = len(ells[0]), len(us[0])
    rows = []
    pinned = []
    for l, u in zip(ells, us):
        if (l[pin] == 0) if exact else abs(l[pin]) <= tol:
            return LinearFit(None, pin, float("inf"))
        l = l / l[pin]
        pinned.append(l)
        for a in range(n):
            if a == pin:
                continue
            row = [GaussianRational(0) if exact else 0j] * (n * m)
            for b in range(m):
                row[a * m + b] = row[a * m + b] + u[b]
                row[pin * m + b] = row[pin * m + b] - l[a] * u[b]
            rows.append(row)
    if exact:
        A = np.array(rows, dtype=object)
        K = kernel(A, 0.0)
        if K.shape[0] == 0:
            return LinearFit(None, pin, float("inf"))
        x = K[0]
    else:
        A = np.array(rows, dtype=complex)
        _, _, Vh = np.linalg.svd(A)
        x = np.conj(Vh[-1])
    M = x.reshape(n, m)
    worst = 0.0
    for l, u in zip(pinned, us):
        pred = M @ u
        if (pred[pin] == 0) if exact else abs(pred[pin]) <= tol:
            return LinearFit(M, pin, float("inf"))
        dev = pred / pred[pin] - l
        worst = max(worst, max_abs(float_array(dev)) if not exact else (0.0 if all(d == 0 for d in dev) else max_abs(float_array(dev))))
    return LinearFit(M, pin, worst)


# -- classification ------------------------------------------------------------------

class MapClass(enum.Enum):
    CONSTANT = "Constant"
    STANDARD_LINEAR = "StandardLinear"
    NULL_MAP = "NullMap"
    OTHER = "Other"


@dataclass
class RigidityConfig:
    tol: float = DEFAULT_TOL
    fit_tol: float = 1e-8
    n_points: int = 4
    n_partners: int = 200
    n_fit: int = 24
    n_check: int = 20
    n_const: int = 8
    seed: int = 0
    exact: bool = False


@dataclass
class RigidityReport:
    regime: Regime
    classification: MapClass
    common_null: Subspace | None = None
    complement_K: Subspace | None = None
    linear_model: np.ndarray | None = None
    residuals: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    seeds: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "regime": self.regime.to_json(),
            "classification": self.classification.value,
            "common_null": None if self.common_null is None else self.common_null.to_json(),
            "K": None if self.complement_K is None else self.complement_K.to_json(),
            "linear_model": None if self.linear_model is None else encode_matrix(self.linear_model),
            "residuals": self.residuals,
            "diagnostics": self.diagnostics,
            "seeds": self.seeds,
        }


def _diff(A, B) -> float:
    if is_exact(A) and is_exact(B):
        D = A - B
        return 0.0 if all(x == 0 for x in D.reshape(-1)) else max_abs(float_array(D))
    return max_abs(float_array(A) - float_array(B))


def sandwich_residuals(F, N: Subspace, n_samples: int, seed, exact: bool = False) -> dict:
    """Containment N ⊂ V_F(p) and orthogonality V_F(p) ⊥ N on fresh samples."""
    s, rp, sp = _src_tgt(F)
    sig = Signature(rp, sp)
    inside = 0.0
    perp = 0.0
    for i in range(n_samples):
        z = _open_point(s, trial_rng(seed, 20_000 + i), exact)
        Vp = image_plane(F, z)
        inside = max(inside, containment_residual(N, Vp))
        perp = max(perp, form_residual(Vp, N, sig))
    return {"sandwich_containment": inside, "sandwich_orthogonality": perp}


def classify_map(F, config: RigidityConfig | None = None) -> RigidityReport:
    cfg = config or RigidityConfig()
    s, rp, sp = _src_tgt(F)
    tol, seed, exact = cfg.tol, cfg.seed, cfg.exact
    report = RigidityReport(regime(s, rp, sp), MapClass.OTHER, seeds={"master": seed})
    if not report.regime.hypotheses_ok:
        report.diagnostics.append("parameters outside s >= 2, 2 <= r' <= s'")

    # constancy
    vals = [F(_open_point(s, trial_rng(seed, 30_000 + i), exact)) for i in range(cfg.n_const)]
    dev = max(_diff(v, vals[0]) for v in vals)
    report.residuals["constancy"] = dev
    if dev <= tol:
        report.classification = MapClass.CONSTANT
        return report

    # null map: every open sample lands on the Shilov boundary
    shil = max(shilov_residual(float_array(v)) for v in vals)
    report.residuals["open_shilov"] = shil
    if shil <= tol:
        report.classification = MapClass.NULL_MAP
        return report

    if report.regime.tag is RegimeTag.NO_RIGIDITY:
        report.diagnostics.append("s' - r' >= 2s - 2: common null subspace is not guaranteed")
    try:
        N = common_null_subspace(F, cfg.n_points, cfg.n_partners, tol, seed, exact)
        report.common_null = N
        report.residuals["common_null_dim"] = N.dim
        if N.dim != rp - 1:
            report.diagnostics.append(f"common null subspace has dim {N.dim}, expected {rp - 1}")
            return report
        report.residuals.update(sandwich_residuals(F, N, cfg.n_check, seed, exact))
        dec = decompose(F, N, cfg.n_fit, tol, seed, exact)
        report.complement_K = dec.K
        report.residuals["bad_lines"] = dec.bad_lines
        if dec.bad_lines:
            report.diagnostics.append(f"{dec.bad_lines} samples gave dim L_p != 1")
            return report
        fit = fit_linear_model(dec.lines, tol)
        report.linear_model = fit.model
        report.residuals["linear_model"] = fit.residual
        if fit.residual <= cfg.fit_tol:
            report.classification = MapClass.STANDARD_LINEAR
        else:
            report.diagnostics.append("L_p is not a projectively linear function of p")
    except (GrassorthError, ValueError, np.linalg.LinAlgError) as exc:
        report.diagnostics.append(f"{type(exc).__name__}: {exc}")
    return report


# -- proof inequalities -----------------------------------------------------------------

def sample_orthogonal_frame(s: int, seed, tol: float = DEFAULT_TOL, exact: bool = False,
                            attempts: int = 20, margin: float = 1e-3) -> list[np.ndarray]:
    """s + 1 pairwise orthogonal non-null chart points of P^{1,s}.

    Greedy: each homogeneous vector is drawn from the orthogonal complement of
    the previous ones; near-null or out-of-chart draws restart the frame.
    """
    sig = Signature(1, s)
    rng = as_rng(seed)
    for _ in range(attempts):
        X = []
        ok = True
        for _i in range(s + 1):
            C = orth_complement(span(X, tol, ambient=s + 1) if X else zero_subspace(s + 1, exact), sig, tol)
            if exact:
                coef = random_exact(rng, (C.dim,), num=8, den=4)
            else:
                coef = random_complex(rng, (C.dim,))
            x = coef @ C.basis
            if exact:
                q = x[0].abs2() - sum((y.abs2() for y in x[1:]), start=0)
                if x[0] == 0 or q == 0:
                    ok = False
                    break
            else:
                nrm2 = float(np.sum(np.abs(x) ** 2))
                q = abs(x[0]) ** 2 - float(np.sum(np.abs(x[1:]) ** 2))
                if abs(x[0]) ** 2 <= margin * nrm2 or abs(q) <= margin * nrm2:
                    ok = False
                    break
            X.append(x)
        if ok:
            return [(x[1:] / x[0]).reshape(1, s) for x in X]
    raise SamplerExhausted(f"no orthogonal frame of size {s + 1} found")


@dataclass
class DimensionBoundReport:
    k: int
    D: int
    lower: int
    upper: int
    frame_residual: float
    frame: list

    @property
    def holds(self) -> bool:
        return self.lower <= self.D <= self.upper

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "D": self.D,
            "lower": self.lower,
            "upper": self.upper,
            "holds": self.holds,
            "frame_residual": self.frame_residual,
            "frame": [encode_matrix(z) for z in self.frame],
        }


def dimension_bound_check(F, s: int | None = None, tol: float = DEFAULT_TOL, seed=0,
                          exact: bool = False, n_partners: int = 200,
                          retries: int = 3) -> DimensionBoundReport:
    """Check (s+1)(r'-k) + k <= dim sum_i V_F(p_i) <= r' + s' - k on an orthogonal frame."""
    s0, rp, sp = _src_tgt(F)
    s = s0 if s is None else s
    frame = None
    for attempt in range(retries + 1):
        try:
            frame = sample_orthogonal_frame(s, trial_rng(seed, attempt), tol, exact)
            break
        except SamplerExhausted:
            if attempt == retries:
                raise
    res = 0.0
    for i, z in enumerate(frame):
        for w in frame[i + 1:]:
            res = max(res, abs(complex(1 - (z @ np.conjugate(w).T)[0, 0])))
    k = null_slice(F, frame[0], n_partners, tol, trial_rng(seed, 777)).dim
    total = zero_subspace(rp + sp, exact)
    for z in frame:
        total = subspace_sum(total, image_plane(F, z), tol)
    return DimensionBoundReport(k, total.dim, (s + 1) * (rp - k) + k, rp + sp - k, res, frame)


# -- hyperplane span criterion -----------------------------------------------------------

@dataclass
class HyperplaneReport:
    full_dim: int
    hyperplane_dims: list
    null_expected: bool
    null_confirmed: bool

    def to_json(self) -> dict:
        return {
            "full_dim": self.full_dim,
            "hyperplane_dims": self.hyperplane_dims,
            "null_expected": self.null_expected,
            "null_confirmed": self.null_confirmed,
        }


def hyperplane_span_test(F, n_hyperplanes: int = 3, tol: float = DEFAULT_TOL, seed=0,
                         exact: bool = False, max_draws: int = 200) -> HyperplaneReport:
    """Compare dim V_F(U) with dim V_F(H ∩ U) for hyperplanes H = p^⊥."""
    s, rp, sp = _src_tgt(F)
    n = rp + sp
    win = window_for(F)
    rng = trial_rng(seed, 0)
    full = saturated_span(lambda _: image_plane(F, _open_point(s, rng, exact)), n, win, max_draws, tol, exact)
    dims = []
    for h in range(n_hyperplanes):
        hr = trial_rng(seed, 1 + h)
        p = _open_point(s, hr, exact)
        est = saturated_span(
            lambda _: image_plane(F, sample_orthogonal_partner(p, hr, tol)), n, win, max_draws, tol, exact
        )
        dims.append(est.space.dim)
    expected = all(d == full.space.dim for d in dims)
    confirmed = all(
        shilov_residual(float_array(F(_open_point(s, trial_rng(seed, 500 + i), exact)))) <= tol
        for i in range(8)
    )
    return HyperplaneReport(full.space.dim, dims, expected, expected and confirmed)
