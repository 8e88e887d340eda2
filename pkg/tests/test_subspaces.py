import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassorth.errors import DimensionMismatch, NotHermitian
from grassorth.forms import Signature
from grassorth.scalars import float_array, hermitian, random_complex, random_exact
from grassorth.subspaces import (
    Subspace,
    congruence_diagonalize,
    full_space,
    gram,
    inertia,
    intersect,
    is_maximal_null,
    orth_complement,
    span,
    subspace_signature,
    subspace_sum,
    zero_subspace,
)

from conftest import ex, seeds
from oracles import charpoly_inertia, eig_inertia, numpy_rank


# -- worked examples -------------------------------------------------------------

def test_span_examples():
    V = span([np.array([1, 0]), np.array([2, 0])])
    assert V.dim == 1 and np.allclose(V.basis, [[1, 0]])
    assert span([], ambient=3).dim == 0
    vecs = [[1, 1, 0], [0, 1, 1], [1, 0, -1]]
    assert span(ex(vecs)).dim == numpy_rank(np.array(vecs)) == 2


def test_sum_examples():
    e = np.eye(3)
    assert subspace_sum(span([e[0, :2]]), span([e[1, :2]])).dim == 2
    V = span(ex([[1, 2, 0], [0, 1, 1j]]))
    assert subspace_sum(V, V) == V
    U = span(ex([[1, 1, 0]]))
    W = span(ex([[1, 0, 1], [0, 1, -1]]))
    assert subspace_sum(U, W).dim == 2


def test_intersect_examples():
    e = ex(np.eye(3, dtype=int).tolist())
    I = intersect(span(e[[0, 1]]), span(e[[1, 2]]))
    assert I == span(e[[1]])
    V = span(ex([[1, 2, 3]]))
    assert intersect(V, zero_subspace(3, True)).dim == 0
    X = intersect(span(ex([[1, 1], [0, 1]])), span(ex([[1, 2]])))
    assert X == span(ex([[1, 2]]))


def test_orth_complement_examples():
    C = orth_complement(span(ex([[1, 1]])), Signature(1, 1))
    assert C == span(ex([[1, 1]]))
    assert orth_complement(zero_subspace(3, True), Signature(1, 2)) == full_space(3, True)
    e = ex(np.eye(3, dtype=int).tolist())
    assert orth_complement(span(e[[0]]), Signature(1, 2)) == span(e[[1, 2]])


def test_gram_examples():
    e = ex(np.eye(2, dtype=int).tolist())
    assert np.all(gram(span(e), Signature(1, 1)) == ex([[1, 0], [0, -1]]))
    assert np.all(gram(span(ex([[1, 1]])), Signature(1, 1)) == ex([[0]]))
    G = gram(span(ex([[1, 0, 1], [0, 1, 0]])), Signature(2, 1))
    # <(1,0,1),(1,0,1)> = 1 - 1, <(0,1,0),(0,1,0)> = 1, cross terms vanish
    assert np.all(G == ex([[0, 0], [0, 1]]))


def test_congruence_examples():
    assert inertia(ex([[3, 0], [0, -2]])) == (1, 1, 0)
    assert inertia(ex([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(np.array([[0, 1], [1, 0]], dtype=complex)) == (1, 1, 0)
    assert eig_inertia(np.array([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(ex(np.zeros((3, 3), dtype=int).tolist())) == (0, 0, 3)


def test_congruence_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        congruence_diagonalize(ex([[0, 1], [2, 0]]))
    with pytest.raises(NotHermitian):
        congruence_diagonalize(np.array([[0, 1j], [1j, 0]]))


def test_signature_examples():
    assert subspace_signature(span(ex([[1, 1]])), Signature(1, 1)) == (0, 0, 1)
    assert subspace_signature(full_space(2, True), Signature(1, 1)) == (1, 1, 0)
    assert subspace_signature(span(ex([[1, 0, 1], [0, 1, 0]])), Signature(2, 1)) == (1, 0, 1)


def test_maximal_null_examples():
    assert is_maximal_null(span(ex([[1, 1]])), Signature(1, 1))
    # ||(1,1,0)||^2 under (2,1) is 1 + 1 - 0 = 2
    assert not is_maximal_null(span(ex([[1, 1, 0]])), Signature(2, 1))
    assert is_maximal_null(span(ex([[1, 0, 0, 1], [0, 1, 1, 0]])), Signature(2, 2))
    with pytest.raises(ValueError):
        is_maximal_null(span(ex([[1, 1, 0]])), Signature(1, 1, 1))


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(full_space(2), full_space(3))
    with pytest.raises(DimensionMismatch):
        orth_complement(full_space(2), Signature(1, 2))


def test_json_round_trip():
    V = span(ex([[1, 2j, 0], [0, 1, 3]]))
    assert Subspace.from_json(V.to_json(), exact=True) == V


# -- properties ---------------------------------------------------------------------

def planted_pair(rng, n, exact):
    """Random U, V sharing a random common part."""
    kc, ku, kv = (int(rng.integers(0, n + 1)) for _ in range(3))
    draw = (lambda sh: random_exact(rng, sh, num=5, den=3)) if exact else (lambda sh: random_complex(rng, sh))
    C = draw((kc, n))
    U = span(np.concatenate([C, draw((ku, n))]), ambient=n)
    V = span(np.concatenate([C, draw((kv, n))]), ambient=n)
    return U, V


@given(seeds, st.integers(1, 6), st.booleans())
def test_dimension_formula(seed, n, exact):
    U, V = planted_pair(np.random.default_rng(seed), n, exact)
    S, I = subspace_sum(U, V), intersect(U, V)
    assert S.dim + I.dim == U.dim + V.dim
    assert S.dim == numpy_rank(np.concatenate([float_array(U.basis), float_array(V.basis)]))


@given(seeds, st.integers(0, 3), st.integers(0, 3), st.integers(0, 2), st.booleans())
def test_double_complement(seed, r, s, t, exact):
    if r + s + t == 0:
        return
    sig = Signature(r, s, t)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, sig.n + 1))
    B = random_exact(rng, (k, sig.n), 5, 3) if exact else random_complex(rng, (k, sig.n))
    V = span(B, ambient=sig.n)
    W = orth_complement(orth_complement(V, sig), sig)
    assert subspace_sum(W, V).dim == W.dim  # V inside V^perp-perp
    if t == 0:
        assert orth_complement(V, sig).dim == sig.n - V.dim
        assert W.isclose(V, 1e-8) if not exact else W == V


@given(seeds, st.integers(1, 6), st.booleans())
def test_signature_invariant_under_basis_change(seed, n, exact):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, n + 1))
    sig = Signature(r, n - r) if n else Signature(1, 0)
    k = int(rng.integers(1, n + 1))
    B = random_exact(rng, (k, n), 5, 3) if exact else random_complex(rng, (k, n))
    V = span(B)
    H = gram(V, sig)
    mix = random_exact(rng, (V.dim, V.dim), 5, 3) if exact else random_complex(rng, (V.dim, V.dim))
    if (np.linalg.matrix_rank(float_array(mix)) < V.dim):
        return
    H2 = mix @ H @ hermitian(mix)
    assert inertia(H) == inertia(H2)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2))
def test_signature_of_full_space(r, s, t):
    if r + s + t == 0:
        return
    sig = Signature(r, s, t)
    assert subspace_signature(full_space(sig.n, True), sig) == (r, s, t)
    assert subspace_signature(full_space(sig.n), sig) == (r, s, t)


def random_hermitian(rng, n):
    """U diag(lam) U^H with integer eigenvalues, some of them zero."""
    lam = rng.integers(-3, 4, size=n).astype(float)
    Q, _ = np.linalg.qr(random_complex(rng, (n, n)))
    return Q @ np.diag(lam) @ Q.conj().T


@settings(max_examples=100)
@given(seeds, st.integers(1, 8))
def test_inertia_matches_eigenvalues(seed, n):
    H = random_hermitian(np.random.default_rng(seed), n)
    assert tuple(inertia(H, 1e-8)) == eig_inertia(H, 1e-8)


def random_exact_hermitian(rng, n):
    k = int(rng.integers(1, n + 1))
    B = random_exact(rng, (k, n), 4, 3)
    d = ex([[int(x) for x in rng.integers(-1, 2, size=k)]])[0]
    return hermitian(B) @ (B * d[:, None]) if k else B


@settings(max_examples=25)
@given(seeds, st.integers(1, 5))
def test_exact_inertia_matches_charpoly(seed, n):
    H = random_exact_hermitian(np.random.default_rng(seed), n)
    assert tuple(inertia(H)) == charpoly_inertia(H)


@given(seeds, st.integers(1, 6), st.booleans())
def test_congruence_reconstructs(seed, n, exact):
    rng = np.random.default_rng(seed)
    H = random_exact_hermitian(rng, n) if exact else random_hermitian(rng, n)
    D, P = congruence_diagonalize(H)
    R = P @ H @ hermitian(P)
    if exact:
        assert all(R[i, j] == (D[i] if i == j else 0) for i in range(n) for j in range(n))
        assert np.linalg.matrix_rank(float_array(P)) == n
    else:
        assert np.abs(R - np.diag(D)).max() <= 1e-8 * max(1.0, np.abs(H).max()) * np.abs(P).max() ** 2
