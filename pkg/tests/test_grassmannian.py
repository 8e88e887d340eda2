import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grassorth.errors import NotInChart, RankDeficient, ZeroVector
from grassorth.forms import Signature, inner_product
from grassorth.grassmannian import (
    GrassPoint,
    PointClass,
    chart_point,
    classify_point,
    in_domain,
    in_shilov,
    is_orthogonal,
    pairing,
    point_from_matrix,
    sample_orthogonal_partner,
    sample_shilov,
    to_chart,
)
from grassorth.scalars import float_array, random_complex, random_exact
from grassorth.subspaces import is_maximal_null, orth_complement, span, subspace_sum

from conftest import ex, seeds

shapes = st.tuples(st.integers(1, 3), st.integers(1, 4))


def test_point_from_matrix_examples():
    p = point_from_matrix(ex([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert p.subspace() == span(ex([[1, 0, 0, 0], [0, 1, 0, 0]]))
    with pytest.raises(RankDeficient):
        point_from_matrix(ex([[1, 0, 1, 0], [2, 0, 2, 0]]))
    q = point_from_matrix(ex([[0, 1, 0, 1], [1, 0, 1, 0]]))
    assert np.all(q.A == ex([[1, 0, 1, 0], [0, 1, 0, 1]]))


def test_chart_point_examples():
    assert np.all(chart_point(ex([[0, 0]])).A == ex([[1, 0, 0]]))
    assert np.all(chart_point(ex([[1, 0]])).A == ex([[1, 1, 0]]))
    assert np.all(chart_point(ex([[1, 0], [0, 1]])).A == ex([[1, 0, 1, 0], [0, 1, 0, 1]]))


def test_to_chart_examples():
    assert np.all(to_chart(chart_point(ex([[0, 0]]))) == ex([[0, 0]]))
    with pytest.raises(NotInChart):
        to_chart(point_from_matrix(ex([[0, 0, 1, 0], [0, 0, 0, 1]])))
    p = point_from_matrix(ex([[2, 0, 4, 0], [0, 1, 0, 3]]))
    assert np.all(to_chart(p) == ex([[2, 0], [0, 3]]))


def test_pairing_examples():
    p = point_from_matrix(ex([[1, 0, 0, 0], [0, 1, 0, 0]]))
    q = point_from_matrix(ex([[0, 0, 1, 0], [0, 0, 0, 1]]))
    assert np.all(pairing(p, q) == 0)
    base = chart_point(ex([[0, 0]]))
    assert np.all(pairing(base, base) == ex([[1]]))
    a, b = point_from_matrix(ex([[1, 1, 0]])), point_from_matrix(ex([[1, 1, 1]]))
    assert np.all(pairing(a, b) == ex([[1 - 1 - 0]]))


def test_orthogonality_examples():
    p = point_from_matrix(ex([[1, 0, 0, 0], [0, 1, 0, 0]]))
    q = point_from_matrix(ex([[0, 0, 1, 0], [0, 0, 0, 1]]))
    assert is_orthogonal(p, q)
    # 1 - (1*1 + 0*1) = 0
    assert is_orthogonal(chart_point(ex([[1, 0]])), chart_point(ex([[1, 1]])))
    base = chart_point(ex([[0, 0]]))
    assert not is_orthogonal(base, base)


def test_classification_examples():
    Z = sample_shilov(2, 3, 1)
    assert classify_point(chart_point(Z)) is PointClass.NULL
    assert classify_point(chart_point(np.zeros((2, 2)))) is PointClass.POSITIVE
    p = point_from_matrix(ex([[1, 0, 0], [0, 0, 1]]))
    # A I_{2,1} A^H = diag(1, -1)
    assert np.all(pairing(p, p) == ex([[1, 0], [0, -1]]))
    assert classify_point(p) is PointClass.INDEFINITE


def test_domain_and_shilov_examples():
    assert in_domain(np.zeros((1, 2))) and not in_shilov(np.zeros((1, 2)))
    assert in_shilov(np.array([[1, 1]]) / np.sqrt(2))
    assert in_shilov(np.eye(2, 3))
    assert not in_domain(np.array([[1, 1]]))


def test_sampler_examples():
    Z = sample_shilov(3, 3, 4)
    assert in_shilov(Z, 1e-10)
    assert abs(abs(np.linalg.det(Z)) - 1) <= 1e-10
    assert np.array_equal(sample_shilov(2, 4, 9), sample_shilov(2, 4, 9))
    with pytest.raises(ValueError):
        sample_shilov(3, 2, 0)


def test_partner_examples():
    w = sample_orthogonal_partner(np.array([[1, 0]]), 3)
    assert abs(np.conj(w[0, 0]) - 1) <= 1e-12
    with pytest.raises(ZeroVector):
        sample_orthogonal_partner(np.zeros((1, 3)), 0)
    z = ex([[0, 2, 1j]])
    w = sample_orthogonal_partner(z, 5)
    assert is_orthogonal(chart_point(z), chart_point(w))


@given(seeds, st.integers(1, 5))
def test_partner_contract(seed, s):
    rng = np.random.default_rng(seed)
    z = random_complex(rng, (1, s))
    w = sample_orthogonal_partner(z, rng)
    assert is_orthogonal(chart_point(z), chart_point(w), 1e-10 * max(1, np.abs(w).max()))


@given(seeds, shapes, st.booleans())
def test_orthogonality_matches_complement(seed, shape, orth):
    r, s = shape
    rng = np.random.default_rng(seed)
    sig = Signature(r, s)
    p = chart_point(random_exact(rng, (r, s), 4, 3))
    if orth and r <= s:
        C = orth_complement(p.subspace(), sig)
        A = random_exact(rng, (r, C.dim), 4, 3) @ C.basis
        try:
            q = point_from_matrix(A)
        except RankDeficient:
            return
    else:
        q = chart_point(random_exact(rng, (r, s), 4, 3))
    contained = subspace_sum(orth_complement(p.subspace(), sig), q.subspace()).dim == s
    assert is_orthogonal(p, q) == contained == is_orthogonal(q, p)


@given(seeds, st.integers(1, 5))
def test_rank_one_reduces_to_vectors(seed, s):
    rng = np.random.default_rng(seed)
    z, w = random_exact(rng, (1, s), 4, 3), random_exact(rng, (1, s), 4, 3)
    P = pairing(chart_point(z), chart_point(w))
    u = np.concatenate([ex([[1]]), z], axis=1)[0]
    v = np.concatenate([ex([[1]]), w], axis=1)[0]
    assert P[0, 0] == inner_product(u, v, Signature(1, s))


@given(seeds, shapes)
def test_shilov_points_are_maximal_null(seed, shape):
    r, s = shape
    if r > s:
        return
    Z = sample_shilov(r, s, seed)
    p = chart_point(Z)
    assert in_shilov(Z, 1e-10)
    assert classify_point(p) is PointClass.NULL
    assert is_maximal_null(p.subspace(), Signature(r, s), 1e-9)


@given(seeds, shapes)
def test_classification_is_representative_independent(seed, shape):
    r, s = shape
    rng = np.random.default_rng(seed)
    A = random_exact(rng, (r, r + s), 4, 3)
    G = random_exact(rng, (r, r), 4, 3)
    if np.linalg.matrix_rank(float_array(A)) < r or np.linalg.matrix_rank(float_array(G)) < r:
        return
    assert classify_point(point_from_matrix(A)) is classify_point(point_from_matrix(G @ A))


@given(seeds, shapes)
def test_json_round_trip(seed, shape):
    r, s = shape
    p = chart_point(random_exact(np.random.default_rng(seed), (r, s)))
    assert GrassPoint.from_json(p.to_json(), exact=True) == p
