from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from quatcohom import GaussianRational
from quatcohom.errors import NotASubspace
from quatcohom.linalg import (
    Mat,
    Subspace,
    complement_representatives,
    complexify_vector,
    det,
    inverse,
    leading_principal_minors,
    rank,
    realify_antilinear,
    realify_linear,
    realify_vector,
    rref,
    right_nullspace,
    solve,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)
entries = st.builds(GaussianRational, small, small)


def mat_strategy(max_side=4):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(
                st.lists(entries, min_size=c, max_size=c),
                min_size=r, max_size=r,
            ).map(lambda rows: Mat.from_rows(rows, ncols=c))
        )
    )


@settings(max_examples=60)
@given(mat_strategy())
def test_rref_idempotent_and_rank_nullity(m):
    reduced, pivots = rref(m)
    again, again_pivots = rref(reduced)
    assert again == reduced
    assert again_pivots == pivots
    assert rank(m) == len(pivots)
    null = right_nullspace(m)
    assert rank(m) + len(null) == m.ncols
    for vec in null:
        assert all(x.is_zero() for x in m.apply(vec))


@settings(max_examples=40)
@given(mat_strategy(3), mat_strategy(3))
def test_matmul_against_direct_sum(a, b):
    if a.ncols != b.nrows:
        return
    prod = a @ b
    for i in range(a.nrows):
        for j in range(b.ncols):
            acc = GaussianRational()
            for k in range(a.ncols):
                acc = acc + a.data[i][k] * b.data[k][j]
            assert prod.data[i][j] == acc


def _square_strategy(n):
    return st.lists(
        st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda rows: Mat.from_rows(rows))


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(_square_strategy))
def test_inverse_and_det(m):
    d = det(m)
    if d.is_zero():
        with pytest.raises(ValueError):
            inverse(m)
    else:
        ident = Mat.identity(m.nrows)
        assert m @ inverse(m) == ident
        assert inverse(m) @ m == ident


def test_leading_principal_minors():
    m = Mat.from_rows([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    minors = leading_principal_minors(m)
    assert [x.re for x in minors] == [2, 3, 4]


def test_solve_consistent_and_inconsistent():
    m = Mat.from_rows([[1, 2], [2, 4]])
    assert solve(m, [1, 2]) is not None
    assert solve(m, [1, 3]) is None
    x = solve(Mat.from_rows([[1, 1], [0, 1]]), [3, 1])
    assert x == (GaussianRational(2), GaussianRational(1))


@settings(max_examples=40)
@given(mat_strategy(3), mat_strategy(3))
def test_subspace_dimension_formula(a, b):
    if a.ncols != b.ncols:
        return
    u = Subspace.from_vectors(a.data, a.ncols)
    v = Subspace.from_vectors(b.data, b.ncols)
    s = u.sum(v)
    i = u.intersect(v)
    assert s.dim + i.dim == u.dim + v.dim
    assert s.contains_space(u) and s.contains_space(v)
    assert u.contains_space(i) and v.contains_space(i)


def test_quotient_and_complement():
    amb = 4
    big = Subspace.from_vectors(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], amb)
    small_space = Subspace.from_vectors([[1, 1, 0, 0]], amb)
    assert big.quotient_dim(small_space) == 2
    reps = complement_representatives(big, small_space)
    assert len(reps) == 2
    joined = small_space
    for r in reps:
        joined = joined.sum(Subspace.from_vectors([r], amb))
    assert joined == big
    with pytest.raises(NotASubspace):
        Subspace.from_vectors([[1, 0, 0, 0]], amb).quotient_dim(big)


def test_realify_round_trip_and_antilinear_sign():
    rng = Random(7)
    vec = [GaussianRational(Fraction(rng.randint(-3, 3)),
                            Fraction(rng.randint(-3, 3))) for _ in range(3)]
    assert list(complexify_vector(realify_vector(vec))) == vec

    m = Mat.from_rows([[GaussianRational(0, 1)]])
    lin = realify_linear(m)
    # multiplication by i: (re, im) -> (-im, re)
    assert lin.apply([1, 0]) == (GaussianRational(0), GaussianRational(1))
    anti = realify_antilinear(m)
    # antilinear i*conj: (re, im) -> (im, re)
    assert anti.apply([1, 0]) == (GaussianRational(0), GaussianRational(1))
    assert anti.apply([0, 1]) == (GaussianRational(1), GaussianRational(0))
