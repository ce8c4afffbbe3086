import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cohh.field import Echelon, Field, FieldError, Matrix, rank, row_reduce, solve

from oracles import dense_rank

FIELDS = [Field(0), Field(2), Field(3), Field(5), Field(7)]


def test_inverse_in_f5():
    F = Field(5)
    assert F.inv(F(2)) == 3


def test_rational_addition_is_exact():
    Q = Field(0)
    assert Q.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_negation_in_characteristic_two():
    F = Field(2)
    assert F.neg(F.one) == 1


def test_inverse_of_zero_raises():
    for F in FIELDS:
        with pytest.raises(ZeroDivisionError):
            F.inv(F.zero)


@pytest.mark.parametrize("text,p", [("Q", 0), ("F2", 2), ("F3", 3), ("F5", 5), ("GF(7)", 7)])
def test_parse_field(text, p):
    assert Field.parse(text).characteristic == p


@pytest.mark.parametrize("text", ["F4", "F1", "R", "", "F0"])
def test_parse_field_rejects(text):
    with pytest.raises((FieldError, ValueError)):
        Field.parse(text)


def test_parse_scalar():
    Q = Field(0)
    assert Q.parse_scalar("-3/6") == Fraction(-1, 2)
    F = Field(5)
    assert F.parse_scalar("1/2") == 3
    with pytest.raises(FieldError):
        F.parse_scalar("1/0")
    with pytest.raises(FieldError):
        Field(3).parse_scalar("1/3")


def test_zero_and_identity_matrices():
    for F in FIELDS:
        z = row_reduce(Matrix.zeros(F, 3, 3))
        assert z.rank == 0 and len(z.kernel) == 3
        i = row_reduce(Matrix.identity(F, 4))
        assert i.rank == 4 and i.kernel == []


def test_all_ones_over_f2():
    F = Field(2)
    red = row_reduce(Matrix.from_dense(F, [[1, 1], [1, 1]]))
    assert red.rank == 1
    # brute force: the only nonzero null vector of F_2^2
    null = [v for v in itertools.product(range(2), repeat=2)
            if any(v) and (v[0] + v[1]) % 2 == 0]
    assert null == [(1, 1)]
    assert red.kernel == [{0: 1, 1: 1}]


def _dense_matrix(F, data):
    return Matrix.from_dense(F, data)


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(matrices, st.sampled_from(FIELDS))
def test_kernel_vectors_are_null(data, F):
    m = _dense_matrix(F, data)
    red = row_reduce(m)
    for v in red.kernel:
        assert m.apply(v) == {}
    assert red.rank + len(red.kernel) == m.ncols


@given(matrices, st.sampled_from(FIELDS))
def test_rank_agrees_with_oracle_and_transpose(data, F):
    m = _dense_matrix(F, data)
    r = rank(m)
    assert r == rank(m.transpose())
    assert r == dense_rank(F.characteristic, [[F(a) for a in row] for row in data], len(data[0]))


@given(matrices, st.sampled_from(FIELDS))
def test_image_spans_columns(data, F):
    m = _dense_matrix(F, data)
    red = row_reduce(m)
    ech = Echelon(F)
    for v in red.image:
        assert ech.insert(v)
    for col in m.columns():
        assert ech.contains(col)


@given(matrices, st.sampled_from(FIELDS), st.data())
def test_solve_finds_solutions(data, F, draw):
    m = _dense_matrix(F, data)
    x = {j: F(draw.draw(st.integers(-3, 3))) for j in range(m.ncols)}
    b = m.apply({j: a for j, a in x.items() if a})
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b


def test_solve_detects_inconsistency():
    F = Field(3)
    m = Matrix.from_dense(F, [[1, 0], [1, 0]])
    assert solve(m, {0: F(1), 1: F(2)}) is None


def test_row_reduce_is_deterministic():
    F = Field(0)
    m = Matrix.from_dense(F, [[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    a, b = row_reduce(m), row_reduce(m)
    assert a.rref == b.rref and a.kernel == b.kernel and a.pivots == [0, 1]
