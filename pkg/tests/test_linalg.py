from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

import oracles
from qcat.errors import BadPermutation, NotInImage
from qcat.linalg import (
    ExactMatrix,
    cokernel_projection,
    factor_through_epi,
    factor_through_mono,
    format_rational,
    inverse_permutation,
    kernel_basis,
    kron,
    kron_all,
    permutation_map,
    rref,
    to_rational,
)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim=4, min_dim=0):
    r = draw(st.integers(min_dim, max_dim))
    c = draw(st.integers(min_dim, max_dim))
    entries = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return ExactMatrix(r, c, entries)


@st.composite
def low_rank(draw, max_dim=4):
    """Products of two random factors, so kernels and cokernels are common."""
    r = draw(st.integers(1, max_dim))
    k = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    a = ExactMatrix(r, k, draw(st.lists(st.lists(small, min_size=k, max_size=k), min_size=r, max_size=r)))
    b = ExactMatrix(k, c, draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=k, max_size=k)))
    return a @ b


def M(rows):
    return ExactMatrix.from_rows(rows)


def F(m):
    return oracles.to_lists(m)


# -- rationals ------------------------------------------------------------------------


def test_rationals_parse_and_print_in_lowest_terms():
    assert to_rational("6/4") == mpq(3, 2)
    assert to_rational(" -3 ") == -3
    assert to_rational(Fraction(2, 6)) == mpq(1, 3)
    assert format_rational(mpq(-6, 4)) == "-3/2"
    assert format_rational(mpq(4, 2)) == "2"


@pytest.mark.parametrize("bad", [0.5, "", "1/0", "abc"])
def test_rationals_reject_floats_and_garbage(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        to_rational(bad)


@given(st.fractions(max_denominator=50))
def test_format_then_parse_round_trips(x):
    assert to_rational(format_rational(to_rational(x))) == to_rational(x)


def test_ragged_rows_are_rejected():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, [[1, 2], [3]])


# -- kron -------------------------------------------------------------------------------


def test_kron_of_identities_is_identity():
    assert kron(ExactMatrix.identity(2), ExactMatrix.identity(3)) == ExactMatrix.identity(6)


def test_kron_scalar_times_swap():
    assert kron(M([[2]]), M([[0, 1], [1, 0]])) == M([[0, 2], [2, 0]])


def test_kron_row_with_column():
    # entry ((0, i), (j, 0)) = a[0, j] * b[i, 0] = 1
    assert kron(M([[1, 1]]), M([[1], [1]])) == M([[1, 1], [1, 1]])


@given(matrices(3, min_dim=1), matrices(3, min_dim=1))
def test_kron_matches_oracle(a, b):
    assert F(kron(a, b)) == oracles.kron(F(a), F(b))


@given(matrices(3), matrices(3))
def test_kron_shape_including_empty_factors(a, b):
    assert kron(a, b).shape == (a.rows * b.rows, a.cols * b.cols)


@given(matrices(3, min_dim=1), matrices(3, min_dim=1), matrices(3, min_dim=1))
def test_kron_is_associative_and_unital(a, b, c):
    one = ExactMatrix.identity(1)
    assert kron(kron(a, b), c) == kron(a, kron(b, c)) == kron_all([a, b, c])
    assert kron(one, a) == a == kron(a, one)


@given(matrices(3, min_dim=1), matrices(3, min_dim=1), matrices(3, min_dim=1), matrices(3, min_dim=1))
def test_kron_interchange_law(a, b, c, d):
    if a.cols == c.rows and b.cols == d.rows:
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


# -- kernels and cokernels ------------------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3)).shape == (3, 0)
    assert kernel_basis(ExactMatrix.zeros(2, 2)) == ExactMatrix.identity(2)
    assert kernel_basis(M([[1, 1]])) == M([[1], [-1]])


def test_cokernel_examples():
    q, d = cokernel_projection(ExactMatrix.identity(2))
    assert d == 0 and q.shape == (0, 2)
    q, d = cokernel_projection(ExactMatrix.zeros(2, 2))
    assert d == 2 and q == ExactMatrix.identity(2)
    q, d = cokernel_projection(M([[1], [1]]))
    assert d == 1 and q == M([[1, -1]])


@given(st.one_of(matrices(), low_rank()))
def test_kernel_dimension_and_annihilation(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    r = oracles.rank(F(m)) if m.rows and m.cols else 0
    assert k.cols == m.cols - r
    assert k.rank() == k.cols
    # reduced column echelon form: the transpose is in reduced row echelon form
    rows, pivots = rref(k.T)
    assert ExactMatrix._raw(len(rows), k.rows, dict(enumerate(rows))) == k.T


@given(st.one_of(matrices(), low_rank()))
def test_cokernel_dimension_and_annihilation(m):
    q, d = cokernel_projection(m)
    assert (q @ m).is_zero()
    r = oracles.rank(F(m)) if m.rows and m.cols else 0
    assert d == m.rows - r == q.rows
    assert q.rank() == q.rows


# -- factorisation -----------------------------------------------------------------------


def test_factor_examples():
    h = M([[1, 2], [3, 4]])
    assert factor_through_mono(ExactMatrix.identity(2), h) == h
    assert factor_through_mono(M([[1], [1]]), M([[3], [3]])) == M([[3]])
    with pytest.raises(NotInImage) as info:
        factor_through_mono(M([[1], [1]]), M([[1], [2]]))
    assert info.value.witness == 0


@given(low_rank(), matrices(3, min_dim=1))
def test_factor_through_kernel_inclusion(m, coeffs):
    i = kernel_basis(m)
    if i.cols == 0 or coeffs.rows != i.cols:
        return
    h = i @ coeffs
    u = factor_through_mono(i, h)
    assert i @ u == h
    assert factor_through_mono(i, i) == ExactMatrix.identity(i.cols)


@given(matrices(4, min_dim=1))
def test_factor_through_mono_agrees_with_column_space_oracle(h):
    i = kernel_basis(M([[1, 1, 0, 0][: h.rows]])) if h.rows >= 2 else ExactMatrix.identity(h.rows)
    expected = all(oracles.in_column_space(F(i), [F(h)[r][j] for r in range(h.rows)]) for j in range(h.cols))
    try:
        u = factor_through_mono(i, h)
        assert expected and i @ u == h
    except NotInImage as exc:
        assert not expected
        col = [F(h)[r][exc.witness] for r in range(h.rows)]
        assert not oracles.in_column_space(F(i), col)


def test_factor_through_epi():
    e = M([[1, 1, 0], [0, 0, 1]])
    h = M([[5, 5, 7]])
    assert factor_through_epi(e, h) @ e == h
    with pytest.raises(NotInImage):
        factor_through_epi(e, M([[1, 2, 3]]))


# -- permutations ------------------------------------------------------------------------


def test_permutation_examples():
    assert permutation_map((1, 2), [2, 3]) == ExactMatrix.identity(6)
    swap = permutation_map((2, 1), [2, 3])
    assert F(swap) == oracles.permutation_matrix((2, 1), [2, 3])
    assert permutation_map((2, 1, 3), [2, 2, 2]) == kron(permutation_map((2, 1), [2, 2]), ExactMatrix.identity(2))


@pytest.mark.parametrize("perm", [(1, 1), (0, 1), (1, 2, 4), (2,)])
def test_bad_permutations(perm):
    with pytest.raises(BadPermutation):
        permutation_map(perm, [2, 2])


perms = st.integers(1, 5).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@given(perms, st.data())
def test_permutation_matches_oracle(perm, data):
    dims = data.draw(st.lists(st.integers(1, 3), min_size=len(perm), max_size=len(perm)))
    assert F(permutation_map(perm, dims)) == oracles.permutation_matrix(perm, dims)


@given(perms, st.data())
def test_permutation_composition(sigma, data):
    n = len(sigma)
    tau = data.draw(st.permutations(list(range(1, n + 1))))
    dims = data.draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))
    moved = [dims[t - 1] for t in tau]
    # first tau, then sigma: slot k ends up holding input factor tau[sigma[k]]
    composite = tuple(tau[s - 1] for s in sigma)
    assert permutation_map(composite, dims) == permutation_map(sigma, moved) @ permutation_map(tau, dims)
    inv = inverse_permutation(sigma)
    assert permutation_map(inv, [dims[s - 1] for s in sigma]) @ permutation_map(sigma, dims) == ExactMatrix.identity(
        permutation_map(sigma, dims).rows
    )
