"""Property tests for the exact rational linear algebra kernel."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from auslander.exactlin import Mat, col_space_basis, rat, span_contains

entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def mats(rows, cols):
    return st.lists(
        st.lists(entries, min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(lambda d: Mat(d, rows, cols))


dims = st.integers(min_value=1, max_value=4)


@given(dims, dims, st.data())
@settings(max_examples=60, deadline=None)
def test_kernel_basis_annihilates(r, c, data):
    m = data.draw(mats(r, c))
    for v in m.kernel_basis():
        assert all(x == 0 for x in m.apply(v))
    assert m.rank() + len(m.kernel_basis()) == c  # rank-nullity


@given(dims, dims, st.data())
@settings(max_examples=60, deadline=None)
def test_solve_is_exact(r, c, data):
    m = data.draw(mats(r, c))
    x = data.draw(st.lists(entries, min_size=c, max_size=c))
    b = m.apply(x)
    sol = m.solve(b)
    assert sol is not None
    assert m.apply(sol) == b


@given(dims, dims, dims, st.data())
@settings(max_examples=40, deadline=None)
def test_rank_subadditive_under_product(r, k, c, data):
    a = data.draw(mats(r, k))
    b = data.draw(mats(k, c))
    p = a @ b
    assert p.rank() <= min(a.rank(), b.rank())


@given(dims, dims, st.data())
@settings(max_examples=40, deadline=None)
def test_rref_preserves_rank_and_column_span(r, c, data):
    m = data.draw(mats(r, c))
    basis = col_space_basis(m)
    assert basis.rank() == m.rank()
    for j in range(c):
        assert span_contains(basis, m.col(j))


@given(dims)
def test_identity_inverse(n):
    assert Mat.identity(n).inverse() == Mat.identity(n)


def test_rat_exactness():
    assert rat(1) / rat(3) * rat(3) == Fraction(1)
    assert rat(Fraction(2, 4)) == Fraction(1, 2)
