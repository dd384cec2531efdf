"""Algebra construction: dimensions, idempotents, associativity."""
from fractions import Fraction

import pytest

from auslander import bqa


@pytest.mark.parametrize("t,dim", [(1, 1), (2, 5), (3, 14), (4, 30)])
def test_dimension_formula(t, dim):
    # dim A_t = sum over vertices i, j of min(i, j) -- the Cartan numbers
    A = bqa.auslander_algebra(t)
    assert A.dim == dim
    assert A.quiver.vertex_count == t
    assert len(A.quiver.arrows) == 2 * (t - 1)


def test_gamma_dimension():
    G = bqa.gamma_algebra()
    assert G.dim == 5
    assert G.quiver.vertex_count == 3


def test_idempotents_are_orthogonal_and_complete():
    A = bqa.auslander_algebra(3)
    total = {}
    for v in A.quiver.vertices():
        e = {A.idempotent(v): Fraction(1)}
        assert A.mult_vec(e, e) == e
        for w in A.quiver.vertices():
            if w != v:
                f = {A.idempotent(w): Fraction(1)}
                assert A.mult_vec(e, f) == {}
        for k, c in e.items():
            total[k] = total.get(k, Fraction(0)) + c
    # the idempotents sum to the identity: right multiplication fixes
    # every basis element
    for k in range(A.dim):
        x = {k: Fraction(1)}
        acc = {}
        for v in A.quiver.vertices():
            prod = A.mult_vec(x, {A.idempotent(v): Fraction(1)})
            for i, c in prod.items():
                acc[i] = acc.get(i, Fraction(0)) + c
        assert {i: c for i, c in acc.items() if c} == x


def test_multiplication_associative_on_basis():
    A = bqa.auslander_algebra(3)
    one = Fraction(1)
    basis = [{k: one} for k in range(A.dim)]
    for x in basis:
        for y in basis:
            xy = A.mult_vec(x, y)
            for z in basis:
                left = A.mult_vec(xy, z)
                right = A.mult_vec(x, A.mult_vec(y, z))
                assert left == right
