"""Group constructions: laws against independent oracles, validation, payloads."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualitylab import (
    GroupSpec,
    direct_product,
    element_from_payload,
    make_generator_set,
    make_group,
    standard_generators,
)


def heis_matrix(t):
    # the triple (a, b, c) as an upper unitriangular integer matrix
    a, b, c = t
    return np.array([[1, a, c], [0, 1, b], [0, 0, 1]], dtype=object)


def test_heisenberg_law_matches_matrix_product():
    g = make_group(GroupSpec.heisenberg())
    rng = np.random.default_rng(5)
    for _ in range(200):
        x = tuple(int(v) for v in rng.integers(-9, 10, size=3))
        y = tuple(int(v) for v in rng.integers(-9, 10, size=3))
        prod = g.mul(x, y)
        expected = heis_matrix(x) @ heis_matrix(y)
        assert heis_matrix(prod).tolist() == expected.tolist()
        inv = g.inv(x)
        assert (heis_matrix(x) @ heis_matrix(inv)).tolist() == np.eye(3, dtype=object).tolist()


@settings(max_examples=120, derandomize=True, deadline=None)
@given(st.tuples(*([st.integers(-50, 50)] * 9)))
def test_heisenberg_axioms_random(flat):
    g = make_group(GroupSpec.heisenberg())
    x, y, z = flat[0:3], flat[3:6], flat[6:9]
    assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))
    assert g.mul(x, g.identity) == x
    assert g.mul(g.inv(x), x) == g.identity


@pytest.mark.parametrize("orders", [(1,), (2,), (4,), (2, 2), (6,), (2, 3)])
def test_finite_abelian_axioms_exhaustive(orders):
    g = make_group(GroupSpec.finite_abelian(orders))
    elems = list(g.elements())
    assert len(elems) == g.order
    for x in elems:
        assert g.mul(x, g.identity) == x
        assert g.mul(x, g.inv(x)) == g.identity
    for x, y, z in itertools.product(elems[:4], elems, elems[:4]):
        assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


def test_symmetric_composition_oracle():
    g = make_group(GroupSpec.symmetric(4))
    rng = np.random.default_rng(11)
    elems = list(g.elements())
    assert len(elems) == 24
    for _ in range(100):
        x = elems[rng.integers(len(elems))]
        y = elems[rng.integers(len(elems))]
        # independent composition: apply y, then x, pointwise
        expected = tuple(x[y[i]] for i in range(4))
        assert g.mul(x, y) == expected
    for x in elems:
        assert g.mul(x, g.inv(x)) == g.identity


def test_symmetric_full_axioms_small():
    g = make_group(GroupSpec.symmetric(3))
    elems = list(g.elements())
    for x, y, z in itertools.product(elems, elems, elems):
        assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


def test_free_group_reduction():
    g = make_group(GroupSpec.free(2))
    assert g.mul((1,), (-1,)) == ()
    assert g.mul((1, 2), (-2, -1)) == ()
    assert g.mul((1, 2), (2,)) == (1, 2, 2)
    assert g.mul((1, -2), (2, 1)) == (1, 1)
    assert g.inv((1, -2, 1)) == (-1, 2, -1)
    with pytest.raises(ValueError):
        g.check((1, -1))  # not reduced
    with pytest.raises(ValueError):
        g.check((3,))  # letter outside the rank
    with pytest.raises(ValueError):
        g.check((0,))


def test_free_abelian_vectors():
    g = make_group(GroupSpec.free_abelian(2))
    assert g.mul((1, 2), (3, -5)) == (4, -3)
    assert g.inv((1, -2)) == (-1, 2)
    assert g.identity == (0, 0)


def test_power_matches_naive():
    g = make_group(GroupSpec.heisenberg())
    x = (1, 2, 3)
    acc = g.identity
    for n in range(12):
        assert g.power(x, n) == acc
        acc = g.mul(acc, x)
    assert g.power(x, -3) == g.inv(g.power(x, 3))


def test_validation_errors():
    with pytest.raises(ValueError):
        GroupSpec.finite_abelian([])
    with pytest.raises(ValueError):
        GroupSpec.finite_abelian([0])
    with pytest.raises(ValueError):
        GroupSpec.symmetric(7)  # above the degree cap
    with pytest.raises(ValueError):
        GroupSpec(kind="nosuch")
    z6 = make_group(GroupSpec.finite_abelian([6]))
    with pytest.raises(ValueError):
        z6.check((6,))
    with pytest.raises(ValueError):
        z6.check((0, 0))
    s3 = make_group(GroupSpec.symmetric(3))
    with pytest.raises(ValueError):
        s3.check((0, 0, 1))
    heis = make_group(GroupSpec.heisenberg())
    with pytest.raises(ValueError):
        heis.check((1, 2))
    with pytest.raises(ValueError):
        heis.elements()  # infinite


def test_standard_generators():
    heis = make_group(GroupSpec.heisenberg())
    gens = standard_generators(heis)
    assert gens.elements == ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0))
    assert gens.closed_under_inverse
    z = make_group(GroupSpec.free_abelian(1))
    assert standard_generators(z).elements == ((1,), (-1,))
    f2 = make_group(GroupSpec.free(2))
    assert standard_generators(f2).elements == ((1,), (-1,), (2,), (-2,))
    s3 = make_group(GroupSpec.symmetric(3))
    assert standard_generators(s3).elements == ((1, 0, 2), (1, 2, 0))
    z22 = make_group(GroupSpec.finite_abelian([2, 2]))
    assert standard_generators(z22).elements == ((1, 0), (0, 1))


def test_generator_set_validation():
    z6 = make_group(GroupSpec.finite_abelian([6]))
    with pytest.raises(ValueError):
        make_generator_set(z6, [(1,), (1,)])  # duplicate
    with pytest.raises(ValueError):
        make_generator_set(z6, [(2,)])  # generates only the even residues
    gens = make_generator_set(z6, [(1,)])
    assert not gens.closed_under_inverse
    gens = make_generator_set(z6, [(1,), (5,)])
    assert gens.closed_under_inverse


def test_direct_product_enumeration_row_major():
    z2 = make_group(GroupSpec.finite_abelian([2]))
    z3 = make_group(GroupSpec.finite_abelian([3]))
    p = direct_product(z2, z3)
    assert p.order == 6
    elems = list(p.elements())
    assert elems == [((a,), (b,)) for a in range(2) for b in range(3)]
    x, y = ((1,), (2,)), ((1,), (1,))
    assert p.mul(x, y) == ((0,), (0,))
    assert p.inv(x) == ((1,), (1,))


def test_element_from_payload():
    heis = make_group(GroupSpec.heisenberg())
    assert element_from_payload(heis, [1, 2, 3]) == (1, 2, 3)
    z22 = make_group(GroupSpec.finite_abelian([2, 2]))
    assert element_from_payload(z22, [1, 0]) == (1, 0)
    z2 = make_group(GroupSpec.finite_abelian([2]))
    z3 = make_group(GroupSpec.finite_abelian([3]))
    p = direct_product(z2, z3)
    assert element_from_payload(p, [[1], [2]]) == ((1,), (2,))
    with pytest.raises(ValueError):
        element_from_payload(heis, [1, 2])
