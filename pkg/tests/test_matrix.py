import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlocal import (
    CornerContext,
    DimensionError,
    ShapeMismatchError,
    block_flatten,
    block_view,
    commutator,
    corner_compress,
    corner_embed,
    corner_extract,
    identity_matrix,
    matrix,
    matrix_from_strings,
    matrix_index,
    matrix_ring,
    matrix_to_strings,
    matrix_unit,
    pierce_component,
    staircase,
    zero_matrix,
    zmod,
)
from adlocal.sampling import rng_for


def rand_elem(ring, rng):
    return ring.element(rng.randrange(ring.cardinality))


def test_matrix_unit_literal(z2):
    assert matrix_unit(z2, 2, 1, 2).rows == ((0, 1), (0, 0))


def test_unit_products(units2):
    assert units2[(1, 2)] * units2[(2, 1)] == units2[(1, 1)]
    z = zero_matrix(zmod(2), 2)
    assert units2[(1, 2)] * units2[(1, 2)] == z


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unit_multiplication_table(n, z2):
    units = {
        (i, j): matrix_unit(z2, n, i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    zero = zero_matrix(z2, n)
    for (i, j), u in units.items():
        for (k, l), v in units.items():
            expected = units[(i, l)] if j == k else zero
            assert u * v == expected


def test_unit_index_range(z2):
    with pytest.raises(IndexError):
        matrix_unit(z2, 2, 0, 1)
    with pytest.raises(IndexError):
        matrix_unit(z2, 2, 1, 3)


def test_pierce_literal(z2):
    x = matrix(z2, [[1, 1], [1, 1]])
    assert pierce_component(x, 1, 2) == matrix_unit(z2, 2, 1, 2)
    assert pierce_component(matrix_unit(z2, 2, 1, 2), 2, 1) == zero_matrix(z2, 2)


def test_pierce_is_unit_sandwich(m3z2, z2):
    rng = rng_for(0, "pierce")
    for _ in range(25):
        x = rand_elem(m3z2, rng)
        for i in range(1, 4):
            for j in range(1, 4):
                sandwich = matrix_unit(z2, 3, i, i) * x * matrix_unit(z2, 3, j, j)
                assert pierce_component(x, i, j) == sandwich


@pytest.mark.parametrize("ring_maker", [lambda: matrix_ring(zmod(2), 3), lambda: matrix_ring(zmod(3), 2)])
def test_pierce_completeness(ring_maker):
    carrier = ring_maker()
    rng = rng_for(1, f"pierce-sum:{carrier.spec}")
    for _ in range(30):
        x = rand_elem(carrier, rng)
        total = zero_matrix(carrier.base, carrier.n)
        for i in range(1, carrier.n + 1):
            for j in range(1, carrier.n + 1):
                total = total + pierce_component(x, i, j)
        assert total == x


def test_staircase_shapes(z2, z3):
    assert staircase(z2, 2) == matrix_unit(z2, 2, 1, 2)
    assert staircase(z2, 3) == matrix_unit(z2, 3, 1, 2) + matrix_unit(z2, 3, 2, 3)
    expected4 = (
        matrix_unit(z3, 4, 1, 2) + matrix_unit(z3, 4, 2, 3) + matrix_unit(z3, 4, 3, 4)
    )
    assert staircase(z3, 4) == expected4
    with pytest.raises(DimensionError):
        staircase(z2, 1)


def test_commutator_examples(units2, z2):
    assert commutator(units2[(1, 1)], units2[(1, 2)]) == units2[(1, 2)]
    x = matrix(z2, [[1, 0], [1, 1]])
    assert commutator(x, x) == zero_matrix(z2, 2)
    assert commutator(units2[(1, 2)], units2[(2, 1)]) == units2[(1, 1)] + units2[(2, 2)]


def test_commutator_additivity_exhaustive(m2z2):
    els = m2z2.elements()
    a = els[7]
    for x in els:
        for y in els:
            assert commutator(a, x + y) == commutator(a, x) + commutator(a, y)


def test_shape_mismatch(z2, z3):
    with pytest.raises(ShapeMismatchError):
        commutator(zero_matrix(z2, 2), zero_matrix(z2, 3))
    with pytest.raises(ShapeMismatchError):
        zero_matrix(z2, 2) * zero_matrix(z3, 2)


def test_block_view_unit_literal(z2):
    b = block_view(matrix_unit(z2, 4, 1, 3), 2)
    inner = matrix_ring(z2, 2)
    assert b.entry(1, 2) == matrix_unit(z2, 2, 1, 1)
    assert b.entry(1, 1) == inner.zero
    assert b.entry(2, 1) == inner.zero
    assert b.entry(2, 2) == inner.zero


def test_block_view_unit_closed_form(z2):
    m = 2
    for big_i, big_j in [(1, 2), (3, 4), (2, 3), (4, 1)]:
        b = block_view(matrix_unit(z2, 4, big_i, big_j), m)
        bi, ii = divmod(big_i - 1, m)
        bj, jj = divmod(big_j - 1, m)
        for outer_i in (1, 2):
            for outer_j in (1, 2):
                blk = b.entry(outer_i, outer_j)
                if (outer_i, outer_j) == (bi + 1, bj + 1):
                    assert blk == matrix_unit(z2, m, ii + 1, jj + 1)
                else:
                    assert blk == zero_matrix(z2, m)


def test_block_view_ring_isomorphism(z2):
    m4 = matrix_ring(z2, 4)
    rng = rng_for(2, "block-iso")
    for _ in range(200):
        x, y = rand_elem(m4, rng), rand_elem(m4, rng)
        assert block_view(x * y, 2) == block_view(x, 2) * block_view(y, 2)
        assert block_view(x + y, 2) == block_view(x, 2) + block_view(y, 2)
        assert block_flatten(block_view(x, 2)) == x
    assert block_view(identity_matrix(z2, 4), 2) == matrix_ring(matrix_ring(z2, 2), 2).one
    for u in m4.units():
        assert block_flatten(block_view(u, 2)) == u


def test_block_view_rejects_odd(z2):
    with pytest.raises(ShapeMismatchError):
        block_view(zero_matrix(z2, 3), 1)


def test_corner_compress_examples(z2):
    ctx = CornerContext(2, 4, z2)
    x = matrix_unit(z2, 4, 1, 2) + matrix_unit(z2, 4, 3, 3)
    assert corner_compress(x, ctx) == matrix_unit(z2, 4, 1, 2)
    inside = matrix_unit(z2, 4, 2, 1)
    assert corner_compress(inside, ctx) == inside
    assert corner_compress(matrix_unit(z2, 4, 1, 3), ctx) == zero_matrix(z2, 4)


def test_corner_idempotent(z2):
    ctx = CornerContext(2, 4, z2)
    e = ctx.idempotent
    assert e * e == e
    rng = rng_for(3, "corner")
    m4 = matrix_ring(z2, 4)
    for _ in range(50):
        x = rand_elem(m4, rng)
        assert corner_compress(x, ctx) == e * x * e


def test_corner_is_subring(z2):
    # compression is multiplicative on corner-supported elements
    ctx = CornerContext(2, 4, z2)
    m2 = matrix_ring(z2, 2)
    rng = rng_for(4, "corner-mult")
    for _ in range(50):
        x = corner_embed(rand_elem(m2, rng), 4)
        y = corner_embed(rand_elem(m2, rng), 4)
        assert corner_compress(x * y, ctx) == corner_compress(x, ctx) * corner_compress(y, ctx)


def test_corner_embed_extract_roundtrip(z2):
    m2 = matrix_ring(z2, 2)
    rng = rng_for(5, "corner-rt")
    for _ in range(20):
        v = rand_elem(m2, rng)
        assert corner_extract(corner_embed(v, 5), 2) == v


def test_corner_context_validation(z2):
    with pytest.raises(DimensionError):
        CornerContext(3, 2, z2)


def test_canonical_matrix_order(m2z2, units2):
    assert matrix_index(units2[(2, 2)]) == 1
    assert matrix_index(units2[(2, 1)]) == 2
    assert matrix_index(units2[(1, 2)]) == 4
    assert matrix_index(units2[(1, 1)]) == 8
    els = m2z2.elements()
    assert [matrix_index(x) for x in els] == list(range(16))


@given(st.integers(0, 4 ** 4 - 1))
@settings(max_examples=50, deadline=None)
def test_matrix_ring_index_roundtrip(i):
    carrier = matrix_ring(zmod(4), 2)
    assert carrier.index(carrier.element(i)) == i


def test_matrix_literal_roundtrip(z2, poly23):
    x = matrix_unit(z2, 2, 1, 2)
    assert matrix_to_strings(x) == [["0", "1"], ["0", "0"]]
    assert matrix_from_strings(z2, matrix_to_strings(x)) == x
    y = matrix(poly23, [[poly23.el_parse("t+1"), poly23.zero], [poly23.one, poly23.el_parse("t^2")]])
    assert matrix_from_strings(poly23, matrix_to_strings(y)) == y


def test_nested_literal_roundtrip(z2):
    inner = matrix_ring(z2, 2)
    block = matrix_ring(inner, 2)
    x = block.element(777)
    assert block.el_parse(block.el_str(x)) == x


def test_validating_constructor(z2):
    with pytest.raises(ValueError):
        matrix(z2, [[0, 2], [0, 0]])
    with pytest.raises(ShapeMismatchError):
        matrix(z2, [[0, 1], [0]])
