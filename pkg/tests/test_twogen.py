import pytest

from adlocal import (
    EmptyWordError,
    adversarial_oracle,
    check_inner_on_subring,
    commutator,
    generate_subring,
    matrix_ring,
    witness_search,
    word_eval,
    zero_matrix,
    zmod,
)
from adlocal.sampling import rng_for


def test_closure_of_offdiagonal_units_is_everything(m2z2, units2):
    S = generate_subring(units2[(1, 2)], units2[(2, 1)])
    assert len(S.elements) == 16
    assert set(S.elements) == set(m2z2.elements())


def test_closure_of_idempotent_and_zero(z2, units2):
    S = generate_subring(units2[(1, 1)], zero_matrix(z2, 2))
    assert set(S.elements) == {zero_matrix(z2, 2), units2[(1, 1)]}


def test_closure_of_zero(z2):
    zero = zero_matrix(z2, 2)
    S = generate_subring(zero, zero)
    assert S.elements == (zero,)


def test_closure_is_closed_and_canonical(m3z2):
    rng = rng_for(0, "closure")
    for _ in range(4):
        x = m3z2.element(rng.randrange(512))
        y = m3z2.element(rng.randrange(512))
        S = generate_subring(x, y)
        elems = set(S.elements)
        assert x in elems and y in elems and m3z2.zero in elems
        for u in list(elems)[:40]:
            assert m3z2.neg(u) in elems
            for v in list(elems)[:40]:
                assert m3z2.add(u, v) in elems
                assert m3z2.mul(u, v) in elems
        indices = [m3z2.index(e) for e in S.elements]
        assert indices == sorted(indices)


def test_closure_idempotence(m3z2):
    # generators taken inside a closure generate a subset of it
    rng = rng_for(1, "closure-idem")
    x = m3z2.element(rng.randrange(512))
    y = m3z2.element(rng.randrange(512))
    S = generate_subring(x, y)
    u = S.elements[len(S.elements) // 2]
    v = S.elements[len(S.elements) // 3]
    T = generate_subring(u, v)
    assert set(T.elements) <= set(S.elements)


def test_word_eval(units2, z2):
    e12, e21 = units2[(1, 2)], units2[(2, 1)]
    assert word_eval("xy", e12, e21) == units2[(1, 1)]
    assert word_eval("xx", e12, e21) == zero_matrix(z2, 2)
    assert word_eval("yxy", e12, e21) == e21
    with pytest.raises(EmptyWordError):
        word_eval("", e12, e21)
    with pytest.raises(ValueError):
        word_eval("xz", e12, e21)


def test_word_eval_concatenation(m2z3):
    rng = rng_for(2, "words")
    x = m2z3.element(rng.randrange(81))
    y = m2z3.element(rng.randrange(81))
    for u, v in [("x", "y"), ("xy", "yx"), ("xxy", "yxy")]:
        assert word_eval(u + v, x, y) == word_eval(u, x, y) * word_eval(v, x, y)


def test_check_inner_restriction_of_inner_map(units2):
    S = generate_subring(units2[(1, 2)], units2[(2, 1)])
    d = units2[(1, 1)]
    delta = {p: commutator(d, p) for p in S.elements}
    report = check_inner_on_subring(S, delta, d)
    assert report.passed
    assert "d inside closure" in report.notes


def test_check_inner_every_ambient_witness(m2z2, units2):
    S = generate_subring(units2[(1, 2)], units2[(2, 1)])
    for d in m2z2.elements():
        delta = {p: commutator(d, p) for p in S.elements}
        assert check_inner_on_subring(S, delta, d).passed


def test_check_inner_with_adversarial_values(m2z2, units2):
    # values produced through per-element adversarial witnesses; the
    # generator-pair witness may differ from the hidden element
    e12, e21 = units2[(1, 2)], units2[(2, 1)]
    S = generate_subring(e12, e21)
    oracle = adversarial_oracle(e12, m2z2)
    delta = {p: oracle.value(p) for p in S.elements}
    d = witness_search(m2z2, [(e12, delta[e12]), (e21, delta[e21])])
    assert d is not None
    report = check_inner_on_subring(S, delta, d)
    assert report.passed


def test_check_inner_rejects_identity_map(m2z2, units2):
    e12, e21 = units2[(1, 2)], units2[(2, 1)]
    S = generate_subring(e12, e21)
    identity_table = {p: p for p in S.elements}
    d = witness_search(m2z2, [(e12, e12), (e21, e21)])
    assert d == units2[(2, 2)]
    report = check_inner_on_subring(S, identity_table, d)
    assert not report.passed
    # additivity holds for the identity, so the failure is a non-generator
    # element, the first one in canonical order
    assert report.failures[0].note == "not implemented by d"
    assert report.failures[0].inputs == (units2[(2, 2)],)


def test_check_inner_reports_non_additive(m2z2, units2, z2):
    e12, e21 = units2[(1, 2)], units2[(2, 1)]
    S = generate_subring(e12, e21)
    d = units2[(1, 1)]
    table = {p: commutator(d, p) for p in S.elements}
    table[units2[(2, 2)]] = units2[(1, 2)]  # break additivity somewhere
    report = check_inner_on_subring(S, table, d)
    assert not report.passed
    assert report.failures[0].note == "not additive"


def test_check_inner_precondition(m2z2, units2):
    from adlocal import PreconditionError

    e12, e21 = units2[(1, 2)], units2[(2, 1)]
    S = generate_subring(e12, e21)
    delta = {p: commutator(units2[(1, 1)], p) for p in S.elements}
    with pytest.raises(PreconditionError):
        check_inner_on_subring(S, delta, units2[(1, 2)])


def test_inner_map_on_closure_over_z4():
    carrier = matrix_ring(zmod(4), 2)
    rng = rng_for(3, "z4")
    x = carrier.element(rng.randrange(256))
    y = carrier.element(rng.randrange(256))
    a = carrier.element(rng.randrange(256))
    S = generate_subring(x, y, carrier)
    oracle = adversarial_oracle(a, carrier)
    delta = {p: oracle.value(p) for p in S.elements}
    d = witness_search(carrier, [(x, delta[x]), (y, delta[y])])
    assert d is not None
    assert check_inner_on_subring(S, delta, d).passed
