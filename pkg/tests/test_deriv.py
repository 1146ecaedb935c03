import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlocal import (
    DerivationMap,
    InfiniteRingError,
    adversarial_oracle,
    check_derivation,
    check_oracle_consistency,
    check_two_local,
    commutator,
    identity_matrix,
    inner_derivation,
    maps_equal,
    matrix_ring,
    matrix_unit,
    staircase,
    verification_domain,
    witness_search,
    zero_matrix,
    zmod,
)
from adlocal.deriv import _witness_search_mod2


def zero2(z2):
    return zero_matrix(z2, 2)


def test_inner_derivation_examples(z2, m2z2, units2):
    zmap = inner_derivation(zero2(z2))
    assert all(zmap.evaluate(x) == zero2(z2) for x in m2z2.elements())
    idmap = inner_derivation(identity_matrix(z2, 2))
    assert all(idmap.evaluate(x) == zero2(z2) for x in m2z2.elements())
    d = inner_derivation(units2[(1, 2)])
    assert d.evaluate(units2[(2, 1)]) == units2[(1, 1)] + units2[(2, 2)]


def test_check_derivation_inner_passes(units2):
    report = check_derivation(inner_derivation(units2[(1, 2)]))
    assert report.passed
    assert report.checked == 256


def test_check_derivation_rejects_identity(m2z2, units2):
    ident = DerivationMap(m2z2, lambda x: x, verification_domain(m2z2))
    report = check_derivation(ident)
    assert not report.passed
    f = report.failures[0]
    assert f.inputs == (units2[(1, 1)], units2[(1, 1)])
    assert f.note == "leibniz"
    # D(e11*e11) = e11 while D(e11)e11 + e11 D(e11) = 2*e11 = 0 over Z_2
    assert f.got == units2[(1, 1)]
    assert f.expected == zero_matrix(zmod(2), 2)


def test_check_derivation_zero_map(m2z2, z2):
    zmap = DerivationMap(m2z2, lambda x: zero2(z2), verification_domain(m2z2))
    assert check_derivation(zmap).passed


@pytest.mark.parametrize("mod", [2, 3])
def test_every_inner_map_is_a_derivation(mod):
    carrier = matrix_ring(zmod(mod), 2)
    for a in carrier.elements():
        assert check_derivation(inner_derivation(a, carrier)).passed


def test_central_shift(m2z2, z2):
    ident = identity_matrix(z2, 2)
    for a in m2z2.elements():
        for z in (zero2(z2), ident):
            left = inner_derivation(a)
            right = inner_derivation(a + z)
            assert maps_equal(left, right, m2z2.elements())


def test_witness_search_examples(m2z2, units2, z2):
    assert witness_search(m2z2, [(units2[(1, 2)], zero2(z2))]) == zero2(z2)
    found = witness_search(m2z2, [(units2[(1, 2)], units2[(1, 2)]), (units2[(2, 1)], units2[(2, 1)])])
    assert found == units2[(2, 2)]
    assert witness_search(m2z2, [(units2[(1, 1)], units2[(1, 1)])]) is None


def test_witness_search_infinite_refused():
    class FakeRing:
        cardinality = None

    with pytest.raises(InfiniteRingError):
        witness_search(FakeRing(), [])


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_mod2_fast_path_matches_generic_scan(data):
    carrier = matrix_ring(zmod(2), data.draw(st.sampled_from([2, 3])))
    card = carrier.cardinality
    k = data.draw(st.integers(1, 3))
    constraints = []
    for _ in range(k):
        x = carrier.element(data.draw(st.integers(0, card - 1)))
        t = carrier.element(data.draw(st.integers(0, card - 1)))
        constraints.append((x, t))
    fast = _witness_search_mod2(carrier, constraints)
    slow = None
    for b in carrier.elements():
        if all(commutator(b, x) == t for x, t in constraints):
            slow = b
            break
    assert fast == slow


def test_adversarial_oracle_examples(units2, z2, m2z2):
    o12 = adversarial_oracle(units2[(1, 2)])
    assert o12.select(units2[(1, 2)], units2[(1, 2)]) == zero2(z2)
    o11 = adversarial_oracle(units2[(1, 1)])
    assert o11.select(units2[(2, 1)], units2[(1, 2)]) == units2[(2, 2)]
    assert o11.select(zero2(z2), zero2(z2)) == zero2(z2)


@pytest.mark.parametrize("mod", [2, 3])
def test_adversarial_oracle_consistent_and_induces_inner(mod):
    carrier = matrix_ring(zmod(mod), 2)
    els = carrier.elements()
    for a in els:
        oracle = adversarial_oracle(a, carrier)
        assert maps_equal(oracle.value, inner_derivation(a, carrier).evaluate, els)


def test_adversarial_oracle_full_consistency_sweep_z2(m2z2):
    els = m2z2.elements()
    for a in els:
        report = check_oracle_consistency(adversarial_oracle(a, m2z2), els)
        assert report.passed
        assert report.checked == len(els) ** 2


def test_adversarial_oracle_full_consistency_sweep_z3(m2z3):
    els = m2z3.elements()
    for a in els[::9]:  # every ninth witness; each sweep runs 81^2 queries
        report = check_oracle_consistency(adversarial_oracle(a, m2z3), els)
        assert report.passed


def test_consistent_oracle_maps_zero_to_zero(m2z2, units2, z2):
    for a in (units2[(1, 2)], units2[(1, 1)], identity_matrix(z2, 2)):
        oracle = adversarial_oracle(a)
        assert oracle.value(zero2(z2)) == zero2(z2)


def test_check_two_local_inner_passes(units2):
    report = check_two_local(inner_derivation(units2[(1, 2)]))
    assert report.passed


def test_check_two_local_rejects_identity(m2z2, units2):
    ident = DerivationMap(m2z2, lambda x: x, verification_domain(m2z2))
    report = check_two_local(ident)
    assert not report.passed
    assert report.failures[0].inputs == (units2[(1, 1)], units2[(1, 1)])


def test_check_two_local_zero_map(m2z2, z2):
    zmap = DerivationMap(m2z2, lambda x: zero2(z2), verification_domain(m2z2))
    report = check_two_local(zmap)
    assert report.passed
    assert report.witness == zero2(z2)


def test_check_two_local_every_inner(m2z2):
    for a in m2z2.elements():
        assert check_two_local(inner_derivation(a, m2z2)).passed


def test_check_two_local_accepts_non_additive_input(m2z2):
    # the definition does not require additivity, so a non-additive map is
    # a legal input; the squaring map simply fails the witness search
    squaring = DerivationMap(m2z2, lambda x: x * x, verification_domain(m2z2))
    report = check_two_local(squaring)
    assert not report.passed
    assert report.failures[0].note == "no common witness"


def test_maps_equal_first_difference(units2, m2z2):
    same = maps_equal(
        inner_derivation(units2[(1, 1)]), inner_derivation(units2[(2, 2)]), m2z2.elements()
    )
    assert same.equal
    diff = maps_equal(
        inner_derivation(units2[(1, 2)]),
        inner_derivation(units2[(2, 1)]),
        verification_domain(m2z2),
    )
    assert not diff.equal
    assert diff.first_difference == units2[(1, 1)]
    d = inner_derivation(units2[(1, 2)])
    assert maps_equal(d, d, verification_domain(m2z2))


def test_verification_domain_order(m2z2, units2, z2):
    dom = verification_domain(m2z2)
    assert dom[0] == units2[(1, 1)]
    assert dom[1] == units2[(1, 2)]
    assert dom[2] == units2[(2, 1)]
    assert dom[3] == units2[(2, 2)]
    assert len(dom) == 16
    assert len(set(dom)) == 16
    dom3 = verification_domain(matrix_ring(z2, 3))
    assert dom3[9] == staircase(z2, 3)
