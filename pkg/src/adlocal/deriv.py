"""Derivations, inner derivations, witness oracles, and their checkers.

The workhorse here is :func:`witness_search`, the brute-force constrained
search that realizes every "there exists an element b such that [b, x] = t"
statement: it scans the whole finite carrier in canonical order and returns
the first (hence canonically minimal) solution.  Oracles built on top of it
are deliberately adversarial - they answer with the minimal witness, never
with the element that secretly induced the map - so downstream algorithms
cannot cheat by recognizing their input.

Verification domains list all matrix units first, then the staircase
element, then the rest of the carrier (or a seeded sample for large
carriers).  Checks evaluate pairs in that order and stop at the first
failure, which is what makes reported counterexamples deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .errors import CarrierTooLargeError, InfiniteRingError
from .matrix import Matrix, MatrixRing, commutator, matrix_ring, matrix_unit, staircase
from .rings import Ring, Zmod
from .sampling import rng_for

DEFAULT_SEED = 0
FULL_DOMAIN_CAP = 4096
DOMAIN_SAMPLE = 10_000
PAIR_CAP = 262_144
PAIR_SAMPLE = 100_000
TWO_LOCAL_PAIR_CAP = 4096
TWO_LOCAL_PAIR_SAMPLE = 1_000
ELEMENT_CAP = 1 << 16


@dataclass(frozen=True)
class Failure:
    """One falsified identity: the inputs it was evaluated at, what the
    identity demanded, and what came out."""

    inputs: tuple
    expected: object
    got: object
    note: str = ""


@dataclass
class VerificationReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    witness: Matrix | None = None
    seed: int | None = None
    elapsed: float = 0.0
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class DerivationMap:
    """A total map on a carrier with an explicit finite verification domain.

    The container itself does not assume the map is a derivation; that is
    what :func:`check_derivation` decides.  Maps known to be inner carry
    their implementing element in ``witness``.
    """

    carrier: Ring
    evaluate: Callable
    domain: tuple
    witness: Matrix | None = None


@dataclass
class WitnessOracle:
    """An inner 2-local derivation, represented by its pair oracle.

    ``select(x, y)`` yields one element implementing the map at both x
    and y.  The induced map is read off the diagonal query.
    """

    carrier: Ring
    select: Callable

    def value(self, x):
        """Induced value at x: the commutator of select(x, x) against x."""
        w = self.select(x, x)
        r = self.carrier
        return r.sub(r.mul(w, x), r.mul(x, w))


def _domain_lead(carrier: Ring) -> list:
    if not isinstance(carrier, MatrixRing):
        return []
    lead = list(carrier.units())
    if carrier.n >= 2:
        lead.append(staircase(carrier.base, carrier.n))
    return lead


def verification_domain(
    carrier: Ring,
    seed: int = DEFAULT_SEED,
    full_cap: int = FULL_DOMAIN_CAP,
    sample: int = DOMAIN_SAMPLE,
) -> tuple:
    """Units, then the staircase, then all remaining elements in canonical
    order (small carriers) or a seeded sample (large ones)."""
    cached = getattr(carrier, "_vdomain", None)
    if cached is not None and cached[0] == (seed, full_cap, sample):
        return cached[1]
    lead = _domain_lead(carrier)
    card = carrier.cardinality
    if card is not None and card <= full_cap:
        rest = carrier.elements()
    else:
        rng = rng_for(seed, f"domain:{carrier.spec}")
        rest = [carrier.element(rng.randrange(card)) for _ in range(sample)]
    seen, out = set(), []
    for v in list(lead) + list(rest):
        if v not in seen:
            seen.add(v)
            out.append(v)
    dom = tuple(out)
    carrier._vdomain = ((seed, full_cap, sample), dom)
    return dom


def verification_elements(
    carrier: Ring,
    seed: int = DEFAULT_SEED,
    cap: int = ELEMENT_CAP,
    sample: int = DOMAIN_SAMPLE,
) -> tuple:
    """Element set for map-equality checks: exhaustive up to ``cap``,
    otherwise units + staircase + a seeded sample."""
    card = carrier.cardinality
    if card is not None and card <= cap:
        return carrier.elements()
    return verification_domain(carrier, seed, full_cap=0, sample=sample)


def inner_derivation(a, carrier: Ring | None = None, seed: int = DEFAULT_SEED) -> DerivationMap:
    """The map x -> a*x - x*a, with a full verification domain when small."""
    if carrier is None:
        if not isinstance(a, Matrix):
            raise TypeError("carrier required for non-matrix elements")
        carrier = matrix_ring(a.ring, a.n)
    mul, sub = carrier.mul, carrier.sub

    def evaluate(x, a=a):
        return sub(mul(a, x), mul(x, a))

    return DerivationMap(carrier, evaluate, verification_domain(carrier, seed), witness=a)


@dataclass(frozen=True)
class MapComparison:
    equal: bool
    first_difference: object = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.equal


def _as_callable(f):
    if isinstance(f, DerivationMap):
        return f.evaluate
    if isinstance(f, WitnessOracle):
        return f.value
    return f


def maps_equal(f, g, domain) -> MapComparison:
    """Pointwise equality over the domain, reporting the first difference."""
    fe, ge = _as_callable(f), _as_callable(g)
    for k, x in enumerate(domain):
        if fe(x) != ge(x):
            return MapComparison(False, x, k + 1)
    return MapComparison(True, None, len(domain))


def _pair_stream(carrier, domain, pair_cap, pair_samples, seed, label):
    """Ordered pairs of the whole domain when that is affordable, otherwise
    every matrix-unit pair followed by a seeded sample of carrier pairs."""
    if len(domain) * len(domain) <= pair_cap:
        return product(domain, domain), None
    units = carrier.units() if isinstance(carrier, MatrixRing) else ()
    card = carrier.cardinality
    rng = rng_for(seed, f"{label}:{carrier.spec}")
    try:
        pick = carrier.elements().__getitem__
    except (CarrierTooLargeError, InfiniteRingError):
        pick = carrier.element

    def stream():
        for pair in product(units, units):
            yield pair
        randrange = rng.randrange
        for _ in range(pair_samples):
            yield pick(randrange(card)), pick(randrange(card))

    return stream(), seed


def check_derivation(
    D: DerivationMap,
    pair_cap: int = PAIR_CAP,
    pair_samples: int = PAIR_SAMPLE,
    seed: int = DEFAULT_SEED,
    max_failures: int = 1,
) -> VerificationReport:
    """Verify additivity and the Leibniz rule on ordered pairs from the
    verification domain; failures are data, not errors."""
    carrier = D.carrier
    add, mul = carrier.add, carrier.mul
    evaluate = D.evaluate
    memo: dict = {}

    def ev(x):
        v = memo.get(x)
        if v is None:
            v = evaluate(x)
            memo[x] = v
        return v

    pairs, used_seed = _pair_stream(carrier, D.domain, pair_cap, pair_samples, seed, "pairs")
    report = VerificationReport(seed=used_seed)
    for x, y in pairs:
        dx, dy = ev(x), ev(y)
        report.checked += 1
        if ev(add(x, y)) != add(dx, dy):
            report.failures.append(
                Failure((x, y), add(dx, dy), ev(add(x, y)), "additivity")
            )
        elif ev(mul(x, y)) != add(mul(dx, y), mul(x, dy)):
            report.failures.append(
                Failure((x, y), add(mul(dx, y), mul(x, dy)), ev(mul(x, y)), "leibniz")
            )
        if len(report.failures) >= max_failures:
            break
    return report


def witness_search(carrier: Ring, constraints) -> Matrix | None:
    """Canonically minimal b with b*x - x*b = t for every (x, t) constraint.

    Scans the whole carrier in canonical order; None when no solution
    exists.  Over Z_2 matrix carriers the scan runs incrementally (the
    commutator is linear in b, and +1 on the canonical index is a bit
    flip pattern), which is the same exhaustive scan, just cheap.
    """
    if carrier.cardinality is None:
        raise InfiniteRingError("witness search needs a finite carrier")
    cons = []
    for x, t in constraints:
        if (x, t) not in cons:
            cons.append((x, t))
    if not cons:
        return carrier.zero
    if (
        isinstance(carrier, MatrixRing)
        and type(carrier.base) is Zmod
        and carrier.base.modulus == 2
        and carrier.n * carrier.n <= 64
    ):
        return _witness_search_mod2(carrier, cons)
    mul, sub = carrier.mul, carrier.sub
    for b in carrier.elements():
        for x, t in cons:
            if sub(mul(b, x), mul(x, b)) != t:
                break
        else:
            return b
    return None


def _enc_mod2(mat: Matrix) -> int:
    acc = 0
    for row in mat.rows:
        for v in row:
            acc = (acc << 1) | v
    return acc


def _witness_search_mod2(carrier: MatrixRing, cons) -> Matrix | None:
    base, n = carrier.base, carrier.n
    nn = n * n
    total = 1 << nn
    data = []
    for x, t in cons:
        cols = [0] * nn
        for bit in range(nn):
            p = nn - 1 - bit
            unit = matrix_unit(base, n, p // n + 1, p % n + 1)
            cols[bit] = _enc_mod2(commutator(unit, x))
        data.append((cols, _enc_mod2(t)))
    if len(data) == 1:
        (c1, t1), = data
        f1 = 0
        idx = 0
        while True:
            if f1 == t1:
                return carrier.element(idx)
            nxt = idx + 1
            if nxt == total:
                return None
            diff, bit = idx ^ nxt, 0
            while diff:
                f1 ^= c1[bit]
                diff >>= 1
                bit += 1
            idx = nxt
    if len(data) == 2:
        (c1, t1), (c2, t2) = data
        f1 = f2 = 0
        idx = 0
        while True:
            if f1 == t1 and f2 == t2:
                return carrier.element(idx)
            nxt = idx + 1
            if nxt == total:
                return None
            diff, bit = idx ^ nxt, 0
            while diff:
                f1 ^= c1[bit]
                f2 ^= c2[bit]
                diff >>= 1
                bit += 1
            idx = nxt
    folds = [0] * len(data)
    idx = 0
    while True:
        if all(f == d[1] for f, d in zip(folds, data)):
            return carrier.element(idx)
        nxt = idx + 1
        if nxt == total:
            return None
        diff, bit = idx ^ nxt, 0
        while diff:
            for k, (cols, _) in enumerate(data):
                folds[k] ^= cols[bit]
            diff >>= 1
            bit += 1
        idx = nxt


def adversarial_oracle(a: Matrix, carrier: Ring | None = None) -> WitnessOracle:
    """Oracle inducing the inner derivation of ``a`` whose answers are
    found by brute force, independently of ``a``: each pair gets the
    canonically minimal implementing element, never ``a`` itself unless
    that happens to be minimal.  Pairs are unordered for the search."""
    if carrier is None:
        carrier = matrix_ring(a.ring, a.n)
    mul, sub = carrier.mul, carrier.sub
    memo: dict = {}

    def select(x, y):
        if carrier.index(y) < carrier.index(x):
            x, y = y, x
        key = (x, y)
        w = memo.get(key)
        if w is None:
            tx = sub(mul(a, x), mul(x, a))
            ty = sub(mul(a, y), mul(y, a))
            w = witness_search(carrier, [(x, tx), (y, ty)])
            memo[key] = w  # a itself satisfies the constraints, so never None
        return w

    return WitnessOracle(carrier, select)


def check_two_local(
    D: DerivationMap,
    pair_cap: int = TWO_LOCAL_PAIR_CAP,
    pair_samples: int = TWO_LOCAL_PAIR_SAMPLE,
    seed: int = DEFAULT_SEED,
    max_failures: int = 1,
) -> VerificationReport:
    """For ordered domain pairs (x, y), search for one element implementing
    the map at both points; pass iff every pair has a witness.

    Additivity of the map is deliberately not required.  When every pair
    returns the same witness the report records it.
    """
    carrier = D.carrier
    if carrier.cardinality is None:
        raise InfiniteRingError("two-local check needs a finite carrier")
    evaluate = D.evaluate
    memo: dict = {}

    def ev(x):
        v = memo.get(x)
        if v is None:
            v = evaluate(x)
            memo[x] = v
        return v

    pairs, used_seed = _pair_stream(carrier, D.domain, pair_cap, pair_samples, seed, "two-local")
    report = VerificationReport(seed=used_seed)
    common: Matrix | None = None
    uniform = True
    for x, y in pairs:
        w = witness_search(carrier, [(x, ev(x)), (y, ev(y))])
        report.checked += 1
        if w is None:
            report.failures.append(
                Failure((x, y), (ev(x), ev(y)), None, "no common witness")
            )
            if len(report.failures) >= max_failures:
                break
        else:
            if common is None:
                common = w
            elif w != common:
                uniform = False
    if report.passed and uniform:
        report.witness = common
    return report


def check_oracle_consistency(
    oracle: WitnessOracle,
    xs,
    ys=None,
    max_failures: int = 1,
) -> VerificationReport:
    """Well-definedness of the induced map: commutator(select(x, y), x)
    must not depend on y, and each answer must implement the induced
    values at both points of its pair."""
    r = oracle.carrier
    mul, sub = r.mul, r.sub
    ys = xs if ys is None else ys
    values = {}

    def val(x):
        v = values.get(x)
        if v is None:
            v = oracle.value(x)
            values[x] = v
        return v

    report = VerificationReport()
    for x in xs:
        vx = val(x)
        for y in ys:
            w = oracle.select(x, y)
            report.checked += 1
            got_x = sub(mul(w, x), mul(x, w))
            got_y = sub(mul(w, y), mul(y, w))
            if got_x != vx:
                report.failures.append(Failure((x, y), vx, got_x, "witness drifts at x"))
            elif got_y != val(y):
                report.failures.append(Failure((x, y), val(y), got_y, "witness drifts at y"))
            if len(report.failures) >= max_failures:
                return report
    return report
