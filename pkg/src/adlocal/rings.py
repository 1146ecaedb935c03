"""Finite base rings with exact arithmetic and a canonical element order.

Every ring here is a finite associative unital ring.  Elements are plain
hashable Python values (ints for residues, coefficient tuples for truncated
polynomials, Matrix values for matrix rings), arithmetic is exact, and each
ring fixes a canonical total order through ``index``/``element`` with the
zero element at index 0.  The canonical order is what makes "minimal
witness" well defined everywhere else in the package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import CarrierTooLargeError, InfiniteRingError

AXIOM_EXHAUSTIVE_CAP = 100
AXIOM_SAMPLE_TRIPLES = 10_000
COMMUTATIVITY_EXHAUSTIVE_CAP = 10_000
ENUMERATION_CAP = 1 << 17


class Ring:
    """Associative unital ring with exact arithmetic and canonical order.

    Subclasses provide the primitive operations.  Ring objects and their
    elements are immutable values, safe to share between workers; all
    operations are pure.
    """

    spec: str
    cardinality: int | None
    commutative_declared: bool

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def index(self, a) -> int:
        """Position of ``a`` in the canonical order."""
        raise NotImplementedError

    def element(self, i: int):
        """Inverse of :meth:`index`."""
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def el_str(self, a) -> str:
        raise NotImplementedError

    def el_parse(self, s: str):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def elements(self) -> tuple:
        """All elements in canonical order; cached after the first call."""
        cached = getattr(self, "_elements", None)
        if cached is None:
            card = self.cardinality
            if card is None:
                raise InfiniteRingError(f"{self.spec} has no finite enumeration")
            if card > ENUMERATION_CAP:
                raise CarrierTooLargeError(
                    f"{self.spec} has {card} elements; refusing to enumerate"
                )
            cached = tuple(self.element(i) for i in range(card))
            self._elements = cached
        return cached

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<ring {self.spec}>"


class Zmod(Ring):
    """Integers modulo m, elements represented by residues 0..m-1."""

    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus
        self.spec = f"zmod:{modulus}"
        self.cardinality = modulus
        self.commutative_declared = True

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def index(self, a):
        return a

    def element(self, i):
        if not 0 <= i < self.modulus:
            raise IndexError(f"no element {i} in {self.spec}")
        return i

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.modulus

    def el_str(self, a):
        return str(a)

    def el_parse(self, s):
        v = int(s)
        if not 0 <= v < self.modulus:
            raise ValueError(f"{s!r} is not a canonical residue of {self.spec}")
        return v


class PolyQuot(Ring):
    """Truncated polynomial ring Z_m[t]/(t^k).

    Elements are coefficient tuples (constant term first); a commutative
    ring with nontrivial nilpotents as soon as k > 1.  Canonical order is
    by the base-m integer with the leading coefficient most significant,
    so enumeration runs 0, 1, ..., m-1, t, t+1, ...
    """

    def __init__(self, modulus: int, degree: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        if degree < 1:
            raise ValueError("truncation degree must be at least 1")
        self.modulus = modulus
        self.degree = degree
        self.spec = f"poly:{modulus}:{degree}"
        self.cardinality = modulus**degree
        self.commutative_declared = True
        self._zero = (0,) * degree
        self._one = (1,) + (0,) * (degree - 1)

    def add(self, a, b):
        m = self.modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.modulus
        return tuple(-x % m for x in a)

    def mul(self, a, b):
        m, k = self.modulus, self.degree
        out = [0] * k
        for i, ai in enumerate(a):
            if ai:
                for j in range(k - i):
                    out[i + j] += ai * b[j]
        return tuple(c % m for c in out)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def index(self, a):
        m = self.modulus
        acc = 0
        for c in reversed(a):
            acc = acc * m + c
        return acc

    def element(self, i):
        if not 0 <= i < self.cardinality:
            raise IndexError(f"no element {i} in {self.spec}")
        m = self.modulus
        coeffs = []
        for _ in range(self.degree):
            i, c = divmod(i, m)
            coeffs.append(c)
        return tuple(coeffs)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and all(isinstance(c, int) and 0 <= c < self.modulus for c in a)
        )

    def el_str(self, a):
        terms = []
        for power in range(self.degree - 1, -1, -1):
            c = a[power]
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            else:
                var = "t" if power == 1 else f"t^{power}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"

    def el_parse(self, s):
        coeffs = [0] * self.degree
        if s.strip() == "0":
            return tuple(coeffs)
        for term in s.split("+"):
            term = term.strip()
            if "t" in term:
                head, _, tail = term.partition("t")
                coeff = int(head) if head else 1
                power = int(tail[1:]) if tail.startswith("^") else 1
            else:
                coeff, power = int(term), 0
            if not 0 <= power < self.degree:
                raise ValueError(f"power t^{power} out of range for {self.spec}")
            if not 0 < coeff < self.modulus or coeffs[power]:
                raise ValueError(f"{s!r} is not canonical for {self.spec}")
            coeffs[power] = coeff
        return tuple(coeffs)


@dataclass(frozen=True)
class CommutativityEvidence:
    """Outcome of a commutativity check, with how it was established."""

    commutative: bool
    method: str  # "exhaustive" or "declared"
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.commutative


def enumerate_elements(ring: Ring) -> tuple:
    """All elements of a finite ring, exactly once, in canonical order."""
    if ring.cardinality is None:
        raise InfiniteRingError(f"{ring.spec} has no finite enumeration")
    return ring.elements()


def is_commutative(ring: Ring) -> CommutativityEvidence:
    """Decide commutativity: exhaustive pairwise check for small finite rings.

    Rings above the exhaustive cap (or infinite ones) fall back to the
    declared flag, tagged as such.
    """
    card = ring.cardinality
    if card is None or card > COMMUTATIVITY_EXHAUSTIVE_CAP:
        return CommutativityEvidence(ring.commutative_declared, "declared")
    els = ring.elements()
    mul = ring.mul
    for a in els:
        for b in els:
            if mul(a, b) != mul(b, a):
                return CommutativityEvidence(False, "exhaustive", (a, b))
    return CommutativityEvidence(True, "exhaustive")


def is_central(ring: Ring, a) -> bool:
    """True iff ``a`` commutes with every element of the finite ring."""
    if ring.cardinality is None:
        raise InfiniteRingError(f"{ring.spec} has no finite enumeration")
    mul = ring.mul
    for x in ring.elements():
        if mul(a, x) != mul(x, a):
            return False
    return True


def ring_axiom_check(ring: Ring) -> None:
    """Self-test run once per descriptor: associativity, distributivity,
    unit laws, additive inverses and additive commutativity.

    Exhaustive over all triples up to AXIOM_EXHAUSTIVE_CAP elements, a
    fixed-seed sample of AXIOM_SAMPLE_TRIPLES triples beyond that.  Raises
    ValueError on the first violated axiom; misconfigured custom rings
    fail here instead of poisoning downstream checks.
    """
    card = ring.cardinality
    if card is None:
        return
    add, mul, neg = ring.add, ring.mul, ring.neg
    zero, one = ring.zero, ring.one

    if card <= AXIOM_EXHAUSTIVE_CAP:
        els = ring.elements()
        pos = {a: i for i, a in enumerate(els)}
        add_t = [[pos[add(a, b)] for b in els] for a in els]
        mul_t = [[pos[mul(a, b)] for b in els] for a in els]
        for i, a in enumerate(els):
            if mul(one, a) != a or mul(a, one) != a:
                raise ValueError(f"{ring.spec}: unit law fails at {a!r}")
            if add(a, neg(a)) != zero:
                raise ValueError(f"{ring.spec}: additive inverse fails at {a!r}")
            arow_a, mrow_a = add_t[i], mul_t[i]
            for j in range(card):
                if arow_a[j] != add_t[j][i]:
                    raise ValueError(f"{ring.spec}: addition not commutative")
                arow_ab, mrow_ab = add_t[arow_a[j]], mul_t[mrow_a[j]]
                arow_b, mrow_b = add_t[j], mul_t[j]
                for k in range(card):
                    if arow_ab[k] != arow_a[arow_b[k]]:
                        raise ValueError(f"{ring.spec}: addition not associative")
                    if mrow_ab[k] != mrow_a[mrow_b[k]]:
                        raise ValueError(f"{ring.spec}: multiplication not associative")
                    if mrow_a[arow_b[k]] != add_t[mrow_a[j]][mrow_a[k]]:
                        raise ValueError(f"{ring.spec}: left distributivity fails")
                    if mul_t[arow_a[j]][k] != add_t[mrow_a[k]][mrow_b[k]]:
                        raise ValueError(f"{ring.spec}: right distributivity fails")
        return

    rng = random.Random(f"ring-axioms:{ring.spec}")
    for _ in range(AXIOM_SAMPLE_TRIPLES):
        a = ring.element(rng.randrange(card))
        b = ring.element(rng.randrange(card))
        c = ring.element(rng.randrange(card))
        if add(add(a, b), c) != add(a, add(b, c)):
            raise ValueError(f"{ring.spec}: addition not associative")
        if add(a, b) != add(b, a):
            raise ValueError(f"{ring.spec}: addition not commutative")
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            raise ValueError(f"{ring.spec}: multiplication not associative")
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            raise ValueError(f"{ring.spec}: left distributivity fails")
        if mul(add(a, b), c) != add(mul(a, c), mul(b, c)):
            raise ValueError(f"{ring.spec}: right distributivity fails")
        if mul(one, a) != a or mul(a, one) != a:
            raise ValueError(f"{ring.spec}: unit law fails at {a!r}")
        if add(a, neg(a)) != zero:
            raise ValueError(f"{ring.spec}: additive inverse fails at {a!r}")


@lru_cache(maxsize=None)
def zmod(modulus: int) -> Zmod:
    """Interned Z_m descriptor, axiom-checked on first construction."""
    ring = Zmod(modulus)
    ring_axiom_check(ring)
    return ring


@lru_cache(maxsize=None)
def polyquot(modulus: int, degree: int) -> PolyQuot:
    """Interned Z_m[t]/(t^k) descriptor, axiom-checked on first construction."""
    ring = PolyQuot(modulus, degree)
    ring_axiom_check(ring)
    return ring


def parse_ring_spec(spec: str) -> Ring:
    """Parse ``zmod:<m>``, ``poly:<m>:<k>`` or ``mat:<inner-spec>:<n>``."""
    tokens = spec.strip().split(":")
    try:
        if tokens[0] == "zmod" and len(tokens) == 2:
            return zmod(int(tokens[1]))
        if tokens[0] == "poly" and len(tokens) == 3:
            return polyquot(int(tokens[1]), int(tokens[2]))
        if tokens[0] == "mat" and len(tokens) >= 3:
            from .matrix import matrix_ring

            inner = parse_ring_spec(":".join(tokens[1:-1]))
            return matrix_ring(inner, int(tokens[-1]))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad ring spec {spec!r}: {exc}") from exc
    raise ValueError(f"bad ring spec {spec!r}")
