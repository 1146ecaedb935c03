"""Subrings generated by two elements, and the inner-implementation check.

The closure is non-unital: it contains the identity only when the
generators produce it.  An additive map on such a closure that agrees with
the commutator map of some element d at both generators must agree with it
on every element of the closure; :func:`check_inner_on_subring` verifies
that claim exhaustively and reports where it first breaks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .deriv import DEFAULT_SEED, Failure, VerificationReport
from .errors import ClosureBudgetError, EmptyWordError, InfiniteRingError, PreconditionError
from .matrix import Matrix, matrix_ring
from .rings import Ring
from .sampling import rng_for

ADDITIVITY_PAIR_CAP = 262_144
ADDITIVITY_PAIR_SAMPLE = 10_000


@dataclass(frozen=True)
class GeneratedSubring:
    """Finite closure of two elements under +, -, and *."""

    ambient: Ring
    generators: tuple
    elements: tuple


def generate_subring(x: Matrix, y: Matrix, ambient: Ring | None = None) -> GeneratedSubring:
    """Least subset containing {x, y} closed under addition, negation and
    multiplication, in canonical element order.

    Fixpoint on (generator set, additive span): a product of two span
    elements expands by distributivity into a sum of generator products,
    so the loop only ever multiplies generators and re-spans.  Negatives
    come free in a finite additive group.
    """
    if ambient is None:
        ambient = matrix_ring(x.ring, x.n)
    if not (ambient.contains(x) and ambient.contains(y)):
        raise ValueError("generators do not live in the ambient ring")
    cap = ambient.cardinality
    if cap is None:
        raise InfiniteRingError("closure needs a finite ambient ring")
    add, mul, zero = ambient.add, ambient.mul, ambient.zero

    gens = [x]
    if y != x:
        gens.append(y)

    def additive_span(gen_list):
        span = {zero}
        frontier = [zero]
        while frontier:
            v = frontier.pop()
            for g in gen_list:
                w = add(v, g)
                if w not in span:
                    if len(span) >= cap:
                        raise ClosureBudgetError("closure exceeded the ambient cardinality")
                    span.add(w)
                    frontier.append(w)
        return span

    span = additive_span(gens)
    while True:
        fresh = []
        seen = set(span)
        for g, h in product(gens, gens):
            p = mul(g, h)
            if p not in seen:
                seen.add(p)
                fresh.append(p)
        if not fresh:
            break
        gens.extend(fresh)
        span = additive_span(gens)

    ordered = tuple(sorted(span, key=ambient.index))
    return GeneratedSubring(ambient, (x, y), ordered)


def word_eval(word, x, y):
    """Left-to-right product of the generators named by the word symbols."""
    if len(word) == 0:
        raise EmptyWordError("cannot evaluate the empty word")
    lookup = {"x": x, "y": y}
    acc = None
    for sym in word:
        try:
            g = lookup[sym]
        except KeyError:
            raise ValueError(f"unknown word symbol {sym!r}") from None
        acc = g if acc is None else acc * g
    return acc


def check_inner_on_subring(
    S: GeneratedSubring,
    delta,
    d,
    pair_cap: int = ADDITIVITY_PAIR_CAP,
    pair_samples: int = ADDITIVITY_PAIR_SAMPLE,
    seed: int = DEFAULT_SEED,
    max_failures: int = 1,
) -> VerificationReport:
    """Verify delta(p) = d*p - p*d on the whole closure.

    Additivity of delta on S is the hypothesis and is checked first; a
    violation is reported in the result, not raised.  Disagreement at a
    generator breaks the entry precondition and raises.  The report notes
    whether d landed inside the closure.
    """
    ambient = S.ambient
    add, mul, sub = ambient.add, ambient.mul, ambient.sub
    lookup = delta.__getitem__ if isinstance(delta, dict) else delta
    values = {p: lookup(p) for p in S.elements}

    report = VerificationReport(
        witness=d,
        notes=("d inside closure" if d in set(S.elements) else "d outside closure",),
    )

    elements = S.elements
    count = len(elements)
    if count * count <= pair_cap:
        pairs = product(elements, elements)
    else:
        rng = rng_for(seed, f"additivity:{ambient.spec}")
        pairs = (
            (elements[rng.randrange(count)], elements[rng.randrange(count)])
            for _ in range(pair_samples)
        )
        report.seed = seed
    for u, v in pairs:
        report.checked += 1
        if values[add(u, v)] != add(values[u], values[v]):
            report.failures.append(
                Failure((u, v), add(values[u], values[v]), values[add(u, v)], "not additive")
            )
            return report

    for g in S.generators:
        if values[g] != sub(mul(d, g), mul(g, d)):
            raise PreconditionError(
                "delta disagrees with the commutator map of d at a generator"
            )

    for p in elements:
        report.checked += 1
        got = sub(mul(d, p), mul(p, d))
        if values[p] != got:
            report.failures.append(Failure((p,), values[p], got, "not implemented by d"))
            if len(report.failures) >= max_failures:
                return report
    return report
