"""Extension machinery: maps given on a corner grow to the full matrix ring.

A derivation D on the top-left corner of the 2x2 block ring M_2(A) extends
to the whole ring: it acts as given on the (1,1) corner, is transported to
the (2,2) corner through the isomorphism a -> e21*a*e12, and the two
off-diagonal block units get fixed images e12 -> e12, e21 -> -e21, which
settles the remaining Pierce components entrywise.  Doubling this step and
finally compressing with the idempotent e = e_11 + ... + e_nn extends a
derivation from a 2x2 corner to M_n(R) for any n.

The 2-local analogue answers each queried pair lazily: it picks one corner
point per argument (first nonzero Pierce block, in the order (1,1), (2,2),
(1,2), (2,1), each transported into the corner), asks the corner oracle for
that pair of points, and replies with the witness of the extension of the
corner witness's inner derivation.  Nothing is materialized globally.

The roundtrip at the end extends a corner oracle to M_n(R), extracts one
implementing element there, and compresses it back to the corner.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deriv import (
    DEFAULT_SEED,
    DerivationMap,
    WitnessOracle,
    check_derivation,
    verification_domain,
    verification_elements,
)
from .errors import (
    DimensionError,
    InconsistentOracleError,
    NonCommutativeBaseError,
    NotADerivationError,
    ShapeMismatchError,
    VerificationFailedError,
)
from .extract import extract_witness
from .matrix import (
    CornerContext,
    Matrix,
    MatrixRing,
    block_flatten,
    block_view,
    corner_compress,
    corner_embed,
    corner_extract,
    matrix_ring,
    matrix_unit,
)
from .rings import Ring, is_commutative

MEMO_CAP = 4096


@dataclass
class ExtensionTrace:
    """Audit record of a doubling chain: the dimensions visited, the final
    compressing idempotent (None when the target is a power of two), and
    the intermediate extended maps or oracles."""

    dimensions: tuple
    idempotent: Matrix | None
    stages: tuple
    result: object


def phi(x: Matrix) -> Matrix:
    """Corner transport e21 * x * e12: moves the (1,1) corner to (2,2)."""
    if x.n != 2:
        raise ShapeMismatchError("corner transport is defined on 2x2 block matrices")
    e12 = matrix_unit(x.ring, 2, 1, 2)
    e21 = matrix_unit(x.ring, 2, 2, 1)
    return e21 * x * e12


def phi_inv(x: Matrix) -> Matrix:
    """Inverse transport e12 * x * e21: moves the (2,2) corner to (1,1)."""
    if x.n != 2:
        raise ShapeMismatchError("corner transport is defined on 2x2 block matrices")
    e12 = matrix_unit(x.ring, 2, 1, 2)
    e21 = matrix_unit(x.ring, 2, 2, 1)
    return e12 * x * e21


def _memoized_map(evaluate, ring: Ring):
    card = ring.cardinality
    if card is None or card > MEMO_CAP:
        return evaluate
    table = {x: evaluate(x) for x in ring.elements()}
    return table.__getitem__


def extend_corner_derivation(D: DerivationMap, check: bool = True) -> DerivationMap:
    """Extend a derivation on the corner ring A to all of M_2(A).

    Entrywise, the extension sends [[b11, b12], [b21, b22]] to
    [[D(b11), D(b12) + b12], [D(b21) - b21, D(b22)]]: the (1,1) entry is
    the given map, the (2,2) entry is the map transported through the
    corner isomorphism, and the off-diagonal entries pick up the fixed
    images of the off-diagonal units.
    """
    A = D.carrier
    if check:
        admission = check_derivation(D)
        if not admission.passed:
            f = admission.failures[0]
            raise NotADerivationError(f"corner map fails {f.note} at {f.inputs}")
    dv = _memoized_map(D.evaluate, A)
    add, sub = A.add, A.sub
    big = matrix_ring(A, 2)

    def evaluate(x):
        (b11, b12), (b21, b22) = x.rows
        return Matrix(
            A,
            (
                (dv(b11), add(dv(b12), b12)),
                (sub(dv(b21), b21), dv(b22)),
            ),
        )

    witness = None
    if D.witness is not None:
        # inner input gives an inner extension; diag(b, b-1) implements it
        witness = Matrix(
            A, ((D.witness, A.zero), (A.zero, A.sub(D.witness, A.one)))
        )
    return DerivationMap(big, evaluate, verification_domain(big), witness=witness)


def _chain_dimensions(start: int, n: int) -> tuple:
    dims = [start]
    while dims[-1] < n:
        dims.append(dims[-1] * 2)
    return tuple(dims)


def double_derivation(D: DerivationMap) -> DerivationMap:
    """One doubling step: the corner extension of a derivation on M_m(R),
    read back on flat 2m x 2m matrices through the block reinterpretation.

    When the corner carrier is small the three per-block maps (the given
    map, map + identity, map - identity) are tabulated once and evaluation
    is pure block lookup; otherwise it composes block_view, the corner
    extension, and block_flatten directly.  Both routes compute the same
    map.
    """
    A = D.carrier
    if not isinstance(A, MatrixRing):
        raise ShapeMismatchError("doubling needs a matrix-ring carrier")
    R, m = A.base, A.n
    flat_ring = matrix_ring(R, 2 * m)
    card = A.cardinality
    if card is not None and card <= MEMO_CAP:
        diag_t, plus_t, minus_t = {}, {}, {}
        for v in A.elements():
            img = D.evaluate(v)
            diag_t[v.rows] = img.rows
            plus_t[v.rows] = (img + v).rows
            minus_t[v.rows] = (img - v).rows

        def evaluate(x):
            r = x.rows
            top, bottom = r[:m], r[m:]
            t11 = diag_t[tuple(row[:m] for row in top)]
            t12 = plus_t[tuple(row[m:] for row in top)]
            t21 = minus_t[tuple(row[:m] for row in bottom)]
            t22 = diag_t[tuple(row[m:] for row in bottom)]
            rows = tuple(t11[i] + t12[i] for i in range(m)) + tuple(
                t21[i] + t22[i] for i in range(m)
            )
            return Matrix(R, rows)

    else:
        block_ext = extend_corner_derivation(D, check=False)

        def evaluate(x, f=block_ext.evaluate, m=m):
            return block_flatten(f(block_view(x, m)))

    return DerivationMap(flat_ring, evaluate, verification_domain(flat_ring), witness=None)


def extend_derivation_trace(
    D: DerivationMap, n: int, validate: bool = True
) -> ExtensionTrace:
    """Double a corner derivation up to the least power of two >= n, then
    compress with the rank-n idempotent; the result restricts to D."""
    corner = D.carrier
    m = corner.n
    if n <= m:
        raise DimensionError(f"target dimension {n} does not exceed the corner {m}")
    R = corner.base
    dims = _chain_dimensions(m, n)
    current = D
    stages = []
    for _ in dims[1:]:
        current = double_derivation(current)
        stages.append(current)

    top = dims[-1]
    if top == n:
        result = current
        idempotent = None
    else:
        ctx = CornerContext(n, top, R)
        idempotent = ctx.idempotent
        target = matrix_ring(R, n)

        def evaluate(x, f=current.evaluate, top=top, n=n):
            return corner_extract(f(corner_embed(x, top)), n)

        result = DerivationMap(target, evaluate, verification_domain(target), witness=None)

    if validate:
        admission = check_derivation(result, pair_cap=0, pair_samples=512)
        if not admission.passed:
            f = admission.failures[0]
            raise NotADerivationError(f"extension fails {f.note} at {f.inputs}")
    return ExtensionTrace(dims, idempotent, tuple(stages), result)


def extend_derivation_to_n(D: DerivationMap, n: int, validate: bool = True) -> DerivationMap:
    return extend_derivation_trace(D, n, validate).result


def _ladder_point(x: Matrix, zero):
    """The corner point that selects the per-query derivation: the first
    nonzero Pierce block in the order (1,1), (2,2), (1,2), (2,1), each one
    transported into the corner (the transport is positional, the block
    content is untouched)."""
    (x1, x12), (x21, x2) = x.rows
    if x1 != zero:
        return x1
    if x2 != zero:
        return x2
    if x12 != zero:
        return x12
    return x21  # zero matrix falls through to the zero point


def extend_corner_two_local(oracle: WitnessOracle) -> WitnessOracle:
    """Extend a corner witness oracle to M_2(A), pair by pair.

    For a queried pair, the corner oracle is asked for the two ladder
    points; its witness w defines the corner derivation whose extension
    answers the query, and that extension is inner with witness
    diag(w, w - 1).  Corner answers are checked for consistency as they
    stream by: two answers implementing different values at the same
    corner point expose an inconsistent oracle.
    """
    A = oracle.carrier
    big = matrix_ring(A, 2)
    mul, sub = A.mul, A.sub
    zero, one = A.zero, A.one
    seen: dict = {}
    memo: dict = {}

    def check_point(w, p):
        val = sub(mul(w, p), mul(p, w))
        ref = seen.setdefault(p, val)
        if ref != val:
            raise InconsistentOracleError(
                "corner oracle implements two different values at one point"
            )

    def select(x, y):
        if big.index(y) < big.index(x):
            x, y = y, x
        key = (x, y)
        w_big = memo.get(key)
        if w_big is None:
            px = _ladder_point(x, zero)
            py = _ladder_point(y, zero)
            w = oracle.select(px, py)
            check_point(w, px)
            check_point(w, py)
            w_big = Matrix(A, ((w, zero), (zero, sub(w, one))))
            memo[key] = w_big
        return w_big

    return WitnessOracle(big, select)


def extend_two_local_trace(oracle: WitnessOracle, n: int) -> ExtensionTrace:
    """Doubling chain of corner 2-local extensions, then compression by the
    rank-n idempotent.  Compressed answers are the top-left n x n corner of
    the full-size answers, which implement the compressed values on
    corner-supported elements."""
    corner = oracle.carrier
    m = corner.n
    if n <= m:
        raise DimensionError(f"target dimension {n} does not exceed the corner {m}")
    R = corner.base
    dims = _chain_dimensions(m, n)
    current = oracle
    stages = []
    for dim in dims[1:]:
        half = dim // 2
        block_oracle = extend_corner_two_local(current)
        flat_ring = matrix_ring(R, dim)

        def select(x, y, bo=block_oracle.select, h=half):
            return block_flatten(bo(block_view(x, h), block_view(y, h)))

        current = WitnessOracle(flat_ring, select)
        stages.append(current)

    top = dims[-1]
    if top == n:
        result = current
        idempotent = None
    else:
        ctx = CornerContext(n, top, R)
        idempotent = ctx.idempotent
        target = matrix_ring(R, n)

        def select(x, y, ts=current.select, top=top, n=n):
            return corner_extract(ts(corner_embed(x, top), corner_embed(y, top)), n)

        result = WitnessOracle(target, select)
    return ExtensionTrace(dims, idempotent, tuple(stages), result)


def extend_two_local_to_n(oracle: WitnessOracle, n: int) -> WitnessOracle:
    return extend_two_local_trace(oracle, n).result


def extend_extract_compress(
    oracle: WitnessOracle,
    n: int,
    i_o: int = 1,
    j_o: int = 2,
    force: bool = False,
) -> Matrix:
    """Roundtrip: extend a corner oracle to M_n(R), extract one global
    implementing element d there, compress c = e d e back to the corner,
    and verify commutator(c, x) reproduces the corner map on every corner
    element.  Returns c as a 2x2 matrix; a counterexample raises."""
    corner = oracle.carrier
    R = corner.base
    if not is_commutative(R) and not force:
        raise NonCommutativeBaseError(
            f"{R.spec} is not commutative; the roundtrip is only guaranteed "
            "over commutative base rings (force=True probes anyway)"
        )
    nabla = extend_two_local_to_n(oracle, n)
    d = extract_witness(nabla, n, i_o, j_o, force=force)
    ctx = CornerContext(corner.n, n, R)
    compressed = corner_compress(d, ctx)
    c = corner_extract(compressed, corner.n)
    mul, sub = corner.mul, corner.sub
    for x in verification_elements(corner, seed=DEFAULT_SEED):
        if sub(mul(c, x), mul(x, c)) != oracle.value(x):
            raise VerificationFailedError(
                "compressed witness fails to implement the corner map",
                counterexample=x,
            )
    return c
