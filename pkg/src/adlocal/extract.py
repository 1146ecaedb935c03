"""Witness extraction: recover one implementing element for an inner
2-local derivation on M_n(R) from its pair oracle.

The construction interrogates the oracle only on the pairs (e_ij, x_o),
where x_o is the staircase element.  Off-diagonal entries of the result
come from the transposed sandwich e_ii * a(ji) * e_jj of the collected
witnesses; diagonal entries come from the witness answered for one fixed
unit pair.  Over a commutative base ring the assembled element implements
the induced map everywhere; verifying that is the caller's job
(:func:`adlocal.deriv.maps_equal`), extraction itself only assembles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deriv import Failure, VerificationReport, WitnessOracle
from .errors import (
    DimensionError,
    MissingWitnessError,
    NonCommutativeBaseError,
    PreconditionError,
)
from .matrix import Matrix, commutator, matrix_unit, pierce_component, staircase
from .rings import is_commutative


@dataclass
class ExtractionState:
    """Everything the assembly produced, kept for auditing."""

    n: int
    fixed_pair: tuple
    unit_witnesses: dict
    offdiag: Matrix
    diag_source: Matrix
    abar: Matrix
    oracle_queries: int


def collect_unit_witnesses(oracle: WitnessOracle, n: int) -> dict:
    """a(ij) = select(e_ij, x_o) for every ordered pair of distinct indices.

    Any InconsistentOracleError the oracle raises while answering (lazily
    validated oracles do) propagates.  The collection itself imposes no
    cross-witness condition: the assembly reads each witness only at the
    entries its own pair pins down, so oracles that are well defined just
    on the queried pairs still extract (compression discards the rest).
    """
    if n < 2:
        raise DimensionError("unit witnesses need dimension at least 2")
    base = oracle.carrier.base
    xo = staircase(base, n)
    witnesses = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            witnesses[(i, j)] = oracle.select(matrix_unit(base, n, i, j), xo)
    return witnesses


def assemble_offdiagonal(unit_witnesses: dict, n: int) -> Matrix:
    """Sum of e_ii * a(ji) * e_jj over all ordered pairs i != j.

    Note the index transposition: entry (i, j) is read from the witness
    collected for the unit e_ji.
    """
    try:
        sample = next(iter(unit_witnesses.values()))
    except StopIteration:
        raise MissingWitnessError("empty witness table") from None
    base = sample.ring
    z = base.zero
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            w = unit_witnesses.get((j + 1, i + 1))
            if w is None:
                raise MissingWitnessError(f"no witness for unit ({j + 1},{i + 1})")
            rows[i][j] = w.rows[i][j]
    return Matrix(base, tuple(tuple(r) for r in rows))


def diagonal_from_fixed_pair(oracle: WitnessOracle, n: int, i_o: int, j_o: int) -> Matrix:
    """The witness c answered for the fixed pair (e_{i_o j_o}, x_o); the
    consumer keeps only its diagonal components."""
    if i_o == j_o:
        raise ValueError("fixed pair needs distinct indices")
    base = oracle.carrier.base
    return oracle.select(matrix_unit(base, n, i_o, j_o), staircase(base, n))


def run_extraction(
    oracle: WitnessOracle,
    n: int,
    i_o: int = 1,
    j_o: int = 2,
    force: bool = False,
) -> ExtractionState:
    """Assemble the implementing element from n(n-1) oracle queries.

    The fixed pair coincides with one of the unit queries, so its answer
    is reused rather than asked again.  A non-commutative base ring is
    outside the construction's guarantee and is refused unless ``force``.
    """
    base = oracle.carrier.base
    if not is_commutative(base) and not force:
        raise NonCommutativeBaseError(
            f"{base.spec} is not commutative; extraction is only guaranteed "
            "over commutative base rings (force=True probes anyway)"
        )
    witnesses = collect_unit_witnesses(oracle, n)
    c = witnesses[(i_o, j_o)]
    offdiag = assemble_offdiagonal(witnesses, n)
    rows = [list(r) for r in offdiag.rows]
    for i in range(n):
        rows[i][i] = c.rows[i][i]
    abar = Matrix(base, tuple(tuple(r) for r in rows))
    return ExtractionState(
        n=n,
        fixed_pair=(i_o, j_o),
        unit_witnesses=witnesses,
        offdiag=offdiag,
        diag_source=c,
        abar=abar,
        oracle_queries=n * (n - 1),
    )


def extract_witness(
    oracle: WitnessOracle,
    n: int,
    i_o: int = 1,
    j_o: int = 2,
    force: bool = False,
) -> Matrix:
    return run_extraction(oracle, n, i_o, j_o, force).abar


def verify_unit_image_formula(
    oracle: WitnessOracle,
    n: int,
    i: int,
    j: int,
    unit_witnesses: dict | None = None,
    max_failures: int = 1,
) -> VerificationReport:
    """Check that the induced unit image decomposes against the assembled
    off-diagonal sum:

        value(e_ij) = S e_ij - e_ij S + (a(ij))_ii e_ij - e_ij (a(ij))_jj

    with S the off-diagonal assembly.  For n >= 3 the check also replays
    the eight component identities behind that decomposition, querying the
    extra witnesses select(e_im, e_ij) and select(e_mj, e_ij) for every
    index m distinct from i and j; for n = 2 there is no such m and the
    replay is an empty quantifier.
    """
    if i == j:
        raise ValueError("needs distinct indices")
    base = oracle.carrier.base
    if unit_witnesses is None:
        unit_witnesses = collect_unit_witnesses(oracle, n)
    e = {
        (k, l): matrix_unit(base, n, k, l)
        for k in range(1, n + 1)
        for l in range(1, n + 1)
    }
    S = assemble_offdiagonal(unit_witnesses, n)
    aij = unit_witnesses[(i, j)]
    delta = commutator(aij, e[(i, j)])

    report = VerificationReport()

    def record(tag, lhs, rhs, inputs):
        report.checked += 1
        if lhs != rhs:
            report.failures.append(Failure(inputs, rhs, lhs, tag))
        return len(report.failures) < max_failures

    rhs = (
        S * e[(i, j)]
        - e[(i, j)] * S
        + pierce_component(aij, i, i) * e[(i, j)]
        - e[(i, j)] * pierce_component(aij, j, j)
    )
    if not record("unit image formula", delta, rhs, (e[(i, j)],)):
        return report

    if n < 3:
        return report

    T = S * e[(i, j)] - e[(i, j)] * S
    if not record(
        "component (i,i)", pierce_component(delta, i, i), pierce_component(T, i, i), (e[(i, j)],)
    ):
        return report
    if not record(
        "component (j,j)", pierce_component(delta, j, j), pierce_component(T, j, j), (e[(i, j)],)
    ):
        return report
    for m in range(1, n + 1):
        if m in (i, j):
            continue
        w_im = oracle.select(e[(i, m)], e[(i, j)])
        w_mj = oracle.select(e[(m, j)], e[(i, j)])
        checks = (
            (
                "witness overlap at (i,m)",
                e[(m, m)] * w_im * e[(i, j)],
                e[(m, m)] * unit_witnesses[(i, m)] * e[(i, j)],
            ),
            (
                "witness overlap at (m,j)",
                e[(i, j)] * w_mj * e[(m, m)],
                e[(i, j)] * unit_witnesses[(m, j)] * e[(m, m)],
            ),
            ("component (m,j)", pierce_component(delta, m, j), pierce_component(T, m, j)),
            ("component (m,i)", pierce_component(delta, m, i), pierce_component(T, m, i)),
            ("component (i,m)", pierce_component(delta, i, m), pierce_component(T, i, m)),
            ("component (j,m)", pierce_component(delta, j, m), pierce_component(T, j, m)),
        )
        for tag, lhs, rhs in checks:
            if not record(tag, lhs, rhs, (e[(i, j)], e[(m, m)])):
                return report
    return report


def verify_diagonal_differences(b: Matrix, c: Matrix, max_failures: int = 1) -> VerificationReport:
    """Two elements with the same commutator against the staircase element
    must have identical diagonal differences: c_kk - c_ll = b_kk - b_ll
    for every pair of distinct indices."""
    if b.n != c.n or b.ring != c.ring:
        raise PreconditionError("operands live in different matrix rings")
    base, n = b.ring, b.n
    xo = staircase(base, n)
    if commutator(b, xo) != commutator(c, xo):
        raise PreconditionError("operands do not implement the same staircase value")
    sub = base.sub
    report = VerificationReport()
    for k in range(n):
        for l in range(n):
            if k == l:
                continue
            report.checked += 1
            lhs = sub(c.rows[k][k], c.rows[l][l])
            rhs = sub(b.rows[k][k], b.rows[l][l])
            if lhs != rhs:
                report.failures.append(Failure((b, c), rhs, lhs, f"diagonal pair ({k + 1},{l + 1})"))
                if len(report.failures) >= max_failures:
                    return report
    return report
