"""Batch experiment harness with deterministic JSON reports.

Each experiment configures one carrier M_n(R), runs a verification suite,
and emits a single JSON document with the fixed key order
config, status, checks, failures, witnesses, seed, elapsed_ms.  Two runs
with the same config produce identical bytes except elapsed_ms.

Exit codes: 0 pass, 2 verification failure (a mathematical counterexample),
3 configuration error, 4 report I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from .deriv import (
    DerivationMap,
    WitnessOracle,
    adversarial_oracle,
    check_derivation,
    check_two_local,
    inner_derivation,
    verification_domain,
    verification_elements,
    witness_search,
)
from .errors import (
    CarrierTooLargeError,
    DimensionError,
    InfiniteRingError,
    NonCommutativeBaseError,
    PreconditionError,
    VerificationFailedError,
)
from .extend import (
    extend_derivation_to_n,
    extend_extract_compress,
    extend_two_local_to_n,
)
from .extract import (
    collect_unit_witnesses,
    extract_witness,
    verify_diagonal_differences,
    verify_unit_image_formula,
)
from .matrix import (
    Matrix,
    commutator,
    corner_embed,
    matrix_ring,
    matrix_to_strings,
    matrix_unit,
    staircase,
)
from .rings import parse_ring_spec
from .sampling import rng_for
from .twogen import check_inner_on_subring, generate_subring

EXPERIMENTS = (
    "extract-all",
    "lemma2",
    "lemma3",
    "extend-deriv",
    "extend-2local",
    "prop9",
    "prop10",
    "two-local-check",
)

EXHAUSTIVE_WITNESS_CAP = 512


@dataclass
class ExperimentConfig:
    ring: str
    n: int
    experiment: str
    seed: int = 0
    pair_samples: int = 100_000
    element_samples: int = 10_000
    two_local_pairs: int = 1_000
    witness_samples: int = 100
    gen_pairs: int = 50
    force: bool = False


@dataclass
class RunReport:
    config: dict
    status: str
    checks: int
    failures: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    seed: int = 0
    elapsed_ms: int = 0


class CliConfigError(Exception):
    pass


def _ser(value):
    if isinstance(value, Matrix):
        return matrix_to_strings(value)
    if isinstance(value, (tuple, list)):
        return [_ser(v) for v in value]
    if value is None or isinstance(value, (str, int)):
        return value
    return str(value)


def _fail_record(inputs, expected, got):
    return {"inputs": _ser(inputs), "expected": _ser(expected), "got": _ser(got)}


def _report_failures(report):
    return [_fail_record(f.inputs, f.expected, f.got) for f in report.failures]


def _witness_targets(cfg, carrier):
    card = carrier.cardinality
    if card is not None and card <= EXHAUSTIVE_WITNESS_CAP:
        return carrier.elements()
    rng = rng_for(cfg.seed, f"witnesses:{carrier.spec}")
    return [carrier.element(rng.randrange(card)) for _ in range(cfg.witness_samples)]


def _run_extract_all(cfg, base):
    carrier = matrix_ring(base, cfg.n)
    domain = verification_elements(carrier, cfg.seed, sample=cfg.element_samples)
    checks, failures, witnesses = 0, [], []
    for a in _witness_targets(cfg, carrier):
        oracle = adversarial_oracle(a, carrier)
        abar = extract_witness(oracle, cfg.n, force=cfg.force)
        witnesses.append(abar)
        for x in domain:
            checks += 1
            got = commutator(abar, x)
            want = commutator(a, x)
            if got != want:
                failures.append(_fail_record((a, x), want, got))
                return checks, failures, witnesses
    return checks, failures, witnesses


def _run_lemma2(cfg, base):
    carrier = matrix_ring(base, cfg.n)
    checks, failures = 0, []
    for a in _witness_targets(cfg, carrier):
        oracle = adversarial_oracle(a, carrier)
        table = collect_unit_witnesses(oracle, cfg.n)
        for i in range(1, cfg.n + 1):
            for j in range(1, cfg.n + 1):
                if i == j:
                    continue
                rep = verify_unit_image_formula(oracle, cfg.n, i, j, unit_witnesses=table)
                checks += rep.checked
                if not rep.passed:
                    failures.extend(_report_failures(rep))
                    return checks, failures, []
    return checks, failures, []


def _run_lemma3(cfg, base):
    carrier = matrix_ring(base, cfg.n)
    xo = staircase(base, cfg.n)
    buckets = {}
    for v in carrier.elements():
        buckets.setdefault(commutator(v, xo), []).append(v)
    checks, failures = 0, []
    for group in buckets.values():
        for b in group:
            for c in group:
                rep = verify_diagonal_differences(b, c)
                checks += 1
                if not rep.passed:
                    failures.extend(_report_failures(rep))
                    return checks, failures, []
    return checks, failures, []


def _corner_e12(base):
    return matrix_unit(base, 2, 1, 2)


def _run_extend_deriv(cfg, base):
    corner_ring = matrix_ring(base, 2)
    D = inner_derivation(_corner_e12(base), corner_ring, cfg.seed)
    ext = extend_derivation_to_n(D, cfg.n, validate=False)
    rep = check_derivation(ext, pair_samples=cfg.pair_samples, seed=cfg.seed)
    checks, failures = rep.checked, _report_failures(rep)
    if failures:
        return checks, failures, []
    for v in corner_ring.elements():
        checks += 1
        got = ext.evaluate(corner_embed(v, cfg.n))
        want = corner_embed(D.evaluate(v), cfg.n)
        if got != want:
            failures.append(_fail_record((v,), want, got))
            return checks, failures, []
    return checks, failures, []


def _run_extend_2local(cfg, base):
    corner_ring = matrix_ring(base, 2)
    carrier = matrix_ring(base, cfg.n)
    corner_elements = corner_ring.elements()
    checks, failures = 0, []
    for a in _witness_targets(cfg, corner_ring):
        oracle = adversarial_oracle(a, corner_ring)
        ext = extend_two_local_to_n(oracle, cfg.n)
        for v in corner_elements:
            checks += 1
            got = ext.value(corner_embed(v, cfg.n))
            want = corner_embed(oracle.value(v), cfg.n)
            if got != want:
                failures.append(_fail_record((a, v), want, got))
                return checks, failures, []
    # sampled global 2-locality: run on a constant-witness corner oracle,
    # whose per-pair answers patch into one map (adversarial minimal
    # witnesses provably do not extend to a globally 2-local map)
    w = _corner_e12(base)
    oracle = WitnessOracle(corner_ring, lambda x, y: w)
    ext = extend_two_local_to_n(oracle, cfg.n)
    dmap = DerivationMap(carrier, ext.value, verification_domain(carrier, cfg.seed))
    rep = check_two_local(dmap, pair_cap=0, pair_samples=cfg.two_local_pairs, seed=cfg.seed)
    checks += rep.checked
    failures.extend(_report_failures(rep))
    return checks, failures, []


def _run_prop9(cfg, base):
    corner_ring = matrix_ring(base, 2)
    checks, failures, witnesses = 0, [], []
    for a in _witness_targets(cfg, corner_ring):
        oracle = adversarial_oracle(a, corner_ring)
        try:
            c = extend_extract_compress(oracle, cfg.n, force=cfg.force)
        except VerificationFailedError as exc:
            failures.append(_fail_record((a, exc.counterexample), None, None))
            return checks, failures, witnesses
        witnesses.append(c)
        checks += len(corner_ring.elements())
    return checks, failures, witnesses


def _run_prop10(cfg, base):
    ambient = matrix_ring(base, cfg.n)
    e12 = matrix_unit(base, cfg.n, 1, 2)
    e21 = matrix_unit(base, cfg.n, 2, 1)
    runs = [(e12, e21, e12)]
    rng = rng_for(cfg.seed, f"gen-pairs:{ambient.spec}")
    card = ambient.cardinality
    for _ in range(cfg.gen_pairs):
        runs.append(
            (
                ambient.element(rng.randrange(card)),
                ambient.element(rng.randrange(card)),
                ambient.element(rng.randrange(card)),
            )
        )
    checks, failures, witnesses = 0, [], []
    for x, y, a in runs:
        S = generate_subring(x, y, ambient)
        oracle = adversarial_oracle(a, ambient)
        delta = {p: oracle.value(p) for p in S.elements}
        d = witness_search(ambient, [(x, delta[x]), (y, delta[y])])
        if d is None:
            failures.append(_fail_record((x, y), (delta[x], delta[y]), None))
            return checks, failures, witnesses
        rep = check_inner_on_subring(S, delta, d, seed=cfg.seed)
        checks += rep.checked
        witnesses.append(d)
        if not rep.passed:
            failures.extend(_report_failures(rep))
            return checks, failures, witnesses
    # negative control: the identity map must be rejected on <e12, e21>,
    # either for lack of any generator-pair witness or on the closure
    S0 = generate_subring(e12, e21, ambient)
    identity_table = {p: p for p in S0.elements}
    d0 = witness_search(ambient, [(e12, e12), (e21, e21)])
    if d0 is not None:
        rep0 = check_inner_on_subring(S0, identity_table, d0)
        checks += rep0.checked
        if rep0.passed:
            failures.append(
                _fail_record((e12, e21), "rejection of the identity map", "accepted")
            )
    return checks, failures, witnesses


def _run_two_local_check(cfg, base):
    carrier = matrix_ring(base, cfg.n)
    card = carrier.cardinality
    if card is not None and card <= 64:
        targets = carrier.elements()
    else:
        rng = rng_for(cfg.seed, f"two-local-maps:{carrier.spec}")
        targets = [carrier.element(rng.randrange(card)) for _ in range(16)]
    checks, failures = 0, []
    for a in targets:
        rep = check_two_local(
            inner_derivation(a, carrier, cfg.seed),
            pair_samples=cfg.two_local_pairs,
            seed=cfg.seed,
        )
        checks += rep.checked
        if not rep.passed:
            failures.extend(_report_failures(rep))
            return checks, failures, []
    # negative control: the identity map must be rejected at (e11, e11)
    ident = DerivationMap(carrier, lambda x: x, verification_domain(carrier, cfg.seed))
    rep = check_two_local(ident, pair_samples=cfg.two_local_pairs, seed=cfg.seed)
    checks += rep.checked
    e11 = matrix_unit(base, cfg.n, 1, 1)
    if rep.passed:
        failures.append(_fail_record((e11, e11), "rejection of the identity map", "accepted"))
    elif rep.failures[0].inputs != (e11, e11):
        failures.append(
            _fail_record(rep.failures[0].inputs, (e11, e11), "wrong counterexample pair")
        )
    return checks, failures, []


_RUNNERS = {
    "extract-all": _run_extract_all,
    "lemma2": _run_lemma2,
    "lemma3": _run_lemma3,
    "extend-deriv": _run_extend_deriv,
    "extend-2local": _run_extend_2local,
    "prop9": _run_prop9,
    "prop10": _run_prop10,
    "two-local-check": _run_two_local_check,
}

_CONFIG_ERRORS = (
    ValueError,
    CliConfigError,
    NonCommutativeBaseError,
    InfiniteRingError,
    CarrierTooLargeError,
    DimensionError,
    PreconditionError,
)


def run(config: ExperimentConfig) -> RunReport:
    """Dispatch one experiment; exceptions become status "error"."""
    start = time.perf_counter()
    echo = asdict(config)
    try:
        if config.experiment not in _RUNNERS:
            raise CliConfigError(f"unknown experiment {config.experiment!r}")
        if config.n < 2:
            raise CliConfigError("matrix experiments need n >= 2")
        base = parse_ring_spec(config.ring)
        checks, failures, witnesses = _RUNNERS[config.experiment](config, base)
        status = "pass" if not failures else "fail"
    except _CONFIG_ERRORS as exc:
        print(f"adlocal: {exc}", file=sys.stderr)
        checks, failures, witnesses, status = 0, [], [], "error"
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return RunReport(
        config=echo,
        status=status,
        checks=checks,
        failures=failures,
        witnesses=[_ser(w) for w in witnesses],
        seed=config.seed,
        elapsed_ms=elapsed_ms,
    )


def emit_report(report: RunReport, path: str | None = None, stream=None) -> str:
    """Serialize with the fixed key order; write to the path or the stream."""
    doc = {
        "config": report.config,
        "status": report.status,
        "checks": report.checks,
        "failures": report.failures,
        "witnesses": report.witnesses,
        "seed": report.seed,
        "elapsed_ms": report.elapsed_ms,
    }
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        (stream or sys.stdout).write(text)
    return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adlocal", description=__doc__)
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--ring", required=True, help="zmod:<m> | poly:<m>:<k> | mat:<spec>:<n>")
    parser.add_argument("--n", type=int, required=True, help="matrix dimension (>= 2)")
    parser.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get("ADLOCAL_SEED", "0")),
        help="root seed for every sampled budget (env ADLOCAL_SEED overrides the default)",
    )
    parser.add_argument("--pair-samples", type=int, default=100_000)
    parser.add_argument("--element-samples", type=int, default=10_000)
    parser.add_argument("--two-local-pairs", type=int, default=1_000)
    parser.add_argument("--witness-samples", type=int, default=100)
    parser.add_argument("--gen-pairs", type=int, default=50)
    parser.add_argument("--force", action="store_true", help="probe non-commutative base rings")
    parser.add_argument("--json", dest="json_path", default=None, help="write the report here")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        for name in ("pair_samples", "element_samples", "two_local_pairs", "witness_samples"):
            if getattr(args, name) <= 0:
                raise CliConfigError(f"--{name.replace('_', '-')} must be positive")
        if args.gen_pairs < 0:
            raise CliConfigError("--gen-pairs must not be negative")
        config = ExperimentConfig(
            ring=args.ring,
            n=args.n,
            experiment=args.experiment,
            seed=args.seed,
            pair_samples=args.pair_samples,
            element_samples=args.element_samples,
            two_local_pairs=args.two_local_pairs,
            witness_samples=args.witness_samples,
            gen_pairs=args.gen_pairs,
            force=args.force,
        )
    except CliConfigError as exc:
        print(f"adlocal: {exc}", file=sys.stderr)
        return 3
    report = run(config)
    try:
        emit_report(report, path=args.json_path)
    except OSError as exc:
        print(f"adlocal: cannot write report: {exc}", file=sys.stderr)
        return 4
    if report.status == "pass":
        return 0
    if report.status == "fail":
        return 2
    return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
