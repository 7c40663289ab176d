"""
Command-line surface: solve, gen, oracle, verify and bench.

Exit codes: 0 pass, 1 verification failed, 2 input error, 3 model
violation, 4 oracle cap.
"""

import argparse
import logging
import sys
from typing import Sequence

from src.algorithms.cover_engine import verify_certificate
from src.analysis.oracle import OracleLimit, exact_alpha, exact_beta, exact_phi_small
from src.backtest.benchmark import Benchmark
from src.cli.pipeline import BASES, MODES, solve_instance
from src.frontends.instance_frontends import build_model
from src.utils.config import BENCH_REPETITIONS, DEFAULT_COORD_MAX, FORMAT_VERSION, LOG_FORMAT, LOG_LEVEL
from src.utils.errors import (
    ContractViolationError, CoverError, InstanceError, ModelViolationError, OracleLimitError,
)
from src.utils.generators import generate
from src.utils.instance_io import (
    INSTANCE_TYPES, certificate_to_dict, dumps_canonical, instance_to_dict,
    load_certificate, load_instance, write_text,
)

# Setup logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_MODEL = 3
EXIT_ORACLE_CAP = 4


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    instance = load_instance(args.input)
    outcome = solve_instance(instance, mode=args.mode, base=args.base)
    cert = outcome.certificate
    if args.no_check:
        _emit(dumps_canonical(certificate_to_dict(cert)), args.out)
        return EXIT_OK

    report = verify_certificate(outcome.graph, cert)
    _emit(dumps_canonical(certificate_to_dict(cert, report)), args.out)
    for failure in report.failures:
        logger.error("verification: %s", failure)
    logger.info("%s: cover=%d independent=%d bound=%.6g passed=%s",
                outcome.mode, len(cert.cover), len(cert.independent), cert.bound, report.passed)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_gen(args) -> int:
    instance = generate(args.type, args.n, args.seed, args.coord_max)
    _emit(dumps_canonical(instance_to_dict(instance)), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    instance = load_instance(args.input)
    model, graph = build_model(instance)
    limit = OracleLimit.from_config()
    alpha = exact_alpha(graph, limit)
    beta = exact_beta(graph, limit)
    result = {
        "v": FORMAT_VERSION,
        "n": graph.n,
        "alpha": alpha.value,
        "alpha_witness": list(alpha.witness),
        "beta": beta.value,
        "beta_witness": [list(part) for part in beta.witness],
    }
    if args.phi:
        if not model.interval_layers:
            raise InstanceError("phi needs an interval layer")
        phi = exact_phi_small(graph, model.interval_layers[0], limit)
        result["phi"] = str(phi.value)
        result["phi_mode"] = phi.mode
        result["phi_witness"] = list(phi.witness)

    code = EXIT_OK
    if args.cert:
        cert = load_certificate(args.cert)
        result["cover"] = len(cert.cover)
        result["ratio"] = len(cert.cover) / beta.value if beta.value else 0.0
        if len(cert.independent) > alpha.value or len(cert.cover) < beta.value:
            logger.error("certificate (cover=%d, independent=%d) contradicts alpha=%d beta=%d",
                         len(cert.cover), len(cert.independent), alpha.value, beta.value)
            code = EXIT_VERIFY_FAILED
    _emit(dumps_canonical(result), args.out)
    return code


def cmd_verify(args) -> int:
    instance = load_instance(args.input)
    _, graph = build_model(instance)
    cert = load_certificate(args.cert)
    report = verify_certificate(graph, cert)
    for failure in report.failures:
        logger.error("verification: %s", failure)
    _emit(dumps_canonical({"v": FORMAT_VERSION, "checks": report.checks, "failures": report.failures}), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_bench(args) -> int:
    bench = Benchmark(args.type, args.sizes, args.seeds, args.repetitions, args.coord_max)
    table = bench.run()
    sys.stdout.write(table.to_csv(index=False))
    return EXIT_OK


def _seed(value: str) -> int:
    seed = int(value)
    if not -(1 << 63) <= seed < (1 << 64):
        raise argparse.ArgumentTypeError(f"seed {value} is not a 64-bit value")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cover",
        description="Clique covers and independent sets with a certified approximation bound",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance and write a certificate")
    p.add_argument("input", help="instance JSON")
    p.add_argument("--out", "-o", help="certificate path (default stdout)")
    p.add_argument("--mode", choices=MODES, help="solver (default inferred from the instance)")
    p.add_argument("--base", choices=BASES, default="greedy", help="base solver on G in theorem1 mode")
    p.add_argument("--no-check", action="store_true", help="skip certificate verification")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("type", choices=INSTANCE_TYPES)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--coord-max", type=int, default=DEFAULT_COORD_MAX)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exact alpha and beta for a small instance")
    p.add_argument("input")
    p.add_argument("--cert", help="certificate to compare against")
    p.add_argument("--phi", action="store_true", help="also compute phi(G, H1)")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="re-check a certificate against its instance")
    p.add_argument("input")
    p.add_argument("cert")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the solver over seeded instances, CSV on stdout")
    p.add_argument("--type", choices=INSTANCE_TYPES, default="rectangles")
    p.add_argument("--sizes", type=int, nargs="+", default=[1000, 2000, 4000])
    p.add_argument("--seeds", type=_seed, nargs="+", default=[0])
    p.add_argument("--repetitions", type=int, default=BENCH_REPETITIONS)
    p.add_argument("--coord-max", type=int, default=DEFAULT_COORD_MAX)
    p.set_defaults(func=cmd_bench)
    return parser


def setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    setup_logging(args.verbose)

    try:
        return args.func(args)
    except OracleLimitError as e:
        logger.error("%s", e)
        return EXIT_ORACLE_CAP
    except ModelViolationError as e:
        logger.error("model violation: %s", e)
        return EXIT_MODEL
    except ContractViolationError as e:
        logger.error("contract violation: %s", e)
        return EXIT_VERIFY_FAILED
    except CoverError as e:
        logger.error("input error: %s", e)
        return EXIT_INPUT

