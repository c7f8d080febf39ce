"""Command line entry point: ``python -m liftgen <command> ...``"""
import argparse
import logging
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence

import logzero
from logzero import logger

from .components import (
    BruteForceModelCounter, KsDistributionValidator, LiftedModelCounter, LiftedModelSampler,
    ProblemNormalizer,
)
from .config import Settings
from .errors import LiftgenError, UnsatisfiableError
from .fol.syntax import Pred
from .harness.oracle import exact_distribution, mln_exact_distribution
from .harness.presets import PRESETS, preset, preset_mln, preset_text
from .harness.report import distribution_frame, ks_frame, model_distribution_frame, scaling_frame
from .harness.statistics import loglog_slope
from .logging.json_logger import JsonLogger
from .models import MlnSpec, OutputFormat, Problem
from .normalize.mln import mln_to_wfoms
from .textio.formatter import format_header, format_model, format_rational, format_record
from .textio.parser import parse_mln, parse_problem
from .wfomc.brute import brute_count
from .wfomc.counter import count_distribution
from .workflow import SamplingWorkflow

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNSAT = 2
EXIT_REJECTED = 3


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _is_mln(target: str, flag: bool) -> bool:
    if target in PRESETS:
        return PRESETS[target].mln
    return flag or Path(target).suffix == ".mln"


def load_mln(target: str, n: Optional[int] = None) -> MlnSpec:
    if target in PRESETS:
        return preset_mln(target, n or 3)
    spec = parse_mln(Path(target).read_text())
    spec = replace(spec, name=Path(target).stem)
    return replace(spec, domain_size=n) if n else spec


def load_problem(
    target: str,
    settings: Settings,
    n: Optional[int] = None,
    k: Optional[int] = None,
    mln: bool = False,
    extra_constraints: Sequence[str] = (),
) -> Problem:
    """A preset name or a problem file; ``.mln`` files (or ``--mln``) go
    through the MLN reduction"""
    if target in PRESETS:
        problem = preset(target, n or 3, {"k": k} if k is not None else None, settings.exp_precision)
    elif _is_mln(target, mln):
        problem = mln_to_wfoms(load_mln(target, n), settings.exp_precision).transformed
    else:
        path = Path(target)
        if not path.exists():
            raise LiftgenError(f"no such problem file or preset: {target}")
        text = path.read_text()
        problem = replace(parse_problem(text), name=path.stem)
        if n:
            problem = problem.with_domain(n)
    if extra_constraints:
        if target in PRESETS or _is_mln(target, mln):
            raise LiftgenError("--cc applies to problem files only")
        text = Path(target).read_text() + "".join(f"\ncc {c}" for c in extra_constraints)
        problem = replace(parse_problem(text), name=problem.name, domain_size=problem.domain_size)
    return problem


def _predicates(problem: Problem, names: Sequence[str]) -> List[Pred]:
    table = {p.name: p for p in problem.vocabulary}
    unknown = [name for name in names if name not in table]
    if unknown:
        raise LiftgenError(f"unknown predicates {', '.join(unknown)}")
    return [table[name] for name in names]


def _workflow(settings: Settings, args, counter=None, validator=None) -> SamplingWorkflow:
    sampler = LiftedModelSampler(
        args.selection or settings.element_selection, settings.threads,
        settings.validation_chunk, settings.cache_size,
    )
    logs = JsonLogger(settings.log_dir, retention_days=settings.log_retention_days) if args.log_steps else None
    counter = counter or LiftedModelCounter(settings.threads, settings.cache_size)
    return SamplingWorkflow(ProblemNormalizer(), counter, sampler, validator, logger=logs)


def cmd_count(args, settings: Settings) -> int:
    problem = load_problem(args.problem, settings, args.n, args.k, args.mln, args.cc)
    if args.distribution:
        preds = _predicates(problem, args.distribution)
        distribution = count_distribution(problem, preds, threads=settings.threads)
        if not distribution:
            raise UnsatisfiableError("sentence has no models over this domain")
        print(distribution_frame(distribution, preds).to_string(index=False))
        return EXIT_OK
    counter = None
    if args.brute:
        counter = BruteForceModelCounter(settings.oracle_max_domain, settings.oracle_max_atoms)
    report, _ = _workflow(settings, args, counter).run(problem)
    print(format_rational(report.count))
    return EXIT_OK


def cmd_sample(args, settings: Settings) -> int:
    problem = load_problem(args.problem, settings, args.n, args.k, args.mln)
    report, _ = _workflow(settings, args).run(problem, args.num, args.seed)
    print(format_header(args.seed, report.problem_hash))
    for i, s in enumerate(report.samples):
        if OutputFormat(args.format) is OutputFormat.JSON:
            print(format_record(i, s.model, s.probability))
        else:
            print(format_model(s.model))
    return EXIT_OK


def cmd_preset(args, settings: Settings) -> int:
    if args.emit_problem:
        params = {"k": args.k} if args.k is not None else None
        print(preset_text(args.name, args.n, params), end="")
        return EXIT_OK
    problem = preset(args.name, args.n, {"k": args.k} if args.k is not None else None, settings.exp_precision)
    report, log = _workflow(settings, args).run(problem)
    print(f"{args.name} n={args.n} fragment={log.summary['fragment'].value} count={format_rational(report.count)}")
    return EXIT_OK


def cmd_validate(args, settings: Settings) -> int:
    if args.num < 1:
        raise LiftgenError("--num must be positive")
    problem = load_problem(args.problem, settings, args.n, args.k, args.mln)
    alpha = args.alpha if args.alpha is not None else settings.alpha
    mode = args.mode or ("count" if _is_mln(args.problem, args.mln) else "model")
    preds = _predicates(problem, args.pred) if args.pred else None
    validator = KsDistributionValidator(
        alpha, settings.threads, settings.oracle_max_domain, settings.oracle_max_atoms,
    )
    report, _ = _workflow(settings, args, validator=validator).run(
        problem, args.num, args.seed, mode=mode, predicates=preds,
    )
    print(ks_frame({problem.name or args.problem: report.validation}).to_string(index=False))
    return EXIT_REJECTED if report.validation.rejected else EXIT_OK


def cmd_oracle(args, settings: Settings) -> int:
    caps = (settings.oracle_max_domain, settings.oracle_max_atoms)
    if _is_mln(args.problem, args.mln):
        distribution = mln_exact_distribution(load_mln(args.problem, args.n), settings.exp_precision, caps[1])
    else:
        problem = load_problem(args.problem, settings, args.n, args.k)
        print(f"count {format_rational(brute_count(problem, *caps))}")
        distribution = exact_distribution(problem, *caps)
    if not distribution:
        raise UnsatisfiableError("sentence has no models over this domain")
    print(model_distribution_frame(distribution).to_string(index=False))
    return EXIT_OK


def cmd_scale(args, settings: Settings) -> int:
    seconds = []
    for n in args.sizes:
        problem = load_problem(args.problem, settings, n, args.k, args.mln)
        start = time.perf_counter()
        _workflow(settings, args).run(problem, args.samples, args.seed)
        seconds.append(time.perf_counter() - start)
        logger.info(f"n={n}: {seconds[-1]:.3f}s")
    print(scaling_frame(args.sizes, seconds).to_string(index=False))
    if len(args.sizes) >= 2:
        print(f"log-log slope {loglog_slope(args.sizes, seconds):.2f}")
    return EXIT_OK


def _problem_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('problem', help='problem file, .mln file or preset name')
    parser.add_argument('-n', type=int, default=None, help='domain size (overrides the file)')
    parser.add_argument('-k', type=int, default=None, help='k for the k-regular preset')
    parser.add_argument('--mln', action='store_true', default=False, help='read the file as an MLN')


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog='liftgen',
        description='Exact weighted first-order model counting and sampling',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('-v', '--verbose', action='store_true', default=False)
    parser.add_argument('-q', '--quiet', action='store_true', default=False)
    parser.add_argument('--log-steps', action='store_true', default=False,
                        help='persist step and workflow records under the log directory')
    parser.add_argument('--selection', choices=('strongest', 'index'), default=None,
                        help='element selection of the domain recursion')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    p = sub.add_parser('count', help='weighted model count')
    _problem_arguments(p)
    p.add_argument('--cc', action='append', default=[], metavar='CONSTRAINT',
                   help='extra cardinality constraint, e.g. "|E| = 4"')
    p.add_argument('--brute', action='store_true', default=False, help='count by enumeration')
    p.add_argument('--distribution', nargs='+', metavar='PRED',
                   help='print the count distribution of these predicates')
    p.set_defaults(func=cmd_count)

    p = sub.add_parser('sample', help='exact samples')
    _problem_arguments(p)
    p.add_argument('--num', type=int, default=1)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.LINES.value)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser('preset', help='preset problems')
    p.add_argument('name', choices=sorted(PRESETS))
    p.add_argument('-n', type=int, default=3)
    p.add_argument('-k', type=int, default=None)
    p.add_argument('--emit-problem', action='store_true', default=False,
                   help='print the problem file instead of counting')
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser('validate', help='KS test of the sampler against the exact distribution')
    _problem_arguments(p)
    p.add_argument('--num', type=int, default=10000)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--alpha', type=float, default=None)
    p.add_argument('--mode', choices=('model', 'count'), default=None)
    p.add_argument('--pred', nargs='+', default=None, help='predicates of the count vector')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('oracle', help='brute-force count and model distribution')
    _problem_arguments(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('scale', help='sampling wall time over domain sizes')
    _problem_arguments(p)
    p.add_argument('--sizes', type=int, nargs='+', default=[5, 10, 15, 20])
    p.add_argument('--samples', type=int, default=1)
    p.add_argument('--seed', type=int, default=0)
    p.set_defaults(func=cmd_scale)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logzero.loglevel(logging.DEBUG)
    elif args.quiet:
        logzero.loglevel(logging.WARNING)
    else:
        logzero.loglevel(logging.INFO)
    try:
        settings = Settings()
        return args.func(args, settings)
    except UnsatisfiableError as e:
        logger.error(str(e))
        return EXIT_UNSAT
    except (LiftgenError, KeyError, ValueError, OSError) as e:
        logger.error(str(e))
        return EXIT_USAGE
