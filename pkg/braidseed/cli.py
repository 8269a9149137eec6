from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .autgroup import survey
from .braid import Permutation, parse_word
from .config import Settings
from .errors import BraidSeedError, InvalidInput, InvariantViolation
from .exchange import compute_seed
from .logger import LogLevel, log, set_level
from .render import FORMATS, TARGETS, render
from .report import AnalysisReport, MutationReport, analyze
from .variety import defining_equations, dimension_report

TAG = "cli"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _add_instance(parser, beta_required=True):
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--beta", required=beta_required, default="")
    parser.add_argument("--u", dest="u_word", default=None, help="u as a reduced word")
    parser.add_argument("--u-oneline", default=None, help="u in one-line notation")


def build_parser():
    parser = _Parser(prog="braidseed", description="Seeds of braid varieties from 3D plabic graphs.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-q", "--quiet", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = commands.add_parser("analyze")
    _add_instance(p)
    p.add_argument("--out", choices=["json", "pretty"], default="json")
    p.add_argument("--check", action="store_true")
    p.add_argument("--inductive", action="store_true")

    p = commands.add_parser("survey")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-len", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--u", default="all")
    p.add_argument("--jobs", type=int, default=Settings.jobs)
    p.add_argument("--budget", type=int, default=Settings.survey_budget)
    p.add_argument("--out", choices=["csv"], default="csv")

    p = commands.add_parser("render")
    _add_instance(p)
    p.add_argument("--format", choices=FORMATS, required=True)
    p.add_argument("--target", choices=TARGETS, required=True)
    p.add_argument("--film", type=int, default=None)

    p = commands.add_parser("variety")
    _add_instance(p)
    p.add_argument("--max-terms", type=int, default=Settings.max_terms)
    p.add_argument("--out", choices=["text", "json"], default="text")

    p = commands.add_parser("mutate")
    p.add_argument("--report", required=True)
    p.add_argument("--seq", required=True)

    return parser


def resolve_u(n, u_word, u_oneline):
    """u from --u and/or --u-oneline; both must agree when given."""
    if u_word is None and u_oneline is None:
        raise InvalidInput("one of --u or --u-oneline is required")
    from_word = Permutation.from_word(u_word, n) if u_word is not None else None
    from_oneline = Permutation.from_oneline(u_oneline, n) if u_oneline is not None else None
    if from_word is not None and from_oneline is not None and from_word != from_oneline:
        raise InvalidInput(f"--u gives {from_word} but --u-oneline gives {from_oneline}")
    return from_word or from_oneline


def _instance(args):
    beta = parse_word(args.beta, args.n)
    return resolve_u(args.n, args.u_word, args.u_oneline), beta


def _analyze(args, settings, out):
    u, beta = _instance(args)
    _, report = analyze(u, beta, check=settings.check, inductive=args.inductive)
    out.write(report.to_json() if args.out == "json" else report.pretty())


def _survey(args, settings, out):
    u_filter = None
    if args.u != "all":
        u_filter = Permutation.from_word(args.u, args.n)
    result = survey(args.n, args.min_len, args.max_len, u_filter, jobs=settings.jobs, budget=settings.survey_budget)
    log(LogLevel.INFO, TAG, f"skipped {result.skipped} empty varieties")
    out.write(result.to_csv())
    if result.failed:
        first = result.failed[0]
        raise InvariantViolation(
            f"{len(result.failed)} survey pairs failed, first u={first.u} beta={first.beta}: {first.error}"
        )


def _render(args, settings, out):
    u, beta = _instance(args)
    out.write(render(compute_seed(u, beta), args.format, args.target, args.film))


def _variety(args, settings, out):
    u, beta = _instance(args)
    equations = defining_equations(u, beta, max_terms=settings.max_terms)
    dims = dimension_report(u, beta)
    if args.out == "json":
        out.write(json.dumps({**equations.to_dict(), "dimension": dims.to_dict()}, indent=2) + "\n")
        return
    out.write(f"# s = {equations.s}, dim = {dims.dim}\n")
    for line in equations.text():
        out.write(line + "\n")


def _mutate(args, settings, out):
    try:
        text = Path(args.report).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInput(f"cannot read {args.report}: {e}") from e
    source = AnalysisReport.from_json(text)
    sequence = parse_word(args.seq, max(source.m, 1) + 1).letters
    out.write(MutationReport(source, sequence).to_json())


COMMANDS = {
    "analyze": _analyze,
    "survey": _survey,
    "render": _render,
    "variety": _variety,
    "mutate": _mutate,
}


def execute(argv, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        level = LogLevel.ERROR if args.quiet else LogLevel.WARNING + args.verbose
        settings = Settings(
            jobs=getattr(args, "jobs", Settings.jobs),
            survey_budget=getattr(args, "budget", Settings.survey_budget),
            max_terms=getattr(args, "max_terms", Settings.max_terms),
            log_level=level,
            check=getattr(args, "check", False),
        )
        set_level(settings.log_level)
        COMMANDS[args.command](args, settings, out)
    except BraidSeedError as e:
        log(LogLevel.ERROR, TAG, str(e))
        return e.EXIT_CODE
    return 0


def main():
    sys.exit(execute(sys.argv[1:]))
