# devolved/cli.py

"""
Command-line front end.

    devolved gen --h 2 --blocks 3 -o plan.json
    devolved verify --plan plan.json --claims 1,2 --upto 3
    devolved bound 1 2
    devolved essential --set A.txt --k 1

Exit status: 0 on success, 1 when a check returns false, 2 when the run
could not be carried out (bad arguments, unreadable or malformed files,
violated preconditions).
"""

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader

from devolved._config import Settings
from devolved._core.bounds import ProbeMode, asymptotic_probe, phi_bound, probe_to_tsv
from devolved._core.claims import (
    devolved_spot_check,
    verify_claim1_range,
    verify_claim2_range,
    verify_E4_bounded,
    ClaimResult,
)
from devolved._core.construction import new_plan
from devolved._core.errors import DevolvedError
from devolved._core.essentiality import GapParams, enumerate_essential_subsets, pairwise_coprime
from devolved._core.sets import IntegerSet, h_fold_sumset, is_basis_window
from devolved.observability import SpanType, enable_tracing, format_trace, get_tracer, set_tracer
from devolved.storage import (
    BasisCheckDocument,
    BoundDocument,
    ClaimDocument,
    E4Document,
    EssentialityDocument,
    ReportDocument,
    SetDocument,
    SkippedDocument,
    SpotCheckDocument,
    SumsetDocument,
    VerifyDocument,
    dump_json,
    load_plan,
    load_set,
    plan_to_json,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2

DEFAULT_TABLE_SAMPLES = {
    ProbeMode.FIXED_H: [10, 100, 10 ** 4, 10 ** 8],
    ProbeMode.FIXED_K: [1, 2, 4, 8],
}

_templates_dir = os.path.join(os.path.dirname(__file__), "_templates")
_jinja_env = Environment(loader=FileSystemLoader(_templates_dir), keep_trailing_newline=True)


@dataclass
class RunConfig:
    """
    One CLI invocation.

    Attributes:
        command: Subcommand name
        params: Parsed parameters of the subcommand
        output: Destination of the primary artifact (stdout when None)
        trace: Print the run trace to stderr
        settings: Environment-derived settings
    """
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    trace: bool = False
    settings: Settings = field(default_factory=Settings)

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings) -> "RunConfig":
        params = {
            k: v for k, v in vars(args).items() if k not in ("command", "output", "trace")
        }
        return cls(
            command=args.command,
            params=params,
            output=args.output,
            trace=args.trace or settings.tracing,
            settings=settings,
        )


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _probe_list(text: str) -> List[Tuple[int, int]]:
    """'0:2,1:3' -> [(0, 2), (1, 3)]"""
    probes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            c, d = part.split(":")
            probes.append((int(c), int(d)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"probes are c:d pairs, got {part!r}")
    return probes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="devolved",
        description="Essential subsets, primorial bounds and devolved bases of additive number theory.",
    )
    parser.add_argument("--trace", action="store_true", help="print the run trace to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("-o", "--output", default=None, help="write the artifact here instead of stdout")

    p = sub.add_parser("gen", help="generate a block plan")
    p.add_argument("--h", type=int, required=True, help="order of the basis (>= 2)")
    p.add_argument(
        "--blocks", type=int, required=True,
        help="number of progression blocks N; the plan runs I_1, J_1, ..., J_N and ends with I_(N+1)",
    )
    add_output(p)

    p = sub.add_parser("sumset", help="h-fold sumset of a set file")
    p.add_argument("--set", dest="set_path", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--limit", type=int, default=None, help="window end (default: the set's limit)")
    add_output(p)

    p = sub.add_parser("basis-check", help="is [lo, hi] inside the h-fold sumset")
    p.add_argument("--set", dest="set_path", required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int, default=None, help="window end (default: the set's limit)")
    add_output(p)

    p = sub.add_parser("essential", help="essential subsets of size <= k")
    p.add_argument("--set", dest="set_path", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=0, help="tail cutoff for d(P)")
    p.add_argument("--head-bound", type=int, default=None)
    p.add_argument("--prime-bound", type=int, default=None)
    add_output(p)

    p = sub.add_parser("bound", help="phi(k, h), or the growth table with --table")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("h", type=int, nargs="?")
    p.add_argument("--table", action="store_true")
    p.add_argument("--mode", choices=[m.value for m in ProbeMode], default=ProbeMode.FIXED_H.value)
    p.add_argument("--fixed", type=int, default=2)
    p.add_argument("--samples", type=_int_list, default=None)
    add_output(p)

    p = sub.add_parser("probe", help="phi over growing k or h, as TSV")
    p.add_argument("--mode", choices=[m.value for m in ProbeMode], required=True)
    p.add_argument("--fixed", type=int, required=True)
    p.add_argument("--samples", type=_int_list, default=None)
    add_output(p)

    p = sub.add_parser("verify", help="check claims on a plan file")
    p.add_argument("--plan", dest="plan_path", required=True)
    p.add_argument("--claims", type=_int_list, default=[1, 2])
    p.add_argument("--upto", type=int, default=None)
    p.add_argument("--exhaustive", action="store_true", help="list every representation for claim 2")
    p.add_argument(
        "--max-window", type=int, default=None,
        help="skip checks whose window exceeds this (default: the memory budget)",
    )
    add_output(p)

    p = sub.add_parser("e4", help="bounded search for progressions inside c + dZ")
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--plan", dest="plan_path", default=None)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--max-blocks", type=int, default=200)
    add_output(p)

    p = sub.add_parser("spot", help="finite spot check of the devolved property")
    p.add_argument("--plan", dest="plan_path", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--probes", type=_probe_list, required=True, help="c:d pairs, e.g. 0:2,1:2")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--remove-set", default=None, help="set file of members to remove")
    p.add_argument("--remove-block", type=int, default=None, help="remove all of J_n")
    add_output(p)

    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def render_verify_report(document: VerifyDocument) -> str:
    template = _jinja_env.get_template("verify_report.j2")
    return template.render(**document.model_dump())


def _cmd_gen(cfg: RunConfig) -> int:
    p = cfg.params
    if p["blocks"] < 0:
        raise DevolvedError(f"--blocks must be non-negative, got {p['blocks']}")
    with get_tracer().trace_step(SpanType.PLAN_GENERATION, f"gen h={p['h']}") as span:
        plan = new_plan(p["h"]).extend(p["blocks"])
        if span:
            span.set_window(h=plan.h, window=plan.coverage)
    _emit(plan_to_json(plan), cfg.output)
    return EXIT_OK


def _cmd_sumset(cfg: RunConfig) -> int:
    p = cfg.params
    A = load_set(p["set_path"])
    limit = A.limit if p["limit"] is None else p["limit"]
    with get_tracer().trace_step(SpanType.SUMSET, f"{p['h']}-fold sumset") as span:
        sums = h_fold_sumset(A, p["h"], limit, cfg.settings)
        if span:
            span.set_window(h=p["h"], window=limit)
    _emit(dump_json(SumsetDocument(h=p["h"], sumset=SetDocument.from_set(sums))), cfg.output)
    return EXIT_OK


def _cmd_basis_check(cfg: RunConfig) -> int:
    p = cfg.params
    A = load_set(p["set_path"])
    hi = A.limit if p["hi"] is None else p["hi"]
    with get_tracer().trace_step(SpanType.SUMSET, f"basis window [{p['lo']}, {hi}]") as span:
        holds = is_basis_window(A, p["h"], p["lo"], hi)
        if span:
            span.set_window(h=p["h"], window=hi).set_verdict(holds)
    _emit(dump_json(BasisCheckDocument(h=p["h"], lo=p["lo"], hi=hi, is_basis=holds)), cfg.output)
    return EXIT_OK if holds else EXIT_FALSE


def _cmd_essential(cfg: RunConfig) -> int:
    p = cfg.params
    A = load_set(p["set_path"])
    params = GapParams(tail_cutoff=p["cutoff"], head_bound=p["head_bound"], prime_bound=p["prime_bound"])
    with get_tracer().trace_step(SpanType.ENUMERATION, f"essential subsets, k={p['k']}") as span:
        reports = enumerate_essential_subsets(A, p["k"], params)
        if span:
            span.set_window(window=A.limit).add_metadata("found", len(reports))
    document = EssentialityDocument(
        k=p["k"],
        tail_cutoff=params.tail_cutoff,
        head_bound=params.resolved_head_bound(A),
        reports=[ReportDocument.from_report(r) for r in reports],
        gaps_pairwise_coprime=pairwise_coprime([r.gap for r in reports]),
    )
    _emit(dump_json(document), cfg.output)
    return EXIT_OK


def _probe(cfg: RunConfig, mode: str, fixed: int, samples: Optional[List[int]]) -> int:
    mode = ProbeMode(mode)
    samples = samples if samples else DEFAULT_TABLE_SAMPLES[mode]
    with get_tracer().trace_step(SpanType.BOUND_SCAN, f"growth table {mode.value} {fixed}"):
        rows = asymptotic_probe(mode, fixed, samples)
    _emit(probe_to_tsv(mode, rows), cfg.output)
    return EXIT_OK


def _cmd_bound(cfg: RunConfig) -> int:
    p = cfg.params
    if p["table"]:
        return _probe(cfg, p["mode"], p["fixed"], p["samples"])
    if p["k"] is None or p["h"] is None:
        raise DevolvedError("bound needs k and h (or --table)")
    with get_tracer().trace_step(SpanType.BOUND_SCAN, f"phi({p['k']}, {p['h']})") as span:
        result = phi_bound(p["k"], p["h"])
        if span:
            span.add_metadata("phi", result.phi)
    _emit(dump_json(BoundDocument.from_result(result)), cfg.output)
    return EXIT_OK


def _cmd_probe(cfg: RunConfig) -> int:
    p = cfg.params
    return _probe(cfg, p["mode"], p["fixed"], p["samples"])


def _skipped(plan, claim: int, done: int, last: int) -> List[SkippedDocument]:
    if claim == 1:
        windows = [plan.h * plan.interval(n).hi for n in range(done + 1, last + 1)]
    else:
        windows = [plan.progression(n).hi for n in range(done + 1, last + 1)]
    return [SkippedDocument(claim=claim, n=done + 1 + i, window=w) for i, w in enumerate(windows)]


def _cmd_verify(cfg: RunConfig) -> int:
    p = cfg.params
    plan = load_plan(p["plan_path"])
    unknown = [c for c in p["claims"] if c not in (1, 2)]
    if unknown:
        raise DevolvedError(f"unknown claim(s) {unknown}; choose from 1, 2")
    max_window = p["max_window"]
    if max_window is None:
        max_window = cfg.settings.memory_budget_bits - 1
    if max_window < 0:
        raise DevolvedError(f"--max-window must be non-negative, got {max_window}")

    results: List[ClaimResult] = []
    skipped: List[SkippedDocument] = []
    if 1 in p["claims"]:
        last = plan.n_intervals if p["upto"] is None else p["upto"]
        done = verify_claim1_range(plan, upto=last, max_window=max_window, settings=cfg.settings)
        results.extend(done)
        skipped.extend(_skipped(plan, 1, len(done), last))
    if 2 in p["claims"]:
        last = plan.n_progressions if p["upto"] is None else p["upto"]
        done = verify_claim2_range(
            plan, upto=last, max_window=max_window, settings=cfg.settings, exhaustive=p["exhaustive"]
        )
        results.extend(done)
        skipped.extend(_skipped(plan, 2, len(done), last))

    document = VerifyDocument(
        h=plan.h,
        blocks=plan.n_progressions,
        results=[ClaimDocument.from_result(r) for r in results],
        all_hold=all(r.holds for r in results),
        max_window=max_window,
        skipped=skipped,
    )
    sys.stderr.write(render_verify_report(document))
    _emit(dump_json(document), cfg.output)
    return EXIT_OK if document.all_hold else EXIT_FALSE


def _cmd_e4(cfg: RunConfig) -> int:
    p = cfg.params
    if p["plan_path"]:
        plan = load_plan(p["plan_path"])
    elif p["h"] is not None:
        plan = new_plan(p["h"])
    else:
        raise DevolvedError("e4 needs --h or --plan")
    result = verify_E4_bounded(plan, p["c"], p["d"], p["m"], p["max_blocks"])
    _emit(dump_json(E4Document.model_validate(result.to_dict())), cfg.output)
    return EXIT_OK if result.found else EXIT_FALSE


def _cmd_spot(cfg: RunConfig) -> int:
    p = cfg.params
    plan = load_plan(p["plan_path"])
    removals = IntegerSet.empty(0)
    if p["remove_set"]:
        removals = removals | load_set(p["remove_set"])
    if p["remove_block"] is not None:
        removals = removals | plan.progression(p["remove_block"]).as_set()
    holds = devolved_spot_check(plan, removals, p["probes"], p["m"], p["limit"])
    document = SpotCheckDocument(
        limit=p["limit"], removed=len(removals), probes=p["probes"], m=p["m"], holds=holds
    )
    _emit(dump_json(document), cfg.output)
    return EXIT_OK if holds else EXIT_FALSE


_COMMANDS = {
    "gen": _cmd_gen,
    "sumset": _cmd_sumset,
    "basis-check": _cmd_basis_check,
    "essential": _cmd_essential,
    "bound": _cmd_bound,
    "probe": _cmd_probe,
    "verify": _cmd_verify,
    "e4": _cmd_e4,
    "spot": _cmd_spot,
}


def run(cfg: RunConfig) -> int:
    """
    Dispatch one configured run and return its exit status.

    Precondition and I/O failures are reported on stderr with status 2. A
    tracer enabled for this run is swapped out again when it finishes.
    """
    handler = _COMMANDS[cfg.command]
    previous = get_tracer()
    tracer = previous
    if cfg.trace or cfg.settings.trace_dir:
        store_type = "file" if cfg.settings.trace_dir else "memory"
        tracer = enable_tracing(store_type=store_type, storage_dir=cfg.settings.trace_dir or "./traces")

    trace = None
    try:
        with tracer.trace_run(cfg.command, cfg.params) as trace:
            status = handler(cfg)
    except (DevolvedError, OSError) as e:
        print(f"devolved {cfg.command}: error: {e}", file=sys.stderr)
        status = EXIT_USAGE
    finally:
        set_tracer(previous)

    if cfg.trace and trace is not None:
        print(format_trace(trace, format="terminal", use_colors=sys.stderr.isatty()), file=sys.stderr)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings.from_env()
    except ValueError as e:
        print(f"devolved: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(RunConfig.from_args(args, settings))


if __name__ == "__main__":
    sys.exit(main())
