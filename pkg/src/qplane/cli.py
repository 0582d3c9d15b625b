"""Command line: ``qplane verify --suite NAME`` and ``qplane list``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .coefficients import Coefficient
from .errors import QPlaneError, UnknownSuite
from .suites import SUITES, CheckResult, Context, exit_status, list_suites, run_suite

DEFAULT_SEED = 20240229


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    bindings: dict[str, Coefficient] = field(default_factory=dict)
    output: str = "text"
    seed: int = DEFAULT_SEED
    samples: int = 1000
    timing: bool = True


def parse_bindings(text: str | None) -> dict[str, Coefficient]:
    """``p=q,q'=2`` -> {"p": q, "q'": 2}."""
    out: dict[str, Coefficient] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise ValueError(f"binding {item!r} is not of the form name=value")
        out[name.strip().replace("′", "'")] = Coefficient.parse(value)
    return out


def execute(config: SuiteConfig) -> tuple[list[CheckResult], int]:
    if config.suite != "all" and config.suite not in SUITES:
        raise UnknownSuite(config.suite)
    ctx = Context.build(config.bindings, seed=config.seed, samples=config.samples)
    results = run_suite(config.suite, ctx, timing=config.timing)
    return results, exit_status(results)


def render_json(results: list[CheckResult]) -> str:
    return json.dumps([r.as_dict() for r in results], indent=2)


def render_text(results: list[CheckResult]) -> str:
    width = max((len(r.name) for r in results), default=4)
    lines = [f"{'status':<9} {'ms':>9}  {'check':<{width}}  residual"]
    for r in results:
        ms = "" if r.elapsed_ms is None else f"{r.elapsed_ms:.1f}"
        lines.append(f"{r.status:<9} {ms:>9}  {r.name:<{width}}  {r.residual or ''}".rstrip())
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "reported")}
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['reported']} reported")
    return "\n".join(lines)


def render_list() -> str:
    rows = list_suites()
    w = max(len(n) for n, _, _ in rows)
    return "\n".join(f"{n:<{w}}  {d}  [{a}]" for n, d, a in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qplane", description="Exact verification suites for two-parameter quantum planes.")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a named suite")
    verify.add_argument("--suite", required=True, help="suite name, or 'all'")
    verify.add_argument("--bindings", help="comma separated name=value, e.g. p=q,q'=2")
    verify.add_argument("--output", choices=("text", "json"), default="text")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--samples", type=int, default=1000, help="size of randomized checks")
    verify.add_argument("--no-timing", action="store_true", help="omit elapsed times for byte-stable reports")
    verify.add_argument("--report", help="also write the report to this file")
    sub.add_parser("list", help="list the registered suites")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "list":
        print(render_list())
        return 0
    try:
        config = SuiteConfig(args.suite, parse_bindings(args.bindings), args.output, args.seed,
                             args.samples, not args.no_timing)
        results, status = execute(config)
    except UnknownSuite as exc:
        print(f"qplane: error: unknown suite {exc.args[0]!r}; see 'qplane list'", file=sys.stderr)
        return 2
    except (QPlaneError, ValueError) as exc:
        print(f"qplane: error: {exc}", file=sys.stderr)
        return 2
    text = render_json(results) if config.output == "json" else render_text(results)
    print(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
