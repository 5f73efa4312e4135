"""Command line entry point.

    econforces run --config fixtures/synthetic/fixture.toml [--out DIR] [--quiet]

Subcommands run the pipeline up to their stage and write that stage's
files: ``ingest`` (ingest_report.csv), ``build`` (factor tables, describe.csv
and factor plot data), ``fit`` (result.json), ``diagnose`` (result.json and
residual plot data), ``report`` (report.txt) and ``run`` (everything).

Exit codes: 0 success, 1 data error, 2 numerical error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from .config import load_config
from .errors import ConfigError, DataError, EconForcesError
from .pipeline import run_pipeline
from .report import (
    RunArtifacts,
    ar_summary_text,
    emit_factor_plots,
    emit_fit_plots,
    render_report,
    result_to_json,
    write_csv,
    write_describe,
)

log = logging.getLogger("econforces")

STAGE_OF = {
    "ingest": "ingest",
    "build": "build",
    "fit": "diagnose",
    "diagnose": "diagnose",
    "report": "diagnose",
    "run": "diagnose",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ConfigError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="econforces", description="Macroeconomic factor attribution of index returns.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, type=Path, help="pipeline config file (TOML)")
    common.add_argument("--out", type=Path, default=None, help="output directory (overrides config)")
    common.add_argument("--quiet", action="store_true", help="print nothing on success")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "ingest": "parse and clip the raw series",
        "build": "construct, align and standardize the factors",
        "fit": "fit the factor regression",
        "diagnose": "residual diagnostics",
        "report": "write the text regression report",
        "run": "full pipeline, all artifacts",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _write_text(path: Path, text: str, artifacts: RunArtifacts) -> None:
    path.write_text(text)
    artifacts.add(path)


def _write_factor_tables(run, out: Path, artifacts: RunArtifacts) -> None:
    fs = run.factors
    for fname, frame in (("factors.csv", fs.raw), ("factors_standardized.csv", fs.frame)):
        rows = ([str(m)] + [float(frame[c][i]) for c in frame.names] for i, m in enumerate(frame.index))
        artifacts.add(write_csv(out / fname, ["month"] + frame.names, rows))


def execute(command: str, config, out: Path) -> RunArtifacts:
    run = run_pipeline(config, through=STAGE_OF[command])
    out.mkdir(parents=True, exist_ok=True)
    artifacts = RunArtifacts(out)

    if command in ("ingest", "run"):
        rows = [list(asdict(r).values()) for r in run.raw.load_report]
        header = list(run.raw.load_report[0].__dataclass_fields__) if rows else []
        artifacts.add(write_csv(out / "ingest_report.csv", header, rows))
    if command in ("build", "run"):
        _write_factor_tables(run, out, artifacts)
        write_describe(run.factors, out, artifacts)
        emit_factor_plots(run.factors, run.acf_levels, run.acf_diff, out, artifacts)
    if command in ("fit", "diagnose", "run"):
        _write_text(out / "result.json", result_to_json(run.result, run.diagnostics, run.factors.frame.index), artifacts)
    if command in ("diagnose", "run"):
        emit_fit_plots(run.factors, run.result, run.diagnostics, out, artifacts)
    if command in ("report", "run"):
        text = render_report(
            run.result,
            run.diagnostics,
            run_date=config.report_date(),
            vintage=config.vintage,
            ar_summary=ar_summary_text(run.factors.inflation),
        )
        _write_text(out / "report.txt", text, artifacts)
    return artifacts


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        config = load_config(args.config).with_output(args.out)
        artifacts = execute(args.command, config, Path(config.output_dir))
    except EconForcesError as exc:
        print(f"econforces {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"econforces {args.command}: IO error on {exc.filename}: {exc.strerror}", file=sys.stderr)
        return DataError.exit_code
    if not args.quiet:
        print(f"econforces {args.command}: wrote {len(artifacts.files)} file(s) to {artifacts.out_dir}")
        for name in artifacts.names:
            print(f"  {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
