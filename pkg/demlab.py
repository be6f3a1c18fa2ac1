#!/usr/bin/env python3

"""
Demazure Module Laboratory

Usage examples:
    python demlab.py enumerate-p1 --rank 3
    python demlab.py enumerate-p1 --rank 2 --shift 5 --format csv
    python demlab.py verify --list
    python demlab.py verify socle --rank 6
    python demlab.py verify presentation-m --max-sum 4 --jobs 4
    python demlab.py character demazure --level 2 --weight 2
    python demlab.py character weyl --weight 1,1 --save
"""

import csv
import json
import logging
import sys
import time
from typing import TextIO

from dem_cartan import Weight, WeightError
from dem_characters import CharacterError, demazure_character, weyl_character
from dem_config import EXIT_USAGE, DemlabConfig
from dem_engine import BoundTooSmallError, PresentationError, TruncationUnstableError
from dem_loopweights import enumerate_p1, orientation, weight_of
from dem_suites import SUITES, SuiteParams, UnknownSuiteError, aliases_of, run_suite


EXIT_OK = 0
EXIT_FAILED = 1

DEFAULT_FORMAT = "json"
DEFAULT_LEVEL = 1

_logger = logging.getLogger("demlab")


class RecordEmitter:
    """Writes records as JSON lines or as CSV with a header row."""

    def __init__(self, fmt: str = DEFAULT_FORMAT, stream: TextIO | None = None):
        if fmt not in ("json", "csv"):
            raise ValueError(f"Unknown output format: {fmt}")
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._writer = None

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record) + "\n")
            return
        if self._writer is None:
            self._writer = csv.DictWriter(self.stream, fieldnames=list(record), lineterminator="\n")
            self._writer.writeheader()
        # nested lists go into a single cell as JSON text
        self._writer.writerow({k: json.dumps(v) if isinstance(v, list) else v
                               for k, v in record.items()})

    def emit_all(self, records) -> int:
        count = 0
        for record in records:
            self.emit(record)
            count += 1
        return count


def configure_logging(config: DemlabConfig) -> None:
    level_name = str(config.get_key("logging", "level", default="WARNING")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=config.get_key("logging", "format", default="%(levelname)s %(name)s: %(message)s"),
        stream=sys.stderr,
    )


def engine_options(config: DemlabConfig) -> dict:
    """Keyword arguments for dem_engine.construct from the engine section."""
    options = {
        "N": config.get_key("engine", "truncation"),
        "bound": config.get_key("engine", "bound"),
        "stability_check": config.get_key("engine", "stability_check"),
        "max_truncation": config.get_key("engine", "max_truncation"),
    }
    return {k: v for k, v in options.items() if v is not None}


# --- Commands ---

def cmd_enumerate_p1(config: DemlabConfig, emitter: RecordEmitter) -> int:
    """List P^+_Z(1) for the configured rank, first exponent pinned to the shift."""
    n = config.get_key("run", "rank")
    shift = config.get_key("run", "shift", default=0)
    span = config.get_key("run", "max_exponent_span")
    start = time.perf_counter()
    count = 0
    for pi in enumerate_p1(n, shift):
        exps = pi.exponents
        if span is not None and exps and max(exps) - min(exps) > span:
            continue
        emitter.emit({
            "n": n,
            "factors": pi.to_list(),
            "weight": weight_of(pi).to_list(),
            "orientation": orientation(pi),
        })
        count += 1
    print(f"enumerate-p1 n={n}: {count} loop weights in {time.perf_counter() - start:.3f}s",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(config: DemlabConfig, emitter: RecordEmitter) -> int:
    """Run one named suite; exit 1 if any instance fails."""
    args = config.args
    if getattr(args, "list_suites", False):
        for name in SUITES:
            print(" ".join([name, *aliases_of(name)]))
        return EXIT_OK
    name = getattr(args, "name", None)
    if not name:
        print("verify: a suite name is required (see --list)", file=sys.stderr)
        return EXIT_USAGE

    params = SuiteParams(
        max_rank=config.get_key("verify", "max_rank"),
        max_sum=config.get_key("verify", "max_coordinate_sum"),
        seed=config.get_key("run", "seed", default=0),
        engine=engine_options(config),
    )
    jobs = config.get_key("run", "jobs", default=1)
    start = time.perf_counter()
    try:
        results = run_suite(name, params, jobs)
    except UnknownSuiteError:
        print(f"Unknown suite: {name} (known: {', '.join(SUITES)})", file=sys.stderr)
        return EXIT_USAGE

    emitter.emit_all(r.to_dict() for r in results)
    failed = [r for r in results if not r.passed]
    print(f"{name}: {len(results) - len(failed)}/{len(results)} passed "
          f"in {time.perf_counter() - start:.3f}s", file=sys.stderr)
    for r in failed:
        _logger.warning("%s [%s] failed %s", name, r.key, r.detail)
    return EXIT_FAILED if failed else EXIT_OK


def _requested_weight(config: DemlabConfig) -> Weight:
    coords = getattr(config.args, "weight", None)
    if coords is None:
        raise WeightError("--weight is required")
    lam = Weight(tuple(coords))
    rank = getattr(config.args, "rank", None)
    if rank is not None and rank != lam.n:
        raise WeightError(f"Weight {lam} has rank {lam.n}, --rank says {rank}")
    return lam


def cmd_character(config: DemlabConfig, emitter: RecordEmitter) -> int:
    """Print the graded character of D(level, lambda) or the character of V(lambda)."""
    lam = _requested_weight(config)
    if config.args.kind == "weyl":
        if not lam.is_dominant():
            raise WeightError(f"{lam} is not dominant")
        records = weyl_character(lam).records()
    else:
        level = getattr(config.args, "level", None) or DEFAULT_LEVEL
        rule = config.get_key("characters", "tie_break", default="smallest")
        records = demazure_character(level, lam, rule).records()
    emitter.emit_all(records)
    return EXIT_OK


COMMANDS = {
    "enumerate-p1": cmd_enumerate_p1,
    "verify": cmd_verify,
    "character": cmd_character,
}


def run(config: DemlabConfig, stream: TextIO | None = None) -> int:
    """Dispatch the parsed command; returns the exit code."""
    command = COMMANDS.get(config.command)
    if command is None:
        config.print_help(file=sys.stderr)
        return EXIT_USAGE
    emitter = RecordEmitter(config.get_key("run", "format", default=DEFAULT_FORMAT), stream)
    try:
        return command(config, emitter)
    except (WeightError, CharacterError, PresentationError) as exc:
        print(f"{config.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BoundTooSmallError, TruncationUnstableError) as exc:
        print(f"{config.command}: {exc}", file=sys.stderr)
        return EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    """Main entry point for demlab."""
    config = DemlabConfig(description="Demazure module laboratory", argv=argv)
    configure_logging(config)
    code = run(config)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
