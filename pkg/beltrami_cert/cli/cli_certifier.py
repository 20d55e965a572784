from argparse import ArgumentParser
from importlib.metadata import version
from pathlib import Path
import json
import sys

from beltrami_cert.app import REPORT_NAME, Certifier
from beltrami_cert.certify.bound import final_bound
from beltrami_cert.certify.report import BoundReport
from beltrami_cert.services.config import PipelineConfig
from beltrami_cert.services.output import read_lpstd
from beltrami_cert.utils import CertifierError, ConfigError, StageFailure

PROG = "beltrami-cert"
SUBCOMMANDS = ("crescent", "beltrami", "iterate", "certify", "bound")


def parser() -> ArgumentParser:
    parser = ArgumentParser(prog=PROG, description="Certified bounds for the Beltrami equation of a Siegel disk.")
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--config", type=Path, help="JSON configuration; config.yml when omitted")
    parser.add_argument("--threads", type=int, help="worker processes, overridden by BELTRAMI_CERT_THREADS")
    parser.add_argument("--report", type=Path, help="report to evaluate for `bound`")
    parser.add_argument("--points", action="append", default=[], help="query point x,y for `bound`, repeatable")
    return parser


def parse_point(text: str) -> tuple[str, str, complex]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"A point is 'x,y', got '{text.strip()}'.")
    try:
        return parts[0], parts[1], complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ConfigError(f"A point is 'x,y', got '{text.strip()}'.")


def load_config(path: Path | None) -> PipelineConfig:
    return PipelineConfig.from_json(path) if path is not None else PipelineConfig.from_app_config()


def bound(args, config: PipelineConfig) -> int:
    path = args.report or config.output.dir / REPORT_NAME
    try:
        report = BoundReport.load(path)
    except (OSError, ValueError) as e:
        raise ConfigError(f"Cannot read report {path}: {e}")
    if not report.certified:
        print(json.dumps({"status": report.status, "stage": report.stage, "message": report.message}))
        return 1
    try:
        report.attach(read_lpstd(Path(report.artifacts["g_star"])))
    except (OSError, KeyError, ValueError) as e:
        raise ConfigError(f"Cannot read the g_* series of {path}: {e}")
    lines = args.points or [line for line in sys.stdin if line.strip()]
    for x, y, z in map(parse_point, lines):
        try:
            print(f"{x},{y},{final_bound(z, report).hi!r}")
        except CertifierError as e:
            print(json.dumps(StageFailure("bound", str(e)).to_dict()))
            return 1
    return 0


def run(argv: list[str]) -> int:
    args = parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.command == "bound":
            return bound(args, config)
        certifier = Certifier(config, args.threads)
        if args.command == "certify":
            report = certifier.certify_pipeline()
            print(report.model_dump_json(indent=2))
            return 0 if report.certified else 1
        crescent, _, cover = certifier.crescent()
        if args.command == "crescent":
            print(json.dumps(cover.to_dict()))
            return 0
        split = certifier.split(crescent)
        if args.command == "beltrami":
            print(json.dumps(split.to_dict()))
            return 0
        h_star = certifier.iterate(split)
        print(json.dumps(h_star.header()))
        return 0
    except ConfigError as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return 2
    except StageFailure as e:
        print(json.dumps(e.to_dict()))
        return 1


def cli_certifier():
    if "--version" in sys.argv:
        print(f"{PROG} {version(PROG)}")
        exit()

    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    cli_certifier()
