"""Command-line entry point: construct, verify, selfcheck, audit."""

from __future__ import annotations

import argparse
import logging
import secrets
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import fieldarith as fa

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_EXHAUSTED = 2
EXIT_NOT_REPRODUCED = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CliConfig:
    command: str
    prime: int = fa.DEFAULT_PRIME
    seed: int | None = None
    retries: int = 10
    out: str | None = None
    verbosity: int = 0
    jobs: int = 1
    count: int = 1
    path: str | None = None
    genus: int = 9


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nodalpencil", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a nodal octic with its pencil and write a certificate")
    c.add_argument("--prime", type=int, default=fa.DEFAULT_PRIME)
    c.add_argument("--seed", type=int, default=None, help="default: fresh OS entropy (echoed)")
    c.add_argument("--retries", type=int, default=10, help="point-set restart budget")
    c.add_argument("--out", default=None, help="certificate path (a directory when --count > 1)")
    c.add_argument("--count", type=int, default=1, help="number of consecutive seeds")
    c.add_argument("--jobs", type=int, default=1, help="parallel processes over seeds")

    v = sub.add_parser("verify", help="re-run every check of a certificate")
    v.add_argument("path")

    s = sub.add_parser("selfcheck", help="run the invariant suites on small fixed inputs")
    s.add_argument("--seed", type=int, default=0)

    a = sub.add_parser("audit", help="print the dimension bookkeeping table")
    a.add_argument("--genus", type=int, default=9, help=argparse.SUPPRESS)
    return parser


def parse_config(argv=None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    cfg = CliConfig(command=ns.command, verbosity=ns.verbose)
    for name in ("prime", "seed", "retries", "out", "jobs", "count", "path", "genus"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if cfg.command == "construct":
        try:
            fa.check_prime(cfg.prime)
        except fa.FieldError as exc:
            raise UsageError(str(exc)) from exc
        if cfg.retries < 1 or cfg.count < 1 or cfg.jobs < 1:
            raise UsageError("--retries, --count and --jobs must be positive")
        if cfg.seed is None:
            cfg.seed = secrets.randbits(63)
        if cfg.seed < 0:
            raise UsageError("--seed must be non-negative")
    return cfg


# --------------------------------------------------------------------------
# construct


def _construct_one(prime: int, seed: int, retries: int, out: str | None) -> tuple[int, str, str]:
    from .certificate import write_certificate
    from .pipeline import RetryExhausted, run_construction

    t0 = time.perf_counter()
    try:
        cert = run_construction(prime, seed, retries)
        code = EXIT_OK if cert.status == "SUCCESS" else EXIT_NOT_REPRODUCED
    except RetryExhausted as exc:
        cert, code = exc.certificate, EXIT_EXHAUSTED
    elapsed = time.perf_counter() - t0
    if out is not None:
        try:
            write_certificate(cert, out)
        except OSError as exc:
            return EXIT_DATA, f"seed {seed}: cannot write {out}: {exc}", cert.status
    stage = f" at {cert.failed_stage}" if cert.failed_stage else ""
    return code, f"seed {seed}: {cert.status}{stage} in {elapsed:.2f}s", cert.status


def cmd_construct(cfg: CliConfig) -> int:
    seeds = [cfg.seed + k for k in range(cfg.count)]
    if cfg.count > 1 and cfg.out is not None:
        Path(cfg.out).mkdir(parents=True, exist_ok=True)
        outs = [str(Path(cfg.out) / f"certificate-{s}.json") for s in seeds]
    else:
        outs = [cfg.out] * len(seeds)
    print(f"prime: {cfg.prime}")
    print(f"seed: {cfg.seed}")
    args = [(cfg.prime, s, cfg.retries, o) for s, o in zip(seeds, outs)]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_construct_one, *zip(*args)))
    else:
        results = [_construct_one(*a) for a in args]
    for _, line, _ in results:
        print(line)
    codes = [code for code, _, _ in results]
    for bad in (EXIT_DATA, EXIT_EXHAUSTED, EXIT_NOT_REPRODUCED):
        if bad in codes:
            return bad
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def cmd_verify(cfg: CliConfig) -> int:
    from .certificate import CertificateError, read_certificate, reverify

    try:
        cert = read_certificate(cfg.path)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"cannot open {cfg.path}: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except (CertificateError, TypeError) as exc:
        print(f"malformed certificate {cfg.path}: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        result = reverify(cert)
    except (CertificateError, KeyError, TypeError, ValueError, IndexError) as exc:
        print(f"malformed certificate {cfg.path}: {exc}", file=sys.stderr)
        return EXIT_NOT_REPRODUCED
    for v in result.verdicts:
        detail = f"  ({v.detail})" if v.detail else ""
        print(f"{v.check:<18} {v.status}{detail}")
    print(f"overall: {result.status}")
    return EXIT_OK if result.ok else EXIT_NOT_REPRODUCED


# --------------------------------------------------------------------------
# audit


def cmd_audit(cfg: CliConfig) -> int:
    from .verify import dimension_audit

    audit = dimension_audit(g=cfg.genus)
    sys.stdout.write(audit.table())
    return EXIT_OK if audit.ok else EXIT_FAILED


# --------------------------------------------------------------------------
# selfcheck


def cmd_selfcheck(cfg: CliConfig) -> int:
    from .selfcheck import run_selfcheck

    ok = True
    for name, passed, detail in run_selfcheck(cfg.seed):
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "selfcheck": cmd_selfcheck,
            "audit": cmd_audit}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"nodalpencil: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    level = logging.WARNING - 10 * min(cfg.verbosity, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
