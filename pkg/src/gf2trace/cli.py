"""
cli.py — gf2trace command line.

Classifies binary irreducibles by trace and cotrace, reproduces the bucket
counts of S_{i,j}(n) by enumeration, by field trace counting and by closed
forms, and certifies the odd-degree bijection and the parity results.

Quick start
───────────
    gf2trace counts --min 2 --max 12 --method all --format csv
    gf2trace verify 2 24
    gf2trace classify "x^5+x^4+x^3+x+1"
    gf2trace transform --op psi 0x3B
    gf2trace bijection 3 13
    gf2trace sri 16
    gf2trace bench --degree 20 --threshold 10

Exit codes
──────────
    0  success, every check passed
    1  a check failed (mismatching counts, broken certificate, slow bench)
    2  usage error (bad arguments, malformed polynomial, budget exceeded)

Environment
───────────
    GF2TRACE_THREADS, GF2TRACE_FIELD_MAX, GF2TRACE_ENUM_MAX, GF2TRACE_SEED
    (flags always win; see tools/config.py)
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from collections.abc import Callable, Sequence

from . import __version__
from .tools import bijection, counting, enumeration, gf2x, report, sri, transforms
from .tools.config import (
    METHODS,
    BudgetExceededError,
    RunConfig,
    get_field_max,
    get_parallelism,
    get_seed,
)

log = logging.getLogger("gf2trace")

TRANSFORM_OPS = ("psi", "psi_inv", "reciprocal", "q", "q_root", "gl2")


# ── Handlers ──────────────────────────────────────────────────────────────────


def cmd_counts(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Bucket counts per degree by the selected route(s)."""
    rows: list[report.CountRow] = []
    ok = True
    for n in cfg.degrees():
        if cfg.method == "enumerate":
            rows.append(enumeration.classify_all(n, cfg.parallelism, long_run=cfg.long_run))
            continue
        if cfg.method in ("field", "analytic"):
            route = counting.predicted_row if cfg.method == "field" else counting.analytic_row
            row = route(n, parallelism=cfg.parallelism, field_max=cfg.field_max)
            ok &= _report_violations(row)
            rows.append(row)
            continue

        start = time.perf_counter()
        tables = counting.counting_tables(n, parallelism=cfg.parallelism, field_max=cfg.field_max)
        routes = [
            enumeration.classify_all(n, cfg.parallelism, long_run=cfg.long_run),
            counting.predicted_row(n, tables),
            counting.analytic_row(n, tables),
        ]
        if len({r.cells for r in routes}) == 1:
            rows.append(
                counting.PredictedRow(
                    n, *routes[0].cells, route="all", elapsed=time.perf_counter() - start
                )
            )
        else:
            log.error("degree %d: routes disagree: %s", n, [(r.method, r.cells) for r in routes])
            rows.extend(routes)
            ok = False
    sys.stdout.write(report.render(rows, cfg.output_format))
    return 0 if ok else 1


def _report_violations(row: counting.PredictedRow) -> bool:
    problems = row.violations()
    for problem in problems:
        log.error("degree %d (%s): %s", row.n, row.route, problem)
    return not problems


def cmd_table(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Enumerated bucket counts, one row per degree."""
    rows = [
        enumeration.classify_all(n, cfg.parallelism, long_run=cfg.long_run)
        for n in cfg.degrees()
    ]
    sys.stdout.write(report.render(rows, cfg.output_format))
    return 0


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Compare enumeration against the bundled reference table."""
    result = enumeration.verify_table(
        cfg.n_min, cfg.n_max, cfg.parallelism, long_run=cfg.long_run
    )
    if cfg.output_format == "text":
        lines = []
        for row in result.rows:
            cells = " ".join(f"{c:>9}" for c in row.observed.cells)
            status = "PASS" if row.passed else "FAIL " + "; ".join(row.mismatches)
            lines.append(f"{row.n:>3} {cells}  {row.observed.elapsed:8.3f}s  {status}")
        verdict = "all rows pass" if result.passed else f"{len(result.failures)} row(s) fail"
        sys.stdout.write("\n".join([*lines, verdict]) + "\n")
    elif cfg.output_format == "csv":
        sys.stdout.write(report.render([r.observed for r in result.rows], "csv"))
    else:
        document = [
            {**report.as_record(r.observed), "passed": r.passed, "mismatches": r.mismatches}
            for r in result.rows
        ]
        sys.stdout.write(report.render_document(document, cfg.output_format))
    return 0 if result.passed else 1


def cmd_classify(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Irreducibility, bucket and signature of one polynomial."""
    f = gf2x.parse(args.poly)
    irreducible = gf2x.is_irreducible(f)
    info: dict = {"poly": format(f, "hex"), "degree": f.degree, "irreducible": irreducible}
    if irreducible and f.degree >= 2:
        info["bucket"] = gf2x.bucket(f).label
        info["signature"] = gf2x.signature(f)
    if cfg.output_format == "text":
        if not irreducible:
            text = "reducible"
        elif "bucket" not in info:
            text = "irreducible, degree 1 (no bucket)"
        else:
            text = f"irreducible, bucket {info['bucket']}, signature {info['signature']}"
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write(report.render_document(info, cfg.output_format))
    return 0


def cmd_transform(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Apply one substitution transform to a polynomial."""
    f = gf2x.parse(args.poly)
    ops: dict[str, Callable[[gf2x.Poly], gf2x.Poly]] = {
        "psi": transforms.psi,
        "psi_inv": transforms.psi_inv,
        "reciprocal": gf2x.reciprocal,
        "q": transforms.q_transform,
        "q_root": transforms.q_root,
    }
    if args.op == "gl2":
        if args.matrix is None:
            raise ValueError("--op gl2 needs --matrix a,b,c,d")
        matrix = transforms.Gl2Matrix.parse(args.matrix)
        result = transforms.gl2_apply(matrix, f)
    else:
        result = ops[args.op](f)
    text = format(result, args.style)
    if cfg.output_format == "text":
        sys.stdout.write(text + "\n")
    else:
        document = {"op": args.op, "input": format(f, args.style), "output": text}
        sys.stdout.write(report.render_document(document, cfg.output_format))
    return 0


def cmd_bijection(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Certify phi/rho on every odd degree in the range."""
    degrees = [n for n in cfg.degrees() if n >= 3 and n % 2]
    if not degrees:
        raise ValueError(f"no odd degree >= 3 in {cfg.n_min}..{cfg.n_max}")
    documents = []
    ok = True
    for n in degrees:
        cert = bijection.certify(n, cfg.parallelism, sample=args.sample, seed=cfg.seed)
        ok &= cert.passed
        documents.append(_certificate_document(cert))
        if args.transitions:
            documents[-1]["transitions"] = _transitions_document(n, cfg.parallelism)
    if cfg.output_format == "text":
        for doc in documents:
            sample = ", ".join(f"{a}->{b}" for a, b in doc["sample"])
            sys.stdout.write(
                f"n={doc['n']}: |S11|={doc['s11']} |S00|={doc['s00']} "
                f"injective={doc['injective']} onto={doc['image_matches']} "
                f"inverse={doc['rho_phi'] and doc['phi_rho']} "
                f"lemma_counterexamples={len(doc['lemma_counterexamples'])} "
                f"{'PASS' if doc['passed'] else 'FAIL'}\n"
                f"  sample: {sample or '(empty)'}\n"
            )
    else:
        sys.stdout.write(report.render_document(documents, cfg.output_format))
    return 0 if ok else 1


def _certificate_document(cert: bijection.BijectionCertificate) -> dict:
    return {
        "n": cert.n,
        "s11": cert.s11_count,
        "s00": cert.s00_count,
        "injective": cert.injective,
        "image_matches": cert.image_matches,
        "rho_phi": cert.rho_phi_identity,
        "phi_rho": cert.phi_rho_identity,
        "lemma_counterexamples": [
            {
                "f": format(c.f, "hex"),
                "direction": str(c.direction),
                "predicted": c.predicted.label,
                "observed": c.observed.label,
            }
            for c in cert.lemma_counterexamples
        ],
        "signature_flip_violations": [format(f, "hex") for f in cert.signature_flip_violations],
        "sample": [[format(a, "hex"), format(b, "hex")] for a, b in cert.sample],
        "passed": cert.passed,
    }


def _transitions_document(n: int, parallelism: int) -> list[dict]:
    tally = bijection.observe_transitions(n, parallelism)
    return [
        {
            "source": source.label,
            "sigma": sigma,
            "direction": str(direction),
            "targets": {t.label: c for t, c in sorted(targets.items())},
        }
        for (source, sigma, direction), targets in sorted(tally.items())
    ]


def cmd_sri(cfg: RunConfig, args: argparse.Namespace) -> int:
    """SRI_1(n), its pairing and the parity checks for |S_{1,1}(n)|."""
    n = args.degree
    members = sri.enumerate_sri1(n, cfg.parallelism)
    doc: dict = {"n": n, "sri1": [format(f, "hex") for f in members]}
    ok = True
    if n % 2 == 0:
        partition = sri.sri_pairing(n, cfg.parallelism)
        doc["pairs"] = [[format(a, "hex"), format(b, "hex")] for a, b in partition.pairs]
        doc["fixed"] = [format(f, "hex") for f in partition.fixed]
        half = len(sri.enumerate_sri1(n // 2, cfg.parallelism))
        ok &= len(partition.fixed) == half and partition.size == len(members)
    if n >= 2:
        split = sri.reciprocal_split(n, cfg.parallelism)
        verdict = sri.parity_verdict(n)
        doc["s11"] = split.size
        doc["parity_verdict"] = verdict
        doc["descent"] = [list(step) for step in sri.descent_chain(n, cfg.parallelism)]
        ok &= split.size % 2 == verdict and split.fixed == members
    doc["passed"] = bool(ok)
    if cfg.output_format == "text":
        lines = [f"SRI_1({n}): {len(members)} member(s) {' '.join(doc['sri1'])}".rstrip()]
        if "pairs" in doc:
            lines.append(f"  pairs={len(doc['pairs'])} fixed={len(doc['fixed'])}")
        if "s11" in doc:
            chain = " -> ".join(f"{d}:{c}" for d, c in doc["descent"])
            lines.append(
                f"  |S11|={doc['s11']} parity_verdict={doc['parity_verdict']} descent {chain}"
            )
        lines.append("PASS" if ok else "FAIL")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(report.render_document(doc, cfg.output_format))
    return 0 if ok else 1


def cmd_bench(cfg: RunConfig, args: argparse.Namespace) -> int:
    """Time classify_all at one degree against a threshold in seconds."""
    start = time.perf_counter()
    counts = enumeration.classify_all(args.degree, cfg.parallelism, long_run=cfg.long_run)
    elapsed = time.perf_counter() - start
    within = elapsed <= args.threshold
    sys.stdout.write(
        f"classify_all({args.degree}): {elapsed:.3f}s with {cfg.parallelism} worker(s), "
        f"threshold {args.threshold:g}s, {'OK' if within else 'SLOW'} {counts.cells}\n"
    )
    return 0 if within else 1


_HANDLERS: dict[str, Callable[[RunConfig, argparse.Namespace], int]] = {
    "counts": cmd_counts,
    "table": cmd_table,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "transform": cmd_transform,
    "bijection": cmd_bijection,
    "sri": cmd_sri,
    "bench": cmd_bench,
}


# ── Parser ────────────────────────────────────────────────────────────────────


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, help="worker processes (GF2TRACE_THREADS)")
    common.add_argument("--format", dest="output_format", choices=report.FORMATS, default="text")
    common.add_argument("--long-run", action="store_true", help="allow enumeration up to n=32")
    common.add_argument("--field-max", type=int, help="field scan budget (GF2TRACE_FIELD_MAX)")
    common.add_argument("--seed", type=int, help="seed for sampled output (GF2TRACE_SEED)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="gf2trace",
        description="Trace/cotrace classification of binary irreducible polynomials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("counts", parents=[common], help="bucket counts by route")
    p.add_argument("--min", dest="n_min", type=int, default=2)
    p.add_argument("--max", dest="n_max", type=int, default=12)
    p.add_argument("--method", choices=METHODS, default="enumerate")

    p = sub.add_parser("table", parents=[common], help="enumerated bucket counts")
    p.add_argument("--min", dest="n_min", type=int, default=2)
    p.add_argument("--max", dest="n_max", type=int, default=12)

    p = sub.add_parser("verify", parents=[common], help="check against the reference table")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int, nargs="?")

    p = sub.add_parser("classify", parents=[common], help="classify one polynomial")
    p.add_argument("poly", help="hex (0x3B) or symbolic (x^5+x^4+x^3+x+1)")

    p = sub.add_parser("transform", parents=[common], help="apply a substitution transform")
    p.add_argument("--op", choices=TRANSFORM_OPS, required=True)
    p.add_argument("--matrix", help="a,b,c,d for --op gl2")
    p.add_argument("--style", choices=("hex", "symbolic"), default="hex")
    p.add_argument("poly")

    p = sub.add_parser("bijection", parents=[common], help="certify phi/rho for odd degrees")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int, nargs="?")
    p.add_argument("--sample", type=int, default=5, help="mapped pairs to show")
    p.add_argument("--transitions", action="store_true", help="also tally bucket transitions")

    p = sub.add_parser("sri", parents=[common], help="self-reciprocal trace-1 irreducibles")
    p.add_argument("degree", type=int)

    p = sub.add_parser("bench", parents=[common], help="time classify_all")
    p.add_argument("--degree", type=int, default=20)
    p.add_argument("--threshold", type=float, default=10.0, help="seconds")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _run_config(args: argparse.Namespace) -> RunConfig:
    n_min = getattr(args, "n_min", None)
    n_max = getattr(args, "n_max", None)
    if n_min is not None and n_max is None:
        n_max = n_min
    return RunConfig(
        command=args.command,
        n_min=n_min,
        n_max=n_max,
        method=getattr(args, "method", "enumerate"),
        output_format=args.output_format,
        parallelism=get_parallelism(args.threads),
        long_run=args.long_run,
        field_max=get_field_max(args.field_max),
        seed=get_seed(args.seed),
    )


# ── Entry point ───────────────────────────────────────────────────────────────


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, execute one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.verbose)
    try:
        cfg = _run_config(args)
        return _HANDLERS[args.command](cfg, args)
    except (ValueError, ZeroDivisionError, BudgetExceededError) as exc:
        sys.stderr.write(f"gf2trace {args.command}: error: {exc}\n")
        return 2
    except ArithmeticError as exc:
        log.error("internal count check failed: %s", exc)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
