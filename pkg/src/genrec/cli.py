"""Command-line entry point: ``genrec gen | axioms | rankscan | recognize``.

Exit status is 0 when everything checked passes (or the verdict is
ProjectivePGL), 1 for axiom failures and every other verdict, and 2 for
unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import GenrecError, ParseError
from .geomrec import (
    DEFAULT_VEBLEN_BUDGET,
    LineDetectionPolicy,
    build_geometry,
    frame_stabilizer_report,
    infer_dimension,
    pencil_quotient_report,
    run_axioms,
)
from .gfgeom import FAMILIES, builtin_group
from .groupfile import SCHEMA, dumps, group_to_dict, read_group, write_atomic
from .rankfit import extremality_certificate, rank_profile
from .recognize import PROJECTIVE_PGL, RecognizeOptions, recognize

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    family: str | None = None
    n: int | None = None
    q: int | None = None
    q_list: list = field(default_factory=list)
    statistics: list = field(default_factory=list)
    holdout: int = 2
    extremality: bool = False
    output: str | None = None
    labels: str | None = None
    gamma: Fraction = Fraction(3)
    veblen_budget: int = DEFAULT_VEBLEN_BUDGET
    seed: int = 0
    centralizer_budget: int = 10**6
    format: str = "json"
    timing: bool = False


def _threads():
    raw = os.environ.get("GENREC_THREADS", "")
    try:
        return max(1, int(raw)) if raw else None
    except ValueError:
        return None


def _load_group(cfg):
    if cfg.input:
        return read_group(cfg.input)
    if cfg.family:
        return builtin_group(cfg.family, cfg.n, cfg.q).group
    raise ParseError("give an input file or --builtin FAMILY")


def _emit(cfg, data, text, out=sys.stdout):
    # with --output the JSON goes to the file and stdout gets the summary
    payload = dumps(data)
    if cfg.output:
        write_atomic(cfg.output, payload)
    if cfg.output or cfg.format == "text":
        out.write(text.rstrip("\n") + "\n")
    else:
        out.write(payload)


def run_gen(cfg, out):
    b = builtin_group(cfg.family, cfg.n, cfg.q)
    data = group_to_dict(b.group, family=b.family, params=b.params,
                         order=b.expected_order, scheme=b.scheme)
    labels_path = cfg.labels
    if labels_path is None and cfg.output:
        stem = cfg.output[:-5] if cfg.output.endswith(".json") else cfg.output
        labels_path = stem + ".labels.json"
    if labels_path:
        write_atomic(labels_path, dumps({"schema": SCHEMA, "name": b.group.name,
                                         "labels": b.labels}))
    text = f"{b.group.name}: degree {b.group.degree}, order {b.expected_order}"
    _emit(cfg, data, text, out)
    return EXIT_OK


def axioms_bundle(g, policy, budget, seed, centralizer_budget):
    """The axiom and structure reports for one group, as a JSON-ready dict."""
    data = {"schema": SCHEMA, "name": g.name, "degree": g.degree, "seed": seed}
    try:
        geom = build_geometry(g, policy, seed=seed)
    except GenrecError as exc:
        data.update(passed=False, stage="line_detection", error=type(exc).__name__,
                    reason=str(exc), unique_line=None, veblen=None, quadrilateral=None,
                    pencil=None, frame_stabilizer=None)
        return data
    suite = run_axioms(geom, budget, seed)
    data["lines"] = [list(line) for line in geom.lines]
    data["unique_line"] = suite.unique_line.to_dict()
    data["veblen"] = None if suite.veblen is None else suite.veblen.to_dict()
    data["quadrilateral"] = suite.quadrilateral.to_dict()
    passed = suite.passed
    data["pencil"] = data["frame_stabilizer"] = None
    dims = infer_dimension(geom)
    if passed and dims is not None and dims[0] >= 2:
        try:
            pencil = pencil_quotient_report(g, geom, 0)
            data["pencil"] = pencil.to_dict()
            passed = passed and pencil.passed
        except GenrecError as exc:
            data["pencil"] = {"pass": False, "error": type(exc).__name__, "reason": str(exc)}
            passed = False
        frame = frame_stabilizer_report(g, geom, centralizer_budget, seed)
        data["frame_stabilizer"] = frame.to_dict()
        passed = passed and frame.passed
    data["passed"] = passed
    return data


def run_axioms_cmd(cfg, out):
    g = _load_group(cfg)
    policy = LineDetectionPolicy(gamma=cfg.gamma)
    data = axioms_bundle(g, policy, cfg.veblen_budget, cfg.seed, cfg.centralizer_budget)
    rows = [f"{g.name or 'group'} on {g.degree} points"]
    if "stage" in data:
        rows.append(f"line detection failed: {data['error']}: {data['reason']}")
    for key in ("unique_line", "veblen", "quadrilateral", "pencil", "frame_stabilizer"):
        rep = data.get(key)
        if rep is not None:
            extra = f"  witness {rep['witness']}" if rep.get("witness") else ""
            rows.append(f"{key:<17} {'pass' if rep['pass'] else 'FAIL'}{extra}")
    _emit(cfg, data, "\n".join(rows), out)
    return EXIT_OK if data["passed"] else EXIT_FAIL


def run_rankscan(cfg, out):
    stats = cfg.statistics or None
    profile = rank_profile(cfg.family, cfg.n, cfg.q_list, stats, cfg.holdout, _threads())
    data = {"schema": SCHEMA, "seed": cfg.seed, "profile": profile.to_dict()}
    text = profile.table()
    ok = profile.holdout_ok
    if cfg.extremality:
        cert = extremality_certificate(cfg.family, cfg.n, cfg.q_list, threads=_threads())
        data["extremality"] = cert.to_dict()
        text += (f"\n\ndegree of generic transitivity: {cert.generic_degree}"
                 f" (rank {cert.rank}; extremal: {'yes' if cert.extremal else 'no'})")
    _emit(cfg, data, text, out)
    return EXIT_OK if ok else EXIT_FAIL


def run_recognize(cfg, out):
    g = _load_group(cfg)
    opts = RecognizeOptions(policy=LineDetectionPolicy(gamma=cfg.gamma),
                            veblen_budget=cfg.veblen_budget, seed=cfg.seed,
                            centralizer_budget=cfg.centralizer_budget)
    report = recognize(g, opts)
    data = {"schema": SCHEMA, "name": g.name}
    data.update(report.to_dict(timing=cfg.timing))
    _emit(cfg, data, report.summary(), out)
    return EXIT_OK if report.verdict == PROJECTIVE_PGL else EXIT_FAIL


COMMANDS = {
    "gen": run_gen,
    "axioms": run_axioms_cmd,
    "rankscan": run_rankscan,
    "recognize": run_recognize,
}


def run(cfg, out=None, err=None):
    """Execute one configured command and return its exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (GenrecError, ValueError) as exc:
        err.write(f"genrec {cfg.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"genrec {cfg.command}: {exc}\n")
        return EXIT_INPUT


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="genrec", description="Recognize projective geometry from permutation groups.")
    parser.add_argument("--version", action="version", version=f"genrec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-o", "--output", help="write the JSON report here (atomically)")
        p.add_argument("--format", choices=("json", "text"), default="json",
                       help="what to print on stdout")

    def source(p):
        p.add_argument("input", nargs="?", help="group file (.json or .perms)")
        p.add_argument("--builtin", dest="family", choices=FAMILIES,
                       help="use a builtin group instead of a file")
        p.add_argument("--n", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--policy-gamma", dest="gamma", type=_fraction, default=Fraction(3))
        p.add_argument("--veblen-budget", type=int, default=DEFAULT_VEBLEN_BUDGET)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--centralizer-budget", type=int, default=10**6)

    p = sub.add_parser("gen", help="emit a builtin group as JSON")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="projective dimension, affine dimension, or point count")
    p.add_argument("--q", type=int)
    p.add_argument("--labels", help="point-label sidecar path (default: next to --output)")
    common(p)

    p = sub.add_parser("axioms", help="reconstruct lines and check the axioms")
    source(p)
    common(p)

    p = sub.add_parser("rankscan", help="fit q-degrees of orbit counts across fields")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", dest="q_list", type=_int_list, required=True,
                   help="comma-separated prime powers")
    p.add_argument("--stat", dest="statistics", action="append", default=[],
                   help="statistic name, repeatable (generic_orbit:k, complement:k allowed)")
    p.add_argument("--holdout", type=int, default=2)
    p.add_argument("--extremality", action="store_true",
                   help="also certify the degree of generic transitivity")
    common(p)

    p = sub.add_parser("recognize", help="identify the group with PGL_{n+1}(q) or reject")
    source(p)
    p.add_argument("--timing", action="store_true", help="include stage timings (microseconds)")
    common(p)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    if cfg.command in ("axioms", "recognize") and bool(cfg.input) == bool(cfg.family):
        sys.stderr.write(f"genrec {cfg.command}: give exactly one of a file or --builtin\n")
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
