"""Command-line frontend.

Commands: compute, verify, edge-cycle, diagnose, weak-grading, enumerate6.
Exit codes: 0 success, 2 parse error, 3 not weakly gradable, 4 resource cap
exceeded, 5 classification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .complexes import Obstruction, subcomplex_diagram, weak_grading
from .config import RunConfig
from .enumerate6 import (
    ClassificationFailure,
    GcdGraph,
    canonical_form,
    enumerate_graphs,
    graph_from_edges,
    run_pipeline,
)
from .groebner import GroebnerCap
from .monomial import Monomial, MonomialSeq, bits, mask_of
from .polys import Ideal, PolyParseError, parse_poly
from .simplicial import cohomology_ranks, delta_complex, reduced_cochain
from .support import NonGradableError, classify, support_symbolic, support_verify

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_GRADABLE = 3
EXIT_RESOURCE = 4
EXIT_CLASSIFICATION = 5


class IdealParseError(ValueError):
    pass


_FACTOR = re.compile(r"\s*x(\d+)\s*(?:\^\s*(\d+))?\s*")


def parse_ideal(text: str) -> MonomialSeq:
    """Parse ``x1*x2,x2*x3`` style generator lists."""
    gens = []
    chunks = text.split(",")
    if not text.strip():
        raise IdealParseError("empty ideal")
    for chunk in chunks:
        exps: dict[int, int] = {}
        pos = 0
        first = True
        while pos < len(chunk):
            if not first:
                star = re.match(r"\s*\*\s*", chunk[pos:])
                if not star:
                    break
                pos += star.end()
            m = _FACTOR.match(chunk, pos)
            if not m:
                raise IdealParseError(f"bad factor at {chunk[pos:]!r}")
            var = int(m.group(1))
            exp = int(m.group(2) or 1)
            if var < 1:
                raise IdealParseError(f"bad variable index {var}")
            exps[var] = exps.get(var, 0) + exp
            pos = m.end()
            first = False
        if chunk[pos:].strip():
            raise IdealParseError(f"trailing junk {chunk[pos:]!r}")
        if not exps:
            raise IdealParseError(f"empty monomial in {chunk!r}")
        gens.append(Monomial(exps))
    try:
        return MonomialSeq(gens)
    except ValueError as exc:
        raise IdealParseError(str(exc)) from exc


def format_ideal(seq: MonomialSeq) -> str:
    return str(seq)


def _subset_str(mask: int) -> str:
    return "{" + ",".join(str(i) for i in bits(mask)) + "}"


def _config_from(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "prime", None):
        cfg = RunConfig(primes=tuple(args.prime), seed=args.seed,
                        minor_budget=args.minor_budget, samples=args.samples,
                        threads=args.threads)
    else:
        cfg = RunConfig(seed=args.seed, minor_budget=args.minor_budget,
                        samples=args.samples, threads=args.threads)
    return cfg


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, action="append",
                   help="field prime for randomized checks (repeatable)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--minor-budget", type=int, default=20000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="suppvar",
        description="Cohomological support varieties of monomial ideals.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="symbolic support of a monomial ideal")
    p.add_argument("ideal", help='e.g. "x1*x2,x2*x3,x3*x1"')
    p.add_argument("--oracle-only", action="store_true",
                   help="use the 2-periodic oracle complex (works without a weak grading)")
    _add_common(p)

    p = sub.add_parser("verify", help="randomized check against a candidate variety")
    p.add_argument("ideal")
    p.add_argument("candidate", help='polynomial in a1..an, e.g. "a1*a3*a5+a2*a4*a6"')
    _add_common(p)

    p = sub.add_parser("edge-cycle", help="print the edge ideal of an n-cycle")
    p.add_argument("n", type=int)

    p = sub.add_parser("diagnose", help="per-subset diagnostics (Delta_J, signs, ranks)")
    p.add_argument("ideal")
    p.add_argument("subset", help='comma-separated generator indices, e.g. "1,3,5"')
    _add_common(p)

    p = sub.add_parser("weak-grading", help="weak grading of the subcomplex diagram")
    p.add_argument("ideal")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("enumerate6", help="classify all 6-generator homogeneous supports")
    p.add_argument("--dry-run", action="store_true", help="graph/ray counts only")
    p.add_argument("--graph", help="single graph: 15-bit mask or edge list 1-2;3-4")
    p.add_argument("--checkpoint", help="JSONL checkpoint path to append")
    p.add_argument("--resume", help="existing checkpoint to resume from")
    _add_common(p)
    return ap


def _cmd_compute(args) -> int:
    try:
        seq = parse_ideal(args.ideal)
    except IdealParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _config_from(args)
    engine = "chat" if args.oracle_only else "totalization"
    try:
        report = support_symbolic(seq, cfg, engine=engine)
    except NonGradableError as exc:
        ob = exc.obstruction
        print("not weakly gradable; conflicting class paths:", file=sys.stderr)
        print("  " + " -> ".join(_subset_str(c) for c in ob.path_a), file=sys.stderr)
        print("  " + " -> ".join(_subset_str(c) for c in ob.path_b), file=sys.stderr)
        print("rerun with --oracle-only for the 2-periodic engine", file=sys.stderr)
        return EXIT_NOT_GRADABLE
    except GroebnerCap as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    payload = report.to_json()
    payload["classification"] = classify(report.variety).kind
    print(json.dumps(payload, indent=None if args.json else 2, sort_keys=True))
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        seq = parse_ideal(args.ideal)
        candidate = Ideal(seq.n, [parse_poly(args.candidate, seq.n)])
    except (IdealParseError, PolyParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _config_from(args)
    report = support_verify(
        seq, candidate, samples=args.samples, primes=cfg.primes, seed=args.seed,
        config=cfg,
    )
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(f"candidate: {report.candidate}")
        print(f"engine: {report.engine}; primes: {', '.join(map(str, report.primes))}")
        print(f"on-variety points: {report.on_variety_agree}/{report.on_variety_checked} member")
        print(f"uniform points:   {report.uniform_agree}/{report.uniform_checked} agree")
        print(f"failure probability bound: {report.fail_probability_bound:.3g}")
        if report.witness:
            pt, p, expected, got = report.witness
            print(f"WITNESS at {pt} (char {p}): expected member={expected}, got {got}")
        print("verdict:", "AGREE" if report.agreed else "DISAGREE")
    return EXIT_OK if report.agreed else 1


def _cmd_edge_cycle(args) -> int:
    if args.n < 3:
        print("cycle length must be at least 3", file=sys.stderr)
        return EXIT_PARSE
    n = args.n
    gens = [f"x{i}*x{i % n + 1}" for i in range(1, n + 1)]
    print(",".join(gens))
    return EXIT_OK


def _cmd_diagnose(args) -> int:
    try:
        seq = parse_ideal(args.ideal)
        J = mask_of(int(tok) for tok in args.subset.split(",") if tok.strip()) if args.subset.strip() else 0
    except (IdealParseError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if J >> seq.n:
        print("subset mentions a generator outside 1..n", file=sys.stderr)
        return EXIT_PARSE
    data = seq.subset_data(J)
    print(f"f_J  = {data.fJ}")
    print(f"deg  = {data.degJ}")
    print(f"M_J  = {_subset_str(data.MJ)}")
    sclass = seq.s_class(J)
    print(f"S_J  = {{{', '.join(_subset_str(K) for K in sclass)}}}")
    print("ksgn:")
    for K in sclass:
        print(f"  ksgn{_subset_str(K)} = {seq.ksgn(K):+d}")
    delta = delta_complex(seq, J)
    faces = sorted(delta.faces, key=lambda f: (bin(f).count("1"), f))
    print("Delta_J faces:", "{" + ", ".join(_subset_str(f) for f in faces) + "}")
    print("reduced cochain matrices (degree i -> i+1):")
    for i, mat in zip(sorted(delta.faces_by_dim()), reduced_cochain(delta)):
        rows = mat.dense_rows()
        print(f"  delta^{i}: {mat.cols} -> {mat.rows}")
        for r in rows:
            print("    [" + " ".join(f"{(0 if e is None else e.sign):+d}" for e in r) + "]")
    ranks = cohomology_ranks(delta)
    nonzero = {d: r for d, r in ranks.items() if r}
    print("reduced cohomology ranks over Q:", nonzero or "all zero")
    return EXIT_OK


def _cmd_weak_grading(args) -> int:
    try:
        seq = parse_ideal(args.ideal)
    except IdealParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    diag = subcomplex_diagram(seq)
    result = weak_grading(diag)
    if isinstance(result, Obstruction):
        if args.json:
            print(json.dumps({
                "gradable": False,
                "path_a": [list(bits(c)) for c in result.path_a],
                "path_b": [list(bits(c)) for c in result.path_b],
            }))
        else:
            print("not weakly gradable; conflicting class paths:")
            print("  " + " -> ".join(_subset_str(c) for c in result.path_a))
            print("  " + " -> ".join(_subset_str(c) for c in result.path_b))
        return EXIT_NOT_GRADABLE
    if args.json:
        print(json.dumps({
            "gradable": True,
            "weights": {_subset_str(c): w for c, w in sorted(result.weights.items())},
        }))
    else:
        print("weakly gradable; class weights (normalized to min 0 per component):")
        for cls, w in sorted(result.weights.items()):
            print(f"  T_{_subset_str(cls)}: {w}")
    return EXIT_OK


def _parse_graph_arg(text: str) -> GcdGraph:
    if re.fullmatch(r"\d+", text):
        return canonical_form(GcdGraph(int(text)))
    edges = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d)\s*-\s*(\d)", part)
        if not m:
            raise IdealParseError(f"bad edge {part!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    return canonical_form(graph_from_edges(edges))


def _cmd_enumerate6(args) -> int:
    cfg = _config_from(args)
    if args.graph:
        try:
            graphs = [_parse_graph_arg(args.graph)]
        except IdealParseError as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    else:
        graphs = None

    def progress(res):
        if not args.json:
            caps = f" CAPPED: {res.capped}" if res.capped else ""
            print(
                f"graph {res.graph.mask:5d} [{res.graph}] rays={len(res.rays)} "
                f"candidates={res.n_candidates} {res.classes}{caps}",
                file=sys.stderr,
            )

    try:
        result = run_pipeline(
            graphs=graphs,
            config=cfg,
            checkpoint=args.checkpoint,
            resume=args.resume,
            dry_run=args.dry_run,
            progress=progress,
            threads=cfg.threads,
        )
    except ClassificationFailure as exc:
        print(f"classification failure: {exc}", file=sys.stderr)
        return EXIT_CLASSIFICATION
    if args.json:
        print(json.dumps(result.to_json(), sort_keys=True))
    else:
        print(result.summary())
    return EXIT_RESOURCE if result.capped else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "compute": _cmd_compute,
        "verify": _cmd_verify,
        "edge-cycle": _cmd_edge_cycle,
        "diagnose": _cmd_diagnose,
        "weak-grading": _cmd_weak_grading,
        "enumerate6": _cmd_enumerate6,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
