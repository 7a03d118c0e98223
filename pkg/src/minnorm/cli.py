"""Command-line interface: solve, verify, sample, example.

Exit codes: 0 ok, 2 invalid input, 3 no convergence, 4 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import document
from .basis import enumerate_basis
from .errors import InvalidInputError, MinNormError, NoConvergenceError
from .fixtures import FIXTURES
from .network import reconstruct, sample, verify_characterization, \
    verify_smoothness
from .solver import SolverConfig, solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3
EXIT_VERIFY = 4

CHARACTERIZATION_TOL = 1e-8
SMOOTHNESS_TOL = 1e-8
EDGE_CONSISTENCY_TOL = 1e-9


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_solve(args) -> int:
    if not (args.p > 1.0 and math.isfinite(args.p)):
        return _fail(f"p must lie in (1, inf), got {args.p}", EXIT_INPUT)
    try:
        tri = document.parse_input_document(document.read_json(args.input))
        basis = enumerate_basis(tri)
    except (InvalidInputError, OSError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    d = basis.data_vector()
    config = SolverConfig(p=args.p, residual_tol=args.residual_tol,
                          max_newton_iters=args.max_iters)
    code = EXIT_OK
    try:
        alpha, report = solve(basis, d, config)
    except NoConvergenceError as exc:
        alpha, report = exc.alpha, exc.report
        print(f"warning: {exc}", file=sys.stderr)
        code = EXIT_NO_CONVERGENCE
    net = reconstruct(alpha, basis, tri, report.q, p=report.p)
    document.write_json(args.output, document.solution_document(tri, basis, net, report))
    iters = "+".join(str(k) for k in report.stage_iterations)
    print(f"norm = {report.norm:.6g} (p = {report.p:g}, q = {report.q:g})")
    print(f"iterations = {iters}, residual = {report.final_residual:.3e}, "
          f"converged = {report.converged}")
    print(f"wrote {args.output}")
    return code


def _load_network(path):
    parsed = document.parse_solution_document(document.read_json(path))
    tri = parsed["tri"]
    basis = enumerate_basis(tri)
    if len(basis) != len(parsed["alpha"]):
        raise InvalidInputError(
            f"document has {len(parsed['alpha'])} coefficients, "
            f"triangulation yields {len(basis)}")
    net = reconstruct(parsed["alpha"], basis, tri, parsed["q"], p=parsed["p"])
    return parsed, tri, basis, net


def cmd_verify(args) -> int:
    try:
        parsed, tri, basis, net = _load_network(args.solution)
    except (InvalidInputError, OSError) as exc:
        return _fail(str(exc), EXIT_INPUT)

    # Stored per-edge curves must match the reconstruction from alpha.
    worst_edge = 0.0
    for record, curve in zip(parsed["edges"], net.curves):
        for key, value in (("a", curve.w.a), ("b", curve.w.b), ("c1", curve.c1)):
            worst_edge = max(worst_edge, abs(record[key] - value) / (1.0 + abs(value)))

    d = basis.data_vector()
    char_defect = verify_characterization(net, basis, d)
    smooth_defect = verify_smoothness(net)
    print(f"characterization defect = {char_defect:.3e}")
    print(f"smoothness defect = {smooth_defect:.3e}")
    ok = (char_defect <= CHARACTERIZATION_TOL and smooth_defect <= SMOOTHNESS_TOL
          and worst_edge <= EDGE_CONSISTENCY_TOL)
    if worst_edge > EDGE_CONSISTENCY_TOL:
        print(f"edge records disagree with coefficients by {worst_edge:.3e}",
              file=sys.stderr)
    if not ok:
        return _fail("verification failed", EXIT_VERIFY)
    print("verification passed")
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.per_edge < 2:
        return _fail("--per-edge must be at least 2", EXIT_INPUT)
    try:
        parsed, tri, basis, net = _load_network(args.solution)
    except (InvalidInputError, OSError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    polylines = sample(net, args.per_edge)
    if args.format == "csv":
        lines = ["edge_i,edge_j,t,x,y,z"]
        for eid, pts in polylines:
            e = tri.edges[eid]
            for k, (x, y, z) in enumerate(pts):
                t = e.length * k / (args.per_edge - 1) if k < args.per_edge - 1 else e.length
                lines.append(",".join([str(e.i + 1), str(e.j + 1)]
                                      + [document.format_float(v) for v in (t, x, y, z)]))
        text = "\n".join(lines) + "\n"
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        doc = [
            {"edge": [tri.edges[eid].i + 1, tri.edges[eid].j + 1],
             "points": [[float(v) for v in pt] for pt in pts]}
            for eid, pts in polylines
        ]
        document.write_json(args.output, doc)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_example(args) -> int:
    maker = FIXTURES.get(args.name)
    if maker is None:
        return _fail(f"unknown example {args.name!r}", EXIT_INPUT)
    document.write_json(args.output, maker())
    print(f"wrote {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minnorm",
        description="Minimum L_p-norm interpolation curve networks over a triangulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve a dataset and write a solution document")
    ps.add_argument("--input", required=True, help="input JSON (points + triangles)")
    ps.add_argument("--p", required=True, type=float, help="norm exponent, 1 < p < inf")
    ps.add_argument("--output", required=True, help="solution JSON to write")
    ps.add_argument("--residual-tol", type=float, default=1e-10)
    ps.add_argument("--max-iters", type=int, default=100,
                    help="Newton iterations per continuation step")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("verify", help="check a solution document")
    pv.add_argument("--solution", required=True)
    pv.set_defaults(func=cmd_verify)

    pp = sub.add_parser("sample", help="sample the curves of a solution document")
    pp.add_argument("--solution", required=True)
    pp.add_argument("--per-edge", required=True, type=int)
    pp.add_argument("--format", choices=("csv", "json"), default="csv")
    pp.add_argument("--output", required=True)
    pp.set_defaults(func=cmd_sample)

    pe = sub.add_parser("example", help="write a built-in example dataset")
    pe.add_argument("--name", required=True, choices=sorted(FIXTURES))
    pe.add_argument("--output", required=True)
    pe.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MinNormError as exc:
        return _fail(str(exc), EXIT_INPUT)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
