"""Command line surface.

Exit codes: 0 on success / passing check, 1 on a failing check, 2 on usage
or parse errors.  All numeric output uses 17 significant digits and every
randomized run is keyed by --seed, so identical invocations produce byte
identical reports.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence, TextIO

from . import generators
from .complexes import (
    cat_minus_one_admissible,
    gauss_bonnet,
    link_graph,
    link_shortest_cycle,
)
from .constants import contraction_bound, eta, shadow_scale
from .cubelinks import classify_cat_minus1_vertices
from .errors import CatkitError, ComplexFileError
from .io import parse_complex, parse_link, serialize_complex
from .metric import MetricComplex, approx_distance, contraction_diameter_test
from .prop2 import build_prop2_certificate, verify_prop2_certificate

TWO_PI = 2.0 * math.pi


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _location(m: MetricComplex, spec: str):
    """Parse a location spec: v:IDX | e:IDX:S | f:IDX:W0,W1,W2."""
    parts = spec.split(":")
    try:
        if parts[0] == "v" and len(parts) == 2:
            return m.vertex_location(int(parts[1]))
        if parts[0] == "e" and len(parts) == 3:
            return m.edge_location(int(parts[1]), float(parts[2]))
        if parts[0] == "f" and len(parts) == 3:
            weights = [float(w) for w in parts[2].split(",")]
            if len(weights) != 3:
                raise ValueError
            return m.face_location(int(parts[1]), weights)
    except (ValueError, KeyError, IndexError):
        pass
    raise _Usage(f"bad location spec {spec!r} (use v:IDX, e:IDX:S or f:IDX:W0,W1,W2)")


class _Usage(Exception):
    pass


def _read_complex(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_complex(fh.read())


def _need_metric(obj) -> MetricComplex:
    if not isinstance(obj, MetricComplex):
        raise _Usage("this subcommand needs a metric complex (edge_lengths section)")
    return obj


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eta", help="print the waypoint-count cap eta(epsilon)")
    s.add_argument("--eps", type=float, required=True)

    s = sub.add_parser("bound", help="print the contraction bound B(epsilon, L)")
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--L", type=float, required=True)
    s.add_argument("--rmin", type=float, default=None)

    s = sub.add_parser("shadow-k", help="print the Thales scale k = delta/eps + 1")
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--eps", type=float, required=True)

    s = sub.add_parser("gauss-bonnet", help="curvature accounting of a complex file")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=1e-9)

    s = sub.add_parser("link-check", help="vertex link girths and local CAT(0) verdicts")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=1e-9)

    s = sub.add_parser("cube-links", help="induced 4-cycle check of a simplicial link")
    s.add_argument("file")

    s = sub.add_parser("generate", help="write a generator complex")
    s.add_argument("kind", choices=["disc_triangle", "sphere_tetrahedron",
                                    "flat_torus", "surface", "figure3",
                                    "beaded_strip"])
    s.add_argument("--genus", type=int, default=2)
    s.add_argument("--beads", type=int, default=3)
    s.add_argument("--L", type=float, default=3.0)
    s.add_argument("--eps", type=float, default=0.5)
    s.add_argument("--out", default=None)

    s = sub.add_parser("distance", help="approximate geodesic distance")
    s.add_argument("file")
    s.add_argument("--src", required=True)
    s.add_argument("--dst", required=True)
    s.add_argument("--mesh", type=float, default=0.1)

    s = sub.add_parser("contract-test", help="projection-diameter sampling test")
    s.add_argument("file")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mesh", type=float, default=0.2)
    s.add_argument("--out", default=None)

    s = sub.add_parser("prop2-verify", help="build and verify a projection-window "
                                            "certificate from a marked complex")
    s.add_argument("file")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--mesh", type=float, default=0.1)
    s.add_argument("--tol", type=float, default=1e-3)
    return p


def run(argv: Sequence[str], out: TextIO | None = None) -> int:
    """Execute one CLI invocation; returns the exit code."""
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _dispatch(args, out)
    except _Usage as exc:
        print(f"catkit: {exc}", file=out)
        return 2
    except ComplexFileError as exc:
        print(f"catkit: parse error: {exc}", file=out)
        return 2
    except FileNotFoundError as exc:
        print(f"catkit: {exc}", file=out)
        return 2
    except CatkitError as exc:
        print(f"catkit: {exc}", file=out)
        return 1


def _dispatch(args, out: TextIO) -> int:
    if args.command == "eta":
        print(_fmt(eta(args.eps)), file=out)
        return 0

    if args.command == "bound":
        if args.rmin is None:
            print(_fmt(contraction_bound(args.eps, args.L)), file=out)
        else:
            from .constants import ContractionParams

            print(_fmt(contraction_bound(ContractionParams(args.eps, args.L, args.rmin))),
                  file=out)
        return 0

    if args.command == "shadow-k":
        print(_fmt(shadow_scale(args.delta, args.eps)), file=out)
        return 0

    if args.command == "gauss-bonnet":
        obj = _read_complex(args.file)
        base = obj.base if isinstance(obj, MetricComplex) else obj
        report = gauss_bonnet(base)
        print(f"vertices {base.n_vertices} edges {len(base.edges)} "
              f"faces {len(base.faces)} chi {report.euler_characteristic}", file=out)
        print(f"total {_fmt(report.total)}", file=out)
        print(f"expected {_fmt(report.expected_total)}", file=out)
        print(f"residual {_fmt(report.residual)}", file=out)
        ok = abs(report.residual) < args.tol
        print("PASS" if ok else "FAIL", file=out)
        return 0 if ok else 1

    if args.command == "link-check":
        obj = _read_complex(args.file)
        base = obj.base if isinstance(obj, MetricComplex) else obj
        all_ok = True
        for v in range(base.n_vertices):
            girth = link_shortest_cycle(link_graph(base, v))
            ok = girth >= TWO_PI - args.tol
            all_ok &= ok
            admissible = cat_minus_one_admissible(base, v)
            girth_str = "inf" if math.isinf(girth) else _fmt(girth)
            print(f"vertex {v}: girth {girth_str} "
                  f"{'cat0-ok' if ok else 'cat0-VIOLATED'}"
                  f"{' cat-1-admissible' if admissible else ''}", file=out)
        print("PASS" if all_ok else "FAIL", file=out)
        return 0 if all_ok else 1

    if args.command == "cube-links":
        with open(args.file, "r", encoding="utf-8") as fh:
            link = parse_link(fh.read())
        report = classify_cat_minus1_vertices({0: link})
        n = report.n_cat_minus_one
        print(f"{n} CAT(-1) {'vertex' if n == 1 else 'vertices'} "
              f"of {report.n_vertices}", file=out)
        for verdict in report.verdicts:
            if verdict.witness:
                print(f"vertex {verdict.vertex}: induced 4-cycle {verdict.witness}",
                      file=out)
        if report.annotation:
            print(f"note: {report.annotation}", file=out)
        return 0

    if args.command == "generate":
        if args.kind == "surface":
            obj = generators.gen_surface(args.genus)
        elif args.kind == "figure3":
            obj, presentation = generators.gen_figure3()
            print(presentation, end="", file=out)
        elif args.kind == "beaded_strip":
            obj, _ = generators.gen_beaded_strip(args.beads, args.L, args.eps)
        else:
            obj = generators.gen_standard(args.kind)
        text = serialize_complex(obj)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"wrote {args.out}", file=out)
        else:
            print(text, end="", file=out)
        return 0

    if args.command == "distance":
        m = _need_metric(_read_complex(args.file))
        src = _location(m, args.src)
        dst = _location(m, args.dst)
        print(_fmt(approx_distance(m, src, dst, args.mesh)), file=out)
        return 0

    if args.command == "contract-test":
        m = _need_metric(_read_complex(args.file))
        if m.marked is None:
            raise _Usage("contract-test needs a [marks] section")
        report = contraction_diameter_test(m, m.marked, args.trials, args.seed,
                                           args.mesh)
        print(f"trials {len(report.trials)}", file=out)
        print(f"max_diameter {_fmt(report.max_diameter)}", file=out)
        print(f"bound {_fmt(report.bound)}", file=out)
        print(f"margin {_fmt(report.bound - report.max_diameter)}", file=out)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                for t in report.trials:
                    fh.write(json.dumps({
                        "trial": t.trial, "x": list(map(str, t.x_anchor)),
                        "d_x_gamma": t.d_x_gamma, "d_xy": t.d_xy,
                        "t_x": t.t_x, "t_y": t.t_y, "diameter": t.diameter,
                        "margin": report.bound - t.diameter,
                    }, sort_keys=True) + "\n")
            print(f"wrote {args.out}", file=out)
        print("PASS" if report.passed else "FAIL", file=out)
        return 0 if report.passed else 1

    if args.command == "prop2-verify":
        m = _need_metric(_read_complex(args.file))
        if m.marked is None:
            raise _Usage("prop2-verify needs a [marks] section")
        x = _location(m, args.x)
        y = _location(m, args.y)
        cert = build_prop2_certificate(m, m.marked, x, y, h=args.mesh)
        report = verify_prop2_certificate(cert, tol=args.tol)
        print(report.summary(), file=out)
        return 0 if report.verdict == "pass" else 1

    raise _Usage(f"unknown command {args.command!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
