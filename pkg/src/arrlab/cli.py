"""arrlab command line: reproducible arrangement analyses and figures.

Subcommands: analyze, poset, gamma, factor, falk {constraints,solve,verify},
render.  Arrangement references are file paths or builtins like
``@icosidodecahedral``.  Exit codes: 0 success / verification PASS,
1 verification FAIL or infeasible system, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .arrangement import (
    ArrangementError,
    CentralArrangement,
    LineArrangement,
    builtin,
    cone,
    decone,
    default_decone_index,
    parse_arrangement,
)
from .cells import (
    CYCLE,
    Corner,
    build_complex,
    bounded_complex,
    face_census,
    is_simplicial,
    link_census,
)
from .factored import find_factorization, propagation_trace
from .falk import WeightError, build_constraints, solve, verify
from .lpcore import check_certificate
from .poset import intersection_poset, poincare_polynomial, splits_over_integers
from .scalar import ScalarError
from .svgout import render_svg


class CliError(Exception):
    """User-facing failure; message printed, exit code 2."""


def load_arrangement(ref: str):
    if ref.startswith("@"):
        try:
            return builtin(ref[1:])
        except ArrangementError as exc:
            raise CliError(str(exc)) from exc
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {ref}: {exc.strerror}") from exc
    try:
        return parse_arrangement(text)
    except ArrangementError as exc:
        raise CliError(f"{ref}: {exc}") from exc


def as_line_arrangement(arr):
    """Line arrangements pass through; central ones are deconed at the
    default plane."""
    if isinstance(arr, LineArrangement):
        return arr
    return decone(arr, default_decone_index(arr))


def _census_token(shape: str, length: int, mult: int) -> str:
    return f"{shape}/{length}/m{mult}"


def _shape_word(lk_shape: str, length: int) -> str:
    if lk_shape == CYCLE:
        body = "".join(str(i % 10) for i in range(1, length + 1))
        return body + "1"
    return "".join(str(i % 10) for i in range(1, length + 1))


def _polygon_name(k: int) -> str:
    names = {3: "triangle", 4: "quadrilateral", 5: "pentagon", 6: "hexagon"}
    return names.get(k, f"{k}-gon")


def cmd_analyze(args, out) -> int:
    arr = load_arrangement(args.arrangement)
    report = []
    report.append(("input", args.arrangement))
    if isinstance(arr, CentralArrangement):
        report.append(("kind", "central"))
        report.append(("field", arr.field))
        report.append(("hyperplanes", str(len(arr.planes))))
        pi = poincare_polynomial(arr)
        report.append(("pi", str(pi)))
        split = splits_over_integers(pi)
        report.append(("integer_split",
                       "none" if split is None
                       else "{" + ",".join(map(str, split)) + "}"))
        simp, witness = is_simplicial(arr)
        report.append(("simplicial", "true" if simp else "false"))
        if witness is not None:
            if witness.bounded:
                report.append(("simplicial_witness",
                               f"{_polygon_name(witness.size)} chamber"))
            else:
                report.append(("simplicial_witness",
                               f"unbounded chamber with "
                               f"{len(witness.boundary_lines)} walls"))
        idx = default_decone_index(arr)
        report.append(("decone_plane", str(idx)))
        section = decone(arr, idx)
        report.append(("pi_decone", str(poincare_polynomial(section))))
    else:
        section = arr
        report.append(("kind", "line"))
        report.append(("field", arr.field))
        report.append(("hyperplanes", str(len(arr.lines))))
        pi = poincare_polynomial(arr)
        report.append(("pi", str(pi)))
        split = splits_over_integers(pi)
        report.append(("integer_split",
                       "none" if split is None
                       else "{" + ",".join(map(str, split)) + "}"))
        report.append(("pi_cone", str(poincare_polynomial(cone(arr)))))
    if len(section.lines) >= 2:
        fac = find_factorization(section)
        report.append(("factored", "true" if fac is not None else "false"))
    else:
        report.append(("factored", "n/a"))
    cx = build_complex(section)
    gam = bounded_complex(cx)
    report.append(("gamma_vertices", str(len(gam.vertices))))
    report.append(("gamma_edges", str(len(gam.edges))))
    report.append(("gamma_faces", str(len(gam.faces))))
    report.append(("gamma_corners", str(len(gam.corners))))
    fc = face_census(cx)
    report.append(("face_census",
                   " ".join(f"{k}:{fc[k]}" for k in sorted(fc)) or "-"))
    lc = link_census(gam)
    report.append(("link_census",
                   " ".join(f"{_census_token(*k)}:{lc[k]}"
                            for k in sorted(lc)) or "-"))
    result = solve(gam)
    report.append(("falk", result.status.upper()))
    for key, value in report:
        print(f"{key}: {value}", file=out)
    return 0


def cmd_poset(args, out) -> int:
    arr = load_arrangement(args.arrangement)
    poset = intersection_poset(arr)
    for r in range(poset.rank + 1):
        flats = poset.flats_of_rank(r)
        print(f"rank {r}: {len(flats)} flat(s)", file=out)
        for f in flats:
            hset = "{" + ",".join(map(str, sorted(f.hyperplanes))) + "}"
            line = f"  flat {f.id}: hyperplanes {hset}"
            if args.mobius:
                line += f"  mu={poset.mobius[f.id]}"
            print(line, file=out)
    print(f"pi: {poset.poincare_polynomial()}", file=out)
    return 0


def cmd_gamma(args, out) -> int:
    arr = as_line_arrangement(load_arrangement(args.arrangement))
    cx = build_complex(arr)
    gam = bounded_complex(cx)
    print(f"vertices: {len(gam.vertices)}", file=out)
    print(f"edges: {len(gam.edges)}", file=out)
    print(f"faces: {len(gam.faces)}", file=out)
    fc = face_census(cx)
    print("face census: "
          + (" ".join(f"{k}-gon:{fc[k]}" for k in sorted(fc)) or "-"),
          file=out)
    print("links:", file=out)
    lc = link_census(gam)
    for (shape, length, mult), count in sorted(lc.items()):
        word = _shape_word(shape, length)
        print(f"  {word:20s} m={mult}  {shape:9s} x{count}", file=out)
    corners = " ".join(f"({c.vertex},{c.face})" for c in gam.corners)
    print(f"corners ({len(gam.corners)}): {corners}", file=out)
    return 0


def cmd_factor(args, out) -> int:
    arr = as_line_arrangement(load_arrangement(args.arrangement))
    if len(arr.lines) < 2:
        raise CliError("factorization needs at least 2 lines")
    fac = find_factorization(arr)
    if fac is not None:
        print("FACTORED", file=out)
        print("Pi1: " + " ".join(map(str, sorted(fac.part1))), file=out)
        print("Pi2: " + " ".join(map(str, sorted(fac.part2))), file=out)
        return 0
    print("NOT FACTORED", file=out)
    steps, contradiction = propagation_trace(arr)
    for line, part, reason in steps:
        print(f"  line {line} -> part {part}   [{reason}]", file=out)
    if contradiction:
        print(f"  contradiction: {contradiction}", file=out)
    else:
        print("  (no contradiction by unit propagation alone; exhaustive "
              "search excluded every assignment)", file=out)
    return 0


def _corner_names(gam):
    return {c: i for i, c in enumerate(gam.corners)}


def cmd_falk_constraints(args, out) -> int:
    arr = as_line_arrangement(load_arrangement(args.arrangement))
    gam = bounded_complex(build_complex(arr))
    system = build_constraints(gam)
    for i, c in enumerate(system.variables):
        print(f"# x{i} = corner (vertex {c.vertex}, face {c.face})", file=out)
    for row in system.rows:
        terms = " + ".join(f"{k}*x{j}" for j, k in enumerate(row.coeffs) if k)
        print(f"{terms} {row.rel} {row.rhs}   # {row.tag}", file=out)
    return 0


def cmd_falk_solve(args, out) -> int:
    arr = as_line_arrangement(load_arrangement(args.arrangement))
    gam = bounded_complex(build_complex(arr))
    result = solve(gam, equality_asphericity=args.equality_asphericity,
                   minimize_total=args.minimize_total)
    if not result.feasible:
        print("INFEASIBLE", file=out)
        cert = result.lp_result.certificate
        print("certificate multipliers (per constraint row):", file=out)
        for row, mult in zip(result.system.rows, cert):
            if mult:
                print(f"  {mult} * [{row.tag}]", file=out)
        print("note: only this sufficient test failed; no claim about "
              "asphericity itself", file=out)
        return 1
    assert check_certificate(result.lp, result.lp_result)
    text = serialize_weights(result.weights)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"FEASIBLE ({len(result.weights)} corner weights written to "
              f"{args.output})", file=out)
    else:
        print("FEASIBLE", file=out)
        print(text, end="", file=out)
    return 0


def cmd_falk_verify(args, out) -> int:
    arr = as_line_arrangement(load_arrangement(args.arrangement))
    gam = bounded_complex(build_complex(arr))
    try:
        with open(args.weights, "r", encoding="utf-8") as fh:
            weights = parse_weights(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {args.weights}: {exc.strerror}") from exc
    try:
        report = verify(gam, weights)
    except WeightError as exc:
        raise CliError(str(exc)) from exc
    print(report.verdict, file=out)
    for v in report.violations:
        print(f"  {v.tag}: value {v.lhs} violates {v.rel} {v.rhs}", file=out)
    return 0 if report.ok else 1


def cmd_render(args, out) -> int:
    arr = load_arrangement(args.arrangement)
    if isinstance(arr, CentralArrangement):
        arr = decone(arr, default_decone_index(arr))
    weights = None
    if args.weights:
        try:
            with open(args.weights, "r", encoding="utf-8") as fh:
                weights = parse_weights(fh.read())
        except OSError as exc:
            raise CliError(f"cannot read {args.weights}: "
                           f"{exc.strerror}") from exc
    try:
        doc = render_svg(arr, gamma=args.gamma, weights=weights)
    except WeightError as exc:
        raise CliError(str(exc)) from exc
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(doc)
    print(f"wrote {args.output}", file=out)
    return 0


def serialize_weights(weights) -> str:
    lines = []
    for c in sorted(weights, key=lambda c: (c.vertex, c.face)):
        lines.append(f"corner {c.vertex} {c.face} = {Fraction(weights[c])}")
    return "\n".join(lines) + "\n"


def parse_weights(text: str) -> dict:
    weights = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        if (len(tokens) != 5 or tokens[0] != "corner" or tokens[3] != "="):
            raise CliError(f"weights line {lineno}: expected "
                           f"'corner <vertex> <face> = <rational>'")
        try:
            corner = Corner(int(tokens[1]), int(tokens[2]))
            value = Fraction(tokens[4])
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"weights line {lineno}: {exc}") from exc
        if corner in weights:
            raise CliError(f"weights line {lineno}: duplicate corner")
        weights[corner] = value
    return weights


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrlab",
        description="Exact analysis of line/plane arrangements: intersection "
                    "posets, bounded complexes, and the weight test for "
                    "asphericity certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report on an arrangement")
    p.add_argument("arrangement")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("poset", help="intersection poset and pi(A,t)")
    p.add_argument("arrangement")
    p.add_argument("--mobius", action="store_true",
                   help="print Mobius values per flat")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("gamma", help="bounded complex census")
    p.add_argument("arrangement")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("factor", help="search for a factorization")
    p.add_argument("arrangement")
    p.set_defaults(func=cmd_factor)

    falk = sub.add_parser("falk", help="weight-test commands")
    falk_sub = falk.add_subparsers(dest="falk_command", required=True)

    p = falk_sub.add_parser("constraints", help="dump the constraint system")
    p.add_argument("arrangement")
    p.set_defaults(func=cmd_falk_constraints)

    p = falk_sub.add_parser("solve", help="search for a weight system")
    p.add_argument("arrangement")
    p.add_argument("--equality-asphericity", action="store_true",
                   help="force equality in every asphericity row")
    p.add_argument("--minimize-total", action="store_true",
                   help="minimize the sum of all corner weights")
    p.add_argument("-o", "--output", help="write weights to this file")
    p.set_defaults(func=cmd_falk_solve)

    p = falk_sub.add_parser("verify", help="check a weight system")
    p.add_argument("arrangement")
    p.add_argument("weights")
    p.set_defaults(func=cmd_falk_verify)

    p = sub.add_parser("render", help="emit an SVG figure")
    p.add_argument("arrangement")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--gamma", action="store_true",
                   help="emphasize the bounded complex")
    p.add_argument("--weights", help="annotate corners from a weights file")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (CliError, ArrangementError, ScalarError) as exc:
        print(f"arrlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
