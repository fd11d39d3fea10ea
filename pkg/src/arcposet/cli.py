"""Command-line front end.

Every operation of the library is reachable here: diagram inspection and
transforms, family enumeration, poset export, complex construction,
homology, and the named verification checks.  Exit codes: 0 success,
1 verification failure, 2 malformed input, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .complexes import build_T, read_facets, reduced_homology, write_facets
from .diagram import (
    block_list,
    block_matrix,
    crossing_count,
    free_sites,
    is_binary,
    is_proper,
    is_regular,
    parse,
    tautology_number,
    to_text,
)
from .errors import InvalidArgumentError, ResourceLimitError
from .families import build_family
from .matrix import SymmetricMatrix
from .transform import blow_up, canonicalize, dual, equivalent, realize_matrix
from .verify import check_names, run_check

SCHEMA = 1


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _load_matrix(source: str) -> SymmetricMatrix:
    if source.lstrip().startswith("{"):
        return SymmetricMatrix.from_json(source)
    try:
        with open(source, encoding="utf-8") as handle:
            return SymmetricMatrix.from_json(handle.read())
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read matrix file {source!r}: {exc}") from exc


def _parse_params(text: str | None) -> dict[str, int]:
    params: dict[str, int] = {}
    if not text:
        return params
    for part in text.split(","):
        name, _, value = part.partition("=")
        name = name.strip()
        try:
            params[name] = int(value)
        except ValueError:
            raise InvalidArgumentError(f"bad parameter {part!r}; expected name=int") from None
    return params


def _cmd_inspect(args) -> int:
    diagram = parse(args.diagram)
    decomposition = block_list(diagram)
    matrix = block_matrix(diagram)
    payload = {
        "diagram": to_text(diagram),
        "free_sites": list(free_sites(diagram)),
        "blocks": [list(b) for b in decomposition.blocks],
        "block_matrix": [list(row) for row in matrix.rows],
        "binary": is_binary(diagram),
        "proper": is_proper(diagram),
        "regular": is_regular(diagram),
        "crossings": crossing_count(diagram),
        "tautology": tautology_number(diagram),
    }
    lines = [
        f"diagram: {to_text(diagram)}",
        f"free sites: {' '.join(map(str, free_sites(diagram)))}",
        "blocks: " + " | ".join("{" + ",".join(map(str, b)) + "}" for b in decomposition.blocks),
        f"block matrix: {matrix.to_json()}",
        f"binary: {is_binary(diagram)}  proper: {is_proper(diagram)}  regular: {is_regular(diagram)}",
        f"crossings: {crossing_count(diagram)}  tautology: {tautology_number(diagram)}",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_transform(args) -> int:
    diagram = parse(args.diagram)
    operation = {"canonicalize": canonicalize, "dual": dual, "blowup": blow_up}[args.command]
    result = operation(diagram)
    _emit(args, {"diagram": to_text(result)}, [to_text(result)])
    return 0


def _cmd_equiv(args) -> int:
    first = parse(args.first)
    second = parse(args.second)
    verdict = equivalent(first, second)
    _emit(
        args,
        {"equivalent": verdict},
        ["equivalent" if verdict else "not equivalent"],
    )
    return 0


def _cmd_realize(args) -> int:
    matrix = _load_matrix(args.matrix)
    diagram = realize_matrix(matrix)
    _emit(args, {"diagram": to_text(diagram)}, [to_text(diagram)])
    return 0


def _build_family(args):
    params = _parse_params(args.params)
    cap = args.cap
    return build_family(
        args.family,
        n=params.get("n"),
        m=params.get("m"),
        f=params.get("f"),
        k=params.get("k"),
        r=params.get("r"),
        cap=cap,
    )


def _cmd_enum(args) -> int:
    poset = _build_family(args)
    keys = [to_text(e) if hasattr(e, "arcs") else e.to_json() for e in poset.elements]
    _emit(args, {"family": args.family, "count": len(keys), "elements": keys}, keys)
    return 0


def _cmd_poset(args) -> int:
    poset = _build_family(args)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(poset.to_dot(name="family") + "\n")
    lines = []
    if args.stats or not args.dot:
        lines.append(poset.stats_text())
    payload = {"family": args.family, "stats": poset.stats_text()}
    if args.dot:
        payload["dot"] = args.dot
    _emit(args, payload, lines)
    return 0


def _cmd_complex(args) -> int:
    m, k = args.T
    complex_ = build_T(m, k)
    text = write_facets(complex_)
    if args.facets:
        with open(args.facets, "w", encoding="utf-8") as handle:
            handle.write(text)
        _emit(
            args,
            {"facets": args.facets, "count": len(complex_.facets)},
            [f"{len(complex_.facets)} facets written to {args.facets}"],
        )
    else:
        _emit(
            args,
            {"count": len(complex_.facets), "facet_lines": text.splitlines()},
            text.splitlines(),
        )
    return 0


def _cmd_homology(args) -> int:
    try:
        with open(args.facets, encoding="utf-8") as handle:
            complex_ = read_facets(handle.read())
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read facet file {args.facets!r}: {exc}") from exc
    homology = reduced_homology(complex_)
    lines = homology.report_lines()
    payload = {
        "groups": {
            str(d): {"betti": b, "torsion": list(t)}
            for d, (b, t) in sorted(homology.groups.items())
        }
    }
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    grid = None
    if args.grid:
        grid = []
        for chunk in args.grid:
            for point in chunk.split(";"):
                if point.strip():
                    grid.append(_parse_params(point))
    report = run_check(args.check, grid)
    lines = []
    payload_points = []
    for point in report.points:
        status = "pass" if point.passed else "FAIL"
        params = ",".join(f"{k}={v}" for k, v in point.params.items())
        lines.append(f"{report.check}[{params}]: {status} -- {point.detail}")
        payload_points.append(
            {"params": point.params, "passed": point.passed, "detail": point.detail}
        )
    lines.append(f"{report.check}: {'pass' if report.passed else 'FAIL'}")
    _emit(
        args,
        {"check": report.check, "passed": report.passed, "points": payload_points},
        lines,
    )
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcposet",
        description="Arc diagrams, block matrices, posets and homology.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--cap", type=int, default=None, help="size/search cap")
    parser.add_argument(
        "--jobs", type=int, default=1, help="worker parallelism (never changes output)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="free sites, blocks, block matrix, predicates")
    p.add_argument("diagram")
    p.set_defaults(func=_cmd_inspect)

    for name, help_text in (
        ("canonicalize", "unique regular representative"),
        ("dual", "half-site dual"),
        ("blowup", "split multi-arc sites"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("diagram")
        p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("equiv", help="block-matrix equivalence of two diagrams")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("realize", help="proper diagram realizing a matrix")
    p.add_argument("matrix", help="matrix JSON file or literal JSON")
    p.set_defaults(func=_cmd_realize)

    for name, help_text in (
        ("enum", "list the members of a family"),
        ("poset", "family poset stats and DOT export"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", required=True, choices=("S", "So", "Sstar", "M", "P", "D"))
        p.add_argument("--params", help="comma-separated name=int, e.g. f=4,k=1,r=0")
        if name == "poset":
            p.add_argument("--dot", help="write the cover digraph to this DOT file")
            p.add_argument("--stats", action="store_true")
            p.set_defaults(func=_cmd_poset)
        else:
            p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("complex", help="build a multitriangulation complex")
    p.add_argument("--T", nargs=2, type=int, metavar=("m", "k"), required=True)
    p.add_argument("--facets", help="write facets to this file")
    p.set_defaults(func=_cmd_complex)

    p = sub.add_parser("homology", help="reduced integral homology of a facet list")
    p.add_argument("--facets", required=True)
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("verify", help="run a named verification check")
    p.add_argument("--check", required=True, choices=check_names())
    p.add_argument(
        "--grid",
        action="append",
        help="grid points like f=4,k=1 (repeat or separate with ';')",
    )
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
