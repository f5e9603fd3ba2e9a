"""Command line front end: ``nsg <verb> ...``.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for unreadable input and 3 when an input violates a precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from nsg.bounds import HakenData, bound_report, complexity_bounds
from nsg.coords import STD, MatchingError, NormalCoordinates, haken_sum, parse_coordinates, validate_coordinates
from nsg.enumerate import vertex_normal_surfaces
from nsg.generators import ConstructionError, family_An, family_Bg, gale, inflate_fxi, s2xi
from nsg.homology import homology
from nsg.surface import build_surface, edge_classification, region_decomposition, topology_summary
from nsg.triangulation import ClassificationFlags, GluingError, ParseError, Triangulation, classify, parse_triangulation
from nsg.vista import VistaError, realisation_report

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class PreconditionError(Exception):
    pass


# -- input helpers -------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def load_triangulation(spec: str) -> Triangulation:
    """A gluing-table file, or ``fixture:<name>`` for a shipped table."""
    if spec.startswith("fixture:"):
        from nsg.fixtures import fixture_triangulation

        try:
            return fixture_triangulation(spec.split(":", 1)[1])
        except KeyError as exc:
            raise ParseError(str(exc.args[0])) from exc
    return parse_triangulation(_read(spec))


def load_coordinates(path: str, tri: Triangulation) -> NormalCoordinates:
    x = parse_coordinates(_read(path))
    if x.n != tri.n:
        raise PreconditionError(f"{path} has {x.n} tetrahedra, triangulation has {tri.n}")
    return x


def flags_json(flags: ClassificationFlags) -> dict:
    return {
        "closed": flags.closed,
        "orientable": flags.orientable,
        "simplicial": flags.simplicial,
        "combinatorial_manifold": flags.combinatorial_manifold,
        "tetrahedra": flags.tetrahedra,
        "vertices": flags.vertex_count,
        "edges": flags.edge_count,
        "faces": flags.face_count,
        "boundary_components": [
            {"genus": c.genus, "orientable": c.orientable, "triangles": c.triangles, "vertices": len(c.vertex_classes)}
            for c in flags.boundary_components
        ],
        "edge_degree_census": {str(k): v for k, v in sorted(flags.edge_degree_census.items())},
        "boundary_faces_per_tet": {str(k): v for k, v in sorted(flags.boundary_faces_per_tet.items())},
    }


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            (f"{pad}-\n" + _text(v, indent + 1)) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj
        )
    return f"{pad}{obj}"


def _emit(args, payload: dict) -> None:
    out = json.dumps(payload, indent=2, sort_keys=False) if args.json else _text(payload)
    if getattr(args, "out", None):
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


# -- verbs -------------------------------------------------------------------


def cmd_validate(args) -> int:
    tri = load_triangulation(args.triangulation)
    payload = {"valid": True, **flags_json(classify(tri))}
    code = EXIT_OK
    if args.coords:
        rep = validate_coordinates(tri, load_coordinates(args.coords, tri))
        payload["coordinates"] = {
            "matching_ok": rep.matching_ok,
            "admissible": rep.admissible,
            "vertex_linking_part": {str(k): v for k, v in rep.vertex_linking_part.items()},
        }
        code = EXIT_OK if rep.ok() else EXIT_CHECK
    _emit(args, payload)
    return code


def cmd_skeleton(args) -> int:
    tri = load_triangulation(args.triangulation)
    sk = tri.skeleton
    _emit(
        args,
        {
            "vertices": sk.num_vertices,
            "edges": sk.num_edges,
            "faces": sk.num_faces,
            "tetrahedra": tri.n,
            "edge_degrees": list(sk.edge_degree),
            "boundary_edges": sum(1 for b in sk.edge_boundary if b),
            "euler_characteristic": sk.euler_characteristic(tri.n),
        },
    )
    return EXIT_OK


def cmd_homology(args) -> int:
    h = homology(load_triangulation(args.triangulation))
    _emit(args, {"betti": list(h.betti), "torsion": list(h.torsion), "h1": h.describe()})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    tri = load_triangulation(args.triangulation)
    if args.system == "quad" and tri.orientation is None:
        raise PreconditionError("quad coordinates need an orientable triangulation")
    surfaces = vertex_normal_surfaces(
        tri, args.system, filtered=not args.unfiltered, include_inadmissible=args.include_inadmissible
    )
    from nsg.coords import is_admissible, lift_to_standard

    items = []
    for y in surfaces:
        entry = {"coordinates": list(y.values), "admissible": is_admissible(y)}
        if entry["admissible"]:
            x = y if y.system == STD else lift_to_standard(tri, y)
            ts = topology_summary(build_surface(tri, x))
            entry.update(chi=ts.chi, orientable=ts.orientable, b=ts.b, genus=ts.genus, q=ts.q, v=ts.v, connected=ts.connected)
        items.append(entry)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for i, y in enumerate(surfaces):
            (d / f"vertex-{i:04d}.nsc").write_text(y.to_text())
    _emit(args, {"system": args.system, "count": len(items), "surfaces": items})
    return EXIT_OK


def _parse_haken(text: Optional[str]) -> Optional[HakenData]:
    if not text:
        return None
    try:
        n, m = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise ParseError("--haken expects N,M") from exc
    return HakenData(n, m)


def _surface_payload(tri, x, reports, args) -> tuple[dict, int]:
    S = build_surface(tri, x)
    ts = topology_summary(S)
    payload = {"summary": {**ts.to_json(), "chi": ts.chi, "genus": ts.genus, "q": ts.q, "v": ts.v, "b": ts.b,
                           "orientable": ts.orientable, "connected": ts.connected, "triangles": ts.triangles}}
    code = EXIT_OK
    regions = region_decomposition(S)
    if "regions" in reports or "all" in reports:
        payload["regions"] = regions.to_json()
    if "edges" in reports or "all" in reports:
        try:
            payload["edges"] = edge_classification(tri, S).to_json()
        except ValueError as exc:
            raise PreconditionError(str(exc)) from exc
    if "bounds" in reports or "all" in reports:
        flags = classify(tri)
        br = bound_report(
            flags,
            ts,
            regions,
            _parse_haken(args.haken),
            assert_minimal=args.assert_minimal,
            splitting_genus=args.splitting_genus,
        )
        payload["bounds"] = br.to_json()
        payload["complexity"] = complexity_bounds(flags).to_json()
        if br.violations():
            code = EXIT_CHECK
    return payload, code


def cmd_surface(args) -> int:
    tri = load_triangulation(args.triangulation)
    x = load_coordinates(args.coords, tri)
    payload, code = _surface_payload(tri, x, set(args.report or []), args)
    _emit(args, payload)
    return code


def parse_sum_terms(tokens: Sequence[str]) -> list[tuple[int, str]]:
    """``2*a.nsc + 1*b.nsc`` as [(2, 'a.nsc'), (1, 'b.nsc')]."""
    joined = " ".join(tokens)
    terms = []
    for part in joined.split("+"):
        part = part.strip()
        if not part:
            raise ParseError("empty term in sum")
        if "*" in part:
            m, path = part.split("*", 1)
            try:
                mult = int(m.strip())
            except ValueError as exc:
                raise ParseError(f"bad multiplicity in {part!r}") from exc
        else:
            mult, path = 1, part
        if mult < 1:
            raise ParseError(f"multiplicity must be positive in {part!r}")
        terms.append((mult, path.strip()))
    return terms


def infer_summand_count(tri: Triangulation, summands) -> Optional[int]:
    """Closed connected orientable summands in ``sum m * x``, or None when a term does not decompose.

    An orientable term contributes ``m`` parallel copies; a one-sided term with even
    ``m`` contributes ``m / 2`` copies of its double when that double is connected.
    """
    n = 0
    for m, x in summands:
        ts = topology_summary(build_surface(tri, x))
        if not (ts.connected and ts.closed):
            return None
        if ts.orientable:
            n += m
            continue
        if m % 2:
            return None
        td = topology_summary(build_surface(tri, x.scaled(2)))
        if not (td.connected and td.orientable):
            return None
        n += m // 2
    return n


def cmd_sum(args) -> int:
    tri = load_triangulation(args.triangulation)
    terms = parse_sum_terms(args.terms)
    summands = [(m, load_coordinates(p, tri)) for m, p in terms]
    total = haken_sum(tri, summands)
    if args.write:
        Path(args.write).write_text(total.to_text())
    args.report = args.report or ["bounds"]
    if args.haken is None:
        n = infer_summand_count(tri, summands)
        if n is not None:
            args.haken = f"{n},0"
    payload, code = _surface_payload(tri, total, set(args.report), args)
    payload["coordinates"] = total.to_text()
    _emit(args, payload)
    return code


def _generated(kind: str, param: Optional[str]):
    def need_int() -> int:
        if param is None:
            raise ParseError(f"generate {kind} needs an integer parameter")
        try:
            return int(param)
        except ValueError as exc:
            raise ParseError(f"not an integer: {param}") from exc

    try:
        if kind == "an":
            return [family_An(need_int())]
        if kind == "bg":
            return [family_Bg(need_int())]
        if kind == "gale":
            return [gale(need_int())]
        if kind == "fxi":
            return [inflate_fxi(need_int())]
        if kind == "s2xi":
            return s2xi()
        if kind == "fixture":
            from nsg.fixtures import fixture_package

            if param is None:
                raise ParseError("generate fixture needs a fixture name")
            try:
                return [fixture_package(param)]
            except KeyError as exc:
                raise ParseError(str(exc.args[0])) from exc
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise PreconditionError(str(exc)) from exc
    raise ParseError(f"unknown family {kind}")


def cmd_generate(args) -> int:
    pkgs = _generated(args.kind, args.param)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for pkg in pkgs:
        tri_path = outdir / f"{pkg.name}.tri"
        tri_path.write_text(pkg.triangulation.to_text())
        written.append(str(tri_path))
        for key, x in pkg.surfaces.items():
            p = outdir / f"{pkg.name}-{key}.nsc"
            p.write_text(x.to_text())
            written.append(str(p))
        man = outdir / f"{pkg.name}.json"
        man.write_text(json.dumps(pkg.manifest_json(), indent=2, sort_keys=True) + "\n")
        written.append(str(man))
    payload = {"written": written}
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(written))
    return EXIT_OK


def cmd_vista(args) -> int:
    tri = load_triangulation(args.triangulation)
    x = load_coordinates(args.coords, tri)
    rep = realisation_report(tri, build_surface(tri, x))
    _emit(args, rep.to_json())
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_verify(args) -> int:
    from nsg.certify import run_checks

    results = run_checks(args.only or None)
    if args.json:
        print(json.dumps([{"check": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write the report to this file (generate: output directory)")

    p = argparse.ArgumentParser(prog="nsg", description="Normal surfaces in triangulated 3-manifolds.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    tri_help = "gluing-table file, or fixture:<name>"

    s = sub.add_parser("validate", parents=[common], help="parse and classify a triangulation")
    s.add_argument("triangulation", help=tri_help)
    s.add_argument("--coords", help="also validate this coordinate file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("skeleton", parents=[common], help="vertex, edge and face classes")
    s.add_argument("triangulation", help=tri_help)
    s.set_defaults(func=cmd_skeleton)

    s = sub.add_parser("homology", parents=[common], help="integer homology")
    s.add_argument("triangulation", help=tri_help)
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("enumerate", parents=[common], help="vertex normal surfaces")
    s.add_argument("triangulation", help=tri_help)
    s.add_argument("--system", choices=("std", "quad"), default="std")
    s.add_argument("--unfiltered", action="store_true", help="enumerate the whole cone, then filter")
    s.add_argument("--include-inadmissible", action="store_true")
    s.add_argument("--out-dir", help="write each vertex surface as a coordinate file here")
    s.set_defaults(func=cmd_enumerate)

    def surface_opts(s):
        s.add_argument("--report", action="append", choices=("bounds", "regions", "edges", "all"))
        s.add_argument("--haken", help="Haken sum data N,M for the sum bound")
        s.add_argument("--splitting-genus", type=int, help="genus of F when the surface splits F x I")
        s.add_argument("--assert-minimal", action="store_true", help="treat the triangulation as minimal")

    s = sub.add_parser("surface", parents=[common], help="rebuild a surface and report on it")
    s.add_argument("triangulation", help=tri_help)
    s.add_argument("--coords", required=True)
    surface_opts(s)
    s.set_defaults(func=cmd_surface)

    s = sub.add_parser("sum", parents=[common], help="Haken sum, e.g. T.tri 2*a.nsc + 1*b.nsc")
    s.add_argument("triangulation", help=tri_help)
    s.add_argument("terms", nargs="+")
    s.add_argument("--write", help="write the summed coordinates here")
    surface_opts(s)
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("generate", parents=[common], help="write a family member and its surfaces")
    s.add_argument("kind", choices=("an", "bg", "gale", "fxi", "s2xi", "fixture"))
    s.add_argument("param", nargs="?")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("vista", parents=[common], help="vista graphs and the genus screen")
    s.add_argument("triangulation", help=tri_help)
    s.add_argument("--coords", required=True)
    s.set_defaults(func=cmd_vista)

    s = sub.add_parser("verify-paper", parents=[common], help="run the fourteen numbered checks")
    s.add_argument("--only", type=int, nargs="+", metavar="N")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GluingError) as exc:
        print(f"nsg: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, MatchingError, VistaError, ConstructionError, ValueError) as exc:
        print(f"nsg: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
