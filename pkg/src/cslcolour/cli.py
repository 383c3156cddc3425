"""Command-line front end: JSON configs in, JSON reports and SVGs out.

Exit codes: 0 success, 2 configuration error, 3 the supplied map is not
a coincidence of the parent lattice, 4 the brute-force oracle
contradicted the lattice-algebra analysis (which indicates a bug and
must never happen on the bundled configs).  Failures also emit a
machine-readable error object on standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import cslcolour
from cslcolour.coincidence import (
    CommensurableMap,
    analyze,
    census_contradictions,
    commensurable_map,
    enumerate_square_rotations,
    window_census,
)
from cslcolour.cyclo8 import cyc8, multiplication_map
from cslcolour.errors import (
    ConfigError,
    CslcolourError,
    NotCoincidence,
    UnsupportedDimension,
)
from cslcolour.lattice import Colouring, Lattice, lattice_new
from cslcolour.ratmat import format_rational, parse_rational
from cslcolour.render import RENDER_MODES, default_palette, render_svg


@dataclass
class JobConfig:
    dim: int
    parent: Lattice
    sub: Lattice
    amap: CommensurableMap
    star_embedding: bool
    reps: Optional[list]
    render_radius: Optional[int]
    palette: Optional[list]
    highlight_csl: bool
    oracle_radius: Optional[int]
    echo: dict


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def _parse_matrix(raw, dim: int, what: str):
    _require(isinstance(raw, list) and len(raw) == dim, f"{what} must be a {dim}x{dim} array")
    rows = []
    for row in raw:
        _require(isinstance(row, list) and len(row) == dim, f"{what} must be a {dim}x{dim} array")
        vals = []
        for entry in row:
            _require(isinstance(entry, str), f"{what} entries must be \"p/q\" strings")
            try:
                vals.append(parse_rational(entry))
            except ValueError as exc:
                raise ConfigError(f"{what}: {exc}") from None
        rows.append(vals)
    return rows


def load_job_config(path: str) -> JobConfig:
    try:
        with open(path, "rb") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    _require(isinstance(raw, dict), "config must be a JSON object")
    dim = raw.get("dim")
    _require(isinstance(dim, int) and dim >= 1, "dim must be a positive integer")
    try:
        parent = lattice_new(_parse_matrix(raw.get("parent_basis"), dim, "parent_basis"))
        sub = lattice_new(_parse_matrix(raw.get("sub_basis"), dim, "sub_basis"))
    except CslcolourError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid basis: {exc}") from None
    map_spec = raw.get("map")
    star = False
    if isinstance(map_spec, dict) and "coeffs" in map_spec:
        coeffs = map_spec["coeffs"]
        _require(
            isinstance(coeffs, list) and len(coeffs) == 4
            and all(isinstance(x, str) for x in coeffs),
            "map.coeffs must be 4 \"p/q\" strings",
        )
        _require(dim == 4, "a ring-element map needs dim = 4")
        try:
            amap = multiplication_map(cyc8(coeffs))
        except (ValueError, CslcolourError) as exc:
            raise ConfigError(f"invalid map element: {exc}") from None
        star = True
    else:
        if isinstance(map_spec, dict) and "matrix" in map_spec:
            map_spec = map_spec["matrix"]
        try:
            amap = commensurable_map(_parse_matrix(map_spec, dim, "map"))
        except CslcolourError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid map: {exc}") from None
    reps = None
    if raw.get("reps") is not None:
        raw_reps = raw["reps"]
        _require(isinstance(raw_reps, list) and raw_reps, "reps must be a nonempty array")
        reps = []
        for vec in raw_reps:
            _require(
                isinstance(vec, list) and len(vec) == dim
                and all(isinstance(x, str) for x in vec),
                f"each rep must be {dim} \"p/q\" strings",
            )
            try:
                reps.append([parse_rational(x) for x in vec])
            except ValueError as exc:
                raise ConfigError(f"reps: {exc}") from None
    render_radius = None
    palette = None
    highlight = False
    if raw.get("render") is not None:
        render = raw["render"]
        _require(isinstance(render, dict), "render must be an object")
        render_radius = render.get("radius")
        _require(
            isinstance(render_radius, int) and render_radius >= 0,
            "render.radius must be a non-negative integer",
        )
        if render.get("palette") is not None:
            palette = render["palette"]
            _require(
                isinstance(palette, list)
                and all(isinstance(c, str) and c.startswith("#") for c in palette),
                "render.palette must be an array of #rrggbb strings",
            )
        highlight = bool(render.get("highlight_csl", False))
    oracle_radius = raw.get("oracle_radius")
    if oracle_radius is not None:
        _require(
            isinstance(oracle_radius, int) and oracle_radius >= 1,
            "oracle_radius must be a positive integer",
        )
    return JobConfig(
        dim=dim,
        parent=parent,
        sub=sub,
        amap=amap,
        star_embedding=star,
        reps=reps,
        render_radius=render_radius,
        palette=palette,
        highlight_csl=highlight,
        oracle_radius=oracle_radius,
        echo=raw,
    )


def build_colouring(cfg: JobConfig) -> Colouring:
    try:
        return Colouring(cfg.parent, cfg.sub, reps=cfg.reps)
    except CslcolourError as exc:
        raise ConfigError(f"invalid colouring: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"invalid representatives: {exc}") from None


def _basis_strings(lat: Lattice) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in lat.basis]


def build_report(cfg: JobConfig, colouring, analysis, census=None) -> dict:
    report = {
        "tool_version": cslcolour.__version__,
        "config": cfg.echo,
        "m": analysis.m,
        "sigma1": analysis.sigma1,
        "sigma2": analysis.sigma2,
        "s": analysis.s,
        "t": analysis.t,
        "u": analysis.u,
        "v": analysis.v,
        "colour_coincidence": analysis.colour_coincidence,
        "set_I": list(analysis.set_I),
        "set_J": list(analysis.set_J),
        "permutation": (
            [list(p) for p in analysis.permutation]
            if analysis.permutation is not None
            else None
        ),
        "reps": [[format_rational(x) for x in rep] for rep in colouring.reps],
        "csl1_basis": _basis_strings(analysis.csl1),
        "csl1_inv_basis": _basis_strings(analysis.csl1_inv),
        "csl2_basis": _basis_strings(analysis.csl2),
    }
    if census is not None:
        contradictions = census_contradictions(analysis, census)
        report["census"] = census
        report["consistent"] = not contradictions
        report["contradictions"] = contradictions
    return report


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def cmd_analyze(args) -> int:
    cfg = load_job_config(args.config)
    colouring = build_colouring(cfg)
    analysis = analyze(colouring, cfg.amap)
    _emit(_report_json(build_report(cfg, colouring, analysis)), args.out)
    return 0


def cmd_oracle(args) -> int:
    cfg = load_job_config(args.config)
    _require(cfg.oracle_radius is not None, "oracle needs oracle_radius in the config")
    colouring = build_colouring(cfg)
    analysis = analyze(colouring, cfg.amap)
    census = window_census(colouring, cfg.amap, cfg.oracle_radius)
    report = build_report(cfg, colouring, analysis, census=census)
    _emit(_report_json(report), args.out)
    if report["contradictions"]:
        _error("OracleContradiction", "; ".join(report["contradictions"]))
        return 4
    return 0


def cmd_render(args) -> int:
    cfg = load_job_config(args.config)
    _require(cfg.render_radius is not None, "render needs a render section in the config")
    colouring = build_colouring(cfg)
    palette = cfg.palette
    if palette is not None:
        _require(
            len(palette) >= colouring.m,
            f"palette has {len(palette)} colours, colouring needs {colouring.m}",
        )
    try:
        svg = render_svg(
            colouring,
            cfg.amap,
            mode=args.mode,
            radius=cfg.render_radius,
            palette=palette,
            highlight_csl=cfg.highlight_csl,
            star_embedding=cfg.star_embedding,
        )
    except UnsupportedDimension as exc:
        raise ConfigError(str(exc)) from None
    _emit(svg, args.out)
    return 0


def cmd_gen_rotations(args) -> int:
    _require(args.max >= 1, "--max must be >= 1")
    rotations = enumerate_square_rotations(args.max)
    payload = {
        "max_den": args.max,
        "count": len(rotations),
        "rotations": [
            [[format_rational(x) for x in row] for row in r.matrix]
            for r in rotations
        ],
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": {"type": kind, "message": message}}) + "\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cslcolour",
        description="Exact coincidence site lattice and colour coincidence analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full index-diagram analysis of a config")
    p_analyze.add_argument("config")
    p_analyze.add_argument("--out", default=None)
    p_analyze.set_defaults(fn=cmd_analyze)

    p_render = sub.add_parser("render", help="draw a coloured lattice window as SVG")
    p_render.add_argument("config")
    p_render.add_argument("--mode", choices=RENDER_MODES, required=True)
    p_render.add_argument("--out", required=True)
    p_render.set_defaults(fn=cmd_render)

    p_oracle = sub.add_parser("oracle", help="brute-force window census cross-check")
    p_oracle.add_argument("config")
    p_oracle.add_argument("--out", default=None)
    p_oracle.set_defaults(fn=cmd_oracle)

    p_gen = sub.add_parser("gen-rotations", help="emit the square-lattice rotation corpus")
    p_gen.add_argument("--max", type=int, required=True)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(fn=cmd_gen_rotations)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        _error("ConfigError", str(exc))
        return 2
    except NotCoincidence as exc:
        _error("NotCoincidence", str(exc))
        return 3


if __name__ == "__main__":
    sys.exit(main())
