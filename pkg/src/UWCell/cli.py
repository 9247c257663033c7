"""Command-line front end: ``uwcell <subcommand> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from UWCell import __version__
from UWCell.acoustic import (
    UnsupportedCombinationError,
    acoustic_sir,
    feasible_radius_range,
    max_users_radius,
    sir_db,
)
from UWCell.config import apply_config_defaults, load_config
from UWCell.energy import energy_table
from UWCell.geometry import DomainError, UnsupportedShapeError, parse_shape
from UWCell.kcoverage import (
    CONVENTIONS,
    gaf_active_density,
    kcoverage_table,
    monte_carlo_k_coverage,
)
from UWCell.models import (
    ALL_SHAPES,
    STRIP,
    AcousticParams,
    BackboneParams,
    CellShape,
    PartitionFrame,
    Placement,
    Point3,
    Region,
    RoutePolicy,
    RunConfig,
    TieBreak,
    UserConstraints,
)
from UWCell.parsers import (
    InputParseError,
    parse_cell_id,
    parse_field_csv,
    parse_point_lines,
    parse_triple,
)
from UWCell.partition import (
    active_node_ratio,
    lifetime_ratio,
    locate_cells,
    max_cell_radius,
    min_sensing_range,
    neighbor_count,
)
from UWCell.placement import (
    adjusted_cell,
    generate_placement,
    generate_strip_placement,
    placement_rows,
    select_best_model,
    strip_auxiliary_nodes,
    with_auxiliary,
)
from UWCell.quadrature import QuadratureError
from UWCell.render import (
    FORMATS,
    format_length,
    format_probability,
    format_ratio,
    render_record,
    render_table,
)
from UWCell.routing import bfs_oracle, route
from UWCell.verify import OracleScaleError, build_backbone_graph, k_connectivity, verify_coverage

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DEAD_END = 2
EXIT_USAGE = 64
EXIT_DATA = 65

_KM_PER_UNIT = {"meters": 1e-3, "kilometers": 1.0}


class UsageError(Exception):
    """Raised when arguments parse but do not make sense together."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _argument_type(parse: Callable[[str], object]) -> Callable[[str], object]:
    def convert(text: str) -> object:
        try:
            return parse(text)
        except (InputParseError, UnsupportedShapeError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    convert.__name__ = parse.__name__
    return convert


_point = _argument_type(parse_triple)
_cell_id = _argument_type(parse_cell_id)
_shape = _argument_type(parse_shape)


def _model(text: str) -> CellShape | str:
    if text.strip().lower() in ("auto", STRIP):
        return text.strip().lower()
    shape = _shape(text)
    if not shape.is_base:
        raise argparse.ArgumentTypeError(f"{shape.value} is not a placement model")
    return shape


def _length_cell(value: object) -> str:
    return value if isinstance(value, str) else format_length(float(value))


def _flag_cell(value: object) -> str:
    return str(int(bool(value)))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _region(args: argparse.Namespace) -> Region:
    return Region(args.min, args.max)


def _build_placement(
    args: argparse.Namespace, region: Region, inflate: bool = False
) -> Placement:
    """With ``inflate`` the lattice reaches one cell radius past the region."""
    params = BackboneParams(args.r_bb, args.r_bs)
    if args.model == STRIP:
        if inflate:
            region = region.inflated(params.r_bs)
        placement = generate_strip_placement(params, region, args.reference)
        if args.auxiliary:
            relays = strip_auxiliary_nodes(placement, args.r_bb, args.strip_connectivity)
            placement = with_auxiliary(placement, relays)
        return placement
    if args.model == "auto":
        cell = select_best_model(params.ratio, params.r_bs)
    else:
        cell = adjusted_cell(args.model, params)
    if inflate:
        region = region.inflated(cell.radius)
    return generate_placement(cell, region, args.reference)


def _cmd_plan(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    placement = _build_placement(args, _region(args))
    rows = [
        (*row[:3], *(format_length(c) for c in row[3:]))
        for row in placement_rows(placement)
    ]
    return EXIT_OK, render_table(("u", "v", "w", "x", "y", "z"), rows, config.output_format)


def _cmd_verify(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    if args.k and not args.graph:
        raise UsageError("--k needs --graph")
    region = _region(args)
    placement = _build_placement(args, region, inflate=True)
    step = args.grid_step if args.grid_step else args.r_bs / 20
    report = verify_coverage(placement, args.r_bs, region, step, workers=config.threads)
    record: dict[str, object] = {
        "model": placement.label,
        "cell_radius": placement.cell_radius,
        "nodes": placement.size,
        **report.to_dict(),
    }
    if args.graph:
        graph = build_backbone_graph(placement, args.r_bb)
        record["interior_degree_mode"] = graph.interior_degree_mode
        record["connected"] = k_connectivity(graph, 1)
        if args.k:
            record[f"{args.k}_connected"] = k_connectivity(graph, args.k)
    formatters = {
        "cell_radius": format_length,
        "coverage_fraction": format_probability,
        "worst_gap": _length_cell,
        "connected": _flag_cell,
    }
    if args.k:
        formatters[f"{args.k}_connected"] = _flag_cell
    return EXIT_OK, render_record(record, config.output_format, formatters)


def _cmd_partition(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    if args.r_t <= 0:
        raise DomainError(f"r_t must be positive, got {args.r_t}")
    rows = [
        (
            shape.value,
            neighbor_count(shape),
            format_length(max_cell_radius(shape) * args.r_t),
            format_length(min_sensing_range(shape) * args.r_t),
            format_ratio(active_node_ratio(shape)),
            format_ratio(100 * lifetime_ratio(shape)),
        )
        for shape in ALL_SHAPES
    ]
    header = (
        "shape", "neighbors", "max_cell_radius", "min_sensing_range",
        "active_node_ratio", "lifetime_percent",
    )
    return EXIT_OK, render_table(header, rows, config.output_format)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _cmd_locate(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    points = parse_point_lines(_read_input(args.input))
    ids = locate_cells(points, PartitionFrame(args.sink, args.r_t))
    rows = [tuple(int(c) for c in row) for row in ids]
    return EXIT_OK, render_table(("u", "v", "w"), rows, config.output_format)


def _cmd_sir(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    if args.shape is not CellShape.RD:
        raise UnsupportedCombinationError(
            f"Acoustic SIR is modeled for RD cells only, not {args.shape.value}"
        )
    km = _KM_PER_UNIT[config.units]
    params = AcousticParams(
        f_min=args.f_min,
        bandwidth=args.bandwidth,
        spreading_factor=args.spreading,
        absorption=not args.no_absorption,
    )
    if args.rho is None:
        rows = [
            (format_length(r), n, format_length(sir_db(acoustic_sir(r * km, n, params=params))))
            for n in args.n
            for r in args.radius
        ]
        return EXIT_OK, render_table(("R", "N", "sir_db"), rows, config.output_format)

    # rho is per cubic unit; the acoustic model works in km.
    constraints = UserConstraints(
        rho=args.rho / km**3,
        bandwidth=args.bandwidth,
        w0=args.w0,
        sir0=10 ** (args.sir0_db / 10),
    )
    rows = []
    for n in args.n:
        interval = feasible_radius_range(constraints, n)
        choice = max_users_radius(constraints, n, params)
        rows.append((
            n,
            format_length(interval.lo / km),
            format_length(interval.hi / km),
            format_length(choice.radius / km) if choice.feasible else None,
            format_length(choice.users_per_cell) if choice.feasible else None,
            choice.binding,
        ))
    header = ("N", "R_lo", "R_hi", "R", "users_per_cell", "binding")
    return EXIT_OK, render_table(header, rows, config.output_format)


def _cmd_energy(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    rows = [
        (
            r.model.value,
            format_ratio(r.per_packet_ratio),
            format_ratio(r.network_ratio),
            format_ratio(r.per_node_ratio),
        )
        for r in energy_table(args.exponent)
    ]
    header = ("model", "per_packet_ratio", "network_ratio", "per_node_ratio")
    return EXIT_OK, render_table(header, rows, config.output_format)


def _cmd_kcov(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    table = kcoverage_table(args.k_max, args.dim, args.convention)
    # Four decimals in 3D, seven in 2D.
    lam_fmt, p_fmt = ("{:.8f}", "{:.4f}") if args.dim == 3 else ("{:.7f}", "{:.7f}")
    header = ["k", "lambda", "p_geq_k", "overhead"]
    rows = []
    for row in table:
        cells: list[object] = [
            row.k,
            lam_fmt.format(row.lambda_k),
            p_fmt.format(row.p_geq_k),
            format_ratio(row.overhead),
        ]
        if args.samples:
            estimate = monte_carlo_k_coverage(
                gaf_active_density(row.k, args.dim),
                1.0,
                row.k,
                args.samples,
                seed=config.seed,
                dimension=args.dim,
                workers=config.threads,
            )
            cells.append(format_probability(estimate))
        rows.append(tuple(cells))
    if args.samples:
        header.append("monte_carlo")
    return EXIT_OK, render_table(header, rows, config.output_format)


def _cmd_route(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    field = parse_field_csv(_read_input(args.field))
    policy = RoutePolicy(TieBreak(args.policy), seed=config.seed)
    result = route(args.src, args.dest, field, policy, args.max_hops)
    rows = [tuple(cell) for cell in result.path]
    body = render_table(("u", "v", "w"), rows, config.output_format)
    if result.delivered:
        print(f"delivered in {result.hops} hops", file=sys.stderr)
        return EXIT_OK, body
    shortest = bfs_oracle(args.src, args.dest, field)
    reachable = "unreachable" if shortest is None else f"reachable in {shortest} hops"
    print(
        f"dead end at {tuple(result.at)} ({result.reason}); destination {reachable}",
        file=sys.stderr,
    )
    return EXIT_DEAD_END, body


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_EPILOG = """
examples:
  uwcell plan --r-bb 1.8 --r-bs 1 --min 0,0,0 --max 10,10,10
  uwcell locate --sink 0,0,0 --r-t 1 --input points.txt
  uwcell kcov --dim 3 --k-max 4
  uwcell route --field field.csv --src 0,0,0 --dest 3,0,0
"""


def _add_placement_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", type=_model, default="auto",
                   help="auto, CB, HP, RD, TO or strip (default: auto)")
    p.add_argument("--r-bb", type=float, required=True, help="backbone-backbone range")
    p.add_argument("--r-bs", type=float, required=True, help="backbone-sensor range")
    p.add_argument("--min", type=_point, required=True, help="region min corner x,y,z")
    p.add_argument("--max", type=_point, required=True, help="region max corner x,y,z")
    p.add_argument("--reference", type=_point, default=Point3(0.0, 0.0, 0.0),
                   help="lattice reference point (default: origin)")
    p.add_argument("--auxiliary", action="store_true",
                   help="add relay nodes between strips (strip model only)")
    p.add_argument("--strip-connectivity", type=int, choices=(1, 2), default=1,
                   help="1: link strips near the center; 2: link both strip ends (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="uwcell",
        description="Cell-based planning for 3D underwater sensor networks.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_EPILOG,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="flat key = value file of option defaults")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default="csv")
    parser.add_argument("--units", choices=tuple(_KM_PER_UNIT), default="meters",
                        help="length unit of acoustic radii (default: meters)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1,
                        help="workers for KD-tree queries (-1 for all cores)")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", help="place backbone nodes in a region")
    _add_placement_args(p)
    p.set_defaults(handler=_cmd_plan)

    p = sub.add_parser("verify", help="check coverage and connectivity of a placement")
    _add_placement_args(p)
    p.add_argument("--grid-step", type=float, help="sample spacing (default: r_bs/20)")
    p.add_argument("--graph", action="store_true", help="also report backbone graph checks")
    p.add_argument("--k", type=int, help="test k-connectivity (needs --graph)")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("partition", help="virtual-cell constants for every shape")
    p.add_argument("--r-t", type=float, default=1.0, help="transmission radius")
    p.set_defaults(handler=_cmd_partition)

    p = sub.add_parser("locate", help="cell ids of points, one 'x y z' per line")
    p.add_argument("--sink", type=_point, default=Point3(0.0, 0.0, 0.0))
    p.add_argument("--r-t", type=float, default=1.0, help="transmission radius")
    p.add_argument("--input", default="-", help="points file (default: stdin)")
    p.set_defaults(handler=_cmd_locate)

    p = sub.add_parser("sir", help="acoustic SIR and cell radius selection")
    p.add_argument("--shape", type=_shape, default=CellShape.RD)
    p.add_argument("--n", type=int, nargs="+", default=[1, 8, 27], help="cluster sizes")
    p.add_argument("--radius", type=float, nargs="+", default=[1000.0],
                   help="cell radii in --units")
    p.add_argument("--f-min", type=float, default=10_000.0, help="band start in Hz")
    p.add_argument("--bandwidth", type=float, default=7_000.0, help="band width in Hz")
    p.add_argument("--spreading", type=float, default=1.5, help="spreading factor")
    p.add_argument("--no-absorption", action="store_true", help="spreading loss only")
    p.add_argument("--rho", type=float, help="users per cubic unit; selects radii instead")
    p.add_argument("--w0", type=float, default=100.0, help="minimum bandwidth per user in Hz")
    p.add_argument("--sir0-db", type=float, default=0.0, help="minimum SIR in dB")
    p.set_defaults(handler=_cmd_sir)

    p = sub.add_parser("energy", help="energy ratios relative to TO")
    p.add_argument("--exponent", type=float, default=2.0, help="per-hop path-loss exponent")
    p.set_defaults(handler=_cmd_energy)

    p = sub.add_parser("kcov", help="k-coverage probabilities of GAF sleep scheduling")
    p.add_argument("--dim", type=int, choices=(2, 3), default=3)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--convention", choices=CONVENTIONS, default="poisson")
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo samples per row")
    p.set_defaults(handler=_cmd_kcov)

    p = sub.add_parser("route", help="greedy routing over a field of cell ids")
    p.add_argument("--field", required=True, help="CSV of u,v,w,alive[,energy]")
    p.add_argument("--src", type=_cell_id, required=True)
    p.add_argument("--dest", type=_cell_id, required=True)
    p.add_argument("--policy", choices=[t.value for t in TieBreak],
                   default=TieBreak.LEAST_LOADED.value)
    p.add_argument("--max-hops", type=int)
    p.set_defaults(handler=_cmd_route)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _parse(argv: Sequence[str] | None) -> argparse.Namespace:
    parser = build_parser()
    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        apply_config_defaults(parser, load_config(known.config))
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (InputParseError, OSError) as exc:
        print(f"uwcell: error: {exc}", file=sys.stderr)
        return EXIT_DATA

    _configure_logging(args.verbose)
    config = RunConfig(
        seed=args.seed,
        output_format=args.output_format,
        units=args.units,
        threads=args.threads,
    )
    logger.debug("Running %s with %s", args.command, config)
    try:
        status, text = args.handler(args, config)
    except (InputParseError, OSError) as exc:
        print(f"uwcell: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (
        DomainError,
        UnsupportedShapeError,
        UnsupportedCombinationError,
        OracleScaleError,
        QuadratureError,
        UsageError,
    ) as exc:
        print(f"uwcell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if text:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
