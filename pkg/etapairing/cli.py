import argparse
import logging
import math
import sys
from collections.abc import Sequence

import numpy as np

from etapairing import dicke, eta, field, gauge, spin
from etapairing.constants import MAX_ODLRO_SITES, VERSION
from etapairing.exceptions import CapacityError, DomainError, EtaPairingError
from etapairing.report import FORMATS, ReportRecord, emit
from etapairing.utilities import parallel_map, parse_angle

logger = logging.getLogger(__name__)

Output = tuple[list[ReportRecord], tuple[str, ...]]


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an angle: {text}") from exc


def dicke_rho(args) -> Output:
    spec = dicke.DickeSpec(args.n, args.k)
    abc = dicke.two_site_abc(spec)
    record = ReportRecord(
        "dicke-rho",
        params={"n": spec.n, "k": spec.k},
        results={
            "a": abc.a,
            "b": abc.b,
            "c": abc.c,
            "entangled": dicke.is_two_site_entangled(spec),
            "negativity": dicke.two_site_negativity(spec),
            "mutual_information": dicke.two_site_mutual_information(spec),
        },
    )
    return [record], record.columns


def entangled_scan(args) -> Output:
    if args.n_max < 2:
        raise DomainError(f"--n-max must be at least 2, got {args.n_max}")
    specs = [
        dicke.DickeSpec(n, k) for n in range(2, args.n_max + 1) for k in range(n + 1)
    ]

    def row(spec: dicke.DickeSpec) -> ReportRecord:
        return ReportRecord(
            "entangled-scan",
            params={"n": spec.n, "k": spec.k},
            results={
                "entangled": dicke.ppt_entangled(spec),
                "negativity": dicke.two_site_negativity(spec),
            },
        )

    records = parallel_map(row, specs, args.threads)
    return records, ("n", "k", "entangled", "negativity")


def block_entropy(args) -> Output:
    spec = dicke.DickeSpec(args.n, args.k)
    sizes = [args.m] if args.m is not None else list(range(1, spec.n))
    records = []
    for m in sizes:
        numeric = None
        if spec.n <= args.check_max:
            numeric = dicke.block_entropy_numeric(spec, m)
        records.append(
            ReportRecord(
                "block-entropy",
                params={"n": spec.n, "k": spec.k, "m": m},
                results={
                    "entropy": dicke.block_entropy(spec, m),
                    "entropy_numeric": numeric,
                },
            )
        )
    return records, ("n", "k", "m", "entropy", "entropy_numeric")


def odlro(args) -> Output:
    if args.n > MAX_ODLRO_SITES:
        raise CapacityError(
            f"the Fock brute force is limited to {MAX_ODLRO_SITES} sites, got {args.n}"
        )
    pairs = [args.k] if args.k is not None else list(range(args.n + 1))
    records = []
    for k in pairs:
        state = eta.build_eta_state(eta.EtaSpec(args.n, k, args.q))
        report = eta.odlro_correlator(state, 0, args.n - 1)
        records.append(
            ReportRecord(
                "odlro",
                params={"n": args.n, "k": k, "q": args.q, "i": 0, "j": args.n - 1},
                results={
                    "correlator": report.correlator,
                    "correlator_abs": abs(report.correlator),
                    "closed_form": report.closed_form,
                    "alpha_limit": report.alpha_limit,
                },
            )
        )
    return records, ("n", "k", "q", "i", "j") + (
        "correlator",
        "correlator_abs",
        "closed_form",
        "alpha_limit",
    )


def gauge_swap(args) -> Output:
    spec = dicke.DickeSpec(args.n, args.k)
    coherence = gauge.Coherence(args.coherence)
    rho = dicke.two_site_abc(spec).to_rho()
    phis = np.linspace(0.0, 2.0 * math.pi * args.turns, args.points)
    records = []
    for phi in phis:
        phase = gauge.PhaseSpec(float(phi))
        report = gauge.symmetry_defect(spec, phase, coherence)
        swapped = gauge.apply_pair_exchange_phase(rho, phase)
        records.append(
            ReportRecord(
                "gauge-swap",
                params={"n": spec.n, "k": spec.k, "coherence": coherence.value},
                results={
                    "phi": float(phi),
                    "defect": report.defect,
                    "defect_numeric": gauge.exchange_defect(
                        gauge.COHERENCE_VECTORS[coherence], phase
                    ),
                    "coherence_re": float(swapped.matrix[1, 2].real),
                    "coherence_im": float(swapped.matrix[1, 2].imag),
                    "status": report.status,
                },
            )
        )
    return records, (
        "n",
        "k",
        "coherence",
        "phi",
        "defect",
        "defect_numeric",
        "coherence_re",
        "coherence_im",
        "status",
    )


def flux_set(args) -> Output:
    constants = gauge.PhysicalConstants.for_units(args.units)
    topology = gauge.Topology(args.topology)
    report = gauge.allowed_flux_set(topology, args.max_n, constants)
    records = [
        ReportRecord(
            "flux-set",
            params={"topology": topology.value, "units": constants.units.value},
            results={
                "flux_number": n,
                "flux": value,
                "loop_phase": gauge.loop_phase(value, constants),
                "flux_quantum": report.flux_quantum,
                "allowed_b_field": report.allowed_b_field,
            },
        )
        for n, value in zip(report.allowed_fluxes, report.flux_values, strict=True)
    ]
    return records, (
        "topology",
        "units",
        "flux_number",
        "flux",
        "loop_phase",
        "flux_quantum",
        "allowed_b_field",
    )


def field_scan(args) -> Output:
    if not 0 < args.mass_min <= args.mass_max:
        raise DomainError(
            f"need 0 < --mass-min <= --mass-max, got {args.mass_min}, {args.mass_max}"
        )
    masses = np.geomspace(args.mass_min, args.mass_max, args.points)
    fit = field.mass_scan_fit(args.sites, args.spacing, list(masses), args.threads)
    params = {"sites": args.sites, "spacing": args.spacing}
    empty_fit = {
        "slope": None,
        "intercept": None,
        "r_squared": None,
        "log_mass_squared_slope": None,
    }
    records = [
        ReportRecord(
            "field-scan",
            params=params,
            results={"row": "sample", "mass": m, "entropy": s, **empty_fit},
        )
        for m, s in fit.samples
    ]
    records.append(
        ReportRecord(
            "field-scan",
            params=params,
            results={
                "row": "fit",
                "mass": None,
                "entropy": None,
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "log_mass_squared_slope": fit.log_mass_squared_slope,
            },
        )
    )
    return records, ("sites", "spacing", "row", "mass", "entropy", *empty_fit)


def spin_correlators(args) -> Output:
    if args.n > MAX_ODLRO_SITES:
        raise CapacityError(
            f"the Fock brute force is limited to {MAX_ODLRO_SITES} sites, got {args.n}"
        )
    state = eta.build_eta_state(eta.EtaSpec(args.n, args.k))
    records = []
    for i in range(args.n):
        for j in range(i + 1, args.n):
            report = spin.spin_correlator(state, i, j)
            records.append(
                ReportRecord(
                    "spin-correlators",
                    params={"n": args.n, "k": args.k, "i": i, "j": j},
                    results={
                        "czz": report.czz,
                        "cxx": report.cxx,
                        "cyy": report.cyy,
                        "total": report.total,
                    },
                )
            )
    return records, ("n", "k", "i", "j", "czz", "cxx", "cyy", "total")


def hubbard(args) -> Output:
    specs = [spin.HubbardSpec(args.n, args.t, u, args.geometry) for u in args.u]
    reports = parallel_map(spin.hubbard_ground_report, specs, args.threads)
    records = [
        ReportRecord(
            "hubbard",
            params={
                "n": r.spec.n_sites,
                "t": r.spec.t,
                "u": r.spec.U,
                "geometry": r.spec.geometry.value,
            },
            results={
                "u_over_t": r.spec.U / r.spec.t if r.spec.t else None,
                "ground_energy": r.energy,
                "spin_correlation": r.spin_correlation,
                "pair_correlation": r.pair_correlation,
            },
        )
        for r in reports
    ]
    return records, (
        "n",
        "t",
        "u",
        "geometry",
        "u_over_t",
        "ground_energy",
        "spin_correlation",
        "pair_correlation",
    )


def eta_residual(args) -> Output:
    hubbard_spec = spin.HubbardSpec(args.n, args.t, args.u, args.geometry)
    pairs = [args.k] if args.k is not None else list(range(args.n + 1))
    records = []
    for k in pairs:
        report = spin.eta_eigenstate_residual(hubbard_spec, k, args.q)
        records.append(
            ReportRecord(
                "eta-residual",
                params={
                    "n": args.n,
                    "t": args.t,
                    "u": args.u,
                    "geometry": hubbard_spec.geometry.value,
                    "k": k,
                    "q": args.q,
                },
                results={
                    "energy": report.energy,
                    "residual": report.residual,
                    "eigenstate": report.is_eigenstate,
                },
            )
        )
    return records, ("n", "t", "u", "geometry", "k", "q") + (
        "energy",
        "residual",
        "eigenstate",
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=FORMATS,
        default="csv",
        help="output format (default: csv)",
    )
    common.add_argument(
        "--threads",
        type=positive_int,
        default=None,
        help="worker threads for parameter scans (default: all cores)",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress to standard error (-vv for debug output)",
    )

    parser = argparse.ArgumentParser(
        description="Entanglement, ODLRO and flux quantization of η-pairing states.",
        prog="etapairing",
        epilog=f"This is etapairing v{VERSION}. Output goes to standard output; "
        f"diagnostics to standard error.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = command("dicke-rho", dicke_rho, "closed-form two-site reduced state")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)

    sub = command("entangled-scan", entangled_scan, "PPT verdict for all (n, k)")
    sub.add_argument("--n-max", type=int, required=True)

    sub = command("block-entropy", block_entropy, "entropy of an m-site block")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--m", type=int, default=None, help="block size (default: all)")
    sub.add_argument(
        "--check-max",
        type=int,
        default=12,
        help="also compute the brute-force entropy up to this n (default: 12)",
    )

    sub = command("odlro", odlro, "pair correlator from the Fock brute force")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, default=None, help="pairs (default: all)")
    sub.add_argument("--q", type=angle, default=0.0, help="momentum phase, e.g. pi")

    sub = command("gauge-swap", gauge_swap, "symmetry defect across loop phases")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--points", type=positive_int, default=9)
    sub.add_argument("--turns", type=float, default=1.0, help="sweep 0..2π·turns")
    sub.add_argument(
        "--coherence",
        choices=[c.value for c in gauge.Coherence],
        default=gauge.Coherence.EXCHANGE.value,
    )

    sub = command("flux-set", flux_set, "fluxes allowed by the phase constraint")
    sub.add_argument(
        "--topology",
        choices=[t.value for t in gauge.Topology],
        default=gauge.Topology.ANNULUS.value,
    )
    sub.add_argument("--max-n", type=int, default=2)
    sub.add_argument(
        "--units",
        choices=[u.value for u in gauge.UnitSystem],
        default=gauge.UnitSystem.SI.value,
    )

    sub = command("field-scan", field_scan, "half-chain entropy against mass")
    sub.add_argument("--sites", type=int, required=True)
    sub.add_argument("--spacing", type=float, default=1.0)
    sub.add_argument("--mass-min", type=float, required=True)
    sub.add_argument("--mass-max", type=float, required=True)
    sub.add_argument("--points", type=positive_int, default=4)

    sub = command("spin-correlators", spin_correlators, "spin correlations, η state")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--k", type=int, required=True)

    sub = command("hubbard", hubbard, "half-filled Hubbard ground states")
    sub.add_argument("--n", type=int, default=2)
    sub.add_argument("--t", type=float, default=1.0)
    sub.add_argument("--u", type=float, nargs="+", required=True)
    sub.add_argument(
        "--geometry",
        choices=[g.value for g in spin.Geometry],
        default=spin.Geometry.OPEN_CHAIN.value,
    )

    sub = command("eta-residual", eta_residual, "is the η state a Hubbard eigenstate")
    sub.add_argument("--n", type=int, default=4)
    sub.add_argument("--t", type=float, default=1.0)
    sub.add_argument("--u", type=float, default=3.0)
    sub.add_argument("--k", type=int, default=None, help="pairs (default: all)")
    sub.add_argument("--q", type=angle, default=math.pi, help="momentum phase")
    sub.add_argument(
        "--geometry",
        choices=[g.value for g in spin.Geometry],
        default=spin.Geometry.RING.value,
    )
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """
    Runs one experiment and writes its records to standard output.

    :param argv: arguments without the program name (default: ``sys.argv[1:]``)
    :return: exit code: 0 on success, 1 on a domain, capacity or numerical error, 2
             on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.verbose)
    try:
        records, columns = args.handler(args)
        text = emit(records, args.format, columns)
    except EtaPairingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        # numerical failures outside the package hierarchy (e.g. LinAlgError)
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    logger.info(f"{args.command}: {len(records)} records")
    sys.stdout.write(text)
    return 0


def cli():
    sys.exit(run())
