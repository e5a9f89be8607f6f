"""Command line entry point: ``inverted-y run | features | list-presets``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import laplace, oracle, resonant
from .crosscheck import max_relative_deviation
from .errors import InvertedYError, NotConverged, SingularEvaluation, ValidationError
from .model import Channel
from .presets import preset_table
from .scenario_io import from_preset, load_scenario, render_spectrum_text, with_overrides

GAMMA_MHZ = 6.0
DARK_FLOOR = 1e-20

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ORACLE = 3
EXIT_SINGULAR = 4


def _add_source_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", type=Path, help="JSON scenario file or exported spectrum file")
    src.add_argument("--preset", help="named figure preset (see list-presets)")
    p.add_argument("--grid-min", type=float, help="lowest emission detuning (units of gamma)")
    p.add_argument("--grid-max", type=float, help="highest emission detuning (units of gamma)")
    p.add_argument("--points", type=int, help="number of grid points")
    p.add_argument("--channel", choices=("s2", "s3"), help="emission channel")
    p.add_argument("--oracle", action="store_true", help="cross-check against the RK4 time-domain oracle")
    p.add_argument("--gamma-mhz", type=float, default=GAMMA_MHZ,
                   help="decay rate of |2> in MHz, used for axis labels only")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="inverted-y",
        description="Spontaneous-emission spectra of an inverted-Y atom driven by three fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="compute a spectrum and write it as delimited text")
    _add_source_args(run)
    run.add_argument("--tolerance", type=float, default=1e-3,
                     help="maximum accepted analytic/oracle relative deviation")
    run.add_argument("--output", type=Path, help="output file (default: stdout)")
    run.add_argument("--render", type=Path, help="also write a figure (format from suffix: svg, pdf, png)")

    feat = sub.add_parser("features", help="report sideband position, widths and dark-state flags")
    _add_source_args(feat)

    sub.add_parser("list-presets", help="list the built-in figure presets")
    return parser


def _load(args):
    if args.scenario is not None:
        sf = load_scenario(args.scenario)
    else:
        sf = from_preset(args.preset)
    return with_overrides(sf, args.grid_min, args.grid_max, args.points, args.channel)


def _notes(sf, spec):
    notes = []
    sc = sf.scenario
    if spec.channel is Channel.S2:
        dark = sc.is_resonant and resonant.dark_state_check(sc.drive, sc.init)
        if dark or float(spec.values.max()) < DARK_FLOOR:
            notes.append("dark state detected")
        elif sc.is_resonant and resonant.dark_line_check(sc.init):
            notes.append("dark line at delta_k = 0")
    return notes


def cmd_run(args, out, err):
    sf = _load(args)
    spec = laplace.spectrum(sf.grid, sf.scenario, sf.channel)
    notes = _notes(sf, spec)
    text = render_spectrum_text(sf, spec, gamma_mhz=args.gamma_mhz, notes=notes)

    curves = [("analytic", spec)]
    deviation = None
    if args.oracle:
        traj = oracle.integrate_amplitudes(sf.scenario)
        numeric = oracle.spectrum_from_trajectory(traj, sf.scenario, sf.grid, sf.channel)
        deviation = max_relative_deviation(spec.values, numeric.values)
        text += f"# oracle_max_relative_deviation: {deviation:.6e}\n"
        curves.append(("RK4 oracle", numeric))

    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
        info = out
    else:
        out.write(text)
        info = err
    if args.render is not None:
        from .plotting import plot_spectra
        plot_spectra(curves, args.render, gamma_mhz=args.gamma_mhz, title=sf.preset)
    for note in notes:
        print(note, file=info)
    if deviation is not None:
        print(f"oracle max relative deviation: {deviation:.3e} (tolerance {args.tolerance:g})", file=info)
        if deviation > args.tolerance:
            print("error: oracle deviation above tolerance", file=err)
            return EXIT_ORACLE
    return EXIT_OK


def _yes(flag):
    return "true" if flag else "false"


def cmd_features(args, out, err):
    sf = _load(args)
    sc = sf.scenario
    drive, decay = sc.drive, sc.decay
    dec = resonant.decompose(drive, decay)
    feats = resonant.spectral_features(drive, decay)
    lines = [f"scenario: {sf.preset or args.scenario}"]
    lines.append("roots: " + ", ".join(f"{z.real:.10g}{z.imag:+.10g}j" for z in dec.roots))
    if dec.degenerate:
        lines.append("degenerate roots; no sideband features")
    elif not feats.conjugate_pair:
        lines.append("three real roots; no sideband features")
    if feats.conjugate_pair:
        lines.append(f"delta_lambda: {feats.delta_lambda:.10g}")
        lines.append(f"central width 2|Gamma1|: {feats.central_width:.10g}"
                     + (" (subnatural)" if feats.central_width < decay.gamma2 else ""))
        lines.append(f"sideband width 2|Gamma2|: {feats.sideband_width:.10g}")
    else:
        lines.append("widths 2|Re L|: " + ", ".join(f"{2 * abs(z.real):.10g}" for z in dec.roots))
    lines.append(f"resolved: {_yes(feats.resolved)}")
    lines.append(f"dark state: {_yes(resonant.dark_state_check(drive, sc.init))}")
    lines.append(f"dark line: {_yes(resonant.dark_line_check(sc.init))}")
    if args.oracle:
        traj = oracle.integrate_amplitudes(sc)
        p1, p4 = oracle.trapped_population(traj)
        p3 = float(abs(traj.c3[-1]) ** 2) if decay.gamma3 == 0 else 0.0
        source = "RK4 oracle"
    else:
        p1, p3, p4 = laplace.trapped_populations(sc)
        source = "final value"
    lines.append(f"trapped population: {p1 + p3 + p4:.10g} (p1={p1:.6g}, p3={p3:.6g}, p4={p4:.6g}; {source})")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "list-presets":
        out.write(preset_table() + "\n")
        return EXIT_OK
    handler = cmd_run if args.command == "run" else cmd_features
    try:
        return handler(args, out, err)
    except SingularEvaluation as exc:
        print(f"error: singular evaluation: {exc}", file=err)
        return EXIT_SINGULAR
    except NotConverged as exc:
        print(f"error: oracle did not converge: {exc}", file=err)
        return EXIT_ORACLE
    except (ValidationError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return EXIT_INPUT
    except InvertedYError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
