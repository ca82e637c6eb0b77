"""
Command-line front end.

    geogate design   --x 0.6 --branch minus
    geogate design   --phi-g -3.14159
    geogate simulate --x 1 --method rk4 --steps 20000 --trajectory traj.csv
    geogate sweep    --x-from 0.05 --x-to 1 --points 20 --out sweep.csv
    geogate gate     --phi-g -1.5707963 --axis-polar 1.5707963

Exit codes: 0 success, 2 invalid arguments or domain error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import _io
from .design import Branch, TwoLoopDesign, solve_forward, solve_inverse, validate
from .errors import DomainError
from .evolve import RK4, Exact, Trajectory
from .gates import (GateSpec, axis_rotation, eigenphases, gate_fidelity, gate_to_dict,
                    simulated_gate, tilted_gate)
from .phases import decompose, simulate_two_loop
from .qmath import dagger

EXIT_DOMAIN = 2
EXIT_IO = 3

SWEEP_HEADER = ("x", "branch", "cos_theta", "omega0", "omega0_prime", "omega1_prime",
                "phi_g_predicted", "phi_g_simulated", "dynamic_residual")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _add_field_args(p: argparse.ArgumentParser, design_source: bool = True):
    if design_source:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--x", type=float, help="(omega1' - omega1)/omega, in (0, 1]")
        g.add_argument("--phi-g", type=float, help="target geometric phase in (-2pi, 0)")
        p.add_argument("--branch", choices=[b.value for b in Branch], default="minus")
    p.add_argument("--omega1", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)


def _add_method_args(p: argparse.ArgumentParser):
    p.add_argument("--method", choices=["exact", "rk4"], default="exact")
    p.add_argument("--steps", type=int, default=20000, help="rk4 steps per loop")
    p.add_argument("--samples", type=int, default=401, help="odd number of samples per loop")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geogate", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("design", help="solve field parameters")
    _add_field_args(p)
    p.add_argument("--out", help="write JSON here instead of standard output")

    p = sub.add_parser("simulate", help="run both loops and decompose the phase")
    _add_field_args(p)
    p.add_argument("--design-file", help="JSON design as written by `design`")
    _add_method_args(p)
    p.add_argument("--out", help="decomposition JSON path (default: standard output)")
    p.add_argument("--trajectory", help="write the two-loop trajectory CSV here")

    p = sub.add_parser("sweep", help="tabulate designs and simulated phases over x")
    p.add_argument("--x-from", type=float, required=True)
    p.add_argument("--x-to", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--branch", choices=[b.value for b in Branch], default="minus")
    _add_field_args(p, design_source=False)
    _add_method_args(p)
    p.add_argument("--out", help="CSV path (default: standard output)")

    p = sub.add_parser("gate", help="phase gate about a chosen axis")
    p.add_argument("--phi-g", type=float, required=True)
    p.add_argument("--axis-polar", type=float, default=0.0)
    p.add_argument("--axis-azimuth", type=float, default=0.0)
    _add_field_args(p, design_source=False)
    p.add_argument("--method", choices=["exact", "rk4"], default="exact")
    p.add_argument("--steps", type=int, default=20000)
    p.add_argument("--out", help="JSON path (default: standard output)")
    return parser


def _method(args):
    return RK4(args.steps) if args.method == "rk4" else Exact()


def _check_samples(samples: int):
    if samples < 3 or samples % 2 == 0:
        raise DomainError(f"--samples must be odd and >= 3, got {samples}")


def _design_from_args(args) -> TwoLoopDesign:
    if getattr(args, "design_file", None):
        if args.x is not None or args.phi_g is not None:
            raise DomainError("give either --design-file or --x/--phi-g, not both")
        with open(args.design_file) as fh:
            return TwoLoopDesign.from_dict(json.load(fh))
    if args.x is None and args.phi_g is None:
        raise DomainError("exactly one of --x or --phi-g is required")
    if args.x is not None:
        return solve_forward(args.x, args.branch, args.omega1, args.omega)
    return solve_inverse(args.phi_g, args.omega1, args.omega)


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def run_design(args) -> None:
    design = _design_from_args(args)
    doc = design.to_dict()
    doc["residuals"] = validate(design).to_dict()
    _emit(_io.dumps(doc) + "\n", args.out)


def run_simulate(args) -> None:
    _check_samples(args.samples)
    design = _design_from_args(args)
    first, second = simulate_two_loop(design, _method(args), args.samples)
    dec = decompose(first, second, design.phi_g_predicted)
    doc = dec.to_dict()
    doc["residuals"] = validate(design).to_dict()
    if args.trajectory:
        with open(args.trajectory, "w") as fh:
            fh.write(Trajectory.concatenate(first, second).to_csv())
    _emit(_io.dumps(doc) + "\n", args.out)
    if args.out is not None:
        print(f"geometric {_io.fmt(dec.geometric)}  predicted {_io.fmt(design.phi_g_predicted)}"
              f"  dynamic {_io.fmt(dec.dynamic)}  cyclicity_defect {_io.fmt(dec.cyclicity_defect)}")


def sweep_rows(x_from: float, x_to: float, points: int, branch: str, omega1: float = 1.0,
               omega: float = 1.0, method=Exact(), samples: int = 401):
    if not (0 < x_from < x_to <= 1):
        raise DomainError(f"need 0 < x-from < x-to <= 1, got {x_from}, {x_to}")
    if points < 2:
        raise DomainError(f"--points must be >= 2, got {points}")
    _check_samples(samples)
    for x in np.linspace(x_from, x_to, points):
        d = solve_forward(float(x), branch, omega1, omega)
        dec = decompose(*simulate_two_loop(d, method, samples), d.phi_g_predicted)
        yield (d.x, d.branch.value, d.cos_theta, d.omega0, d.omega0_prime, d.omega1_prime,
               d.phi_g_predicted, dec.geometric, abs(dec.dynamic))


def run_sweep(args) -> None:
    rows = list(sweep_rows(args.x_from, args.x_to, args.points, args.branch, args.omega1,
                           args.omega, _method(args), args.samples))
    _emit(_io.csv_text(SWEEP_HEADER, rows), args.out)


def run_gate(args) -> None:
    spec = GateSpec(args.phi_g, args.axis_polar, args.axis_azimuth)
    design = solve_inverse(args.phi_g, args.omega1, args.omega)
    ideal = tilted_gate(spec, design)
    # fields tilted to the axis act as the z-axis evolution conjugated by the same rotation
    r = axis_rotation(spec.axis_polar, spec.axis_azimuth)
    simulated = r @ simulated_gate(design, _method(args)) @ dagger(r)
    doc = {
        "phi_g": spec.phi_g,
        "axis_polar": spec.axis_polar,
        "axis_azimuth": spec.axis_azimuth,
        "design": design.to_dict(),
        "ideal": gate_to_dict(ideal),
        "simulated": gate_to_dict(simulated),
        "eigenphases": [float(v) for v in eigenphases(ideal)],
        "fidelity": gate_fidelity(simulated, ideal),
    }
    _emit(_io.dumps(doc) + "\n", args.out)


COMMANDS = {"design": run_design, "simulate": run_simulate, "sweep": run_sweep,
            "gate": run_gate}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except DomainError as err:
        print(f"geogate {args.command}: error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, json.JSONDecodeError) as err:
        print(f"geogate {args.command}: I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
