"""Command-line front end: ``qho-fourier <command> [options]``.

Every command prints a JSON run report on standard output. Exit status is
0 when all checks pass, 1 on a failed check or a runtime error and 2 on a
usage error. CSV files are written only after all computation is done.
"""
import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import oracle, oscillator, transforms, verify
from .errors import QHOError, UnknownFunction
from .oscillator import CandidateExponent
from .quadrature import QuadratureConfig
from .transforms import TransformKind
from .verify import Check


@dataclass
class RunReport:
    command: str
    parameters: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        for c in self.checks:
            if not math.isfinite(c.value):
                raise ValueError(f"check {c.name} has a non-finite value")

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "command": self.command,
            "parameters": dict(self.parameters),
            "outputs": list(self.outputs),
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(
            d["command"],
            d["parameters"],
            d["outputs"],
            [Check(**c) for c in d["checks"]],
            d.get("notes", []),
        )


def fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.15g}"


def write_tables(out_dir, tables):
    """Write {filename: (header, rows)}; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, (header, rows) in tables.items():
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows([fmt(v) for v in row] for row in rows)
        paths.append(path)
    return paths


# -- commands --------------------------------------------------------------

def cmd_solve(n_max, out_dir, half_width=10.0, grid_spacing=5e-3, tol=1e-6):
    if n_max < 0:
        raise ValueError("--n-max must be nonnegative")
    x = oscillator.default_grid(half_width, grid_spacing)
    pairs = [oscillator.eigenpair(n, x) for n in range(n_max + 1)]
    residual = max(oscillator.schrodinger_residual(p) for p in pairs)
    ortho = max(abs(oscillator.overlap(p, q) - (p.n == q.n)) for p in pairs for q in pairs)
    tables = {"spectrum.csv": (("n", "epsilon"), [(p.n, p.epsilon) for p in pairs])}
    for p in pairs:
        tables[f"psi_{p.n}.csv"] = (("x", "psi"), zip(p.x, p.psi.values))
    report = RunReport(
        "solve",
        {"n_max": n_max, "half_width": half_width, "grid_spacing": grid_spacing, "tol": tol},
        checks=[
            Check.at_most("oscillator.schrodinger_residual", residual, 1e-2),
            Check.at_most("oscillator.orthonormality", ortho, tol),
        ],
    )
    report.outputs = write_tables(out_dir, tables)
    return report


def cmd_scan(a_min, a_max, step, kind, out_dir):
    if not a_min < a_max:
        raise ValueError("--a-min must be below --a-max")
    if not step > 0:
        raise ValueError("--step must be positive")
    kind = transforms.as_kind(kind)
    rows = verify.scan_rows(verify.scan_values(a_min, a_max, step), kind)
    table = [
        (a, adm.parseval_ok, adm.moment_ok, adm.derivative_conditions_ok, adm.parity_ok,
         adm.accepted, growth)
        for a, adm, growth in rows
    ]
    # rejected candidates whose inversion does not visibly grow
    quiet = [a for a, adm, growth in rows if growth is False]
    report = RunReport(
        "scan",
        {"a_min": a_min, "a_max": a_max, "step": step, "kind": kind.value},
        checks=[
            Check.at_most("oscillator.quantization", verify.quantization_mismatches(rows, kind), 0),
            Check.at_most("oscillator.growth_diagnostic", len(quiet), 0),
        ],
        notes=[f"a = {a:.15g}: rejected but no growth past the turning point" for a in quiet],
    )
    header = ("a", "parseval_ok", "moment_ok", "derivative_ok", "parity_ok", "accepted", "growth_flag")
    report.outputs = write_tables(out_dir, {"scan.csv": (header, table)})
    return report


TEST_FUNCTIONS = {
    # name: (f, parity tag or None, default truncation radius)
    "exp": (lambda z: np.exp(-z), None, 40.0),
    "gauss": (lambda z: np.exp(-z * z), "even", 12.0),
    "x_gauss": (lambda z: z * np.exp(-z * z), "odd", 12.0),
    "x3_gauss": (lambda z: z**3 * np.exp(-z * z), "odd", 12.0),
}


def cmd_transform(kind, function, k_max, out_dir, k_points=401, grid_spacing=0.02,
                  half_width=None, tol=1e-9):
    kind = transforms.as_kind(kind)
    if function not in TEST_FUNCTIONS:
        raise UnknownFunction(f"unknown test function {function!r}")
    if not k_max > 0:
        raise ValueError("--k-max must be positive")
    # exp has no parity, so the origin conditions of either kind do not apply
    f, parity, radius = TEST_FUNCTIONS[function]
    radius = radius if half_width is None else half_width
    cfg = QuadratureConfig(truncation_radius=radius, rel_tol=tol)
    k = np.linspace(0.0, k_max, k_points)
    F = transforms.forward_transform(f, kind, k, cfg, enforce_boundary=parity is not None)
    zeta = np.linspace(0.0, radius, int(round(radius / grid_spacing)) + 1)

    if kind is TransformKind.SINE:
        duality = abs(F.values[0])
    else:
        duality = abs(transforms.derivative_at_origin(F, 1, extra=min(6, k_points - 1)))
    checks = [Check.at_most("transforms.boundary_duality", duality, 1e-6)]
    if abs(F.values[-1]) <= 1e-6 * np.max(np.abs(F.values)):
        checks.append(Check.at_most("transforms.parseval", transforms.parseval_gap(f, F, cfg), 1e-6))
    report = RunReport(
        "transform",
        {"kind": kind.value, "function": function, "k_max": k_max, "k_points": k_points,
         "grid_spacing": grid_spacing, "half_width": radius, "tol": tol},
        checks=checks,
    )
    report.outputs = write_tables(
        out_dir,
        {
            f"function_{function}.csv": (("zeta", "f"), zip(zeta, f(zeta))),
            f"transform_{kind.value}_{function}.csv": (("k", "F"), zip(k, F.values)),
        },
    )
    return report


def cmd_invert(a, kind, out_dir, zeta_max=6.0, grid_spacing=0.025, tol=oscillator.CLOSED_FORM_TOL):
    c = CandidateExponent(a, transforms.as_kind(kind))
    zeta = np.linspace(0.0, zeta_max, int(round(zeta_max / grid_spacing)) + 1)
    inv = oscillator.invert_candidate(c, zeta)
    if inv.closed_form is None:
        rows = [(z, v, None) for z, v in zip(zeta, inv.numeric.values)]
        checks = []
    else:
        rows = list(zip(zeta, inv.numeric.values, inv.closed_form.values))
        checks = [Check.at_most("oscillator.closed_form_inversion", inv.deviation, tol)]
    report = RunReport(
        "invert",
        {"a": a, "kind": c.kind.value, "zeta_max": zeta_max, "grid_spacing": grid_spacing, "tol": tol},
        checks=checks,
        notes=[] if checks else [f"a = {a:g} is not admissible for the {c.kind.value} kind"],
    )
    report.outputs = write_tables(
        out_dir, {"inversion.csv": (("zeta", "phi", "closed_form"), rows)}
    )
    return report


def cmd_verify(suite="all"):
    return RunReport("verify", {"suite": suite}, checks=verify.run_suite(suite))


def cmd_oracle(half_width=12.0, points=4000, states=9, out_dir=None, tol=1e-3):
    cfg = oracle.FdConfig(half_width, points, states)
    pairs = oracle.fd_eigensolve(cfg)
    errors = [abs(p.epsilon - (p.n + 0.5)) for p in pairs]
    alternation = max(
        oracle.parity_defect(p.psi)[p.n % 2] for p in pairs
    )
    report = RunReport(
        "oracle",
        {"half_width": half_width, "points": points, "states": states, "tol": tol},
        checks=[
            Check.at_most("oracle.eigenvalues", max(errors), tol),
            Check.at_most("oracle.parity_alternation", alternation, 1e-6),
        ],
        notes=[f"n = {p.n}: epsilon = {p.epsilon:.15g}" for p in pairs],
    )
    if out_dir is not None:
        rows = [(p.n, p.epsilon, p.n + 0.5, e) for p, e in zip(pairs, errors)]
        report.outputs = write_tables(
            out_dir, {"eigenvalues.csv": (("n", "epsilon", "exact", "error"), rows)}
        )
    return report


# -- argument parsing ------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="qho-fourier",
        description="Sine/cosine transform treatment of the harmonic oscillator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="eigenvalues and eigenfunctions up to n_max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--half-width", type=float, default=10.0)
    p.add_argument("--grid-spacing", type=float, default=5e-3)
    p.add_argument("--tol", type=float, default=1e-6, help="orthonormality tolerance")

    p = sub.add_parser("scan", help="admissibility scan over candidate exponents")
    p.add_argument("--a-min", type=float, required=True)
    p.add_argument("--a-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--kind", choices=[k.value for k in TransformKind], required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all", choices=(*verify.SUITES, "all"))

    p = sub.add_parser("transform", help="tabulate a test function and its transform")
    p.add_argument("--kind", choices=[k.value for k in TransformKind], required=True)
    p.add_argument("--function", required=True, help=", ".join(TEST_FUNCTIONS))
    p.add_argument("--k-max", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k-points", type=int, default=401)
    p.add_argument("--grid-spacing", type=float, default=0.02)
    p.add_argument("--half-width", type=float, default=None, help="truncation radius")
    p.add_argument("--tol", type=float, default=1e-9, help="quadrature relative tolerance")

    p = sub.add_parser("invert", help="invert k^a exp(-k^2/4) numerically")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--kind", choices=[k.value for k in TransformKind], required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--zeta-max", type=float, default=6.0)
    p.add_argument("--grid-spacing", type=float, default=0.025)
    p.add_argument("--tol", type=float, default=oscillator.CLOSED_FORM_TOL)

    p = sub.add_parser("oracle", help="finite-difference eigenvalues")
    p.add_argument("--half-width", type=float, default=12.0)
    p.add_argument("--points", type=int, default=4000)
    p.add_argument("--states", type=int, default=9)
    p.add_argument("--out", default=None)
    p.add_argument("--tol", type=float, default=1e-3, help="eigenvalue tolerance")
    return parser


def run(args):
    if args.command == "solve":
        return cmd_solve(args.n_max, args.out, args.half_width, args.grid_spacing, args.tol)
    if args.command == "scan":
        return cmd_scan(args.a_min, args.a_max, args.step, args.kind, args.out)
    if args.command == "verify":
        return cmd_verify(args.suite)
    if args.command == "transform":
        return cmd_transform(
            args.kind, args.function, args.k_max, args.out, args.k_points,
            args.grid_spacing, args.half_width, args.tol,
        )
    if args.command == "invert":
        return cmd_invert(args.a, args.kind, args.out, args.zeta_max, args.grid_spacing, args.tol)
    return cmd_oracle(args.half_width, args.points, args.states, args.out, args.tol)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except (QHOError, OSError, ValueError) as exc:
        print(f"qho-fourier {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(report.to_json())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
