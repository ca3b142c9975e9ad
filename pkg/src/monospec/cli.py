"""Command line interface.

Subcommands:

- ``spectrum``        tabulate bound levels for one impurity case
- ``critical-scan``   sweep the coupling across the collapse boundary
- ``susy-verify``     run the factorization self-checks and report residuals
- ``oracle-compare``  closed form vs matrix vs shooting, level by level

Output is CSV (RFC 4180 cells, LF line endings) or JSON lines via
``--format``, written to ``--out`` or stdout.  A ``--config`` file holds
``key = value`` pairs using the long option names; explicit flags win.
Exit codes: 0 success, 1 usage or configuration error, 2 verification
failure, 3 refusal because the requested regime has no real spectrum.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import electric, magnetic
from .electric import CollapseRegimeError, ElectricImpurity
from .magnetic import MagneticImpurity
from .model import MediumParams, QuantumNumbers
from .oracle import (
    RadialGrid,
    matrix_bound_energy,
    matrix_magnetic_level,
    schrodinger_eigen,
    shoot_first_order,
)
from .susy import (
    PartnerPotentials,
    hermiticity_defect,
    isospectrality_check,
    ladder_matrices,
    resolvable_grid_points,
    susy_algebra_check,
)

__all__ = ["RunConfig", "main"]

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_VERIFY = 2
_EXIT_REFUSED = 3

# long option name -> value parser, for both flags and config-file keys
_OPTION_TYPES = {
    "format": str,
    "out": str,
    "config": str,
    "grid-points": int,
    "r-max": float,
    "tol": float,
    "seed": int,
    "jobs": int,
    "case": str,
    "coupling": float,
    "j": str,
    "j-max": float,
    "n-max": int,
    "n": int,
    "k": int,
    "g-min": float,
    "g-max": float,
    "steps": int,
    "n-levels": int,
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved global options shared by every subcommand."""

    format: str = "csv"
    out: str | None = None
    grid_points: int | None = None
    r_max: float | None = None
    tol: float | None = None
    seed: int = 12345
    jobs: int = 1


class _UsageError(Exception):
    pass


def _parse_j(text: str) -> float:
    """Accepts '1/2', '-3/2' or a plain decimal."""
    try:
        value = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"cannot parse j from {text!r}") from exc
    if round(2 * value) != 2 * value or int(round(2 * value)) % 2 == 0:
        raise _UsageError(f"j must be half-integer, got {text!r}")
    return value


def _fmt_j(j: float) -> str:
    two_j = int(round(2 * j))
    return f"{two_j}/2"


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _emit(header: list[str], rows: list[list], cfg: RunConfig) -> None:
    if cfg.out:
        fh = open(cfg.out, "w", newline="", encoding="utf-8")
        close = True
    else:
        fh = sys.stdout
        close = False
    try:
        if cfg.format == "json":
            for row in rows:
                fh.write(json.dumps(dict(zip(header, row)), allow_nan=False))
                fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt_cell(v) for v in row])
    finally:
        if close:
            fh.close()


def _use_color(stream) -> bool:
    if os.environ.get("NO_COLOR") is not None:
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _note(msg: str, *, ok: bool = True) -> None:
    if _use_color(sys.stderr):
        code = "32" if ok else "31"
        msg = f"\x1b[{code}m{msg}\x1b[0m"
    print(msg, file=sys.stderr)


def _load_config(path: str) -> dict:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise _UsageError(
                        f"{path}:{lineno}: expected key = value, got {raw.rstrip()!r}"
                    )
                key, _, val = line.partition("=")
                key = key.strip().replace("_", "-")
                if key not in _OPTION_TYPES:
                    raise _UsageError(f"{path}:{lineno}: unknown option {key!r}")
                try:
                    values[key] = _OPTION_TYPES[key](val.strip())
                except ValueError as exc:
                    raise _UsageError(
                        f"{path}:{lineno}: bad value for {key}: {val.strip()!r}"
                    ) from exc
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve(args: argparse.Namespace, config: dict, key: str, fallback):
    cli_value = getattr(args, key.replace("-", "_"), None)
    if cli_value is not None:
        return cli_value
    if key in config:
        return config[key]
    return fallback


def _map_rows(fn, items, jobs: int) -> list:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


# ---------------------------------------------------------------- spectrum


def _spectrum_rows(case, coupling, j_max, n_max, jobs):
    two_j_top = int(round(2 * j_max))
    rows = []
    if case == "electric":
        imp = ElectricImpurity(coupling)

        def one(args):
            j, n = args
            q = QuantumNumbers(int(round(2 * j)), n)
            eps = electric.bound_energy(imp, q).value
            aleph = electric.susy_eigenvalue(imp, q)
            return [case, coupling, _fmt_j(j), n, eps, aleph, "subcritical"]

        work = []
        for two_j in range(1, two_j_top + 1, 2):
            j = two_j / 2.0
            kind = electric.classify(imp, j).classification
            if kind == "subcritical":
                work.extend((j, n) for n in range(n_max + 1))
            else:
                rows.append([case, coupling, _fmt_j(j), None, None, None, kind])
        rows.extend(_map_rows(one, work, jobs))
    else:
        imp = MagneticImpurity.from_beta(coupling, MediumParams())

        def one(args):
            j, n = args
            ratio = j / (j + n)
            w_sq = imp.beta**2 * (1.0 - ratio * ratio)
            eps = magnetic.bound_energy_gapped(imp, j, n).value
            return [case, coupling, _fmt_j(j), n, eps, w_sq, "hermitian"]

        work = [
            (two_j / 2.0, n)
            for two_j in range(1, two_j_top + 1, 2)
            for n in range(1, n_max + 1)
        ]
        rows.extend(_map_rows(one, work, jobs))
    return rows


def _cmd_spectrum(args, config, cfg: RunConfig) -> int:
    case = _resolve(args, config, "case", None)
    if case not in ("electric", "magnetic"):
        raise _UsageError("spectrum requires --case electric|magnetic")
    coupling = _resolve(args, config, "coupling", None)
    if coupling is None or coupling <= 0:
        raise _UsageError("spectrum requires a positive --coupling")
    j_max = _resolve(args, config, "j-max", 2.5)
    n_max = _resolve(args, config, "n-max", 3)
    if n_max < (0 if case == "electric" else 1):
        raise _UsageError(f"n-max too small for case {case}")
    header = [
        "case",
        "g_or_beta",
        "j",
        "n",
        "epsilon_tilde",
        "aleph_sq_or_w_sq",
        "classification",
    ]
    rows = _spectrum_rows(case, coupling, j_max, n_max, cfg.jobs)
    _emit(header, rows, cfg)
    return _EXIT_OK


# ------------------------------------------------------------ critical-scan


def _cmd_critical_scan(args, config, cfg: RunConfig) -> int:
    j = _parse_j(str(_resolve(args, config, "j", "1/2")))
    g_min = _resolve(args, config, "g-min", 0.0)
    g_max = _resolve(args, config, "g-max", 1.0)
    steps = _resolve(args, config, "steps", 200)
    if not (g_max > g_min >= 0.0) or steps < 2:
        raise _UsageError("critical-scan needs g_max > g_min >= 0 and steps >= 2")
    n_pts = cfg.grid_points or 800
    r_max = cfg.r_max or 50.0
    grid = RadialGrid(1e-2, r_max, n_pts, "logarithmic")

    def one(i: int):
        g = g_min + (g_max - g_min) * i / steps
        if g <= 0.0:
            return None  # the free case has no impurity operator to scan
        imp = ElectricImpurity(g)
        data = electric.classify(imp, j)
        try:
            w = electric.superpotential(imp, QuantumNumbers(int(round(2 * j)), 0))
            defect = hermiticity_defect(w, grid)
        except ValueError:
            defect = None  # exactly critical: the superpotential degenerates
        return [g, _fmt_j(j), data.nu_sq, data.eta, defect]

    rows = [r for r in _map_rows(one, range(1, steps + 1), cfg.jobs) if r is not None]
    header = ["g", "j", "nu_sq", "eta_real", "hermiticity_defect"]
    _emit(header, rows, cfg)
    return _EXIT_OK


# -------------------------------------------------------------- susy-verify


def _cmd_susy_verify(args, config, cfg: RunConfig) -> int:
    case = _resolve(args, config, "case", None)
    if case not in ("electric", "magnetic"):
        raise _UsageError("susy-verify requires --case electric|magnetic")
    coupling = _resolve(args, config, "coupling", None)
    if coupling is None or coupling <= 0:
        raise _UsageError("susy-verify requires a positive --coupling")
    j = _parse_j(str(_resolve(args, config, "j", "1/2")))
    n = _resolve(args, config, "n", 0)
    k = _resolve(args, config, "k", 4)
    tol = cfg.tol or 1e-12
    n_pts = cfg.grid_points or 2000

    if case == "electric":
        imp = ElectricImpurity(coupling)
        data = electric.classify(imp, j)
        if data.classification != "subcritical":
            _note(
                f"refused: coupling g = {coupling} is {data.classification} for "
                f"j = {_fmt_j(j)} (nu_sq = {data.nu_sq:.6g}); no real spectrum "
                "to verify",
                ok=False,
            )
            return _EXIT_REFUSED
        q = QuantumNumbers(int(round(2 * j)), n)
        w = electric.superpotential(imp, q)
        nu = math.sqrt(data.nu_sq)
        eps = electric.bound_energy(imp, q).value
        r_max = cfg.r_max or 30.0 * (nu + k) / (coupling * eps)
    else:
        imp = MagneticImpurity.from_beta(coupling, MediumParams())
        w = magnetic.superpotential(imp, j)
        r_max = cfg.r_max or (40.0 + 2.0 * (j + k)) / imp.beta

    n_pts = max(n_pts, resolvable_grid_points(w, 1e-4, r_max))
    grid = RadialGrid(1e-4, r_max, n_pts, "logarithmic")
    a_op, a_dag = ladder_matrices(w, grid)
    algebra = susy_algebra_check(a_op, a_dag, tol)
    iso = isospectrality_check(a_op, a_dag, k)
    defect = hermiticity_defect(w, grid)

    checks = [
        ("q_squared_residual", algebra.q_squared_residual, tol),
        ("anticommutator_residual", algebra.anticommutator_residual, tol),
        ("commutator_residual", algebra.commutator_residual, tol),
        ("isospectral_mismatch", iso.max_rel_mismatch, 1e-10),
        ("zero_mode_eigenvalue", iso.zero_mode_eigenvalue, 1e-6),
        ("hermiticity_defect", defect, 1e-14),
    ]
    rows = []
    failed = 0
    for name, value, threshold in checks:
        ok = value <= threshold
        failed += 0 if ok else 1
        rows.append([name, value, threshold, "pass" if ok else "fail"])
    _emit(["check", "value", "threshold", "status"], rows, cfg)
    if failed:
        _note(f"{failed} of {len(checks)} factorization checks failed", ok=False)
        return _EXIT_VERIFY
    _note(f"all {len(checks)} factorization checks passed")
    return _EXIT_OK


# ----------------------------------------------------------- oracle-compare


def _cmd_oracle_compare(args, config, cfg: RunConfig) -> int:
    case = _resolve(args, config, "case", "electric")
    if case not in ("electric", "magnetic"):
        raise _UsageError("oracle-compare requires --case electric|magnetic")
    coupling = _resolve(args, config, "coupling", None)
    if coupling is None or coupling <= 0:
        raise _UsageError("oracle-compare requires a positive --coupling")
    j = _parse_j(str(_resolve(args, config, "j", "1/2")))
    n_levels = _resolve(args, config, "n-levels", 2)
    if n_levels < 1:
        raise _UsageError("n-levels must be at least 1")
    grid_points = cfg.grid_points or 2000

    # free square well on [1, 1+pi]: lowest level is exactly (pi/L)^2 = 1
    box_grid = RadialGrid(1.0, 1.0 + math.pi, grid_points, "uniform")
    box_pot = PartnerPotentials(v1=(0.0, 0.0, 0.0), v2=(0.0, 0.0, 0.0))
    box = schrodinger_eigen(box_pot, "v1", box_grid, k=1, refine=False)[0]
    box_row = [
        "box:self-test",
        1.0,
        box.eigenvalue,
        None,
        abs(box.eigenvalue - 1.0),
        None,
        True,
    ]

    rows = []
    if case == "electric":
        imp = ElectricImpurity(coupling)

        def one(n: int):
            label = f"electric:j={_fmt_j(j)}:n={n}"
            closed = electric.bound_energy(imp, QuantumNumbers(int(round(2 * j)), n))
            closed_v = closed.value
            matrix_v = shoot_v = err_m = err_s = None
            ok = True
            try:
                matrix_v = matrix_bound_energy(
                    imp, j, n, grid_points=grid_points
                ).value
                err_m = abs(matrix_v - closed_v) / closed_v
            except (ValueError, CollapseRegimeError):
                ok = False
            try:
                # clip at midpoints to the neighbouring levels so the
                # bracket holds exactly one sign change of the mismatch
                above = electric.bound_energy(
                    imp, QuantumNumbers(int(round(2 * j)), n + 1)
                ).value
                hi = 0.5 * (closed_v + above)
                if n > 0:
                    below = electric.bound_energy(
                        imp, QuantumNumbers(int(round(2 * j)), n - 1)
                    ).value
                    lo = 0.5 * (below + closed_v)
                else:
                    lo = max(closed_v - 0.02, 1e-6)
                shoot_v = shoot_first_order(imp, j, (lo, hi)).value
                err_s = abs(shoot_v - closed_v) / closed_v
            except (ValueError, CollapseRegimeError):
                ok = False
            return [label, closed_v, matrix_v, shoot_v, err_m, err_s, ok]

        rows = _map_rows(one, range(n_levels), cfg.jobs)
    else:
        imp = MagneticImpurity.from_beta(coupling, MediumParams())

        def one(n: int):
            label = f"magnetic:j={_fmt_j(j)}:n={n}"
            ratio = j / (j + n)
            closed_v = imp.beta**2 * (1.0 - ratio * ratio)
            matrix_v = err_m = None
            ok = True
            try:
                matrix_v = matrix_magnetic_level(imp, j, n, grid_points=grid_points)
                err_m = abs(matrix_v - closed_v) / closed_v
            except ValueError:
                ok = False
            return [label, closed_v, matrix_v, None, err_m, None, ok]

        rows = _map_rows(one, range(1, n_levels + 1), cfg.jobs)

    rows = [box_row] + list(rows)
    header = [
        "level",
        "closed_form",
        "matrix_oracle",
        "shooting_oracle",
        "rel_err_matrix",
        "rel_err_shooting",
        "converged",
    ]
    _emit(header, rows, cfg)
    return _EXIT_OK


# ------------------------------------------------------------------ plumbing


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("csv", "json"), default=None)
    shared.add_argument("--out", default=None, metavar="PATH")
    shared.add_argument("--config", default=None, metavar="PATH")
    shared.add_argument("--grid-points", type=int, default=None, metavar="N")
    shared.add_argument("--r-max", type=float, default=None, metavar="R")
    shared.add_argument("--tol", type=float, default=None, metavar="T")
    shared.add_argument("--seed", type=int, default=None, metavar="S")
    shared.add_argument("--jobs", type=int, default=None, metavar="J")

    parser = argparse.ArgumentParser(
        prog="monospec",
        description="bound-state spectra of planar Dirac quasiparticles "
        "around pointlike impurities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[shared], help="tabulate bound levels")
    p.add_argument("--case", choices=("electric", "magnetic"), default=None)
    p.add_argument("--coupling", type=float, default=None)
    p.add_argument("--j-max", type=float, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser(
        "critical-scan", parents=[shared], help="sweep the collapse boundary"
    )
    p.add_argument("--j", default=None)
    p.add_argument("--g-min", type=float, default=None)
    p.add_argument("--g-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.set_defaults(handler=_cmd_critical_scan)

    p = sub.add_parser(
        "susy-verify", parents=[shared], help="factorization self-checks"
    )
    p.add_argument("--case", choices=("electric", "magnetic"), default=None)
    p.add_argument("--coupling", type=float, default=None)
    p.add_argument("--j", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(handler=_cmd_susy_verify)

    p = sub.add_parser(
        "oracle-compare", parents=[shared], help="closed form vs numerics"
    )
    p.add_argument("--case", choices=("electric", "magnetic"), default=None)
    p.add_argument("--coupling", type=float, default=None)
    p.add_argument("--j", default=None)
    p.add_argument("--n-levels", type=int, default=None)
    p.set_defaults(handler=_cmd_oracle_compare)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_OK if exc.code in (0, None) else _EXIT_USAGE

    try:
        config = _load_config(args.config) if args.config else {}
        cfg = RunConfig(
            format=_resolve(args, config, "format", "csv"),
            out=_resolve(args, config, "out", None),
            grid_points=_resolve(args, config, "grid-points", None),
            r_max=_resolve(args, config, "r-max", None),
            tol=_resolve(args, config, "tol", None),
            seed=_resolve(args, config, "seed", 12345),
            jobs=_resolve(args, config, "jobs", 1),
        )
        if cfg.format not in ("csv", "json"):
            raise _UsageError(f"unknown format {cfg.format!r}")
        if cfg.jobs < 1:
            raise _UsageError("jobs must be at least 1")
        return args.handler(args, config, cfg)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except CollapseRegimeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return _EXIT_REFUSED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
