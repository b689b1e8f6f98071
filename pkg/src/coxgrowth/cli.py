"""Command-line entry point: ``coxgrowth <command> ...``.

Exit codes: 0 ok, 2 bad input, 3 cap exceeded, 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from . import __version__
from .arith import DEFAULT_TOL, REPORT_HEADER, classify_algebraic, pisot_limit_experiment
from .catalog import catalog_table, decompose
from .coxeter import (
    ContractibleEdgeSpec,
    CoxeterMatrix,
    classify,
    deform,
    gram_spectrum,
    parse_label,
    parse_matrix,
    polygon_matrix,
)
from .errors import CoxGrowthError, InputError
from .oracle import MAX_WORD_LENGTH, ball, marked_distance_bound, oracle_coefficients
from .steinberg import (
    DEFAULT_L_LIST,
    DEFAULT_RHO,
    coefficients,
    edge_rate_sweep,
    growth_rate,
    growth_series,
    normal_convergence_sweep,
    rate_convergence_sweep,
    sweep_csv,
)
from .sturm import format_sig

MAX_M = 2000


@dataclass
class ExperimentConfig:
    command: str
    l_list: tuple = DEFAULT_L_LIST
    rho: float = DEFAULT_RHO
    R_max: int = 6
    m_max: int = 10
    tol: float = DEFAULT_TOL
    output: Optional[str] = None
    format: str = "text"

    OVERRIDABLE = ("l_list", "rho", "R_max", "m_max", "tol")

    def with_overrides(self, overrides: dict) -> ExperimentConfig:
        unknown = sorted(set(overrides) - set(self.OVERRIDABLE))
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}")
        if "l_list" in overrides:
            overrides = dict(overrides, l_list=tuple(overrides["l_list"]))
        return replace(self, **overrides)

    def validate(self) -> None:
        if not 0 < self.rho < 1:
            raise InputError(f"rho must lie in (0, 1), got {self.rho}")
        if not 0 < self.tol < 0.5:
            raise InputError(f"tol must lie in (0, 0.5), got {self.tol}")
        if type(self.m_max) is not int or not 0 <= self.m_max <= MAX_M:
            raise InputError(f"m_max must be an integer in [0, {MAX_M}]")
        if type(self.R_max) is not int or not 1 <= self.R_max <= MAX_WORD_LENGTH:
            raise InputError(f"R_max must be an integer in [1, {MAX_WORD_LENGTH}]")
        if any(type(l) is not int or l < 2 for l in self.l_list):
            raise InputError("l_list entries must be integers >= 2")


# -- argument helpers ---------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _label_list(text: str) -> tuple:
    return tuple(parse_label(t.strip()) for t in text.split(","))


def _read(path: str) -> CoxeterMatrix:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text)


def _matrix(args, path_attr="path", polygon_attr="polygon", rank2_attr="rank2") -> CoxeterMatrix:
    path, polygon, rank2 = (getattr(args, a, None) for a in (path_attr, polygon_attr, rank2_attr))
    given = [x is not None for x in (path, polygon, rank2)]
    if sum(given) != 1:
        raise InputError("give exactly one of a matrix path, --polygon or --rank2")
    if path is not None:
        return _read(path)
    if polygon is not None:
        return polygon_matrix(_label_list(polygon))
    return CoxeterMatrix.dihedral(parse_label(rank2))


def _add_matrix_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="matrix file (text or JSON format)")
    p.add_argument("--polygon", help="polygon angles, e.g. 2,3,7 or 2,3,inf")
    p.add_argument("--rank2", help="dihedral label m (integer or inf)")


def _fmt_rate(res) -> list[str]:
    if res.exactly_one:
        return ["growth rate: 1 (exact)"]
    br = res.rate_bracket
    return [f"growth rate: {res.rate_decimal}", f"bracket: [{br.low}, {br.high}]"]


def _coeff_csv(a: Sequence[int]) -> str:
    lines, s = ["m,a,s"], 0
    for m, x in enumerate(a):
        s += x
        lines.append(f"{m},{x},{s}")
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------


def cmd_classify(args, cfg: ExperimentConfig) -> str:
    M = _matrix(args)
    gtype = classify(M)
    spectrum = " ".join(format_sig(float(x)) for x in gram_spectrum(M))
    return f"{gtype}\nspectrum: {spectrum}\n"


def cmd_growth(args, cfg: ExperimentConfig) -> str:
    M = _matrix(args)
    series = growth_series(M)
    out = []
    if series.finite:
        parts = decompose(M, range(M.rank)) or []
        types = " x ".join(str(lab) for _, lab in parts)
        brackets = " * ".join("[" + ";".join(map(str, lab.bracket)) + "]" for _, lab in parts)
        out.append(f"type: {types}")
        out.append(f"polynomial: {brackets} = {series.polynomial}")
        out.append(f"order: {series.polynomial.eval_rational(1)}")
    else:
        out.append(f"series: {series.rational}")
    if args.rate:
        out.extend(_fmt_rate(growth_rate(M)))
    if args.coeffs:
        return "\n".join(out) + "\n" + _coeff_csv(coefficients(M, cfg.m_max))
    return "\n".join(out) + "\n"


def cmd_sweep(args, cfg: ExperimentConfig) -> str:
    kind = args.kind
    if kind == "edge":
        if args.edge is None or args.incident is None:
            raise InputError("edge sweep needs --edge i,j and --incident k1,k2,n,l1,l2")
        M = _matrix(args)
        i, j = _int_list(args.edge)
        if not (1 <= i <= M.rank and 1 <= j <= M.rank):
            raise InputError(f"edge ({i},{j}) out of range for rank {M.rank}")
        labels = _label_list(args.incident)
        if len(labels) != 5:
            raise InputError("--incident needs five labels")
        spec = ContractibleEdgeSpec((i - 1, j - 1), labels)
        m_list = _int_list(args.m_list) if args.m_list else cfg.l_list
        return sweep_csv(edge_rate_sweep(M, spec, m_list))
    if kind == "polygon" and args.polygon is None:
        raise InputError("polygon sweep needs --polygon with at least one inf angle")
    M = _matrix(args)
    if kind == "normal":
        return sweep_csv(normal_convergence_sweep(M, cfg.rho, cfg.l_list))
    if not M.has_infinity():
        raise InputError("rate sweep needs a matrix with an inf entry")
    return sweep_csv(rate_convergence_sweep(M, cfg.l_list))


def cmd_oracle(args, cfg: ExperimentConfig) -> str:
    M = _matrix(args)
    modes = [x is not None for x in (args.ball, args.coeffs, args.distance)]
    if sum(modes) != 1:
        raise InputError("give exactly one of --ball, --coeffs, --distance")
    if args.ball is not None:
        b = ball(M, args.ball)
        if cfg.format == "dot":
            return b.to_dot()
        counts = ",".join(map(str, b.layer_counts()))
        return f"radius: {args.ball}\nvertices: {len(b)}\nedges: {len(b.edges())}\nlayers: {counts}\n"
    if args.coeffs is not None:
        return _coeff_csv(oracle_coefficients(M, args.coeffs))
    if args.compare is None and args.compare_rank2 is None:
        raise InputError("--distance needs --compare PATH or --compare-rank2 m")
    M2 = _read(args.compare) if args.compare else CoxeterMatrix.dihedral(parse_label(args.compare_rank2))
    bound = marked_distance_bound(M, M2, args.distance)
    if cfg.format == "json":
        return json.dumps(
            {
                "agree_radius": bound.agree_radius,
                "first_disagreement": bound.first_disagreement,
                "exact": bound.exact,
                "v": bound.v_exact,
                "v_lower": bound.v_lower,
                "d_lower": format_sig(bound.d_lower),
                "d_upper": format_sig(bound.d_upper),
            },
            indent=2,
        ) + "\n"
    return str(bound) + "\n"


def cmd_salem(args, cfg: ExperimentConfig) -> str:
    M = _matrix(args)
    if args.limit:
        if not M.has_infinity():
            raise InputError("--limit needs a matrix with inf entries (the family limit)")
        members = [deform(M, l) for l in cfg.l_list]
        labels = [str(l) for l in cfg.l_list] + ["inf"]
        report = pisot_limit_experiment(members, M, labels, cfg.tol)
        if cfg.format == "json":
            return json.dumps(report.to_json(), indent=2) + "\n"
        return report.to_csv()
    prof = classify_algebraic(M, cfg.tol)
    if cfg.format == "json":
        return json.dumps(prof.to_json(), indent=2) + "\n"
    lines = [
        REPORT_HEADER,
        f"rate: {prof.rate_decimal}",
        f"polynomial: {prof.polynomial}",
        f"cyclotomic factors removed: {','.join(map(str, prof.cyclotomic_factors)) or 'none'}",
        f"tolerance: {prof.tolerance:g}",
        f"max unit circle deviation: {prof.max_unit_circle_deviation:.3g}",
        f"classification: {prof.classification}",
    ]
    return "\n".join(lines) + "\n"


def cmd_catalog(args, cfg: ExperimentConfig) -> str:
    return json.dumps(catalog_table(args.max_rank, args.max_dihedral), indent=2) + "\n"


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxgrowth", description="Growth series and growth rates of Coxeter systems.")
    parser.add_argument("--version", action="version", version=f"coxgrowth {__version__}")
    parser.add_argument("-o", "--output", help="write the result to this file instead of stdout")
    parser.add_argument("--format", choices=("text", "csv", "json", "dot"), default="text")
    parser.add_argument("--config", help="JSON file of parameter overrides (l_list, rho, R_max, m_max, tol)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Elliptic / Affine / NonAffine and the Gram spectrum")
    _add_matrix_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("growth", help="growth series, coefficients and growth rate")
    _add_matrix_args(p)
    p.add_argument("--rate", action="store_true", help="also compute the growth rate")
    p.add_argument("--coeffs", action="store_true", help="append the coefficient CSV (m,a,s)")
    p.add_argument("--m-max", type=int, dest="m_max")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("sweep", help="convergence sweeps as CSV")
    p.add_argument("kind", choices=("rate", "normal", "polygon", "edge"))
    _add_matrix_args(p)
    p.add_argument("--l-list", dest="l_list", help="comma-separated deformation labels")
    p.add_argument("--rho", type=float)
    p.add_argument("--edge", help="edge generators i,j (1-based)")
    p.add_argument("--incident", help="edge type k1,k2,n,l1,l2")
    p.add_argument("--m-list", dest="m_list", help="comma-separated edge labels")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="brute-force Cayley ball computations")
    _add_matrix_args(p)
    p.add_argument("--ball", type=int, metavar="R")
    p.add_argument("--coeffs", type=int, metavar="M")
    p.add_argument("--distance", type=int, metavar="R_MAX")
    p.add_argument("--compare", help="second matrix file for --distance")
    p.add_argument("--compare-rank2", dest="compare_rank2", help="dihedral label for the second matrix")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("salem", help="numerical Salem / Pisot classification")
    _add_matrix_args(p)
    p.add_argument("--tol", type=float)
    p.add_argument("--limit", action="store_true", help="classify the family deform(M, l) and its limit M")
    p.add_argument("--l-list", dest="l_list")
    p.set_defaults(func=cmd_salem)

    p = sub.add_parser("catalog", help="finite-type catalog")
    p.add_argument("action", choices=("dump",))
    p.add_argument("--max-rank", type=int, default=8, dest="max_rank")
    p.add_argument("--max-dihedral", type=int, default=8, dest="max_dihedral")
    p.set_defaults(func=cmd_catalog)
    return parser


def _config(args) -> ExperimentConfig:
    cfg = ExperimentConfig(command=args.command, output=args.output, format=args.format)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                overrides = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot load config {args.config}: {exc}") from None
        if not isinstance(overrides, dict):
            raise InputError("config file must hold a JSON object")
        cfg = cfg.with_overrides(overrides)
    flags = {}
    if getattr(args, "l_list", None):
        flags["l_list"] = _int_list(args.l_list)
    for name in ("rho", "tol", "m_max"):
        if getattr(args, name, None) is not None:
            flags[name] = getattr(args, name)
    if getattr(args, "distance", None) is not None:
        flags["R_max"] = args.distance
    cfg = cfg.with_overrides(flags)
    cfg.validate()
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        text = args.func(args, cfg)
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except CoxGrowthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
