"""Growth series via Steinberg's formula, growth rates, and the convergence sweeps."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .catalog import enumerate_finite_subsets, growth_poly_of_finite
from .coxeter import (
    INF,
    ContractibleEdgeSpec,
    CoxeterMatrix,
    GrowthType,
    Label,
    classify,
    deform,
    edge_family,
)
from .errors import InconsistencyError, InputError
from .poly import (
    ONE,
    CyclotomicProduct,
    IntPolynomial,
    RationalFunction,
    series_coefficients,
)
from .sturm import DEFAULT_WIDTH, RootBracket, format_sig, refine, sturm_smallest_root

DEFAULT_L_LIST = (6, 12, 24, 48, 96)
DEFAULT_RHO = 0.9
GRID_RADII = 16
GRID_ANGLES = 64


@functools.lru_cache(maxsize=512)
def _steinberg_parts(M: CoxeterMatrix) -> tuple[RationalFunction, IntPolynomial]:
    """Reduced F together with the unreduced numerator over the cyclotomic LCM."""
    family = enumerate_finite_subsets(M)
    common = CyclotomicProduct()
    for member in family:
        common = common.lcm(member.factors)
    numerator = IntPolynomial()
    for member in family:
        cofactor = common.quotient(member.factors).expand()
        term = cofactor.shift(member.degree)
        numerator = numerator - term if len(member.subset) % 2 else numerator + term
    return RationalFunction(numerator, common.expand()), numerator


def steinberg_F(M: CoxeterMatrix) -> RationalFunction:
    """F = 1/f = sum over finite parabolic T of (-1)^|T| z^{d_T} / f_T(z), reduced."""
    if classify(M) is GrowthType.ELLIPTIC:
        raise InputError("the group is finite; use growth_series for elliptic systems")
    return _steinberg_parts(M)[0]


@dataclass(frozen=True)
class GrowthSeries:
    source: CoxeterMatrix
    polynomial: Optional[IntPolynomial] = None
    rational: Optional[RationalFunction] = None

    @property
    def finite(self) -> bool:
        return self.polynomial is not None

    def as_rational(self) -> RationalFunction:
        return RationalFunction(self.polynomial) if self.finite else self.rational

    def __str__(self):
        return str(self.polynomial if self.finite else self.rational)


def growth_series(M: CoxeterMatrix) -> GrowthSeries:
    if classify(M) is GrowthType.ELLIPTIC:
        return GrowthSeries(M, polynomial=growth_poly_of_finite(M, range(M.rank)))
    return GrowthSeries(M, rational=steinberg_F(M).reciprocal())


def coefficients(M: CoxeterMatrix, m_max: int) -> list[int]:
    """Number of elements of each word length 0..m_max."""
    if m_max < 0:
        raise InputError("m_max must be non-negative")
    series = growth_series(M)
    if series.finite:
        return [series.polynomial[k] for k in range(m_max + 1)]
    return series_coefficients(series.rational, m_max)


@dataclass(frozen=True)
class GrowthRateResult:
    growth_type: GrowthType
    root_bracket: Optional[RootBracket] = None  # bracket on 1/omega, non-affine only
    numerator: Optional[IntPolynomial] = None

    @property
    def exactly_one(self) -> bool:
        return self.root_bracket is None

    @property
    def rate_bracket(self) -> RootBracket:
        if self.exactly_one:
            return RootBracket(Fraction(1), Fraction(1))
        return self.root_bracket.inverted()

    @property
    def rate(self) -> float:
        return float(self.rate_bracket.midpoint)

    @property
    def rate_decimal(self) -> str:
        return "1" if self.exactly_one else self.rate_bracket.refined

    def __str__(self):
        if self.exactly_one:
            return f"{self.growth_type}: omega = 1"
        return f"{self.growth_type}: omega in {self.rate_bracket}"


def growth_rate(M: CoxeterMatrix, width: Union[int, Fraction] = DEFAULT_WIDTH) -> GrowthRateResult:
    """Growth rate as the reciprocal of the smallest zero of the reduced F in (0, 1)."""
    gtype = classify(M)
    if gtype is GrowthType.ELLIPTIC:
        return GrowthRateResult(gtype)
    F = steinberg_F(M)
    root = sturm_smallest_root(F.numerator, (0, 1), width)
    if gtype is GrowthType.AFFINE:
        if root is None or not (root.exact and root.low == 1):
            raise InconsistencyError(f"affine system but F has smallest root {root} in (0, 1]")
        return GrowthRateResult(gtype, numerator=F.numerator)
    if root is None or root.high >= 1:
        raise InconsistencyError(f"non-affine system but F has no zero inside (0, 1): {root}")
    # tighten so the bracket on omega is no wider than the one on 1/omega
    root = refine(F.numerator, root, Fraction(width) * root.low**2)
    return GrowthRateResult(gtype, root, F.numerator)


def rate_difference(
    a: GrowthRateResult, b: GrowthRateResult, rel: float = 1e-3, floor: Fraction = Fraction(1, 10**200)
) -> tuple[Fraction, Fraction]:
    """Rational interval holding omega_b - omega_a.

    Brackets are refined until the interval excludes 0 and is relatively
    narrow, or until ``floor`` is reached (then the two rates are treated as equal).
    """
    ra, rb = a.root_bracket, b.root_bracket
    w = Fraction(1, 10**12)
    while True:
        if ra is not None:
            ra = refine(a.numerator, ra, w)
        if rb is not None:
            rb = refine(b.numerator, rb, w)
        wa = ra.inverted() if ra is not None else RootBracket(Fraction(1), Fraction(1))
        wb = rb.inverted() if rb is not None else RootBracket(Fraction(1), Fraction(1))
        lo, hi = wb.low - wa.high, wb.high - wa.low
        if lo > 0 or hi < 0:
            if hi - lo <= Fraction(rel) * min(abs(lo), abs(hi)):
                return lo, hi
        elif lo == hi == 0:
            return lo, hi
        if w < floor:
            return lo, hi
        w /= 2**32


def eval_F(M: CoxeterMatrix, z: complex) -> complex:
    """F = 1/f at a point of the open unit disk (double precision)."""
    z = complex(z)
    if abs(z) >= 1:
        raise InputError(f"|z| = {abs(z)} is outside the open unit disk")
    return _F_any(M).eval_complex(z)


def _F_any(M: CoxeterMatrix) -> RationalFunction:
    series = growth_series(M)
    if series.finite:
        return RationalFunction(ONE, series.polynomial)
    return series.rational.reciprocal()


def _eval_on_grid(f: RationalFunction, z: np.ndarray) -> np.ndarray:
    num = np.polyval([float(c) for c in reversed(f.numerator.coeffs)], z)
    den = np.polyval([float(c) for c in reversed(f.denominator.coeffs)], z)
    return num / den


def disk_grid(rho: float = DEFAULT_RHO, radii: int = GRID_RADII, angles: int = GRID_ANGLES) -> np.ndarray:
    """Deterministic sample of the closed disk of radius rho (centre included)."""
    r = rho * np.arange(1, radii + 1) / radii
    t = 2 * np.pi * np.arange(angles) / angles
    ring = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    return np.concatenate([[0j], ring])


@dataclass(frozen=True)
class SweepRow:
    l: Label
    rate: Optional[GrowthRateResult] = None
    sup_dev: Optional[float] = None


def normal_convergence_sweep(
    M: CoxeterMatrix,
    rho: float = DEFAULT_RHO,
    l_list: Sequence[int] = DEFAULT_L_LIST,
    radii: int = GRID_RADII,
    angles: int = GRID_ANGLES,
) -> list[SweepRow]:
    """sup over a disk grid of |F_{M(l)} - F_M| for each l."""
    if not M.has_infinity():
        raise InputError("matrix has no inf entries; the deformation is constant")
    if not 0 < rho < 1:
        raise InputError(f"rho must lie in (0, 1), got {rho}")
    if any(type(l) is not int or l < 6 for l in l_list):
        raise InputError("deformation parameters must be integers >= 6")
    z = disk_grid(rho, radii, angles)
    limit = _eval_on_grid(_F_any(M), z)
    rows = []
    for l in l_list:
        values = _eval_on_grid(_F_any(deform(M, l)), z)
        rows.append(SweepRow(l, sup_dev=float(np.max(np.abs(values - limit)))))
    return rows


def rate_convergence_sweep(M: CoxeterMatrix, l_list: Sequence[int] = DEFAULT_L_LIST) -> list[SweepRow]:
    """growth_rate(M(l)) for each l, followed by the limit row l = inf."""
    rows = [SweepRow(l, rate=growth_rate(deform(M, l))) for l in l_list]
    rows.append(SweepRow(INF, rate=growth_rate(M)))
    return rows


def edge_rate_sweep(
    M: CoxeterMatrix, spec: ContractibleEdgeSpec, m_list: Sequence[int]
) -> list[SweepRow]:
    """growth rates along a contractible-edge family, ending with the contracted limit."""
    rows = [SweepRow(m, rate=growth_rate(edge_family(M, spec, m))) for m in m_list]
    rows.append(SweepRow(INF, rate=growth_rate(edge_family(M, spec, INF))))
    return rows


def ratio_estimate(M: CoxeterMatrix, m: int) -> float:
    """a(m+1)/a(m) from the exact series; a crude independent estimate of omega."""
    a = coefficients(M, m + 1)
    return a[m + 1] / a[m] if a[m] else math.nan


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    with_dev = any(r.sup_dev is not None for r in rows)
    header = ["l", "rate_low", "rate_high", "rate_decimal"] + (["sup_dev"] if with_dev else [])
    lines = [",".join(header)]
    for r in rows:
        if r.rate is not None:
            br = r.rate.rate_bracket
            cells = [str(r.l), str(br.low), str(br.high), r.rate.rate_decimal]
        else:
            cells = [str(r.l), "", "", ""]
        if with_dev:
            cells.append("" if r.sup_dev is None else format_sig(r.sup_dev))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
