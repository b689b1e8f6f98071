"""Numerical Salem / Pisot classification of growth rates.

Verdicts are floating-point evidence, not certificates.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .coxeter import CoxeterMatrix, GrowthType, classify
from .errors import InputError, NonConvergence
from .poly import IntPolynomial, cyclotomic, divexact, divides, euler_phi, squarefree_part
from .steinberg import GrowthRateResult, growth_rate

DEFAULT_TOL = 1e-8
RESIDUAL_BOUND = 1e-8
REPORT_HEADER = "# numerical classification (double-precision root evidence, not a proof)"


def _residual_scale(p: IntPolynomial, r: complex) -> float:
    a = abs(r)
    return sum(abs(c) * a**k for k, c in enumerate(p.coeffs))


def _by_modulus(roots):
    return sorted(roots, key=lambda r: (-abs(r), cmath.phase(r)))


def all_roots(p: IntPolynomial, max_iter: int = 500, residual_bound: float = RESIDUAL_BOUND) -> list[complex]:
    """All complex roots with multiplicity by Aberth-Ehrlich simultaneous iteration.

    Iterates until the corrections reach machine precision, then requires
    |p(r)| <= residual_bound * sum |c_k| |r|^k for every root.
    """
    if p.degree < 1:
        raise InputError("all_roots needs a polynomial of degree >= 1")
    # exact zeros first; the relative residual is meaningless at r = 0
    k = next(i for i, c in enumerate(p.coeffs) if c)
    if k:
        zeros = [0j] * k
        rest = IntPolynomial(p.coeffs[k:])
        return _by_modulus((all_roots(rest, max_iter, residual_bound) if rest.degree >= 1 else []) + zeros)
    n = p.degree
    lead = p.lead
    c = np.array([x / lead for x in reversed(p.coeffs)], dtype=complex)  # descending, monic
    dc = np.polyder(c)
    # Fujiwara-type bound for the initial circle
    radius = 2 * max(abs(c[j]) ** (1.0 / j) for j in range(1, n + 1))
    radius = max(radius, 1e-3)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for _ in range(max_iter):
        pv = np.polyval(c, z)
        dv = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if np.all(np.abs(corr) <= 1e-15 * np.maximum(np.abs(z), 1.0)):
            break
    roots = [complex(r) for r in z]
    bad = [r for r in roots if abs(p.eval_complex(r)) > residual_bound * _residual_scale(p, r)]
    if bad:
        raise NonConvergence(f"{len(bad)} roots failed the residual check", roots)
    return _by_modulus(roots)


def strip_cyclotomic(p: IntPolynomial) -> tuple[IntPolynomial, list[int]]:
    """Divide out every cyclotomic factor Phi_d (d <= 2 deg + 2) by exact trial division."""
    stripped = []
    bound = 2 * max(p.degree, 1) + 2
    for d in range(1, bound + 1):
        if euler_phi(d) > p.degree:
            continue
        phi = cyclotomic(d)
        while p.degree >= phi.degree and divides(phi, p):
            p = divexact(p, phi)
            stripped.append(d)
    return p, stripped


@dataclass(frozen=True)
class AlgebraicProfile:
    candidate: float
    rate_decimal: str
    polynomial: IntPolynomial
    cyclotomic_factors: tuple[int, ...]
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    classification: str  # Salem | Pisot | Neither | Undetermined
    tolerance: float
    max_unit_circle_deviation: float

    def to_json(self) -> dict:
        return {
            "rate": self.rate_decimal,
            "classification": self.classification,
            "tolerance": self.tolerance,
            "polynomial": self.polynomial.to_json(),
            "cyclotomic_factors": list(self.cyclotomic_factors),
            "max_unit_circle_deviation": self.max_unit_circle_deviation,
            "roots": [[r.real, r.imag] for r in self.roots],
            "residuals": list(self.residuals),
        }


def classify_algebraic(M: CoxeterMatrix, tol: float = DEFAULT_TOL, rate: Optional[GrowthRateResult] = None) -> AlgebraicProfile:
    """Label the growth rate Salem, Pisot, Neither or Undetermined from the conjugate moduli."""
    if classify(M) is not GrowthType.NON_AFFINE:
        raise InputError("Salem/Pisot analysis needs a non-affine system (growth rate > 1)")
    rate = rate or growth_rate(M)
    omega = rate.rate
    # omega is a root of the reversed numerator of F
    poly = squarefree_part(rate.numerator.reversed()).primitive()
    poly, cyclo = strip_cyclotomic(poly)
    roots = all_roots(poly)
    residuals = tuple(abs(poly.eval_complex(r)) / _residual_scale(poly, r) for r in roots)

    if not any(abs(r - omega) <= 1e-8 * omega for r in roots):
        raise NonConvergence(f"growth rate {omega} not found among the computed roots", roots)
    big = [r for r in roots if abs(r) > 1 + tol]
    small = [r for r in roots if abs(r) < 1 - tol]
    circle = [r for r in roots if abs(abs(r) - 1) <= tol]
    max_dev = max((abs(abs(r) - 1) for r in circle), default=0.0)

    dominant = len(big) == 1 and abs(big[0] - omega) <= 1e-8 * omega
    if dominant and not circle:
        verdict = "Pisot"
    elif (
        dominant
        and len(small) == 1
        and abs(small[0].imag) <= tol
        and abs(small[0].real * omega - 1) <= tol
    ):
        verdict = "Salem"
    elif circle:
        verdict = "Undetermined"
    else:
        verdict = "Neither"
    return AlgebraicProfile(
        candidate=omega,
        rate_decimal=rate.rate_decimal,
        polynomial=poly,
        cyclotomic_factors=tuple(cyclo),
        roots=tuple(roots),
        residuals=residuals,
        classification=verdict,
        tolerance=tol,
        max_unit_circle_deviation=max_dev,
    )


@dataclass(frozen=True)
class LimitRow:
    index: int
    label: str
    profile: AlgebraicProfile
    is_limit: bool = False


@dataclass(frozen=True)
class LimitReport:
    rows: tuple[LimitRow, ...]
    transition_index: Optional[int]
    tolerance: float = DEFAULT_TOL

    @property
    def limit(self) -> LimitRow:
        return self.rows[-1]

    def to_csv(self) -> str:
        lines = [REPORT_HEADER, "index,label_params,rate,classification,max_unit_circle_deviation"]
        for r in self.rows:
            idx = "inf" if r.is_limit else str(r.index)
            lines.append(
                f"{idx},{r.label},{r.profile.rate_decimal},{r.profile.classification},"
                f"{r.profile.max_unit_circle_deviation:.3g}"
            )
        lines.append(f"# transition_index,{'' if self.transition_index is None else self.transition_index}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "note": REPORT_HEADER.lstrip("# "),
            "transition_index": self.transition_index,
            "rows": [
                {"index": r.index, "label_params": r.label, "limit": r.is_limit, **r.profile.to_json()}
                for r in self.rows
            ],
        }


def pisot_limit_experiment(
    members: Sequence[CoxeterMatrix],
    limit: CoxeterMatrix,
    labels: Optional[Sequence[str]] = None,
    tol: float = DEFAULT_TOL,
) -> LimitReport:
    """Classify each member of a degenerating family and its limit.

    ``transition_index`` is the first row classified Pisot right after a Salem row
    (the limit row has index ``len(members)``).
    """
    if not members:
        raise InputError("empty family")
    labels = list(labels) if labels is not None else [str(k) for k in range(len(members))] + ["limit"]
    rows = [LimitRow(k, labels[k], classify_algebraic(M, tol)) for k, M in enumerate(members)]
    rows.append(LimitRow(len(members), labels[len(members)], classify_algebraic(limit, tol), is_limit=True))
    transition = None
    for k in range(1, len(rows)):
        if rows[k].profile.classification == "Pisot" and rows[k - 1].profile.classification == "Salem":
            transition = k
            break
    return LimitReport(tuple(rows), transition, tol)
