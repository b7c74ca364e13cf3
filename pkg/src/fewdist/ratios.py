"""Ratio invariants of distance and inner-product class systems.

Each family maps the class values of an s-distance structure to a tuple of
real numbers that the integrality theorems force to be bounded integers once
the point set is large enough. The analyze entry point profiles a point set,
picks the applicable settings, and reports integrality per family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .bounds import TheoremContext, theorem_context
from .errors import (
    DegenerateValuesError,
    InputError,
    NotAntipodalError,
    NotOnSphereError,
    ParameterError,
)
from .pointset import (
    DEFAULT_TOL,
    DEFAULT_TOL_RANK,
    AntipodalStructure,
    PointSet,
    affine_dimension,
    antipodal_structure,
    distance_profile,
    inner_product_profile,
    linear_dimension,
    on_unit_sphere,
)

DEFAULT_TOL_INT = 1e-6


def _check_strictly_increasing(values, what: str) -> list[float]:
    vals = [float(v) for v in values]
    if len(vals) < 1:
        raise ParameterError(f"{what}: need at least one value")
    for a, b in zip(vals, vals[1:]):
        if (b - a) <= 1e-12 * max(1.0, abs(a), abs(b)):
            raise DegenerateValuesError(f"{what}: values {a!r} and {b!r} coincide within 1e-12")
    return vals


def euclidean_ratios(squared_distances) -> list[float]:
    """k_i = prod_{j != i} a_j / (a_j - a_i) over squared distances a_1 < ... < a_s."""
    vals = _check_strictly_increasing(squared_distances, "squared distances")
    if vals[0] <= 0.0:
        raise ParameterError("squared distances must be positive")
    out = []
    for i, ai in enumerate(vals):
        k = 1.0
        for j, aj in enumerate(vals):
            if j != i:
                k *= aj / (aj - ai)
        out.append(k)
    return out


def spherical_ratios(inner_products) -> list[float]:
    """k_i = prod_{j != i} (1 - b_j) / (b_i - b_j) over inner products b_1 < ... < b_s < 1."""
    vals = _check_strictly_increasing(inner_products, "inner products")
    if vals[-1] >= 1.0:
        raise ParameterError("inner products must be below 1")
    out = []
    for i, bi in enumerate(vals):
        k = 1.0
        for j, bj in enumerate(vals):
            if j != i:
                k *= (1.0 - bj) / (bi - bj)
        out.append(k)
    return out


def antipodal_odd_ratios(beta_abs, variant: int) -> list[float]:
    """Ratio family over the positive |beta| classes of an antipodal set, s odd.

    variant 1: k_i = prod_{j != i} (1 - b_j^2) / (b_i^2 - b_j^2)
    variant 2: the same product with an extra 1 / b_i factor.
    """
    if variant not in (1, 2):
        raise ParameterError(f"variant must be 1 or 2, got {variant}")
    vals = _check_strictly_increasing(beta_abs, "|beta| values")
    if vals[0] <= 0.0 or vals[-1] >= 1.0:
        raise ParameterError("odd-case |beta| values must lie strictly in (0, 1)")
    out = []
    for i, bi in enumerate(vals):
        k = 1.0
        for j, bj in enumerate(vals):
            if j != i:
                k *= (1.0 - bj * bj) / (bi * bi - bj * bj)
        if variant == 2:
            k /= bi
        out.append(k)
    return out


def antipodal_even_ratios(beta_abs, variant: int) -> list[float]:
    """Ratio family over the |beta| classes of an antipodal set, s even.

    beta_abs must start with the zero class (exactly 0.0). variant 1 runs over
    all classes including 0; variant 2 skips the zero class and carries the
    1 / b_i prefactor, so it returns one fewer value.
    """
    if variant not in (1, 2):
        raise ParameterError(f"variant must be 1 or 2, got {variant}")
    vals = [float(v) for v in beta_abs]
    if not vals or vals[0] != 0.0:
        raise ParameterError("even-case |beta| values must start with the zero class (0.0)")
    if len(vals) > 1:
        _check_strictly_increasing(vals, "|beta| values")
        if vals[-1] >= 1.0:
            raise ParameterError("|beta| values must lie below 1")
    if variant == 1:
        out = []
        for i, bi in enumerate(vals):
            k = 1.0
            for j, bj in enumerate(vals):
                if j != i:
                    k *= (1.0 - bj * bj) / (bi * bi - bj * bj)
            out.append(k)
        return out
    out = []
    for i, bi in enumerate(vals[1:], start=1):
        k = 1.0
        for j, bj in enumerate(vals[1:], start=1):
            if j != i:
                k *= (1.0 - bj * bj) / (bi * bi - bj * bj)
        out.append(k / bi)
    return out


def rational_inner_products(
    v1_ratios, v2_ratios, parity: str, tol_int: float = DEFAULT_TOL_INT
) -> list[Fraction]:
    """Exact rational |beta| values from the two integer ratio families.

    For s odd the families share an index range and b_i = v1_i / v2_i; for
    s even the variant-1 list has a leading zero-class entry to skip and
    b_i = v2_i / v1_i. Inputs must round to nonzero integers within tol_int.
    """
    if parity == "odd":
        if len(v1_ratios) != len(v2_ratios):
            raise InputError("odd parity needs equally long ratio lists")
        pairs = [(v1, v2) for v1, v2 in zip(v1_ratios, v2_ratios)]
    elif parity == "even":
        if len(v1_ratios) != len(v2_ratios) + 1:
            raise InputError("even parity needs one more variant-1 ratio (the zero class)")
        pairs = [(v2, v1) for v1, v2 in zip(v1_ratios[1:], v2_ratios)]
    else:
        raise ParameterError(f"parity must be 'odd' or 'even', got {parity!r}")
    out = []
    for num, den in pairs:
        n_int, d_int = round(num), round(den)
        if abs(num - n_int) > tol_int or abs(den - d_int) > tol_int:
            raise InputError(
                f"ratios ({num!r}, {den!r}) are not integers within tol_int={tol_int}"
            )
        if d_int == 0 or n_int == 0:
            raise DegenerateValuesError("a rounded ratio is zero; rational value undefined")
        out.append(Fraction(n_int, d_int))
    return out


@dataclass(frozen=True)
class RatioReport:
    """Integrality report for one ratio family on one point set."""

    setting: str
    context: TheoremContext
    n: int
    class_indices: tuple[int, ...]
    k_values: tuple[float, ...]
    rounded_k: tuple[int, ...]
    integrality_dev: tuple[float, ...]
    integrality: tuple[bool, ...]
    within_bound: tuple[bool, ...]
    hypothesis_met: bool
    tol_int: float
    k_sum: float | None = None

    @property
    def all_integral(self) -> bool:
        return all(self.integrality)

    @property
    def all_within_bound(self) -> bool:
        return all(self.within_bound)

    def to_dict(self) -> dict:
        out = {
            "setting": self.setting,
            "context": self.context.to_dict(),
            "n": self.n,
            "class_indices": list(self.class_indices),
            "k_values": [float(k) for k in self.k_values],
            "rounded_k": list(self.rounded_k),
            "integrality_dev": [float(x) for x in self.integrality_dev],
            "integrality": list(self.integrality),
            "within_bound": list(self.within_bound),
            "all_integral": self.all_integral,
            "all_within_bound": self.all_within_bound,
            "hypothesis_met": self.hypothesis_met,
            "tol_int": self.tol_int,
        }
        if self.k_sum is not None:
            out["k_sum"] = float(self.k_sum)
        return out


def _make_report(setting, context, n, indices, k_values, tol_int, with_sum=False) -> RatioReport:
    rounded = tuple(int(round(k)) for k in k_values)
    dev = tuple(abs(k - r) for k, r in zip(k_values, rounded))
    return RatioReport(
        setting=setting,
        context=context,
        n=n,
        class_indices=tuple(indices),
        k_values=tuple(float(k) for k in k_values),
        rounded_k=rounded,
        integrality_dev=dev,
        integrality=tuple(d <= tol_int for d in dev),
        within_bound=tuple(abs(r) <= context.ratio_bound for r in rounded),
        hypothesis_met=n >= context.cardinality_threshold,
        tol_int=tol_int,
        k_sum=float(sum(k_values)) if with_sum else None,
    )


@dataclass(frozen=True)
class AnalysisReport:
    """Everything analyze() learned about one point set."""

    n: int
    ambient_dimension: int
    s: int
    squared_distances: tuple[float, ...]
    settings_applicable: tuple[str, ...]
    selected: str
    reports: tuple[RatioReport, ...]
    rational: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "ambient_dimension": self.ambient_dimension,
            "s": self.s,
            "squared_distances": [float(v) for v in self.squared_distances],
            "settings_applicable": list(self.settings_applicable),
            "selected": self.selected,
            "reports": [r.to_dict() for r in self.reports],
        }
        if self.rational is not None:
            rational = dict(self.rational)
            rational["values"] = [
                f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v
                for v in rational.get("values", [])
            ]
            out["rational_inner_products"] = rational
        else:
            out["rational_inner_products"] = None
        return out


def _euclidean_report(ps, dp, d_eff, tol_int) -> RatioReport:
    context = theorem_context("euclidean", d_eff, dp.s)
    k = euclidean_ratios(dp.squared_distances)
    return _make_report(
        "euclidean", context, ps.n, range(1, dp.s + 1), k, tol_int, with_sum=True
    )


def _spherical_report(ps, ipp, d_eff, tol_int) -> RatioReport:
    context = theorem_context("spherical", d_eff, ipp.s)
    k = spherical_ratios(ipp.inner_products)
    return _make_report(
        "spherical", context, ps.n, range(1, ipp.s + 1), k, tol_int, with_sum=True
    )


def _antipodal_reports(ps, structure: AntipodalStructure, d_eff, tol_int):
    s = structure.s
    if structure.parity == "odd":
        v1 = antipodal_odd_ratios(structure.beta_abs, 1)
        v2 = antipodal_odd_ratios(structure.beta_abs, 2)
        idx1 = idx2 = range(1, (s - 1) // 2 + 1)
        names = ("antipodal_odd_v1", "antipodal_odd_v2")
    else:
        v1 = antipodal_even_ratios(structure.beta_abs, 1)
        v2 = antipodal_even_ratios(structure.beta_abs, 2)
        idx1 = range(1, s // 2 + 1)
        idx2 = range(2, s // 2 + 1)
        names = ("antipodal_even_v1", "antipodal_even_v2")
    rep1 = _make_report(names[0], theorem_context(names[0], d_eff, s), ps.n, idx1, v1, tol_int)
    rep2 = _make_report(names[1], theorem_context(names[1], d_eff, s), ps.n, idx2, v2, tol_int)
    return rep1, rep2


def _rational_block(rep1: RatioReport, rep2: RatioReport, parity: str, d_eff: int, s: int, tol_int):
    applicable = (
        rep1.hypothesis_met and rep2.hypothesis_met and rep1.all_integral and rep2.all_integral
    )
    block = {
        "applicable": applicable,
        "parity": parity,
        # Sufficient cardinality quoted for the combined statement; the two
        # per-variant thresholds above are what gate `applicable`.
        "blanket_threshold": 4 * comb(d_eff + s - 3, s - 2) + 2,
        "indices": list(rep2.class_indices),
        "values": [],
    }
    if applicable:
        block["values"] = rational_inner_products(
            list(rep1.k_values), list(rep2.k_values), parity, tol_int
        )
    return block


def analyze(
    ps: PointSet,
    setting: str = "auto",
    all_settings: bool = False,
    tol: float = DEFAULT_TOL,
    tol_int: float = DEFAULT_TOL_INT,
    tol_rank: float = DEFAULT_TOL_RANK,
    d_override: int | None = None,
) -> AnalysisReport:
    """Profile a point set and report ratio integrality for applicable settings.

    Settings are tried most-specific first: antipodal (antipodal set with -1
    among the inner products, matching parity), then spherical (unit norms),
    then euclidean (always applicable). `setting` forces one family;
    `all_settings` reports every applicable family.
    """
    if setting not in ("auto", "euclidean", "spherical", "antipodal"):
        raise ParameterError(f"unknown setting {setting!r}")
    dp = distance_profile(ps, tol)
    d_aff = d_override if d_override is not None else affine_dimension(ps, tol_rank)

    spherical_ok = on_unit_sphere(ps, tol)
    ipp = inner_product_profile(ps, tol) if spherical_ok else None
    d_lin = None
    if spherical_ok:
        d_lin = d_override if d_override is not None else linear_dimension(ps, tol_rank)

    structure = None
    antipodal_ok = False
    if spherical_ok and ipp.antipodal and ipp.contains_minus_one:
        try:
            structure = antipodal_structure(ps, tol)
            variant = "antipodal_odd_v1" if structure.parity == "odd" else "antipodal_even_v1"
            theorem_context(variant, d_lin, structure.s)
            antipodal_ok = True
        except (NotAntipodalError, ParameterError):
            structure = None

    applicable = ["euclidean"]
    if spherical_ok:
        applicable.append("spherical")
    if antipodal_ok:
        applicable.append("antipodal")

    if setting == "auto":
        chosen = applicable[-1]
    elif setting in applicable:
        chosen = setting
    elif setting == "spherical":
        raise NotOnSphereError("points are not unit-norm; spherical setting unavailable")
    else:
        raise NotAntipodalError("set lacks the antipodal class structure (or s is too small)")

    wanted = applicable if all_settings else [chosen]
    reports: list[RatioReport] = []
    rational = None
    if "euclidean" in wanted:
        reports.append(_euclidean_report(ps, dp, d_aff, tol_int))
    if "spherical" in wanted:
        reports.append(_spherical_report(ps, ipp, d_lin, tol_int))
    if "antipodal" in wanted:
        rep1, rep2 = _antipodal_reports(ps, structure, d_lin, tol_int)
        reports.extend([rep1, rep2])
        rational = _rational_block(rep1, rep2, structure.parity, d_lin, structure.s, tol_int)

    return AnalysisReport(
        n=ps.n,
        ambient_dimension=ps.dimension,
        s=dp.s,
        squared_distances=dp.squared_distances,
        settings_applicable=tuple(applicable),
        selected=chosen,
        reports=tuple(reports),
        rational=rational,
    )
