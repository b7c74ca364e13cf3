"""Dimension counts, cardinality thresholds, and integer ratio bounds.

All floors are taken with exact integer arithmetic: the bound values are
compared by cross-multiplied integer inequalities, never by flooring a float.
Several bundled configurations attain a bound exactly, where one ulp of float
error would flip the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

from .errors import ParameterError

SETTINGS = (
    "euclidean",
    "spherical",
    "antipodal_odd_v1",
    "antipodal_odd_v2",
    "antipodal_even_v1",
    "antipodal_even_v2",
)

POLY_SPACE_KINDS = ("P_full", "P_sphere", "P_star_sphere", "W_space")

CARDINALITY_KINDS = ("euclidean_bbs", "spherical_dgs", "antipodal_dgs")


def _comb(n: int, k: int) -> int:
    # comb with the usual convention C(n, k) = 0 for k < 0 or k > n.
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def dim_poly_space(kind: str, d: int, l: int) -> int:
    """Dimension of a polynomial function space restricted to R^d or S^(d-1)."""
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    if l < 0:
        raise ParameterError(f"degree must be >= 0, got {l}")
    if kind == "P_full":
        return _comb(d + l, l)
    if kind == "P_sphere":
        return _comb(d + l - 1, l) + _comb(d + l - 2, l - 1)
    if kind == "P_star_sphere":
        return _comb(d + l - 1, l)
    if kind == "W_space":
        return _comb(d + l, l) + _comb(d + l - 1, l - 1)
    raise ParameterError(f"unknown polynomial space kind {kind!r}")


def ratio_bound_U(N: int) -> int:
    """Largest integer u with u <= 1/2 + sqrt(N^2/(2N-2) + 1/4), exactly.

    Equivalent integer test: (2u-1)^2 * (N-1) <= 2*N^2 + N - 1.
    """
    if N < 2:
        raise ParameterError(f"ratio bound needs N >= 2, got {N}")
    rhs = 2 * N * N + N - 1

    def ok(u: int) -> bool:
        return (2 * u - 1) ** 2 * (N - 1) <= rhs

    u = (isqrt(rhs // (N - 1)) + 1) // 2
    u = max(u, 1)
    while ok(u + 1):
        u += 1
    while u > 1 and not ok(u):
        u -= 1
    return u


def antipodal_ratio_bound(N: int) -> int:
    """Largest integer u with u^2 <= 2*N^2/(N+1), exactly."""
    if N < 1:
        raise ParameterError(f"antipodal ratio bound needs N >= 1, got {N}")
    u = isqrt((2 * N * N) // (N + 1))
    while (u + 1) ** 2 * (N + 1) <= 2 * N * N:
        u += 1
    while u > 0 and u * u * (N + 1) > 2 * N * N:
        u -= 1
    return u


@dataclass(frozen=True)
class TheoremContext:
    """Parameters a ratio-integrality theorem instance is checked against."""

    setting: str
    d: int
    s: int
    N: int
    cardinality_threshold: int
    ratio_bound: int

    def to_dict(self) -> dict:
        return {
            "setting": self.setting,
            "d": self.d,
            "s": self.s,
            "N": self.N,
            "cardinality_threshold": self.cardinality_threshold,
            "ratio_bound": self.ratio_bound,
        }


def theorem_context(setting: str, d: int, s: int) -> TheoremContext:
    """Space dimension N, cardinality threshold, and ratio bound per setting."""
    if setting not in SETTINGS:
        raise ParameterError(f"unknown setting {setting!r}")
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    if setting in ("euclidean", "spherical"):
        if s < 2:
            raise ParameterError(f"{setting} setting needs s >= 2, got {s}")
    elif setting.startswith("antipodal_odd"):
        if s % 2 == 0 or s < 5:
            raise ParameterError(f"{setting} needs odd s >= 5, got {s}")
    else:
        if s % 2 == 1 or s < 4:
            raise ParameterError(f"{setting} needs even s >= 4, got {s}")

    if setting == "euclidean":
        N = dim_poly_space("W_space", d, s - 1)
        return TheoremContext(setting, d, s, N, 2 * N, ratio_bound_U(N))
    if setting == "spherical":
        N = dim_poly_space("P_sphere", d, s - 1)
        return TheoremContext(setting, d, s, N, 2 * N, ratio_bound_U(N))
    if setting == "antipodal_odd_v1":
        N = dim_poly_space("P_star_sphere", d, s - 3)
        return TheoremContext(setting, d, s, N, 4 * N, ratio_bound_U(N))
    if setting == "antipodal_odd_v2":
        N = dim_poly_space("P_star_sphere", d, s - 2)
        return TheoremContext(setting, d, s, N, 4 * N + 2, antipodal_ratio_bound(N))
    if setting == "antipodal_even_v1":
        N = dim_poly_space("P_star_sphere", d, s - 2)
        return TheoremContext(setting, d, s, N, 4 * N, ratio_bound_U(N))
    # antipodal_even_v2
    N = dim_poly_space("P_star_sphere", d, s - 3)
    return TheoremContext(setting, d, s, N, 4 * N + 2, antipodal_ratio_bound(N))


def cardinality_bound(kind: str, d: int, s: int) -> int:
    """Known upper bounds on the size of an s-distance set."""
    if d < 1 or s < 1:
        raise ParameterError(f"need d >= 1 and s >= 1, got d={d}, s={s}")
    if kind == "euclidean_bbs":
        return _comb(d + s, s)
    if kind == "spherical_dgs":
        return _comb(d + s - 1, s) + _comb(d + s - 2, s - 1)
    if kind == "antipodal_dgs":
        return 2 * _comb(d + s - 2, s - 1)
    raise ParameterError(f"unknown cardinality bound kind {kind!r}")
