"""Orbit stratification of a smooth toric variety and Poincare series.

The orbits, ordered by nondecreasing cone dimension, form a decomposition
whose partial unions are open; each stratum's normal weights are the dual
basis characters of its cone's rays taken modulo sigma^perp.  All weights
are nonzero, the Euler classes are non-zero-divisors, and the equivariant
Poincare series is the sum of the shifted series of the strata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import CompletenessError, SmoothnessError
from .fan import Fan, RaySet, incompleteness_reasons, is_smooth_fan
from .lattice import Vector, pairing, solve_integer


def poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def one_minus_t2_pow(k: int) -> list[int]:
    """(1 - t^2)^k as a coefficient list in t."""
    out = [1]
    for _ in range(k):
        out = poly_mul(out, [1, 0, -1])
    return out


@dataclass(frozen=True)
class PoincareSeries:
    """numerator(t) / (1 - t^2)^denominator_exponent."""

    numerator: tuple[int, ...]
    denominator_exponent: int

    def coefficient(self, degree: int) -> int:
        """Coefficient of t^degree in the expanded power series."""
        if degree < 0:
            return 0
        d = self.denominator_exponent
        total = 0
        for i, c in enumerate(self.numerator):
            if c == 0 or i > degree:
                continue
            rem = degree - i
            if rem % 2 != 0:
                continue
            j = rem // 2
            total += c * (comb(j + d - 1, d - 1) if d > 0 else int(j == 0))
        return total

    def coefficients(self, max_degree: int) -> list[int]:
        return [self.coefficient(i) for i in range(max_degree + 1)]


def require_smooth(fan: Fan) -> None:
    for c in fan.cones:
        if not fan.cone(c).is_smooth():
            raise SmoothnessError(
                f"fan not smooth: rays of cone {c} are not part of a Z-basis"
            )


def dual_basis_character(fan: Fan, rayset: RaySet, v: int) -> Vector:
    """chi with <chi, mu_w> = delta_vw over the rays w of the cone.

    Solvable over Z exactly because the cone is smooth; cached per fan.
    """
    cache = getattr(fan, "_dual_basis_cache", None)
    if cache is None:
        cache = {}
        fan._dual_basis_cache = cache
    key = (tuple(sorted(rayset)), v)
    if key not in cache:
        rows = [list(fan.rays[w]) for w in key[0]]
        rhs = [int(w == v) for w in key[0]]
        chi = solve_integer(rows, rhs)
        if chi is None:
            raise SmoothnessError(
                f"no integral dual basis for ray {v} in cone {key[0]}"
            )
        cache[key] = chi
    return cache[key]


@dataclass(frozen=True)
class Stratum:
    rayset: RaySet
    codim: int
    # dual basis character lifts, one per ray of the cone, in ray order
    normal_weights: tuple[Vector, ...]

    @property
    def euler_rays(self) -> RaySet:
        """E_k is the squarefree monomial on exactly these rays."""
        return self.rayset


@dataclass(frozen=True)
class Stratification:
    fan: Fan
    strata: tuple[Stratum, ...]

    @property
    def order(self) -> tuple[RaySet, ...]:
        return tuple(s.rayset for s in self.strata)


def stratify(fan: Fan) -> Stratification:
    """Order the orbits so every prefix is a subfan and attach weights."""
    require_smooth(fan)
    strata = []
    for c in fan.cones:  # already sorted by (dim, rays): prefixes are subfans
        weights = tuple(dual_basis_character(fan, c, v) for v in c)
        strata.append(Stratum(rayset=c, codim=fan.dim_of(c), normal_weights=weights))
    return Stratification(fan=fan, strata=tuple(strata))


@dataclass
class PerfectionReport:
    failures: list[tuple[RaySet, Vector]] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.failures


def certify_perfection(strat: Stratification) -> PerfectionReport:
    """Check each normal weight is nonzero in X(T_sigma) tensor Q.

    A weight's lift must pair nontrivially with some ray of its cone;
    then the Euler class, a product of nonzero elements of the integral
    domain Sym X(T_sigma) tensor Q, is a non-zero-divisor.
    """
    report = PerfectionReport()
    fan = strat.fan
    for s in strat.strata:
        for chi in s.normal_weights:
            if all(pairing(chi, fan.rays[w]) == 0 for w in s.rayset):
                report.failures.append((s.rayset, chi))
    return report


def equivariant_poincare_series(fan: Fan) -> PoincareSeries:
    """Sum over cones of t^(2 dim) (1-t^2)^(n-dim), over (1-t^2)^n."""
    require_smooth(fan)
    num = [0]
    for c in fan.cones:
        d = fan.dim_of(c)
        term = poly_mul([0] * (2 * d) + [1], one_minus_t2_pow(fan.n - d))
        num = poly_add(num, term)
    return PoincareSeries(tuple(num), fan.n)


def ordinary_poincare_polynomial(fan: Fan) -> list[int]:
    """Equivariant series times (1-t^2)^n; needs a smooth complete fan."""
    require_smooth(fan)
    reasons = incompleteness_reasons(fan)
    if reasons:
        raise CompletenessError("fan not complete: " + "; ".join(reasons))
    poly = list(equivariant_poincare_series(fan).numerator)
    assert all(x >= 0 for x in poly), poly
    assert all(poly[i] == 0 for i in range(1, len(poly), 2)), poly
    return poly
