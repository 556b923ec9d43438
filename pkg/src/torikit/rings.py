"""The face ring of the fan's simplicial complex and its quotients.

Elements are kept in the face-monomial basis at all times: a monomial
whose support is not a simplex is zero and never stored, so equality and
grading are immediate and no Groebner machinery is needed.  Generators
x_v sit in degree 2, one per ray.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import CompletenessError
from .fan import Fan, RaySet, incompleteness_reasons, simplicial_complex
from .lattice import (
    Vector,
    diagonal_of,
    pairing,
    smith_normal_form,
)
from .stratification import dual_basis_character, require_smooth

Exponents = tuple[int, ...]


def _simplices(fan: Fan) -> frozenset[frozenset[int]]:
    cached = getattr(fan, "_simplex_cache", None)
    if cached is None:
        cached = frozenset(
            frozenset(c) for c in fan.cones
        )
        fan._simplex_cache = cached
    return cached


def _support(expo: Exponents) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(expo) if e > 0)


class SRElement:
    """Integer combination of face monomials (exponent vectors over rays)."""

    __slots__ = ("fan", "terms")

    def __init__(self, fan: Fan, terms: Mapping[Exponents, int]):
        simps = _simplices(fan)
        clean = {}
        for expo, coeff in terms.items():
            if coeff == 0:
                continue
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            if _support(expo) not in simps:
                continue  # non-face monomial: identically zero
            clean[tuple(expo)] = coeff
        self.fan = fan
        self.terms = clean

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_terms(self, degree: int) -> dict[Exponents, int]:
        """Terms of cohomological degree ``degree`` (= 2 * total exponent)."""
        return {
            e: c for e, c in self.terms.items() if 2 * sum(e) == degree
        }

    def __eq__(self, other):
        return (
            isinstance(other, SRElement)
            and self.fan is other.fan
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SRElement") -> "SRElement":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SRElement(self.fan, out)

    def __neg__(self) -> "SRElement":
        return SRElement(self.fan, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SRElement") -> "SRElement":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "SRElement":
        return SRElement(
            self.fan, {e: scalar * c for e, c in self.terms.items()}
        )

    def __mul__(self, other: "SRElement") -> "SRElement":
        out: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SRElement(self.fan, out)

    def __repr__(self):
        if not self.terms:
            return "SRElement(0)"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(
                f"x{i}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p
            )
            bits.append(f"{self.terms[e]}*{mono or '1'}")
        return "SRElement(" + " + ".join(bits) + ")"


def sr_zero(fan: Fan) -> SRElement:
    return SRElement(fan, {})


def sr_one(fan: Fan) -> SRElement:
    return SRElement(fan, {(0,) * len(fan.rays): 1})


def sr_variable(fan: Fan, v: int) -> SRElement:
    expo = tuple(int(i == v) for i in range(len(fan.rays)))
    return SRElement(fan, {expo: 1})


def sr_monomial(fan: Fan, expo: Sequence[int], coeff: int = 1) -> SRElement:
    return SRElement(fan, {tuple(expo): coeff})


def multiply(a: SRElement, b: SRElement) -> SRElement:
    return a * b


@dataclass(frozen=True)
class SRPresentation:
    """Z[x_v : v ray] modulo the squarefree monomials of minimal non-faces."""

    num_generators: int
    relations: tuple[RaySet, ...]


def sr_presentation(fan: Fan) -> SRPresentation:
    require_smooth(fan)
    sc = simplicial_complex(fan)
    return SRPresentation(
        num_generators=len(fan.rays), relations=sc.minimal_nonfaces
    )


def face_monomials(fan: Fan, degree: int) -> list[Exponents]:
    """All exponent vectors of the given even degree whose support is a
    simplex; these are a Z-basis of the graded piece."""
    if degree % 2 != 0 or degree < 0:
        raise ValueError("degree must be a nonnegative even integer")
    k = degree // 2
    nrays = len(fan.rays)
    if k == 0:
        return [(0,) * nrays]
    out = []
    for simp in _simplices(fan):
        s = sorted(simp)
        if not s or len(s) > k:
            continue
        # compositions of k into len(s) positive parts
        for cuts in itertools.combinations(range(1, k), len(s) - 1):
            parts = [b - a for a, b in zip((0,) + cuts, cuts + (k,))]
            expo = [0] * nrays
            for v, p in zip(s, parts):
                expo[v] = p
            out.append(tuple(expo))
    return sorted(out)


def face_monomial_count(fan: Fan, degree: int) -> int:
    """Rank of the face ring in the given even degree."""
    if degree % 2 != 0 or degree < 0:
        raise ValueError("degree must be a nonnegative even integer")
    k = degree // 2
    if k == 0:
        return 1
    total = 0
    for simp in _simplices(fan):
        if simp:
            total += comb(k - 1, len(simp) - 1)
    return total


def char_to_linear_form(fan: Fan, chi: Sequence[int]) -> SRElement:
    """chi maps to sum_v <chi, mu_v> x_v (the H*(BT) -> H*_T morphism)."""
    terms = {}
    for v, mu in enumerate(fan.rays):
        c = pairing(chi, mu)
        if c:
            expo = tuple(int(i == v) for i in range(len(fan.rays)))
            terms[expo] = c
    return SRElement(fan, terms)


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    rank: int
    torsion: tuple[int, ...]
    basis: tuple[Exponents, ...]


@dataclass(frozen=True)
class GradedGroupReport:
    pieces: tuple[GradedPiece, ...]

    def ranks(self) -> list[int]:
        return [p.rank for p in self.pieces]


def ordinary_cohomology(fan: Fan, max_degree: int) -> GradedGroupReport:
    """Graded pieces of the face ring modulo the linear forms of a basis
    of X(T), each presented as an integer cokernel via Smith normal form.
    """
    require_smooth(fan)
    reasons = incompleteness_reasons(fan)
    if reasons:
        raise CompletenessError("fan not complete: " + "; ".join(reasons))
    thetas = [
        char_to_linear_form(fan, [int(i == j) for i in range(fan.n)])
        for j in range(fan.n)
    ]
    pieces = []
    for degree in range(0, max_degree + 1, 2):
        rows = face_monomials(fan, degree)
        index = {m: i for i, m in enumerate(rows)}
        cols = []
        if degree >= 2:
            for theta in thetas:
                for m in face_monomials(fan, degree - 2):
                    prod = theta * sr_monomial(fan, m)
                    col = [0] * len(rows)
                    for e, c in prod.terms.items():
                        col[index[e]] = c
                    cols.append(col)
        if cols:
            matrix = [[col[i] for col in cols] for i in range(len(rows))]
            _, d, _ = smith_normal_form(matrix)
            divisors = [x for x in diagonal_of(d) if x != 0]
        else:
            divisors = []
        rank_rel = len(divisors)
        free_rank = len(rows) - rank_rel
        torsion = tuple(x for x in divisors if x > 1)
        basis = _cokernel_basis_rows(
            matrix if cols else [], len(rows)
        )
        pieces.append(
            GradedPiece(
                degree=degree,
                rank=free_rank,
                torsion=torsion,
                basis=tuple(rows[i] for i in basis),
            )
        )
    return GradedGroupReport(tuple(pieces))


def _cokernel_basis_rows(matrix: list[list[int]], nrows: int) -> list[int]:
    """Row indices whose classes form a Q-basis of coker(matrix).

    Column-reduce over Q; the non-pivot rows survive as a basis of the
    quotient by the column space.
    """
    if not matrix:
        return list(range(nrows))
    a = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(a[0])
    pivots = []
    col = 0
    for row in range(nrows):
        if col >= ncols:
            break
        piv = next((j for j in range(col, ncols) if a[row][j] != 0), None)
        if piv is None:
            continue
        for r in range(nrows):
            a[r][col], a[r][piv] = a[r][piv], a[r][col]
        for j in range(ncols):
            if j != col and a[row][j] != 0:
                f = a[row][j] / a[row][col]
                for r in range(nrows):
                    a[r][j] -= f * a[r][col]
        pivots.append(row)
        col += 1
    pivot_set = set(pivots)
    return [i for i in range(nrows) if i not in pivot_set]


MVPoly = dict[Exponents, int]


def _mv_mul(p: MVPoly, q: MVPoly) -> MVPoly:
    out: MVPoly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def restriction_map(
    fan: Fan, element: SRElement, rayset: Iterable[int]
) -> MVPoly:
    """Restrict to the stratum of the given cone, landing in Sym* X(T_sigma).

    x_v goes to 0 off the cone and to the class of the dual basis character
    chi_v on it; the result is a polynomial in the free coordinates of
    X(T_sigma) (exponent-vector keyed, integer coefficients).
    """
    key = tuple(sorted(rayset))
    if key not in set(fan.cones):
        raise KeyError(f"cone {key} not in fan")
    pres = fan.stabilizer_characters(key)
    d = pres.rank
    out: MVPoly = {}
    rayset_set = set(key)
    for expo, coeff in element.terms.items():
        support = _support(expo)
        if not support <= rayset_set:
            continue
        poly: MVPoly = {(0,) * d: coeff}
        for v in sorted(support):
            chi = dual_basis_character(fan, key, v)
            cvec = pres.free_part(chi)
            linear = {
                tuple(int(i == j) for i in range(d)): cvec[j]
                for j in range(d)
                if cvec[j] != 0
            }
            for _ in range(expo[v]):
                poly = _mv_mul(poly, linear)
        for e, c in poly.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


@dataclass(frozen=True)
class InjectivityEntry:
    degree: int
    domain_rank: int
    image_rank: int

    @property
    def injective(self) -> bool:
        return self.domain_rank == self.image_rank


@dataclass(frozen=True)
class InjectivityReport:
    entries: tuple[InjectivityEntry, ...]

    @property
    def all_injective(self) -> bool:
        return all(e.injective for e in self.entries)


def check_restriction_injectivity(
    fan: Fan, max_degree: int
) -> InjectivityReport:
    """Rank-check (over Q) the restriction of each graded piece to the
    product of the strata's cohomologies."""
    require_smooth(fan)
    entries = []
    for degree in range(0, max_degree + 1, 2):
        monos = face_monomials(fan, degree)
        row_index: dict[tuple, int] = {}
        columns = [dict() for _ in monos]
        for c in fan.cones:
            for j, m in enumerate(monos):
                poly = restriction_map(fan, sr_monomial(fan, m), c)
                for e, coeff in poly.items():
                    key = (c, e)
                    if key not in row_index:
                        row_index[key] = len(row_index)
                    columns[j][row_index[key]] = coeff
        nrows = len(row_index)
        matrix = [[0] * len(monos) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, coeff in col.items():
                matrix[i][j] = coeff
        from .lattice import rank as qrank

        image_rank = qrank(matrix) if matrix else 0
        entries.append(
            InjectivityEntry(
                degree=degree, domain_rank=len(monos), image_rank=image_rank
            )
        )
    return InjectivityReport(tuple(entries))


def _monomials_of_degree(nvars: int, k: int):
    if k == 0:
        yield (0,) * nvars
        return
    if nvars == 0:
        return
    for cuts in itertools.combinations_with_replacement(range(nvars), k):
        expo = [0] * nvars
        for c in cuts:
            expo[c] += 1
        yield tuple(expo)
