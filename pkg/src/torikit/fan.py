"""Fans: parsing, validation, the smooth/complete dictionary, orbits.

A fan is a face-closed collection of pointed rational cones whose pairwise
intersections are common faces.  Cones are stored as sorted tuples of
indices into the ray table; the input format lists only maximal cones and
all faces are generated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .cone import Cone, double_description
from .errors import ParseError
from .lattice import (
    QuotientLatticePresentation,
    Vector,
    kernel_basis,
    primitive,
    quotient_by_sublattice,
)

RaySet = tuple[int, ...]


class Fan:
    """A fan in Y(T)_R, rank ``n``, with a primitive ray table."""

    def __init__(
        self,
        n: int,
        rays: Sequence[Sequence[int]],
        cones: Iterable[Iterable[int]],
        warnings: Optional[list[str]] = None,
    ):
        self.n = n
        self.rays: tuple[Vector, ...] = tuple(primitive(r) for r in rays)
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("duplicate ray in ray table")
        seen = {tuple(sorted(c)) for c in cones}
        seen.add(())
        self._cone_objs: dict[RaySet, Cone] = {}
        for c in seen:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise ValueError(f"ray index out of range in cone {c}")
            self._cone_objs[c] = Cone(
                [self.rays[i] for i in c], n, ray_indices=c
            )
        self.cones: tuple[RaySet, ...] = tuple(
            sorted(seen, key=lambda c: (self._cone_objs[c].dim, c))
        )
        self.warnings = warnings or []

    @classmethod
    def from_maximal_cones(
        cls,
        n: int,
        rays: Sequence[Sequence[int]],
        maxcones: Iterable[Iterable[int]],
        warnings: Optional[list[str]] = None,
    ) -> "Fan":
        """Build a fan by closing the given maximal cones under faces."""
        rays = [primitive(r) for r in rays]
        cones: set[RaySet] = {()}
        for mc in maxcones:
            mc = tuple(sorted(mc))
            cone = Cone([rays[i] for i in mc], n, ray_indices=mc)
            cones.add(mc)
            if cone.has_vertex():
                for f in cone.face_generator_sets:
                    cones.add(tuple(mc[i] for i in sorted(f)))
        return cls(n, rays, cones, warnings)

    def cone(self, rayset: Iterable[int]) -> Cone:
        key = tuple(sorted(rayset))
        if key not in self._cone_objs:
            raise KeyError(f"cone {key} not in fan")
        return self._cone_objs[key]

    def dim_of(self, rayset: Iterable[int]) -> int:
        return self.cone(rayset).dim

    @cached_property
    def maximal_cones(self) -> tuple[RaySet, ...]:
        out = []
        for c in self.cones:
            if not any(
                set(c) < set(d) for d in self.cones if d != c
            ):
                out.append(c)
        return tuple(sorted(out))

    def stabilizer_characters(self, rayset: Iterable[int]) -> QuotientLatticePresentation:
        """X(T_sigma) = X(T) / (sigma^perp intersect X(T))."""
        key = tuple(sorted(rayset))
        gens = [list(self.rays[i]) for i in key]
        if gens:
            perp = kernel_basis(gens)
        else:
            perp = [
                tuple(int(i == j) for i in range(self.n))
                for j in range(self.n)
            ]
        return quotient_by_sublattice(self.n, perp)


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str) -> None:
        self.violations.append((kind, message))


def validate_fan(fan: Fan) -> ValidationReport:
    """Check the fan axioms and pointedness, exhaustively over cone pairs."""
    report = ValidationReport()
    for c in fan.cones:
        cone = fan.cone(c)
        if not cone.has_vertex():
            report.add("vertex", f"cone {c} contains a line (no vertex)")
    if not report.valid:
        return report
    cone_set = set(fan.cones)
    for c in fan.cones:
        cone = fan.cone(c)
        for f in cone.face_generator_sets:
            face_rayset = tuple(sorted(c[i] for i in f))
            if face_rayset not in cone_set:
                report.add(
                    "axiom-a",
                    f"face {face_rayset} of cone {c} is missing from the fan",
                )
    for i, c1 in enumerate(fan.cones):
        for c2 in fan.cones[i + 1 :]:
            k1, k2 = fan.cone(c1), fan.cone(c2)
            ineqs = list(k1.dual_cone().generators) + list(
                k2.dual_cone().generators
            )
            rays, lin = double_description(ineqs, fan.n)
            inter = Cone(list(rays) + list(lin) + [tuple(-x for x in l) for l in lin], fan.n)
            for c, cone in ((c1, k1), (c2, k2)):
                if not any(
                    inter.same_cone(
                        Cone([cone.generators[j] for j in sorted(f)], fan.n)
                    )
                    for f in cone.face_generator_sets
                ):
                    report.add(
                        "axiom-b",
                        f"intersection of cones {c1} and {c2} is not a face of {c}",
                    )
    return report


def is_smooth_fan(fan: Fan) -> bool:
    return all(fan.cone(c).is_smooth() for c in fan.cones)


def incompleteness_reasons(fan: Fan) -> list[str]:
    """Why the support of the fan is not all of R^n (empty list = complete).

    For valid fans whose maximal cones are full dimensional, completeness
    is equivalent to every codimension-one cone being a facet of exactly
    two full-dimensional cones.
    """
    reasons = []
    n_cones = [c for c in fan.cones if fan.dim_of(c) == fan.n]
    for c in fan.maximal_cones:
        d = fan.dim_of(c)
        if d < fan.n:
            reasons.append(
                f"maximal cone {c} has dimension {d} < {fan.n}"
            )
    if reasons:
        return reasons
    for c in fan.cones:
        if fan.dim_of(c) != fan.n - 1:
            continue
        count = sum(1 for d in n_cones if set(c) <= set(d))
        if count != 2:
            label = f"cone {c}" if len(c) != 1 else f"ray {c[0]}"
            reasons.append(
                f"{label} borders {count} maximal cone(s), expected 2"
            )
    return reasons


def is_complete(fan: Fan) -> bool:
    return not incompleteness_reasons(fan)


@dataclass(frozen=True)
class OrbitEntry:
    rayset: RaySet
    codim: int
    stabilizer: QuotientLatticePresentation
    divisors: RaySet  # rays v with D_v containing the orbit closure


@dataclass(frozen=True)
class OrbitTable:
    entries: tuple[OrbitEntry, ...]

    def __len__(self):
        return len(self.entries)


def orbit_table(fan: Fan) -> OrbitTable:
    """One orbit per cone; codimension = cone dimension; stabilizers via
    X(T_sigma) = X(T)/(sigma^perp intersect X(T))."""
    entries = []
    for c in fan.cones:
        entries.append(
            OrbitEntry(
                rayset=c,
                codim=fan.dim_of(c),
                stabilizer=fan.stabilizer_characters(c),
                divisors=c,
            )
        )
    return OrbitTable(tuple(entries))


@dataclass(frozen=True)
class SimplicialComplex:
    num_vertices: int
    simplices: frozenset[frozenset[int]]
    minimal_nonfaces: tuple[RaySet, ...]

    def is_simplex(self, s: Iterable[int]) -> bool:
        return frozenset(s) in self.simplices


def simplicial_complex(fan: Fan) -> SimplicialComplex:
    """Vertices are the rays; a subset is a simplex iff it is the ray set
    of some cone.  Minimal non-faces are found by growing simplices."""
    simps = set()
    for c in fan.cones:
        cone = fan.cone(c)
        gamma = frozenset(
            v for v in range(len(fan.rays)) if cone.contains(fan.rays[v])
        )
        simps.add(gamma)
    k = len(fan.rays)
    nonfaces = []
    for v in range(k):
        if frozenset([v]) not in simps:
            nonfaces.append((v,))
    for size in range(2, k + 1):
        smaller = [s for s in simps if len(s) == size - 1]
        cands = set()
        for s in smaller:
            for v in range(k):
                if v not in s:
                    cands.add(s | {v})
        for t in sorted(cands, key=sorted):
            if t in simps:
                continue
            if all(t - {x} in simps for x in t):
                nonfaces.append(tuple(sorted(t)))
    return SimplicialComplex(
        num_vertices=k,
        simplices=frozenset(simps),
        minimal_nonfaces=tuple(sorted(nonfaces)),
    )


def parse_fan(text: str) -> Fan:
    """Parse the line-oriented fan format.

    Grammar (``#`` starts a comment, blank lines are ignored)::

        rank <n>
        rays <k>
        <k lines of n space-separated integers>
        maxcones <m>
        <m lines of space-separated 0-based ray indices>

    Errors carry 1-based line numbers.  Non-primitive rays are normalized
    with a warning recorded on the returned fan.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((lineno, content.split()))
    pos = 0

    def take(expected: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected '{expected}'")
        lineno, toks = lines[pos]
        pos += 1
        return lineno, toks

    def keyword_count(expected: str) -> int:
        lineno, toks = take(expected)
        if len(toks) != 2 or toks[0] != expected:
            raise ParseError(f"expected '{expected} <count>'", lineno)
        try:
            value = int(toks[1])
        except ValueError:
            raise ParseError(f"'{toks[1]}' is not an integer", lineno)
        if value < 0:
            raise ParseError(f"negative count for '{expected}'", lineno)
        return value

    lineno, toks = take("rank")
    if len(toks) != 2 or toks[0] != "rank":
        raise ParseError("expected 'rank <n>'", lineno)
    try:
        n = int(toks[1])
    except ValueError:
        raise ParseError(f"'{toks[1]}' is not an integer", lineno)
    if n < 1:
        raise ParseError("rank must be at least 1", lineno)

    k = keyword_count("rays")
    rays: list[Vector] = []
    warnings: list[str] = []
    for _ in range(k):
        lineno, toks = take("ray coordinates")
        if len(toks) != n:
            raise ParseError(
                f"expected {n} coordinates, got {len(toks)}", lineno
            )
        try:
            v = tuple(int(t) for t in toks)
        except ValueError:
            raise ParseError("ray coordinates must be integers", lineno)
        if not any(v):
            raise ParseError("zero vector is not a valid ray", lineno)
        p = primitive(v)
        if p != v:
            warnings.append(
                f"line {lineno}: ray {v} is not primitive, normalized to {p}"
            )
        if p in rays:
            raise ParseError(f"duplicate ray {p}", lineno)
        rays.append(p)

    m = keyword_count("maxcones")
    maxcones = []
    for _ in range(m):
        lineno, toks = take("cone ray indices")
        try:
            idx = [int(t) for t in toks]
        except ValueError:
            raise ParseError("ray indices must be integers", lineno)
        if len(set(idx)) != len(idx):
            raise ParseError("duplicate ray index in cone", lineno)
        for i in idx:
            if i < 0 or i >= k:
                raise ParseError(f"ray index {i} out of range", lineno)
        maxcones.append(tuple(sorted(idx)))

    if pos != len(lines):
        raise ParseError("trailing content after maxcones", lines[pos][0])
    return Fan.from_maximal_cones(n, rays, maxcones, warnings)
