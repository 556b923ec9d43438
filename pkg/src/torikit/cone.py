"""Rational polyhedral cones in Y(T)_R, with exact integer arithmetic.

A cone is stored by its primitive generators.  Duality is computed by the
double description method with incremental inequality insertion; Hilbert
bases of dual monoids by triangulating the dual cone and enumerating the
half-open fundamental parallelepiped of each simplicial piece.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import PointednessError
from .lattice import (
    Vector,
    diagonal_of,
    invert_unimodular,
    kernel_basis,
    mat_vec,
    pairing,
    primitive,
    rank,
    smith_normal_form,
)


def double_description(
    inequalities: Sequence[Vector], n: int
) -> tuple[list[Vector], list[Vector]]:
    """Extreme rays and lineality basis of {x : a.x >= 0 for all a}.

    Inequalities are inserted one at a time; while a lineality vector hits
    the new hyperplane the whole description is folded into it, otherwise
    adjacent (+,-) ray pairs are combined.  Adjacency is decided by the
    rank of the constraints tight at both rays.
    """
    lineality: list[Vector] = [
        tuple(int(i == j) for i in range(n)) for j in range(n)
    ]
    rays: list[Vector] = []
    processed: list[Vector] = []
    seen = set()
    for a in inequalities:
        a = tuple(a)
        if not any(a):
            continue
        if a in seen:
            continue
        seen.add(a)
        hit = next((i for i, l in enumerate(lineality) if pairing(a, l) != 0), None)
        if hit is not None:
            l = lineality.pop(hit)
            if pairing(a, l) < 0:
                l = tuple(-x for x in l)
            al = pairing(a, l)
            lineality = [
                primitive(tuple(al * x - pairing(a, v) * y for x, y in zip(v, l)))
                for v in lineality
            ]
            rays = [
                primitive(tuple(al * x - pairing(a, r) * y for x, y in zip(r, l)))
                for r in rays
            ]
            rays.append(l)
        else:
            values = [pairing(a, r) for r in rays]
            pos = [r for r, s in zip(rays, values) if s > 0]
            zero = [r for r, s in zip(rays, values) if s == 0]
            neg = [r for r, s in zip(rays, values) if s < 0]
            target = n - len(lineality) - 2
            new = []
            for rp, rm in itertools.product(pos, neg):
                tight = [
                    b
                    for b in processed
                    if pairing(b, rp) == 0 and pairing(b, rm) == 0
                ]
                if (rank(tight) if tight else 0) != target:
                    continue
                sp, sm = pairing(a, rp), pairing(a, rm)
                new.append(
                    primitive(tuple(sp * x - sm * y for x, y in zip(rm, rp)))
                )
            rays = pos + zero + new
        processed.append(a)
        deduped = []
        for r in rays:
            if r not in deduped:
                deduped.append(r)
        rays = deduped
    return sorted(set(rays)), lineality


def _fraction_inverse(cols: Sequence[Vector]) -> list[list[Fraction]]:
    """Inverse of the square matrix whose columns are ``cols``."""
    d = len(cols)
    a = [
        [Fraction(cols[j][i]) for j in range(d)]
        + [Fraction(int(i == j)) for j in range(d)]
        for i in range(d)
    ]
    for j in range(d):
        piv = next(i for i in range(j, d) if a[i][j] != 0)
        a[j], a[piv] = a[piv], a[j]
        inv = 1 / a[j][j]
        a[j] = [x * inv for x in a[j]]
        for i in range(d):
            if i != j and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[j])]
    return [row[d:] for row in a]


@dataclass(frozen=True)
class DualConeDescription:
    """Generators of the dual cone sigma^v inside X(T).

    ``rays`` are the extreme rays modulo lineality, ``lineality`` is a
    lattice basis of sigma^perp (both signs of each basis vector belong to
    the dual cone); ``generators`` is the combined irredundant list.
    """

    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]

    @property
    def generators(self) -> tuple[Vector, ...]:
        out = list(self.rays)
        for b in self.lineality:
            out.append(b)
            out.append(tuple(-x for x in b))
        return tuple(out)


class Cone:
    """A rational polyhedral cone, generated by primitive integer vectors."""

    def __init__(
        self,
        generators: Sequence[Sequence[int]],
        ambient_dim: int,
        ray_indices: Optional[Sequence[int]] = None,
    ):
        gens = []
        for g in generators:
            if len(g) != ambient_dim:
                raise ValueError(
                    f"generator of length {len(g)} in ambient Z^{ambient_dim}"
                )
            p = primitive(g)
            if p not in gens:
                gens.append(p)
        self.generators: tuple[Vector, ...] = tuple(gens)
        self.n = ambient_dim
        self.ray_indices = tuple(ray_indices) if ray_indices is not None else None

    def __repr__(self):
        return f"Cone({list(self.generators)}, n={self.n})"

    @cached_property
    def dim(self) -> int:
        if not self.generators:
            return 0
        return rank([list(g) for g in self.generators])

    @cached_property
    def _dual(self) -> DualConeDescription:
        rays, _ = double_description(self.generators, self.n)
        if self.generators:
            lin = kernel_basis([list(g) for g in self.generators])
        else:
            lin = [tuple(int(i == j) for i in range(self.n)) for j in range(self.n)]
        return DualConeDescription(tuple(rays), tuple(lin))

    def dual_cone(self) -> DualConeDescription:
        return self._dual

    @property
    def facet_normals(self) -> tuple[Vector, ...]:
        return self._dual.rays

    @cached_property
    def extreme_rays(self) -> tuple[Vector, ...]:
        rays, _ = double_description(self._dual.generators, self.n)
        return tuple(rays)

    def has_vertex(self) -> bool:
        """True iff sigma meets -sigma only in 0."""
        gens = [list(g) for g in self._dual.generators]
        return (rank(gens) if gens else 0) == self.n

    def contains(self, v: Sequence[int]) -> bool:
        return all(pairing(g, v) >= 0 for g in self._dual.rays) and all(
            pairing(b, v) == 0 for b in self._dual.lineality
        )

    def same_cone(self, other: "Cone") -> bool:
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def is_smooth(self) -> bool:
        """True iff the primitive rays extend to a Z-basis of Y(T)."""
        rays = self.extreme_rays
        if not rays:
            return True
        if len(rays) != self.dim:
            return False
        _, d, _ = smith_normal_form([list(r) for r in rays])
        return all(x == 1 for x in diagonal_of(d) if x != 0) and (
            sum(1 for x in diagonal_of(d) if x != 0) == len(rays)
        )

    @cached_property
    def face_generator_sets(self) -> list[frozenset[int]]:
        """Faces as index sets into ``generators``, smallest first.

        Every face of a pointed cone is an intersection of facets; facets
        are read off as the generators tight on a facet normal.
        """
        full = frozenset(range(len(self.generators)))
        facet_sets = {
            frozenset(
                i for i, g in enumerate(self.generators) if pairing(eta, g) == 0
            )
            for eta in self._dual.rays
        }
        faces = {full}
        frontier = {full}
        while frontier:
            nxt = set()
            for f in frontier:
                for fs in facet_sets:
                    g = f & fs
                    if g not in faces:
                        faces.add(g)
                        nxt.add(g)
            frontier = nxt
        return sorted(faces, key=lambda s: (len(s), sorted(s)))

    def faces(self) -> list["Cone"]:
        """All faces including 0 and the cone itself."""
        out = []
        for s in self.face_generator_sets:
            idx = None
            if self.ray_indices is not None:
                idx = [self.ray_indices[i] for i in sorted(s)]
            out.append(
                Cone([self.generators[i] for i in sorted(s)], self.n, idx)
            )
        return out

    def hilbert_basis(self) -> list[Vector]:
        """Minimal generating set of the monoid sigma^v intersect X(T).

        Requires a cone with a vertex.  When sigma is not full dimensional
        the dual has lineality sigma^perp; the basis then consists of both
        signs of a lattice basis of sigma^perp together with lifts of the
        Hilbert basis of the projected pointed cone.
        """
        if not self.has_vertex():
            raise PointednessError("cone without vertex has no Hilbert basis")
        if self.n == 0:
            return []
        dual = self._dual
        if not dual.lineality:
            return _hilbert_pointed(
                list(dual.rays), list(self.extreme_rays), self.n
            )
        from .lattice import quotient_by_sublattice

        q = quotient_by_sublattice(self.n, dual.lineality)
        proj = q.projection_matrix()
        lifts = q.lift_basis()
        projected = Cone([mat_vec(proj, r) for r in dual.rays], q.rank)
        # The projected cone is the image of sigma^v, pointed and full
        # dimensional downstairs; its Hilbert basis lifts along any section.
        sub = _hilbert_pointed(
            list(projected.generators), list(projected.facet_normals), q.rank
        )
        out: list[Vector] = []
        for b in dual.lineality:
            out.append(b)
            out.append(tuple(-x for x in b))
        for h in sub:
            x = tuple(
                sum(h[j] * lifts[j][i] for j in range(q.rank))
                for i in range(self.n)
            )
            assert all(pairing(x, g) >= 0 for g in self.generators)
            out.append(x)
        return out

    def extreme_rays_of_dual(self) -> tuple[Vector, ...]:
        """Extreme rays of the dual cone (= the facet normals)."""
        return self._dual.rays


def _in_dual(x: Vector, normals: Sequence[Vector]) -> bool:
    return all(pairing(x, nu) >= 0 for nu in normals)


def _hilbert_pointed(
    gens: list[Vector], normals: list[Vector], d: int
) -> list[Vector]:
    """Hilbert basis of the pointed full-dimensional cone spanned by ``gens``.

    ``normals`` cut the cone out: x belongs iff <x, nu> >= 0 for all nu.
    Candidates are the generators plus the lattice points of the half-open
    parallelepipeds of a triangulation; reducible candidates (x - y stays
    in the cone for an accepted y) are discarded in increasing order of a
    strictly positive linear functional.
    """
    if not gens:
        return []
    if len(gens) == 1:
        return [gens[0]]
    candidates = set(gens)
    for simplex in _triangulate(Cone(gens, d)):
        candidates.update(_parallelepiped_points(simplex))
    candidates.discard((0,) * d)
    ell = tuple(sum(nu[i] for nu in normals) for i in range(d))
    ordered = sorted(candidates, key=lambda x: (pairing(ell, x), x))
    basis: list[Vector] = []
    for x in ordered:
        reducible = any(
            _in_dual(tuple(a - b for a, b in zip(x, y)), normals)
            for y in basis
            if y != x
        )
        if not reducible:
            basis.append(x)
    return sorted(basis)


def _triangulate(cone: Cone) -> list[list[Vector]]:
    """Split a pointed cone into simplicial subcones on its extreme rays."""
    rays = list(cone.extreme_rays)
    if len(rays) == cone.dim:
        return [rays]
    v = rays[0]
    out = []
    facets = [
        s
        for s in cone.face_generator_sets
        if rank([list(cone.generators[i]) for i in s]) == cone.dim - 1
    ]
    for s in facets:
        facet_rays = [cone.generators[i] for i in sorted(s)]
        if v in facet_rays:
            continue
        for simplex in _triangulate(Cone(facet_rays, cone.n)):
            out.append(simplex + [v])
    return out


def _parallelepiped_points(cols: list[Vector]) -> list[Vector]:
    """Nonzero lattice points of {sum t_i g_i : 0 <= t_i < 1}.

    ``cols`` are linearly independent and there are exactly dim-many of
    them, so the box is a genuine parallelepiped with |det| lattice points
    counted via the Smith normal form of the generator matrix.
    """
    d = len(cols[0])
    g = [[cols[j][i] for j in range(len(cols))] for i in range(d)]
    if len(cols) != d:
        raise ValueError("parallelepiped needs a square generator matrix")
    u, dd, _ = smith_normal_form(g)
    diag = diagonal_of(dd)
    if 0 in diag:
        raise ValueError("degenerate parallelepiped")
    if all(x == 1 for x in diag):
        return []
    uinv = invert_unimodular(u)
    ginv = _fraction_inverse(cols)
    pts = []
    for z in itertools.product(*[range(x) for x in diag]):
        w = mat_vec(uinv, z)
        t = [sum(ginv[i][j] * w[j] for j in range(d)) for i in range(d)]
        f = [ti - math.floor(ti) for ti in t]
        if not any(f):
            continue
        x = tuple(
            int(sum(f[j] * cols[j][i] for j in range(d))) for i in range(d)
        )
        pts.append(x)
    return pts
