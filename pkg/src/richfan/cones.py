"""Rational polyhedral cones and fans, with an exact double description core.

A cone is stored by its extremal rays (primitive integer vectors, reduced to a
canonical representative modulo the lineality space) plus a canonical lattice
basis of that lineality space.  Duality, membership, facets, intersection and
Hilbert bases are all exact; no floats anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .intlinalg import (
    Vec,
    det,
    dot,
    is_zero,
    primitive,
    rank_of,
    saturated_span,
    solve_fraction,
    vsub,
)


def unit(rank: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(rank))


def double_description(
    rank: int,
    ineqs: Iterable[Sequence[int]],
    eqs: Iterable[Sequence[int]] = (),
) -> tuple[list[Vec], list[Vec]]:
    """Generators (lines, rays) of {x : <e,x> = 0 for eqs, <a,x> >= 0 for ineqs}.

    Sequential insertion with combinatorial adjacency; every intermediate ray
    carries the bitmask of inequalities it is tight at.  Lines are consumed
    first whenever a new constraint cuts the current lineality space.
    """
    ins = [tuple(int(x) for x in a) for a in ineqs]
    ins = [a for a in ins if not is_zero(a)]
    eqn = [tuple(int(x) for x in e) for e in eqs]
    eqn = [e for e in eqn if not is_zero(e)]

    lines: list[Vec] = [unit(rank, i) for i in range(rank)]
    rays: list[tuple[Vec, int]] = []  # (vector, tight bitmask over ins)

    def insert(a: Vec, bit: int | None, prev_mask: int) -> None:
        nonlocal lines, rays
        orig = next((l for l in lines if dot(a, l) != 0), None)
        if orig is not None:
            d = dot(a, orig)
            hit = orig if d > 0 else tuple(-x for x in orig)
            d = abs(d)
            new_lines = []
            for l in lines:
                if l is orig:
                    continue
                dl = dot(a, l)
                nl = tuple(d * li - dl * hi for li, hi in zip(l, hit))
                new_lines.append(primitive(nl))
            new_rays = []
            for v, m in rays:
                dv = dot(a, v)
                nv = tuple(d * vi - dv * hi for vi, hi in zip(v, hit))
                nm = m if bit is None else (m | (1 << bit))
                new_rays.append((primitive(nv), nm))
            lines = new_lines
            rays = new_rays
            if bit is not None:
                # the consumed line survives as a ray on the positive side
                rays.append((primitive(hit), prev_mask))
            return
        pos = []
        zero = []
        neg = []
        for v, m in rays:
            dv = dot(a, v)
            if dv > 0:
                pos.append((v, m, dv))
            elif dv < 0:
                neg.append((v, m, dv))
            else:
                zero.append((v, m))
        if not neg and bit is None and not pos:
            return
        all_masks = [m for _, m in zero] + [m for _, m, _ in pos] + [m for _, m, _ in neg]
        fresh: dict[Vec, int] = {}
        for pv, pm, pd in pos:
            for nv, nm, nd in neg:
                t = pm & nm
                ok = True
                for m in all_masks:
                    if m is pm or m is nm:
                        continue
                    if (t & m) == t:
                        ok = False
                        break
                if ok:
                    w = primitive(tuple(pd * x - nd * y for x, y in zip(nv, pv)))
                    tm = t if bit is None else (t | (1 << bit))
                    fresh.setdefault(w, tm)
        out: list[tuple[Vec, int]] = []
        if bit is None:
            out.extend(zero)
        else:
            b = 1 << bit
            out.extend((v, m | b) for v, m in zero)
            out.extend((v, m) for v, m, _ in pos)
        out.extend(fresh.items())
        rays = out

    for e in eqn:
        insert(e, None, 0)
    for k, a in enumerate(ins):
        insert(a, k, (1 << k) - 1)

    line_basis = saturated_span(lines) if lines else []
    vecs = sorted({_reduce_mod_lines(v, line_basis) for v, _ in rays})
    return list(line_basis), vecs


def _reduce_mod_lines(v: Sequence[int], lines_hnf: Sequence[Vec]) -> Vec:
    """Canonical primitive representative of the ray class of v mod the lines.

    Pivot coordinates of the lineality basis are cleared over Q, then the
    result is scaled back to a primitive integer vector.  Positive scaling
    only, so the ray's direction is preserved.
    """
    if not lines_hnf:
        return primitive(v)
    x = [Fraction(t) for t in v]
    for row in lines_hnf:
        c = next(i for i, t in enumerate(row) if t != 0)
        if x[c]:
            f = x[c] / row[c]
            x = [xi - f * li for xi, li in zip(x, row)]
    assert any(x), "ray vanished into the lineality space"
    den = 1
    for xi in x:
        den = den * xi.denominator // _gcd(den, xi.denominator)
    return primitive(tuple(int(xi * den) for xi in x))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class Cone:
    """A rational polyhedral cone in a fixed ambient rank."""

    __slots__ = ("rank", "rays", "lines", "_dual")

    def __init__(self, rank: int, rays: tuple[Vec, ...], lines: tuple[Vec, ...]):
        self.rank = rank
        self.rays = rays
        self.lines = lines
        self._dual: Cone | None = None

    @classmethod
    def _from_dd(cls, rank: int, lines: Sequence[Vec], rays: Sequence[Vec]) -> "Cone":
        return cls(rank, tuple(rays), tuple(lines))

    @classmethod
    def from_inequalities(
        cls,
        rank: int,
        ineqs: Iterable[Sequence[int]],
        eqs: Iterable[Sequence[int]] = (),
    ) -> "Cone":
        lines, rays = double_description(rank, ineqs, eqs)
        return cls._from_dd(rank, lines, rays)

    @classmethod
    def from_rays(
        cls,
        rank: int,
        gens: Iterable[Sequence[int]],
        lines: Iterable[Sequence[int]] = (),
    ) -> "Cone":
        gen_list = [tuple(int(x) for x in g) for g in gens]
        gen_list = [g for g in gen_list if not is_zero(g)]
        line_list = [tuple(int(x) for x in l) for l in lines]
        line_list = [l for l in line_list if not is_zero(l)]
        dl, dr = double_description(rank, gen_list, line_list)
        dual = cls._from_dd(rank, dl, dr)
        pl, pr = double_description(rank, dual.rays, dual.lines)
        cone = cls._from_dd(rank, pl, pr)
        cone._dual = dual
        dual._dual = cone
        return cone

    def dual(self) -> "Cone":
        if self._dual is None:
            dl, dr = double_description(self.rank, self.rays, self.lines)
            d = Cone._from_dd(self.rank, dl, dr)
            d._dual = self
            self._dual = d
        return self._dual

    @property
    def facet_normals(self) -> tuple[Vec, ...]:
        return self.dual().rays

    @property
    def span_equations(self) -> tuple[Vec, ...]:
        return self.dual().lines

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.rank:
            raise DimensionMismatch(
                f"vector of length {len(v)} in rank {self.rank}"
            )
        d = self.dual()
        return all(dot(e, v) == 0 for e in d.lines) and all(
            dot(f, v) >= 0 for f in d.rays
        )

    def interior_contains(self, v: Sequence[int]) -> bool:
        """Relative interior membership."""
        d = self.dual()
        return all(dot(e, v) == 0 for e in d.lines) and all(
            dot(f, v) > 0 for f in d.rays
        )

    def dim(self) -> int:
        return rank_of(list(self.rays) + list(self.lines))

    @property
    def is_pointed(self) -> bool:
        return not self.lines

    def intersect(self, other: "Cone") -> "Cone":
        if self.rank != other.rank:
            raise DimensionMismatch("cones live in different ambient ranks")
        return Cone.from_inequalities(
            self.rank,
            list(self.facet_normals) + list(other.facet_normals),
            list(self.span_equations) + list(other.span_equations),
        )

    def contains_cone(self, other: "Cone") -> bool:
        if self.rank != other.rank:
            raise DimensionMismatch("cones live in different ambient ranks")
        for r in other.rays:
            if not self.contains(r):
                return False
        for l in other.lines:
            if not self.contains(l) or not self.contains(tuple(-x for x in l)):
                return False
        return True

    def image(self, rows: Sequence[Sequence[int]]) -> "Cone":
        """Image under the linear map whose matrix rows are given."""
        new_rank = len(rows)
        gens = [tuple(dot(row, r) for row in rows) for r in self.rays]
        lns = [tuple(dot(row, l) for row in rows) for l in self.lines]
        return Cone.from_rays(new_rank, gens, lns)

    def drop_zero_coords(self, zero: Sequence[int]) -> "Cone":
        """Delete coordinates that vanish on the whole cone (canonical-safe)."""
        zs = set(zero)
        assert all(all(r[i] == 0 for i in zs) for r in self.rays)
        assert all(all(l[i] == 0 for i in zs) for l in self.lines)
        keep = [i for i in range(self.rank) if i not in zs]
        rays = tuple(sorted(tuple(r[i] for i in keep) for r in self.rays))
        lines = tuple(tuple(l[i] for i in keep) for l in self.lines)
        return Cone(self.rank - len(zs), rays, lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.rays == other.rays
            and self.lines == other.lines
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.rays, self.lines))

    def __repr__(self) -> str:
        if self.lines:
            return f"Cone(rank={self.rank}, rays={list(self.rays)}, lines={list(self.lines)})"
        return f"Cone(rank={self.rank}, rays={list(self.rays)})"


def is_unimodular(cone: Cone) -> bool:
    """Do the extremal rays form a lattice basis of the span's lattice?"""
    if cone.lines:
        return False
    span = saturated_span(cone.rays)
    if len(cone.rays) != len(span):
        return False
    if not span:
        return True
    coords = [lattice_coords(span, r) for r in cone.rays]
    return abs(det(coords)) == 1


def lattice_coords(basis_rows: Sequence[Vec], v: Sequence[int]) -> Vec:
    """Coordinates of v in a saturated lattice basis (must be integral)."""
    rows = [[basis_rows[j][i] for j in range(len(basis_rows))] for i in range(len(v))]
    x = solve_fraction(rows, list(v))
    assert x is not None, "vector outside the lattice span"
    assert all(t.denominator == 1 for t in x), "vector outside the saturated lattice"
    return tuple(int(t) for t in x)


def hilbert_basis(cone: Cone, cap: int = 4_000_000) -> list[Vec]:
    """Minimal generating set of cone cap Z^n (pointed cones only).

    Irreducible elements live in the zonotope spanned by the extremal rays, so
    candidates are enumerated from its bounding box and reduced pairwise.  A
    square unimodular ray matrix short-circuits the enumeration.
    """
    if cone.lines:
        raise ValueError("hilbert basis needs a pointed cone")
    rays = cone.rays
    if not rays:
        return []
    n = cone.rank
    span = saturated_span(rays)
    if len(rays) == len(span):
        coords = [lattice_coords(span, r) for r in rays]
        if abs(det(coords)) == 1:
            return sorted(rays)
    lo = [sum(min(r[i], 0) for r in rays) for i in range(n)]
    hi = [sum(max(r[i], 0) for r in rays) for i in range(n)]
    vol = 1
    for a, b in zip(lo, hi):
        vol *= b - a + 1
        if vol > cap:
            raise ValueError("hilbert basis enumeration region too large")
    pts = []
    zero = tuple(0 for _ in range(n))
    for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if p != zero and cone.contains(p):
            pts.append(p)
    out = []
    for p in pts:
        if not any(q != p and cone.contains(vsub(p, q)) for q in pts):
            out.append(p)
    return sorted(out)


class Fan:
    """A finite set of maximal cones in a common ambient rank."""

    __slots__ = ("rank", "cones")

    def __init__(self, rank: int, cones: Iterable[Cone]):
        seen = sorted(set(cones), key=lambda c: (c.rays, c.lines))
        for c in seen:
            if c.rank != rank:
                raise DimensionMismatch("fan cone in wrong ambient rank")
        self.rank = rank
        self.cones = tuple(seen)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return self.rank == other.rank and self.cones == other.cones

    def __hash__(self) -> int:
        return hash((self.rank, self.cones))

    def __repr__(self) -> str:
        return f"Fan(rank={self.rank}, cones={len(self.cones)})"

    def is_complete_on_orthant(self, samples: int = 64, seed: int = 20240) -> bool:
        """Facet pairing plus seeded rational point coverage on the orthant.

        Every cone must be full dimensional; every facet must either lie in a
        coordinate hyperplane or be shared by exactly two cones; deterministic
        interior sample points must each land in some cone, and in exactly one
        when they avoid all walls.
        """
        if self.rank == 0:
            return len(self.cones) == 1 and self.cones[0].dim() == 0
        if not self.cones:
            return False
        for c in self.cones:
            if c.dim() != self.rank:
                return False
        shared: dict[tuple[Vec, ...], int] = {}
        for c in self.cones:
            for f in c.facet_normals:
                tight = tuple(r for r in c.rays if dot(f, r) == 0)
                if any(all(r[i] == 0 for r in tight) for i in range(self.rank)):
                    continue
                shared[tight] = shared.get(tight, 0) + 1
        if any(v != 2 for v in shared.values()):
            return False
        rng = random.Random(seed)
        for _ in range(samples):
            p = tuple(rng.randint(1, 9973) for _ in range(self.rank))
            hits = [c for c in self.cones if c.contains(p)]
            if not hits:
                return False
            if len(hits) > 1 and any(c.interior_contains(p) for c in hits):
                return False
        return True

    def is_valid(self) -> bool:
        """Pairwise intersections must be faces of both cones."""
        for c1, c2 in combinations(self.cones, 2):
            cap = c1.intersect(c2)
            if not _is_face_of(cap, c1) or not _is_face_of(cap, c2):
                return False
        return True

    def refine(self, other: "Fan") -> "Fan":
        if self.rank != other.rank:
            raise DimensionMismatch("fans live in different ambient ranks")
        out = []
        for c1 in self.cones:
            for c2 in other.cones:
                cap = c1.intersect(c2)
                if cap.dim() == self.rank:
                    out.append(cap)
        return Fan(self.rank, out)

    def restrict(self, zero_coords: Iterable[int]) -> "Fan":
        """Slice by {x_i = 0 for i in zero_coords} and drop those coordinates."""
        zs = sorted(set(zero_coords))
        for i in zs:
            if not 0 <= i < self.rank:
                raise DimensionMismatch(f"coordinate {i} out of range")
        sliced = []
        for c in self.cones:
            cc = Cone.from_inequalities(
                self.rank,
                c.facet_normals,
                list(c.span_equations) + [unit(self.rank, i) for i in zs],
            )
            sliced.append(cc.drop_zero_coords(zs))
        uniq = list(set(sliced))
        keep = [
            c
            for c in uniq
            if not any(o is not c and o != c and o.contains_cone(c) for o in uniq)
        ]
        return Fan(self.rank - len(zs), keep)

    def to_obj(self) -> dict:
        return {
            "rank": self.rank,
            "cones": [{"rays": [list(r) for r in c.rays]} for c in self.cones],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "Fan":
        rank = int(obj["rank"])
        cones = [
            Cone.from_rays(rank, [tuple(map(int, r)) for r in c["rays"]])
            for c in obj["cones"]
        ]
        return cls(rank, cones)


def _is_face_of(face: Cone, cone: Cone) -> bool:
    tight_normals = [
        f
        for f in cone.facet_normals
        if all(dot(f, r) == 0 for r in face.rays)
        and all(dot(f, l) == 0 for l in face.lines)
    ]
    tight_rays = {
        r
        for r in cone.rays
        if all(dot(f, r) == 0 for f in tight_normals)
    }
    # a face always carries the whole lineality space along
    return set(face.rays) == tight_rays and face.lines == cone.lines
