"""Rational polyhedral cones with exact double description, quasifans and fans.

A cone is stored in both representations:

* V: extreme rays (primitive, modulo the lineality space) plus a lineality basis,
* H: facet inequalities ``a . x >= 0`` (modulo equations) plus an equation basis.

Both are canonical, so two cones are equal iff their stored data are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .linalg import dot, primitive


class DimensionMismatch(ValueError):
    pass


class EmptyCollection(ValueError):
    pass


class FaceConditionViolated(ValueError):
    def __init__(self, pair):
        super().__init__(f"intersection of {pair[0]} and {pair[1]} is not a common face")
        self.pair = pair


class NotFaceClosed(ValueError):
    pass


class OutsideSupport(ValueError):
    pass


def _neg(v):
    return tuple(-x for x in v)


def _dd(ineqs: Sequence[Sequence[int]], n: int):
    """Generators of {x : a.x >= 0 for a in ineqs} as (rays, lineality)."""
    lin = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list[tuple[tuple[int, ...], frozenset]] = []
    for idx, a in enumerate(ineqs):
        vals = [dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is not None:
            l0, a0 = lin[k], vals[k]
            if a0 < 0:
                l0, a0 = _neg(l0), -a0
            lin = [
                primitive([a0 * x - vals[i] * y for x, y in zip(l, l0)])
                for i, l in enumerate(lin)
                if i != k
            ]
            new = []
            for r, z in rays:
                v = dot(a, r)
                new.append((primitive([a0 * x - v * y for x, y in zip(r, l0)]), z | {idx}))
            new.append((primitive(l0), frozenset(range(idx))))
            rays = new
            continue
        pos, neg, new = [], [], []
        for r, z in rays:
            v = dot(a, r)
            if v > 0:
                pos.append((r, z, v))
                new.append((r, z))
            elif v < 0:
                neg.append((r, z, v))
            else:
                new.append((r, z | {idx}))
        for p, zp, vp in pos:
            for q, zq, vq in neg:
                common = zp & zq
                if any(common <= z for r, z in rays if r is not p and r is not q):
                    continue
                w = [vp * y - vq * x for x, y in zip(p, q)]
                new.append((primitive(w), common | {idx}))
        rays = new
    return [r for r, _ in rays], lin


def _clean(vectors: Iterable[Sequence]) -> list[tuple[int, ...]]:
    out = []
    seen = set()
    for v in vectors:
        p = primitive(v)
        if any(p) and p not in seen:
            seen.add(p)
            out.append(p)
    return sorted(out)


def _canon_subspace(vectors) -> tuple[tuple[int, ...], ...]:
    if not vectors:
        return ()
    return tuple(primitive(row) for row in linalg.rref(vectors)[0])


def _project_out(vectors, sub) -> list[tuple[int, ...]]:
    """Project vectors onto the orthogonal complement of span(sub), primitive."""
    if not sub:
        return _clean(vectors)
    gram = [[dot(a, b) for b in sub] for a in sub]
    out = []
    for v in vectors:
        c = linalg.solve(gram, [dot(s, v) for s in sub])
        w = [Fraction(x) - sum(ci * s[j] for ci, s in zip(c, sub)) for j, x in enumerate(v)]
        out.append(w)
    return _clean(out)


@dataclass(frozen=True, eq=False)
class Cone:
    ambient: int
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    equations: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # construction -----------------------------------------------------
    @classmethod
    def _build(cls, n, gens, lin_gens, hrep_first: bool):
        if hrep_first:
            ineqs, eqs = gens, lin_gens
            ineq_all = _clean(ineqs) + [e for e in _clean(eqs)] + [_neg(e) for e in _clean(eqs)]
            r, l = _dd(ineq_all, n)
            lin = _canon_subspace(l)
            rays = tuple(_project_out(r, lin))
            f, e = _dd(list(rays) + list(lin) + [_neg(x) for x in lin], n)
            eq = _canon_subspace(e)
            facets = tuple(_project_out(f, eq))
        else:
            g_all = _clean(gens) + _clean(lin_gens) + [_neg(x) for x in _clean(lin_gens)]
            f, e = _dd(g_all, n)
            eq = _canon_subspace(e)
            facets = tuple(_project_out(f, eq))
            r, l = _dd(list(facets) + list(eq) + [_neg(x) for x in eq], n)
            lin = _canon_subspace(l)
            rays = tuple(_project_out(r, lin))
        return cls(n, rays, lin, facets, eq)

    @classmethod
    def hull(cls, rays: Iterable[Sequence], ambient: int | None = None, lineality: Iterable[Sequence] = ()) -> "Cone":
        """The cone generated by ``rays`` (plus the linear span of ``lineality``)."""
        rays, lineality = list(rays), list(lineality)
        n = ambient if ambient is not None else len((rays or lineality)[0])
        for v in rays + lineality:
            if len(v) != n:
                raise DimensionMismatch("generator of wrong length")
        return cls._build(n, rays, lineality, hrep_first=False)

    @classmethod
    def from_inequalities(cls, ineqs: Iterable[Sequence], ambient: int | None = None, equations: Iterable[Sequence] = ()) -> "Cone":
        ineqs, equations = list(ineqs), list(equations)
        n = ambient if ambient is not None else len((ineqs or equations)[0])
        for v in ineqs + equations:
            if len(v) != n:
                raise DimensionMismatch("inequality of wrong length")
        return cls._build(n, ineqs, equations, hrep_first=True)

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls.hull([], n)

    @classmethod
    def orthant(cls, n: int) -> "Cone":
        return cls.hull([tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @classmethod
    def whole(cls, n: int) -> "Cone":
        return cls.hull([], n, lineality=[tuple(int(i == j) for j in range(n)) for i in range(n)])

    # basic data ---------------------------------------------------------
    def _key(self):
        return (self.ambient, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        s = f"Cone(rays={[list(r) for r in self.rays]}"
        if self.lineality:
            s += f", lineality={[list(l) for l in self.lineality]}"
        return s + ")"

    @property
    def dim(self) -> int:
        return self.ambient - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(f, x) >= 0 for f in self.facets)

    __contains__ = contains

    def relative_interior_contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(f, x) > 0 for f in self.facets)

    def interior_point(self) -> tuple[int, ...]:
        """A point of the relative interior (sum of the extreme rays)."""
        p = [0] * self.ambient
        for r in self.rays:
            p = [a + b for a, b in zip(p, r)]
        return tuple(p)

    def issubset(self, other: "Cone") -> bool:
        return all(other.contains(r) for r in self.rays) and all(
            other.contains(l) and other.contains(_neg(l)) for l in self.lineality
        )

    __le__ = issubset

    def interiors_overlap(self, other: "Cone") -> bool:
        """Whether the relative interiors of two cones meet."""
        p = self.intersect(other).interior_point()
        return self.relative_interior_contains(p) and other.relative_interior_contains(p)

    # operations ---------------------------------------------------------
    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        return Cone.from_inequalities(
            list(self.facets) + list(other.facets), self.ambient, list(self.equations) + list(other.equations)
        )

    def dual(self) -> "Cone":
        return Cone(self.ambient, self.facets, self.equations, self.rays, self.lineality)

    def _face_from_rays(self, idx: frozenset) -> "Cone":
        cache = self._cache.setdefault("faces_by_rays", {})
        if idx not in cache:
            cache[idx] = Cone.hull([self.rays[i] for i in sorted(idx)], self.ambient, self.lineality)
        return cache[idx]

    def _face_ray_sets(self) -> list[frozenset]:
        if "face_sets" in self._cache:
            return self._cache["face_sets"]
        tight = [frozenset(i for i, r in enumerate(self.rays) if dot(f, r) == 0) for f in self.facets]
        top = frozenset(range(len(self.rays)))
        found = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for s in frontier:
                for t in tight:
                    u = s & t
                    if u not in found:
                        found.add(u)
                        nxt.append(u)
            frontier = nxt
        out = sorted(found, key=lambda s: (len(s), sorted(s)))
        self._cache["face_sets"] = out
        return out

    def faces(self) -> list["Cone"]:
        """All faces, from the lineality space up to the cone itself."""
        faces = [self._face_from_rays(s) for s in self._face_ray_sets()]
        return sorted(faces, key=lambda c: (c.dim, c.sort_key()))

    def face_containing(self, points: Iterable[Sequence]) -> "Cone":
        """The smallest face containing the given points of the cone."""
        points = list(points)
        tight = [f for f in self.facets if all(dot(f, p) == 0 for p in points)]
        idx = frozenset(i for i, r in enumerate(self.rays) if all(dot(f, r) == 0 for f in tight))
        return self._face_from_rays(idx)

    def is_face_of(self, other: "Cone") -> bool:
        if not self.issubset(other):
            return False
        return other.face_containing(list(self.rays) + list(self.lineality)) == self

    def sort_key(self):
        return (self.dim, self.lineality, self.rays)

    def to_json(self) -> dict:
        d = {"rays": [list(r) for r in self.rays], "ambient": self.ambient}
        if self.lineality:
            d["lineality"] = [list(l) for l in self.lineality]
        return d

    @classmethod
    def from_json(cls, obj) -> "Cone":
        return cls.hull(obj.get("rays", []), obj["ambient"], obj.get("lineality", []))


def hull(rays, ambient=None, lineality=()) -> Cone:
    return Cone.hull(rays, ambient, lineality)


def dual(c: Cone) -> Cone:
    return c.dual()


def intersect(a: Cone, b: Cone) -> Cone:
    return a.intersect(b)


def faces(c: Cone) -> list[Cone]:
    return c.faces()


def is_face_of(f: Cone, c: Cone) -> bool:
    return f.is_face_of(c)


def relative_interior_contains(c: Cone, v) -> bool:
    return c.relative_interior_contains(v)


def intersect_all(cones: Sequence[Cone], ambient: int | None = None) -> Cone:
    if not cones:
        if ambient is None:
            raise EmptyCollection("nothing to intersect")
        return Cone.whole(ambient)
    ineqs, eqs = [], []
    for c in cones:
        ineqs += c.facets
        eqs += c.equations
    return Cone.from_inequalities(ineqs, cones[0].ambient, eqs)


def face_closure(cones: Iterable[Cone]) -> list[Cone]:
    out = set()
    for c in cones:
        out.update(c.faces())
    return sorted(out, key=Cone.sort_key)


@dataclass(frozen=True)
class Quasifan:
    cones: tuple[Cone, ...]

    def maximal_cones(self) -> list[Cone]:
        return [c for c in self.cones if not any(c != d and c.issubset(d) for d in self.cones)]

    def support_contains(self, v) -> bool:
        return any(c.contains(v) for c in self.cones)


def validate_quasifan(cones: Iterable[Cone]) -> Quasifan:
    cones = list(dict.fromkeys(cones))
    if not cones:
        raise EmptyCollection("empty collection of cones")
    for i, a in enumerate(cones):
        for b in cones[i + 1 :]:
            c = a.intersect(b)
            if not (c.is_face_of(a) and c.is_face_of(b)):
                raise FaceConditionViolated((a, b))
    members = set(cones)
    for c in cones:
        for f in c.faces():
            if f not in members:
                raise NotFaceClosed(f"face {f} of {c} missing")
    return Quasifan(tuple(sorted(cones, key=Cone.sort_key)))


@dataclass(frozen=True)
class Fan:
    """A fan given by its rays and maximal cones (as sorted tuples of ray indices)."""

    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(sorted(tuple(sorted(c)) for c in self.max_cones)))

    @property
    def ambient(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    def cone(self, idx: Sequence[int]) -> Cone:
        return Cone.hull([self.rays[i] for i in idx], self.ambient)

    def maximal(self) -> list[Cone]:
        return [self.cone(c) for c in self.max_cones]

    def all_cones(self) -> list[tuple[int, ...]]:
        """Index sets of all cones of the fan."""
        out = set()
        for mc in self.max_cones:
            c = self.cone(mc)
            for f in c.faces():
                out.add(tuple(i for i in mc if f.contains(self.rays[i])))
        return sorted(out, key=lambda s: (len(s), s))

    def support_contains(self, v) -> bool:
        return any(c.contains(v) for c in self.maximal())

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, obj) -> "Fan":
        return cls(tuple(tuple(r) for r in obj["rays"]), tuple(tuple(c) for c in obj["max_cones"]))


def validate_fan(fan: Fan) -> Fan:
    """Check pointedness, extremality of listed rays and the face condition."""
    for mc in fan.max_cones:
        c = fan.cone(mc)
        if not c.is_pointed:
            raise ValueError(f"cone {mc} is not pointed")
        if sorted(primitive(fan.rays[i]) for i in mc) != sorted(c.rays):
            raise ValueError(f"cone {mc} has non-extreme or non-primitive rays")
    validate_quasifan(face_closure(fan.maximal()))
    return fan


def stellar_subdivision(fan: Fan, v: Sequence[int]) -> Fan:
    """Stellar subdivision of ``fan`` at the primitive vector ``v``."""
    v = primitive(v)
    if v in fan.rays:
        return fan
    if not fan.support_contains(v):
        raise OutsideSupport(f"{v} is not in the support of the fan")
    new_index = len(fan.rays)
    rays = fan.rays + (v,)
    new_cones = []
    for mc in fan.max_cones:
        c = fan.cone(mc)
        if not c.contains(v):
            new_cones.append(mc)
            continue
        for f in c.facets:
            face = tuple(i for i in mc if dot(f, fan.rays[i]) == 0)
            if dot(f, v) != 0:
                new_cones.append(face + (new_index,))
    return Fan(rays, tuple(new_cones))
