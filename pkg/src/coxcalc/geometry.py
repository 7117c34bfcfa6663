"""Invariants of the variety defined by a bunched ring."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .bunched import BunchedRing
from .cones import Cone, intersect_all
from .gitfan import moving_cone
from .graded import GradedPresentation
from .lattice import (
    AbelianGroup,
    INFINITE,
    generates,
    group_from_relations,
    hnf,
    quotient_group,
    subgroup_contains,
    subgroup_index,
    subgroup_intersection,
    subgroup_lattice,
)
from .linalg import dot
from .polynomial import Polynomial


class NotRelevant(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


class TorsionNotSupported(ValueError):
    pass


class IntersectionError(ValueError):
    pass


def dimension(br: BunchedRing) -> int:
    p = br.pres
    return p.nvars - len(p.relations) - p.group.rank


def _check_relevant(br: BunchedRing, face):
    face = tuple(sorted(face))
    if face not in br.data.rlv:
        raise NotRelevant(f"{list(face)} is not a relevant face")
    return face


def local_class_group(br: BunchedRing, face: Sequence[int]) -> AbelianGroup:
    face = _check_relevant(br, face)
    return quotient_group(br.group, [br.pres.degrees[i] for i in face])


def stratum_singularity(br: BunchedRing, face: Sequence[int]) -> dict:
    face = _check_relevant(br, face)
    degs = [br.pres.degrees[i] for i in face]
    qcone = Cone.hull([br.pres.group.free_part(w) for w in degs], br.group.rank)
    return {"factorial": generates(br.group, degs), "q_factorial": qcone.dim == br.group.rank}


@dataclass(frozen=True)
class PicardData:
    generators: tuple[tuple[int, ...], ...]
    index: object
    group: AbelianGroup

    def contains(self, ambient: AbelianGroup, x) -> bool:
        return subgroup_contains(ambient, list(self.generators), x)


def picard_group(br: BunchedRing) -> PicardData:
    k = br.group
    lists = [[br.pres.degrees[i] for i in f] for f in br.data.cov]
    gens = subgroup_intersection(k, lists)
    lat = subgroup_lattice(k, gens)
    rel_coords = []
    lat_t = linalg.transpose(lat)
    for rel in k.relations():
        sol = linalg.solve(lat_t, rel)
        rel_coords.append([int(x) for x in sol])
    iso = group_from_relations(rel_coords, len(lat)) if rel_coords else AbelianGroup(len(lat))
    return PicardData(tuple(gens), subgroup_index(k, gens), iso)


@dataclass(frozen=True)
class DivisorCones:
    eff: Cone
    mov: Cone
    sample: Cone
    ample: Cone | None  # relative interior of this cone, or None when empty

    def to_json(self) -> dict:
        return {
            "Eff": self.eff.to_json(),
            "Mov": self.mov.to_json(),
            "SAmple": self.sample.to_json(),
            "Ample": None if self.ample is None else {**self.ample.to_json(), "open": True},
        }


def divisor_cones(br: BunchedRing) -> DivisorCones:
    pres = br.pres
    eff = pres.weight_cone()
    mov = moving_cone(pres) if pres.nvars >= 2 else eff
    sample = intersect_all(br.phi_cones)
    p = sample.interior_point()
    ample = sample if all(t.relative_interior_contains(p) for t in br.phi_cones) else None
    return DivisorCones(eff, mov, sample, ample)


def canonical_class(br_or_pres) -> tuple[int, ...]:
    pres = br_or_pres.pres if isinstance(br_or_pres, BunchedRing) else br_or_pres
    g = pres.group
    total = [0] * g.length
    for u in pres.relation_degrees():
        total = [a + b for a, b in zip(total, u)]
    for w in pres.degrees:
        total = [a - b for a, b in zip(total, w)]
    return g.normalize(total)


def anticanonical_complexity_one(pres: GradedPresentation) -> tuple[int, ...]:
    """Canonical class from the complexity-one formula; checked against the general one."""
    ap = pres.ap
    if ap is None:
        raise ValueError("presentation does not come from (A,P) data")
    g = pres.group
    total = [0] * g.length
    mult = max(0, ap.r - 1)
    for j, l in enumerate(ap.ls[0]):
        w = pres.degrees[ap.column_index(0, j)]
        total = [a + mult * l * b for a, b in zip(total, w)]
    for w in pres.degrees:
        total = [a - b for a, b in zip(total, w)]
    value = g.normalize(total)
    if value != canonical_class(pres):
        raise InternalInconsistency("the two canonical class formulas disagree")
    return value


# --------------------------------------------------------------- intersections


def _monomials(k: int, deg: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, slots - 1)

    if k == 0:
        return [()] if deg == 0 else []
    rec((), deg, k)
    return out


def _expand(classes, k: int, index: dict) -> list[Fraction]:
    p = Polynomial.constant(k, 1)
    for c in classes:
        lin = Polynomial(k, tuple((tuple(int(i == j) for j in range(k)), Fraction(x)) for i, x in enumerate(c)))
        p = p * lin
    vec = [Fraction(0)] * len(index)
    for e, c in p.terms:
        vec[index[e]] = c
    return vec


def _generic_point(cone: Cone, hyps, seed: int = 1) -> tuple[Fraction, ...]:
    """A point of the relative interior of ``cone`` off all hyperplanes ``hyps``."""
    p = [Fraction(x) for x in cone.interior_point()]
    if seed > 1 and cone.rays:
        ray = cone.rays[(seed - 2) % len(cone.rays)]
        scale = 4 * (1 + sum(abs(x) for x in p))
        p = [a + scale * b for a, b in zip(p, ray)]
    k = len(p)
    t = seed
    guard = list(cone.facets)
    while any(dot(h, p) == 0 for h in hyps):
        q = [Fraction(t) ** i for i in range(1, k + 1)]
        if all(dot(h, q) != 0 for h in hyps if dot(h, p) == 0) and all(dot(e, q) == 0 for e in cone.equations):
            eps = Fraction(1)
            for h in list(hyps) + guard:
                hp, hq = dot(h, p), dot(h, q)
                if hp != 0 and hq != 0 and (hp > 0) != (hq > 0):
                    eps = min(eps, abs(hp / hq) / 2)
            p = [a + eps * b for a, b in zip(p, q)]
        t += 1
        if t > seed + 200:
            # cone lies inside one of the hyperplanes
            break
    return tuple(p)


def _weight_hyperplanes(degs, k) -> list[tuple[int, ...]]:
    hyps = set()
    for sub in combinations(range(len(degs)), k - 1):
        vecs = [degs[i] for i in sub]
        if k - 1 and linalg.rank(vecs) < k - 1:
            continue
        ns = linalg.nullspace(vecs, k) if vecs else []
        if len(ns) == 1:
            hyps.add(linalg.sign_normalize(ns[0]))
    return sorted(hyps)


class ToricIntersection:
    """Intersection form of the toric variety given by a full chamber of the toric GIT fan."""

    def __init__(self, pres: GradedPresentation, point: Sequence):
        g = pres.group
        if g.torsion:
            raise TorsionNotSupported("intersection numbers are restricted to torsion-free class groups")
        self.pres = pres
        self.k = g.rank
        self.N = pres.nvars - self.k
        degs = pres.free_degrees()
        self.point = tuple(Fraction(x) for x in point)
        self.monos = _monomials(self.k, self.N)
        self.index = {m: i for i, m in enumerate(self.monos)}
        r = pres.nvars
        aug = []
        for sub in combinations(range(r), self.N):
            comp = [degs[j] for j in range(r) if j not in sub]
            aug.append(_expand([degs[i] for i in sub], self.k, self.index) + [self._value(comp)])
        red, pivots = linalg.rref(aug) if aug else ([], [])
        if len(self.monos) in pivots:
            raise IntersectionError("toric intersection values are inconsistent")
        self._rows = [row[:-1] for row in red]
        self._rhs = [row[-1] for row in red]
        self._pivots = pivots

    def _value(self, comp) -> Fraction:
        """1/μ if the chamber lies in the (simplicial) cone of the complementary weights, else 0."""
        if not comp:
            return Fraction(1)
        mat = linalg.transpose(comp)
        d = linalg.det(mat)
        if d == 0:
            return Fraction(0)
        coeffs = linalg.solve(mat, self.point)
        if any(c < 0 for c in coeffs):
            return Fraction(0)
        return Fraction(1) / abs(d)

    def product(self, classes: Sequence[Sequence]) -> Fraction:
        if len(classes) != self.N:
            raise IntersectionError(f"need {self.N} classes, got {len(classes)}")
        t = _expand(classes, self.k, self.index)
        value = Fraction(0)
        for row, rhs, p in zip(self._rows, self._rhs, self._pivots):
            c = t[p]
            if c:
                t = [a - c * b for a, b in zip(t, row)]
                value += c * rhs
        if any(t):
            raise IntersectionError("product not determined by the toric values")
        return value


class IntersectionForm:
    """Intersection numbers on X, evaluated on one or two toric chambers inside λ."""

    def __init__(self, br: BunchedRing, point: Sequence | None = None):
        pres = br.pres
        self.n = dimension(br)
        self.us = [pres.group.free_part(u) for u in pres.relation_degrees()]
        pts = [tuple(point)] if point is not None else toric_points(br)
        self.toric = [ToricIntersection(pres, p) for p in pts]

    def product(self, classes: Sequence[Sequence]) -> Fraction:
        if len(classes) != self.n:
            raise IntersectionError(f"need {self.n} classes on a variety of dimension {self.n}")
        full = [tuple(Fraction(x) for x in c) for c in classes] + self.us
        values = {t.product(full) for t in self.toric}
        if len(values) != 1:
            raise InternalInconsistency(f"intersection numbers differ between toric chambers: {sorted(values)}")
        return values.pop()


def _chamber(br: BunchedRing) -> Cone:
    lam = intersect_all(br.phi_cones)
    if not lam.is_full_dimensional:
        raise IntersectionError("the bunch does not come from a full-dimensional GIT chamber")
    return lam


def toric_points(br: BunchedRing, count: int = 2) -> list[tuple]:
    """Generic points of λ° lying in distinct toric chambers (up to ``count``)."""
    lam = _chamber(br)
    hyps = _weight_hyperplanes(br.pres.free_degrees(), br.group.rank)
    out, keys = [], []
    for seed in range(1, 2 + 2 * len(lam.rays) + 4):
        p = _generic_point(lam, hyps, seed)
        if not lam.relative_interior_contains(p) or any(dot(h, p) == 0 for h in hyps):
            continue
        key = tuple(dot(h, p) > 0 for h in hyps)
        if key not in keys:
            keys.append(key)
            out.append(p)
        if len(out) == count:
            break
    if not out:
        raise IntersectionError("no generic point found in the chamber")
    return out


def intersection_number(br: BunchedRing, classes: Sequence[Sequence], point: Sequence | None = None) -> Fraction:
    """Intersection number on X of classes given as vectors in K_Q.

    The toric chamber is the one containing ``point`` (default: a generic point
    of λ°); when λ° meets a second toric chamber the value is recomputed there.
    """
    return IntersectionForm(br, point).product(classes)


def toric_intersection_number(pres: GradedPresentation, point: Sequence, classes: Sequence[Sequence]) -> Fraction:
    return ToricIntersection(pres, point).product(classes)


def fano_gorenstein(br: BunchedRing) -> dict:
    kx = canonical_class(br)
    cones = divisor_cones(br)
    g = br.group
    anti = tuple(-x for x in g.free_part(kx))
    fano = cones.ample is not None and cones.sample.is_full_dimensional and cones.sample.relative_interior_contains(anti)
    pic = picard_group(br)
    return {"fano": bool(fano), "gorenstein": pic.contains(g, kx)}


def picard_data_rank_one(br: BunchedRing) -> dict:
    """Picard index and anticanonical self-intersection for Cl(X) = Z."""
    pres = br.pres
    g = pres.group
    if g.rank != 1 or g.torsion:
        raise ValueError("rank-one formulas need Cl(X) = Z")
    ws = [w[0] for w in pres.degrees]
    us = [u[0] for u in pres.relation_degrees()]
    idx = 1
    for f in br.data.cov:
        idx = math.lcm(idx, math.gcd(*[ws[i] for i in f]))
    d = dimension(br)
    deg = Fraction(sum(ws) - sum(us)) ** d * math.prod(us) / math.prod(ws)
    return {"index": idx, "anticanonical_degree": deg}


@dataclass
class GeometryReport:
    dim: int
    cl: AbelianGroup
    var_names: tuple
    degrees: tuple
    relations: list
    chamber: Cone
    strata: list
    picard: PicardData
    cones: DivisorCones
    canonical: tuple
    fano: bool
    gorenstein: bool
    anticanonical_self_intersection: Fraction | None
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .polynomial import _frac_str

        return {
            "dim": self.dim,
            "Cl": self.cl.to_json(),
            "variables": list(self.var_names),
            "degrees": [list(w) for w in self.degrees],
            "relations": self.relations,
            "chamber": self.chamber.to_json(),
            "strata": [
                {"face": list(s["face"]), "local_class_group": s["group"].to_json(),
                 "factorial": s["factorial"], "q_factorial": s["q_factorial"]}
                for s in self.strata
            ],
            "Pic": {
                "generators": [list(g) for g in self.picard.generators],
                "index": None if self.picard.index == INFINITE else self.picard.index,
                "group": self.picard.group.to_json(),
            },
            "cones": self.cones.to_json(),
            "canonical_class": list(self.canonical),
            "anticanonical_self_intersection": None
            if self.anticanonical_self_intersection is None
            else _frac_str(self.anticanonical_self_intersection),
            "fano": self.fano,
            "gorenstein": self.gorenstein,
            "certificate": self.certificate,
        }

    def to_text(self) -> str:
        def cone_txt(c):
            if c is None:
                return "empty"
            s = "cone(" + ", ".join(str(list(r)) for r in c.rays) + ")"
            if c.lineality:
                s += " + span(" + ", ".join(str(list(l)) for l in c.lineality) + ")"
            return s

        lines = [
            f"dimension: {self.dim}",
            f"Cl(X): {self.cl}",
            "generators:",
        ]
        for n, w in zip(self.var_names, self.degrees):
            lines.append(f"  {n}: {list(w)}")
        for r in self.relations:
            lines.append(f"relation: {r}")
        lines.append(f"chamber: {cone_txt(self.chamber)}")
        lines.append("strata (covering collection first):")
        for s in self.strata:
            flags = ("factorial" if s["factorial"] else "not factorial") + (
                ", Q-factorial" if s["q_factorial"] else ", not Q-factorial"
            )
            lines.append(f"  {list(s['face'])}: local class group {s['group']} ({flags})")
        idx = "infinite" if self.picard.index == INFINITE else self.picard.index
        lines.append(f"Pic(X): {self.picard.group}, index {idx} in Cl(X)")
        lines.append(f"Eff: {cone_txt(self.cones.eff)}")
        lines.append(f"Mov: {cone_txt(self.cones.mov)}")
        lines.append(f"SAmple: {cone_txt(self.cones.sample)}")
        lines.append(f"Ample: interior of {cone_txt(self.cones.ample)}" if self.cones.ample else "Ample: empty")
        lines.append(f"canonical class: {list(self.canonical)}")
        if self.anticanonical_self_intersection is not None:
            lines.append(f"(-K_X)^{self.dim}: {self.anticanonical_self_intersection}")
        lines.append(f"Fano: {self.fano}")
        lines.append(f"Gorenstein: {self.gorenstein}")
        return "\n".join(lines)


def report(br: BunchedRing) -> GeometryReport:
    pres = br.pres
    cov = list(br.data.cov)
    order = cov + [f for f in br.data.rlv if f not in cov]
    strata = []
    for f in order:
        sing = stratum_singularity(br, f)
        strata.append({"face": f, "group": local_class_group(br, f), **sing})
    kx = canonical_class(br)
    fg = fano_gorenstein(br)
    self_int = None
    if not pres.group.torsion and pres.group.rank > 0 and pres.k_prime_trusted is not None:
        try:
            anti = [-x for x in pres.group.free_part(kx)]
            self_int = intersection_number(br, [anti] * dimension(br))
        except (IntersectionError, TorsionNotSupported):
            self_int = None
    return GeometryReport(
        dimension(br),
        pres.group,
        pres.var_names,
        pres.degrees,
        [f.to_string(pres.var_names) for f in pres.relations],
        intersect_all(br.phi_cones),
        strata,
        picard_group(br),
        divisor_cones(br),
        kx,
        fg["fano"],
        fg["gorenstein"],
        self_int,
        dict(br.certificate),
    )
