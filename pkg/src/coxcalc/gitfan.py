"""GIT cones, the GIT quasifan, semistable loci and the moving cone."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cones import Cone, OutsideSupport, face_closure, intersect_all
from .graded import GradedPresentation
from .linalg import dot, sign_normalize
from .orbits import OrbitConeSet, orbit_cones


def _cone_list(ocs) -> list[Cone]:
    return list(ocs.cones) if isinstance(ocs, OrbitConeSet) else list(ocs)


def git_cone(ocs, w: Sequence) -> Cone:
    """Intersection of all orbit cones containing ``w``."""
    cones = _cone_list(ocs)
    containing = [c for c in cones if c.contains(w)]
    if not containing:
        raise OutsideSupport(f"{list(w)} is not in the weight cone")
    return intersect_all(containing)


def moving_cone(pres: GradedPresentation) -> Cone:
    degs = pres.free_degrees()
    if len(degs) < 2:
        raise ValueError("the moving cone needs at least two generators")
    k = pres.group.rank
    return intersect_all([Cone.hull(degs[:i] + degs[i + 1 :], k) for i in range(len(degs))])


def interior_containment(inner: Cone, outer: Cone) -> bool:
    """Whether the relative interior of ``inner`` lies in that of ``outer``."""
    return inner.issubset(outer) and outer.relative_interior_contains(inner.interior_point())


@dataclass(frozen=True)
class GITFan:
    cones: tuple[Cone, ...]
    chambers: tuple[int, ...]
    adjacency: tuple[tuple[int, int], ...]
    bunches: tuple[tuple[int, ...], ...]
    support: Cone
    orbit_cones: tuple[Cone, ...]

    def index(self, cone: Cone) -> int:
        return self.cones.index(cone)

    def chamber_cones(self) -> list[Cone]:
        return [self.cones[i] for i in self.chambers]

    def to_json(self) -> dict:
        return {
            "support": self.support.to_json(),
            "orbit_cones": [c.to_json() for c in self.orbit_cones],
            "cones": [
                {"rays": [list(r) for r in c.rays], "lineality": [list(l) for l in c.lineality], "dim": c.dim,
                 "chamber": i in self.chambers, "bunch": list(self.bunches[i])}
                for i, c in enumerate(self.cones)
            ],
            "adjacency": [list(p) for p in self.adjacency],
        }


def _span_basis(c: Cone) -> list[tuple[int, ...]]:
    gens = list(c.rays) + list(c.lineality)
    if not gens:
        return []
    return [linalg.primitive(r) for r in linalg.rref(gens)[0]]


def _arrangement(cones: list[Cone], basis) -> list[tuple[int, ...]]:
    hyps = set()
    for c in cones:
        for h in list(c.facets) + list(c.equations):
            hr = [dot(h, b) for b in basis]
            if any(hr):
                hyps.add(sign_normalize(hr))
    return sorted(hyps)


def _to_ambient(y, basis, k):
    return tuple(sum(Fraction(yi) * b[j] for yi, b in zip(y, basis)) for j in range(k))


def _step(p, direction, hyps) -> Fraction:
    """A positive step along ``direction`` from ``p`` that crosses no hyperplane strictly."""
    eps = Fraction(1)
    for h in hyps:
        hp, hd = dot(h, p), dot(h, direction)
        if hp != 0 and hd != 0 and (hp > 0) != (hd > 0):
            eps = min(eps, abs(Fraction(hp) / hd) / 2)
    return eps


def _generic_start(omega_y: Cone, hyps) -> tuple:
    p = omega_y.interior_point()
    n = omega_y.ambient
    t = 1
    while any(dot(h, p) == 0 for h in hyps):
        q = [t**i for i in range(1, n + 1)]
        if all(dot(h, q) != 0 for h in hyps if dot(h, p) == 0):
            eps = _step(p, q, list(hyps) + list(omega_y.facets))
            p = tuple(Fraction(a) + eps * b for a, b in zip(p, q))
        t += 1
    return tuple(p)


def arrangement_cells(ocs) -> tuple[list[tuple], list, int]:
    """Generic interior points (in span coordinates) of the full cells of the facet arrangement inside the weight cone.

    Returns (points, basis of the span of the weight cone, ambient dimension).
    """
    cones = _cone_list(ocs)
    k = cones[0].ambient
    omega = Cone.hull([r for c in cones for r in c.rays], k, [l for c in cones for l in c.lineality])
    basis = _span_basis(omega)
    dim = len(basis)
    if dim == 0:
        return [()], basis, k
    hyps = _arrangement(cones, basis)
    # the weight cone in span coordinates
    omega_y = Cone.from_inequalities([[dot(f, b) for b in basis] for f in omega.facets], dim)
    start = _generic_start(omega_y, hyps)
    seen = {}
    queue = deque([start])
    points = []
    while queue:
        y = queue.popleft()
        key = tuple(dot(h, y) > 0 for h in hyps)
        if key in seen:
            continue
        seen[key] = y
        points.append(y)
        cell = Cone.from_inequalities([h if s else tuple(-x for x in h) for h, s in zip(hyps, key)], dim)
        c = cell.interior_point() if cell.rays else y
        if any(dot(h, c) == 0 for h in hyps):
            c = y
        for f in cell.facets:
            tight = [r for r in cell.rays if dot(f, r) == 0]
            pf = [sum(r[j] for r in tight) for j in range(dim)]
            direction = [a - b for a, b in zip(pf, c)]
            eps = _step(pf, direction, hyps)
            q = tuple(Fraction(a) + eps * b for a, b in zip(pf, direction))
            if not omega_y.contains(q):
                continue
            if tuple(dot(h, q) > 0 for h in hyps) not in seen:
                queue.append(q)
    return points, basis, k


def enumerate_gitfan(ocs) -> GITFan:
    cones = _cone_list(ocs)
    if not cones:
        raise ValueError("no orbit cones given")
    points, basis, k = arrangement_cells(cones)
    chambers = []
    for y in points:
        w = _to_ambient(y, basis, k) if basis else (0,) * k
        lam = git_cone(cones, w)
        if lam not in chambers:
            chambers.append(lam)
    all_cones = face_closure(chambers)
    index = {c: i for i, c in enumerate(all_cones)}
    chamber_ids = sorted(index[c] for c in chambers)
    full = len(basis)
    adjacency = []
    for a in range(len(chamber_ids)):
        for b in range(a + 1, len(chamber_ids)):
            i, j = chamber_ids[a], chamber_ids[b]
            if all_cones[i].intersect(all_cones[j]).dim == full - 1:
                adjacency.append((i, j))
    bunches = tuple(
        tuple(t for t, oc in enumerate(cones) if interior_containment(lam, oc)) for lam in all_cones
    )
    support = Cone.hull([r for c in cones for r in c.rays], k, [l for c in cones for l in c.lineality])
    return GITFan(tuple(all_cones), tuple(chamber_ids), tuple(adjacency), bunches, support, tuple(cones))


def semistable_pattern(ocs: OrbitConeSet, lam: Cone) -> list[tuple[int, ...]]:
    """F-faces whose projected cone contains ``lam``."""
    out = []
    for c, wit in zip(ocs.cones, ocs.witnesses):
        if lam.issubset(c):
            out.extend(wit)
    return sorted(out, key=lambda f: (len(f), f))


def minimal_faces(faces: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    sets = [frozenset(f) for f in faces]
    mins = [s for s in sets if not any(t < s for t in sets)]
    return sorted({tuple(sorted(s)) for s in mins}, key=lambda f: (len(f), f))


def describe_semistable(pres: GradedPresentation, pattern) -> str:
    """The semistable set as the complement of a coordinate subvariety."""
    space = f"K^{pres.nvars}" if not pres.relations else "Xbar"
    mins = minimal_faces(pattern)
    if not mins:
        return "empty"
    if mins == [()]:
        return space
    gens = ["*".join(pres.var_names[i] for i in f) for f in mins]
    return f"{space} \\ V({', '.join(gens)})"


def chamber_in_moving_cone(pres: GradedPresentation, fan: GITFan | None = None, ocs: OrbitConeSet | None = None) -> Cone:
    """Default GIT cone: the first full chamber inside Mov(R), else λ at an interior point of Mov(R)."""
    ocs = ocs or orbit_cones(pres)
    if pres.nvars < 2:
        return git_cone(ocs, tuple(pres.free_degrees()[0]) if pres.nvars else ())
    mov = moving_cone(pres)
    if mov.is_full_dimensional:
        fan = fan or enumerate_gitfan(ocs)
        for c in fan.chamber_cones():
            if c.is_full_dimensional and c.issubset(mov):
                return c
    return git_cone(ocs, mov.interior_point())
