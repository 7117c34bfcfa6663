"""Bunches of orbit cones, bunched rings and the canonical toric ambient fan."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .cones import Cone, Fan
from .gitfan import git_cone, interior_containment
from .graded import GradedPresentation, is_almost_free
from .orbits import OrbitConeSet, is_fface, orbit_cones, projected_cone

DEFAULT_SIZE_GUARD = 128


class SizeGuardExceeded(RuntimeError):
    pass


class NotAGITCone(ValueError):
    pass


class BunchedRingError(ValueError):
    pass


class AlmostFreeViolated(BunchedRingError):
    pass


class TruenessViolated(BunchedRingError):
    pass


class BunchAxiomViolated(BunchedRingError):
    pass


class NotAnOrbitCone(BunchedRingError):
    pass


def size_guard() -> int:
    try:
        return int(os.environ.get("COXCALC_SIZE_GUARD", DEFAULT_SIZE_GUARD))
    except ValueError:
        return DEFAULT_SIZE_GUARD


@dataclass(frozen=True)
class BunchData:
    pres: GradedPresentation
    ocs: OrbitConeSet
    phi: tuple[int, ...]
    rlv: tuple[tuple[int, ...], ...] = field(default=())
    cov: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def cones(self) -> list[Cone]:
        return [self.ocs.cones[i] for i in self.phi]

    def minimal_members(self) -> list[int]:
        cs = {i: self.ocs.cones[i] for i in self.phi}
        return [i for i in self.phi if not any(j != i and cs[j].issubset(cs[i]) for j in self.phi)]

    def to_json(self) -> dict:
        mins = set(self.minimal_members())
        return {
            "orbit_cones": [{"id": i, "minimal": i in mins, **self.ocs.cones[i].to_json()} for i in self.phi],
            "relevant_faces": [list(f) for f in self.rlv],
            "covering_collection": [list(f) for f in self.cov],
        }


def _complete(pres, ocs, phi) -> BunchData:
    phi = tuple(sorted(set(phi)))
    rlv = sorted({f for i in phi for f in ocs.witnesses[i]}, key=lambda f: (len(f), f))
    sets = [frozenset(f) for f in rlv]
    cov = [f for f, s in zip(rlv, sets) if not any(t < s for t in sets)]
    return BunchData(pres, ocs, phi, tuple(rlv), tuple(cov))


def relevant_faces(b: BunchData):
    return b.rlv


def covering_collection(b: BunchData):
    return b.cov


def bunch_from_chamber(pres: GradedPresentation, lam: Cone, ocs: OrbitConeSet | None = None) -> BunchData:
    """Φ(λ): the orbit cones whose relative interior contains that of λ."""
    ocs = ocs or orbit_cones(pres)
    if git_cone(ocs, lam.interior_point()) != lam:
        raise NotAGITCone(f"{lam} is not a GIT cone")
    phi = [i for i, c in enumerate(ocs.cones) if interior_containment(lam, c)]
    return _complete(pres, ocs, phi)


def is_bunch(ocs: OrbitConeSet, phi: Sequence[int]) -> bool:
    cones = [ocs.cones[i] for i in phi]
    if not cones:
        return False
    for a in range(len(cones)):
        for b in range(a + 1, len(cones)):
            if not cones[a].interiors_overlap(cones[b]):
                return False
    members = set(phi)
    for t in cones:
        for j, w in enumerate(ocs.cones):
            if j not in members and interior_containment(t, w):
                return False
    return True


def facet_images(pres: GradedPresentation) -> list[Cone]:
    n = pres.nvars
    return [projected_cone(pres, [j for j in range(n) if j != i]) for i in range(n)]


def is_true(pres: GradedPresentation, ocs: OrbitConeSet, phi: Sequence[int]) -> bool:
    members = {ocs.cones[i] for i in phi}
    return all(c in members for c in facet_images(pres))


def enumerate_maximal_true_bunches(pres: GradedPresentation, ocs: OrbitConeSet | None = None) -> list[BunchData]:
    """All maximal bunches of orbit cones that contain every facet image."""
    ocs = ocs or orbit_cones(pres)
    guard = size_guard()
    if len(ocs) > guard:
        raise SizeGuardExceeded(f"{len(ocs)} orbit cones exceed the size guard {guard}")
    g = nx.Graph()
    g.add_nodes_from(range(len(ocs)))
    for a in range(len(ocs)):
        for b in range(a + 1, len(ocs)):
            if ocs.cones[a].interiors_overlap(ocs.cones[b]):
                g.add_edge(a, b)
    out = []
    for clique in nx.find_cliques(g):
        phi = tuple(sorted(clique))
        if is_true(pres, ocs, phi):
            out.append(phi)
    return [_complete(pres, ocs, phi) for phi in sorted(out)]


@dataclass(frozen=True)
class BunchedRing:
    data: BunchData
    certificate: dict

    @property
    def pres(self) -> GradedPresentation:
        return self.data.pres

    @property
    def group(self):
        return self.data.pres.group

    @property
    def phi_cones(self) -> list[Cone]:
        return self.data.cones


def validate_bunched_ring(pres: GradedPresentation, phi, ocs: OrbitConeSet | None = None) -> BunchedRing:
    """Check the decidable bunched-ring conditions; ``phi`` holds orbit-cone indices or cones."""
    ocs = ocs or orbit_cones(pres)
    idx = []
    for t in phi:
        if isinstance(t, Cone):
            if t not in ocs.cones:
                raise NotAnOrbitCone(f"{t} is not an orbit cone")
            idx.append(ocs.index(t))
        else:
            idx.append(int(t))
    if not is_almost_free(pres):
        raise AlmostFreeViolated("the grading is not almost free")
    for i in idx:
        if not any(is_fface(pres, f) for f in ocs.witnesses[i]):
            raise NotAnOrbitCone(f"cone {i} has no F-face witness")
    if not is_bunch(ocs, idx):
        raise BunchAxiomViolated("members do not pairwise overlap or the set is not upward closed")
    if not is_true(pres, ocs, idx):
        raise TruenessViolated("a facet image is missing from the bunch")
    cert = {
        "almost_free": True,
        "bunch": True,
        "true": True,
        "k_prime_generators": "trusted" if pres.k_prime_trusted else "unverified",
    }
    return BunchedRing(_complete(pres, ocs, idx), cert)


def bunched_ring_from_chamber(pres: GradedPresentation, lam: Cone, ocs: OrbitConeSet | None = None) -> BunchedRing:
    ocs = ocs or orbit_cones(pres)
    b = bunch_from_chamber(pres, lam, ocs)
    return validate_bunched_ring(pres, b.phi, ocs)


def canonical_toric_ambient(br: BunchedRing, mode: str = "relevant") -> Fan:
    """Fan with rays the columns of the Gale dual P and maximal cones P(γ0*).

    ``mode='relevant'`` uses γ0 in cov(Φ) (the cones whose orbits meet X);
    ``mode='full'`` uses the covering collection of the bunch generated in the
    ambient polynomial ring.
    """
    pres = br.pres
    P = pres.gale_dual()
    rays = tuple(tuple(col) for col in zip(*P)) if P else tuple(() for _ in range(pres.nvars))
    n = pres.nvars
    if mode == "relevant":
        cov = br.data.cov
    elif mode == "full":
        from itertools import combinations

        taus = br.phi_cones
        faces = []
        for k in range(n + 1):
            for f in combinations(range(n), k):
                q = projected_cone(pres, f)
                if any(interior_containment(t, q) for t in taus):
                    faces.append(frozenset(f))
        cov = [tuple(sorted(f)) for f in faces if not any(g < f for g in faces)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    max_cones = [tuple(i for i in range(n) if i not in f) for f in cov]
    max_cones = [c for c in max_cones if not any(set(c) < set(d) for d in max_cones)]
    return Fan(rays, tuple(max_cones))
