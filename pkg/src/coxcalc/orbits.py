"""F-faces and orbit cones of polynomial rings and trinomial-chain presentations.

A face of the positive orthant is identified with the set of coordinate indices
whose unit vectors span it. It is an F-face if some point of the total
coordinate space has exactly those coordinates nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import linalg
from .cones import Cone
from .graded import BlockStructure, GradedPresentation, UnsupportedRing, block_structure


def _structure(pres: GradedPresentation) -> BlockStructure | None:
    if not pres.relations:
        return None
    st = block_structure(pres)
    if st is None:
        raise UnsupportedRing("relations are not linear in monomials over disjoint variable blocks")
    return st


def surviving_blocks(st: BlockStructure, face: Sequence[int]) -> list[int]:
    """Blocks whose monomial does not vanish on the stratum of ``face``."""
    fs = set(face)
    return [b for b, blk in enumerate(st.blocks) if set(blk) <= fs]


def kernel_criterion(st: BlockStructure, surviving: Sequence[int]) -> bool:
    """Some vector of monomial values solving the relations is nonzero exactly on ``surviving``."""
    if not surviving:
        return True
    sub = [[row[b] for b in surviving] for row in st.coefficients]
    if not any(any(x for x in row) for row in sub):
        return True
    basis = linalg.nullspace(sub, len(surviving))
    return all(any(v[k] != 0 for v in basis) for k in range(len(surviving)))


def is_fface(pres: GradedPresentation, face: Sequence[int], _st=None) -> bool:
    st = _st if _st is not None else _structure(pres)
    if st is None:
        return True
    surv = surviving_blocks(st, face)
    if st.is_trinomial_chain:
        return not surv or len(st.blocks) - len(surv) <= 1
    return kernel_criterion(st, surv)


def _all_faces(n: int):
    for k in range(n + 1):
        yield from combinations(range(n), k)


def enumerate_ffaces(pres: GradedPresentation) -> list[tuple[int, ...]]:
    st = _structure(pres)
    if st is not None:
        # computed once: the shape test is the expensive part
        st = BlockStructure(st.blocks, st.exponents, st.coefficients, st.free_vars)
        chain = st.is_trinomial_chain
        out = []
        for f in _all_faces(pres.nvars):
            surv = surviving_blocks(st, f)
            ok = (not surv or len(st.blocks) - len(surv) <= 1) if chain else kernel_criterion(st, surv)
            if ok:
                out.append(f)
        return out
    return list(_all_faces(pres.nvars))


def projected_cone(pres: GradedPresentation, face: Sequence[int]) -> Cone:
    degs = pres.free_degrees()
    return Cone.hull([degs[i] for i in face], pres.group.rank)


@dataclass(frozen=True)
class OrbitConeSet:
    """Distinct orbit cones with the F-faces projecting onto each."""

    cones: tuple[Cone, ...]
    witnesses: tuple[tuple[tuple[int, ...], ...], ...]
    ffaces: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.cones)

    def index(self, cone: Cone) -> int:
        return self.cones.index(cone)

    def containing(self, w) -> list[int]:
        return [i for i, c in enumerate(self.cones) if c.contains(w)]


def orbit_cones(pres: GradedPresentation) -> OrbitConeSet:
    ffaces = enumerate_ffaces(pres)
    found: dict[Cone, list[tuple[int, ...]]] = {}
    for f in ffaces:
        found.setdefault(projected_cone(pres, f), []).append(f)
    order = sorted(found, key=Cone.sort_key)
    return OrbitConeSet(tuple(order), tuple(tuple(found[c]) for c in order), tuple(ffaces))
