"""Toric ambient modifications and the resolution of K*-surfaces."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from . import linalg
from .bunched import BunchedRing, bunched_ring_from_chamber
from .cones import Cone, Fan, intersect_all, stellar_subdivision
from .geometry import IntersectionForm
from .gitfan import git_cone
from .graded import APData, GradedPresentation, InvalidAPData, block_structure, build_rap, ow_isotropy_orders
from .lattice import cokernel
from .orbits import orbit_cones, projected_cone
from .polynomial import Polynomial


class NotAdmissible(ValueError):
    pass


class AdmissibilityUnverified(ValueError):
    pass


class CenterNotInFan(ValueError):
    pass


class NotASurface(ValueError):
    pass


class MalformedGraph(ValueError):
    pass


@dataclass(frozen=True)
class ModificationSpec:
    """Stellar subdivision at v∞ = Σ a_i v_{c_i}; ``center`` holds 0-based variable indices."""

    center: tuple[int, ...]
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(int(c) for c in self.center))
        object.__setattr__(self, "coefficients", tuple(int(a) for a in self.coefficients))
        if len(self.center) != len(self.coefficients) or not self.center:
            raise ValueError("center and coefficients must be nonempty and of equal length")
        if len(set(self.center)) != len(self.center):
            raise ValueError("center indices repeat")
        if any(a < 1 for a in self.coefficients):
            raise ValueError("coefficients must be positive")

    def vinf(self, P) -> tuple[int, ...]:
        cols = list(zip(*P))
        return tuple(sum(a * cols[c][k] for c, a in zip(self.center, self.coefficients)) for k in range(len(P)))

    def index(self, P) -> int:
        return math.gcd(*self.vinf(P))

    def weights(self, nvars: int) -> list[int]:
        w = [0] * nvars
        for c, a in zip(self.center, self.coefficients):
            w[c] = a
        return w

    def to_json(self) -> dict:
        return {"center": [c + 1 for c in self.center], "coefficients": list(self.coefficients)}

    @classmethod
    def from_json(cls, obj) -> "ModificationSpec":
        return cls(tuple(int(c) - 1 for c in obj["center"]), tuple(obj["coefficients"]))


# ---------------------------------------------------------------- admissibility


def _split_by_degree(f0: Polynomial, spec: ModificationSpec):
    w = spec.weights(f0.nvars)
    parts: dict[int, list] = {}
    for e, c in f0.terms:
        parts.setdefault(sum(a * x for a, x in zip(w, e)), []).append((e, c))
    return {k: Polynomial(f0.nvars, tuple(t)) for k, t in sorted(parts.items())}


def prime_test(g: Polynomial, torsion_free: bool = True):
    """Primality of a polynomial: True, False, or None when no exact test applies."""
    if len(g) == 0:
        return False
    common = g.common_monomial()
    if len(g) == 1:
        return sum(g.terms[0][0]) == 1
    if any(common):
        return False
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in g.exponents()]
    disjoint = all(not (supports[i] & supports[j]) for i in range(len(supports)) for j in range(i + 1, len(supports)))
    if not disjoint:
        return None
    if len(g) == 2:
        if math.gcd(*[x for e in g.exponents() for x in e]) == 1:
            return True
        return False if torsion_free else None
    if len(g) == 3:
        return True
    return None


@dataclass(frozen=True)
class Admissibility:
    status: bool | None
    orbit_meets: bool
    prime: bool | None
    k0: int
    g_k0: Polynomial

    def certificate(self, names=None) -> dict:
        return {
            "status": "admissible" if self.status else ("unverified" if self.status is None else "not admissible"),
            "toric_orbit_meets_X": self.orbit_meets,
            "g_k0_prime": "unverified" if self.prime is None else self.prime,
            "k0": self.k0,
            "g_k0": self.g_k0.to_string(names),
        }


def admissible(f0: Polynomial, spec: ModificationSpec, torsion_free: bool = True) -> Admissibility:
    # a polynomial has zeros in the torus unless it is a single monomial
    restricted = f0.restrict_zero(spec.center)
    orbit_meets = len(restricted) != 1
    parts = _split_by_degree(f0, spec)
    k0 = next(iter(parts))
    g = parts[k0]
    if len(g.variables()) < 2:
        prime = False
    else:
        prime = prime_test(g, torsion_free)
    if not orbit_meets or prime is False:
        status = False
    else:
        status = prime
    return Admissibility(status, orbit_meets, prime, k0, g)


def transform_relation(f0: Polynomial, spec: ModificationSpec, minf: int = 1) -> Polynomial:
    """f0(T∞^a T) / T∞^k0 with T∞^(l·m∞) replaced by T∞^l; T∞ is appended as last variable."""
    w = spec.weights(f0.nvars)
    degs = [sum(a * x for a, x in zip(w, e)) for e in f0.exponents()]
    k0 = min(degs)
    terms = []
    for (e, c), k in zip(f0.terms, degs):
        t = k - k0
        if t % minf:
            raise NotAdmissible(f"power T∞^{t} is not a multiple of the index {minf}")
        terms.append((tuple(e) + (t // minf,), c))
    return Polynomial(f0.nvars + 1, tuple(terms))


def contract(f1: Polynomial) -> Polynomial:
    """Set the last variable to 1 and drop it."""
    g = f1.substitute({f1.nvars - 1: 1})
    return g.map_exponents(lambda e: e[:-1], f1.nvars - 1)


@dataclass(frozen=True)
class ModificationResult:
    pres: GradedPresentation
    P: tuple[tuple[int, ...], ...]
    fan: Fan | None
    spec: ModificationSpec
    vinf: tuple[int, ...]
    index: int
    admissibility: Admissibility | None
    unchanged: bool = False

    def to_json(self) -> dict:
        from .io import presentation_to_json

        out = {
            "spec": self.spec.to_json(),
            "v_inf": list(self.vinf),
            "index": self.index,
            "P": [list(r) for r in self.P],
            "presentation": presentation_to_json(self.pres),
            "unchanged": self.unchanged,
        }
        if self.admissibility is not None:
            out["admissibility"] = self.admissibility.certificate(self.pres.var_names)
        if self.fan is not None:
            out["fan"] = self.fan.to_json()
        return out


def _in_fan(fan: Fan, center) -> bool:
    return any(set(center) <= set(mc) for mc in fan.max_cones)


def modify(pres: GradedPresentation, spec: ModificationSpec, fan: Fan | None = None,
           assert_prime: bool = False, P=None, name: str = "Tinf") -> ModificationResult:
    """Cox ring of the strict transform under the stellar subdivision at v∞."""
    if len(pres.relations) > 1:
        raise ValueError("modifications are implemented for hypersurface Cox rings only")
    if any(c >= pres.nvars for c in spec.center):
        raise ValueError("center index out of range")
    if fan is not None and not _in_fan(fan, spec.center):
        raise CenterNotInFan(f"cone of {[c + 1 for c in spec.center]} is not in the fan")
    P = [list(r) for r in (P if P is not None else pres.gale_dual())]
    cols = [tuple(c) for c in zip(*P)]
    vinf = spec.vinf(P)
    minf = math.gcd(*vinf)
    if minf == 0:
        raise ValueError("v∞ is zero")
    prim = tuple(x // minf for x in vinf)
    if prim in cols:
        return ModificationResult(pres, tuple(map(tuple, P)), fan, spec, vinf, minf, None, True)
    new_fan = stellar_subdivision(fan, prim) if fan is not None else None
    adm = None
    if pres.relations:
        f0 = pres.relations[0]
        P1 = [row + [p] for row, p in zip(P, prim)]
        group, _ = cokernel(linalg.transpose(P1), pres.nvars + 1)
        adm = admissible(f0, spec, torsion_free=not group.torsion)
        if adm.status is False:
            raise NotAdmissible(f"not admissible: {adm.certificate(pres.var_names)}")
        if adm.status is None and not assert_prime:
            raise AdmissibilityUnverified("primality of g_k0 could not be decided; assert it to proceed")
        rels = (transform_relation(f0, spec, minf),)
    else:
        rels = ()
    P1 = [row + [p] for row, p in zip(P, prim)]
    group, proj = cokernel(linalg.transpose(P1), pres.nvars + 1)
    trusted = bool(pres.k_prime_trusted) and (adm is None or adm.status is True or assert_prime)
    new = GradedPresentation(tuple(pres.var_names) + (name,), group, tuple(proj.columns()), rels, trusted)
    return ModificationResult(new, tuple(map(tuple, P1)), new_fan, spec, vinf, minf, adm)


def fan_chamber(pres: GradedPresentation, fan: Fan) -> Cone:
    """Intersection of the cones Q(γ0) over the complements γ0 of the maximal cones."""
    n = pres.nvars
    cones = [projected_cone(pres, [i for i in range(n) if i not in mc]) for mc in fan.max_cones]
    return intersect_all(cones, pres.group.rank)


def bunched_ring_from_fan(pres: GradedPresentation, fan: Fan, ocs=None) -> BunchedRing:
    lam0 = fan_chamber(pres, fan)
    if not lam0.is_full_dimensional:
        raise ValueError("the fan does not define a projective ambient chamber")
    ocs = ocs or orbit_cones(pres)
    return bunched_ring_from_chamber(pres, git_cone(ocs, lam0.interior_point()), ocs)


# ---------------------------------------------------------------- K*-surfaces


@dataclass(frozen=True)
class ResolutionStep:
    kind: str  # "elliptic" or "hj"
    ray: tuple[int, ...]
    arm: int | None
    P: tuple[tuple[int, ...], ...]
    pres: GradedPresentation
    modify_check: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "ray": list(self.ray), "arm": self.arm, "P": [list(r) for r in self.P],
                "variables": list(self.pres.var_names), "modify_check": self.modify_check}


@dataclass(frozen=True)
class KStarResolution:
    original: APData
    ap: APData
    pres: GradedPresentation
    steps: tuple[ResolutionStep, ...]
    exceptional: tuple[int, ...]  # variable indices of the resolved presentation
    original_vars: tuple[int, ...]  # resolved index of each input variable
    fan: Fan

    def to_json(self) -> dict:
        from .io import presentation_to_json

        return {
            "steps": [s.to_json() for s in self.steps],
            "P": [list(r) for r in self.ap.P()],
            "presentation": presentation_to_json(self.pres),
            "exceptional": [self.pres.var_names[i] for i in self.exceptional],
            "fan": self.fan.to_json(),
        }


@dataclass
class _Surface:
    """Working copy of surface (A,P) data: arms of (l, d) columns plus S columns ±1."""

    r: int
    A: tuple
    arms: list  # per arm: list of (l, d, tag)
    splus: object = None
    sminus: object = None

    @classmethod
    def from_ap(cls, ap: APData):
        if ap.s != 1:
            raise NotASurface("resolution needs surface data (s = 1)")
        arms = []
        for i in range(ap.r + 1):
            cols = [(ap.ls[i][j], ap.d[0][ap.column_index(i, j)], ("T", i, j)) for j in range(ap.ns[i])]
            arms.append(sorted(cols, key=lambda c: Fraction(c[1], c[0])))
        sp = sm = None
        for k in range(ap.m):
            v = ap.dprime[0][k]
            if v == 1 and sp is None:
                sp = ("S", k)
            elif v == -1 and sm is None:
                sm = ("S", k)
            else:
                raise NotASurface("S columns of surface data must be (0,...,0,±1) and distinct")
        return cls(ap.r, ap.A, arms, sp, sm)

    def to_ap(self) -> tuple[APData, list]:
        ns = tuple(len(a) for a in self.arms)
        ls = tuple(tuple(c[0] for c in a) for a in self.arms)
        d = tuple(c[1] for a in self.arms for c in a)
        tags = [c[2] for a in self.arms for c in a]
        dp = []
        if self.sminus is not None:
            dp.append(-1)
            tags.append(self.sminus)
        if self.splus is not None:
            dp.append(1)
            tags.append(self.splus)
        # S^- before S^+ keeps the input order of two S columns
        ap = APData(self.r, ns, ls, len(dp), self.A, (d,), (tuple(dp),))
        return ap, tags

    def vector(self, i, col) -> tuple[int, ...]:
        l, dd = col[0], col[1]
        v = [0] * (self.r + 1)
        if i == 0:
            for k in range(self.r):
                v[k] = -l
        else:
            v[i - 1] = l
        v[self.r] = dd
        return tuple(v)

    def bottom(self):
        return [a[0] for a in self.arms]

    def top(self):
        return [a[-1] for a in self.arms]


def _slope_sum(cols) -> Fraction:
    return sum((Fraction(c[1], c[0]) for c in cols), Fraction(0))


def _elliptic_singular(surf: _Surface, cols, pres: GradedPresentation) -> bool:
    vecs = [surf.vector(i, c) for i, c in enumerate(cols)]
    if abs(linalg.det(vecs)) != 1:
        return True
    if surf.r < 2:
        return False
    st = block_structure(pres)
    ap, tags = surf.to_ap()
    smooth_arms = {i for i, c in enumerate(cols) if c[0] == 1}
    blocks = []
    for b, blk in enumerate(st.blocks):
        arm = tags[blk[0]][1] if tags[blk[0]][0] == "T" else None
        if arm in smooth_arms and tags.index(cols[arm][2]) in blk:
            blocks.append(b)
    jac = [[row[b] for b in blocks] for row in st.coefficients]
    return (linalg.rank(jac) if blocks else 0) < surf.r - 1


def _det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _chain(surf: _Surface, i: int) -> list:
    out = []
    if surf.sminus is not None:
        out.append((0, -1, surf.sminus))
    out += surf.arms[i]
    if surf.splus is not None:
        out.append((0, 1, surf.splus))
    return out


def _first_singular(surf: _Surface):
    for i in range(surf.r + 1):
        ch = _chain(surf, i)
        for a in range(len(ch) - 1):
            u, v = ch[a], ch[a + 1]
            if _det2(u, v) != 1:
                return i, u, v
    return None


def surface_fan(surf: _Surface, tags) -> Fan:
    ap, _ = surf.to_ap()
    rays = ap.columns()
    pos = {t: k for k, t in enumerate(tags)}
    cones = []
    for i in range(surf.r + 1):
        ch = _chain(surf, i)
        for a in range(len(ch) - 1):
            cones.append((pos[ch[a][2]], pos[ch[a + 1][2]]))
    if surf.sminus is None:
        cones.append(tuple(pos[c[2]] for c in surf.bottom()))
    if surf.splus is None:
        cones.append(tuple(pos[c[2]] for c in surf.top()))
    return Fan(rays, tuple(cones))


def _check_with_modify(old_pres, old_ap, old_tags, new_pres, new_tags, center_tags, coeffs, new_tag) -> str:
    if len(old_pres.relations) != 1:
        return "skipped: not a hypersurface"
    spec = ModificationSpec(tuple(old_tags.index(t) for t in center_tags), coeffs)
    try:
        res = modify(old_pres, spec, P=old_ap.P())
    except (NotAdmissible, AdmissibilityUnverified):
        return "skipped: not admissible"
    perm = [old_tags.index(t) if t != new_tag else len(old_tags) for t in new_tags]
    moved = res.pres.relations[0].map_exponents(lambda e: [e[p] for p in perm], len(perm))
    if moved.normalized() != new_pres.relations[0].normalized():
        raise AssertionError("modify and the rebuilt (A,P) data disagree on the relation")
    degs = [res.pres.degrees[p] for p in perm]
    from .lattice import same_grading

    if not same_grading(res.pres.group, degs, new_pres.group, new_pres.degrees):
        raise AssertionError("modify and the rebuilt (A,P) data disagree on the grading")
    return "agrees"


def kstar_resolve(ap: APData, check: bool = True) -> KStarResolution:
    """Canonical resolution: blow up singular elliptic points, then smooth 2D cones."""
    ap.validate()
    surf = _Surface.from_ap(ap)
    steps = []
    counter = [0]

    def new_tag(kind):
        counter[0] += 1
        return ("E", counter[0], kind)

    def record(kind, arm, ray, center_tags, coeffs, tag, old):
        old_ap, old_tags, old_pres = old
        new_ap, new_tags = surf.to_ap()
        new_pres = build_rap(new_ap)
        status = "not checked"
        if check:
            status = _check_with_modify(old_pres, old_ap, old_tags, new_pres, new_tags, center_tags, coeffs, tag)
        steps.append(ResolutionStep(kind, ray, arm, tuple(map(tuple, new_ap.P())), new_pres, status))

    def current():
        cur_ap, cur_tags = surf.to_ap()
        return cur_ap, cur_tags, build_rap(cur_ap)

    for sign in (-1, 1):
        cur = current()
        cols = surf.bottom() if sign < 0 else surf.top()
        exists = (surf.sminus is None) if sign < 0 else (surf.splus is None)
        if not exists or sign * _slope_sum(cols) <= 0:
            continue
        if not _elliptic_singular(surf, cols, cur[2]):
            continue
        M = math.lcm(*[c[0] for c in cols])
        coeffs = tuple(M // c[0] for c in cols)
        tag = new_tag("S")
        if sign < 0:
            surf.sminus = tag
        else:
            surf.splus = tag
        ray = tuple([0] * surf.r + [sign])
        record("elliptic", None, ray, [c[2] for c in cols], coeffs, tag, cur)

    while True:
        hit = _first_singular(surf)
        if hit is None:
            break
        i, u, v = hit
        D = _det2(u, v)
        k = next(k for k in range(1, D) if (k * u[0] + v[0]) % D == 0 and (k * u[1] + v[1]) % D == 0)
        w = ((k * u[0] + v[0]) // D, (k * u[1] + v[1]) // D)
        cur = current()
        tag = new_tag("T")
        surf.arms[i].append((w[0], w[1], tag))
        surf.arms[i].sort(key=lambda c: Fraction(c[1], c[0]))
        record("hj", i, surf.vector(i, (w[0], w[1])), [u[2], v[2]], (k, 1), tag, cur)

    final_ap, tags = surf.to_ap()
    final_pres = build_rap(final_ap)
    exceptional = tuple(k for k, t in enumerate(tags) if t[0] == "E")
    _, orig_tags = _Surface.from_ap(ap).to_ap()
    # input variables in input order: T blocks then S columns
    input_tags = [("T", i, j) for i in range(ap.r + 1) for j in range(ap.ns[i])] + [("S", k) for k in range(ap.m)]
    original_vars = tuple(tags.index(t) for t in input_tags)
    return KStarResolution(ap, final_ap, final_pres, tuple(steps), exceptional, original_vars, surface_fan(surf, tags))


def is_smooth_surface_fan(fan: Fan) -> bool:
    for mc in fan.max_cones:
        vecs = [fan.rays[i] for i in mc]
        if len(vecs) == 2:
            if len(linalg.nullspace(vecs, len(vecs[0]))) != len(vecs[0]) - 2:
                return False
            # a 2D cone is regular iff its generators extend to a lattice basis
            from .lattice import invariant_factors

            if invariant_factors(vecs) != [1, 1]:
                return False
        elif abs(linalg.det(vecs)) != 1:
            return False
    return True


def ap_surface_fan(ap: APData) -> Fan:
    """Fan of the K*-surface given by (A,P) data, with rays in input variable order."""
    ap.validate()
    surf = _Surface.from_ap(ap)
    _, tags = surf.to_ap()
    fan = surface_fan(surf, tags)
    input_tags = [("T", i, j) for i in range(ap.r + 1) for j in range(ap.ns[i])] + [("S", k) for k in range(ap.m)]
    perm = [tags.index(t) for t in input_tags]
    pos = {p: k for k, p in enumerate(perm)}
    cones = tuple(tuple(sorted(pos[i] for i in c)) for c in fan.max_cones)
    return Fan(tuple(fan.rays[p] for p in perm), cones)


def resolved_bunched_ring(res: KStarResolution) -> BunchedRing:
    return bunched_ring_from_fan(res.pres, res.fan)


def intersection_matrix(br: BunchedRing, indices: Sequence[int]) -> list[list[Fraction]]:
    degs = [br.pres.group.free_part(br.pres.degrees[i]) for i in indices]
    form = IntersectionForm(br)
    out = []
    for a in range(len(indices)):
        row = []
        for b in range(len(indices)):
            if b < a:
                row.append(out[b][a])
            else:
                row.append(form.product([degs[a], degs[b]]))
        out.append(row)
    return out


def self_intersections(res: KStarResolution, br: BunchedRing | None = None) -> dict[str, Fraction]:
    if dimension_of(res) != 2:
        raise NotASurface("self-intersections need a surface")
    br = br or resolved_bunched_ring(res)
    names = res.pres.var_names
    mat = intersection_matrix(br, res.exceptional)
    return {names[i]: mat[k][k] for k, i in enumerate(res.exceptional)}


def dimension_of(res: KStarResolution) -> int:
    p = res.pres
    return p.nvars - len(p.relations) - p.group.rank


def _component_label(g: nx.Graph) -> str | None:
    n = g.number_of_nodes()
    if not nx.is_tree(g):
        return None
    degs = sorted((d for _, d in g.degree()), reverse=True)
    if n == 1 or degs[0] <= 2:
        return f"A{n}"
    if degs[0] > 3 or degs[1] > 2:
        return None
    center = next(v for v, d in g.degree() if d == 3)
    h = g.copy()
    h.remove_node(center)
    arms = sorted(len(c) for c in nx.connected_components(h))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return None


def ade_match(matrix: Sequence[Sequence[Fraction]]) -> str | None:
    """ADE label of a configuration of (-2)-curves given by its intersection matrix.

    Labels are grouped with multiplicities, e.g. "D4 3A1". Returns "" for no curves and None when the configuration is not of ADE type.
    """
    n = len(matrix)
    if n == 0:
        return ""
    if any(matrix[i][i] != -2 for i in range(n)):
        return None
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] not in (0, 1):
                return None
            if matrix[i][j] == 1:
                g.add_edge(i, j)
    labels = []
    for comp in nx.connected_components(g):
        lab = _component_label(g.subgraph(comp))
        if lab is None:
            return None
        labels.append(lab)
    order = {"E": 0, "D": 1, "A": 2}
    counts = Counter(labels)
    keys = sorted(counts, key=lambda s: (order[s[0]], -int(s[1:])))
    return " ".join(f"{counts[k]}{k}" if counts[k] > 1 else k for k in keys)


# ---------------------------------------------------------------- Orlik-Wagreich graphs


def default_points(count: int) -> list[tuple[int, int]]:
    base = [(-1, 0), (1, -1), (0, 1)]
    return (base + [(1, k - 1) for k in range(3, count)])[:count]


@dataclass(frozen=True)
class OWGraph:
    """Arms of curve labels b_ij (negative self-intersections) and the labels of F^+ and F^-."""

    arms: tuple[tuple[int, ...], ...]
    bplus: int
    bminus: int
    points: tuple = field(default=())

    def to_json(self) -> dict:
        out = {"kind": "ow_graph", "arms": [list(a) for a in self.arms], "bplus": self.bplus, "bminus": self.bminus}
        if self.points:
            from .polynomial import _frac_str

            out["points"] = [[_frac_str(Fraction(a)), _frac_str(Fraction(b))] for a, b in self.points]
        return out

    @classmethod
    def from_json(cls, obj) -> "OWGraph":
        from .polynomial import parse_fraction

        try:
            arms = tuple(tuple(int(b) for b in a) for a in obj["arms"])
            pts = tuple((parse_fraction(a), parse_fraction(b)) for a, b in obj.get("points", []))
            return cls(arms, int(obj["bplus"]), int(obj["bminus"]), pts)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedGraph(f"malformed ow_graph: {exc}") from exc


def _arm_columns(chain: Sequence[int], d1: int) -> tuple[list[int], list[int]]:
    ls = ow_isotropy_orders(chain)
    if ls[-1] != 0:
        raise MalformedGraph(f"arm {list(chain)} does not close up (numerator {ls[-1]})")
    ds = [-1, d1]
    for b in chain:
        ds.append(b * ds[-1] - ds[-2])
    if ds[len(chain) + 1] != 1:
        raise MalformedGraph(f"arm {list(chain)} does not close up")
    return ls[: len(chain)], ds[1 : len(chain) + 1]


def ow_to_ap(graph: OWGraph) -> APData:
    if len(graph.arms) < 2:
        raise MalformedGraph("need at least two arms")
    if any(len(a) == 0 for a in graph.arms):
        raise MalformedGraph("arms must be nonempty")
    ls, ds = [], []
    for i, chain in enumerate(graph.arms):
        l, d = _arm_columns(chain, graph.bminus if i == 0 else 0)
        if any(x < 1 for x in l):
            raise MalformedGraph(f"arm {list(chain)} has nonpositive isotropy orders")
        ls.append(tuple(l))
        ds += d
    last = sum(_arm_columns(chain, graph.bminus if i == 0 else 0)[1][-1] for i, chain in enumerate(graph.arms))
    if graph.bplus != -last:
        raise MalformedGraph(f"label of F^+ must be {-last}, got {graph.bplus}")
    pts = graph.points or default_points(len(graph.arms))
    if len(pts) != len(graph.arms):
        raise MalformedGraph("need one point per arm")
    ap = APData(len(graph.arms) - 1, tuple(len(a) for a in graph.arms), tuple(ls), 2, tuple(pts), (tuple(ds),), ((1, -1),))
    try:
        return ap.validate()
    except InvalidAPData as exc:
        raise MalformedGraph(str(exc)) from exc


def ow_to_cox(graph: OWGraph) -> GradedPresentation:
    """Cox ring of the smooth K*-surface with the given graph; S1 = S^+, S2 = S^-."""
    ap = ow_to_ap(graph)
    pres = build_rap(ap)
    names = list(pres.var_names[: ap.n]) + ["Splus", "Sminus"]
    return GradedPresentation(tuple(names), pres.group, pres.degrees, pres.relations, True, ap)
