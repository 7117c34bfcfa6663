"""Graded presentations, the trinomial rings R(A,P) and their algebraic criteria."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cones import Cone
from .lattice import AbelianGroup, cokernel, gale_dual, generates
from .polynomial import Polynomial


class Inhomogeneous(ValueError):
    pass


class InvalidAPData(ValueError):
    pass


class UnsupportedRing(ValueError):
    pass


@dataclass(frozen=True)
class GradedPresentation:
    """Variables with degrees in a group K and a list of K-homogeneous relations."""

    var_names: tuple[str, ...]
    group: AbelianGroup
    degrees: tuple[tuple[int, ...], ...]
    relations: tuple[Polynomial, ...] = ()
    k_prime_trusted: bool = False
    ap: "APData | None" = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "degrees", tuple(self.group.normalize(w) for w in self.degrees))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(self.degrees) != len(self.var_names):
            raise ValueError("number of degrees differs from number of variables")
        for f in self.relations:
            if f.nvars != len(self.var_names):
                raise ValueError("relation has wrong number of variables")
            self.degree_of(f)

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def degree_of(self, p: Polynomial) -> tuple[int, ...]:
        degs = {self.monomial_degree(e) for e in p.exponents()}
        if len(degs) > 1:
            raise Inhomogeneous(f"{p.to_string(self.var_names)} is not homogeneous")
        return degs.pop() if degs else self.group.zero()

    def monomial_degree(self, e: Sequence[int]) -> tuple[int, ...]:
        total = [0] * self.group.length
        for x, w in zip(e, self.degrees):
            if x:
                total = [a + x * b for a, b in zip(total, w)]
        return self.group.normalize(total)

    def is_homogeneous(self, p: Polynomial) -> bool:
        try:
            self.degree_of(p)
            return True
        except Inhomogeneous:
            return False

    def relation_degrees(self) -> list[tuple[int, ...]]:
        return [self.degree_of(f) for f in self.relations]

    def free_degrees(self) -> list[tuple[int, ...]]:
        """Degrees as vectors of the rational vector space K_Q."""
        return [self.group.free_part(w) for w in self.degrees]

    def degree_matrix(self) -> list[list[int]]:
        return linalg.transpose([list(w) for w in self.degrees]) if self.degrees else []

    def gale_dual(self) -> list[list[int]]:
        return gale_dual(self.group, self.degrees)

    def weight_cone(self) -> Cone:
        return Cone.hull(self.free_degrees(), self.group.rank)

    def var_index(self, name: str) -> int:
        return self.var_names.index(name)

    def with_trust(self, trusted: bool = True) -> "GradedPresentation":
        return GradedPresentation(self.var_names, self.group, self.degrees, self.relations, trusted, self.ap)

    def describe(self) -> str:
        lines = [f"K = {self.group}"]
        for n, w in zip(self.var_names, self.degrees):
            lines.append(f"  deg {n} = {list(w)}")
        for f in self.relations:
            lines.append(f"  {f.to_string(self.var_names)} = 0")
        return "\n".join(lines)


def degree_of(p: Polynomial, pres: GradedPresentation):
    return pres.degree_of(p)


def is_homogeneous(p: Polynomial, pres: GradedPresentation) -> bool:
    return pres.is_homogeneous(p)


@dataclass(frozen=True)
class BlockStructure:
    """Relations that are linear combinations of monomials in pairwise disjoint variable blocks."""

    blocks: tuple[tuple[int, ...], ...]
    exponents: tuple[tuple[int, ...], ...]
    coefficients: tuple[tuple[Fraction, ...], ...]
    free_vars: tuple[int, ...]

    @property
    def kernel(self) -> list[list[Fraction]]:
        return linalg.nullspace([list(r) for r in self.coefficients], len(self.blocks))

    @property
    def is_trinomial_chain(self) -> bool:
        """Monomial values form a plane of pairwise independent points (the R(A,P) shape)."""
        ker = self.kernel
        if len(ker) != 2 or len(self.blocks) < 3:
            return False
        pts = [(ker[0][i], ker[1][i]) for i in range(len(self.blocks))]
        return all(
            pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0] != 0
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        )


def block_structure(pres: GradedPresentation) -> BlockStructure | None:
    monos: list[tuple[int, ...]] = []
    for f in pres.relations:
        for e in f.exponents():
            if e not in monos:
                monos.append(e)
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in monos]
    if any(not s for s in supports):
        return None
    for i in range(len(supports)):
        for j in range(i + 1, len(supports)):
            if supports[i] & supports[j]:
                return None
    order = sorted(range(len(monos)), key=lambda i: min(supports[i]))
    monos = [monos[i] for i in order]
    supports = [supports[i] for i in order]
    coeffs = tuple(tuple(f.as_dict().get(e, Fraction(0)) for e in monos) for f in pres.relations)
    used = set().union(*supports) if supports else set()
    return BlockStructure(
        tuple(tuple(sorted(s)) for s in supports),
        tuple(monos),
        coeffs,
        tuple(i for i in range(pres.nvars) if i not in used),
    )


# ---------------------------------------------------------------- R(A,P)


def _det2(a, b) -> Fraction:
    return Fraction(a[0]) * Fraction(b[1]) - Fraction(a[1]) * Fraction(b[0])


@dataclass(frozen=True)
class APData:
    """Defining data (A, P) of a trinomial ring R(A,P)."""

    r: int
    ns: tuple[int, ...]
    ls: tuple[tuple[int, ...], ...]
    m: int
    A: tuple[tuple[Fraction, Fraction], ...]
    d: tuple[tuple[int, ...], ...]
    dprime: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ns", tuple(int(x) for x in self.ns))
        object.__setattr__(self, "ls", tuple(tuple(int(x) for x in row) for row in self.ls))
        object.__setattr__(self, "A", tuple((Fraction(a), Fraction(b)) for a, b in self.A))
        object.__setattr__(self, "d", tuple(tuple(int(x) for x in row) for row in self.d))
        dp = tuple(tuple(int(x) for x in row) for row in self.dprime)
        if not dp and self.m == 0:
            dp = tuple(() for _ in self.d)
        object.__setattr__(self, "dprime", dp)

    @property
    def s(self) -> int:
        return len(self.d)

    @property
    def n(self) -> int:
        return sum(self.ns)

    def column_index(self, i: int, j: int) -> int:
        """Column of T_ij (j counted from 0)."""
        return sum(self.ns[:i]) + j

    def var_names(self) -> list[str]:
        wide = max(self.ns, default=0) > 9 or self.r > 9
        names = []
        for i, n in enumerate(self.ns):
            for j in range(n):
                names.append(f"T{i}_{j + 1}" if wide else f"T{i}{j + 1}")
        names += [f"S{k + 1}" for k in range(self.m)]
        return names

    def l_part(self) -> list[list[int]]:
        """The r x (n+m) block rows built from the exponent vectors."""
        rows = []
        for i in range(1, self.r + 1):
            row = []
            for k, blk in enumerate(self.ls):
                if k == 0:
                    row += [-x for x in blk]
                elif k == i:
                    row += list(blk)
                else:
                    row += [0] * len(blk)
            rows.append(row + [0] * self.m)
        return rows

    def P(self) -> list[list[int]]:
        return self.l_part() + [list(dr) + list(dpr) for dr, dpr in zip(self.d, self.dprime)]

    def P0(self) -> list[list[int]]:
        return [row[: self.n] for row in self.l_part()]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in zip(*self.P())]

    def validate(self) -> "APData":
        if self.r < 1:
            raise InvalidAPData("r must be at least 1")
        if len(self.ns) != self.r + 1 or len(self.ls) != self.r + 1:
            raise InvalidAPData("need r+1 blocks")
        for n, blk in zip(self.ns, self.ls):
            if n < 1 or len(blk) != n:
                raise InvalidAPData("block sizes do not match ns")
            if any(x < 1 for x in blk):
                raise InvalidAPData("exponents l_ij must be positive")
        if len(self.A) != self.r + 1:
            raise InvalidAPData("need r+1 points a_i")
        for i in range(len(self.A)):
            for j in range(i + 1, len(self.A)):
                if _det2(self.A[i], self.A[j]) == 0:
                    raise InvalidAPData(f"points a_{i} and a_{j} are linearly dependent")
        if self.m < 0:
            raise InvalidAPData("m must be nonnegative")
        if self.s < 1:
            raise InvalidAPData("s must be positive")
        if any(len(row) != self.n for row in self.d) or any(len(row) != self.m for row in self.dprime):
            raise InvalidAPData("d or d' has the wrong shape")
        if not self.s < self.n + self.m - self.r:
            raise InvalidAPData("need s < n + m - r")
        cols = self.columns()
        if len(set(cols)) != len(cols):
            raise InvalidAPData("columns of P are not pairwise distinct")
        for c in cols:
            if math.gcd(*c) != 1:
                raise InvalidAPData(f"column {list(c)} is not primitive")
        dim = self.r + self.s
        if Cone.hull(cols, dim).lineality.__len__() != dim:
            raise InvalidAPData("columns of P do not generate the whole space as a cone")
        return self

    def alpha(self, i: int, j: int) -> Fraction:
        return _det2(self.A[i], self.A[j])

    def to_json(self) -> dict:
        from .polynomial import _frac_str

        return {
            "kind": "ap_data",
            "r": self.r,
            "ns": list(self.ns),
            "ls": [list(b) for b in self.ls],
            "m": self.m,
            "s": self.s,
            "A": [[_frac_str(a), _frac_str(b)] for a, b in self.A],
            "d": [list(r) for r in self.d],
            "dprime": [list(r) for r in self.dprime],
        }

    @classmethod
    def from_json(cls, obj) -> "APData":
        from .polynomial import parse_fraction

        try:
            r = int(obj["r"])
            ap = cls(
                r,
                tuple(obj["ns"]),
                tuple(tuple(b) for b in obj["ls"]),
                int(obj.get("m", 0)),
                tuple((parse_fraction(a), parse_fraction(b)) for a, b in obj["A"]),
                tuple(tuple(row) for row in obj["d"]),
                tuple(tuple(row) for row in obj.get("dprime", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidAPData(f"malformed ap_data: {exc}") from exc
        if "s" in obj and int(obj["s"]) != ap.s:
            raise InvalidAPData("s does not match the number of rows of d")
        return ap


def trinomials(A, ls, ns_offsets, nvars: int) -> list[Polynomial]:
    """Relations g_i = g_{i,i+1,i+2} for i = 0..r-2 over the given blocks."""

    def mono(i):
        e = [0] * nvars
        for j, l in enumerate(ls[i]):
            e[ns_offsets[i] + j] = l
        return Polynomial.monomial(e)

    rels = []
    for i in range(len(A) - 2):
        j, k = i + 1, i + 2
        g = mono(i) * _det2(A[j], A[k]) + mono(j) * _det2(A[k], A[i]) + mono(k) * _det2(A[i], A[j])
        rels.append(g)
    return rels


def build_rap(ap: APData, k_prime_trusted: bool = True) -> GradedPresentation:
    """The K-graded algebra R(A,P) with K = Z^(n+m) / im(P^T)."""
    ap.validate()
    P = ap.P()
    group, proj = cokernel(linalg.transpose(P), ap.n + ap.m)
    degrees = proj.columns()
    offsets = [sum(ap.ns[:i]) for i in range(ap.r + 1)]
    rels = trinomials(ap.A, ap.ls, offsets, ap.n + ap.m)
    return GradedPresentation(tuple(ap.var_names()), group, tuple(degrees), tuple(rels), k_prime_trusted, ap)


def is_sincere(ap: APData) -> bool:
    return ap.r >= 2 and all(n * l > 1 for n, blk in zip(ap.ns, ap.ls) for l in blk)


def is_ufd(ap: APData) -> bool:
    """Pairwise coprimality of the block gcds."""
    g = [math.gcd(*blk) for blk in ap.ls]
    return all(math.gcd(g[i], g[j]) == 1 for i in range(len(g)) for j in range(i + 1, len(g)))


def ufd_by_torsion(ap: APData) -> bool:
    """Torsion-freeness of Z^r / im(P0)."""
    group, _ = cokernel(ap.P0(), ap.r)
    return not group.torsion


def is_almost_free(pres: GradedPresentation) -> bool:
    degs = list(pres.degrees)
    return all(generates(pres.group, degs[:i] + degs[i + 1 :]) for i in range(len(degs)))


def cox_ring_complexity_one(points, ls, m: int = 0, group: AbelianGroup | None = None, degrees=None) -> GradedPresentation:
    """Trinomial relations for points a_i = [b_i, c_i] of P^1 and blocks l_ij.

    Without a grading the trivial group is used.
    """
    pts = [(Fraction(b), Fraction(c)) for b, c in points]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if _det2(pts[i], pts[j]) == 0:
                raise ValueError(f"points {i} and {j} coincide in P^1")
    ns = [len(b) for b in ls]
    nvars = sum(ns) + m
    offsets = [sum(ns[:i]) for i in range(len(ns))]
    wide = max(ns, default=0) > 9 or len(ns) > 10
    names = [f"T{i}_{j + 1}" if wide else f"T{i}{j + 1}" for i, n in enumerate(ns) for j in range(n)]
    names += [f"S{k + 1}" for k in range(m)]
    rels = trinomials(pts, ls, offsets, nvars)
    if group is None:
        group, degrees = AbelianGroup(0), [()] * nvars
    return GradedPresentation(tuple(names), group, tuple(tuple(w) for w in degrees), tuple(rels), True)


def ow_isotropy_orders(chain: Sequence[int]) -> list[int]:
    """Numerators l_1, ..., l_{n+1} of the continued fractions b_1 - 1/(b_2 - ... - 1/b_{j-1})."""
    prev, cur = 0, 1
    out = [cur]
    for b in chain:
        prev, cur = cur, b * cur - prev
        out.append(cur)
    return out


def continued_fraction_numerator(chain: Sequence[int]) -> int:
    """Numerator (in lowest terms, up to sign) of b_1 - 1/(b_2 - ... - 1/b_n)."""
    if not chain:
        return 1
    value = Fraction(chain[-1])
    for b in reversed(chain[:-1]):
        value = b - 1 / value if value != 0 else None
        if value is None:
            raise ZeroDivisionError("continued fraction is undefined")
    return value.numerator
