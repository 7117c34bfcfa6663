"""Finitely generated abelian groups, integer normal forms and Gale duality.

Integer matrices are lists of rows of Python ints. A group ``Z^k + Z/d_1 + ... + Z/d_t``
has elements represented as integer vectors of length ``k + t`` whose last ``t``
coordinates are reduced modulo ``d_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from . import linalg

INFINITE = math.inf


class NotSurjective(ValueError):
    pass


class IllDefinedHom(ValueError):
    pass


def _copy(m: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(map(int, row)) for row in m]


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Return ``(U, S, V)`` with ``U*M*V == S`` diagonal, d_1 | d_2 | ..., U, V unimodular."""
    s = _copy(m)
    nr = len(s)
    nc = len(s[0]) if nr else 0
    u = linalg.identity(nr)
    v = linalg.identity(nc)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        s[dst] = [a - q * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in s:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, s, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = s[t][t]
            clean = True
            for i in range(t + 1, nr):
                if s[i][t]:
                    add_row(i, t, s[i][t] // p)
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, nc):
                if s[t][j]:
                    add_col(j, t, s[t][j] // p)
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
    return u, s, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    if not m or not m[0]:
        return []
    _, s, _ = smith_normal_form(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]))) if s[i][i] != 0]


def hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    a = _copy(rows)
    if not a:
        return []
    nc = len(a[0])
    r = 0
    for c in range(nc):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for k in range(r):
                q = a[k][c] // a[r][c]
                if q:
                    a[k] = [x - q * y for x, y in zip(a[k], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r]]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis (in Hermite normal form) of {x in Z^n : m x = 0}."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return linalg.identity(ncols)
    _, s, v = smith_normal_form(m)
    rk = sum(1 for i in range(min(len(s), ncols)) if s[i][i] != 0)
    basis = [[v[i][j] for i in range(ncols)] for j in range(rk, ncols)]
    return hnf(basis)


def lattice_contains(basis: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """Membership of ``x`` in the lattice spanned by ``basis`` (any generating set)."""
    h = hnf(basis)
    y = list(map(int, x))
    for row in h:
        c = next(i for i, e in enumerate(row) if e)
        if y[c] % row[c]:
            return False
        q = y[c] // row[c]
        y = [a - q * b for a, b in zip(y, row)]
    return not any(y)


def lattice_intersection(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite basis of the intersection of two sublattices of Z^n."""
    b1, b2 = hnf(b1), hnf(b2)
    if not b1 or not b2:
        return []
    stacked = b1 + [[-x for x in row] for row in b2]
    coeffs = integer_kernel(linalg.transpose(stacked), len(stacked))
    vecs = [[sum(c[i] * b1[i][j] for i in range(len(b1))) for j in range(len(b1[0]))] for c in coeffs]
    return hnf(vecs)


@dataclass(frozen=True)
class AbelianGroup:
    """The group Z^rank + Z/torsion[0] + ... with torsion a divisibility chain."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("negative rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion orders must be at least 2")
            if i and d % self.torsion[i - 1]:
                raise ValueError("torsion orders must form a divisibility chain")

    @property
    def length(self) -> int:
        return self.rank + len(self.torsion)

    def normalize(self, x: Sequence[int]) -> tuple[int, ...]:
        x = tuple(int(a) for a in x)
        if len(x) != self.length:
            raise ValueError(f"element of length {len(x)} in group of length {self.length}")
        return x[: self.rank] + tuple(a % d for a, d in zip(x[self.rank :], self.torsion))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.length

    def is_zero(self, x) -> bool:
        return not any(self.normalize(x))

    def add(self, x, y):
        return self.normalize([a + b for a, b in zip(x, y)])

    def scale(self, c: int, x):
        return self.normalize([c * a for a in x])

    def free_part(self, x) -> tuple[int, ...]:
        return tuple(int(a) for a in x[: self.rank])

    def relations(self) -> list[list[int]]:
        """Generators of the relation lattice inside Z^(rank + t)."""
        n = self.length
        return [[d if j == self.rank + i else 0 for j in range(n)] for i, d in enumerate(self.torsion)]

    def order(self):
        if self.rank:
            return INFINITE
        return math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def elements(self):
        """All elements of a finite group."""
        if self.rank:
            raise ValueError("infinite group")
        from itertools import product

        return [tuple(e) for e in product(*[range(d) for d in self.torsion])]

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroup":
        return cls(int(obj.get("rank", 0)), tuple(obj.get("torsion", ())))


def group_from_relations(relations: Sequence[Sequence[int]], n: int) -> AbelianGroup:
    """The group Z^n / span(relations) up to isomorphism."""
    if not relations:
        return AbelianGroup(n)
    facs = invariant_factors(relations)
    return AbelianGroup(n - len(facs), tuple(d for d in facs if d > 1))


@dataclass(frozen=True)
class GroupHom:
    source: AbelianGroup
    target: AbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(a) for a in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != self.target.length or any(len(row) != self.source.length for row in mat):
            raise ValueError("matrix shape does not match groups")
        for rel in self.source.relations():
            if not self.target.is_zero(linalg.matvec(mat, rel)):
                raise IllDefinedHom("source relation not mapped to zero")

    def __call__(self, x):
        return self.target.normalize(linalg.matvec(self.matrix, x))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.target.normalize(c) for c in zip(*self.matrix)] if self.matrix else [
            () for _ in range(self.source.length)
        ]


def cokernel(a: Sequence[Sequence[int]], nrows: int | None = None):
    """Return ``(K, proj)`` with K = Z^rows(a) / im(a) (columns of ``a`` span the image).

    ``proj`` is a GroupHom from Z^rows onto K; its free rows are in Hermite form.
    """
    if nrows is None:
        nrows = len(a)
    if not a or not a[0]:
        k = AbelianGroup(nrows)
        return k, GroupHom(AbelianGroup(nrows), k, linalg.identity(nrows))
    u, s, _ = smith_normal_form(a)
    diag = [s[i][i] if i < len(s[0]) else 0 for i in range(nrows)]
    rk = sum(1 for d in diag if d != 0)
    free_rows = hnf([u[i] for i in range(rk, nrows)])
    tors = [(diag[i], u[i]) for i in range(rk) if diag[i] > 1]
    group = AbelianGroup(len(free_rows), tuple(d for d, _ in tors))
    rows = free_rows + [[x % d for x in row] for d, row in tors]
    return group, GroupHom(AbelianGroup(nrows), group, rows)


def _as_columns(group: AbelianGroup, gens: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(group.normalize(g)) for g in gens]


def quotient_group(group: AbelianGroup, gens: Sequence[Sequence[int]]) -> AbelianGroup:
    """K / <gens> up to isomorphism."""
    rels = _as_columns(group, gens) + group.relations()
    return group_from_relations(rels, group.length)


def subgroup_index(group: AbelianGroup, gens: Sequence[Sequence[int]]):
    return quotient_group(group, gens).order()


def generates(group: AbelianGroup, gens: Sequence[Sequence[int]]) -> bool:
    return quotient_group(group, gens).is_trivial()


def element_order(group: AbelianGroup, x: Sequence[int]):
    x = group.normalize(x)
    if any(x[: group.rank]):
        return INFINITE
    o = 1
    for a, d in zip(x[group.rank :], group.torsion):
        o = math.lcm(o, d // math.gcd(a, d))
    return o


def subgroup_lattice(group: AbelianGroup, gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Preimage of <gens> in Z^(rank + t), as a Hermite basis."""
    return hnf(_as_columns(group, gens) + group.relations())


def subgroup_contains(group: AbelianGroup, gens: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    return lattice_contains(subgroup_lattice(group, gens), list(x))


def subgroup_intersection(group: AbelianGroup, gen_lists: Sequence[Sequence[Sequence[int]]]) -> list[tuple[int, ...]]:
    """Generators of the intersection of the subgroups generated by each list."""
    if not gen_lists:
        return [tuple(int(i == j) for j in range(group.length)) for i in range(group.length)]
    lat = subgroup_lattice(group, gen_lists[0])
    for gens in gen_lists[1:]:
        lat = lattice_intersection(lat, subgroup_lattice(group, gens))
    out = []
    for row in lat:
        g = group.normalize(row)
        if any(g) and g not in out:
            out.append(g)
    return out


def gale_dual(group: AbelianGroup, degrees: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rows form a basis of {v in Z^r : sum v_i w_i = 0 in K} for degrees w_1..w_r.

    Raises NotSurjective when the degrees do not generate K.
    """
    r = len(degrees)
    if not generates(group, degrees):
        raise NotSurjective("degrees do not generate the grading group")
    t = len(group.torsion)
    qmat = linalg.transpose([list(group.normalize(w)) for w in degrees]) if r else []
    if not qmat:
        return linalg.identity(r)
    aug = []
    for i, row in enumerate(qmat):
        extra = [0] * t
        if i >= group.rank:
            extra[i - group.rank] = group.torsion[i - group.rank]
        aug.append(list(row) + extra)
    ker = integer_kernel(aug, r + t)
    return hnf([row[:r] for row in ker])


def degree_matrix(group: AbelianGroup, degrees: Sequence[Sequence[int]]) -> list[list[int]]:
    return linalg.transpose([list(group.normalize(w)) for w in degrees])


def same_grading(group1: AbelianGroup, degrees1, group2: AbelianGroup, degrees2) -> bool:
    """Whether two degree maps agree up to an isomorphism of the grading groups.

    Both maps must be surjective; then they agree iff their kernels coincide.
    """
    if (group1.rank, group1.torsion) != (group2.rank, group2.torsion):
        return False
    if len(degrees1) != len(degrees2):
        return False
    try:
        return gale_dual(group1, degrees1) == gale_dual(group2, degrees2)
    except NotSurjective:
        return False


def free_basis_change(q1: Sequence[Sequence[int]], q2: Sequence[Sequence[int]]):
    """Unimodular T with T*q1 == q2 for full-rank integer matrices, or None."""
    if len(q1) != len(q2):
        return None
    if not q1:
        return []
    t_rows = []
    q1t = linalg.transpose(q1)
    for row in q2:
        sol = linalg.solve(q1t, row)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        t_rows.append([int(x) for x in sol])
    if linalg.matmul(t_rows, q1) != [list(r) for r in q2]:
        return None
    if abs(linalg.det(t_rows)) != 1:
        return None
    return t_rows


def find_variable_matching(group1, degrees1, group2, degrees2, max_vars: int = 8):
    """A permutation p with degrees2[p[i]] matching degrees1[i] up to automorphism, or None."""
    n = len(degrees1)
    if n != len(degrees2) or n > max_vars:
        return None
    target = None
    for perm in permutations(range(n)):
        permuted = [degrees2[p] for p in perm]
        if target is None:
            if (group1.rank, group1.torsion) != (group2.rank, group2.torsion):
                return None
            target = gale_dual(group1, degrees1)
        if gale_dual(group2, permuted) == target:
            return list(perm)
    return None


def fraction_vector(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)
