"""Independent reference computations used to cross-check the library.

Nothing here imports coxcalc internals: the oracles work from plain integer
matrices and polynomial strings with sympy, scipy and itertools.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

import numpy as np
import sympy
from scipy.optimize import linprog
from sympy.matrices.normalforms import smith_normal_form


def invariant_factors(rows) -> list[int]:
    """Nonzero Smith invariants via sympy."""
    if not rows or not rows[0]:
        return []
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    return [d for d in diag if d != 0]


def class_group(P) -> tuple[int, list[int]]:
    """Z^n / im(P^T) as (free rank, torsion factors > 1)."""
    n = len(P[0])
    inv = invariant_factors([list(r) for r in zip(*P)]) if P else []
    return n - len(inv), [d for d in inv if d > 1]


def integer_kernel_rank(M) -> int:
    return len(sympy.Matrix(M).nullspace())


def maximal_minor_gcd(M) -> int:
    rows = len(M)
    g = 0
    for cols in itertools.combinations(range(len(M[0])), rows):
        g = gcd(g, int(sympy.Matrix([[M[i][j] for j in cols] for i in range(rows)]).det()))
    return g


# ---------------------------------------------------------------- F-faces


def _monomial_system(relations: list[str], names: list[str]):
    """Relations as linear forms in their distinct monomials (supports must be disjoint)."""
    syms = sympy.symbols(names)
    table = dict(zip(names, syms))
    monos: list = []
    rows = []
    for text in relations:
        expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals=table))
        terms = sympy.Poly(expr, *syms).terms()
        row = {}
        for exps, coeff in terms:
            if exps not in monos:
                monos.append(exps)
            row[monos.index(exps)] = sympy.Rational(coeff)
        rows.append(row)
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monos]
    for a, b in itertools.combinations(supports, 2):
        if a & b:
            raise ValueError("monomials share variables; the span oracle does not apply")
    mat = sympy.Matrix([[row.get(k, 0) for k in range(len(monos))] for row in rows])
    return mat, supports


def brute_force_ffaces(relations: list[str], names: list[str]) -> set[tuple[int, ...]]:
    """Faces gamma0 with a point of V(relations) whose nonzero coordinates are exactly gamma0.

    A monomial in pairwise distinct variables takes every nonzero value on the torus, so
    gamma0 qualifies iff the linear system in the monomial values has a solution that is
    nonzero exactly on the monomials living in gamma0.
    """
    n = len(names)
    if not relations:
        return {f for k in range(n + 1) for f in itertools.combinations(range(n), k)}
    mat, supports = _monomial_system(relations, names)
    out = set()
    for k in range(n + 1):
        for face in itertools.combinations(range(n), k):
            fs = set(face)
            alive = [i for i, s in enumerate(supports) if s <= fs]
            if not alive:
                out.add(face)
                continue
            sub = mat[:, alive]
            basis = sub.nullspace()
            # a generic combination is nonzero in coordinate i iff some basis vector is
            if all(any(v[j] != 0 for v in basis) for j in range(len(alive))):
                out.add(face)
    return out


def cone_key_2d(vectors) -> tuple:
    """Canonical extremal rays of a pointed cone in Q^2 generated by ``vectors``."""
    prim = set()
    for v in vectors:
        if any(v):
            g = gcd(*[int(x) for x in v])
            prim.add(tuple(int(x) // g for x in v))
    if len(prim) <= 1:
        return tuple(sorted(prim))

    def cross(a, b):
        return a[0] * b[1] - a[1] * b[0]

    ext = []
    for v in prim:
        sides = {(cross(v, w) > 0) - (cross(v, w) < 0) for w in prim if w != v}
        if sides <= {0, 1} or sides <= {0, -1}:
            ext.append(v)
    return tuple(sorted(ext))


# ---------------------------------------------------------------- toric GIT fans


_CARATHEODORY: dict = {}


def _independent_subsets(gens):
    """Pseudo-inverses and residual projectors of all linearly independent subsets of ``gens``."""
    key = tuple(tuple(g) for g in gens)
    if key not in _CARATHEODORY:
        A = np.array(gens, dtype=float)
        dim = A.shape[1]
        pinvs, projs = [], []
        for k in range(1, min(len(gens), dim) + 1):
            for sub in itertools.combinations(range(len(gens)), k):
                M = A[list(sub)].T
                if np.linalg.matrix_rank(M) < k:
                    continue
                p = np.linalg.pinv(M)
                pinvs.append(np.vstack([p, np.zeros((dim - k, dim))]))
                projs.append(np.eye(dim) - M @ p)
        _CARATHEODORY[key] = (np.array(pinvs).reshape(-1, dim, dim), np.array(projs).reshape(-1, dim, dim))
    return _CARATHEODORY[key]


def _in_cone(w, gens) -> bool:
    """Caratheodory: w is a nonnegative combination of some linearly independent subset."""
    if not any(w):
        return True
    if not gens:
        return False
    pinvs, projs = _independent_subsets(gens)
    b = np.array(w, dtype=float)
    coefs = pinvs @ b
    resid = np.linalg.norm(projs @ b, axis=1)
    return bool(np.any((resid < 1e-7) & (coefs.min(axis=1) > -1e-9)))


def toric_chamber_signatures(degrees, samples: int = 400, seed: int = 0) -> set[frozenset]:
    """Full-dimensional GIT chambers of a torus action on K^n, sampled.

    Two generic weights share a chamber iff they lie in the same cones cone(w_i; i in gamma);
    a chamber is recorded as the set of such gamma.
    """
    n = len(degrees)
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    rng = random.Random(seed)
    found = set()
    for _ in range(samples):
        coeffs = [rng.uniform(0.05, 1.0) for _ in range(n)]
        w = [sum(c * d[j] for c, d in zip(coeffs, degrees)) for j in range(len(degrees[0]))]
        found.add(toric_signature(degrees, w, subsets))
    return found


def toric_signature(degrees, w, subsets=None) -> frozenset:
    n = len(degrees)
    subsets = subsets or [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    return frozenset(s for s in subsets if _in_cone(w, [degrees[i] for i in s]))


def random_unimodular(k: int, rng: random.Random, steps: int = 6) -> list[list[int]]:
    m = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(steps):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-1, 1])
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def frac(x) -> Fraction:
    return Fraction(x)


# ---------------------------------------------------------------- bunches


def _interiors_meet(u, v) -> bool:
    """Some point is a strictly positive combination of ``u`` and also of ``v``."""
    if not u and not v:
        return True
    dim = len((u or v)[0])
    cols = [list(x) for x in u] + [[-c for c in x] for x in v]
    A = np.array(cols, dtype=float).T if cols else np.zeros((dim, 0))
    res = linprog(np.zeros(len(cols)), A_eq=A, b_eq=np.zeros(dim), bounds=[(1, None)] * len(cols), method="highs")
    return res.status == 0


def _same_cone(u, v) -> bool:
    return all(_in_cone(x, v) for x in u) and all(_in_cone(x, u) for x in v)


def maximal_true_bunches(degrees, faces) -> int:
    """Number of maximal bunches of orbit cones containing every facet image, by brute force."""
    n = len(degrees)
    cones: list = []
    for f in faces:
        gens = [list(degrees[i]) for i in f]
        if not any(_same_cone(gens, c) for c in cones):
            cones.append(gens)
    k = len(cones)
    adj = {i: {j for j in range(k) if j != i and _interiors_meet(cones[i], cones[j])} for i in range(k)}
    cliques = []

    def expand(r, p, x):
        if not p and not x:
            cliques.append(r)
            return
        for v in list(p):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(range(k)), set())
    facets = []
    for i in range(n):
        gens = [list(degrees[j]) for j in range(n) if j != i]
        facets.append(next((t for t, c in enumerate(cones) if _same_cone(gens, c)), None))
    return sum(1 for c in cliques if all(f is not None and f in c for f in facets))
