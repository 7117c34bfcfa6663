"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Terms are (exponent vector, coefficient) pairs sorted by exponent, descending."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    def __post_init__(self):
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms:
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars:
                raise ValueError("exponent vector of wrong length")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0), reverse=True))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_dict(cls, nvars: int, d: Mapping) -> "Polynomial":
        return cls(nvars, tuple(d.items()))

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exps), ((tuple(exps), Fraction(coeff)),))

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, (((0,) * nvars, Fraction(c)),))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.nvars, self.terms + other.terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(self.nvars, tuple((e, c * Fraction(other)) for e, c in self.terms))
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return Polynomial(self.nvars, tuple(out))

    __rmul__ = __mul__

    def exponents(self) -> list[tuple[int, ...]]:
        return [e for e, _ in self.terms]

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.terms]

    def variables(self) -> list[int]:
        return sorted({i for e, _ in self.terms for i, x in enumerate(e) if x})

    def map_exponents(self, fn: Callable[[tuple[int, ...]], Sequence[int]], nvars: int) -> "Polynomial":
        return Polynomial(nvars, tuple((tuple(fn(e)), c) for e, c in self.terms))

    def substitute(self, values: Mapping[int, object]) -> "Polynomial":
        """Substitute constants for some variables (variable count unchanged)."""
        out = []
        for e, c in self.terms:
            e2 = list(e)
            for i, v in values.items():
                if e2[i]:
                    c = c * Fraction(v) ** e2[i]
                    e2[i] = 0
            out.append((tuple(e2), c))
        return Polynomial(self.nvars, tuple(out))

    def restrict_zero(self, zero_vars) -> "Polynomial":
        """Terms not involving any of ``zero_vars`` (the polynomial with those set to 0)."""
        zs = set(zero_vars)
        return Polynomial(self.nvars, tuple((e, c) for e, c in self.terms if not any(e[i] for i in zs)))

    def common_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def normalized(self) -> "Polynomial":
        """Scaled so that the leading coefficient is 1."""
        if not self.terms:
            return self
        return self * (1 / self.terms[0][1])

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"{names[i]}^{x}" if x > 1 else names[i] for i, x in enumerate(e) if x)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict:
        return {"terms": [{"c": _frac_str(c), "e": list(e)} for e, c in self.terms]}

    @classmethod
    def from_json(cls, obj, nvars: int) -> "Polynomial":
        return cls(nvars, tuple((tuple(t["e"]), parse_fraction(t["c"])) for t in obj["terms"]))


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        raise ParseError("floats are not accepted; use 'p/q' strings")
    return Fraction(str(x).strip())


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def parse_polynomial(text: str, names: Sequence[str], params: Mapping[str, object] | None = None) -> Polynomial:
    """Parse sums of products such as ``'T1*T2^3 - 2*T3^2 + lambda*T4'``."""
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    index = {n: i for i, n in enumerate(names)}
    tokens = []
    for num, ident, op in _TOKEN.findall(text):
        if num:
            tokens.append(("num", int(num)))
        elif ident:
            tokens.append(("id", ident))
        elif op.strip():
            tokens.append(("op", op))
    pos = 0
    nv = len(names)

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def factor():
        kind, val = take()
        if kind == "num":
            c = Fraction(val)
            if peek() == ("op", "/"):
                take()
                k2, v2 = take()
                if k2 != "num":
                    raise ParseError("expected denominator")
                c /= v2
            return Polynomial.constant(nv, c)
        if kind == "id":
            exp = 1
            if peek() == ("op", "^"):
                take()
                k2, v2 = take()
                if k2 != "num":
                    raise ParseError("expected exponent")
                exp = v2
            if val in index:
                e = [0] * nv
                e[index[val]] = exp
                return Polynomial.monomial(e)
            if val in params:
                return Polynomial.constant(nv, params[val] ** exp)
            raise ParseError(f"unknown symbol {val!r}")
        raise ParseError(f"unexpected token {val!r}")

    def term():
        p = factor()
        while peek() == ("op", "*"):
            take()
            p = p * factor()
        return p

    sign = 1
    if peek() in (("op", "-"), ("op", "+")):
        sign = -1 if take()[1] == "-" else 1
    total = term() * sign
    while pos < len(tokens):
        kind, val = take()
        if kind != "op" or val not in "+-":
            raise ParseError(f"unexpected token {val!r}")
        t = term()
        total = total + t if val == "+" else total - t
    return total
