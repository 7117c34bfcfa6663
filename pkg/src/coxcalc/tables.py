"""Classification tables: loading rows and recomputing their invariants."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .bunched import BunchedRingError, bunched_ring_from_chamber
from .cones import Cone
from .geometry import (
    IntersectionError,
    canonical_class,
    dimension,
    fano_gorenstein,
    intersection_number,
    picard_data_rank_one,
    stratum_singularity,
)
from .gitfan import chamber_in_moving_cone, git_cone
from .graded import Inhomogeneous
from .io import SchemaError, presentation_from_json, read_json
from .lattice import AbelianGroup, NotSurjective, cokernel, gale_dual
from .orbits import orbit_cones
from .polynomial import parse_fraction


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    ok: bool

    def to_json(self) -> dict:
        return {"check": self.name, "expected": _plain(self.expected), "computed": _plain(self.computed), "ok": self.ok}


@dataclass
class RowResult:
    row_id: str
    checks: list = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        out = {"id": self.row_id, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.error:
            out["error"] = self.error
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        bad = [c for c in self.checks if not c.ok]
        detail = "; ".join(f"{c.name}: expected {_plain(c.expected)}, computed {_plain(c.computed)}" for c in bad)
        if self.error:
            detail = self.error
        return f"{status} {self.row_id}" + (f" ({detail})" if detail else "")


def _plain(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, AbelianGroup):
        return str(x)
    return x


@dataclass
class Table:
    name: str
    title: str
    checks: tuple[str, ...]
    rows: list

    @classmethod
    def from_json(cls, obj) -> "Table":
        if obj.get("kind") != "table" or "rows" not in obj:
            raise SchemaError("expected a document of kind 'table' with rows")
        return cls(obj.get("name", ""), obj.get("title", ""), tuple(obj.get("checks", ())), list(obj["rows"]))


def load_table(path) -> Table:
    return Table.from_json(read_json(path))


def _chamber(pres, ocs):
    """The GIT chamber containing the anticanonical class, else the default chamber."""
    anti = [-x for x in pres.group.free_part(canonical_class(pres))]
    if pres.weight_cone().relative_interior_contains(anti):
        lam = git_cone(ocs, anti)
        if lam.is_full_dimensional:
            return lam
    return chamber_in_moving_cone(pres, ocs=ocs)


def verify_row(row: dict, checks: tuple[str, ...]) -> RowResult:
    res = RowResult(str(row.get("id", "?")))
    expected = row.get("expected", {})
    try:
        pres = presentation_from_json({"kind": "presentation", **row}, True)
    except Inhomogeneous as exc:
        res.checks.append(Check("homogeneous", True, False, False))
        res.error = f"inhomogeneous relation: {exc}"
        return res
    except (SchemaError, KeyError, ValueError) as exc:
        res.error = f"malformed row: {exc}"
        return res
    homog = all(pres.is_homogeneous(f) for f in pres.relations)
    res.checks.append(Check("homogeneous", True, homog, homog))
    try:
        if "Cl" in checks and "Cl" in expected:
            want = AbelianGroup.from_json(expected["Cl"])
            P = gale_dual(pres.group, pres.degrees)
            got, _ = cokernel(linalg.transpose(P), pres.nvars)
            res.checks.append(Check("Cl", want, got, (got.rank, got.torsion) == (want.rank, want.torsion)))
        ocs = orbit_cones(pres)
        br = bunched_ring_from_chamber(pres, _chamber(pres, ocs), ocs)
        if "dimension" in expected:
            res.checks.append(Check("dimension", expected["dimension"], dimension(br), dimension(br) == expected["dimension"]))
        if "locally_factorial" in checks:
            fact = all(stratum_singularity(br, f)["factorial"] for f in br.data.rlv)
            res.checks.append(Check("locally_factorial", expected.get("locally_factorial", True), fact,
                                    fact == expected.get("locally_factorial", True)))
        if "fano_inequality" in checks:
            sw = sum(w[0] for w in pres.free_degrees())
            sg = sum(pres.group.free_part(u)[0] for u in pres.relation_degrees())
            res.checks.append(Check("fano_inequality", f"{sg} < {sw}", sg < sw, sg < sw))
        fg = fano_gorenstein(br)
        if "fano" in checks:
            res.checks.append(Check("fano", expected.get("fano", True), fg["fano"], fg["fano"] == expected.get("fano", True)))
        if "gorenstein" in checks:
            want = expected.get("gorenstein", True)
            res.checks.append(Check("gorenstein", want, fg["gorenstein"], fg["gorenstein"] == want))
        if "anticanonical_degree" in checks:
            want = Fraction(parse_fraction(expected["anticanonical_degree"]))
            formula = picard_data_rank_one(br)["anticanonical_degree"]
            anti = [-x for x in pres.group.free_part(canonical_class(pres))]
            via_form = intersection_number(br, [anti] * dimension(br))
            res.checks.append(Check("anticanonical_degree", want, formula, formula == want))
            res.checks.append(Check("anticanonical_degree_intersection", want, via_form, via_form == want))
    except (BunchedRingError, IntersectionError, NotSurjective, ValueError) as exc:
        res.error = f"{type(exc).__name__}: {exc}"
    return res


def _verify_job(args):
    row, checks = args
    return verify_row(row, checks)


def verify_table(table: Table, jobs: int | None = None) -> list[RowResult]:
    """Recompute every row; rows run in worker processes when ``jobs`` > 1."""
    jobs = jobs if jobs is not None else min(len(table.rows), os.cpu_count() or 1)
    work = [(row, table.checks) for row in table.rows]
    if jobs <= 1 or len(work) <= 1:
        return [_verify_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_job, work))
