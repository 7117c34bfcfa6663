"""Acceptance criteria; each test prints one PASS/FAIL line."""

import pytest

import oracles
import test_cones
import test_geometry
import test_graded
import test_lattice
from coxcalc.bunched import bunched_ring_from_chamber, enumerate_maximal_true_bunches
from coxcalc.cones import Cone, validate_quasifan
from coxcalc.geometry import (
    canonical_class,
    dimension,
    divisor_cones,
    intersection_number,
    local_class_group,
    picard_group,
    stratum_singularity,
)
from coxcalc.gitfan import describe_semistable, enumerate_gitfan, semistable_pattern
from coxcalc.graded import build_rap, continued_fraction_numerator
from coxcalc.lattice import AbelianGroup, free_basis_change, same_grading
from coxcalc.modifications import (
    OWGraph,
    ade_match,
    ap_surface_fan,
    bunched_ring_from_fan,
    intersection_matrix,
    kstar_resolve,
    modify,
    ow_to_ap,
    ow_to_cox,
    resolved_bunched_ring,
    self_intersections,
)
from coxcalc.orbits import orbit_cones
from coxcalc.tables import load_table, verify_table
from helpers import DELPEZZO_DEGREES, EXAMPLES, K6_DEGREES, TABLES, example
from test_modifications import P_TILDE, Q_TILDE


class Criterion:
    def __init__(self, number, title, capsys):
        self.number, self.title, self.capsys = number, title, capsys
        self.failed = []

    def check(self, label, ok):
        if not ok:
            self.failed.append(label)

    def finish(self):
        status = "FAIL" if self.failed else "PASS"
        line = f"{status} criterion {self.number}: {self.title}"
        if self.failed:
            line += " (failed: " + "; ".join(self.failed) + ")"
        with self.capsys.disabled():
            print("\n" + line)
        assert not self.failed, line


def w(*idx):
    return Cone.hull([DELPEZZO_DEGREES[i - 1] for i in idx], 2)


def test_criterion_1_delpezzo(capsys):
    c = Criterion(1, "singular del Pezzo pipeline", capsys)
    pres = example("delpezzo").pres
    ocs = orbit_cones(pres)
    listed = {Cone.hull([], 2), w(1), w(2), w(4), w(5), w(1, 4), w(2, 4), w(1, 5), w(2, 5)}
    found = set(ocs.cones)
    c.check(f"exactly 9 orbit cones as listed (found {len(found)}, extra "
            f"{sorted(x.rays for x in found - listed)}, missing {sorted(x.rays for x in listed - found)})",
            found == listed)
    bunches = enumerate_maximal_true_bunches(pres, ocs)
    c.check("one maximal true bunch", len(bunches) == 1)
    tau = w(2, 5)
    c.check("minimal member cone(w2,w5)", [ocs.cones[i] for i in bunches[0].minimal_members()] == [tau])
    br = bunched_ring_from_chamber(pres, tau, ocs)
    c.check("dim 2", dimension(br) == 2)
    bad = [f for f in br.data.rlv if not stratum_singularity(br, f)["factorial"]]
    c.check("non-factorial stratum cone(e2,e5)", bad == [(1, 4)])
    c.check("local class group Z/3", local_class_group(br, (1, 4)) == AbelianGroup(0, (3,)))
    c.check("Pic index 3", picard_group(br).index == 3)
    c.check("Ample = cone(w2,w5)", divisor_cones(br).ample == tau)
    k = canonical_class(br)
    c.check("K_X = -3 w3", k == (0, -3))
    c.check("K_X^2 = 6", intersection_number(br, [k, k]) == 6)
    c.finish()


def test_criterion_2_fano_threefolds(capsys):
    c = Criterion(2, "Fano threefold table", capsys)
    (path,) = [p for p in TABLES if p.stem == "fano3folds"]
    table = load_table(path)
    results = verify_table(table, jobs=1)
    c.check("9 rows", len(results) == 9)
    for r in results:
        c.check(r.line(), r.passed)
        names = {x.name for x in r.checks}
        c.check(f"{r.row_id} runs all checks",
                {"homogeneous", "locally_factorial", "fano_inequality", "anticanonical_degree"} <= names)
    degrees = [next(x.computed for x in r.checks if x.name == "anticanonical_degree") for r in results]
    c.check(f"degrees {degrees}", degrees == [8, 8, 8, 54, 24, 4, 16, 2, 2])
    c.finish()


def test_criterion_3_e6_cubic(capsys):
    c = Criterion(3, "E6 singular cubic", capsys)
    doc = example("e6_cubic")
    pres = build_rap(doc.ap)
    names = list(pres.var_names)
    c.check("relation T01T02^3+T11^3+T21^2",
            pres.relations[0].to_string(names) == "T01*T02^3 + T11^3 + T21^2")
    c.check("degrees (3,1,2,3)", same_grading(pres.group, pres.degrees, AbelianGroup(1), [(3,), (1,), (2,), (3,)]))
    res = kstar_resolve(doc.ap)
    rnames = res.pres.var_names
    c.check("resolved relation",
            res.pres.relations[0].to_string(rnames) == "T01*T02^3*T03^2*T04 + T11^3*T12^2*T13 + T21^2*T22")
    c.check("10 generators", res.pres.nvars == 10)
    c.check("P matches", [list(r) for r in res.ap.P()] == P_TILDE)
    ours = [list(r) for r in zip(*res.pres.degrees)]
    c.check("Q unimodularly equivalent", free_basis_change(ours, Q_TILDE) is not None)
    singular = bunched_ring_from_fan(pres, ap_surface_fan(doc.ap))
    c.check("Pic index 3", picard_group(singular).index == 3)
    selfs = self_intersections(res)
    c.check("six -2 curves", len(selfs) == 6 and set(selfs.values()) == {-2})
    c.check("graph E6", ade_match(intersection_matrix(resolved_bunched_ring(res), res.exceptional)) == "E6")
    c.finish()


def test_criterion_4_modification(capsys):
    c = Criterion(4, "ambient modification of P(2,1,1,1)", capsys)
    doc = example("p2_modification")
    res = modify(doc.pres, doc.modification)
    names = res.pres.var_names
    c.check("v_inf = 3v1+v2+2v3", res.spec.coefficients == (3, 1, 2) and res.spec.center == (0, 1, 2))
    c.check("f1 = T1 Tinf + T2^2 + T3 T4", res.pres.relations[0].to_string(names) == "T1*Tinf + T2^2 + T3*T4")
    dp = example("delpezzo").pres
    # renaming T1..T5 of the del Pezzo ring to Tinf, T1, T2, T3, T4
    order = [4, 0, 1, 2, 3]
    c.check("grading matches", same_grading(dp.group, dp.degrees, res.pres.group, [res.pres.degrees[i] for i in order]))
    renamed = res.pres.relations[0].map_exponents(lambda e: tuple(e[i] for i in order), 5)
    c.check("relation matches", renamed.normalized() == dp.relations[0].normalized())
    c.finish()


def test_criterion_5_git_fans(capsys):
    c = Criterion(5, "GIT fans", capsys)
    expected = {
        "k2_hyperbolic": (["K^2", "K^2 \\ V(T1)", "K^2 \\ V(T2)"], [(), ((-1,),), ((1,),)]),
        "k2_parabolic": (["K^2", "K^2 \\ V(T2)"], None),
        "k2_elliptic": (["K^2", "K^2 \\ V(T1, T2)"], None),
    }
    for name, (texts, rays) in expected.items():
        pres = example(name).pres
        ocs = orbit_cones(pres)
        fan = enumerate_gitfan(ocs)
        got = [describe_semistable(pres, semistable_pattern(ocs, x)) for x in fan.cones]
        c.check(f"{name} semistable {got}", got == texts)
        if rays is not None:
            c.check(f"{name} cones", [x.rays for x in fan.cones] == rays)
    pres = example("k6_torus3").pres
    fan = enumerate_gitfan(orbit_cones(pres))
    try:
        validate_quasifan(fan.cones)
        c.check("K6 quasifan", True)
    except Exception as exc:
        c.check(f"K6 quasifan ({exc})", False)
    sigs = oracles.toric_chamber_signatures(K6_DEGREES, samples=3000)
    mine = {oracles.toric_signature(K6_DEGREES, [float(x) for x in ch.interior_point()]) for ch in fan.chamber_cones()}
    c.check("K6 chambers match oracle", mine == sigs and len(fan.chambers) == len(sigs))
    c.finish()


def test_criterion_6_gorenstein_tables(capsys):
    c = Criterion(6, "Gorenstein del Pezzo tables", capsys)
    total = 0
    for path in [p for p in TABLES if p.stem.startswith("gorenstein")]:
        table = load_table(path)
        c.check(f"{table.name} checks", {"homogeneous", "Cl", "gorenstein", "fano"} <= set(table.checks))
        for row in table.rows:
            if len(row["relations"]) > 1:
                c.check(f"{row['id']} lambda = 2", row.get("params") == {"lambda": 2})
        for r in verify_table(table, jobs=1):
            total += 1
            c.check(r.line(), r.passed)
    c.check(f"rows checked {total}", total >= 31)
    c.finish()


def test_criterion_7_property_suites(capsys):
    c = Criterion(7, "property suites", capsys)
    dp = example("delpezzo").pres
    dp_br = bunched_ring_from_chamber(dp, w(2, 5))
    k6 = example("k6_torus3").pres
    from coxcalc.gitfan import chamber_in_moving_cone

    k6_br = bunched_ring_from_chamber(k6, chamber_in_moving_cone(k6))
    runs = [
        ("SNF round trip", test_lattice.test_snf_round_trip, ()),
        ("Gale exactness", test_lattice.test_gale_duality_is_exact, ()),
        ("V/H round trip", test_cones.test_v_h_round_trip, ()),
        ("F-face criterion vs span oracle", test_graded.test_fface_criterion_matches_span_oracle, ()),
        ("UFD vs torsion", test_graded.test_ufd_criterion_matches_torsion, ()),
        ("bilinear intersection form", test_geometry.test_intersection_form_is_symmetric_bilinear, (dp_br,)),
        ("trilinear intersection form", test_geometry.test_intersection_form_is_symmetric_trilinear, (k6_br,)),
    ]
    runs += [(f"cone chain {p.stem}", test_geometry.test_divisor_cone_chain, (p,))
             for p in test_geometry.BUNCHED_EXAMPLES]
    for label, fn, args in runs:
        try:
            fn(*args)
            c.check(label, True)
        except Exception as exc:
            c.check(f"{label} ({type(exc).__name__})", False)
    c.check("cone chain covers every bunched example",
            len(test_geometry.BUNCHED_EXAMPLES) == len(EXAMPLES) - 2)
    c.finish()


def test_criterion_8_orlik_wagreich(capsys):
    c = Criterion(8, "Orlik-Wagreich graphs", capsys)
    for chain, value in (([2], 2), ([2, 2], 3), ([3, 2], 5)):
        c.check(f"numerator {chain}", continued_fraction_numerator(chain) == value)
    graph = OWGraph(((1, 1), (1, 1), (1, 1)), -3, 0)
    ap = ow_to_ap(graph)
    ow = ow_to_cox(graph)
    ref = build_rap(ap)
    c.check("three arms", ap.r + 1 == 3)
    c.check("same grading", same_grading(ow.group, ow.degrees, ref.group, ref.degrees))
    c.check("same relations", [f.normalized() for f in ow.relations] == [f.normalized() for f in ref.relations])
    c.finish()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
