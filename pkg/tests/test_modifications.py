from fractions import Fraction

import pytest

import oracles
from coxcalc import linalg
from coxcalc.cones import Fan
from coxcalc.graded import build_rap
from coxcalc.lattice import AbelianGroup, find_variable_matching, free_basis_change, same_grading
from coxcalc.modifications import (
    CenterNotInFan,
    MalformedGraph,
    ModificationSpec,
    NotAdmissible,
    OWGraph,
    admissible,
    ade_match,
    contract,
    intersection_matrix,
    is_smooth_surface_fan,
    kstar_resolve,
    modify,
    ow_to_ap,
    ow_to_cox,
    prime_test,
    resolved_bunched_ring,
    self_intersections,
    transform_relation,
)
from coxcalc.polynomial import parse_polynomial
from helpers import DELPEZZO_DEGREES, example

NAMES = ["T1", "T2", "T3", "T4"]

P_TILDE = [
    [-1, -3, -2, -1, 3, 2, 1, 0, 0, 0],
    [-1, -3, -2, -1, 0, 0, 0, 2, 1, 0],
    [-1, -2, -1, 0, 1, 1, 1, 1, 1, 1],
]
Q_TILDE = [
    [-1, 1, -1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, -1, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, -1, 0, 1, 0, 1, 0, 0],
    [0, 0, -1, 0, -1, 0, 1, -1, 0, 0],
    [1, 0, 0, 0, 0, 1, -1, 0, 1, 0],
    [-1, 0, 0, 0, -1, 1, 0, 0, -1, 0],
    [1, 0, 0, -1, 0, 0, 0, 0, 0, 1],
]


def poly(text):
    return parse_polynomial(text, NAMES)


def test_prime_test():
    assert prime_test(poly("T1^2 + T2^3")) is True
    assert prime_test(poly("T1^2 + T2^2")) is False
    assert prime_test(poly("T1^2 + T2^2"), torsion_free=False) is None
    assert prime_test(poly("T1*T2 + T1*T3")) is False
    assert prime_test(poly("T1*T2 + T3^2 + T4")) is True
    assert prime_test(poly("T1*T2 + T2*T3 + T4")) is None
    assert prime_test(poly("T3")) is True
    assert prime_test(poly("T3^2")) is False


def test_p2_modification_gives_delpezzo():
    doc = example("p2_modification")
    res = modify(doc.pres, doc.modification)
    names = res.pres.var_names
    assert res.vinf == (3, 1, 2) and res.index == 1
    assert res.admissibility.status is True and res.admissibility.k0 == 2
    assert res.pres.relations[0].to_string(names) == "T1*Tinf + T2^2 + T3*T4"
    dp = example("delpezzo").pres
    assert res.pres.group == AbelianGroup(2)
    # Tinf,T1,T2,T3,T4 play the roles of T1..T5 of the del Pezzo presentation
    order = [4, 0, 1, 2, 3]
    assert same_grading(dp.group, dp.degrees, res.pres.group, [res.pres.degrees[i] for i in order])
    assert find_variable_matching(AbelianGroup(2), DELPEZZO_DEGREES, res.pres.group, res.pres.degrees) is not None


def test_transform_and_contract():
    f0 = poly("T1 + T2^2 + T3*T4")
    spec = ModificationSpec((0, 1, 2), (3, 1, 2))
    f1 = transform_relation(f0, spec)
    assert f1.to_string(NAMES + ["Tinf"]) == "T1*Tinf + T2^2 + T3*T4"
    assert contract(f1) == f0
    with pytest.raises(NotAdmissible):
        transform_relation(f0, spec, minf=2)


def test_admissibility_failures():
    f0 = poly("T1 + T2^2 + T3*T4")
    # weights (1, 1) on T1, T2 leave only T3*T4 in degree 0
    adm = admissible(f0, ModificationSpec((0, 1), (1, 1)))
    assert adm.k0 == 0 and adm.status is False
    assert not adm.orbit_meets and adm.prime is False
    pres = example("p2_modification").pres
    with pytest.raises(NotAdmissible):
        modify(pres, ModificationSpec((0, 1), (1, 1)))
    cert = adm.certificate(NAMES)
    assert cert["status"] == "not admissible" and cert["g_k0"] == "T3*T4"


def test_existing_ray_is_unchanged_and_center_checked():
    fan = Fan(((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
    from coxcalc.io import toric_presentation

    pres = toric_presentation(fan)
    res = modify(pres, ModificationSpec((0,), (2,)), fan)
    assert res.unchanged and res.pres is pres
    blown = modify(pres, ModificationSpec((0, 1), (1, 1)), fan)
    assert blown.pres.nvars == 4 and len(blown.fan.max_cones) == 4
    assert is_smooth_surface_fan(blown.fan)
    with pytest.raises(CenterNotInFan):
        modify(pres, ModificationSpec((0, 1, 2), (1, 1, 1)), fan)
    p1p1 = Fan(((1, 0), (-1, 0), (0, 1), (0, -1)), ((0, 2), (0, 3), (1, 2), (1, 3)))
    with pytest.raises(CenterNotInFan):
        modify(toric_presentation(p1p1), ModificationSpec((0, 1), (1, 2)), p1p1)


def test_a2_resolution():
    res = kstar_resolve(example("a2_delpezzo").ap)
    assert [s.modify_check for s in res.steps] == ["agrees"] * len(res.steps)
    assert len(res.steps) == 2
    assert is_smooth_surface_fan(res.fan)
    br = resolved_bunched_ring(res)
    mat = intersection_matrix(br, res.exceptional)
    assert ade_match(mat) == "A2"


@pytest.fixture(scope="module")
def e6():
    return kstar_resolve(example("e6_cubic").ap)


def test_e6_resolution_p_matrix(e6):
    assert [list(r) for r in e6.ap.P()] == P_TILDE
    assert [s.kind for s in e6.steps] == ["elliptic"] + ["hj"] * 5
    assert all(s.modify_check == "agrees" for s in e6.steps)
    names = e6.pres.var_names
    assert e6.pres.relations[0].to_string(names) == "T01*T02^3*T03^2*T04 + T11^3*T12^2*T13 + T21^2*T22"


def test_e6_degree_matrix_equivalence(e6):
    assert linalg.matmul(Q_TILDE, linalg.transpose(P_TILDE)) == [[0] * 3 for _ in range(7)]
    assert oracles.class_group(P_TILDE) == (7, [])
    ours = linalg.transpose([list(d) for d in e6.pres.degrees])
    assert free_basis_change(ours, Q_TILDE) is not None
    assert same_grading(e6.pres.group, e6.pres.degrees, AbelianGroup(7), [tuple(c) for c in zip(*Q_TILDE)])


def test_e6_minus_two_curves(e6):
    assert set(self_intersections(e6).values()) == {-2}
    mat = intersection_matrix(resolved_bunched_ring(e6), e6.exceptional)
    assert ade_match(mat) == "E6"


def cartan(edges, n, extra=()):
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = Fraction(-2)
    for i, j in edges:
        m[i][j] = m[j][i] = Fraction(1)
    for i, j, v in extra:
        m[i][j] = m[j][i] = Fraction(v)
    return m


def test_ade_labels():
    assert ade_match([]) == ""
    assert ade_match(cartan([], 1)) == "A1"
    assert ade_match(cartan([], 3)) == "3A1"
    assert ade_match(cartan([(0, 1), (1, 2), (1, 3)], 4)) == "D4"
    assert ade_match(cartan([(0, 1), (1, 2), (1, 3)], 7)) == "D4 3A1"
    assert ade_match(cartan([(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)], 6)) == "E6"
    assert ade_match(cartan([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)], 7)) == "E7"
    assert ade_match(cartan([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)], 8)) == "E8"
    # arms of length 2, 2, 2 give the affine diagram of E6
    assert ade_match(cartan([(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], 7)) is None
    assert ade_match(cartan([(0, 1), (1, 2), (0, 2)], 3)) is None
    assert ade_match(cartan([], 2, [(0, 1, 2)])) is None
    assert ade_match([[Fraction(-3)]]) is None


def test_ow_graph_conversion():
    g = OWGraph(((1, 1), (1, 1), (1, 1)), -3, 0)
    ap = ow_to_ap(g)
    assert ap.m == 2 and ap.ls == ((1, 1), (1, 1), (1, 1))
    pres = ow_to_cox(g)
    assert pres.var_names[-2:] == ("Splus", "Sminus")
    ref = build_rap(ap)
    assert same_grading(pres.group, pres.degrees, ref.group, ref.degrees)
    assert [f.normalized() for f in pres.relations] == [f.normalized() for f in ref.relations]
    assert OWGraph.from_json(g.to_json()) == g


@pytest.mark.parametrize("graph, message", [
    (OWGraph(((1, 1), (1, 1), (1, 1)), -2, 0), "must be -3"),
    (OWGraph(((2,), (1, 1), (1, 1)), -3, 0), "does not close up"),
    (OWGraph(((1, 1),), -1, 0), "two arms"),
    (OWGraph(((1, 1), ()), -1, 0), "nonempty"),
])
def test_ow_graph_errors(graph, message):
    with pytest.raises(MalformedGraph, match=message):
        ow_to_ap(graph)


def test_ow_graph_json_errors():
    with pytest.raises(MalformedGraph):
        OWGraph.from_json({"arms": [[1, "x"]], "bplus": 0, "bminus": 0})
