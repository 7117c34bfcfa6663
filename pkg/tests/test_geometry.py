import argparse
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxcalc import cli
from coxcalc.bunched import BunchedRingError, bunched_ring_from_chamber
from coxcalc.cones import Cone, Fan
from coxcalc.geometry import (
    IntersectionForm,
    NotRelevant,
    TorsionNotSupported,
    canonical_class,
    dimension,
    divisor_cones,
    fano_gorenstein,
    intersection_number,
    local_class_group,
    picard_group,
    report,
    stratum_singularity,
)
from coxcalc.gitfan import chamber_in_moving_cone
from coxcalc.io import load_document, presentation_from_json, toric_presentation
from coxcalc.lattice import AbelianGroup
from coxcalc.modifications import bunched_ring_from_fan
from helpers import EXAMPLES, example

TAU = Cone.hull([(-1, 1), (1, 2)])


@pytest.fixture(scope="module")
def dp():
    pres = example("delpezzo").pres
    return bunched_ring_from_chamber(pres, TAU)


@pytest.fixture(scope="module")
def k6():
    pres = example("k6_torus3").pres
    return bunched_ring_from_chamber(pres, chamber_in_moving_cone(pres))


def toric(rays, cones):
    fan = Fan(tuple(map(tuple, rays)), tuple(map(tuple, cones)))
    pres = toric_presentation(fan)
    return bunched_ring_from_fan(pres, fan)


def test_delpezzo_invariants(dp):
    assert dimension(dp) == 2
    non_factorial = [f for f in dp.data.rlv if not stratum_singularity(dp, f)["factorial"]]
    assert non_factorial == [(1, 4)]
    assert local_class_group(dp, (1, 4)) == AbelianGroup(0, (3,))
    assert picard_group(dp).index == 3
    cones = divisor_cones(dp)
    assert cones.ample == TAU and cones.sample == TAU
    assert canonical_class(dp) == (0, -3)
    assert intersection_number(dp, [(0, 3), (0, 3)]) == 6
    assert fano_gorenstein(dp) == {"fano": True, "gorenstein": True}
    with pytest.raises(NotRelevant):
        local_class_group(dp, (2,))


def test_delpezzo_report_json(dp):
    out = report(dp).to_json()
    assert out["Cl"] == {"rank": 2, "torsion": []}
    assert out["Pic"]["index"] == 3
    assert out["canonical_class"] == [0, -3]
    assert out["anticanonical_self_intersection"] == "6"
    assert out["cones"]["Ample"]["open"] is True
    assert out["strata"][1] == {"face": [1, 4], "local_class_group": {"rank": 0, "torsion": [3]},
                                "factorial": False, "q_factorial": True}


def test_toric_reference_values():
    p2 = toric([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    assert intersection_number(p2, [(1,), (1,)]) == 1
    p112 = toric([(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    assert sorted(d[0] for d in p112.pres.degrees) == [1, 1, 2]
    assert intersection_number(p112, [(1,), (1,)]) == Fraction(1, 2)
    p1p1 = toric([(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (0, 3), (1, 2), (1, 3)])
    degs = sorted(set(p1p1.pres.degrees))
    form = IntersectionForm(p1p1)
    assert [form.product([a, a]) for a in degs] == [0, 0]
    assert form.product(degs) == 1
    f1 = toric([(1, 0), (0, 1), (-1, -1), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])
    exc = f1.pres.degrees[3]
    assert intersection_number(f1, [exc, exc]) == -1


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=3), st.integers(-3, 3))
def test_intersection_form_is_symmetric_bilinear(dp, vecs, c):
    form = IntersectionForm(dp)
    a, b, e = vecs
    assert form.product([a, b]) == form.product([b, a])
    lhs = form.product([tuple(x + c * y for x, y in zip(a, e)), b])
    assert lhs == form.product([a, b]) + c * form.product([e, b])


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=4, max_size=4),
       st.permutations([0, 1, 2]))
def test_intersection_form_is_symmetric_trilinear(k6, vecs, perm):
    form = IntersectionForm(k6)
    a, b, c, e = vecs
    base = form.product([a, b, c])
    assert form.product([[a, b, c][i] for i in perm]) == base
    assert form.product([tuple(x + y for x, y in zip(a, e)), b, c]) == base + form.product([e, b, c])


def test_torsion_is_refused():
    obj = {"kind": "presentation", "variables": ["T1", "T2", "T3", "T4"], "group": {"rank": 1, "torsion": [4]},
           "degree_matrix": [[1, 1, 1, 1], [1, 3, 2, 0]], "relations": ["T1*T2 + T3^2 + T4^2"]}
    pres = presentation_from_json(obj, True)
    br = bunched_ring_from_chamber(pres, chamber_in_moving_cone(pres))
    with pytest.raises(TorsionNotSupported):
        intersection_number(br, [(1,), (1,)])


BUNCHED_EXAMPLES = [p for p in EXAMPLES if p.stem not in ("k2_hyperbolic", "k2_parabolic")]


@pytest.mark.parametrize("path", BUNCHED_EXAMPLES, ids=lambda p: p.stem)
def test_divisor_cone_chain(path):
    doc = load_document(path)
    br = cli._bunched_ring(doc, argparse.Namespace(chamber=None))
    c = divisor_cones(br)
    assert c.ample is not None
    assert c.ample.issubset(c.sample) and c.sample.issubset(c.mov) and c.mov.issubset(c.eff)


@pytest.mark.parametrize("name", ["k2_hyperbolic", "k2_parabolic"])
def test_k2_actions_without_bunched_ring(name):
    doc = example(name)
    with pytest.raises(BunchedRingError):
        cli._bunched_ring(doc, argparse.Namespace(chamber=None))
