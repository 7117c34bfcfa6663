import copy
from fractions import Fraction

import pytest
import sympy

from coxcalc.tables import load_table, verify_row, verify_table
from helpers import TABLES

ALL = {p.stem: load_table(p) for p in TABLES}


@pytest.mark.parametrize("name", sorted(ALL))
def test_table_rows_pass(name):
    results = verify_table(ALL[name], jobs=1)
    assert [r.line() for r in results if not r.passed] == []


def _weighted_hypersurface_degree(weights, relation):
    """(-K)^3 of a hypersurface of degree d in P(w) with Cl = Z, computed with sympy."""
    syms = sympy.symbols([f"T{i + 1}" for i in range(len(weights))])
    poly = sympy.Poly(sympy.sympify(relation.replace("^", "**")), *syms)
    (d,) = {sum(w * e for w, e in zip(weights, m)) for m in poly.monoms()}
    k = sum(weights) - d
    prod = 1
    for w in weights:
        prod *= w
    return Fraction(k ** 3 * d, prod)


@pytest.mark.parametrize("row", ALL["fano3folds"].rows, ids=lambda r: r["id"])
def test_fano_degrees_match_weighted_formula(row):
    expected = _weighted_hypersurface_degree(row["degree_matrix"][0], row["relations"][0])
    assert expected == row["expected"]["anticanonical_degree"]


def test_quadric_threefold_degree():
    (row,) = [r for r in ALL["fano3folds"].rows if r["id"] == "fano3folds-4"]
    res = verify_row(row, ALL["fano3folds"].checks)
    (check,) = [c for c in res.checks if c.name == "anticanonical_degree"]
    assert check.computed == 54 and check.ok


def _row(table, row_id):
    return copy.deepcopy(next(r for r in ALL[table].rows if r["id"] == row_id))


def test_printed_pic2_relation_is_inhomogeneous():
    row = _row("gorenstein_pic2", "gorenstein_pic2-5")
    row["relations"] = row.pop("printed_relations")
    res = verify_row(row, ALL["gorenstein_pic2"].checks)
    assert not res.passed


def test_printed_pic3_degrees_fail():
    row = _row("gorenstein_pic3", "gorenstein_pic3-3")
    row["degree_matrix"] = row.pop("printed_degree_matrix")
    res = verify_row(row, ALL["gorenstein_pic3"].checks)
    assert not res.passed and res.error


def test_corrupted_expectation_fails():
    row = _row("fano3folds", "fano3folds-1")
    row["expected"]["anticanonical_degree"] = 9
    res = verify_row(row, ALL["fano3folds"].checks)
    assert not res.passed
    assert "expected 9, computed 8" in res.line()
