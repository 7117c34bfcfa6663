"""Regenerate the packaged example documents and classification tables."""

import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "coxcalc" / "data"


def dump(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


def names(n, extra=0):
    return [f"T{i}" for i in range(1, n + 1)] + [f"S{i}" for i in range(1, extra + 1)]


A = [[-1, 0], [1, -1], [0, 1]]

EXAMPLES = {
    "delpezzo": {
        "kind": "presentation",
        "name": "singular del Pezzo surface with one A2 point",
        "variables": names(5),
        "group": {"rank": 2, "torsion": []},
        "degree_matrix": [[1, -1, 0, -1, 1], [1, 1, 1, 0, 2]],
        "relations": ["T1*T2 + T3^2 + T4*T5"],
        "assertions": {"k_prime_generators": True},
    },
    "k2_hyperbolic": {
        "kind": "presentation",
        "name": "K* on K^2 with weights -1, 1",
        "variables": names(2),
        "group": {"rank": 1, "torsion": []},
        "degree_matrix": [[-1, 1]],
    },
    "k2_parabolic": {
        "kind": "presentation",
        "name": "K* on K^2 with weights 0, 1",
        "variables": names(2),
        "group": {"rank": 1, "torsion": []},
        "degree_matrix": [[0, 1]],
    },
    "k2_elliptic": {
        "kind": "presentation",
        "name": "K* on K^2 with weights 1, 1",
        "variables": names(2),
        "group": {"rank": 1, "torsion": []},
        "degree_matrix": [[1, 1]],
    },
    "k6_torus3": {
        "kind": "presentation",
        "name": "three-dimensional torus on K^6",
        "variables": names(6),
        "group": {"rank": 3, "torsion": []},
        "degree_matrix": [[1, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 1]],
    },
    "a2_delpezzo": {
        "kind": "ap_data",
        "name": "del Pezzo surface as a K*-surface",
        "r": 2, "ns": [2, 1, 2], "ls": [[1, 1], [2], [1, 1]], "m": 0, "s": 1,
        "A": A, "d": [[-1, 0, 1, -1, 0]], "dprime": [[]],
    },
    "e6_cubic": {
        "kind": "ap_data",
        "name": "E6 singular cubic surface",
        "r": 2, "ns": [2, 1, 1], "ls": [[1, 3], [3], [2]], "m": 0, "s": 1,
        "A": A, "d": [[-1, -2, 1, 1]], "dprime": [[]],
    },
    "p2_modification": {
        "kind": "presentation",
        "name": "projective plane in P(2,1,1,1), blown up to the del Pezzo surface",
        "variables": names(4),
        "group": {"rank": 1, "torsion": []},
        "degree_matrix": [[2, 1, 1, 1]],
        "relations": ["T1 + T2^2 + T3*T4"],
        "chamber": [1],
        "modification": {"center": ["T1", "T2", "T3"], "coefficients": [3, 1, 2]},
        "assertions": {"k_prime_generators": True},
    },
    "blp1p1": {
        "kind": "ow_graph",
        "name": "P1 x P1 blown up in three fixed points",
        "arms": [[1, 1], [1, 1], [1, 1]],
        "bplus": -3,
        "bminus": 0,
    },
}


def rank_one(rel, weights, degree, vars_=5):
    return {
        "variables": names(vars_),
        "group": {"rank": 1, "torsion": []},
        "degree_matrix": [weights],
        "relations": [rel],
        "expected": {"anticanonical_degree": degree, "locally_factorial": True, "dimension": 3},
    }


FANO = [
    ("T1*T2^5 + T3^3 + T4^2", [1, 1, 2, 3, 1], 8),
    ("T1*T2*T3^4 + T4^3 + T5^2", [1, 1, 1, 2, 3], 8),
    ("T1*T2^2*T3^3 + T4^3 + T5^2", [1, 1, 1, 2, 3], 8),
    ("T1*T2 + T3*T4 + T5^2", [1, 1, 1, 1, 1], 54),
    ("T1*T2^2 + T3*T4^2 + T5^3", [1, 1, 1, 1, 1], 24),
    ("T1*T2^3 + T3*T4^3 + T5^4", [1, 1, 1, 1, 1], 4),
    ("T1*T2^3 + T3*T4^3 + T5^2", [1, 1, 1, 1, 2], 16),
    ("T1*T2^5 + T3*T4^5 + T5^2", [1, 1, 1, 1, 3], 2),
    ("T1*T2^5 + T3^3*T4^3 + T5^2", [1, 1, 1, 1, 3], 2),
]


def gor(rels, rank, torsion, matrix, sing, nt, ns=0, note=None):
    row = {
        "variables": names(nt, ns),
        "group": {"rank": rank, "torsion": torsion},
        "degree_matrix": matrix,
        "relations": rels,
        "expected": {
            "Cl": {"rank": rank, "torsion": torsion},
            "gorenstein": True,
            "fano": True,
            "singularity": sing,
            "dimension": 2,
        },
    }
    if len(rels) > 1:
        row["params"] = {"lambda": 2}
    if note:
        row.update(note)
    return row


PIC1 = [
    gor(["T1^2 + T2^2 + T3^2"], 1, [2, 2], [[1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0]], "D4 3A1", 3, 1),
    gor(["T1*T2 + T3^2 + T4^2"], 1, [4], [[1, 1, 1, 1], [1, 3, 2, 0]], "2A3 A1", 4),
    gor(["T1*T2 + T3^2 + T4^3"], 1, [], [[1, 5, 3, 2]], "A4", 4),
    gor(["T1*T2 + T3^2 + T4^4"], 1, [2], [[1, 3, 2, 1], [1, 1, 1, 0]], "A5 A1", 4),
    gor(["T1*T2 + T3^3 + T4^3"], 1, [3], [[1, 2, 1, 1], [1, 2, 2, 0]], "A5 A2", 4),
    gor(["T1*T2^2 + T3^3 + T4^2"], 1, [], [[4, 1, 2, 3]], "D5", 4),
    gor(["T1^2*T2 + T3^2 + T4^4"], 1, [2], [[1, 2, 2, 1], [1, 0, 1, 0]], "D6 A1", 4),
    gor(["T1*T2^2 + T3^3 + T4^3"], 1, [3], [[1, 1, 1, 1], [1, 1, 2, 0]], "E6 A2", 4),
    gor(["T1*T2^3 + T3^3 + T4^2"], 1, [], [[3, 1, 2, 3]], "E6", 4),
    gor(["T1*T2^3 + T3^4 + T4^2"], 1, [2], [[1, 1, 1, 2], [0, 0, 1, 1]], "E7 A1", 4),
    gor(["T1*T2^4 + T3^3 + T4^2"], 1, [], [[2, 1, 2, 3]], "E7", 4),
    gor(["T1*T2^5 + T3^3 + T4^2"], 1, [], [[1, 1, 2, 3]], "E8", 4),
    gor(["T1*T2 + T3^2 + T4^2", "lambda*T3^2 + T4^2 + T5^2"], 1, [2, 2],
        [[1, 1, 1, 1, 1], [1, 1, 0, 1, 0], [0, 0, 1, 1, 0]], "2D4", 5),
]

PIC2 = [
    gor(["T1*T2 + T3^2 + T4^2"], 2, [2], [[1, 1, 1, 1, 1], [1, -1, 0, 0, 1], [1, 1, 1, 0, 0]], "A3 2A1", 4, 1),
    gor(["T1*T2 + T3*T4 + T5^2"], 2, [], [[1, 1, 1, 1, 1], [-1, 1, 2, -2, 0]], "2A2 A1", 5),
    gor(["T1*T2 + T3*T4 + T5^2"], 2, [], [[1, 3, 1, 3, 2], [1, 1, 0, 2, 1]], "A2", 5),
    gor(["T1*T2 + T3*T4 + T5^3"], 2, [], [[1, 2, 1, 2, 1], [1, -1, -1, 1, 0]], "A3 A1", 5),
    gor(["T1*T2 + T3^2*T4 + T5^2"], 2, [], [[1, 3, 1, 2, 2], [0, 2, 1, 0, 1]], "A3", 5,
        note={"printed_relations": ["T1*T2 + T3^2*T4 + T4^2"],
              "note": "printed last term T4^2 is not homogeneous for the printed degrees; T5^2 is"}),
    gor(["T1*T2 + T3^2*T4 + T5^3"], 2, [], [[1, 2, 1, 1, 1], [-1, 1, 1, -2, 0]], "A4 A1", 5),
    gor(["T1*T2 + T3^3*T4 + T5^2"], 2, [], [[1, 3, 1, 1, 2], [-1, -1, 0, -2, -1]], "A4", 5),
    gor(["T1*T2^2 + T3*T4^2 + T5^2"], 2, [], [[2, 1, 2, 1, 2], [0, -1, -2, 0, -1]], "D4", 5),
    gor(["T1*T2^2 + T3*T4^2 + T5^3"], 2, [], [[1, 1, 1, 1, 1], [2, -1, -2, 1, 0]], "D5 A1", 5),
    gor(["T1*T2^3 + T3*T4^2 + T5^2"], 2, [], [[1, 1, 2, 1, 2], [1, -1, -2, 0, -1]], "D5", 5),
    gor(["T1*T2^3 + T3*T4^3 + T5^2"], 2, [], [[1, 1, 1, 1, 2], [1, -1, -2, 0, -1]], "E6", 5),
    gor(["T1*T2 + T3*T4 + T5^2", "lambda*T3*T4 + T5^2 + T6^2"], 2, [2],
        [[1, 1, 1, 1, 1, 1], [-1, 1, 1, -1, 0, 0], [0, 0, 1, 1, 1, 0]], "2A3", 6),
]

PIC3 = [
    gor(["T1*T2 + T3*T4 + T5^2"], 3, [], [[1, 1, 1, 1, 1, 1], [1, -1, 0, 0, 0, 1], [1, -1, -1, 1, 0, 0]], "A2 A1", 5, 1),
    gor(["T1*T2 + T3*T4 + T5*T6"], 3, [], [[1, 1, 1, 1, 1, 1], [1, 0, 0, 1, 0, 1], [0, 0, 1, -1, -1, 1]], "3A1", 6),
    gor(["T1*T2 + T3*T4 + T5*T6"], 3, [], [[1, 2, 1, 2, 1, 2], [0, 1, 0, 1, 0, 1], [1, -1, -1, 1, 0, 0]], "A1", 6,
        note={"printed_degree_matrix": [[1, 2, 1, 2, 1, 2], [0, 1, 0, 1, 1, 0], [1, -1, -1, 1, 0, 0]],
              "note": "printed degrees generate an index 2 sublattice; swapping the T5, T6 entries of the second row fixes it"}),
    gor(["T1*T2 + T3*T4 + T5^2*T6"], 3, [], [[1, 2, 1, 2, 1, 1], [1, 0, 0, 1, 0, 1], [1, -1, -1, 1, 0, 0]], "A2", 6),
    gor(["T1*T2 + T3*T4^2 + T5*T6^2"], 3, [], [[2, 1, 1, 1, 1, 1], [0, 1, 1, 0, 1, 0], [1, 0, -1, 1, 1, 0]], "A3", 6),
    gor(["T1*T2^2 + T3*T4^2 + T5*T6^2"], 3, [], [[1, 1, 1, 1, 1, 1], [1, -1, -1, 0, -1, 0], [1, 0, -1, 1, 1, 0]], "D4", 6),
    gor(["T1*T2 + T3*T4 + T5*T6", "lambda*T3*T4 + T5*T6 + T7^2"], 3, [],
        [[1, 1, 1, 1, 1, 1, 1], [0, 0, 1, -1, -1, 1, 0], [-1, 1, 1, -1, 0, 0, 0]], "2A2", 7),
]

PIC4 = [
    gor(["T1*T2 + T3*T4 + T5*T6"], 4, [],
        [[1, 1, 1, 1, 1, 1, 1], [1, 0, 0, 1, 0, 1, 0], [0, 1, 0, 1, 1, 0, 0], [1, -1, -1, 1, 0, 0, 0]], "A1", 6, 1),
]


def table(name, title, checks, rows):
    for k, row in enumerate(rows, 1):
        row["id"] = f"{name}-{k}"
    return {"kind": "table", "name": name, "title": title, "checks": checks, "rows": rows}


def main():
    for key, doc in EXAMPLES.items():
        dump(DATA / "examples" / f"{key}.json", doc)
    fano_rows = [rank_one(*r) for r in FANO]
    dump(DATA / "tables" / "fano3folds.json", table(
        "fano3folds", "locally factorial non-toric Fano threefolds with a 2-torus action and Cl = Z",
        ["homogeneous", "locally_factorial", "fano_inequality", "fano", "anticanonical_degree"], fano_rows))
    gchecks = ["homogeneous", "Cl", "gorenstein", "fano"]
    for k, rows in enumerate([PIC1, PIC2, PIC3, PIC4], 1):
        dump(DATA / "tables" / f"gorenstein_pic{k}.json", table(
            f"gorenstein_pic{k}", f"non-toric Gorenstein del Pezzo K*-surfaces of Picard number {k}", gchecks, rows))


if __name__ == "__main__":
    main()
