from importlib import resources
from pathlib import Path

from coxcalc.io import load_document

DATA = Path(str(resources.files("coxcalc") / "data"))
EXAMPLES = sorted((DATA / "examples").glob("*.json"))
TABLES = sorted((DATA / "tables").glob("*.json"))

DELPEZZO_DEGREES = [(1, 1), (-1, 1), (0, 1), (-1, 0), (1, 2)]
K6_DEGREES = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


def example(name):
    return load_document(DATA / "examples" / f"{name}.json")
