import json
from pathlib import Path

from nichols.braiding import BraidingMatrix

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures" / "v1"


def load_fixture(name) -> BraidingMatrix:
    return BraidingMatrix.from_json(json.loads((FIXTURES / "braidings" / name).read_text()))


def braiding(rows) -> BraidingMatrix:
    return BraidingMatrix.from_json({"theta": len(rows), "entries": rows})
