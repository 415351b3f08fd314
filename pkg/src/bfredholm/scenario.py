"""JSON scenarios: ``{"schema": "bf/1", "kind": "block" | "toeplitz", "payload": {...}}``.

Block payload::

    {"algebra": {"blocks": [2, 1]}, "ideal": [1], "element": [matrix, matrix]}

Toeplitz payload::

    {"coeffs": {"1": [1, 0]}, "space": "unilateral", "perturbation": matrix}

A matrix is either ``{"rows", "cols", "re", "im"}`` or a nested list of
real numbers. Optional keys: ``requested`` (list of operation names) and
``tolerances`` (``{"tol": float}``).
"""

from dataclasses import dataclass, field
import json

from .errors import InputError
from .matrix import as_matrix, matrix_from_json
from .semisimple import BlockAlgebra, BlockElement, IdealSpec
from .toeplitz import ToeplitzElement

SCHEMA = "bf/1"
KINDS = ("block", "toeplitz")


@dataclass
class Scenario:
    kind: str
    payload: dict
    requested: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)

    def block(self):
        """``(element, ideal)`` for a block scenario."""
        p = self.payload
        try:
            algebra = BlockAlgebra(tuple(int(n) for n in p["algebra"]["blocks"]))
            ideal = IdealSpec(frozenset(int(i) for i in p.get("ideal", []))).check(algebra)
            blocks = [_matrix(m) for m in p["element"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad block payload: {exc!r}") from None
        return BlockElement(algebra, blocks), ideal

    def toeplitz(self):
        return ToeplitzElement.from_json(self.payload)


def _matrix(obj):
    if isinstance(obj, dict):
        return matrix_from_json(obj)
    return as_matrix(obj)


def parse_scenario(obj):
    if not isinstance(obj, dict):
        raise InputError("scenario must be a JSON object")
    schema = obj.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise InputError(f"unsupported schema {schema!r} (expected {SCHEMA!r})")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")
    payload = obj.get("payload")
    if not isinstance(payload, dict):
        raise InputError("payload must be an object")
    tols = obj.get("tolerances", {})
    if not isinstance(tols, dict) or not all(isinstance(v, (int, float)) for v in tols.values()):
        raise InputError("tolerances must map names to numbers")
    sc = Scenario(kind, payload, list(obj.get("requested", [])), dict(tols))
    # validate the payload eagerly so schema errors surface before any numerics
    sc.block() if kind == "block" else sc.toeplitz()
    return sc


def load_scenario(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
    return parse_scenario(obj)
