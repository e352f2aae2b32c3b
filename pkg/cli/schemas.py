"""
Input and report schemas of the command line interface.

The JSON schema documents in docs/ are generated from these models (see write_schema_documents).
"""

import json
import os
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError

from config import DOCS_DIR
from errors import InputError
from representation.group_rep import GroupRep

MatrixEntry = int | list[int]   # an integer for e = 1, a coefficient list (lowest degree first) for e > 1
Matrix = list[list[MatrixEntry]]


##--- Input ---##

class GroupRepInput(BaseModel):
    p: int
    e: int = 1
    n: int
    q: int
    k: int | None = None   # default precision for this file, overridden by --precision
    generators: list[Matrix] = Field(default_factory=list)
    sigma: Matrix
    phi: Matrix

    @classmethod
    def parse(cls, payload: Any) -> "GroupRepInput":
        try:
            return cls.model_validate(payload)
        except ValidationError as err:
            raise InputError(f"input does not match the GroupRep schema: {err}") from err

    def to_group_rep(self) -> GroupRep:
        return GroupRep.from_dict(self.model_dump(exclude={"k"}))


##--- Payloads ---##

class BalaCarterRow(BaseModel):
    name: str
    levi: str
    levi_simple_roots: list[int]
    i_subset: list[int]
    marking: str
    dim_l0: int
    dim_l2: int
    fallback: bool


class RootDatumPayload(BaseModel):
    type: str
    isogeny: str
    rank: int
    semisimple_rank: int
    weyl_order: int
    center_torsion: list[int]
    pi1_torsion: list[int]
    primes: dict[str, Any]
    cG: int
    effective_min_p: int
    bala_carter: list[BalaCarterRow]


class GoodForType(BaseModel):
    ok: bool
    bound: int
    note: str = "sufficient condition via signature bound"


class LiftPayload(BaseModel):
    precision: int
    decomposition: dict[str, Any]
    good_for_type: GoodForType
    synthetic: bool
    lift: dict[str, Any] | None = None
    verification: dict[str, Any] | None = None


class ErrorInfo(BaseModel):
    kind: Literal["input", "hypothesis", "invariant"]
    hypothesis: str | None = None
    message: str


class ReportEnvelope(BaseModel):
    tool_version: str
    command: Literal["root-datum", "lift"]
    input: dict[str, Any]
    seed: int | None = None
    timing: float | None = None   # seconds, only with --timing so reports stay byte-identical
    exit_code: int
    error: ErrorInfo | None = None
    payload: RootDatumPayload | LiftPayload | None = None


def write_schema_documents(directory: str = DOCS_DIR) -> list[str]:
    """Writes the published JSON schemas of the input and the envelope; returns the written paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, model in [("group_rep_input", GroupRepInput), ("report_envelope", ReportEnvelope)]:
        path = os.path.join(directory, f"{name}.schema.json")
        with open(path, "w") as f:
            json.dump(model.model_json_schema(), f, indent=2, sort_keys=True)
            f.write("\n")
        paths.append(path)
    return paths
