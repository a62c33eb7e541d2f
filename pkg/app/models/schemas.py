# models/schemas.py
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

DocumentKind = Literal["npoly", "laurent", "ncpoly", "profile", "table", "verdict"]


class Meta(BaseModel):
    """Echo of what was asked for, attached to every document."""
    input: str # The word, polynomial or command arguments as typed
    version: str # Library version that produced the document
    params: Dict[str, str] = Field(default_factory=dict) # Extra settings such as law, suite or seed


class NPolyTerm(BaseModel):
    """One term of a polynomial in N."""
    power: int = Field(ge=0)
    coeff: str # Exact rational, "p/q" or "p"


class LaurentTerm(BaseModel):
    """One term of a Laurent polynomial in u = (1-z)^-1."""
    upower: int
    coeff: str


class NCPolyTerm(BaseModel):
    """One term of a noncommutative polynomial; the empty list is the empty word."""
    word: List[int]
    coeff: str


class ProfilePayload(BaseModel):
    """Asymptotic profile of a noncommutative polynomial."""
    n: int = Field(ge=0) # n(P), the common degree of H⁻_P in N and Li⁻_P in (1-z)^-1
    C: str # Leading coefficient of H⁻_P
    B: str # Leading coefficient of Li⁻_P


class TablePayload(BaseModel):
    """A rectangular table of strings (word tables and matrix exports)."""
    title: str
    columns: List[str]
    rows: List[List[str]]

    @model_validator(mode="after")
    def check_widths(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"Row {row} does not match the {len(self.columns)} columns")
        return self


class CheckOutcome(BaseModel):
    """Result of one identity check inside a verification suite."""
    name: str # Identity being checked
    anchor: str # Where the identity comes from (statement name)
    passed: bool
    cases: int = 0 # Number of instances evaluated
    detail: Optional[str] = None # First counterexample, if any


class VerdictPayload(BaseModel):
    """Verification report, or a single yes/no answer such as kernel membership."""
    passed: bool
    suite: Optional[str] = None
    max_grade: Optional[int] = None
    seed: Optional[int] = None
    checks: List[CheckOutcome] = Field(default_factory=list)


Payload = Union[List[NPolyTerm], List[LaurentTerm], List[NCPolyTerm], ProfilePayload, TablePayload, VerdictPayload]

_PAYLOAD_TYPES = {
    "npoly": NPolyTerm,
    "laurent": LaurentTerm,
    "ncpoly": NCPolyTerm,
    "profile": ProfilePayload,
    "table": TablePayload,
    "verdict": VerdictPayload,
}


class OutputDocument(BaseModel):
    """Top-level machine-readable document written by the CLI."""
    kind: DocumentKind
    meta: Meta
    payload: Payload

    @model_validator(mode="after")
    def check_payload_kind(self):
        expected = _PAYLOAD_TYPES[self.kind]
        items = self.payload if isinstance(self.payload, list) else [self.payload]
        if any(not isinstance(item, expected) for item in items):
            raise ValueError(f"Payload does not match document kind {self.kind!r}")
        return self

    @model_validator(mode="before")
    @classmethod
    def coerce_payload(cls, data):
        # Parse the payload with the model its kind names instead of trying every union member
        if isinstance(data, dict) and data.get("kind") in _PAYLOAD_TYPES:
            model = _PAYLOAD_TYPES[data["kind"]]
            payload = data.get("payload")
            if isinstance(payload, list):
                data = {**data, "payload": [model.model_validate(item) if isinstance(item, dict) else item for item in payload]}
            elif isinstance(payload, dict):
                data = {**data, "payload": model.model_validate(payload)}
        return data
