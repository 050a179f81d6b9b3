from dataclasses import dataclass
from typing import Literal, Optional, Tuple, TypedDict

ArithOp = Literal["add", "neg", "mul", "inv"]
SearchOutcome = Literal["found", "none", "budget-exhausted"]
MinimalityVerdict = Literal[
    "minimal non-orientable",
    "non-orientable, not minimal",
    "orientable",
    "inconclusive",
]
ObstructionReason = Literal["line too long", "ground set too large"]
Verdict = Literal[
    "orientable",
    "non-orientable",
    "minimal non-orientable",
    "non-orientable, not minimal",
    "inconclusive",
    "embeds",
    "does not embed",
    "obstructed",
    "unobstructed",
    "exact",
    "inexact",
    "agree",
    "disagree",
    "built",
]

@dataclass(frozen=True, eq=False)
class Diagnosis:
    """
    Outcome of a check that reports failures instead of raising.

    Compares equal to a bool by its verdict alone, so `check(...) == True` reads
    like the plain boolean validators; two diagnoses compare field by field.
    """
    ok: bool
    reason: Optional[str] = None
    witness: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def __eq__(self, other):
        if isinstance(other, bool):
            return self.ok == other
        if isinstance(other, Diagnosis):
            return (self.ok, self.reason, tuple(self.witness)) == (other.ok, other.reason, tuple(other.witness))
        return NotImplemented

    def __hash__(self):
        # equal to True/False, so hash like them
        return hash(self.ok)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "witness": list(self.witness)}

PASSED = Diagnosis(True)

class MatroidRecord(TypedDict):
    """The matroid file format."""
    elements: list[str]
    flats: list[list[str]]

class LineRecord(TypedDict):
    """One entry of the arrangement file format."""
    name: str
    line: list[int]

class Report(TypedDict, total=False):
    """The JSON document every CLI subcommand prints."""
    command: str
    inputs: dict
    verdict: Verdict
    result: dict
    certificates: dict
    counters: dict
    wall_time: float
