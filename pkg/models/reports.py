from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field

from models.specs import MoveModel


class ReachReport(BaseModel):
    graph: str
    distribution: List[int]
    target: int
    max_pebbles: int
    witness: Optional[List[MoveModel]] = None


class SolveReport(BaseModel):
    graph: str
    distribution: List[int]
    k: int
    solvable: bool
    # per-vertex maximum obtainable
    reach: List[int]
    failing: List[int] = Field(default_factory=list)


class SearchReport(BaseModel):
    graph: str
    k: int
    value: int
    witness: List[int]
    tested_count: int
    elapsed: float


class WitnessReport(BaseModel):
    graph: str
    k: int
    value: int
    witnesses: List[List[int]]


class ReductionReport(BaseModel):
    original: List[int]
    reduced: List[int]
    n: int
    reduced_n: int
    window: Dict[str, int]
    placement: Dict[str, int]
    reflections: Dict[str, bool]
    method: Optional[str] = None
    certificate: Optional[str] = None
    # boundary weight changes, fractions as "p/q"
    modified_deltas: Dict[str, str]
    original_deltas: Dict[str, int]


class TransformReport(BaseModel):
    operation: str
    graph: str
    before: List[int]
    after: List[int]
    result_graph: Optional[Dict] = None
    mapping: Optional[List[int]] = None


class VerificationRow(BaseModel):
    n: int
    formula_value: Optional[int] = None
    search_value: Optional[int] = None
    witness: Optional[List[int]] = None
    runtime: float = 0.0
    complete: bool = True
    # "formula" when the closed form applies, "derived" when only search defines the value
    provenance: str = "formula"

    @computed_field
    @property
    def match(self) -> Optional[bool]:
        if not self.complete or self.search_value is None:
            return None
        return self.formula_value == self.search_value


class VerificationReport(BaseModel):
    family: str
    k: int = 1
    budget_seconds: Optional[float] = None
    rows: List[VerificationRow] = Field(default_factory=list)

    @computed_field
    @property
    def complete(self) -> bool:
        return all(row.complete for row in self.rows)

    @property
    def mismatches(self) -> List[VerificationRow]:
        return [row for row in self.rows if row.match is False]

    def to_markdown(self) -> str:
        lines = [
            f"## {self.family} (k={self.k})",
            "",
            "| n | formula | search | match | witness | runtime (s) |",
            "|---|---------|--------|-------|---------|-------------|",
        ]
        for row in self.rows:
            match = "incomplete" if row.match is None else ("yes" if row.match else "NO")
            formula = "-" if row.formula_value is None else str(row.formula_value)
            if row.provenance == "derived":
                formula += " (derived)"
            search = "-" if row.search_value is None else str(row.search_value)
            witness = "-" if row.witness is None else " ".join(str(c) for c in row.witness)
            lines.append(f"| {row.n} | {formula} | {search} | {match} | {witness} | {row.runtime:.2f} |")
        if not self.complete:
            lines.append("")
            lines.append("Budget exhausted before every row finished.")
        return "\n".join(lines)
