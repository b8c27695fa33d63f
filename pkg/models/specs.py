import json
import re
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from rubbling.engine import Distribution, Move, MoveKind
from rubbling.graphs import Family, Graph, cycle_graph, ladder, mobius_ladder, path_graph, prism
from utils.errors import InvalidParameterError


SHORTHANDS = {"P": "path", "C": "cycle", "L": "ladder", "PR": "prism", "M": "mobius"}
SHORTHAND_PATTERN = re.compile(r"^(PR|P|C|L|M)(\d+)$")

BUILDERS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "ladder": ladder,
    "prism": prism,
    "mobius": mobius_ladder,
}


def _describe(e: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(x) for x in err['loc']) or 'value'}: {err['msg']}" for err in e.errors())


class GraphSpec(BaseModel):
    family: Optional[Literal["path", "cycle", "ladder", "prism", "mobius"]] = None
    n: Optional[int] = None
    vertices: Optional[int] = None
    edges: Optional[List[Tuple[int, int]]] = None

    @model_validator(mode="after")
    def check_shape(self):
        if self.family is not None:
            if self.n is None:
                raise ValueError(f"family {self.family} needs n")
        elif self.vertices is None or self.edges is None:
            raise ValueError("give either family and n, or vertices and edges")
        return self

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        match = SHORTHAND_PATTERN.match(text.strip())
        if match:
            return cls(family=SHORTHANDS[match.group(1)], n=int(match.group(2)))
        try:
            return cls.model_validate(json.loads(text))
        except json.JSONDecodeError as e:
            raise InvalidParameterError(f"graph spec {text!r} is neither a shorthand nor JSON: {e.msg}")
        except ValidationError as e:
            raise InvalidParameterError(f"graph spec: {_describe(e)}")

    def to_graph(self) -> Graph:
        if self.family is not None:
            return BUILDERS[self.family](self.n)
        return Graph.from_edges(self.vertices, self.edges, Family.custom)


class DistributionSpec(BaseModel):
    counts: List[int]

    @field_validator("counts")
    @classmethod
    def nonnegative(cls, counts: List[int]) -> List[int]:
        if any(c < 0 for c in counts):
            raise ValueError("pebble counts must be nonnegative")
        return counts

    @classmethod
    def parse(cls, text: str) -> "DistributionSpec":
        try:
            data = json.loads(text)
            if isinstance(data, list):
                data = {"counts": data}
            return cls.model_validate(data)
        except json.JSONDecodeError as e:
            raise InvalidParameterError(f"distribution {text!r} is not JSON: {e.msg}")
        except ValidationError as e:
            raise InvalidParameterError(f"distribution: {_describe(e)}")

    def to_distribution(self, graph: Graph) -> Distribution:
        return Distribution(tuple(self.counts)).check_graph(graph)


class MoveModel(BaseModel):
    kind: Literal["pebbling", "strict_rubbling"]
    sources: List[int]
    target: int

    @model_validator(mode="after")
    def check_arity(self):
        expected = 1 if self.kind == "pebbling" else 2
        if len(self.sources) != expected:
            raise ValueError(f"{self.kind} moves take {expected} source(s)")
        return self

    @classmethod
    def from_move(cls, move: Move) -> "MoveModel":
        return cls(kind=move.kind.value, sources=list(move.sources), target=move.target)

    def to_move(self, graph: Graph) -> Move:
        if self.kind == MoveKind.pebbling.value:
            move = Move.pebbling(self.sources[0], self.target)
        else:
            move = Move.strict(self.sources[0], self.sources[1], self.target)
        return move.validate(graph)
