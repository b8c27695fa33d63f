import json
from enum import Enum
from fractions import Fraction

import numpy as np
from pydantic import BaseModel


def to_jsonable(data):
  """
  helper function to turn results into plain json data
  converts Fractions to "p/q" strings
  converts domain objects through their to_dict()
  """
  if isinstance(data, BaseModel):
    return data.model_dump(mode="json")
  if isinstance(data, Fraction):
    return str(data)
  if isinstance(data, Enum):
    return data.value
  if isinstance(data, np.integer):
    return int(data)
  if hasattr(data, "to_dict"):
    return to_jsonable(data.to_dict())
  if isinstance(data, dict):
    return {str(key): to_jsonable(value) for key, value in data.items()}
  if isinstance(data, (list, tuple, set, frozenset)):
    items = sorted(data) if isinstance(data, (set, frozenset)) else data
    return [to_jsonable(item) for item in items]
  return data


def dumps(data, pretty: bool = False) -> str:
  return json.dumps(to_jsonable(data), indent=2 if pretty else None, sort_keys=True)
