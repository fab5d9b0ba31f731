"""
Module used to define the abstract class that every domain model of the engine extends.
"""

import dataclasses
from abc import ABC
from typing import Any, Dict

from pydantic.dataclasses import dataclass


@dataclass(frozen=True)
class WebModel(ABC):
    """
      Abstract class extended by the immutable value types of the engine
      (words, tableaux, graphs, configurations, labelings and invariants).
    """

    def field_names(self) -> list:
        return [field.name for field in dataclasses.fields(self)]

    def to_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in self.field_names()}
