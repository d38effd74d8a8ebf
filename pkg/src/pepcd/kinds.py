"""Which relation a density or kernel refers to."""

from enum import Enum


class Kind(str, Enum):
    ARC = "arc"  # the digraph itself
    AND = "and"  # reflexivity graph: both arcs present
    OR = "or"  # underlying graph: at least one arc

    @classmethod
    def parse(cls, value) -> "Kind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown kind {value!r}; expected arc, and or or") from None

    def __str__(self) -> str:
        return self.value
