"""Layer stacks between two air half-spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .media import MaterialParams


@dataclass(frozen=True)
class Layer:
    """One homogeneous slab: a material and a physical thickness in meters."""

    material: MaterialParams
    thickness: float

    def __post_init__(self):
        t = float(self.thickness)
        if not (t > 0.0 and math.isfinite(t)):
            raise ValueError(f"layer thickness must be positive and finite, got {self.thickness!r}")
        object.__setattr__(self, "thickness", t)


@dataclass(frozen=True)
class Stack:
    """Ordered layers between two air half-spaces.

    The empty stack is the trivial air-only structure.  ``Stack.periodic``
    builds the alternating pattern A B A B ... A of odd length.
    """

    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @classmethod
    def periodic(
        cls,
        material_a: MaterialParams,
        material_b: MaterialParams,
        count: int,
        thickness_a: float,
        thickness_b: float,
    ) -> "Stack":
        """Alternating stack A B A B ... A with ``count`` slabs (odd)."""
        if count < 1 or count % 2 == 0:
            raise ValueError(f"periodic stack must have odd slab count, got {count}")
        a = Layer(material_a, thickness_a)
        b = Layer(material_b, thickness_b)
        return cls(tuple(a if i % 2 == 0 else b for i in range(count)))

    def __len__(self) -> int:
        return len(self.layers)

    def reversed(self) -> "Stack":
        return Stack(tuple(reversed(self.layers)))

    def period_info(self) -> Optional[tuple[Layer, Layer, int]]:
        """Return (A, B, m) if the stack is the alternating pattern A(BA)^m
        with an odd number of slabs, else None.  A single slab counts as
        periodic with m = 0."""
        n = len(self.layers)
        if n < 1 or n % 2 == 0:
            return None
        a = self.layers[0]
        b = self.layers[1] if n > 1 else a
        for i, layer in enumerate(self.layers):
            if layer != (a if i % 2 == 0 else b):
                return None
        return a, b, (n - 1) // 2
