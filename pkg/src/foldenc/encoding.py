"""Common container returned by every encoder."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .lattice import Instance
from .pbpoly import PBPoly, dumps


@dataclass(frozen=True)
class Encoding:
    kind: str
    instance: Instance
    poly: PBPoly
    layout: Any
    penalties: dict = field(default_factory=dict)
    constant: int = 0

    @property
    def nvars(self) -> int:
        return self.layout.total_bits

    def energy(self, assignment) -> object:
        return self.poly.evaluate(assignment) + self.constant

    def poly_text(self) -> str:
        return dumps(self.poly, nvars=self.nvars)

    def sidecar(self) -> dict:
        return {
            "encoding": self.kind,
            "sequence": "".join(self.instance.sequence),
            "nvars": self.nvars,
            "penalties": self.penalties,
            "variables": self.layout.roles(),
        }

    def sidecar_text(self) -> str:
        return json.dumps(self.sidecar(), indent=1) + "\n"
