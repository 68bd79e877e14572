"""Error types shared across the package.

Every error carries a stable ``code`` so the CLI can print a one-line,
machine-parsable reason of the form ``error: <Code>: <detail>``.
"""

from __future__ import annotations


class KnotoidError(Exception):
    code = "KnotoidError"

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    def line(self) -> str:
        detail = " ".join(self.detail.split())
        return f"error: {self.code}: {detail}" if detail else f"error: {self.code}"


def _make(name: str) -> type[KnotoidError]:
    return type(name, (KnotoidError,), {"code": name})


DegenerateIntersection = _make("DegenerateIntersection")
NotClosedOnSurface = _make("NotClosedOnSurface")
PointOnLoop = _make("PointOnLoop")
NonGenericRay = _make("NonGenericRay")
InvalidDiagram = _make("InvalidDiagram")
UnassignedCrossing = _make("UnassignedCrossing")
UnknownCrossing = _make("UnknownCrossing")
NoRoom = _make("NoRoom")
TopologyCorruption = _make("TopologyCorruption")
ExtendedStateEncountered = _make("ExtendedStateEncountered")
MixedClassificationAmbiguity = _make("MixedClassificationAmbiguity")
NonInvertible = _make("NonInvertible")
FlavorMismatch = _make("FlavorMismatch")
RoutingCollision = _make("RoutingCollision")
OddCrossingParity = _make("OddCrossingParity")
UnknownExample = _make("UnknownExample")
ParseError = _make("ParseError")
