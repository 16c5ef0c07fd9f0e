"""Coordinate charts: the local model every construction lives on.

A chart is a named list of coordinates together with an axis-aligned sampling
box.  Angle coordinates (circle factors) are declared with a period; the
calculus treats them as ordinary reals and the groupoid/quotient layers deal
with periodicity explicitly.
"""

from __future__ import annotations

import numpy as np

Point = tuple  # tuple of floats, length = chart dimension


class ChartError(ValueError):
    pass


class Chart:
    def __init__(
        self,
        coords: tuple[str, ...] | list[str],
        domain: list[tuple[float, float]] | None = None,
        angles: dict[str, float] | None = None,
        name: str = "",
    ):
        coords = tuple(coords)
        if len(coords) < 1:
            raise ChartError("chart needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ChartError(f"duplicate coordinate names in {coords}")
        if domain is None:
            domain = [(-1.0, 1.0)] * len(coords)
        if len(domain) != len(coords):
            raise ChartError("domain box must list one interval per coordinate")
        for lo, hi in domain:
            if not lo <= hi:
                raise ChartError(f"empty interval ({lo}, {hi}) in chart domain")
        angles = dict(angles or {})
        for a in angles:
            if a not in coords:
                raise ChartError(f"angle coordinate {a!r} not in chart")
        self.coords = coords
        self.domain = [(float(lo), float(hi)) for lo, hi in domain]
        self.angles = angles
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, coord: str) -> int:
        try:
            return self.coords.index(coord)
        except ValueError:
            raise ChartError(f"coordinate {coord!r} not in chart {self.coords}") from None

    def sample(self, n: int = 100, seed: int = 42) -> list[Point]:
        """Deterministic uniform sample points inside the domain box."""
        rng = np.random.default_rng(seed)
        lo = np.array([d[0] for d in self.domain])
        hi = np.array([d[1] for d in self.domain])
        pts = rng.uniform(size=(n, self.dim)) * (hi - lo) + lo
        return [tuple(float(x) for x in row) for row in pts]

    def contains(self, point: Point) -> bool:
        return len(point) == self.dim and all(
            lo <= x <= hi for x, (lo, hi) in zip(point, self.domain)
        )

    def product(self, other: "Chart", name: str = "") -> "Chart":
        overlap = set(self.coords) & set(other.coords)
        if overlap:
            raise ChartError(f"cannot form product chart, shared names {sorted(overlap)}")
        return Chart(
            self.coords + other.coords,
            self.domain + other.domain,
            {**self.angles, **other.angles},
            name=name or f"{self.name}x{other.name}",
        )

    def __eq__(self, other):
        return (
            isinstance(other, Chart)
            and self.coords == other.coords
            and self.angles == other.angles
        )

    def __hash__(self):
        return hash((self.coords, tuple(sorted(self.angles.items()))))

    def __repr__(self):
        return f"Chart({self.coords!r})"


def require_same_chart(*objs) -> Chart:
    charts = [o.chart for o in objs]
    first = charts[0]
    for c in charts[1:]:
        if c != first:
            raise ChartError(f"chart mismatch: {first!r} vs {c!r}")
    return first
