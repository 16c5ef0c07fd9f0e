"""Smooth maps between charts, with exact differentials from jets."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .chart import Chart, ChartError, Point
from .jets import Jet2
from .scalars import ScalarField


class ChartMap:
    """A map src -> dst given by one scalar field per target coordinate."""

    def __init__(self, src: Chart, dst: Chart, comps: list[ScalarField], name: str = ""):
        if len(comps) != dst.dim:
            raise ChartError("need one component per target coordinate")
        for c in comps:
            if c.chart != src:
                raise ChartError("map components must live on the source chart")
        self.src = src
        self.dst = dst
        self.comps = comps
        self.name = name

    @staticmethod
    def from_exprs(
        src: Chart, dst: Chart, exprs: list[str], params: Mapping[str, float] | None = None
    ) -> "ChartMap":
        from .expr import field

        return ChartMap(src, dst, [field(e, src, params) for e in exprs], name=";".join(exprs))

    @staticmethod
    def identity(chart: Chart) -> "ChartMap":
        return ChartMap(
            chart, chart, [ScalarField.coordinate(chart, i) for i in range(chart.dim)], "id"
        )

    @staticmethod
    def projection(src: Chart, dst: Chart) -> "ChartMap":
        """Drop the source coordinates not present in dst (by name)."""
        comps = [ScalarField.coordinate(src, src.index(c)) for c in dst.coords]
        return ChartMap(src, dst, comps, "proj")

    def __call__(self, point: Point) -> Point:
        return tuple(c.value(point) for c in self.comps)

    def jacobian(self, point: Point) -> np.ndarray:
        return np.array([c.grad(point) for c in self.comps])

    def push_vector(self, point: Point, v: np.ndarray) -> np.ndarray:
        return self.jacobian(point) @ np.asarray(v, dtype=float)

    def pull_covector(self, point: Point, xi: np.ndarray) -> np.ndarray:
        return self.jacobian(point).T @ np.asarray(xi, dtype=float)

    def pullback_scalar(self, f: ScalarField) -> ScalarField:
        """f o self, with the full second-order chain rule."""
        if f.chart != self.dst:
            raise ChartError("field lives on a different chart than the map target")

        def rule(p: Point) -> Jet2:
            jc = [c.jet(p) for c in self.comps]
            jf = f.jet(tuple(j.v for j in jc))
            if not jf.has_grad:
                return Jet2(jf.v, None, None)
            J = np.array([j.g for j in jc])
            g = J.T @ jf.g
            h = None
            if jf.has_hess and all(j.has_hess for j in jc):
                h = J.T @ jf.h @ J
                for k, j in enumerate(jc):
                    h = h + jf.g[k] * j.h
            return Jet2(jf.v, g, h)

        return ScalarField(self.src, rule, f"({f.name})o({self.name})")

    def compose(self, inner: "ChartMap") -> "ChartMap":
        """self o inner."""
        if inner.dst != self.src:
            raise ChartError("charts do not chain")
        return ChartMap(
            inner.src, self.dst, [inner.pullback_scalar(c) for c in self.comps],
            f"({self.name})o({inner.name})",
        )

    def __repr__(self):
        return f"ChartMap({self.src.coords} -> {self.dst.coords}, {self.name})"
