"""Scalar fields on a chart, evaluated through second-order jets.

A ``ScalarField`` wraps a deterministic evaluation rule ``point -> Jet2``.
Arithmetic between fields composes the rules lazily; every field caches jets
per point, so deeply derived fields (brackets of brackets, curvatures) stay
cheap at the sample counts used by the checkers.
"""

from __future__ import annotations

from typing import Callable, Union

import numpy as np

from .chart import Chart, ChartError, Point
from .jets import Jet2

Scalar = Union["ScalarField", int, float]

_CACHE_LIMIT = 50_000


class ScalarField:
    def __init__(self, chart: Chart, rule: Callable[[Point], Jet2], name: str = ""):
        self.chart = chart
        self._rule = rule
        self.name = name
        self._cache: dict[Point, Jet2] = {}

    # -- evaluation ----------------------------------------------------------

    def jet(self, point: Point) -> Jet2:
        j = self._cache.get(point)
        if j is None:
            j = self._rule(point)
            if len(self._cache) > _CACHE_LIMIT:
                self._cache.clear()
            self._cache[point] = j
        return j

    def value(self, point: Point) -> float:
        return self.jet(point).v

    def grad(self, point: Point) -> np.ndarray:
        return self.jet(point).g

    def hess(self, point: Point) -> np.ndarray:
        return self.jet(point).h

    def __call__(self, point: Point) -> float:
        return self.value(point)

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def constant(chart: Chart, c: float, name: str = "") -> "ScalarField":
        return ScalarField(chart, lambda p: Jet2.constant(c, chart.dim), name or repr(c))

    @staticmethod
    def coordinate(chart: Chart, coord: str | int) -> "ScalarField":
        i = coord if isinstance(coord, int) else chart.index(coord)
        return ScalarField(
            chart, lambda p: Jet2.coordinate(p[i], i, chart.dim), chart.coords[i]
        )

    # -- algebra ---------------------------------------------------------------

    def _coerce(self, other: Scalar) -> "ScalarField":
        if isinstance(other, ScalarField):
            if other.chart != self.chart:
                raise ChartError("scalar fields live on different charts")
            return other
        return ScalarField.constant(self.chart, float(other))

    def _binary(self, other: Scalar, op, sym: str) -> "ScalarField":
        o = self._coerce(other)
        return ScalarField(
            self.chart, lambda p: op(self.jet(p), o.jet(p)), f"({self.name}{sym}{o.name})"
        )

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b, "+")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b, "-")

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b, "*")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b, "/")

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return ScalarField(self.chart, lambda p: -self.jet(p), f"(-{self.name})")

    def __pow__(self, k: int):
        return ScalarField(self.chart, lambda p: self.jet(p) ** k, f"({self.name}^{k})")

    def apply(self, fn_name: str) -> "ScalarField":
        from .jets import UNARY_FUNCTIONS

        fn = UNARY_FUNCTIONS[fn_name]
        return ScalarField(self.chart, lambda p: fn(self.jet(p)), f"{fn_name}({self.name})")

    # -- calculus ---------------------------------------------------------------

    def partial(self, i: int) -> "ScalarField":
        """d/dx_i as a field; the result carries one derivative order less."""

        def rule(p: Point) -> Jet2:
            j = self.jet(p)
            g = np.array(j.h[i, :]) if j.has_hess else None
            return Jet2(j.g[i], g, None)

        return ScalarField(self.chart, rule, f"d_{i}({self.name})")

    def is_zero(self) -> bool:
        return False

    def extended(self, chart: Chart, index_map: list[int]) -> "ScalarField":
        """View this field on a bigger chart; ``index_map[i]`` is where base
        coordinate ``i`` sits in the new chart."""
        n, m = self.chart.dim, chart.dim
        idx = np.array(index_map)

        def rule(p: Point) -> Jet2:
            base = tuple(p[j] for j in index_map)
            j = self.jet(base)
            g = np.zeros(m)
            g[idx] = j.g
            h = None
            if j.has_hess:
                h = np.zeros((m, m))
                h[np.ix_(idx, idx)] = j.h
            return Jet2(j.v, g, h)

        assert len(index_map) == n
        return ScalarField(chart, rule, self.name)

    def __repr__(self):
        return f"ScalarField({self.name or '<rule>'})"


class ZeroField(ScalarField):
    """Structural zero; lets tensor code skip absent components."""

    def __init__(self, chart: Chart):
        super().__init__(chart, lambda p: Jet2.constant(0.0, chart.dim), "0")

    def is_zero(self) -> bool:
        return True

    def partial(self, i: int) -> "ScalarField":
        return ZeroField(self.chart)


def zero(chart: Chart) -> ZeroField:
    return ZeroField(chart)


def const(chart: Chart, c: float) -> ScalarField:
    if c == 0.0:
        return ZeroField(chart)
    return ScalarField.constant(chart, c)


class ComplexField:
    """A complex scalar field as a (re, im) pair; used for line bundle sections."""

    def __init__(self, re: ScalarField, im: ScalarField):
        if re.chart != im.chart:
            raise ChartError("re/im parts on different charts")
        self.re = re
        self.im = im
        self.chart = re.chart

    @staticmethod
    def constant(chart: Chart, z: complex) -> "ComplexField":
        return ComplexField(const(chart, z.real), const(chart, z.imag))

    def __add__(self, other: "ComplexField") -> "ComplexField":
        return ComplexField(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexField") -> "ComplexField":
        return ComplexField(self.re - other.re, self.im - other.im)

    def __mul__(self, other) -> "ComplexField":
        if isinstance(other, ComplexField):
            return ComplexField(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, complex):
            return ComplexField(
                self.re * other.real - self.im * other.imag,
                self.re * other.imag + self.im * other.real,
            )
        return ComplexField(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexField":
        return ComplexField(-self.re, -self.im)

    def times_i(self) -> "ComplexField":
        return ComplexField(-self.im, self.re)

    def conj(self) -> "ComplexField":
        return ComplexField(self.re, -self.im)

    def value(self, point: Point) -> complex:
        return complex(self.re.value(point), self.im.value(point))

    def __repr__(self):
        return f"ComplexField({self.re.name} + i*{self.im.name})"
