"""Second-order forward-mode jets.

A ``Jet2`` carries the value and, when available, gradient and Hessian of a
scalar quantity with respect to the chart coordinates.  All chart calculus in
this package is exact (up to floating point) because every field evaluation
propagates jets instead of sampling finite differences.

Fields built from expressions carry full second-order jets.  Differentiating a
field consumes one order: the components of an exterior derivative or of a Lie
bracket know their value and gradient but not their Hessian, and a second
differentiation leaves value-only jets.  Arithmetic propagates the minimum
available order, and reading a missing slot raises ``JetOrderError``.  This
keeps the calculus honest: nothing in scope needs third derivatives, and an
accidental request for one fails loudly instead of returning garbage.
"""

from __future__ import annotations

import math
from typing import Union

import numpy as np

Number = Union[int, float]


class JetOrderError(ArithmeticError):
    """Raised when a computation would need derivatives beyond the carried order."""


class JetDomainError(ArithmeticError):
    """Raised on evaluation outside a function's domain (log(x<=0), 1/0, ...)."""


class Jet2:
    __slots__ = ("v", "_g", "_h")

    def __init__(self, v: float, g: np.ndarray | None, h: np.ndarray | None):
        self.v = float(v)
        self._g = g
        self._h = h if g is not None else None

    @property
    def g(self) -> np.ndarray:
        if self._g is None:
            raise JetOrderError(
                "gradient requested from a value-only quantity "
                "(a field differentiated twice carries no further derivatives)"
            )
        return self._g

    @property
    def h(self) -> np.ndarray:
        if self._h is None:
            raise JetOrderError(
                "second derivative requested from a first-order quantity "
                "(a field obtained by differentiating another field)"
            )
        return self._h

    @property
    def has_grad(self) -> bool:
        return self._g is not None

    @property
    def has_hess(self) -> bool:
        return self._h is not None

    @property
    def dim(self) -> int:
        if self._g is None:
            raise JetOrderError("value-only jet has no coordinate dimension")
        return self._g.shape[0]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value: Number, dim: int) -> "Jet2":
        return Jet2(float(value), np.zeros(dim), np.zeros((dim, dim)))

    @staticmethod
    def coordinate(value: Number, index: int, dim: int) -> "Jet2":
        g = np.zeros(dim)
        g[index] = 1.0
        return Jet2(float(value), g, np.zeros((dim, dim)))

    def _coerce(self, x: Union["Jet2", Number]) -> "Jet2":
        if isinstance(x, Jet2):
            return x
        if self._g is None:
            return Jet2(float(x), None, None)
        return Jet2.constant(x, self.dim)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        g = self._g + o._g if (self._g is not None and o._g is not None) else None
        h = self._h + o._h if (self._h is not None and o._h is not None) else None
        return Jet2(self.v + o.v, g, h)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        g = self._g - o._g if (self._g is not None and o._g is not None) else None
        h = self._h - o._h if (self._h is not None and o._h is not None) else None
        return Jet2(self.v - o.v, g, h)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o - self

    def __neg__(self):
        return Jet2(
            -self.v,
            None if self._g is None else -self._g,
            None if self._h is None else -self._h,
        )

    def __mul__(self, other):
        o = self._coerce(other)
        g = h = None
        if self._g is not None and o._g is not None:
            g = self.v * o._g + o.v * self._g
            if self._h is not None and o._h is not None:
                cross = np.outer(self._g, o._g)
                h = self.v * o._h + o.v * self._h + cross + cross.T
        return Jet2(self.v * o.v, g, h)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.v == 0.0:
            raise JetDomainError("division by zero")
        return self * o._reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def _reciprocal(self) -> "Jet2":
        inv = 1.0 / self.v
        return self._chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __pow__(self, k: int) -> "Jet2":
        if not isinstance(k, int):
            raise TypeError("jet exponent must be an integer")
        if k == 0:
            one = Jet2(1.0, None, None)
            if self._g is not None:
                return Jet2.constant(1.0, self.dim)
            return one
        if self.v == 0.0:
            if k < 0:
                raise JetDomainError("zero raised to a negative power")
            if k == 1:
                return self
        return self._chain(
            self.v**k,
            k * self.v ** (k - 1),
            k * (k - 1) * self.v ** (k - 2) if k != 1 else 0.0,
        )

    # -- elementary functions ------------------------------------------------

    def _chain(self, f: float, df: float, d2f: float) -> "Jet2":
        g = h = None
        if self._g is not None:
            g = df * self._g
            if self._h is not None:
                h = df * self._h + d2f * np.outer(self._g, self._g)
        return Jet2(f, g, h)

    def sin(self):
        s, c = math.sin(self.v), math.cos(self.v)
        return self._chain(s, c, -s)

    def cos(self):
        s, c = math.sin(self.v), math.cos(self.v)
        return self._chain(c, -s, -c)

    def exp(self):
        e = math.exp(self.v)
        return self._chain(e, e, e)

    def log(self):
        if self.v <= 0.0:
            raise JetDomainError(f"log of non-positive value {self.v}")
        return self._chain(math.log(self.v), 1.0 / self.v, -1.0 / (self.v * self.v))

    def sqrt(self):
        if self.v < 0.0:
            raise JetDomainError(f"sqrt of negative value {self.v}")
        if self.v == 0.0:
            raise JetDomainError("sqrt not differentiable at 0")
        r = math.sqrt(self.v)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.v))

    def __repr__(self):
        return f"Jet2(v={self.v!r}, g={self._g!r}, h={self._h!r})"


UNARY_FUNCTIONS = {
    "sin": Jet2.sin,
    "cos": Jet2.cos,
    "exp": Jet2.exp,
    "log": Jet2.log,
    "sqrt": Jet2.sqrt,
    "neg": Jet2.__neg__,
}
