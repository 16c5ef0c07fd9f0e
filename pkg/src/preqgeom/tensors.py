"""Forms and multivector fields of degree <= 3, with the exterior calculus.

Components are stored only for strictly increasing index tuples; everything
else follows by antisymmetry.  Degree is capped at three: the highest-degree
objects any identity in scope produces are Schouten brackets of bivectors
(3-vectors) and differentials of 2-forms (3-forms).

Conventions (all checked against independent oracles in the tests):
  (a wedge b)_ij        = a_i b_j - a_j b_i
  (i_X w)_j             = sum_l X^l w_lj
  (d a)_ij              = d_i a_j - d_j a_i
  w(X, Y)               = sum_ij w_ij X^i Y^j          (full antisymmetric sum)
  Lam(xi, eta)          = sum_ij Lam^ij xi_i eta_j
  sharp(Lam, xi)        = Lam(., xi), components sum_j Lam^ij xi_j
  schouten(A, B)^ijk    = sum_cyc sum_l (d_l A^ij B^lk + d_l B^ij A^lk)
  lie_derivative        = Cartan formula i_X d + d i_X
"""

from __future__ import annotations

import itertools

from .chart import Chart, ChartError, Point, require_same_chart
from .scalars import ScalarField, ZeroField, const, zero


class DegreeError(ValueError):
    pass


def _sorted_key(idx: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning (sorted tuple, permutation sign)."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return idx, 0
    perm = sorted(range(len(idx)), key=lambda a: idx[a])
    sign = 1
    seen = [False] * len(idx)
    for start in range(len(idx)):
        if seen[start]:
            continue
        length, a = 0, start
        while not seen[a]:
            seen[a] = True
            a = perm[a]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(sorted(idx)), sign


class _Tensor:
    """Shared storage for antisymmetric covariant/contravariant tensors."""

    degree: int

    def __init__(self, chart: Chart, comps: dict[tuple[int, ...], ScalarField]):
        self.chart = chart
        self.comps = {
            k: v for k, v in comps.items() if not (isinstance(v, ZeroField) and v.is_zero())
        }
        for k in self.comps:
            if len(k) != self.degree or list(k) != sorted(k):
                raise DegreeError(f"bad component index {k} for degree {self.degree}")

    def comp(self, *idx: int) -> ScalarField:
        key, sign = _sorted_key(tuple(idx))
        if sign == 0:
            return zero(self.chart)
        f = self.comps.get(key)
        if f is None:
            return zero(self.chart)
        return f if sign == 1 else -f

    def keys(self):
        return itertools.combinations(range(self.chart.dim), self.degree)

    def max_abs(self, point: Point) -> float:
        vals = [abs(f.value(point)) for f in self.comps.values()]
        return max(vals) if vals else 0.0

    def _zip(self, other, op):
        require_same_chart(self, other)
        keys = set(self.comps) | set(other.comps)
        return type(self)(
            self.chart,
            {k: op(self.comps.get(k, zero(self.chart)), other.comps.get(k, zero(self.chart))) for k in keys},
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)(self.chart, {k: -v for k, v in self.comps.items()})

    def scaled(self, f):
        """Multiply by a scalar field or number."""
        return type(self)(self.chart, {k: v * f for k, v in self.comps.items()})

    def __repr__(self):
        names = {k: getattr(v, "name", "?") for k, v in self.comps.items()}
        return f"{type(self).__name__}({names})"


class _Rank1(_Tensor):
    degree = 1

    def __init__(self, chart: Chart, comps):
        if isinstance(comps, (list, tuple)):
            comps = {(i,): c for i, c in enumerate(comps)}
        super().__init__(chart, comps)

    def values(self, point: Point):
        import numpy as np

        return np.array([self.comp(i).value(point) for i in range(self.chart.dim)])

    @classmethod
    def from_components(cls, chart: Chart, comps: list[ScalarField]):
        return cls(chart, comps)

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, {})


class VectorField(_Rank1):
    pass


class OneForm(_Rank1):
    pass


class _Rank2(_Tensor):
    degree = 2

    def matrix(self, point: Point):
        import numpy as np

        n = self.chart.dim
        m = np.zeros((n, n))
        for (i, j), f in self.comps.items():
            v = f.value(point)
            m[i, j] = v
            m[j, i] = -v
        return m

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, {})


class TwoForm(_Rank2):
    pass


class Bivector(_Rank2):
    pass


class _Rank3(_Tensor):
    degree = 3

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, {})


class ThreeForm(_Rank3):
    pass


class ThreeVector(_Rank3):
    pass


_FORM_OF_DEGREE = {0: ScalarField, 1: OneForm, 2: TwoForm, 3: ThreeForm}
_VEC_OF_DEGREE = {1: VectorField, 2: Bivector, 3: ThreeVector}


def form_degree(form) -> int:
    if isinstance(form, ScalarField):
        return 0
    if isinstance(form, (OneForm, TwoForm, ThreeForm)):
        return form.degree
    raise DegreeError(f"not a form: {form!r}")


def coordinate_vector(chart: Chart, i: int) -> VectorField:
    return VectorField(chart, {(i,): const(chart, 1.0)})


def coordinate_form(chart: Chart, i: int) -> OneForm:
    return OneForm(chart, {(i,): const(chart, 1.0)})


# -- exterior derivative ------------------------------------------------------


def exterior_derivative(form):
    k = form_degree(form)
    chart = form.chart
    if k == 0:
        return OneForm(chart, {(i,): form.partial(i) for i in range(chart.dim)})
    if k >= 3:
        raise DegreeError("exterior derivative of a 3-form exceeds the degree cap")
    out: dict[tuple[int, ...], ScalarField] = {}
    for key in itertools.combinations(range(chart.dim), k + 1):
        total = zero(chart)
        for pos, i in enumerate(key):
            rest = key[:pos] + key[pos + 1 :]
            c = form.comp(*rest)
            if c.is_zero():
                continue
            term = c.partial(i)
            total = total + term if pos % 2 == 0 else total - term
        if not isinstance(total, ZeroField):
            out[key] = total
    return _FORM_OF_DEGREE[k + 1](chart, out)


# -- interior product and pairings --------------------------------------------


def interior_product(X: VectorField, form):
    k = form_degree(form)
    chart = require_same_chart(X, form)
    if k == 0:
        raise DegreeError("degree underflow: interior product with a 0-form")
    n = chart.dim
    if k == 1:
        total = zero(chart)
        for l in range(n):
            xl, al = X.comp(l), form.comp(l)
            if xl.is_zero() or al.is_zero():
                continue
            total = total + xl * al
        return total
    out: dict[tuple[int, ...], ScalarField] = {}
    for key in itertools.combinations(range(n), k - 1):
        total = zero(chart)
        for l in range(n):
            xl = X.comp(l)
            wl = form.comp(l, *key)
            if xl.is_zero() or wl.is_zero():
                continue
            total = total + xl * wl
        if not isinstance(total, ZeroField):
            out[key] = total
    return _FORM_OF_DEGREE[k - 1](chart, out)


def two_form_apply(w: TwoForm, X: VectorField, Y: VectorField) -> ScalarField:
    return interior_product(Y, interior_product(X, w))


def bivector_apply(lam: Bivector, xi: OneForm, eta: OneForm) -> ScalarField:
    chart = require_same_chart(lam, xi, eta)
    total = zero(chart)
    for (i, j), l in lam.comps.items():
        total = total + l * (xi.comp(i) * eta.comp(j) - xi.comp(j) * eta.comp(i))
    return total


def bivector_sharp(lam: Bivector, xi: OneForm) -> VectorField:
    """The map xi -> Lam(., xi)."""
    chart = require_same_chart(lam, xi)
    comps = {}
    for i in range(chart.dim):
        total = zero(chart)
        for j in range(chart.dim):
            lij = lam.comp(i, j)
            xj = xi.comp(j)
            if lij.is_zero() or xj.is_zero():
                continue
            total = total + lij * xj
        if not isinstance(total, ZeroField):
            comps[(i,)] = total
    return VectorField(chart, comps)


def pairing(xi: OneForm, X: VectorField) -> ScalarField:
    return interior_product(X, xi)


# -- wedge ---------------------------------------------------------------------


def wedge(a, b):
    """Wedge product of forms or of multivectors (result degree <= 3)."""
    if isinstance(a, ScalarField):
        return b.scaled(a) if not isinstance(b, ScalarField) else a * b
    if isinstance(b, ScalarField):
        return a.scaled(b)
    cov_a = isinstance(a, (OneForm, TwoForm, ThreeForm))
    cov_b = isinstance(b, (OneForm, TwoForm, ThreeForm))
    if cov_a != cov_b:
        raise DegreeError("cannot wedge a form with a multivector")
    chart = require_same_chart(a, b)
    k = a.degree + b.degree
    if k > 3:
        raise DegreeError(f"degree overflow: wedge of degrees {a.degree} and {b.degree}")
    family = _FORM_OF_DEGREE if cov_a else _VEC_OF_DEGREE
    out: dict[tuple[int, ...], ScalarField] = {}
    for key in itertools.combinations(range(chart.dim), k):
        total = zero(chart)
        for split in itertools.combinations(range(k), a.degree):
            left = tuple(key[s] for s in split)
            right = tuple(key[s] for s in range(k) if s not in split)
            sign = _shuffle_sign(split, k)
            ca, cb = a.comp(*left), b.comp(*right)
            if ca.is_zero() or cb.is_zero():
                continue
            term = ca * cb
            total = total + term if sign == 1 else total - term
        if not isinstance(total, ZeroField):
            out[key] = total
    return family[k](chart, out)


def _shuffle_sign(split: tuple[int, ...], k: int) -> int:
    perm = list(split) + [s for s in range(k) if s not in split]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


# -- Lie calculus ----------------------------------------------------------------


def directional(X: VectorField, f: ScalarField) -> ScalarField:
    chart = require_same_chart(X, f)
    total = zero(chart)
    for i in range(chart.dim):
        xi = X.comp(i)
        if xi.is_zero():
            continue
        total = total + xi * f.partial(i)
    return total


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    chart = require_same_chart(X, Y)
    comps = {}
    for i in range(chart.dim):
        total = zero(chart)
        for j in range(chart.dim):
            xj, yj = X.comp(j), Y.comp(j)
            if not xj.is_zero():
                total = total + xj * Y.comp(i).partial(j)
            if not yj.is_zero():
                total = total - yj * X.comp(i).partial(j)
        if not isinstance(total, ZeroField):
            comps[(i,)] = total
    return VectorField(chart, comps)


def lie_derivative(X: VectorField, form):
    k = form_degree(form)
    if k == 0:
        return directional(X, form)
    if k >= 3:
        raise DegreeError("Lie derivative capped at 2-forms (nothing in scope needs more)")
    return interior_product(X, exterior_derivative(form)) + exterior_derivative(
        interior_product(X, form)
    )


# -- Schouten bracket ---------------------------------------------------------------


def schouten(a: Bivector, b: Bivector) -> ThreeVector:
    """Schouten bracket of two bivectors, via the cyclic coordinate formula."""
    chart = require_same_chart(a, b)
    n = chart.dim
    out: dict[tuple[int, ...], ScalarField] = {}
    for key in itertools.combinations(range(n), 3):
        total = zero(chart)
        for (i, j, k) in (key, (key[1], key[2], key[0]), (key[2], key[0], key[1])):
            for l in range(n):
                aij, blk = a.comp(i, j), b.comp(l, k)
                if not (aij.is_zero() or blk.is_zero()):
                    total = total + aij.partial(l) * blk
                bij, alk = b.comp(i, j), a.comp(l, k)
                if not (bij.is_zero() or alk.is_zero()):
                    total = total + bij.partial(l) * alk
        if not isinstance(total, ZeroField):
            out[key] = total
    return ThreeVector(chart, out)


def schouten_ve(E: VectorField, lam: Bivector) -> Bivector:
    """[E, Lam] = Lie derivative of the bivector along E."""
    chart = require_same_chart(E, lam)
    n = chart.dim
    out: dict[tuple[int, ...], ScalarField] = {}
    for (i, j) in itertools.combinations(range(n), 2):
        total = zero(chart)
        for l in range(n):
            el = E.comp(l)
            lij = lam.comp(i, j)
            if not (el.is_zero() or lij.is_zero()):
                total = total + el * lij.partial(l)
            llj = lam.comp(l, j)
            if not llj.is_zero():
                total = total - llj * E.comp(i).partial(l)
            lil = lam.comp(i, l)
            if not lil.is_zero():
                total = total - lil * E.comp(j).partial(l)
        if not isinstance(total, ZeroField):
            out[(i, j)] = total
    return Bivector(chart, out)
