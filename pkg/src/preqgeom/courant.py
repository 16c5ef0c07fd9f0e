"""Sections, pairings, Courant brackets, and structure validation.

Two kinds of section are handled uniformly:

* Dirac sections ``X (+) xi`` of TP (+) T*P, value layout ``[X | xi]``;
* extended sections ``(X, f) (+) (xi, g)`` of (TQ x R) (+) (T*Q x R),
  value layout ``[X | f | xi | g]``.

Sign conventions fixed here once and verified by the checkers:

* ``sharp(Lam, xi) = Lam(., xi)``;
* hamiltonian data of ``g`` solves ``(X_g, phi_g) (+) (dg, g) in frame``;
* ``bracket(f, g) = X_g . f + f phi_g`` (so ``{x, y} = Lam(dx, dy)`` on the
  graph of a Poisson bivector).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chart import Chart, ChartError, Point, require_same_chart
from .linalg import (
    in_span_residual,
    kernel,
    least_norm_solution,
    orthonormal_rows,
    rank,
    spans_match,
)
from .maps import ChartMap
from .scalars import ScalarField, const, zero
from .tensors import (
    Bivector,
    OneForm,
    TwoForm,
    VectorField,
    bivector_sharp,
    coordinate_form,
    coordinate_vector,
    directional,
    exterior_derivative,
    interior_product,
    lie_bracket,
    lie_derivative,
    schouten,
    schouten_ve,
    wedge,
)


class StructureError(ValueError):
    pass


class NotAdmissible(StructureError):
    pass


# -- sections -----------------------------------------------------------------


class DiracSection:
    def __init__(self, X: VectorField, xi: OneForm):
        self.chart = require_same_chart(X, xi)
        self.X = X
        self.xi = xi

    def values(self, point: Point) -> np.ndarray:
        return np.concatenate([self.X.values(point), self.xi.values(point)])

    def __add__(self, other: "DiracSection") -> "DiracSection":
        return DiracSection(self.X + other.X, self.xi + other.xi)

    def scaled(self, f) -> "DiracSection":
        return DiracSection(self.X.scaled(f), self.xi.scaled(f))

    def __neg__(self):
        return DiracSection(-self.X, -self.xi)

    @staticmethod
    def zero(chart: Chart) -> "DiracSection":
        return DiracSection(VectorField.zero(chart), OneForm.zero(chart))


class E1Section:
    def __init__(self, X: VectorField, f: ScalarField, xi: OneForm, g: ScalarField):
        self.chart = require_same_chart(X, f, xi, g)
        self.X = X
        self.f = f
        self.xi = xi
        self.g = g

    def values(self, point: Point) -> np.ndarray:
        return np.concatenate(
            [
                self.X.values(point),
                [self.f.value(point)],
                self.xi.values(point),
                [self.g.value(point)],
            ]
        )

    def __add__(self, other: "E1Section") -> "E1Section":
        return E1Section(self.X + other.X, self.f + other.f, self.xi + other.xi, self.g + other.g)

    def scaled(self, h) -> "E1Section":
        return E1Section(self.X.scaled(h), self.f * h, self.xi.scaled(h), self.g * h)

    def __neg__(self):
        return E1Section(-self.X, -self.f, -self.xi, -self.g)

    @staticmethod
    def zero(chart: Chart) -> "E1Section":
        return E1Section(VectorField.zero(chart), zero(chart), OneForm.zero(chart), zero(chart))

    @staticmethod
    def from_dirac(s: DiracSection) -> "E1Section":
        return E1Section(s.X, zero(s.chart), s.xi, zero(s.chart))


Section = DiracSection | E1Section


# -- pairings -----------------------------------------------------------------


def pair_plus(a: Section, b: Section) -> ScalarField:
    """Symmetric pairing <a,b>_+ = (i_{X2}xi1 + i_{X1}xi2 (+ g2 f1 + g1 f2)) / 2."""
    require_same_chart(a, b)
    total = interior_product(b.X, a.xi) + interior_product(a.X, b.xi)
    if isinstance(a, E1Section):
        total = total + b.g * a.f + a.g * b.f
    return total * 0.5


def pair_minus(a: Section, b: Section) -> ScalarField:
    """Antisymmetric pairing <a,b>_- = (i_{X2}xi1 - i_{X1}xi2 (+ f1 g2 - g1 f2)) / 2."""
    require_same_chart(a, b)
    total = interior_product(b.X, a.xi) - interior_product(a.X, b.xi)
    if isinstance(a, E1Section):
        total = total + a.f * b.g - a.g * b.f
    return total * 0.5


def plus_pairing_matrix(dim: int, extended: bool) -> np.ndarray:
    """Matrix G with <u,v>_+ = u^T G v in the section value layout."""
    m = 2 * dim + 2 if extended else 2 * dim
    half = m // 2
    g = np.zeros((m, m))
    for i in range(half):
        g[i, half + i] = 0.5
        g[half + i, i] = 0.5
    return g


# -- brackets -----------------------------------------------------------------


def courant_bracket(a: DiracSection, b: DiracSection) -> DiracSection:
    require_same_chart(a, b)
    X = lie_bracket(a.X, b.X)
    skew = interior_product(b.X, a.xi) - interior_product(a.X, b.xi)
    xi = (
        lie_derivative(a.X, b.xi)
        - lie_derivative(b.X, a.xi)
        + exterior_derivative(skew).scaled(0.5)
    )
    return DiracSection(X, xi)


def extended_courant_bracket(a: E1Section, b: E1Section) -> E1Section:
    require_same_chart(a, b)
    X = lie_bracket(a.X, b.X)
    f = directional(a.X, b.f) - directional(b.X, a.f)
    skew = interior_product(b.X, a.xi) - interior_product(a.X, b.xi)
    xi = (
        lie_derivative(a.X, b.xi)
        - lie_derivative(b.X, a.xi)
        + exterior_derivative(skew).scaled(0.5)
        + b.xi.scaled(a.f)
        - a.xi.scaled(b.f)
        + (
            exterior_derivative(a.f).scaled(b.g)
            - exterior_derivative(b.f).scaled(a.g)
            - exterior_derivative(b.g).scaled(a.f)
            + exterior_derivative(a.g).scaled(b.f)
        ).scaled(0.5)
    )
    g = directional(a.X, b.g) - directional(b.X, a.g) + (skew - b.f * a.g + a.f * b.g) * 0.5
    return E1Section(X, f, xi, g)


def bracket(a: Section, b: Section) -> Section:
    if isinstance(a, DiracSection):
        return courant_bracket(a, b)
    return extended_courant_bracket(a, b)


# -- frames -------------------------------------------------------------------


class StructureFrame:
    """A candidate Dirac ('dirac') or Jacobi-Dirac ('jacobi_dirac') structure,
    given by a spanning list of sections."""

    def __init__(self, kind: str, sections: list, chart: Chart):
        if kind not in ("dirac", "jacobi_dirac"):
            raise StructureError(f"unknown structure kind {kind!r}")
        want = DiracSection if kind == "dirac" else E1Section
        for s in sections:
            if not isinstance(s, want):
                raise StructureError(f"{kind} frame needs {want.__name__} entries")
            if s.chart != chart:
                raise ChartError("section lives on a different chart")
        self.kind = kind
        self.sections = list(sections)
        self.chart = chart

    @property
    def expected_rank(self) -> int:
        return self.chart.dim + (1 if self.kind == "jacobi_dirac" else 0)

    @property
    def ambient_dim(self) -> int:
        return 2 * self.chart.dim + (2 if self.kind == "jacobi_dirac" else 0)

    @property
    def extended(self) -> bool:
        return self.kind == "jacobi_dirac"

    def matrix(self, point: Point) -> np.ndarray:
        return np.array([s.values(point) for s in self.sections])

    def rank_at(self, point: Point, tol: float = 1e-9) -> int:
        return rank(self.matrix(point), tol)

    def check_rank(self, samples, tol: float = 1e-9):
        for p in samples:
            r = self.rank_at(p, tol)
            if r < len(self.sections):
                raise StructureError(
                    f"frame is rank-deficient at {p}: rank {r} from {len(self.sections)} sections"
                )

    def anchor_values(self, point: Point) -> np.ndarray:
        n = self.chart.dim
        return self.matrix(point)[:, :n]


# -- graph constructors ----------------------------------------------------------


def graph_of_two_form(w: TwoForm) -> StructureFrame:
    chart = w.chart
    sections = []
    for i in range(chart.dim):
        e = coordinate_vector(chart, i)
        sections.append(DiracSection(e, interior_product(e, w)))
    return StructureFrame("dirac", sections, chart)


def graph_of_bivector(lam: Bivector, samples=None, tol: float = 1e-8) -> StructureFrame:
    chart = lam.chart
    if samples is not None:
        res = max(schouten(lam, lam).max_abs(p) for p in samples)
        if res > tol:
            raise StructureError(f"not Poisson: [Lam,Lam] residual {res:.3e}")
    sections = []
    for i in range(chart.dim):
        dxi = coordinate_form(chart, i)
        sections.append(DiracSection(bivector_sharp(lam, dxi), dxi))
    return StructureFrame("dirac", sections, chart)


def graph_of_one_form(sigma: OneForm) -> StructureFrame:
    """Sections (X, f) (+) (i_X d sigma + f sigma, -sigma(X))."""
    chart = sigma.chart
    dsigma = exterior_derivative(sigma)
    sections = []
    for i in range(chart.dim):
        e = coordinate_vector(chart, i)
        sections.append(
            E1Section(e, zero(chart), interior_product(e, dsigma), -interior_product(e, sigma))
        )
    sections.append(
        E1Section(VectorField.zero(chart), const(chart, 1.0), sigma, zero(chart))
    )
    return StructureFrame("jacobi_dirac", sections, chart)


def graph_of_jacobi_pair(
    lam: Bivector, E: VectorField, samples=None, tol: float = 1e-8
) -> StructureFrame:
    """Sections (sharp(Lam) xi - g E, i_E xi) (+) (xi, g)."""
    chart = require_same_chart(lam, E)
    if samples is not None:
        res1 = max(schouten_ve(E, lam).max_abs(p) for p in samples)
        diff = schouten(lam, lam) - wedge(E, lam).scaled(2.0)
        res2 = max(diff.max_abs(p) for p in samples)
        if max(res1, res2) > tol:
            raise StructureError(
                f"not Jacobi: [E,Lam] residual {res1:.3e}, [Lam,Lam]-2E^Lam residual {res2:.3e}"
            )
    sections = []
    for i in range(chart.dim):
        dxi = coordinate_form(chart, i)
        sections.append(
            E1Section(bivector_sharp(lam, dxi), interior_product(E, dxi), dxi, zero(chart))
        )
    sections.append(E1Section(-E, zero(chart), OneForm.zero(chart), const(chart, 1.0)))
    return StructureFrame("jacobi_dirac", sections, chart)


def diracization(L: StructureFrame) -> StructureFrame:
    """L^c: sections (X, 0) (+) (xi, g) for X (+) xi in L and free g."""
    if L.kind != "dirac":
        raise StructureError("diracization takes a Dirac frame")
    chart = L.chart
    sections = [E1Section.from_dirac(s) for s in L.sections]
    sections.append(
        E1Section(VectorField.zero(chart), zero(chart), OneForm.zero(chart), const(chart, 1.0))
    )
    return StructureFrame("jacobi_dirac", sections, chart)


# -- validation checks ---------------------------------------------------------


@dataclass
class CheckOutcome:
    residual: float
    passed: bool
    detail: str = ""


def is_isotropic(frame: StructureFrame, samples, tol: float = 1e-9) -> CheckOutcome:
    frame.check_rank(samples)
    fields = []
    for i, a in enumerate(frame.sections):
        for b in frame.sections[i:]:
            fields.append(pair_plus(a, b))
    res = max(abs(f.value(p)) for f in fields for p in samples)
    return CheckOutcome(res, res <= tol)


def is_closed_under_bracket(frame: StructureFrame, samples, tol: float = 1e-8) -> CheckOutcome:
    frame.check_rank(samples)
    brackets = []
    for i, a in enumerate(frame.sections):
        for b in frame.sections[i + 1 :]:
            brackets.append(bracket(a, b))
    worst = 0.0
    for p in samples:
        m = frame.matrix(p)
        for br in brackets:
            worst = max(worst, in_span_residual(m, br.values(p)))
    return CheckOutcome(worst, worst <= tol)


# -- pushforward / pullback -----------------------------------------------------


def _split(values: np.ndarray, dim: int, extended: bool):
    if extended:
        return values[:dim], values[dim], values[dim + 1 : 2 * dim + 1], values[2 * dim + 1]
    return values[:dim], None, values[dim:], None


def _assemble(X, f, xi, g, extended: bool) -> np.ndarray:
    parts = [np.atleast_1d(np.asarray(X, dtype=float))]
    if extended:
        parts.append([float(f)])
    parts.append(np.atleast_1d(np.asarray(xi, dtype=float)))
    if extended:
        parts.append([float(g)])
    return np.concatenate([np.asarray(p, dtype=float) for p in parts])


def _submersion_jacobian(pi: ChartMap, q: Point) -> np.ndarray:
    J = pi.jacobian(q)
    if rank(J) < pi.dst.dim:
        raise StructureError(f"map is not submersive at {q}")
    return J


def pushforward_at(frame: StructureFrame, pi: ChartMap, q: Point, tol: float = 1e-9) -> np.ndarray:
    """Basis rows of the pushed-forward subspace at pi(q)."""
    if pi.src != frame.chart:
        raise ChartError("frame does not live on the map source")
    J = _submersion_jacobian(pi, q)
    n, ext = frame.chart.dim, frame.extended
    ker_rows = kernel(J)
    M = frame.matrix(q)
    if ker_rows.shape[0] == 0:
        coeff_basis = np.eye(M.shape[0])
    else:
        xi_block = M[:, n + 1 : 2 * n + 1] if ext else M[:, n:]
        coeff_basis = kernel(ker_rows @ xi_block.T)
    out = []
    for c in coeff_basis:
        v = M.T @ c
        X, f, xi, g = _split(v, n, ext)
        mu, res = least_norm_solution(J.T, xi)
        if res > tol:
            raise StructureError(f"covector not basic at {q}, residual {res:.3e}")
        out.append(_assemble(J @ X, f, mu, g, ext))
    return orthonormal_rows(np.array(out)) if out else np.zeros((0, 0))


def pullback_at(frame: StructureFrame, pi: ChartMap, q: Point) -> np.ndarray:
    """Basis rows of the pulled-back subspace at q (frame lives on pi's target)."""
    if pi.dst != frame.chart:
        raise ChartError("frame does not live on the map target")
    J = _submersion_jacobian(pi, q)
    n_src, n_dst, ext = pi.src.dim, pi.dst.dim, frame.extended
    M = frame.matrix(pi(q))
    Jpinv = np.linalg.pinv(J, rcond=1e-12)
    rows = []
    for v in M:
        X, f, xi, g = _split(v, n_dst, ext)
        rows.append(_assemble(Jpinv @ X, f, J.T @ xi, g, ext))
    for w in kernel(J):
        rows.append(_assemble(w, 0.0, np.zeros(n_src), 0.0, ext))
    return orthonormal_rows(np.array(rows))


# -- admissible functions ----------------------------------------------------------


@dataclass
class HamiltonianData:
    X: np.ndarray
    phi: float | None
    residual: float
    ambiguity: float


def find_hamiltonian(
    f: ScalarField, frame: StructureFrame, point: Point, tol: float = 1e-8
) -> HamiltonianData:
    """Solve for (X_f, phi_f) with (X_f, phi_f) (+) (df, f) in the frame span."""
    n, ext = frame.chart.dim, frame.extended
    M = frame.matrix(point)
    if ext:
        cols = M[:, n + 1 :]
        target = np.concatenate([f.grad(point), [f.value(point)]])
    else:
        cols = M[:, n:]
        target = f.grad(point)
    c, res = least_norm_solution(cols.T, target)
    if res > tol:
        raise NotAdmissible(f"function is not admissible at {point}: residual {res:.3e}")
    v = M.T @ c
    X, phi = (v[:n], v[n]) if ext else (v[:n], None)
    # kernel directions of the (xi, g) block must not change the bracket
    amb = 0.0
    for k in kernel(cols.T):
        w = M.T @ k
        contrib = float(np.dot(w[:n], f.grad(point)))
        if ext:
            contrib += f.value(point) * w[n]
        amb = max(amb, abs(contrib))
    return HamiltonianData(X, phi, res, amb)


def admissible_bracket(
    f: ScalarField, g: ScalarField, frame: StructureFrame, samples, tol: float = 1e-8
) -> list[float]:
    """Values of {f,g} = X_g.f + f phi_g at the samples."""
    out = []
    for p in samples:
        ham = find_hamiltonian(g, frame, p, tol)
        val = float(np.dot(ham.X, f.grad(p)))
        if ham.phi is not None:
            val += f.value(p) * ham.phi
        out.append(val)
    return out


# -- span comparison helper -------------------------------------------------------


def frame_span_residual(a: StructureFrame, b: StructureFrame, samples) -> float:
    """Symmetric pointwise span distance between two frames on one chart."""
    require_same_chart(a, b)
    worst = 0.0
    for p in samples:
        worst = max(worst, spans_match(a.matrix(p), b.matrix(p)))
    return worst
