"""Tangential forms valued in the trivialized quadratic Lie algebra bundle.

A Q-valued p-form is stored as one tangential p-form per fiber basis
vector, so the pairings reduce to Gram-weighted wedges of scalar forms and
the fiber bracket to structure-constant combinations:

    <(alpha (x) e_i) ^ (beta (x) e_j)> = gram[i][j] alpha ^ beta
    [(alpha (x) e_i) ^ (beta (x) e_j)] = (alpha ^ beta) (x) [e_i, e_j]

The covariant exterior derivative, its curvature, the pointwise adjoint,
and the paired dual/sharp maps all live here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .foliated import Chart, FVec, TForm, FolAffine, interior, tangential_d, wedge
from .quadlie import Conn, QLie
from .ring import Poly


def _same_data(a, b):
    if a.chart != b.chart:
        raise ValueError("chart mismatch")
    if a.qlie != b.qlie:
        raise ValueError("fiber algebra mismatch")


class QForm:
    """Q-valued tangential form: one TForm component per fiber basis vector."""

    __slots__ = ("chart", "qlie", "degree", "comps")

    def __init__(self, chart: Chart, qlie: QLie, degree: int, comps: Sequence[TForm]):
        if len(comps) != qlie.dim:
            raise ValueError("need one component per fiber basis vector")
        for c in comps:
            if c.chart != chart:
                raise ValueError("chart mismatch")
            if c.degree != degree:
                raise ValueError("component degrees must agree")
        self.chart = chart
        self.qlie = qlie
        self.degree = degree
        self.comps = tuple(comps)

    @classmethod
    def zero(cls, chart: Chart, qlie: QLie, degree: int) -> "QForm":
        return cls(chart, qlie, degree, [TForm.zero(chart, degree)] * qlie.dim)

    @classmethod
    def from_vals(cls, chart: Chart, qlie: QLie, vals: Sequence[Poly]) -> "QForm":
        """Degree-0 form from a component vector of functions."""
        return cls(chart, qlie, 0, [TForm.function(chart, v) for v in vals])

    @classmethod
    def basis_val(cls, chart: Chart, qlie: QLie, j: int) -> "QForm":
        vals = [Poly.zero(chart.n)] * qlie.dim
        vals[j - 1] = Poly.const(chart.n, 1)
        return cls.from_vals(chart, qlie, vals)

    def vals(self) -> list[Poly]:
        if self.degree != 0:
            raise ValueError("not a degree-0 form")
        return [c.as_function() for c in self.comps]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __add__(self, other: "QForm") -> "QForm":
        _same_data(self, other)
        return QForm(
            self.chart, self.qlie, self.degree,
            [a + b for a, b in zip(self.comps, other.comps)],
        )

    def __sub__(self, other: "QForm") -> "QForm":
        return self + (-other)

    def __neg__(self) -> "QForm":
        return QForm(self.chart, self.qlie, self.degree, [-c for c in self.comps])

    def scaled(self, f) -> "QForm":
        return QForm(self.chart, self.qlie, self.degree, [c.scaled(f) for c in self.comps])

    def lmul_form(self, alpha: TForm) -> "QForm":
        """alpha ^ w, componentwise."""
        return QForm(
            self.chart, self.qlie, self.degree + alpha.degree,
            [wedge(alpha, c) for c in self.comps],
        )

    def interior(self, x: FVec) -> "QForm":
        return QForm(
            self.chart, self.qlie, self.degree - 1, [interior(x, c) for c in self.comps]
        )

    def eval_frame(self, idxs: Sequence[int]) -> list[Poly]:
        return [c.eval_frame(idxs) for c in self.comps]

    def pullback(self, phi: FolAffine) -> "QForm":
        """Componentwise pullback in the constant frame of the trivialization."""
        return QForm(
            self.chart, self.qlie, self.degree, [phi.pullback(c) for c in self.comps]
        )

    def apply_matrix(self, mat) -> "QForm":
        """Pointwise matrix action on the fiber (entries Fraction or Poly)."""
        d = self.qlie.dim
        comps = []
        for r in range(d):
            acc = TForm.zero(self.chart, self.degree)
            for s in range(d):
                if isinstance(mat[r][s], Poly):
                    if not mat[r][s].is_zero():
                        acc = acc + self.comps[s].scaled(mat[r][s])
                elif mat[r][s] != 0:
                    acc = acc + self.comps[s].scaled(mat[r][s])
            comps.append(acc)
        return QForm(self.chart, self.qlie, self.degree, comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QForm):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.qlie == other.qlie
            and self.degree == other.degree
            and self.comps == other.comps
        )

    def __repr__(self):
        parts = [f"[{c}] e{i + 1}" for i, c in enumerate(self.comps) if not c.is_zero()]
        return " + ".join(parts) if parts else f"0 (Q-valued, degree {self.degree})"


def pair_wedge(u: QForm, v: QForm) -> TForm:
    """<u ^ v>: Gram-contracted wedge of the components."""
    _same_data(u, v)
    out = TForm.zero(u.chart, u.degree + v.degree)
    g = u.qlie.gram
    for i in range(u.qlie.dim):
        for j in range(v.qlie.dim):
            if g[i][j] != 0:
                out = out + wedge(u.comps[i], v.comps[j]).scaled(g[i][j])
    return out


def bracket_wedge(u: QForm, v: QForm) -> QForm:
    """[u ^ v]: structure-constant contracted wedge of the components."""
    _same_data(u, v)
    d = u.qlie.dim
    chart = u.chart
    comps = [TForm.zero(chart, u.degree + v.degree) for _ in range(d)]
    for i in range(d):
        for j in range(d):
            w = None
            for m in range(d):
                c = u.qlie.brk[i][j][m]
                if c == 0:
                    continue
                if w is None:
                    w = wedge(u.comps[i], v.comps[j])
                comps[m] = comps[m] + w.scaled(c)
    return QForm(chart, u.qlie, u.degree + v.degree, comps)


def d_nabla(conn: Conn, w: QForm) -> QForm:
    """Covariant exterior derivative: componentwise d plus dx^i ^ (omega_i w)."""
    if conn.chart != w.chart or conn.qlie != w.qlie:
        raise ValueError("connection and form data mismatch")
    chart = w.chart
    d = w.qlie.dim
    comps = [tangential_d(c) for c in w.comps]
    for i in range(1, chart.k + 1):
        mat = conn.omega[i - 1]
        dxi = TForm.dx(chart, i)
        for r in range(d):
            for s in range(d):
                if mat[r][s].is_zero() or w.comps[s].is_zero():
                    continue
                comps[r] = comps[r] + wedge(dxi, w.comps[s].scaled(mat[r][s]))
    return QForm(chart, w.qlie, w.degree + 1, comps)


class EndQForm:
    """Endomorphism-valued tangential form: a matrix of scalar forms."""

    __slots__ = ("chart", "qlie", "degree", "mat")

    def __init__(self, chart: Chart, qlie: QLie, degree: int, mat):
        d = qlie.dim
        rows = []
        if len(mat) != d:
            raise ValueError("matrix must be dim x dim")
        for row in mat:
            if len(row) != d:
                raise ValueError("matrix must be dim x dim")
            for entry in row:
                if entry.chart != chart or entry.degree != degree:
                    raise ValueError("entry chart/degree mismatch")
            rows.append(tuple(row))
        self.chart = chart
        self.qlie = qlie
        self.degree = degree
        self.mat = tuple(rows)

    @classmethod
    def zero(cls, chart: Chart, qlie: QLie, degree: int) -> "EndQForm":
        z = TForm.zero(chart, degree)
        return cls(chart, qlie, degree, [[z] * qlie.dim for _ in range(qlie.dim)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.mat for e in row)

    def __add__(self, other: "EndQForm") -> "EndQForm":
        return EndQForm(
            self.chart, self.qlie, self.degree,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)],
        )

    def __sub__(self, other: "EndQForm") -> "EndQForm":
        return EndQForm(
            self.chart, self.qlie, self.degree,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.mat, other.mat)],
        )

    def wedge_action(self, w: QForm) -> QForm:
        """(E ^ w)_r = sum_s E[r][s] ^ w_s."""
        comps = []
        for r in range(self.qlie.dim):
            acc = TForm.zero(self.chart, self.degree + w.degree)
            for s in range(self.qlie.dim):
                if not self.mat[r][s].is_zero() and not w.comps[s].is_zero():
                    acc = acc + wedge(self.mat[r][s], w.comps[s])
            comps.append(acc)
        return QForm(self.chart, self.qlie, self.degree + w.degree, comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndQForm):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.qlie == other.qlie
            and self.degree == other.degree
            and self.mat == other.mat
        )

    def __repr__(self):
        return f"EndQForm(degree={self.degree}, dim={self.qlie.dim})"


def curvature(conn: Conn) -> EndQForm:
    """F(e_i, e_j) = d_i omega_j - d_j omega_i + omega_i omega_j - omega_j omega_i."""
    chart = conn.chart
    d = conn.qlie.dim
    zero = TForm.zero(chart, 2)
    mat = [[zero for _ in range(d)] for _ in range(d)]
    for i in range(1, chart.k + 1):
        for j in range(i + 1, chart.k + 1):
            wi, wj = conn.omega[i - 1], conn.omega[j - 1]
            dx = TForm.dx(chart, i, j)
            for r in range(d):
                for s in range(d):
                    entry = wj[r][s].partial(i) - wi[r][s].partial(j)
                    for l in range(d):
                        entry = entry + wi[r][l] * wj[l][s] - wj[r][l] * wi[l][s]
                    if not entry.is_zero():
                        mat[r][s] = mat[r][s] + dx.scaled(entry)
    return EndQForm(chart, conn.qlie, 2, mat)


def ad_of(w: QForm) -> EndQForm:
    """Pointwise adjoint action: ad_w(...)(s) = [w(...), s]."""
    d = w.qlie.dim
    mat = []
    for r in range(d):
        row = []
        for s in range(d):
            acc = TForm.zero(w.chart, w.degree)
            for i in range(d):
                c = w.qlie.brk[i][s][r]
                if c != 0:
                    acc = acc + w.comps[i].scaled(c)
            row.append(acc)
        mat.append(row)
    return EndQForm(w.chart, w.qlie, w.degree, mat)


def ad_matrix(qlie: QLie, vals: Sequence[Poly]) -> list[list[Poly]]:
    """ad of a fiber element with Poly components, as a Poly matrix."""
    d = qlie.dim
    nvars = vals[0].nvars if d else 0
    out = []
    for r in range(d):
        row = []
        for s in range(d):
            acc = Poly.zero(nvars)
            for i in range(d):
                c = qlie.brk[i][s][r]
                if c != 0:
                    acc = acc + vals[i] * c
            row.append(acc)
        out.append(row)
    return out


def dagger(a_form: QForm) -> Callable[[Sequence[Poly]], TForm]:
    """Dual of a Q-valued 1-form: <A(X), s> = dagger(A)(s)(X)."""
    if a_form.degree != 1:
        raise ValueError("dagger needs a 1-form")

    def apply(vals: Sequence[Poly]) -> TForm:
        return dagger_apply(a_form, vals)

    return apply


def dagger_apply(a_form: QForm, vals: Sequence[Poly]) -> TForm:
    chart = a_form.chart
    g = a_form.qlie.gram
    d = a_form.qlie.dim
    terms = {}
    for m in range(1, chart.k + 1):
        acc = Poly.zero(chart.n)
        for i in range(d):
            ai = a_form.comps[i].coeff((m,))
            if ai.is_zero():
                continue
            for j in range(d):
                if g[i][j] != 0:
                    acc = acc + ai * vals[j] * g[i][j]
        if not acc.is_zero():
            terms[(m,)] = acc
    return TForm(chart, 1, terms)


def sharp(b_form: TForm) -> Callable[[FVec], TForm]:
    """b_form as a map on leaf fields: sharp(B)(X)(Y) = B(X, Y)."""
    if b_form.degree != 2:
        raise ValueError("sharp needs a 2-form")

    def apply(x: FVec) -> TForm:
        return interior(x, b_form)

    return apply


def lie_xtheta(x: FVec, theta, w: QForm) -> QForm:
    """Derivative of a Q-valued form along (X, Theta).

    Theta acts on fiber values as the X-derivative plus the pointwise
    matrix ``theta``; frame slots pick up {X, e_i} insertions.
    """
    if x.chart != w.chart:
        raise ValueError("chart mismatch")
    if not x.is_projectable():
        raise ValueError("vector field is not projectable")
    chart = w.chart
    d = w.qlie.dim
    out_comps = [dict() for _ in range(d)]
    for idxs in combinations(range(1, chart.k + 1), w.degree):
        vals = w.eval_frame(idxs)
        new = theta_apply(x, theta, vals)
        for m, i in enumerate(idxs):
            for l in range(1, chart.k + 1):
                coeff = x.comps[l - 1].partial(i)
                if coeff.is_zero():
                    continue
                shifted = w.eval_frame(idxs[:m] + (l,) + idxs[m + 1 :])
                new = [a + coeff * b for a, b in zip(new, shifted)]
        for r in range(d):
            if not new[r].is_zero():
                out_comps[r][idxs] = new[r]
    return QForm(
        chart, w.qlie, w.degree,
        [TForm(chart, w.degree, c) for c in out_comps],
    )


def theta_apply(x: FVec, theta, vals: Sequence[Poly]) -> list[Poly]:
    """Theta(s) = X.s + theta s on fiber component vectors."""
    d = len(theta)
    out = []
    for r in range(d):
        acc = x.apply(vals[r])
        for s in range(d):
            entry = theta[r][s]
            if isinstance(entry, Poly):
                if not entry.is_zero():
                    acc = acc + entry * vals[s]
            elif entry != 0:
                acc = acc + vals[s] * entry
        out.append(acc)
    return out
