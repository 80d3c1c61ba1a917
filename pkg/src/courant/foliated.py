"""Tangential exterior calculus on the coordinate foliation of a chart.

A chart has coordinates x1..xn, and the foliation is spanned by the first k
coordinate fields.  Tangential forms only eat those directions; their
coefficients may still involve every coordinate.  The interior product, the
Lie derivative and the tangential exterior derivative implemented here form
a Cartan triple, which the test suite checks identity by identity.

Diffeomorphisms are restricted to foliation-preserving affine maps, which
keeps pullbacks of polynomials polynomial and inverses exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import _linalg
from .ring import Poly


@dataclass(frozen=True)
class Chart:
    """n coordinates total, the first k of them spanning the foliation."""

    n: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError("need 0 <= k <= n")

    def zero_poly(self) -> Poly:
        return Poly.zero(self.n)

    def const(self, c) -> Poly:
        return Poly.const(self.n, c)

    def x(self, i: int) -> Poly:
        return Poly.var(self.n, i)


def _same_chart(a, b):
    if a.chart != b.chart:
        raise ValueError("chart mismatch")


def _sort_sign(idxs: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sort an index tuple, returning the permutation sign; None on repeats."""
    idxs = list(idxs)
    sign = 1
    for i in range(1, len(idxs)):
        j = i
        while j > 0 and idxs[j - 1] > idxs[j]:
            idxs[j - 1], idxs[j] = idxs[j], idxs[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idxs)):
        if idxs[i - 1] == idxs[i]:
            return None, 0
    return tuple(idxs), sign


class FVec:
    """Vector field with one polynomial component per coordinate.

    Sections of the foliation have zero transverse components; projectable
    fields may move transversally but with coefficients constant along the
    leaves, so bracketing with leaf fields stays tangential.
    """

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Sequence[Poly]):
        if len(comps) != chart.n:
            raise ValueError("component count must equal n")
        for c in comps:
            if c.nvars != chart.n:
                raise ValueError("variable-count mismatch")
        self.chart = chart
        self.comps = tuple(comps)

    @classmethod
    def zero(cls, chart: Chart) -> "FVec":
        return cls(chart, [chart.zero_poly()] * chart.n)

    @classmethod
    def tangential(cls, chart: Chart, comps: Sequence[Poly]) -> "FVec":
        if len(comps) != chart.k:
            raise ValueError("component count must equal k")
        pad = [chart.zero_poly()] * (chart.n - chart.k)
        return cls(chart, list(comps) + pad)

    @classmethod
    def basis(cls, chart: Chart, i: int) -> "FVec":
        if not 1 <= i <= chart.n:
            raise ValueError("index out of range")
        comps = [chart.zero_poly()] * chart.n
        comps[i - 1] = chart.const(1)
        return cls(chart, comps)

    def is_tangential(self) -> bool:
        return all(c.is_zero() for c in self.comps[self.chart.k :])

    def is_projectable(self) -> bool:
        """Transverse components may not vary along the foliation."""
        k = self.chart.k
        for c in self.comps[k:]:
            for i in range(1, k + 1):
                if not c.partial(i).is_zero():
                    return False
        return True

    def require_tangential(self):
        if not self.is_tangential():
            raise ValueError("vector field is not tangential to the foliation")

    def apply(self, f: Poly) -> Poly:
        """Derivation: X.f = sum_i X^i df/dx_i."""
        out = self.chart.zero_poly()
        for i, c in enumerate(self.comps, start=1):
            if not c.is_zero():
                out = out + c * f.partial(i)
        return out

    def __add__(self, other: "FVec") -> "FVec":
        _same_chart(self, other)
        return FVec(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "FVec") -> "FVec":
        _same_chart(self, other)
        return FVec(self.chart, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "FVec":
        return FVec(self.chart, [-c for c in self.comps])

    def scaled(self, f) -> "FVec":
        return FVec(self.chart, [c * f for c in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FVec):
            return NotImplemented
        return self.chart == other.chart and self.comps == other.comps

    def __hash__(self):
        return hash((self.chart, self.comps))

    def __repr__(self):
        parts = [f"({c})@{i + 1}" for i, c in enumerate(self.comps) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def f_bracket(x: FVec, y: FVec) -> FVec:
    """Lie bracket of vector fields, {X,Y}^l = X.Y^l - Y.X^l."""
    _same_chart(x, y)
    return FVec(x.chart, [x.apply(yc) - y.apply(xc) for xc, yc in zip(x.comps, y.comps)])


class TForm:
    """Tangential p-form: strictly increasing index tuples in 1..k to Poly."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms=None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.chart = chart
        self.degree = degree
        clean: dict[tuple[int, ...], Poly] = {}
        if terms:
            for idxs, coeff in terms.items():
                idxs = tuple(idxs)
                if len(idxs) != degree:
                    raise ValueError("index tuple length must equal the degree")
                if any(not 1 <= i <= chart.k for i in idxs):
                    raise ValueError("form index outside the foliated range")
                if any(idxs[m] >= idxs[m + 1] for m in range(len(idxs) - 1)):
                    raise ValueError("indices must be strictly increasing")
                if not isinstance(coeff, Poly):
                    coeff = Poly.const(chart.n, coeff)
                if coeff.nvars != chart.n:
                    raise ValueError("variable-count mismatch")
                if not coeff.is_zero():
                    clean[idxs] = coeff
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "TForm":
        return cls(chart, degree)

    @classmethod
    def function(cls, chart: Chart, f: Poly) -> "TForm":
        return cls(chart, 0, {(): f})

    @classmethod
    def dx(cls, chart: Chart, *idxs: int) -> "TForm":
        """Basis form dx^{i1} ^ ... ^ dx^{ip} for strictly increasing indices."""
        return cls(chart, len(idxs), {tuple(idxs): Poly.const(chart.n, 1)})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, idxs: Sequence[int]) -> Poly:
        return self.terms.get(tuple(idxs), self.chart.zero_poly())

    def as_function(self) -> Poly:
        if self.degree != 0:
            raise ValueError("not a 0-form")
        return self.terms.get((), self.chart.zero_poly())

    def eval_frame(self, idxs: Sequence[int]) -> Poly:
        """Evaluate on coordinate fields, handling order and repeats."""
        if len(idxs) != self.degree:
            raise ValueError("arity mismatch")
        key, sign = _sort_sign(idxs)
        if key is None:
            return self.chart.zero_poly()
        coeff = self.terms.get(key)
        if coeff is None:
            return self.chart.zero_poly()
        return coeff if sign == 1 else -coeff

    def evaluate(self, *fields: FVec) -> Poly:
        """Full multilinear evaluation on tangential vector fields."""
        if len(fields) != self.degree:
            raise ValueError("arity mismatch")
        out = self.chart.zero_poly()
        for x in fields:
            _same_chart(self, x)
            x.require_tangential()
        w: TForm = self
        for x in fields:
            w = interior(x, w)
        return w.as_function()

    def __add__(self, other: "TForm") -> "TForm":
        _same_chart(self, other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for idxs, coeff in other.terms.items():
            s = out.get(idxs)
            total = coeff if s is None else s + coeff
            if total.is_zero():
                out.pop(idxs, None)
            else:
                out[idxs] = total
        return TForm(self.chart, self.degree, out)

    def __sub__(self, other: "TForm") -> "TForm":
        return self + (-other)

    def __neg__(self) -> "TForm":
        return TForm(self.chart, self.degree, {i: -c for i, c in self.terms.items()})

    def scaled(self, f) -> "TForm":
        """Multiply by a function (Poly) or rational scalar."""
        return TForm(self.chart, self.degree, {i: c * f for i, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TForm):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"0 (degree {self.degree})"
        parts = []
        for idxs in sorted(self.terms):
            basis = "^".join(f"dx{i}" for i in idxs) or "1"
            parts.append(f"({self.terms[idxs]}) {basis}")
        return " + ".join(parts)


def wedge(a: TForm, b: TForm) -> TForm:
    _same_chart(a, b)
    out: dict[tuple[int, ...], Poly] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            key, sign = _sort_sign(ia + ib)
            if key is None:
                continue
            coeff = ca * cb
            if sign < 0:
                coeff = -coeff
            cur = out.get(key)
            total = coeff if cur is None else cur + coeff
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
    return TForm(a.chart, a.degree + b.degree, out)


def interior(x: FVec, w: TForm) -> TForm:
    """Interior product; zero on 0-forms."""
    _same_chart(x, w)
    x.require_tangential()
    if w.degree == 0:
        return TForm.zero(w.chart, 0)
    out: dict[tuple[int, ...], Poly] = {}
    for idxs, coeff in w.terms.items():
        for m, i in enumerate(idxs):
            xc = x.comps[i - 1]
            if xc.is_zero():
                continue
            rest = idxs[:m] + idxs[m + 1 :]
            part = xc * coeff
            if m % 2 == 1:
                part = -part
            cur = out.get(rest)
            total = part if cur is None else cur + part
            if total.is_zero():
                out.pop(rest, None)
            else:
                out[rest] = total
    return TForm(w.chart, w.degree - 1, out)


def tangential_d(w: TForm) -> TForm:
    """Exterior derivative along the foliation: only d/dx_1..d/dx_k act."""
    out: dict[tuple[int, ...], Poly] = {}
    for idxs, coeff in w.terms.items():
        for i in range(1, w.chart.k + 1):
            if i in idxs:
                continue
            dcoeff = coeff.partial(i)
            if dcoeff.is_zero():
                continue
            pos = sum(1 for j in idxs if j < i)
            key = idxs[:pos] + (i,) + idxs[pos:]
            if pos % 2 == 1:
                dcoeff = -dcoeff
            cur = out.get(key)
            total = dcoeff if cur is None else cur + dcoeff
            if total.is_zero():
                out.pop(key, None)
            else:
                out[key] = total
    return TForm(w.chart, w.degree + 1, out)


def lie_derivative(x: FVec, w: TForm) -> TForm:
    """Lie derivative along a projectable field.

    Computed by the frame formula: (L_X w)(e_I) = X.w(e_I) minus the sum of
    w with one frame slot replaced by {X, e_i}.  Projectability keeps those
    replacements tangential.  For tangential X this agrees with the Cartan
    formula, which the tests assert.
    """
    _same_chart(x, w)
    if not x.is_projectable():
        raise ValueError("vector field is not projectable")
    out: dict[tuple[int, ...], Poly] = {}
    k = w.chart.k
    for idxs in combinations(range(1, k + 1), w.degree):
        total = x.apply(w.eval_frame(idxs))
        for m, i in enumerate(idxs):
            # {X, e_i} = -sum_l (dX^l/dx_i) e_l, inserted in slot m
            for l in range(1, k + 1):
                coeff = x.comps[l - 1].partial(i)
                if coeff.is_zero():
                    continue
                val = w.eval_frame(idxs[:m] + (l,) + idxs[m + 1 :])
                if not val.is_zero():
                    total = total + coeff * val
        if not total.is_zero():
            out[idxs] = total
    return TForm(w.chart, w.degree, out)


def homotopy(w: TForm) -> TForm:
    """Primitive operator for the tangential Poincare lemma.

    For polynomial coefficients the radial-scaling integral is exact: on a
    monomial f dx^I with tangential degree D in f, the output is
    sum_m (-1)^(m-1) x_{i_m} f dx^{I-i_m} / (D + p).  For any closed form w
    of degree p >= 1, d(homotopy(w)) == w; transverse variables ride along
    as parameters.
    """
    if w.degree == 0:
        raise ValueError("degree must be at least 1")
    k = w.chart.k
    out = TForm.zero(w.chart, w.degree - 1)
    for idxs, coeff in w.terms.items():
        for exps, c in coeff.items():
            tang_deg = sum(exps[:k])
            scale = Fraction(1, tang_deg + w.degree)
            mono = Poly(w.chart.n, {exps: c})
            for m, i in enumerate(idxs):
                rest = idxs[:m] + idxs[m + 1 :]
                part = mono * w.chart.x(i) * scale
                if m % 2 == 1:
                    part = -part
                out = out + TForm(w.chart, w.degree - 1, {rest: part})
    return out


class FolAffine:
    """Foliation-preserving affine diffeomorphism x -> Lx + c.

    The linear part has a zero lower-left block (rows past k, columns up to
    k), so leaf directions map to leaf directions.  The inverse is computed
    exactly at construction time.
    """

    __slots__ = ("chart", "lin", "trans", "lin_inv")

    def __init__(self, chart: Chart, lin, trans):
        self.chart = chart
        self.lin = _linalg.mat(lin)
        self.trans = tuple(Fraction(t) for t in trans)
        if len(self.lin) != chart.n or any(len(r) != chart.n for r in self.lin):
            raise ValueError("linear part must be n x n")
        if len(self.trans) != chart.n:
            raise ValueError("translation must have n entries")
        for j in range(chart.k, chart.n):
            for i in range(chart.k):
                if self.lin[j][i] != 0:
                    raise ValueError("linear part does not preserve the foliation")
        self.lin_inv = _linalg.mat_inv(self.lin)  # raises when singular

    @classmethod
    def identity(cls, chart: Chart) -> "FolAffine":
        return cls(chart, _linalg.identity(chart.n), [0] * chart.n)

    def is_identity(self) -> bool:
        return self.lin == _linalg.identity(self.chart.n) and all(
            t == 0 for t in self.trans
        )

    def inverse(self) -> "FolAffine":
        c = _linalg.mat_vec(self.lin_inv, self.trans)
        return FolAffine(self.chart, self.lin_inv, [-x for x in c])

    def compose(self, other: "FolAffine") -> "FolAffine":
        """self after other: x -> self(other(x))."""
        _same_chart(self, other)
        lin = _linalg.mat_mul(self.lin, other.lin)
        shift = _linalg.mat_vec(self.lin, other.trans)
        return FolAffine(self.chart, lin, [a + b for a, b in zip(shift, self.trans)])

    def coordinate_images(self) -> list[Poly]:
        """The polynomials (Lx + c)_i used for pullback substitution."""
        n = self.chart.n
        out = []
        for i in range(n):
            terms = {}
            for j in range(n):
                if self.lin[i][j] != 0:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = self.lin[i][j]
            if self.trans[i] != 0:
                terms[(0,) * n] = self.trans[i]
            out.append(Poly(n, terms))
        return out

    def pullback_poly(self, p: Poly) -> Poly:
        if p.nvars != self.chart.n:
            raise ValueError("variable-count mismatch")
        return p.subst(self.coordinate_images(), self.chart.n)

    def pullback(self, w: TForm) -> TForm:
        """phi^* w, expanding phi^* dx^i = sum_j L[i][j] dx^j over leaf indices."""
        _same_chart(self, w)
        chart = self.chart
        out = TForm.zero(chart, w.degree)
        for idxs, coeff in w.terms.items():
            part = TForm.function(chart, self.pullback_poly(coeff))
            for i in idxs:
                one = TForm(
                    chart,
                    1,
                    {(j,): chart.const(self.lin[i - 1][j - 1]) for j in range(1, chart.k + 1)},
                )
                part = wedge(part, one)
            out = out + part
        return out

    def pushforward(self, x: FVec) -> FVec:
        """(phi_* X)(y) = L X(phi^{-1} y)."""
        _same_chart(self, x)
        inv = self.inverse()
        moved = [inv.pullback_poly(c) for c in x.comps]
        comps = []
        for l in range(self.chart.n):
            acc = self.chart.zero_poly()
            for i in range(self.chart.n):
                if self.lin[l][i] != 0:
                    acc = acc + moved[i] * self.lin[l][i]
            comps.append(acc)
        return FVec(self.chart, comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FolAffine):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.lin == other.lin
            and self.trans == other.trans
        )

    def __hash__(self):
        return hash((self.chart, self.lin, self.trans))

    def __repr__(self):
        return f"FolAffine(L={self.lin}, c={self.trans})"


def pullback(phi: FolAffine, w: TForm) -> TForm:
    return phi.pullback(w)


def pushforward(phi: FolAffine, x: FVec) -> FVec:
    return phi.pushforward(x)
