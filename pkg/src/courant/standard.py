"""The standard Courant algebroid on F* + Q + F over a chart.

An instance is the data triple (connection, curvature-type 2-form, twist
3-form).  Sections are triples (1-form, fiber value, leaf field); the
anchor projects to the field, the pairing is the duality pairing plus the
fiber pairing, and the bracket is

    [a + x + X, b + y + Y] =
        L_X b - i_Y da + <nabla x, y> - <y, i_X R> + <x, i_Y R> + i_Y i_X H
      + [x, y] + nabla_X y - nabla_Y x + R(X, Y)
      + {X, Y}

``validate_stdca`` checks the five structural relations that make this a
Courant algebroid; ``axiom_suite`` checks the algebroid axioms themselves
on seeded random sections, so the two must agree and the tests break each
relation to watch the matching axiom fail.
"""

from __future__ import annotations

from fractions import Fraction

from .foliated import Chart, FVec, TForm, f_bracket, interior, lie_derivative, tangential_d
from .qforms import QForm, ad_of, curvature, d_nabla, pair_wedge
from .quadlie import Conn, QLie, validate_conn
from .report import Report
from .ring import Poly


class StdCA:
    """Standard Courant algebroid data over a chart."""

    __slots__ = ("chart", "qlie", "conn", "curv", "twist")

    def __init__(self, chart: Chart, qlie: QLie, conn: Conn, curv: QForm, twist: TForm):
        if conn.chart != chart or conn.qlie != qlie:
            raise ValueError("connection data mismatch")
        if curv.chart != chart or curv.qlie != qlie or curv.degree != 2:
            raise ValueError("curvature form must be a Q-valued 2-form on the chart")
        if twist.chart != chart or twist.degree != 3:
            raise ValueError("twist must be a 3-form on the chart")
        self.chart = chart
        self.qlie = qlie
        self.conn = conn
        self.curv = curv
        self.twist = twist

    def zero_section(self) -> "GSec":
        return GSec(
            TForm.zero(self.chart, 1),
            QForm.zero(self.chart, self.qlie, 0),
            FVec.zero(self.chart),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, StdCA):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.qlie == other.qlie
            and self.conn == other.conn
            and self.curv == other.curv
            and self.twist == other.twist
        )

    def __repr__(self):
        return f"StdCA(n={self.chart.n}, k={self.chart.k}, dim={self.qlie.dim})"


class GSec:
    """Section of F* + Q + F: a 1-form, a fiber value, a leaf field."""

    __slots__ = ("form", "qval", "vec")

    def __init__(self, form: TForm, qval: QForm, vec: FVec):
        if form.degree != 1 or qval.degree != 0:
            raise ValueError("section slots must be (1-form, fiber value, field)")
        if form.chart != qval.chart or form.chart != vec.chart:
            raise ValueError("chart mismatch")
        vec.require_tangential()
        self.form = form
        self.qval = qval
        self.vec = vec

    @property
    def chart(self) -> Chart:
        return self.form.chart

    def __add__(self, other: "GSec") -> "GSec":
        return GSec(self.form + other.form, self.qval + other.qval, self.vec + other.vec)

    def __sub__(self, other: "GSec") -> "GSec":
        return GSec(self.form - other.form, self.qval - other.qval, self.vec - other.vec)

    def __neg__(self) -> "GSec":
        return GSec(-self.form, -self.qval, -self.vec)

    def scaled(self, f) -> "GSec":
        return GSec(self.form.scaled(f), self.qval.scaled(f), self.vec.scaled(f))

    def is_zero(self) -> bool:
        return self.form.is_zero() and self.qval.is_zero() and self.vec.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GSec):
            return NotImplemented
        return self.form == other.form and self.qval == other.qval and self.vec == other.vec

    def __repr__(self):
        return f"GSec(form={self.form}, qval={self.qval}, vec={self.vec})"


def anchor(s: GSec) -> FVec:
    return s.vec


def inner(s: GSec, t: GSec) -> Poly:
    """alpha(Y) + beta(X) + <x, y>."""
    if s.chart != t.chart:
        raise ValueError("chart mismatch")
    zero = Poly.zero(s.chart.n)
    out = interior(t.vec, s.form).as_function() + interior(s.vec, t.form).as_function()
    return out + s.qval.qlie.pair_vals(s.qval.vals(), t.qval.vals(), zero)


def bracket(alg: StdCA, s: GSec, t: GSec) -> GSec:
    """The three-slot bracket of the standard algebroid."""
    if s.chart != alg.chart or t.chart != alg.chart:
        raise ValueError("chart mismatch")
    chart = alg.chart
    q = alg.qlie
    zero = Poly.zero(chart.n)
    x_vals, y_vals = s.qval.vals(), t.qval.vals()
    xf, yf = s.vec, t.vec

    # F* slot
    form = lie_derivative(xf, t.form) - interior(yf, tangential_d(s.form))
    nabla_pair = {}
    for m in range(1, chart.k + 1):
        coeff = q.pair_vals(alg.conn.nabla_dir(m, x_vals), y_vals, zero)
        if not coeff.is_zero():
            nabla_pair[(m,)] = coeff
    form = form + TForm(chart, 1, nabla_pair)
    r_x = alg.curv.interior(xf)
    r_y = alg.curv.interior(yf)
    form = form - pair_wedge(t.qval, r_x) + pair_wedge(s.qval, r_y)
    form = form + interior(yf, interior(xf, alg.twist))

    # Q slot
    qv = QForm.from_vals(chart, q, q.bracket_vals(x_vals, y_vals, zero))
    qv = qv + QForm.from_vals(chart, q, alg.conn.nabla_apply(xf, y_vals))
    qv = qv - QForm.from_vals(chart, q, alg.conn.nabla_apply(yf, x_vals))
    qv = qv + alg.curv.interior(xf).interior(yf)

    return GSec(form, qv, f_bracket(xf, yf))


def d_operator(alg: StdCA, f: Poly) -> GSec:
    """D f = (df, 0, 0), forced by <Df, u> = anchor(u).f in the split pairing."""
    return GSec(
        tangential_d(TForm.function(alg.chart, f)),
        QForm.zero(alg.chart, alg.qlie, 0),
        FVec.zero(alg.chart),
    )


def validate_stdca(alg: StdCA) -> Report:
    """The five compatibility relations, checked exactly."""
    rep = Report(meta={"what": "stdca", "n": alg.chart.n, "k": alg.chart.k, "dim": alg.qlie.dim})
    conn_rep = validate_conn(alg.conn)
    rep.extend(conn_rep)

    bianchi = d_nabla(alg.conn, alg.curv)
    rep.add(
        "bianchi",
        bianchi.is_zero(),
        None if bianchi.is_zero() else {"residual_component": repr(bianchi)},
    )

    fmat = curvature(alg.conn)
    admat = ad_of(alg.curv)
    diff = fmat - admat
    rep.add(
        "curvature_is_ad",
        diff.is_zero(),
        None if diff.is_zero() else {"residual": repr(diff.mat)},
    )

    lhs = tangential_d(alg.twist)
    rhs = pair_wedge(alg.curv, alg.curv).scaled(Fraction(1, 2))
    rep.add(
        "pontryagin",
        lhs == rhs,
        None if lhs == rhs else {"dH": repr(lhs), "half_pair_RR": repr(rhs)},
    )
    return rep


def _axiom_checks(alg: StdCA, u: GSec, v: GSec, w: GSec, f: Poly):
    """Yield (axiom name, residual is zero, detail) for one sample."""
    zero = Poly.zero(alg.chart.n)

    buv = bracket(alg, u, v)
    buw = bracket(alg, u, w)

    lhs = anchor(u).apply(inner(v, w))
    rhs = inner(buv, w) + inner(v, buw)
    yield "metric_invariance", lhs == rhs

    lod = bracket(alg, u, bracket(alg, v, w)) - bracket(alg, bracket(alg, u, v), w) - bracket(alg, v, buw)
    yield "loday", lod.is_zero()

    sym = buv + bracket(alg, v, u) - d_operator(alg, inner(u, v))
    yield "symmetrization_is_d", sym.is_zero()

    right = bracket(alg, u, v.scaled(f)) - buv.scaled(f) - v.scaled(anchor(u).apply(f))
    yield "right_leibniz", right.is_zero()

    left = (
        bracket(alg, u.scaled(f), v)
        - d_operator(alg, f).scaled(inner(u, v))
        + u.scaled(anchor(v).apply(f))
        - buv.scaled(f)
    )
    yield "left_leibniz", left.is_zero()

    df = d_operator(alg, f)
    yield "bracket_d_left", bracket(alg, df, u).is_zero()

    bd = bracket(alg, u, df) - d_operator(alg, anchor(u).apply(f))
    yield "bracket_d_right", bd.is_zero()

    anch = f_bracket(anchor(u), anchor(v)) - anchor(buv)
    yield "anchor_bracket", anch.is_zero()

    yield "anchor_of_d", anchor(df).is_zero()

    pairing = inner(df, u) - anchor(u).apply(f)
    yield "d_pairing", pairing == zero


def axiom_suite(alg: StdCA, trials: int = 50, seed: int = 0, max_degree: int = 2) -> Report:
    """Check the Courant axioms on seeded random section triples.

    The first failing sample per axiom is recorded with the full inputs.
    """
    from .sampler import Sampler
    from .serialize import gsec_to_json, poly_to_json

    rep = Report(
        meta={
            "what": "axiom_suite",
            "trials": trials,
            "seed": seed,
            "max_degree": max_degree,
        }
    )
    smp = Sampler(seed)
    status: dict[str, bool] = {}
    witness: dict[str, dict] = {}
    for trial in range(trials):
        u = smp.gsec(alg.chart, alg.qlie, max_degree)
        v = smp.gsec(alg.chart, alg.qlie, max_degree)
        w = smp.gsec(alg.chart, alg.qlie, max_degree)
        f = smp.poly(alg.chart.n, max_degree)
        for name, ok in _axiom_checks(alg, u, v, w, f):
            if name not in status:
                status[name] = True
            if not ok and status[name]:
                status[name] = False
                witness[name] = {
                    "trial": trial,
                    "u": gsec_to_json(u),
                    "v": gsec_to_json(v),
                    "w": gsec_to_json(w),
                    "f": poly_to_json(f),
                }
    for name in sorted(status):
        rep.add(name, status[name], witness.get(name))
    return rep
