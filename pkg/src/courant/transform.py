"""Gauge transformations, changes of dissection, and the (infinitesimal)
automorphisms of a standard Courant algebroid.

The three elementary section maps are

    psi_tau: (al, x, X) -> (al, tau x, X)
    psi_A:   (al, x, X) -> (al - A'(A(X))/2 - A'(x), x + A(X), X)
    psi_B:   (al, x, X) -> (al + i_X B, x, X)

(A' the Gram-dual of A).  Each one intertwines the brackets of two
instances whose data differ by an explicit transformation, implemented in
``transform_data``; composing all three after a leaf-preserving point map
gives the general isomorphism, and requiring the data to come back to
itself carves out the automorphism group checked by ``check_aut``.
"""

from __future__ import annotations

from fractions import Fraction

from . import _linalg
from .foliated import (
    Chart,
    FVec,
    FolAffine,
    TForm,
    f_bracket,
    interior,
    lie_derivative,
    tangential_d,
)
from .qforms import (
    QForm,
    ad_matrix,
    bracket_wedge,
    d_nabla,
    dagger_apply,
    lie_xtheta,
    pair_wedge,
    theta_apply,
)
from .quadlie import Conn, QLie
from .report import Report
from .ring import Poly
from .standard import GSec, StdCA, bracket, inner


class QAutPair:
    """Constant orthogonal bracket automorphism of the fiber algebra."""

    __slots__ = ("qlie", "mat", "inv")

    def __init__(self, qlie: QLie, mat, inv):
        self.qlie = qlie
        self.mat = _linalg.mat(mat)
        self.inv = _linalg.mat(inv)
        d = qlie.dim
        if len(self.mat) != d or len(self.inv) != d:
            raise ValueError("matrix must be dim x dim")
        if _linalg.mat_mul(self.mat, self.inv) != _linalg.identity(d):
            raise ValueError("claimed inverse is not an inverse")
        gt = _linalg.mat_mul(
            _linalg.transpose(self.mat), _linalg.mat_mul(qlie.gram, self.mat)
        )
        if gt != qlie.gram:
            raise ValueError("matrix does not preserve the fiber pairing")
        for i in range(d):
            for j in range(d):
                for r in range(d):
                    lhs = sum(
                        (qlie.brk[i][j][m] * self.mat[r][m] for m in range(d)),
                        Fraction(0),
                    )
                    rhs = sum(
                        (
                            self.mat[a][i] * self.mat[b][j] * qlie.brk[a][b][r]
                            for a in range(d)
                            for b in range(d)
                        ),
                        Fraction(0),
                    )
                    if lhs != rhs:
                        raise ValueError("matrix does not preserve the fiber bracket")

    @classmethod
    def identity(cls, qlie: QLie) -> "QAutPair":
        eye = _linalg.identity(qlie.dim)
        return cls(qlie, eye, eye)

    def inverse(self) -> "QAutPair":
        return QAutPair(self.qlie, self.inv, self.mat)

    def compose(self, other: "QAutPair") -> "QAutPair":
        return QAutPair(
            self.qlie,
            _linalg.mat_mul(self.mat, other.mat),
            _linalg.mat_mul(other.inv, self.inv),
        )

    def is_identity(self) -> bool:
        return self.mat == _linalg.identity(self.qlie.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QAutPair):
            return NotImplemented
        return self.qlie == other.qlie and self.mat == other.mat

    def __repr__(self):
        return f"QAutPair({self.mat})"


# -- elementary section maps -------------------------------------------


def psi_apply(kind: str, data, s: GSec) -> GSec:
    """Apply one elementary map to a section; kind in {tau, A, B}."""
    if kind == "tau":
        return GSec(s.form, s.qval.apply_matrix(data.mat), s.vec)
    if kind == "A":
        a_of_x = data.interior(s.vec)
        form = (
            s.form
            - dagger_apply(data, a_of_x.vals()).scaled(Fraction(1, 2))
            - dagger_apply(data, s.qval.vals())
        )
        return GSec(form, s.qval + a_of_x, s.vec)
    if kind == "B":
        return GSec(s.form + interior(s.vec, data), s.qval, s.vec)
    raise ValueError(f"unknown kind {kind!r}")


def transform_data(kind: str, data, alg: StdCA) -> StdCA:
    """The instance whose bracket the elementary map intertwines with."""
    chart, q = alg.chart, alg.qlie
    if kind == "tau":
        omega = [
            _cmat_mul(data.mat, _pmat_mul_cmat(m, data.inv)) for m in alg.conn.omega
        ]
        return StdCA(
            chart, q, Conn(chart, q, omega), alg.curv.apply_matrix(data.mat), alg.twist
        )
    if kind == "A":
        omega = []
        for i in range(1, chart.k + 1):
            admat = ad_matrix(q, data.interior(FVec.basis(chart, i)).vals())
            omega.append(_pmat_sub(alg.conn.omega[i - 1], admat))
        new_conn = Conn(chart, q, omega)
        d_new_a = d_nabla(new_conn, data)
        aa = bracket_wedge(data, data)
        curv = alg.curv - d_new_a - aa.scaled(Fraction(1, 2))
        twist = (
            alg.twist
            - pair_wedge(data, curv)
            - pair_wedge(data, d_new_a).scaled(Fraction(1, 2))
            - pair_wedge(data, aa).scaled(Fraction(1, 6))
        )
        return StdCA(chart, q, new_conn, curv, twist)
    if kind == "B":
        return StdCA(chart, q, alg.conn, alg.curv, alg.twist - tangential_d(data))
    raise ValueError(f"unknown kind {kind!r}")


def natural_apply(phi: FolAffine, tau: QAutPair, s: GSec) -> GSec:
    """The point-map part: pull the form back, move the fiber, push the field."""
    inv = phi.inverse()
    return GSec(
        inv.pullback(s.form),
        s.qval.pullback(inv).apply_matrix(tau.mat),
        phi.pushforward(s.vec),
    )


def natural_transform(phi: FolAffine, tau: QAutPair, alg: StdCA) -> StdCA:
    """Data transport along (phi, tau): conjugate the connection, move R and H."""
    chart, q = alg.chart, alg.qlie
    inv = phi.inverse()
    omega = []
    for i in range(chart.k):
        acc = [[Poly.zero(chart.n) for _ in range(q.dim)] for _ in range(q.dim)]
        for l in range(chart.k):
            factor = phi.lin_inv[l][i]
            if factor == 0:
                continue
            moved = [
                [inv.pullback_poly(e) for e in row] for row in alg.conn.omega[l]
            ]
            conj = _cmat_mul(tau.mat, _pmat_mul_cmat(moved, tau.inv))
            acc = _pmat_add(acc, _pmat_scale(conj, factor))
        omega.append(acc)
    return StdCA(
        chart,
        q,
        Conn(chart, q, omega),
        alg.curv.apply_matrix(tau.mat).pullback(inv),
        inv.pullback(alg.twist),
    )


def dissection_change(tau: QAutPair, afield: QForm, bfield: TForm, alg: StdCA) -> StdCA:
    """Closed-form data change for the composite psi_tau o psi_A o psi_B.

    Equal to chaining ``transform_data`` for B, then A, then tau; the tests
    hold the two routes against each other.
    """
    chart, q = alg.chart, alg.qlie
    omega = []
    for i in range(1, chart.k + 1):
        conj = _cmat_mul(tau.mat, _pmat_mul_cmat(alg.conn.omega[i - 1], tau.inv))
        tau_a = afield.apply_matrix(tau.mat)
        admat = ad_matrix(q, tau_a.interior(FVec.basis(chart, i)).vals())
        omega.append(_pmat_sub(conj, admat))
    d_old_a = d_nabla(alg.conn, afield)
    aa = bracket_wedge(afield, afield)
    tau_a = afield.apply_matrix(tau.mat)
    curv = (
        alg.curv.apply_matrix(tau.mat)
        - d_old_a.apply_matrix(tau.mat)
        + bracket_wedge(tau_a, tau_a).scaled(Fraction(1, 2))
    )
    twist = (
        alg.twist
        - tangential_d(bfield)
        - pair_wedge(afield, alg.curv)
        + pair_wedge(afield, d_old_a).scaled(Fraction(1, 2))
        - pair_wedge(afield, aa).scaled(Fraction(1, 6))
    )
    return StdCA(chart, q, Conn(chart, q, omega), curv, twist)


def dissection_change_apply(tau: QAutPair, afield: QForm, bfield: TForm, s: GSec) -> GSec:
    return psi_apply("tau", tau, psi_apply("A", afield, psi_apply("B", bfield, s)))


# -- the automorphism group ---------------------------------------------


class Aut:
    """Automorphism candidate (phi, tau, A, B); check_aut decides membership."""

    __slots__ = ("phi", "tau", "afield", "bfield")

    def __init__(self, phi: FolAffine, tau: QAutPair, afield: QForm, bfield: TForm):
        if afield.degree != 1 or bfield.degree != 2:
            raise ValueError("gauge fields must be a 1-form and a 2-form")
        if afield.chart != phi.chart or bfield.chart != phi.chart:
            raise ValueError("chart mismatch")
        if afield.qlie != tau.qlie:
            raise ValueError("fiber algebra mismatch")
        self.phi = phi
        self.tau = tau
        self.afield = afield
        self.bfield = bfield

    @classmethod
    def identity(cls, chart: Chart, qlie: QLie) -> "Aut":
        return cls(
            FolAffine.identity(chart),
            QAutPair.identity(qlie),
            QForm.zero(chart, qlie, 1),
            TForm.zero(chart, 2),
        )

    def is_identity(self) -> bool:
        return (
            self.phi.is_identity()
            and self.tau.is_identity()
            and self.afield.is_zero()
            and self.bfield.is_zero()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Aut):
            return NotImplemented
        return (
            self.phi == other.phi
            and self.tau == other.tau
            and self.afield == other.afield
            and self.bfield == other.bfield
        )

    def __repr__(self):
        return f"Aut(phi={self.phi!r}, tau={self.tau!r}, A={self.afield!r}, B={self.bfield!r})"


def aut_apply(f: Aut, s: GSec) -> GSec:
    """Section action: the point map after both gauge maps."""
    return natural_apply(
        f.phi, f.tau, psi_apply("A", f.afield, psi_apply("B", f.bfield, s))
    )


def aut_compose(f: Aut, g: Aut) -> Aut:
    """Group law: (f o g), apply g first."""
    moved_a = f.afield.apply_matrix(g.tau.inv).pullback(g.phi)
    afield = moved_a + g.afield
    bfield = (
        g.phi.pullback(f.bfield)
        + g.bfield
        + pair_wedge(moved_a, g.afield).scaled(Fraction(1, 2))
    )
    return Aut(f.phi.compose(g.phi), f.tau.compose(g.tau), afield, bfield)


def aut_invert(f: Aut) -> Aut:
    inv = f.phi.inverse()
    return Aut(
        inv,
        f.tau.inverse(),
        -f.afield.apply_matrix(f.tau.mat).pullback(inv),
        -inv.pullback(f.bfield),
    )


def check_aut(f: Aut, alg: StdCA, trials: int = 10, seed: int = 0) -> Report:
    """Membership test: the three data conditions of the automorphism group,
    the data round trip, and bracket/pairing intertwining on random pairs."""
    from .sampler import Sampler
    from .serialize import gsec_to_json

    rep = Report(meta={"what": "check_aut", "trials": trials, "seed": seed})
    chart, q = alg.chart, alg.qlie
    phi, tau, afield, bfield = f.phi, f.tau, f.afield, f.bfield

    # nabla - phi^*(tau^{-1} nabla tau) = ad_A, on the coordinate frame
    witness = None
    for i in range(1, chart.k + 1):
        pulled = [[Poly.zero(chart.n) for _ in range(q.dim)] for _ in range(q.dim)]
        for l in range(1, chart.k + 1):
            factor = phi.lin[l - 1][i - 1]
            if factor == 0:
                continue
            moved = [
                [phi.pullback_poly(e) for e in row] for row in alg.conn.omega[l - 1]
            ]
            conj = _cmat_mul(tau.inv, _pmat_mul_cmat(moved, tau.mat))
            pulled = _pmat_add(pulled, _pmat_scale(conj, factor))
        lhs = _pmat_sub(alg.conn.omega[i - 1], pulled)
        rhs = ad_matrix(q, afield.interior(FVec.basis(chart, i)).vals())
        if not _pmat_eq(lhs, rhs):
            witness = {"direction": i}
            break
    rep.add("aut_condition_nabla", witness is None, witness)

    # R - phi^*(tau^{-1} R) = d_nabla A - [A ^ A]/2
    lhs = alg.curv - alg.curv.apply_matrix(tau.inv).pullback(phi)
    rhs = d_nabla(alg.conn, afield) - bracket_wedge(afield, afield).scaled(Fraction(1, 2))
    ok = lhs == rhs
    rep.add("aut_condition_curv", ok, None if ok else {"lhs": repr(lhs), "rhs": repr(rhs)})

    # H - phi^*H = dB + <A^R> - <d_nabla A ^ A>/2 + <A ^ [A^A]>/6
    lhs_t = alg.twist - phi.pullback(alg.twist)
    rhs_t = (
        tangential_d(bfield)
        + pair_wedge(afield, alg.curv)
        - pair_wedge(d_nabla(alg.conn, afield), afield).scaled(Fraction(1, 2))
        + pair_wedge(afield, bracket_wedge(afield, afield)).scaled(Fraction(1, 6))
    )
    ok = lhs_t == rhs_t
    rep.add("aut_condition_twist", ok, None if ok else {"lhs": repr(lhs_t), "rhs": repr(rhs_t)})

    # independent route: push the data through B, A, then (phi, tau)
    moved = natural_transform(
        phi, tau, transform_data("A", afield, transform_data("B", bfield, alg))
    )
    ok = moved == alg
    rep.add("data_round_trip", ok, None)

    smp = Sampler(seed)
    witness = None
    for trial in range(trials):
        s = smp.gsec(chart, q, 2)
        t = smp.gsec(chart, q, 2)
        fs, ft = aut_apply(f, s), aut_apply(f, t)
        if bracket(alg, fs, ft) != aut_apply(f, bracket(alg, s, t)):
            witness = {"trial": trial, "s": gsec_to_json(s), "t": gsec_to_json(t)}
            break
        if inner(fs, ft) != phi.inverse().pullback_poly(inner(s, t)):
            witness = {
                "trial": trial,
                "s": gsec_to_json(s),
                "t": gsec_to_json(t),
                "detail": "pairing",
            }
            break
    rep.add("intertwines_bracket", witness is None, witness)
    return rep


# -- infinitesimal automorphisms -----------------------------------------


class InfAut:
    """Infinitesimal automorphism candidate (X, Theta, a, b).

    X is a projectable field (transverse motion constant along leaves);
    Theta acts on fiber values as the X-derivative plus the pointwise
    matrix ``theta``, which makes the derivation rule hold by construction.
    """

    __slots__ = ("xfield", "theta", "afield", "bfield")

    def __init__(self, xfield: FVec, theta, afield: QForm, bfield: TForm):
        if afield.degree != 1 or bfield.degree != 2:
            raise ValueError("gauge fields must be a 1-form and a 2-form")
        if xfield.chart != afield.chart or bfield.chart != afield.chart:
            raise ValueError("chart mismatch")
        if not xfield.is_projectable():
            raise ValueError("vector field is not projectable")
        d = afield.qlie.dim
        if len(theta) != d or any(len(row) != d for row in theta):
            raise ValueError("theta must be dim x dim")
        self.xfield = xfield
        self.theta = tuple(
            tuple(
                e if isinstance(e, Poly) else Poly.const(xfield.chart.n, e) for e in row
            )
            for row in theta
        )
        self.afield = afield
        self.bfield = bfield

    @classmethod
    def zero(cls, chart: Chart, qlie: QLie) -> "InfAut":
        z = Poly.zero(chart.n)
        return cls(
            FVec.zero(chart),
            [[z] * qlie.dim for _ in range(qlie.dim)],
            QForm.zero(chart, qlie, 1),
            TForm.zero(chart, 2),
        )

    def is_zero(self) -> bool:
        return (
            self.xfield.is_zero()
            and all(e.is_zero() for row in self.theta for e in row)
            and self.afield.is_zero()
            and self.bfield.is_zero()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, InfAut):
            return NotImplemented
        return (
            self.xfield == other.xfield
            and self.theta == other.theta
            and self.afield == other.afield
            and self.bfield == other.bfield
        )

    def __repr__(self):
        return (
            f"InfAut(X={self.xfield!r}, theta={self.theta!r}, "
            f"a={self.afield!r}, b={self.bfield!r})"
        )


def infaut_apply(d: InfAut, s: GSec) -> GSec:
    """D(xi + x + U) = (L_X xi - a'(x) + i_U b) + (Theta x + a(U)) + {X, U}."""
    chart = s.chart
    q = s.qval.qlie
    form = (
        lie_derivative(d.xfield, s.form)
        - dagger_apply(d.afield, s.qval.vals())
        + interior(s.vec, d.bfield)
    )
    qv = QForm.from_vals(
        chart, q, theta_apply(d.xfield, d.theta, s.qval.vals())
    ) + d.afield.interior(s.vec)
    return GSec(form, qv, f_bracket(d.xfield, s.vec))


def infaut_bracket(d1: InfAut, d2: InfAut) -> InfAut:
    """Lie algebra bracket: commutator in every slot plus the gauge pairing."""
    x1, x2 = d1.xfield, d2.xfield
    theta = _pmat_add(
        _pmat_sub(_xdot_mat(x1, d2.theta), _xdot_mat(x2, d1.theta)),
        _pmat_sub(_pmat_mul(d1.theta, d2.theta), _pmat_mul(d2.theta, d1.theta)),
    )
    afield = lie_xtheta(x1, d1.theta, d2.afield) - lie_xtheta(x2, d2.theta, d1.afield)
    bfield = (
        lie_derivative(x1, d2.bfield)
        - lie_derivative(x2, d1.bfield)
        + pair_wedge(d1.afield, d2.afield)
    )
    return InfAut(f_bracket(x1, x2), theta, afield, bfield)


def check_infaut(d: InfAut, alg: StdCA, trials: int = 10, seed: int = 0) -> Report:
    """The six membership conditions plus derivation trials on random pairs."""
    from .sampler import Sampler
    from .serialize import gsec_to_json, poly_to_json

    rep = Report(meta={"what": "check_infaut", "trials": trials, "seed": seed})
    chart, q = alg.chart, alg.qlie
    x, theta = d.xfield, d.theta
    dim = q.dim
    zero = Poly.zero(chart.n)

    smp = Sampler(seed)
    # Theta(f s) = f Theta(s) + (X.f) s; true by representation, verified once
    f = smp.poly(chart.n, 2)
    svals = [smp.poly(chart.n, 2) for _ in range(dim)]
    lhs = theta_apply(x, theta, [f * v for v in svals])
    rhs = [
        f * t + x.apply(f) * v for t, v in zip(theta_apply(x, theta, svals), svals)
    ]
    rep.add("theta_leibniz", lhs == rhs, None)

    witness = None
    for a in range(dim):
        for b in range(dim):
            acc = zero
            for r in range(dim):
                acc = acc + theta[r][a] * q.gram[r][b] + theta[r][b] * q.gram[a][r]
            if not acc.is_zero():
                witness = {"basis": [a + 1, b + 1]}
                break
        if witness:
            break
    rep.add("theta_metric", witness is None, witness)

    witness = None
    for a in range(dim):
        for b in range(dim):
            for m in range(dim):
                acc = zero
                for l in range(dim):
                    acc = (
                        acc
                        + q.brk[a][b][l] * theta[m][l]
                        - theta[l][a] * q.brk[l][b][m]
                        - theta[l][b] * q.brk[a][l][m]
                    )
                if not acc.is_zero():
                    witness = {"basis": [a + 1, b + 1], "component": m + 1}
                    break
            if witness:
                break
        if witness:
            break
    rep.add("theta_bracket", witness is None, witness)

    # [Theta, nabla_i] - nabla_{X, e_i} = ad(a(e_i)) on the coordinate frame
    witness = None
    for i in range(1, chart.k + 1):
        om = alg.conn.omega[i - 1]
        lhs_mat = _pmat_add(
            _xdot_mat(x, om),
            _pmat_sub(_pmat_mul(theta, om), _pmat_mul(om, theta)),
        )
        lhs_mat = _pmat_sub(lhs_mat, _dpart_mat(theta, i))
        for l in range(1, chart.k + 1):
            coeff = x.comps[l - 1].partial(i)
            if not coeff.is_zero():
                lhs_mat = _pmat_add(
                    lhs_mat, [[coeff * e for e in row] for row in alg.conn.omega[l - 1]]
                )
        rhs_mat = ad_matrix(q, d.afield.interior(FVec.basis(chart, i)).vals())
        if not _pmat_eq(lhs_mat, rhs_mat):
            witness = {"direction": i}
            break
    rep.add("infaut_condition_nabla", witness is None, witness)

    lhs_q = lie_xtheta(x, theta, alg.curv)
    rhs_q = d_nabla(alg.conn, d.afield)
    ok = lhs_q == rhs_q
    rep.add("infaut_condition_curv", ok, None if ok else {"lhs": repr(lhs_q), "rhs": repr(rhs_q)})

    # membership on the twist slot: L_X H = db + <a ^ R>.  This is the sign
    # forced by the derivation property for the bracket and section action
    # implemented here (the derivation trials below break on the other one).
    resid = (
        lie_derivative(x, alg.twist)
        - tangential_d(d.bfield)
        - pair_wedge(d.afield, alg.curv)
    )
    ok = resid.is_zero()
    rep.add("infaut_condition_twist", ok, None if ok else {"residual": repr(resid)})

    witness = None
    for trial in range(trials):
        u = smp.gsec(chart, q, 2)
        v = smp.gsec(chart, q, 2)
        g = smp.poly(chart.n, 2)
        du, dv = infaut_apply(d, u), infaut_apply(d, v)
        if infaut_apply(d, bracket(alg, u, v)) != bracket(alg, du, v) + bracket(alg, u, dv):
            witness = {"trial": trial, "u": gsec_to_json(u), "v": gsec_to_json(v)}
            break
        if x.apply(inner(u, v)) != inner(du, v) + inner(u, dv):
            witness = {
                "trial": trial,
                "u": gsec_to_json(u),
                "v": gsec_to_json(v),
                "detail": "pairing",
            }
            break
        if infaut_apply(d, u.scaled(g)) != du.scaled(g) + u.scaled(x.apply(g)):
            witness = {"trial": trial, "u": gsec_to_json(u), "f": poly_to_json(g)}
            break
    rep.add("derivation_trials", witness is None, witness)
    return rep


# -- exact linearization of one-parameter gauge families ------------------


def linearize(afield: QForm, bfield: TForm, alg: StdCA) -> InfAut:
    """Formal derivative at t = 0 of the family psi_{tA} o psi_{tB}.

    A fresh transverse coordinate plays the role of t; the family action on
    probe sections is exact in t, and the t-linear coefficient is collected
    back into an infinitesimal automorphism.  No numeric differencing.
    """
    chart, q = alg.chart, alg.qlie
    big = Chart(chart.n + 1, chart.k)
    t = Poly.var(big.n, big.n)
    a_t = _lift_qform(afield, big, q).scaled(t)
    b_t = _lift_tform(bfield, big).scaled(t)

    def t_coeff(p: Poly) -> Poly:
        down = [Poly.var(chart.n, i + 1) for i in range(chart.n)] + [Poly.zero(chart.n)]
        return p.partial(big.n).subst(down, chart.n)

    def probe(s: GSec) -> GSec:
        return psi_apply("A", a_t, psi_apply("B", b_t, s))

    zero_vec = FVec.zero(big)
    zero_q = QForm.zero(big, q, 0)
    a_cols = []
    b_rows = []
    x_comps = [Poly.zero(chart.n) for _ in range(chart.n)]
    for i in range(1, chart.k + 1):
        out = probe(GSec(TForm.zero(big, 1), zero_q, FVec.basis(big, i)))
        a_cols.append([t_coeff(v) for v in out.qval.vals()])
        b_rows.append({(m,): t_coeff(out.form.coeff((m,))) for m in range(1, big.k + 1)})
        for l in range(chart.n):
            x_comps[l] = x_comps[l] + t_coeff(out.vec.comps[l] - (1 if l == i - 1 else 0) * Poly.const(big.n, 1))
    theta_cols = []
    for j in range(1, q.dim + 1):
        out = probe(GSec(TForm.zero(big, 1), QForm.basis_val(big, q, j), zero_vec))
        theta_cols.append([t_coeff(v - (1 if r == j - 1 else 0)) for r, v in enumerate(out.qval.vals())])

    a_comps = []
    for r in range(q.dim):
        terms = {}
        for i in range(chart.k):
            if not a_cols[i][r].is_zero():
                terms[(i + 1,)] = a_cols[i][r]
        a_comps.append(TForm(chart, 1, terms))
    b_terms = {}
    for i in range(chart.k):
        for (m,), coeff in b_rows[i].items():
            if m > i + 1 and not coeff.is_zero():
                b_terms[(i + 1, m)] = coeff
    theta = [
        [theta_cols[s][r] for s in range(q.dim)] for r in range(q.dim)
    ]
    return InfAut(
        FVec(chart, x_comps),
        theta,
        QForm(chart, q, 1, a_comps),
        TForm(chart, 2, b_terms),
    )


def _lift_poly(p: Poly, big_n: int) -> Poly:
    images = [Poly.var(big_n, i + 1) for i in range(p.nvars)]
    return p.subst(images, big_n)


def _lift_tform(w: TForm, big: Chart) -> TForm:
    return TForm(big, w.degree, {i: _lift_poly(c, big.n) for i, c in w.terms.items()})


def _lift_qform(w: QForm, big: Chart, q: QLie) -> QForm:
    return QForm(big, q, w.degree, [_lift_tform(c, big) for c in w.comps])


# -- gauge pairs ----------------------------------------------------------


def gauge_compose(a1: QForm, b1: TForm, a2: QForm, b2: TForm):
    """(A,B) o (C,D) = (A + C, B + D + <A ^ C>/2) with identity phi, tau."""
    return a1 + a2, b1 + b2 + pair_wedge(a1, a2).scaled(Fraction(1, 2))


# -- polynomial matrix helpers --------------------------------------------


def _pmat_add(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _pmat_sub(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _pmat_scale(a, c):
    return [[x * c for x in row] for row in a]


def _pmat_mul(a, b):
    n = len(a)
    if n == 0:
        return []
    m = len(b[0])
    return [
        [
            sum((a[i][l] * b[l][j] for l in range(len(b))), a[0][0] * 0)
            for j in range(m)
        ]
        for i in range(n)
    ]


def _pmat_mul_cmat(p, c):
    """Poly matrix times Fraction matrix."""
    n = len(p)
    if n == 0:
        return []
    return [
        [
            sum((p[i][l] * c[l][j] for l in range(n) if c[l][j] != 0), p[0][0] * 0)
            for j in range(n)
        ]
        for i in range(n)
    ]


def _cmat_mul(c, p):
    """Fraction matrix times Poly matrix."""
    n = len(p)
    if n == 0:
        return []
    return [
        [
            sum((p[l][j] * c[i][l] for l in range(n) if c[i][l] != 0), p[0][0] * 0)
            for j in range(n)
        ]
        for i in range(n)
    ]


def _pmat_eq(a, b) -> bool:
    return all(x == y for r1, r2 in zip(a, b) for x, y in zip(r1, r2))


def _xdot_mat(x: FVec, mat):
    return [[x.apply(e) for e in row] for row in mat]


def _dpart_mat(mat, i: int):
    return [[e.partial(i) for e in row] for row in mat]
