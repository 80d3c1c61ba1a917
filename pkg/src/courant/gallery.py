"""Constructors for the worked example families.

Exact split-type instances (rank-0 fiber), rank-1 abelian instances,
flat and curved instances over bigger fiber algebras, and the point-case
double of a Lie algebra with a cobracket.  Every constructor validates its
output and refuses invalid data with a witness-carrying report.
"""

from __future__ import annotations

from fractions import Fraction

from .foliated import Chart, TForm, tangential_d
from .qforms import QForm
from .quadlie import Conn, QLie, so3, validate_qlie
from .report import Report
from .ring import Poly
from .standard import StdCA, validate_stdca


class ValidationError(ValueError):
    """Constructor input failed its structural checks; .report has details."""

    def __init__(self, message: str, report: Report):
        super().__init__(f"{message}:\n{report.summary()}")
        self.report = report


def make_dn(n: int, twist: TForm | None = None) -> StdCA:
    """Exact-type instance: rank-0 fiber over a fully foliated chart.

    The bracket degenerates to the twisted split form, so the only
    constraint is a closed twist 3-form.
    """
    chart = Chart(n, n)
    qlie = QLie.trivial()
    if twist is None:
        twist = TForm.zero(chart, 3)
    _require_closed_twist(chart, twist)
    return StdCA(chart, qlie, Conn.trivial(chart, qlie), QForm.zero(chart, qlie, 2), twist)


def make_bn(n: int, twist: TForm | None = None) -> StdCA:
    """Rank-1 abelian fiber with unit pairing, trivial connection, no curvature."""
    chart = Chart(n, n)
    qlie = QLie.abelian(1)
    if twist is None:
        twist = TForm.zero(chart, 3)
    _require_closed_twist(chart, twist)
    return StdCA(chart, qlie, Conn.trivial(chart, qlie), QForm.zero(chart, qlie, 2), twist)


def _require_closed_twist(chart: Chart, twist: TForm):
    if twist.chart != chart or twist.degree != 3:
        raise ValueError("twist must be a 3-form on the family chart")
    resid = tangential_d(twist)
    if not resid.is_zero():
        rep = Report(meta={"what": "closed_twist"})
        rep.add("twist_closed", False, {"d_twist": repr(resid)})
        raise ValidationError("twist 3-form is not closed", rep)


def make_heterotic_like(
    chart: Chart, qlie: QLie, conn: Conn, curv: QForm, twist: TForm
) -> StdCA:
    """General standard instance from supplied data, gated on the five relations."""
    alg = StdCA(chart, qlie, conn, curv, twist)
    rep = validate_stdca(alg)
    if not rep.ok:
        raise ValidationError("supplied data is not a standard Courant algebroid", rep)
    return alg


def heterotic_abelian_4d() -> StdCA:
    """Fully foliated 4d chart, rank-2 abelian fiber with split pairing.

    The curvature form pairs the two coordinate planes, and the twist
    x1 dx2^dx3^dx4 satisfies dH = <R ^ R>/2 = dx1^dx2^dx3^dx4 exactly.
    """
    chart = Chart(4, 4)
    gram = [[0, 1], [1, 0]]
    qlie = QLie.abelian(2, gram)
    curv = QForm(
        chart,
        qlie,
        2,
        [TForm.dx(chart, 1, 2), TForm.dx(chart, 3, 4)],
    )
    twist = TForm(chart, 3, {(2, 3, 4): Poly.var(4, 1)})
    return make_heterotic_like(chart, qlie, Conn.trivial(chart, qlie), curv, twist)


def so3_flat(n: int = 3) -> StdCA:
    """Flat instance over the rotation algebra with its invariant pairing."""
    chart = Chart(n, n)
    qlie = so3()
    return make_heterotic_like(
        chart,
        qlie,
        Conn.trivial(chart, qlie),
        QForm.zero(chart, qlie, 2),
        TForm.zero(chart, 3),
    )


def double_constants(brk, cobrk):
    """Structure constants and Gram matrix of the double on g + g*.

    brk[a][b][k] are the constants of g, cobrk[a][b][k] those of g*.  In the
    double, with basis (e_1..e_d, f^1..f^d):

        [e_a, e_b] = brk[a][b][k] e_k
        [f^a, f^b] = cobrk[a][b][k] f^k
        [e_a, f^b] = cobrk[b][m][a] e_m - brk[a][m][b] f^m

    and the pairing is the duality pairing <e_a, f^b> = delta.
    """
    d = len(brk)
    big = 2 * d
    c = [[[Fraction(0)] * big for _ in range(big)] for _ in range(big)]
    for a in range(d):
        for b in range(d):
            for k in range(d):
                c[a][b][k] = Fraction(brk[a][b][k])
                c[d + a][d + b][d + k] = Fraction(cobrk[a][b][k])
    for a in range(d):
        for b in range(d):
            for m in range(d):
                c[a][d + b][m] = Fraction(cobrk[b][m][a])
                c[a][d + b][d + m] = -Fraction(brk[a][m][b])
                c[d + b][a][m] = -Fraction(cobrk[b][m][a])
                c[d + b][a][d + m] = Fraction(brk[a][m][b])
    gram = [[Fraction(0)] * big for _ in range(big)]
    for a in range(d):
        gram[a][d + a] = Fraction(1)
        gram[d + a][a] = Fraction(1)
    return c, gram


def make_point_manin(brk, cobrk=None) -> QLie:
    """The double of a Lie algebra and a cobracket, as a quadratic Lie algebra.

    Passing the full validator certifies the input pair at desk scale; a
    broken pair surfaces as a Jacobi or invariance witness in the raised
    report.
    """
    d = len(brk)
    if cobrk is None:
        cobrk = [[[0] * d for _ in range(d)] for _ in range(d)]
    c, gram = double_constants(brk, cobrk)
    q = QLie(2 * d, c, gram)
    rep = validate_qlie(q)
    if not rep.ok:
        raise ValidationError("bialgebra data does not give a quadratic double", rep)
    return q


def nonabelian2_constants():
    """[E1, E2] = E2, the nonabelian algebra in dimension two."""
    c = [[[0, 0], [0, 1]], [[0, -1], [0, 0]]]
    return c


def heisenberg3_constants():
    """[E1, E2] = E3 and nothing else."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = 1
    c[1][0][2] = -1
    return c
