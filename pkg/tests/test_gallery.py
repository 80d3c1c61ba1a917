from fractions import Fraction

import pytest

from courant.foliated import Chart, FVec, TForm
from courant.gallery import (
    ValidationError,
    double_constants,
    heisenberg3_constants,
    heterotic_abelian_4d,
    make_bn,
    make_dn,
    make_heterotic_like,
    make_point_manin,
    nonabelian2_constants,
    so3_flat,
)
from courant.qforms import QForm, pair_wedge
from courant.quadlie import Conn, so3, validate_qlie
from courant.ring import Poly
from courant.sampler import Sampler
from courant.standard import GSec, axiom_suite, bracket, validate_stdca


def test_make_dn_untwisted():
    alg = make_dn(3)
    assert alg.qlie.dim == 0
    assert validate_stdca(alg).ok
    assert axiom_suite(alg, trials=6, seed=1).ok


def test_make_dn_constant_twist():
    chart = Chart(3, 3)
    alg = make_dn(3, TForm.dx(chart, 1, 2, 3).scaled(4))
    s = GSec(TForm.zero(chart, 1), QForm.zero(chart, alg.qlie, 0), FVec.basis(chart, 1))
    t = GSec(TForm.zero(chart, 1), QForm.zero(chart, alg.qlie, 0), FVec.basis(chart, 2))
    assert bracket(alg, s, t).form == TForm.dx(chart, 3).scaled(4)


def test_make_dn_rejects_nonclosed():
    chart = Chart(3, 3)
    bad = TForm(chart, 3, {(1, 2, 3): Poly.var(3, 1)})
    # x1 dx1^dx2^dx3 is closed on a 3d leaf; use a transversally-poor one
    assert make_dn(3, bad)  # closed: d raises degree past k
    chart4 = Chart(4, 4)
    bad4 = TForm(chart4, 3, {(2, 3, 4): Poly.var(4, 1) ** 2})
    with pytest.raises(ValidationError) as err:
        make_dn(4, bad4)
    assert not err.value.report.check_named("twist_closed").ok


def test_make_bn_families():
    alg = make_bn(3)
    assert alg.qlie.dim == 1
    assert validate_stdca(alg).ok
    chart4 = Chart(4, 4)
    closed = TForm.dx(chart4, 1, 2, 3)
    alg4 = make_bn(4, closed)
    assert validate_stdca(alg4).ok
    assert axiom_suite(alg4, trials=6, seed=2).ok


def test_make_bn_rejects_nonclosed():
    chart4 = Chart(4, 4)
    with pytest.raises(ValidationError):
        make_bn(4, TForm(chart4, 3, {(2, 3, 4): Poly.var(4, 1)}))


def test_heterotic_abelian_4d_valid():
    alg = heterotic_abelian_4d()
    rep = validate_stdca(alg)
    assert rep.ok
    # the Pontryagin pairing really is nontrivial here
    half = pair_wedge(alg.curv, alg.curv).scaled(Fraction(1, 2))
    assert half == TForm.dx(alg.chart, 1, 2, 3, 4)
    assert axiom_suite(alg, trials=6, seed=3).ok


def test_heterotic_rejects_mismatched_curvature():
    chart = Chart(2, 2)
    q = so3()
    curv = QForm(
        chart, q, 2, [TForm.dx(chart, 1, 2), TForm.zero(chart, 2), TForm.zero(chart, 2)]
    )
    with pytest.raises(ValidationError) as err:
        make_heterotic_like(chart, q, Conn.trivial(chart, q), curv, TForm.zero(chart, 3))
    assert not err.value.report.check_named("curvature_is_ad").ok


def test_so3_flat_valid():
    alg = so3_flat()
    assert validate_stdca(alg).ok
    assert axiom_suite(alg, trials=6, seed=4).ok


def test_point_manin_abelian_double():
    d = 2
    zero = [[[0] * d for _ in range(d)] for _ in range(d)]
    q = make_point_manin(zero)
    assert q.dim == 4
    assert all(x == 0 for plane in q.brk for row in plane for x in row)
    assert validate_qlie(q).ok


def test_point_manin_nonabelian_semidirect():
    q = make_point_manin(nonabelian2_constants())
    assert validate_qlie(q).ok
    # coadjoint-action oracle: [e1, f2] = -f2 and [e2, f2] = f1
    e1, e2, f1, f2 = range(4)
    assert q.brk[e1][f2][f2] == -1
    assert q.brk[e2][f2][f1] == 1
    assert q.brk[e1][f1] == (0, 0, 0, 0)
    assert q.brk[e2][f1] == (0, 0, 0, 0)
    # hyperbolic pairing
    assert q.gram[e1][f1] == 1 and q.gram[e2][f2] == 1 and q.gram[e1][e2] == 0


def test_point_manin_cocycle_violation_fails_jacobi():
    brk = heisenberg3_constants()
    cobrk = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    cobrk[0][1][2] = 1
    cobrk[1][0][2] = -1
    with pytest.raises(ValidationError) as err:
        make_point_manin(brk, cobrk)
    rep = err.value.report
    assert not rep.check_named("jacobi").ok
    assert rep.check_named("jacobi").witness["basis"] == [1, 2, 4]
    # everything else about the double is fine; the cocycle defect is Jacobi
    assert rep.check_named("antisymmetry").ok
    assert rep.check_named("gram_nondegenerate").ok


def test_point_manin_nonskew_cobracket_fails():
    brk = nonabelian2_constants()
    cobrk = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    cobrk[0][1][0] = 1  # no matching -1 on the flipped slot
    with pytest.raises(ValidationError) as err:
        make_point_manin(brk, cobrk)
    assert not err.value.report.ok


def test_double_constants_shape():
    c, gram = double_constants(nonabelian2_constants(), [[[0] * 2] * 2] * 2)
    assert len(c) == 4 and len(gram) == 4


def test_gallery_outputs_always_validate():
    smp = Sampler(7)
    chart = Chart(3, 3)
    for _ in range(3):
        closed = smp.closed_tform(chart, 3, 2)
        assert validate_stdca(make_dn(3, closed)).ok
        assert validate_stdca(make_bn(3, closed)).ok
