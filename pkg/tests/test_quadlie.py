from fractions import Fraction

import pytest

from courant.foliated import Chart, FVec
from courant.quadlie import Conn, QLie, killing_form, sl2, so3, validate_conn, validate_qlie
from courant.ring import Poly
from courant.sampler import Sampler


def killing_oracle(brk):
    """Independent oracle: build the adjoint matrices and trace their products."""
    d = len(brk)

    def ad(i):
        return [[Fraction(brk[i][s][r]) for s in range(d)] for r in range(d)]

    out = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = [
                [
                    sum((ad(i)[r][l] * ad(j)[l][s] for l in range(d)), Fraction(0))
                    for s in range(d)
                ]
                for r in range(d)
            ]
            row.append(sum((prod[r][r] for r in range(d)), Fraction(0)))
        out.append(tuple(row))
    return tuple(out)


def test_validate_so3_passes():
    assert validate_qlie(so3()).ok


def test_validate_abelian_passes():
    assert validate_qlie(QLie.abelian(2)).ok


def test_validate_bad_gram_invariance_witness():
    q = so3()
    bad = QLie(3, q.brk, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    rep = validate_qlie(bad)
    assert not rep.ok
    failed = rep.check_named("invariance")
    assert not failed.ok
    assert failed.witness == {"basis": [1, 2, 3]}


def test_validate_degenerate_gram():
    q = QLie.abelian(2, [[1, 1], [1, 1]])
    rep = validate_qlie(q)
    assert not rep.check_named("gram_nondegenerate").ok


def test_validate_broken_jacobi():
    c = [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]  # [E1,E2] = E1: fine
    c[0][0][1] = 0
    # deliberately break antisymmetry
    c[0][1] = [1, 0]
    c[1][0] = [1, 0]
    rep = validate_qlie(QLie(2, c, [[1, 0], [0, 1]]))
    assert not rep.check_named("antisymmetry").ok


def test_killing_so3_fixture():
    got = killing_form(so3().brk)
    expected = tuple(
        tuple(Fraction(-2) if i == j else Fraction(0) for j in range(3)) for i in range(3)
    )
    assert got == expected
    assert got == killing_oracle(so3().brk)


def test_killing_sl2_fixture():
    got = killing_form(sl2().brk)
    assert got[0][0] == 8
    assert got[1][2] == got[2][1] == 4
    assert got[0][1] == got[0][2] == got[1][1] == got[2][2] == 0
    assert got == killing_oracle(sl2().brk)


def test_killing_abelian_zero():
    got = killing_form(QLie.abelian(3).brk)
    assert all(x == 0 for row in got for x in row)


def test_killing_symmetric_and_invariant_random():
    # kappa is symmetric and ad-invariant for any bracket with antisymmetry
    for q in (so3(), sl2()):
        kappa = killing_form(q.brk)
        d = q.dim
        for i in range(d):
            for j in range(d):
                assert kappa[i][j] == kappa[j][i]
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    total = Fraction(0)
                    for m in range(d):
                        total += q.brk[i][j][m] * kappa[m][l] + q.brk[i][l][m] * kappa[j][m]
                    assert total == 0


def ad_conn(chart: Chart, q: QLie, direction_vals) -> Conn:
    """Connection with omega_i = ad(v_i) for constant fiber elements v_i."""
    mats = []
    for vals in direction_vals:
        mat = q.ad_matrix_consts([Fraction(x) for x in vals])
        mats.append([[Poly.const(chart.n, e) for e in row] for row in mat])
    return Conn(chart, q, mats)


def test_nabla_trivial_componentwise():
    chart = Chart(2, 2)
    q = so3()
    conn = Conn.trivial(chart, q)
    vals = [Poly.zero(2), Poly.var(2, 1), Poly.zero(2)]  # x1 e2
    got = conn.nabla_apply(FVec.basis(chart, 1), vals)
    assert got == [Poly.zero(2), Poly.const(2, 1), Poly.zero(2)]


def test_nabla_adjoint_connection():
    chart = Chart(2, 2)
    q = so3()
    conn = ad_conn(chart, q, [[1, 0, 0], [0, 0, 0]])  # omega = dx1 (x) ad_e1
    e2 = [Poly.zero(2), Poly.const(2, 1), Poly.zero(2)]
    got = conn.nabla_apply(FVec.basis(chart, 1), e2)
    assert got == [Poly.zero(2), Poly.zero(2), Poly.const(2, 1)]  # e3


def test_nabla_zero_field():
    chart = Chart(2, 2)
    q = so3()
    conn = ad_conn(chart, q, [[1, 0, 0], [0, 1, 0]])
    vals = [Poly.var(2, 1), Poly.zero(2), Poly.zero(2)]
    assert conn.nabla_apply(FVec.zero(chart), vals) == [Poly.zero(2)] * 3


def test_nabla_function_linearity_random():
    chart = Chart(3, 3)
    q = so3()
    conn = ad_conn(chart, q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    smp = Sampler(83)
    for _ in range(10):
        x = smp.fvec(chart, 2)
        f = smp.poly(3, 2)
        s = [smp.poly(3, 2) for _ in range(3)]
        fx = x.scaled(f)
        assert conn.nabla_apply(fx, s) == [f * v for v in conn.nabla_apply(x, s)]
        lhs = conn.nabla_apply(x, [f * v for v in s])
        rhs = [f * v + x.apply(f) * w for v, w in zip(conn.nabla_apply(x, s), s)]
        assert lhs == rhs


def test_validate_conn_trivial():
    chart = Chart(2, 2)
    assert validate_conn(Conn.trivial(chart, so3())).ok


def test_validate_conn_adjoint_passes():
    chart = Chart(2, 2)
    rep = validate_conn(ad_conn(chart, so3(), [[1, 0, 0], [0, 0, 0]]))
    assert rep.ok


def test_validate_conn_non_skew_fails_metric():
    chart = Chart(2, 2)
    q = so3()
    e12 = [[Poly.zero(2)] * 3 for _ in range(3)]
    e12[0][1] = Poly.const(2, 1)
    conn = Conn(chart, q, [e12, [[Poly.zero(2)] * 3 for _ in range(3)]])
    rep = validate_conn(conn)
    assert not rep.check_named("nabla_metric").ok
    assert rep.check_named("nabla_metric").witness["direction"] == 1


def test_nabla_compatibility_on_random_sections():
    # frame-level validation implies the identities for polynomial sections
    chart = Chart(2, 2)
    q = so3()
    conn = ad_conn(chart, q, [[1, 0, 0], [0, 1, 0]])
    assert validate_conn(conn).ok
    smp = Sampler(89)
    zero = Poly.zero(2)
    for _ in range(10):
        x = smp.fvec(chart, 2)
        s = [smp.poly(2, 2) for _ in range(3)]
        t = [smp.poly(2, 2) for _ in range(3)]
        ns, nt = conn.nabla_apply(x, s), conn.nabla_apply(x, t)
        assert x.apply(q.pair_vals(s, t, zero)) == q.pair_vals(ns, t, zero) + q.pair_vals(s, nt, zero)
        lhs = conn.nabla_apply(x, q.bracket_vals(s, t, zero))
        rhs = [
            a + b
            for a, b in zip(q.bracket_vals(ns, t, zero), q.bracket_vals(s, nt, zero))
        ]
        assert lhs == rhs


def test_conn_shape_validation():
    chart = Chart(2, 2)
    with pytest.raises(ValueError, match="per leaf direction"):
        Conn(chart, so3(), [])


def test_rank_zero_fiber():
    chart = Chart(2, 2)
    q = QLie.trivial()
    assert validate_qlie(q).ok
    conn = Conn.trivial(chart, q)
    assert validate_conn(conn).ok
    assert conn.nabla_apply(FVec.basis(chart, 1), []) == []
