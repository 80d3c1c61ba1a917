"""Acceptance suite: one test per criterion, exact equality throughout.

Each test prints a single PASS line on success (visible with ``pytest -s``)
and carries the trial counts in its assertions, so a red test names the
criterion that broke.
"""

from fractions import Fraction
from itertools import combinations

from courant.foliated import (
    Chart,
    FVec,
    FolAffine,
    TForm,
    f_bracket,
    interior,
    lie_derivative,
    tangential_d,
)
from courant.gallery import (
    ValidationError,
    heisenberg3_constants,
    heterotic_abelian_4d,
    make_bn,
    make_dn,
    make_point_manin,
    nonabelian2_constants,
    so3_flat,
)
from courant.qforms import QForm, pair_wedge
from courant.quadlie import QLie, killing_form, sl2, so3, validate_qlie
from courant.ring import Poly
from courant.sampler import Sampler
from courant.standard import StdCA, axiom_suite, bracket, validate_stdca
from courant.transform import (
    Aut,
    InfAut,
    QAutPair,
    aut_apply,
    aut_compose,
    aut_invert,
    check_aut,
    check_infaut,
    dissection_change,
    infaut_apply,
    infaut_bracket,
    linearize,
    psi_apply,
    transform_data,
)


def announce(criterion: str):
    print(f"PASS {criterion}")


def cartan_formula(x, w):
    out = interior(x, tangential_d(w))
    if w.degree >= 1:
        out = out + tangential_d(interior(x, w))
    return out


def test_criterion_1_cartan_suite():
    """Six Cartan-triple identities on 200 seeded random (X, Y, w)."""
    smp = Sampler(20260810)
    checked = 0
    while checked < 200:
        n = smp.rng.randint(1, 4)
        k = smp.rng.randint(1, n)
        chart = Chart(n, k)
        x, y = smp.fvec(chart, 3), smp.fvec(chart, 3)
        p = smp.rng.randint(0, min(k, 3))
        w = smp.tform(chart, p, 3)
        lx = lambda v: lie_derivative(x, v)
        ly = lambda v: lie_derivative(y, v)
        xy = f_bracket(x, y)
        assert lx(ly(w)) - ly(lx(w)) == lie_derivative(xy, w)
        if w.degree >= 1:
            assert lx(interior(y, w)) - interior(y, lx(w)) == interior(xy, w)
        assert cartan_formula(x, w) == lx(w)
        assert lx(tangential_d(w)) == tangential_d(lx(w))
        assert tangential_d(tangential_d(w)).is_zero()
        if w.degree >= 2:
            assert interior(x, interior(y, w)) == -interior(y, interior(x, w))
        elif w.degree == 1:
            assert interior(x, interior(y, w)).is_zero()
        checked += 1
    announce("criterion 1: Cartan triple, 200 random triples, n<=4, k<=4, deg<=3")


def test_criterion_2_wedge_formula_suite():
    """The four pairing/bracket formulas on 100 instances over two fibers."""
    from courant.qforms import bracket_wedge

    chart = Chart(3, 3)
    fibers = [so3(), QLie.abelian(2, [[0, 1], [1, 0]])]
    zero = Poly.zero(3)
    total = 0
    for fiber_idx, q in enumerate(fibers):
        smp = Sampler(31 + fiber_idx)
        for _ in range(50):
            a1 = smp.qform(chart, q, 1, 2)
            a2 = smp.qform(chart, q, 1, 2)
            r = smp.qform(chart, q, 2, 2)
            pair12 = pair_wedge(a1, a2)
            aa = bracket_wedge(a1, a1)
            for i, j in combinations(range(1, 4), 2):
                assert pair12.eval_frame((i, j)) == q.pair_vals(
                    a1.eval_frame((i,)), a2.eval_frame((j,)), zero
                ) - q.pair_vals(a1.eval_frame((j,)), a2.eval_frame((i,)), zero)
                assert aa.eval_frame((i, j)) == [
                    2 * v
                    for v in q.bracket_vals(a1.eval_frame((i,)), a1.eval_frame((j,)), zero)
                ]
            par = pair_wedge(a1, r)
            paa = pair_wedge(a1, aa)
            i, j, k = 1, 2, 3
            assert par.eval_frame((i, j, k)) == (
                q.pair_vals(a1.eval_frame((i,)), r.eval_frame((j, k)), zero)
                - q.pair_vals(a1.eval_frame((j,)), r.eval_frame((i, k)), zero)
                + q.pair_vals(a1.eval_frame((k,)), r.eval_frame((i, j)), zero)
            )
            assert paa.eval_frame((i, j, k)) == 6 * q.pair_vals(
                a1.eval_frame((i,)),
                q.bracket_vals(a1.eval_frame((j,)), a1.eval_frame((k,)), zero),
                zero,
            )
            total += 1
    assert total == 100
    announce("criterion 2: four wedge formulas, 100 instances over two fiber algebras")


def fixture_instances():
    chart3 = Chart(3, 3)
    return {
        "bn": make_bn(3, TForm.dx(chart3, 1, 2, 3).scaled(3)),
        "dn": make_dn(3, TForm.dx(chart3, 1, 2, 3).scaled(2)),
        "so3flat": so3_flat(),
        "het4": heterotic_abelian_4d(),
    }


def test_criterion_3_soundness():
    """validate_stdca passes and the axiom suite passes on 100 triples each."""
    for name, alg in fixture_instances().items():
        rep = validate_stdca(alg)
        assert rep.ok, f"{name}: {rep.summary()}"
        ax = axiom_suite(alg, trials=100, seed=100)
        assert ax.ok, f"{name}: {ax.summary()}"
        for axiom in (
            "metric_invariance",
            "loday",
            "symmetrization_is_d",
            "right_leibniz",
            "left_leibniz",
            "anchor_of_d",
        ):
            assert ax.check_named(axiom).ok
    announce("criterion 3: soundness of bn, dn, so3-flat, het4 on 100 triples each")


def test_criterion_4_compatibility_axiom_linkage():
    """Breaking one structural relation breaks a matching axiom, with witness."""
    het = heterotic_abelian_4d()
    broken = StdCA(het.chart, het.qlie, het.conn, het.curv, TForm.zero(het.chart, 3))
    rep = validate_stdca(broken)
    assert not rep.check_named("pontryagin").ok
    ax = axiom_suite(broken, trials=40, seed=4)
    lod = ax.check_named("loday")
    assert not lod.ok and lod.witness is not None and "u" in lod.witness

    chart = Chart(2, 2)
    q = so3()
    zero = Poly.zero(2)
    e12 = [[zero, Poly.const(2, 1), zero], [zero] * 3, [zero] * 3]
    from courant.quadlie import Conn

    bad_conn = Conn(chart, q, [e12, [[zero] * 3 for _ in range(3)]])
    bad = StdCA(chart, q, bad_conn, QForm.zero(chart, q, 2), TForm.zero(chart, 3))
    rep = validate_stdca(bad)
    assert not rep.check_named("nabla_metric").ok
    ax = axiom_suite(bad, trials=40, seed=5)
    met = ax.check_named("metric_invariance")
    assert not met.ok and met.witness is not None
    announce("criterion 4: broken Pontryagin breaks Loday; non-skew omega breaks metric invariance")


def test_criterion_5_transformation_lemmas():
    """Intertwining for each elementary map on 100 pairs; composite equals closed form."""
    instances = fixture_instances()
    for kind_idx, kind in enumerate(("tau", "A", "B")):
        pairs = 0
        for name_idx, name in enumerate(("bn", "so3flat", "het4")):
            alg = instances[name]
            smp = Sampler(1000 + 10 * kind_idx + name_idx)
            if kind == "tau":
                data = smp.qaut(alg.qlie)
            elif kind == "A":
                data = smp.qform(alg.chart, alg.qlie, 1, 2)
            else:
                data = smp.tform(alg.chart, 2, 2)
            moved = transform_data(kind, data, alg)
            assert validate_stdca(moved).ok
            for _ in range(34):
                s = smp.gsec(alg.chart, alg.qlie, 2)
                t = smp.gsec(alg.chart, alg.qlie, 2)
                lhs = psi_apply(kind, data, bracket(alg, s, t))
                rhs = bracket(moved, psi_apply(kind, data, s), psi_apply(kind, data, t))
                assert lhs == rhs
                from courant.standard import inner

                assert inner(psi_apply(kind, data, s), psi_apply(kind, data, t)) == inner(s, t)
                pairs += 1
        assert pairs >= 100
    smp = Sampler(55)
    for name, alg in instances.items():
        tau = smp.qaut(alg.qlie)
        a = smp.qform(alg.chart, alg.qlie, 1, 2)
        b = smp.tform(alg.chart, 2, 2)
        closed_form = dissection_change(tau, a, b, alg)
        chained = transform_data("tau", tau, transform_data("A", a, transform_data("B", b, alg)))
        assert closed_form == chained
        assert validate_stdca(closed_form).ok
    announce("criterion 5: psi-map intertwining on 100+ pairs per map; dissection change = composite")


def het_symmetries(alg):
    chart, q = alg.chart, alg.qlie
    eye_l = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    swap_l = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    shear_l = [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    out = [
        (FolAffine.identity(chart), QAutPair.identity(q)),
        (FolAffine(chart, swap_l, [0, 0, 0, 0]), QAutPair(q, [[0, 1], [1, 0]], [[0, 1], [1, 0]])),
        (FolAffine(chart, eye_l, [2, -1, 0, 3]), QAutPair.identity(q)),
        (FolAffine(chart, shear_l, [0, 1, 0, 0]), QAutPair.identity(q)),
    ]
    return out


def test_criterion_6_group_laws():
    """Composition, inversion, associativity on 100 valid automorphisms."""
    instances = fixture_instances()
    smp = Sampler(66)
    valid = []
    for _ in range(30):
        valid.append((instances["bn"], smp.aut_exact_family(instances["bn"])))
    for _ in range(30):
        valid.append((instances["dn"], smp.aut_exact_family(instances["dn"])))
    for _ in range(20):
        valid.append((instances["so3flat"], smp.aut_flat_nondegenerate(instances["so3flat"])))
    syms = het_symmetries(instances["het4"])
    for _ in range(20):
        valid.append((instances["het4"], smp.aut_heterotic_abelian(instances["het4"], syms)))
    assert len(valid) == 100

    for idx, (alg, f) in enumerate(valid):
        rep = check_aut(f, alg, trials=1, seed=idx)
        assert rep.ok, f"automorphism {idx}: {rep.summary()}"

    by_alg = {}
    for alg, f in valid:
        by_alg.setdefault(id(alg), (alg, []))[1].append(f)
    for alg, fs in by_alg.values():
        for i in range(0, len(fs) - 2, 3):
            f, g, h = fs[i], fs[i + 1], fs[i + 2]
            assert aut_compose(aut_compose(f, g), h) == aut_compose(f, aut_compose(g, h))
            assert aut_compose(f, aut_invert(f)).is_identity()
            assert aut_compose(aut_invert(f), f).is_identity()
            s = smp.gsec(alg.chart, alg.qlie, 2)
            assert aut_apply(aut_compose(f, g), s) == aut_apply(f, aut_apply(g, s))

    # rank-0 reduction: (phi, B) compose as (phi o psi, psi^*B + D)
    dn = instances["dn"]
    f, g = smp.aut_exact_family(dn), smp.aut_exact_family(dn)
    comp = aut_compose(f, g)
    assert comp.phi == f.phi.compose(g.phi)
    assert comp.bfield == g.phi.pullback(f.bfield) + g.bfield
    assert comp.afield.is_zero()

    # rank-1 reduction: a non-closed A-field is rejected with a witness
    bn = instances["bn"]
    bad_a = QForm(bn.chart, bn.qlie, 1, [TForm(bn.chart, 1, {(2,): Poly.var(3, 1)})])
    bad = Aut(FolAffine.identity(bn.chart), QAutPair.identity(bn.qlie), bad_a, TForm.zero(bn.chart, 2))
    rep = check_aut(bad, bn, trials=1, seed=0)
    assert not rep.check_named("aut_condition_curv").ok
    announce("criterion 6: group laws on 100 valid automorphisms; dn/bn reductions hold")


def test_criterion_7_infinitesimal_suite():
    """Fixture members satisfy all six conditions; bracket laws on 50 triples."""
    instances = fixture_instances()
    smp = Sampler(77)

    from courant.foliated import homotopy

    def twist_slot_solution(alg, xfield, afield):
        """Closed 2-form plus the exact primitive solving db = L_X H - <a ^ R>."""
        defect = lie_derivative(xfield, alg.twist) - pair_wedge(afield, alg.curv)
        out = smp.closed_tform(alg.chart, 2, 2)
        if not defect.is_zero():
            out = out + homotopy(defect)
        return out

    fixtures = []
    bn = instances["bn"]
    x_bn = smp.fvec_projectable(bn.chart, 2)
    a_bn = smp.closed_qform(bn.chart, bn.qlie, 1, 2)
    fixtures.append(
        (bn, InfAut(x_bn, [[Poly.zero(3)]], a_bn, twist_slot_solution(bn, x_bn, a_bn)))
    )
    dn = instances["dn"]
    x_dn = smp.fvec_projectable(dn.chart, 2)
    a_dn = QForm.zero(dn.chart, dn.qlie, 1)
    fixtures.append((dn, InfAut(x_dn, [], a_dn, twist_slot_solution(dn, x_dn, a_dn))))
    so3f = instances["so3flat"]
    theta_consts = so3f.qlie.ad_matrix_consts([Fraction(1), Fraction(0), Fraction(2)])
    fixtures.append(
        (
            so3f,
            InfAut(
                smp.fvec_projectable(so3f.chart, 2),
                [[Poly.const(3, e) for e in row] for row in theta_consts],
                QForm.zero(so3f.chart, so3f.qlie, 1),
                smp.closed_tform(so3f.chart, 2, 2),
            ),
        )
    )
    het = instances["het4"]
    from courant.qforms import lie_xtheta

    theta = [[Poly.const(4, 3), Poly.zero(4)], [Poly.zero(4), Poly.const(4, -3)]]
    target = lie_xtheta(FVec.zero(het.chart), theta, het.curv)
    a = QForm(
        het.chart, het.qlie, 1,
        [homotopy(c) if not c.is_zero() else TForm.zero(het.chart, 1) for c in target.comps],
    )
    b = -homotopy(pair_wedge(a, het.curv))
    fixtures.append((het, InfAut(FVec.zero(het.chart), theta, a, b)))

    for alg, d in fixtures:
        rep = check_infaut(d, alg, trials=3, seed=7)
        assert rep.ok, rep.summary()
        for cond in (
            "theta_leibniz",
            "theta_metric",
            "theta_bracket",
            "infaut_condition_nabla",
            "infaut_condition_curv",
            "infaut_condition_twist",
        ):
            assert rep.check_named(cond).ok

    def rand_inf(alg):
        return InfAut(
            smp.fvec_projectable(alg.chart, 2),
            smp.theta_metric_skew(alg.chart, alg.qlie, 1),
            smp.qform(alg.chart, alg.qlie, 1, 1),
            smp.tform(alg.chart, 2, 1),
        )

    triples = 0
    for alg in (instances["so3flat"], instances["het4"]):
        for _ in range(25):
            d1, d2, d3 = rand_inf(alg), rand_inf(alg), rand_inf(alg)
            assert infaut_bracket(d1, d1).is_zero()
            t1 = infaut_bracket(d1, infaut_bracket(d2, d3))
            t2 = infaut_bracket(d2, infaut_bracket(d3, d1))
            t3 = infaut_bracket(d3, infaut_bracket(d1, d2))
            assert (t1.xfield + t2.xfield + t3.xfield).is_zero()
            assert all(
                (x + y + z).is_zero()
                for r1, r2, r3 in zip(t1.theta, t2.theta, t3.theta)
                for x, y, z in zip(r1, r2, r3)
            )
            assert (t1.afield + t2.afield + t3.afield).is_zero()
            assert (t1.bfield + t2.bfield + t3.bfield).is_zero()
            s = smp.gsec(alg.chart, alg.qlie, 1)
            lhs = infaut_apply(infaut_bracket(d1, d2), s)
            rhs = infaut_apply(d1, infaut_apply(d2, s)) - infaut_apply(d2, infaut_apply(d1, s))
            assert lhs == rhs
            triples += 1
    assert triples == 50

    for alg in (instances["bn"], instances["het4"]):
        a = smp.qform(alg.chart, alg.qlie, 1, 2)
        b = smp.tform(alg.chart, 2, 2)
        lin = linearize(a, b, alg)
        assert lin.xfield.is_zero()
        assert all(e.is_zero() for row in lin.theta for e in row)
        assert lin.afield == a and lin.bfield == b
    announce("criterion 7: infinitesimal conditions, 50 bracket triples, exact linearization")


def test_criterion_8_killing_oracle():
    """Frozen fixtures, independently recomputed by the brute-force trace."""

    def oracle(brk):
        d = len(brk)
        ad = [
            [[Fraction(brk[i][s][r]) for s in range(d)] for r in range(d)]
            for i in range(d)
        ]
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                tr = Fraction(0)
                for r in range(d):
                    for l in range(d):
                        tr += ad[i][r][l] * ad[j][l][r]
                row.append(tr)
            out.append(tuple(row))
        return tuple(out)

    got = killing_form(so3().brk)
    frozen_so3 = tuple(
        tuple(Fraction(-2) if i == j else Fraction(0) for j in range(3)) for i in range(3)
    )
    assert got == frozen_so3 == oracle(so3().brk)

    got = killing_form(sl2().brk)
    assert got[0][0] == 8 and got[1][2] == 4 and got[2][1] == 4
    assert got[0][1] == got[1][0] == got[0][2] == got[2][0] == 0
    assert got[1][1] == got[2][2] == 0
    assert got == oracle(sl2().brk)
    announce("criterion 8: Killing fixtures so3 = -2I, sl2 kappa(h,h)=8, kappa(e,f)=4")


def test_criterion_9_manin_triple():
    """The nonabelian-2d double validates; a cocycle-violating pair fails Jacobi."""
    good = make_point_manin(nonabelian2_constants())
    assert good.dim == 4
    assert validate_qlie(good).ok

    cobrk = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    cobrk[0][1][2] = 1
    cobrk[1][0][2] = -1
    try:
        make_point_manin(heisenberg3_constants(), cobrk)
        raise AssertionError("cocycle-violating double was accepted")
    except ValidationError as err:
        jac = err.value if False else err.report.check_named("jacobi")
        assert not jac.ok
        assert jac.witness == {"basis": [1, 2, 4], "component": 2}
    announce("criterion 9: Manin double validates; cocycle violation fails Jacobi with witness")
