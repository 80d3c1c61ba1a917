import json

from courant import serialize as ser
from courant.cli import main
from courant.foliated import TForm
from courant.gallery import heterotic_abelian_4d, make_bn
from courant.sampler import Sampler


def run(argv):
    return main([str(a) for a in argv])


def read(path):
    with open(path) as fh:
        return json.load(fh)


def test_gallery_then_validate(tmp_path):
    inst = tmp_path / "bn.json"
    assert run(["gallery", "bn", "--n", 3, "--out", inst]) == 0
    rep = tmp_path / "rep.json"
    assert run(["validate", inst, "--trials", 5, "--seed", 1, "--out", rep]) == 0
    data = read(rep)
    assert data["ok"] is True
    assert any(c["name"] == "pontryagin" for c in data["checks"])


def test_validate_exit_codes(tmp_path):
    inst = tmp_path / "het.json"
    assert run(["gallery", "heterotic_like", "--preset", "abelian4d", "--out", inst]) == 0
    assert run(["validate", inst, "--trials", 3]) == 0

    broken = ser.stdca_to_json(heterotic_abelian_4d())
    broken["H"] = []
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(broken))
    rep = tmp_path / "rep.json"
    assert run(["validate", bad, "--trials", 5, "--out", rep]) == 1
    fails = {c["name"] for c in read(rep)["checks"] if c["status"] == "fail"}
    assert "pontryagin" in fails and "axiom:loday" in fails

    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert run(["validate", garbage]) == 2

    missing_key = tmp_path / "missing.json"
    missing_key.write_text(json.dumps({"chart": {"n": 2, "k": 2}}))
    assert run(["validate", missing_key]) == 2


def test_reports_byte_identical(tmp_path, capsys):
    inst = tmp_path / "bn.json"
    run(["gallery", "bn", "--n", 3, "--out", inst])
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(["validate", inst, "--trials", 6, "--seed", 9, "--out", r1])
    run(["validate", inst, "--trials", 6, "--seed", 9, "--out", r2])
    assert r1.read_bytes() == r2.read_bytes()


def test_transform_round_trip(tmp_path):
    inst = tmp_path / "dn.json"
    chart_twist = {
        "idx_form": None  # unused; twist passed via file below
    }
    twist = tmp_path / "twist.json"
    from courant.foliated import Chart
    from courant.ring import Poly

    chart = Chart(3, 3)
    twist.write_text(json.dumps(ser.tform_to_json(TForm.dx(chart, 1, 2, 3).scaled(2))))
    assert run(["gallery", "dn", "--n", 3, "--twist", twist, "--out", inst]) == 0

    smp = Sampler(3)
    delta = {"tau": None, "A": None, "B": ser.tform_to_json(smp.tform(chart, 2, 2))}
    dfile = tmp_path / "delta.json"
    dfile.write_text(json.dumps(delta))
    moved = tmp_path / "moved.json"
    rep = tmp_path / "rep.json"
    code = run(
        [
            "transform", inst, "--delta", dfile, "--out-instance", moved,
            "--trials", 4, "--seed", 2, "--out", rep,
        ]
    )
    assert code == 0
    assert read(rep)["ok"] is True
    # revalidate the emitted instance through the CLI again
    assert run(["validate", moved, "--trials", 4]) == 0


def test_transform_strict_aut_mode(tmp_path):
    inst = tmp_path / "bn.json"
    run(["gallery", "bn", "--n", 3, "--out", inst])
    from courant.foliated import Chart, tangential_d, TForm as TF
    from courant.qforms import QForm
    from courant.ring import Poly

    chart = Chart(3, 3)
    alg = make_bn(3)
    closed_a = QForm(
        chart, alg.qlie, 1, [tangential_d(TF.function(chart, Poly.var(3, 1) ** 2))]
    )
    open_a = QForm(chart, alg.qlie, 1, [TF(chart, 1, {(2,): Poly.var(3, 1)})])
    for afield, expected in ((closed_a, 0), (open_a, 1)):
        delta = tmp_path / "delta.json"
        delta.write_text(json.dumps({"A": ser.qform_to_json(afield)}))
        code = run(
            ["transform", inst, "--delta", delta, "--strict-aut", "--trials", 2]
        )
        assert code == expected


def test_cli_rejects_bad_config(tmp_path):
    inst = tmp_path / "bn.json"
    run(["gallery", "bn", "--n", 3, "--out", inst])
    assert run(["validate", inst, "--trials", 0]) == 2


def test_group_commands(tmp_path):
    inst = tmp_path / "bn.json"
    run(["gallery", "bn", "--n", 3, "--out", inst])
    alg = make_bn(3)
    smp = Sampler(5)
    f = smp.aut_exact_family(alg)
    g = smp.aut_exact_family(alg)
    fa, ga = tmp_path / "f.json", tmp_path / "g.json"
    fa.write_text(json.dumps(ser.aut_to_json(f)))
    ga.write_text(json.dumps(ser.aut_to_json(g)))

    assert run(["group", "check", "--instance", inst, "--aut", fa, "--trials", 2]) == 0

    comp = tmp_path / "comp.json"
    assert run(
        ["group", "compose", "--instance", inst, "--aut", fa, "--aut2", ga, "--out-aut", comp]
    ) == 0
    from courant.transform import aut_compose

    stored = ser.aut_from_json(alg.chart, alg.qlie, read(comp))
    assert stored == aut_compose(f, g)

    inv = tmp_path / "inv.json"
    assert run(["group", "invert", "--instance", inst, "--aut", fa, "--out-aut", inv]) == 0
    from courant.transform import aut_invert

    assert ser.aut_from_json(alg.chart, alg.qlie, read(inv)) == aut_invert(f)

    # malformed automorphism file
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"phi": {"L": [], "c": []}}))
    assert run(["group", "check", "--instance", inst, "--aut", bad]) == 2


def test_inf_commands(tmp_path):
    inst = tmp_path / "bn.json"
    run(["gallery", "bn", "--n", 3, "--out", inst])
    alg = make_bn(3)
    smp = Sampler(7)
    from courant.foliated import FVec
    from courant.qforms import QForm
    from courant.ring import Poly
    from courant.transform import InfAut

    d1 = InfAut(
        FVec.zero(alg.chart),
        [[Poly.zero(3)]],
        smp.closed_qform(alg.chart, alg.qlie, 1, 2),
        smp.closed_tform(alg.chart, 2, 2),
    )
    d2 = InfAut(
        FVec.zero(alg.chart),
        [[Poly.zero(3)]],
        smp.closed_qform(alg.chart, alg.qlie, 1, 2),
        smp.closed_tform(alg.chart, 2, 2),
    )
    f1, f2 = tmp_path / "d1.json", tmp_path / "d2.json"
    f1.write_text(json.dumps(ser.infaut_to_json(d1)))
    f2.write_text(json.dumps(ser.infaut_to_json(d2)))

    assert run(["inf", "check", "--instance", inst, "--inf", f1, "--trials", 2]) == 0

    out = tmp_path / "bracket.json"
    assert run(
        ["inf", "bracket", "--instance", inst, "--inf", f1, "--inf2", f2, "--out-inf", out]
    ) == 0
    from courant.qforms import pair_wedge
    from courant.transform import infaut_bracket

    stored = ser.infaut_from_json(alg.chart, alg.qlie, read(out))
    assert stored == infaut_bracket(d1, d2)
    assert stored.bfield == pair_wedge(d1.afield, d2.afield)

    gauge = tmp_path / "gauge.json"
    a = smp.qform(alg.chart, alg.qlie, 1, 2)
    b = smp.tform(alg.chart, 2, 2)
    gauge.write_text(json.dumps(ser.gauge_to_json(a, b)))
    lin = tmp_path / "lin.json"
    assert run(
        ["inf", "linearize", "--instance", inst, "--gauge", gauge, "--out-inf", lin]
    ) == 0
    stored = ser.infaut_from_json(alg.chart, alg.qlie, read(lin))
    assert stored.afield == a and stored.bfield == b


def test_gallery_point_manin(tmp_path):
    out = tmp_path / "double.json"
    assert run(["gallery", "point_manin", "--preset", "nonabelian2d", "--out", out]) == 0
    q = ser.qlie_from_json(read(out))
    assert q.dim == 4

    bad = tmp_path / "bad_bialg.json"
    from courant.gallery import heisenberg3_constants

    cobrk = [[["0/1"] * 3 for _ in range(3)] for _ in range(3)]
    cobrk[0][1][2] = "1/1"
    cobrk[1][0][2] = "-1/1"
    brk = [[[str(x) for x in row] for row in plane] for plane in heisenberg3_constants()]
    bad.write_text(json.dumps({"c": brk, "cobracket": cobrk}))
    assert run(["gallery", "point_manin", "--bialgebra", bad, "--out", out]) == 1


def test_gallery_rejects_nonclosed_twist(tmp_path):
    from courant.foliated import Chart
    from courant.ring import Poly

    chart = Chart(4, 4)
    bad = TForm(chart, 3, {(2, 3, 4): Poly.var(4, 1)})
    twist = tmp_path / "twist.json"
    twist.write_text(json.dumps(ser.tform_to_json(bad)))
    assert run(["gallery", "dn", "--n", 4, "--twist", twist, "--out", tmp_path / "x.json"]) == 1
