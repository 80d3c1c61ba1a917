"""Canonical JSON encoding for every value the CLI reads or writes.

Rationals are strings "p/q" in lowest terms with q > 0.  Polynomials are
arrays of {"e": [exponents], "c": "p/q"} in lexicographic exponent order.
Tangential forms are arrays of {"idx": [indices], "coeff": poly}; their
degree comes from context (H is a 3-form, B a 2-form, and so on).  Every
decoder revalidates through the ordinary constructors.
"""

from __future__ import annotations

from fractions import Fraction

from .foliated import Chart, FVec, FolAffine, TForm
from .qforms import QForm
from .quadlie import Conn, QLie
from .ring import Poly


def rat_to_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


def poly_to_json(p: Poly) -> list:
    return [{"e": list(e), "c": rat_to_str(c)} for e, c in p.items()]


def poly_from_json(nvars: int, data: list) -> Poly:
    terms = {}
    for item in data:
        exps = tuple(int(x) for x in item["e"])
        if exps in terms:
            raise ValueError("duplicate exponent vector")
        terms[exps] = rat_from_str(item["c"])
    return Poly(nvars, terms)


def chart_to_json(chart: Chart) -> dict:
    return {"n": chart.n, "k": chart.k}


def chart_from_json(data: dict) -> Chart:
    return Chart(int(data["n"]), int(data["k"]))


def tform_to_json(w: TForm) -> list:
    return [
        {"idx": list(idxs), "coeff": poly_to_json(w.terms[idxs])}
        for idxs in sorted(w.terms)
    ]


def tform_from_json(chart: Chart, degree: int, data: list) -> TForm:
    terms = {}
    for item in data:
        idxs = tuple(int(i) for i in item["idx"])
        if idxs in terms:
            raise ValueError("duplicate index tuple")
        terms[idxs] = poly_from_json(chart.n, item["coeff"])
    return TForm(chart, degree, terms)


def fvec_to_json(x: FVec) -> list:
    return [poly_to_json(c) for c in x.comps]


def fvec_from_json(chart: Chart, data: list) -> FVec:
    return FVec(chart, [poly_from_json(chart.n, c) for c in data])


def folaffine_to_json(phi: FolAffine) -> dict:
    return {
        "L": [[rat_to_str(x) for x in row] for row in phi.lin],
        "c": [rat_to_str(x) for x in phi.trans],
    }


def folaffine_from_json(chart: Chart, data: dict) -> FolAffine:
    lin = [[rat_from_str(x) for x in row] for row in data["L"]]
    trans = [rat_from_str(x) for x in data["c"]]
    return FolAffine(chart, lin, trans)


def qlie_to_json(q: QLie) -> dict:
    return {
        "dim": q.dim,
        "c": [[[rat_to_str(x) for x in row] for row in plane] for plane in q.brk],
        "gram": [[rat_to_str(x) for x in row] for row in q.gram],
    }


def qlie_from_json(data: dict) -> QLie:
    return QLie(
        int(data["dim"]),
        [[[rat_from_str(x) for x in row] for row in plane] for plane in data["c"]],
        [[rat_from_str(x) for x in row] for row in data["gram"]],
    )


def poly_matrix_to_json(mat) -> list:
    return [[poly_to_json(e) for e in row] for row in mat]


def poly_matrix_from_json(nvars: int, data: list) -> list:
    return [[poly_from_json(nvars, e) for e in row] for row in data]


def conn_to_json(conn: Conn) -> dict:
    return {"omega": [poly_matrix_to_json(m) for m in conn.omega]}


def conn_from_json(chart: Chart, qlie: QLie, data: dict) -> Conn:
    return Conn(chart, qlie, [poly_matrix_from_json(chart.n, m) for m in data["omega"]])


def qform_to_json(w: QForm) -> dict:
    return {"components": [tform_to_json(c) for c in w.comps]}


def qform_from_json(chart: Chart, qlie: QLie, degree: int, data: dict) -> QForm:
    comps = [tform_from_json(chart, degree, c) for c in data["components"]]
    return QForm(chart, qlie, degree, comps)


def stdca_to_json(alg) -> dict:
    return {
        "chart": chart_to_json(alg.chart),
        "qlie": qlie_to_json(alg.qlie),
        "conn": conn_to_json(alg.conn),
        "R": qform_to_json(alg.curv),
        "H": tform_to_json(alg.twist),
    }


def stdca_from_json(data: dict):
    from .standard import StdCA

    chart = chart_from_json(data["chart"])
    qlie = qlie_from_json(data["qlie"])
    conn = conn_from_json(chart, qlie, data["conn"])
    curv = qform_from_json(chart, qlie, 2, data["R"])
    twist = tform_from_json(chart, 3, data["H"])
    return StdCA(chart, qlie, conn, curv, twist)


def gsec_to_json(s) -> dict:
    return {
        "form": tform_to_json(s.form),
        "qval": qform_to_json(s.qval),
        "vec": fvec_to_json(s.vec),
    }


def gsec_from_json(chart: Chart, qlie: QLie, data: dict):
    from .standard import GSec

    return GSec(
        tform_from_json(chart, 1, data["form"]),
        qform_from_json(chart, qlie, 0, data["qval"]),
        fvec_from_json(chart, data["vec"]),
    )


def aut_to_json(phi) -> dict:
    return {
        "phi": folaffine_to_json(phi.phi),
        "tau": {
            "T": [[rat_to_str(x) for x in row] for row in phi.tau.mat],
            "Tinv": [[rat_to_str(x) for x in row] for row in phi.tau.inv],
        },
        "A": qform_to_json(phi.afield),
        "B": tform_to_json(phi.bfield),
    }


def aut_from_json(chart: Chart, qlie: QLie, data: dict):
    from .transform import Aut, QAutPair

    tau = QAutPair(
        qlie,
        [[rat_from_str(x) for x in row] for row in data["tau"]["T"]],
        [[rat_from_str(x) for x in row] for row in data["tau"]["Tinv"]],
    )
    return Aut(
        folaffine_from_json(chart, data["phi"]),
        tau,
        qform_from_json(chart, qlie, 1, data["A"]),
        tform_from_json(chart, 2, data["B"]),
    )


def infaut_to_json(d) -> dict:
    return {
        "X": fvec_to_json(d.xfield),
        "theta": poly_matrix_to_json(d.theta),
        "a": qform_to_json(d.afield),
        "b": tform_to_json(d.bfield),
    }


def infaut_from_json(chart: Chart, qlie: QLie, data: dict):
    from .transform import InfAut

    return InfAut(
        fvec_from_json(chart, data["X"]),
        poly_matrix_from_json(chart.n, data["theta"]),
        qform_from_json(chart, qlie, 1, data["a"]),
        tform_from_json(chart, 2, data["b"]),
    )


def gauge_to_json(afield: QForm, bfield: TForm) -> dict:
    return {"A": qform_to_json(afield), "B": tform_to_json(bfield)}


def gauge_from_json(chart: Chart, qlie: QLie, data: dict):
    return (
        qform_from_json(chart, qlie, 1, data["A"]),
        tform_from_json(chart, 2, data["B"]),
    )
