"""Quadratic Lie algebras by structure constants, and leafwise connections.

The fiber data is a finite-dimensional Lie algebra with an invariant
nondegenerate symmetric pairing, given entirely by rational structure
constants and a constant Gram matrix; the bundle is the trivialized product
of the chart with that fiber.  A connection is one coefficient matrix per
leaf direction acting on the trivialization, with polynomial entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import _linalg
from .foliated import Chart, FVec
from .report import Report
from .ring import Poly


class QLie:
    """dim, structure constants c[i][j][k] with [e_i,e_j] = sum_k c[i][j][k] e_k,
    and the Gram matrix of the invariant pairing."""

    __slots__ = ("dim", "brk", "gram", "_gram_inv")

    def __init__(self, dim: int, brk, gram):
        self.dim = dim
        self.brk = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in brk
        )
        self.gram = _linalg.mat(gram)
        if len(self.brk) != dim or any(
            len(plane) != dim or any(len(row) != dim for row in plane)
            for plane in self.brk
        ):
            raise ValueError("structure constants must be dim x dim x dim")
        if len(self.gram) != dim or any(len(r) != dim for r in self.gram):
            raise ValueError("gram matrix must be dim x dim")
        self._gram_inv = None

    @classmethod
    def abelian(cls, dim: int, gram=None) -> "QLie":
        zeros = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        if gram is None:
            gram = _linalg.identity(dim)
        return cls(dim, zeros, gram)

    @classmethod
    def trivial(cls) -> "QLie":
        """Rank-zero fiber, the exact-algebroid case."""
        return cls(0, [], [])

    @property
    def gram_inv(self):
        if self._gram_inv is None:
            self._gram_inv = _linalg.mat_inv(self.gram)
        return self._gram_inv

    # -- fiberwise operations (entries may be Poly or Fraction) ----------

    def bracket_vals(self, u: Sequence, v: Sequence, zero) -> list:
        out = []
        for m in range(self.dim):
            acc = zero
            for i in range(self.dim):
                for j in range(self.dim):
                    c = self.brk[i][j][m]
                    if c != 0:
                        acc = acc + u[i] * v[j] * c
            out.append(acc)
        return out

    def pair_vals(self, u: Sequence, v: Sequence, zero):
        acc = zero
        for i in range(self.dim):
            for j in range(self.dim):
                g = self.gram[i][j]
                if g != 0:
                    acc = acc + u[i] * v[j] * g
        return acc

    def ad_matrix_consts(self, vals: Sequence[Fraction]):
        """ad of a constant fiber element, as a dim x dim Fraction matrix."""
        return tuple(
            tuple(
                sum((vals[i] * self.brk[i][s][r] for i in range(self.dim)), Fraction(0))
                for s in range(self.dim)
            )
            for r in range(self.dim)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, QLie):
            return NotImplemented
        return self.dim == other.dim and self.brk == other.brk and self.gram == other.gram

    def __hash__(self):
        return hash((self.dim, self.brk, self.gram))

    def __repr__(self):
        return f"QLie(dim={self.dim})"


def so3() -> QLie:
    """[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2, with the Killing pairing -2I."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2], c[1][0][2] = 1, -1
    c[1][2][0], c[2][1][0] = 1, -1
    c[2][0][1], c[0][2][1] = 1, -1
    gram = [[-2, 0, 0], [0, -2, 0], [0, 0, -2]]
    return QLie(3, c, gram)


def sl2() -> QLie:
    """Basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h, with the Killing pairing."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][1], c[1][0][1] = 2, -2
    c[0][2][2], c[2][0][2] = -2, 2
    c[1][2][0], c[2][1][0] = 1, -1
    gram = [[8, 0, 0], [0, 0, 4], [0, 4, 0]]
    return QLie(3, c, gram)


def hyperbolic_abelian(rank_pairs: int = 1) -> QLie:
    """Abelian algebra of even dimension with the split hyperbolic pairing."""
    d = 2 * rank_pairs
    gram = [[0] * d for _ in range(d)]
    for i in range(rank_pairs):
        gram[2 * i][2 * i + 1] = 1
        gram[2 * i + 1][2 * i] = 1
    return QLie.abelian(d, gram)


def killing_form(brk) -> tuple[tuple[Fraction, ...], ...]:
    """kappa(e_i, e_j) = trace(ad_i ad_j), straight from structure constants."""
    dim = len(brk)
    brk = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in brk)
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            total = Fraction(0)
            for m in range(dim):
                for l in range(dim):
                    total += brk[i][m][l] * brk[j][l][m]
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


def validate_qlie(q: QLie) -> Report:
    """Check all quadratic Lie algebra axioms, reporting a witness triple on failure."""
    rep = Report(meta={"what": "qlie", "dim": q.dim})
    d = q.dim

    witness = None
    for i in range(d):
        for j in range(d):
            for m in range(d):
                if q.brk[i][j][m] != -q.brk[j][i][m]:
                    witness = {"basis": [i + 1, j + 1], "component": m + 1}
                    break
            if witness:
                break
        if witness:
            break
    rep.add("antisymmetry", witness is None, witness)

    witness = None
    for i in range(d):
        for j in range(d):
            for l in range(d):
                for p in range(d):
                    total = Fraction(0)
                    for m in range(d):
                        total += (
                            q.brk[i][j][m] * q.brk[m][l][p]
                            + q.brk[j][l][m] * q.brk[m][i][p]
                            + q.brk[l][i][m] * q.brk[m][j][p]
                        )
                    if total != 0:
                        witness = {"basis": [i + 1, j + 1, l + 1], "component": p + 1}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    rep.add("jacobi", witness is None, witness)

    witness = None
    for i in range(d):
        for j in range(d):
            if q.gram[i][j] != q.gram[j][i]:
                witness = {"basis": [i + 1, j + 1]}
                break
        if witness:
            break
    rep.add("gram_symmetric", witness is None, witness)

    det = _linalg.determinant(q.gram)
    rep.add("gram_nondegenerate", det != 0, None if det != 0 else {"determinant": "0"})

    witness = None
    for i in range(d):
        for j in range(d):
            for l in range(d):
                # <[e_i,e_j], e_l> + <e_j, [e_i,e_l]>
                total = Fraction(0)
                for m in range(d):
                    total += q.brk[i][j][m] * q.gram[m][l] + q.brk[i][l][m] * q.gram[j][m]
                if total != 0:
                    witness = {"basis": [i + 1, j + 1, l + 1]}
                    break
            if witness:
                break
        if witness:
            break
    rep.add("invariance", witness is None, witness)
    return rep


class Conn:
    """Leafwise connection on the trivialized bundle: nabla = d + omega.

    ``omega[i]`` is the dim x dim Poly matrix for the i-th leaf direction,
    acting on component vectors of sections.
    """

    __slots__ = ("chart", "qlie", "omega")

    def __init__(self, chart: Chart, qlie: QLie, omega):
        self.chart = chart
        self.qlie = qlie
        mats = []
        if len(omega) != chart.k:
            raise ValueError("need one coefficient matrix per leaf direction")
        for m in omega:
            rows = []
            if len(m) != qlie.dim:
                raise ValueError("coefficient matrix must be dim x dim")
            for row in m:
                if len(row) != qlie.dim:
                    raise ValueError("coefficient matrix must be dim x dim")
                rows.append(
                    tuple(
                        e if isinstance(e, Poly) else Poly.const(chart.n, e) for e in row
                    )
                )
            mats.append(tuple(rows))
        self.omega = tuple(mats)

    @classmethod
    def trivial(cls, chart: Chart, qlie: QLie) -> "Conn":
        zero = Poly.zero(chart.n)
        mat = [[zero] * qlie.dim for _ in range(qlie.dim)]
        return cls(chart, qlie, [mat for _ in range(chart.k)])

    def nabla_dir(self, i: int, vals: Sequence[Poly]) -> list[Poly]:
        """nabla along the i-th (1-based) leaf coordinate field."""
        if not 1 <= i <= self.chart.k:
            raise ValueError("index out of range")
        out = []
        mat = self.omega[i - 1]
        for r in range(self.qlie.dim):
            acc = vals[r].partial(i)
            for s in range(self.qlie.dim):
                if not mat[r][s].is_zero():
                    acc = acc + mat[r][s] * vals[s]
            out.append(acc)
        return out

    def nabla_apply(self, x: FVec, vals: Sequence[Poly]) -> list[Poly]:
        """nabla_X on a component vector of polynomials; X must be tangential."""
        x.require_tangential()
        if x.chart != self.chart:
            raise ValueError("chart mismatch")
        out = [Poly.zero(self.chart.n) for _ in range(self.qlie.dim)]
        for i in range(1, self.chart.k + 1):
            xi = x.comps[i - 1]
            if xi.is_zero():
                continue
            col = self.nabla_dir(i, vals)
            out = [acc + xi * c for acc, c in zip(out, col)]
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Conn):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.qlie == other.qlie
            and self.omega == other.omega
        )

    def __repr__(self):
        return f"Conn(k={self.chart.k}, dim={self.qlie.dim})"


def nabla_apply(conn: Conn, x: FVec, vals: Sequence[Poly]) -> list[Poly]:
    return conn.nabla_apply(x, vals)


def validate_conn(conn: Conn) -> Report:
    """Metric and bracket compatibility of the connection coefficients.

    Checking on coordinate fields and the constant frame suffices: both
    relations are tensorial in the direction and first-order in sections.
    """
    rep = Report(meta={"what": "conn", "k": conn.chart.k, "dim": conn.qlie.dim})
    q = conn.qlie
    d = q.dim
    zero = Poly.zero(conn.chart.n)

    witness = None
    for i in range(1, conn.chart.k + 1):
        mat = conn.omega[i - 1]
        for a in range(d):
            for b in range(d):
                # <omega_i e_a, e_b> + <e_a, omega_i e_b>
                acc = zero
                for r in range(d):
                    acc = acc + mat[r][a] * q.gram[r][b] + mat[r][b] * q.gram[a][r]
                if not acc.is_zero():
                    witness = {"direction": i, "basis": [a + 1, b + 1]}
                    break
            if witness:
                break
        if witness:
            break
    rep.add("nabla_metric", witness is None, witness)

    witness = None
    for i in range(1, conn.chart.k + 1):
        mat = conn.omega[i - 1]
        for a in range(d):
            for b in range(d):
                for m in range(d):
                    acc = zero
                    for l in range(d):
                        acc = (
                            acc
                            + mat[m][l] * q.brk[a][b][l]
                            - mat[l][a] * q.brk[l][b][m]
                            - mat[l][b] * q.brk[a][l][m]
                        )
                    if not acc.is_zero():
                        witness = {
                            "direction": i,
                            "basis": [a + 1, b + 1],
                            "component": m + 1,
                        }
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    rep.add("nabla_bracket", witness is None, witness)
    return rep
