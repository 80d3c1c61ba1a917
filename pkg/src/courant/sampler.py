"""Seeded random data for identity trials.

One ``random.Random`` drives everything, so a (seed, trials, max_degree)
triple pins every report byte for byte.  Polynomial coefficients are drawn
from the integers -3..3 and degrees bounded by ``max_degree``.

Besides raw draws there are constructors for structured data: closed
forms (built from primitives plus constant forms), exact orthogonal
automorphisms of the fixture fiber algebras, and valid automorphisms of
the gallery families, manufactured with the tangential homotopy operator.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import _linalg
from .foliated import Chart, FVec, FolAffine, TForm, homotopy, tangential_d
from .qforms import QForm, bracket_wedge, d_nabla, pair_wedge
from .quadlie import QLie
from .ring import Poly


class Sampler:
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    # -- scalars and polynomials ----------------------------------------

    def coeff(self, nonzero: bool = False) -> int:
        c = self.rng.randint(-3, 3)
        while nonzero and c == 0:
            c = self.rng.randint(-3, 3)
        return c

    def exponents(self, nvars: int, max_degree: int) -> tuple[int, ...]:
        total = self.rng.randint(0, max_degree)
        exps = [0] * nvars
        for _ in range(total):
            if nvars == 0:
                break
            exps[self.rng.randrange(nvars)] += 1
        return tuple(exps)

    def poly(self, nvars: int, max_degree: int, max_terms: int = 3) -> Poly:
        out = Poly.zero(nvars)
        for _ in range(self.rng.randint(0, max_terms)):
            out = out + Poly(nvars, {self.exponents(nvars, max_degree): self.coeff()})
        return out

    # -- forms, fields, sections ----------------------------------------

    def tform(self, chart: Chart, degree: int, max_degree: int, max_terms: int = 2) -> TForm:
        pool = list(combinations(range(1, chart.k + 1), degree))
        out = TForm.zero(chart, degree)
        if not pool:
            return out
        for _ in range(self.rng.randint(0, max_terms)):
            idxs = pool[self.rng.randrange(len(pool))]
            out = out + TForm(chart, degree, {idxs: self.poly(chart.n, max_degree)})
        return out

    def closed_tform(self, chart: Chart, degree: int, max_degree: int) -> TForm:
        """d(random form) plus a constant-coefficient form; closed by construction."""
        out = tangential_d(self.tform(chart, degree - 1, max_degree)) if degree >= 1 else TForm.zero(chart, 0)
        pool = list(combinations(range(1, chart.k + 1), degree))
        for idxs in pool:
            c = self.coeff()
            if c:
                out = out + TForm(chart, degree, {idxs: Poly.const(chart.n, c)})
        return out

    def qform(self, chart: Chart, qlie: QLie, degree: int, max_degree: int) -> QForm:
        return QForm(
            chart, qlie, degree,
            [self.tform(chart, degree, max_degree) for _ in range(qlie.dim)],
        )

    def closed_qform(self, chart: Chart, qlie: QLie, degree: int, max_degree: int) -> QForm:
        return QForm(
            chart, qlie, degree,
            [self.closed_tform(chart, degree, max_degree) for _ in range(qlie.dim)],
        )

    def fvec(self, chart: Chart, max_degree: int) -> FVec:
        """Random section of the foliation."""
        return FVec.tangential(
            chart, [self.poly(chart.n, max_degree, 2) for _ in range(chart.k)]
        )

    def fvec_projectable(self, chart: Chart, max_degree: int) -> FVec:
        """Leaf components arbitrary, transverse components leafwise constant."""
        comps = [self.poly(chart.n, max_degree, 2) for _ in range(chart.k)]
        for _ in range(chart.k, chart.n):
            terms = {}
            for _ in range(self.rng.randint(0, 2)):
                exps = [0] * chart.n
                total = self.rng.randint(0, max_degree)
                for _ in range(total):
                    if chart.n > chart.k:
                        exps[self.rng.randrange(chart.k, chart.n)] += 1
                terms[tuple(exps)] = terms.get(tuple(exps), 0) + self.coeff()
            comps.append(Poly(chart.n, terms))
        return FVec(chart, comps)

    def gsec(self, chart: Chart, qlie: QLie, max_degree: int):
        from .standard import GSec

        return GSec(
            self.tform(chart, 1, max_degree),
            self.qform(chart, qlie, 0, max_degree),
            self.fvec(chart, max_degree),
        )

    # -- diffeomorphisms and fiber automorphisms ------------------------

    def fol_affine(self, chart: Chart) -> FolAffine:
        """Random foliation-preserving affine map, exactly invertible."""
        n, k = chart.n, chart.k
        lin = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        # row operations inside the allowed block pattern preserve invertibility
        for _ in range(2 * n):
            i, j = self.rng.randrange(n), self.rng.randrange(n)
            if i == j or (i >= k and j < k):
                continue
            c = Fraction(self.coeff())
            lin[i] = [x + c * y for x, y in zip(lin[i], lin[j])]
        for i in range(n):
            scale = Fraction(self.rng.choice([1, 1, 2, -1, Fraction(1, 2)]))
            lin[i] = [scale * x for x in lin[i]]
        trans = [Fraction(self.coeff()) for _ in range(n)]
        return FolAffine(chart, lin, trans)

    def rotation_so3(self):
        """Rational 3x3 rotation from an integer quaternion (Euler-Rodrigues)."""
        while True:
            a, b, c, d = (self.rng.randint(-2, 2) for _ in range(4))
            if (a, b, c, d) != (0, 0, 0, 0):
                break
        s = Fraction(1, a * a + b * b + c * c + d * d)
        return _linalg.mat(
            [
                [
                    s * (a * a + b * b - c * c - d * d),
                    s * 2 * (b * c - a * d),
                    s * 2 * (b * d + a * c),
                ],
                [
                    s * 2 * (b * c + a * d),
                    s * (a * a - b * b + c * c - d * d),
                    s * 2 * (c * d - a * b),
                ],
                [
                    s * 2 * (b * d - a * c),
                    s * 2 * (c * d + a * b),
                    s * (a * a - b * b - c * c + d * d),
                ],
            ]
        )

    def qaut(self, qlie: QLie):
        """A random exact orthogonal bracket automorphism of a fixture fiber."""
        from .transform import QAutPair

        from .quadlie import so3, sl2

        if qlie.dim == 0:
            return QAutPair(qlie, [], [])
        if qlie == so3():
            rot = self.rotation_so3()
            return QAutPair(qlie, rot, _linalg.mat_inv(rot))
        if qlie == sl2():
            mat = _nilpotent_exp(qlie, 1, Fraction(self.coeff()))
            mat = _linalg.mat_mul(mat, _nilpotent_exp(qlie, 2, Fraction(self.coeff())))
            return QAutPair(qlie, mat, _linalg.mat_inv(mat))
        if all(
            qlie.brk[i][j][m] == 0
            for i in range(qlie.dim)
            for j in range(qlie.dim)
            for m in range(qlie.dim)
        ):
            mat = _random_gram_isometry(self, qlie)
            return QAutPair(qlie, mat, _linalg.mat_inv(mat))
        return QAutPair.identity(qlie)

    def theta_metric_skew(self, chart: Chart, qlie: QLie, max_degree: int):
        """Random Poly matrix with theta^T G + G theta = 0 (theta = G^{-1} K, K skew)."""
        d = qlie.dim
        skew = [[Poly.zero(chart.n) for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                p = self.poly(chart.n, max_degree, 2)
                skew[i][j] = p
                skew[j][i] = -p
        ginv = qlie.gram_inv
        return [
            [
                sum(
                    (skew[l][s] * ginv[r][l] for l in range(d)),
                    Poly.zero(chart.n),
                )
                for s in range(d)
            ]
            for r in range(d)
        ]

    # -- valid automorphisms of the gallery families ---------------------

    def aut_exact_family(self, alg):
        """Valid automorphism of a rank-0 or rank-1-abelian instance.

        Leaf-preserving phi is free; the A-field must be closed (and is
        absent at rank 0); the B-field solves H - phi^* H = dB through the
        homotopy operator, plus any closed 2-form.
        """
        from .transform import Aut

        chart, qlie = alg.chart, alg.qlie
        phi = self.fol_affine(chart)
        tau = self.qaut(qlie)
        afield = self.closed_qform(chart, qlie, 1, 2)
        defect = alg.twist - phi.pullback(alg.twist)
        bfield = self.closed_tform(chart, 2, 2)
        if not defect.is_zero():
            bfield = bfield + homotopy(defect)
        return Aut(phi, tau, afield, bfield)

    def aut_heterotic_abelian(self, alg, curv_symmetries):
        """Valid automorphism of an abelian instance with nonzero curvature form.

        ``curv_symmetries`` lists (phi, tau) pairs already known to satisfy
        phi^*(tau^{-1} R) = R; the B-field is then solved for exactly.
        """
        from .transform import Aut

        chart, qlie = alg.chart, alg.qlie
        phi, tau = curv_symmetries[self.rng.randrange(len(curv_symmetries))]
        afield = self.closed_qform(chart, qlie, 1, 2)
        defect = (
            alg.twist
            - phi.pullback(alg.twist)
            - pair_wedge(afield, alg.curv)
            + pair_wedge(d_nabla(alg.conn, afield), afield).scaled(Fraction(1, 2))
            - pair_wedge(afield, bracket_wedge(afield, afield)).scaled(Fraction(1, 6))
        )
        bfield = self.closed_tform(chart, 2, 2)
        if not defect.is_zero():
            bfield = bfield + homotopy(defect)
        return Aut(phi, tau, afield, bfield)

    def aut_flat_nondegenerate(self, alg):
        """Valid automorphism of a flat instance with trivial connection,
        zero curvature form and zero twist: any (phi, tau), closed B, A = 0."""
        from .transform import Aut

        chart, qlie = alg.chart, alg.qlie
        return Aut(
            self.fol_affine(chart),
            self.qaut(qlie),
            QForm.zero(chart, qlie, 1),
            self.closed_tform(chart, 2, 2),
        )


def _nilpotent_exp(qlie: QLie, basis_index: int, t: Fraction):
    """exp(t ad_e) for a basis element with nilpotent adjoint; exact finite sum."""
    d = qlie.dim
    vals = [Fraction(0)] * d
    vals[basis_index] = t
    ad = qlie.ad_matrix_consts(vals)
    out = _linalg.identity(d)
    power = _linalg.identity(d)
    factor = Fraction(1)
    for j in range(1, d + 2):
        power = _linalg.mat_mul(power, ad)
        if all(x == 0 for row in power for x in row):
            break
        factor /= j
        out = tuple(
            tuple(out[r][s] + factor * power[r][s] for s in range(d)) for r in range(d)
        )
    return out


def _random_gram_isometry(smp: Sampler, qlie: QLie):
    """Exact isometry of the Gram form of an abelian fiber.

    Handles the identity, sign flips on orthogonal diagonal blocks, and the
    split-plane scalings of a hyperbolic pairing.
    """
    d = qlie.dim
    g = qlie.gram
    mat = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    # diagonal gram: signed permutation fixing the diagonal multiset
    if all(g[i][j] == 0 for i in range(d) for j in range(d) if i != j):
        perm = list(range(d))
        smp.rng.shuffle(perm)
        if any(g[perm[i]][perm[i]] != g[i][i] for i in range(d)):
            perm = list(range(d))
        mat = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            mat[perm[i]][i] = Fraction(smp.rng.choice([1, -1]))
        return _linalg.mat(mat)
    # hyperbolic planes: scale each split pair
    if d % 2 == 0 and all(
        g[i][j] == (1 if {i, j} == {2 * (i // 2), 2 * (i // 2) + 1} and i != j else 0)
        for i in range(d)
        for j in range(d)
    ):
        for pair in range(d // 2):
            lam = Fraction(smp.rng.choice([1, 2, 3, -1, -2])) / smp.rng.choice([1, 2])
            mat[2 * pair][2 * pair] = lam
            mat[2 * pair + 1][2 * pair + 1] = 1 / lam
        return _linalg.mat(mat)
    return _linalg.identity(d)
