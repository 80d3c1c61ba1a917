"""Exact multivariate polynomials over the rationals.

These are the chart functions everything else is built from.  Coefficients
are kept in lowest terms, zero coefficients are dropped, and the term order
used for display and serialization is lexicographic on exponent vectors, so
equal polynomials have identical canonical forms.  Values are immutable and
all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import _core

Rat = Fraction


def _coerce_pair(value) -> tuple[int, int]:
    if isinstance(value, Fraction):
        return value.numerator, value.denominator
    if isinstance(value, int):
        return value, 1
    if isinstance(value, tuple) and len(value) == 2:
        f = Fraction(value[0], value[1])
        return f.numerator, f.denominator
    raise TypeError(f"cannot use {value!r} as a rational coefficient")


class Poly:
    """Polynomial in ``nvars`` chart coordinates x1..xn."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[tuple[int, ...], tuple[int, int]] = {}
        if terms:
            for exps, value in terms.items():
                e = tuple(exps)
                if len(e) != nvars:
                    raise ValueError("exponent vector length does not match nvars")
                if any(p < 0 for p in e):
                    raise ValueError("negative exponent")
                num, den = _coerce_pair(value)
                if num != 0:
                    clean[e] = (num, den)
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The coordinate function x_i, 1-based."""
        if not 1 <= i <= nvars:
            raise ValueError("index out of range")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        pair = self.terms.get((0,) * self.nvars)
        return Fraction(*pair) if pair else Fraction(0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        pair = self.terms.get(tuple(exps))
        return Fraction(*pair) if pair else Fraction(0)

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Terms in canonical (lexicographic) order."""
        for e in sorted(self.terms):
            yield e, Fraction(*self.terms[e])

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        self._check(other)
        return Poly._raw(self.nvars, _core.add_terms(self.terms, other.terms))

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        self._check(other)
        return Poly._raw(self.nvars, _core.sub_terms(self.terms, other.terms))

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, _core.neg_terms(self.terms))

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            num, den = _coerce_pair(Fraction(other))
            return Poly._raw(self.nvars, _core.scale_terms(self.terms, num, den))
        self._check(other)
        return Poly._raw(self.nvars, _core.mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __radd__(self, other) -> "Poly":
        return self.__add__(other)

    def __rsub__(self, other) -> "Poly":
        return (-self).__add__(other)

    def __pow__(self, power: int) -> "Poly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("exponent must be a nonnegative int")
        out = Poly.const(self.nvars, 1)
        for _ in range(power):
            out = out * self
        return out

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def partial(self, i: int) -> "Poly":
        """Exact partial derivative in x_i, 1-based."""
        if not 1 <= i <= self.nvars:
            raise ValueError("index out of range")
        return Poly._raw(self.nvars, _core.partial_terms(self.terms, i - 1))

    def subst(self, images: Sequence["Poly"], out_nvars: int) -> "Poly":
        """Substitute x_i by images[i-1]; images live over ``out_nvars``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        for im in images:
            if im.nvars != out_nvars:
                raise ValueError("variable-count mismatch")
        return Poly._raw(
            out_nvars,
            _core.subst_terms(self.terms, [im.terms for im in images], out_nvars),
        )

    # -- comparisons / display ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if p == 1 else f"x{i + 1}^{p}"
                for i, p in enumerate(e)
                if p > 0
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    """Spec surface for ring arithmetic: op in {add, sub, mul}."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def partial(p: Poly, i: int) -> Poly:
    return p.partial(i)


def poly_from_coeffs(nvars: int, coeffs: Iterable[tuple[Sequence[int], object]]) -> Poly:
    """Build a polynomial from (exponents, coefficient) pairs, summing repeats."""
    out = Poly.zero(nvars)
    for exps, c in coeffs:
        out = out + Poly(nvars, {tuple(exps): Fraction(c)})
    return out
