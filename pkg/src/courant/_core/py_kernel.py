"""Pure-Python polynomial term arithmetic.

A polynomial is a dict mapping exponent tuples (one entry per chart
coordinate) to coefficients stored as ``(num, den)`` pairs of ints in
lowest terms with ``den > 0``.  Zero coefficients are never stored, so the
empty dict is the zero polynomial.  All functions return fresh dicts.
"""

from math import gcd

BACKEND = "python"


def _norm(num, den):
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return num, den


def add_terms(a, b):
    out = dict(a)
    for e, (bn, bd) in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = (bn, bd)
        else:
            an, ad = cur
            num = an * bd + bn * ad
            if num == 0:
                del out[e]
            else:
                out[e] = _norm(num, ad * bd)
    return out


def neg_terms(a):
    return {e: (-n, d) for e, (n, d) in a.items()}


def sub_terms(a, b):
    out = dict(a)
    for e, (bn, bd) in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = (-bn, bd)
        else:
            an, ad = cur
            num = an * bd - bn * ad
            if num == 0:
                del out[e]
            else:
                out[e] = _norm(num, ad * bd)
    return out


def mul_terms(a, b):
    if not a or not b:
        return {}
    out = {}
    for ea, (an, ad) in a.items():
        for eb, (bn, bd) in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            num = an * bn
            den = ad * bd
            cur = out.get(e)
            if cur is not None:
                num = num * cur[1] + cur[0] * den
                den = den * cur[1]
            if num == 0:
                out.pop(e, None)
            else:
                out[e] = _norm(num, den)
    return out


def scale_terms(a, num, den):
    if num == 0:
        return {}
    return {e: _norm(n * num, d * den) for e, (n, d) in a.items()}


def partial_terms(a, i):
    """Derivative in the 0-based variable ``i``; exponent map is injective."""
    out = {}
    for e, (n, d) in a.items():
        p = e[i]
        if p == 0:
            continue
        e2 = e[:i] + (p - 1,) + e[i + 1 :]
        out[e2] = _norm(n * p, d)
    return out


def subst_terms(a, images, out_arity):
    """Substitute variable ``i`` by the term dict ``images[i]``.

    The images live over ``out_arity`` variables; powers are cached per
    variable since substitution data is reused across every term.
    """
    zero_exp = (0,) * out_arity
    one = {zero_exp: (1, 1)}
    pows = [[one] for _ in images]
    out = {}
    for e, coeff in a.items():
        term = {zero_exp: coeff}
        for i, p in enumerate(e):
            if p == 0:
                continue
            cache = pows[i]
            while len(cache) <= p:
                cache.append(mul_terms(cache[-1], images[i]))
            term = mul_terms(term, cache[p])
        out = add_terms(out, term)
    return out
