# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial term arithmetic.

Same contract as ``py_kernel``: dicts of exponent tuples to ``(num, den)``
int pairs in lowest terms, den > 0, no zero coefficients stored.
Coefficients stay Python ints (identity checking must be exact, never
overflow), the win is compiled loop, dict and tuple handling.
"""

from math import gcd

BACKEND = "c"


cdef inline tuple _norm(object num, object den):
    if den < 0:
        num = -num
        den = -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


def add_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple e, cur, coeff
    for e, coeff in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = coeff
        else:
            num = cur[0] * coeff[1] + coeff[0] * cur[1]
            if num == 0:
                del out[e]
            else:
                out[e] = _norm(num, cur[1] * coeff[1])
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef tuple e, coeff
    for e, coeff in a.items():
        out[e] = (-coeff[0], coeff[1])
    return out


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef tuple e, cur, coeff
    for e, coeff in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = (-coeff[0], coeff[1])
        else:
            num = cur[0] * coeff[1] - coeff[0] * cur[1]
            if num == 0:
                del out[e]
            else:
                out[e] = _norm(num, cur[1] * coeff[1])
    return out


def mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    cdef dict out = {}
    cdef tuple ea, eb, e, ca, cb, cur
    cdef Py_ssize_t i, arity
    cdef list exps
    for ea, ca in a.items():
        arity = len(ea)
        for eb, cb in b.items():
            exps = [0] * arity
            for i in range(arity):
                exps[i] = ea[i] + eb[i]
            e = tuple(exps)
            num = ca[0] * cb[0]
            den = ca[1] * cb[1]
            cur = out.get(e)
            if cur is not None:
                num = num * cur[1] + cur[0] * den
                den = den * cur[1]
            if num == 0:
                out.pop(e, None)
            else:
                out[e] = _norm(num, den)
    return out


def scale_terms(dict a, object num, object den):
    if num == 0:
        return {}
    cdef dict out = {}
    cdef tuple e, coeff
    for e, coeff in a.items():
        out[e] = _norm(coeff[0] * num, coeff[1] * den)
    return out


def partial_terms(dict a, Py_ssize_t i):
    cdef dict out = {}
    cdef tuple e, coeff
    cdef Py_ssize_t p
    for e, coeff in a.items():
        p = e[i]
        if p == 0:
            continue
        out[e[:i] + (p - 1,) + e[i + 1:]] = _norm(coeff[0] * p, coeff[1])
    return out


def subst_terms(dict a, list images, Py_ssize_t out_arity):
    cdef tuple zero_exp = (0,) * out_arity
    cdef dict one = {zero_exp: (1, 1)}
    cdef list pows = [[one] for _ in images]
    cdef dict out = {}
    cdef dict term
    cdef tuple e, coeff
    cdef Py_ssize_t i, p
    cdef list cache
    for e, coeff in a.items():
        term = {zero_exp: coeff}
        for i in range(len(e)):
            p = e[i]
            if p == 0:
                continue
            cache = pows[i]
            while len(cache) <= p:
                cache.append(mul_terms(cache[len(cache) - 1], images[i]))
            term = mul_terms(term, cache[p])
        out = add_terms(out, term)
    return out
