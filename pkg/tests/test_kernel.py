"""Backend parity: the compiled kernel must agree with the pure-Python one."""

import random

import pytest

from courant._core import py_kernel

try:
    from courant._core import c_kernel
except ImportError:  # pragma: no cover
    c_kernel = None

needs_c = pytest.mark.skipif(c_kernel is None, reason="compiled kernel not built")


def random_terms(rng, nvars, max_degree=3, max_terms=5):
    out = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree) if nvars else 0):
            exps[rng.randrange(nvars)] += 1
        num = rng.randint(-6, 6)
        den = rng.randint(1, 4)
        if num == 0:
            continue
        from math import gcd

        g = gcd(num, den)
        out[tuple(exps)] = (num // g, den // g)
    return out


@needs_c
def test_backends_agree_on_random_inputs():
    rng = random.Random(12345)
    for _ in range(200):
        nvars = rng.randint(0, 4)
        a = random_terms(rng, nvars)
        b = random_terms(rng, nvars)
        assert py_kernel.add_terms(a, b) == c_kernel.add_terms(a, b)
        assert py_kernel.sub_terms(a, b) == c_kernel.sub_terms(a, b)
        assert py_kernel.neg_terms(a) == c_kernel.neg_terms(a)
        assert py_kernel.mul_terms(a, b) == c_kernel.mul_terms(a, b)
        assert py_kernel.scale_terms(a, 3, 2) == c_kernel.scale_terms(a, 3, 2)
        if nvars:
            i = rng.randrange(nvars)
            assert py_kernel.partial_terms(a, i) == c_kernel.partial_terms(a, i)
        images = [random_terms(rng, 2, 1, 2) for _ in range(nvars)]
        assert py_kernel.subst_terms(a, images, 2) == c_kernel.subst_terms(a, list(images), 2)


@needs_c
def test_backends_agree_on_big_coefficients():
    # exactness must survive past 64-bit territory
    a = {(1, 0): (2**80 + 1, 3), (0, 2): (-(2**70), 7)}
    b = {(1, 1): (2**80 - 1, 5)}
    assert py_kernel.mul_terms(a, b) == c_kernel.mul_terms(a, b)


def test_selection_env_var(monkeypatch):
    import importlib

    import courant._core as core

    monkeypatch.setenv("COURANT_KERNEL", "py")
    reloaded = importlib.reload(core)
    assert reloaded.BACKEND == "python"
    monkeypatch.delenv("COURANT_KERNEL")
    importlib.reload(core)
