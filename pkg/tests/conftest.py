import pytest

from courant import Chart, QLie, Sampler, heterotic_abelian_4d, make_bn, make_dn, so3_flat
from courant.foliated import TForm
from courant.ring import Poly


@pytest.fixture
def chart3() -> Chart:
    return Chart(3, 3)


@pytest.fixture
def bn3():
    return make_bn(3)


@pytest.fixture
def dn3_twisted():
    chart = Chart(3, 3)
    twist = TForm(chart, 3, {(1, 2, 3): Poly.const(3, 2)})
    return make_dn(3, twist)


@pytest.fixture
def het4():
    return heterotic_abelian_4d()


@pytest.fixture
def flat_so3():
    return so3_flat()


@pytest.fixture
def rank1() -> QLie:
    return QLie.abelian(1)


def sampler(seed: int) -> Sampler:
    return Sampler(seed)
