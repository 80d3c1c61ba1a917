"""Exact symbolic standard Courant algebroids over polynomial charts."""

from ._core import BACKEND as kernel_backend
from .foliated import (
    Chart,
    FVec,
    FolAffine,
    TForm,
    f_bracket,
    homotopy,
    interior,
    lie_derivative,
    pullback,
    pushforward,
    tangential_d,
    wedge,
)
from .gallery import (
    ValidationError,
    heterotic_abelian_4d,
    make_bn,
    make_dn,
    make_heterotic_like,
    make_point_manin,
    so3_flat,
)
from .qforms import (
    EndQForm,
    QForm,
    ad_of,
    bracket_wedge,
    curvature,
    d_nabla,
    dagger,
    pair_wedge,
    sharp,
    lie_xtheta,
)
from .quadlie import Conn, QLie, killing_form, nabla_apply, sl2, so3, validate_conn, validate_qlie
from .report import Check, Report
from .ring import Poly, Rat, partial, poly_arith
from .sampler import Sampler
from .standard import GSec, StdCA, anchor, axiom_suite, bracket, d_operator, inner, validate_stdca
from .transform import (
    Aut,
    InfAut,
    QAutPair,
    aut_apply,
    aut_compose,
    aut_invert,
    check_aut,
    check_infaut,
    dissection_change,
    dissection_change_apply,
    gauge_compose,
    infaut_apply,
    infaut_bracket,
    linearize,
    natural_apply,
    natural_transform,
    psi_apply,
    transform_data,
)

__version__ = "0.1.0"
