"""Exact and certified arithmetic substrate."""

from .ball import RealBall, certified, certify_sign
from .cyclotomic import Cyclotomic, cyc_arith, cyclotomic_polynomial, euler_phi
from .linalg import det, hnf_rows, inverse, smith_normal_form, solve
from .series import TruncSeries, compose_linear, series_inv, univariate_inverse

__all__ = [
    "Cyclotomic",
    "RealBall",
    "TruncSeries",
    "certified",
    "certify_sign",
    "compose_linear",
    "cyc_arith",
    "cyclotomic_polynomial",
    "det",
    "euler_phi",
    "hnf_rows",
    "inverse",
    "series_inv",
    "smith_normal_form",
    "solve",
    "univariate_inverse",
]
