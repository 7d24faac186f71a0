import math

import numpy as np
import pytest

from shintani.quadrature import angular_rule, half_line_integral, quadrant_integral, strip_angles


@pytest.mark.parametrize("s", [0.25, 0.5, 1.0, 2.0])
def test_half_line_gamma(s):
    assert abs(half_line_integral(lambda y: np.exp(-y), s, -80.0 / s, 4.0) - math.gamma(s)) < 1e-10


@pytest.mark.parametrize("s", [0.25, 0.5])
def test_angular_rule_beta(s):
    # int_0^{pi/2} (cos t sin t)^{s-1} dt = B(s/2, s/2) / 2
    _, w = angular_rule(1.0, [], s)
    beta = math.gamma(s / 2) ** 2 / math.gamma(s) / 2
    assert abs(w.sum() - beta) < 1e-10


def test_quadrant_gamma_squared():
    s = 0.25
    G = lambda Y: np.exp(-Y[:, 0] - Y[:, 1])
    v = quadrant_integral(G, s, [], -40.0, 4.0)
    assert abs(v - math.gamma(s) ** 2) < 1e-8 * math.gamma(s) ** 2 * 10


def test_strip_angles():
    assert strip_angles([(1.0, 1.0)]) == []
    (t,) = strip_angles([(1.0, -1.0)])
    assert abs(t - math.pi / 4) < 1e-15
    assert strip_angles([(1.0, 0.0)]) == []
