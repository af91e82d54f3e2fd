import math
import random

import numpy as np
import pytest

from fractalmra.laurent import LaurentPolynomial, constant, monomial, one, zero
from fractalmra.scalars import Scalar

from conftest import random_polynomial


def test_zero_coefficients_pruned():
    f = LaurentPolynomial({0: 1, 2: 0, -1: Scalar(0)})
    assert f.support() == [0]


def test_algebra_matches_evaluation():
    rng = random.Random(3)
    for _ in range(10):
        f, g = random_polynomial(rng), random_polynomial(rng)
        z = complex(np.exp(2j * math.pi * rng.random()))
        assert (f + g)(z) == pytest.approx(f(z) + g(z))
        assert (f * g)(z) == pytest.approx(f(z) * g(z))
        assert (f - g)(z) == pytest.approx(f(z) - g(z))


def test_conj_reciprocal_is_torus_conjugate():
    rng = random.Random(5)
    for _ in range(10):
        f = random_polynomial(rng)
        t = rng.random()
        z = complex(np.exp(2j * math.pi * t))
        assert f.conj_reciprocal()(z) == pytest.approx(f(z).conjugate())


def test_compose_power():
    f = LaurentPolynomial({1: 1, -2: 3})
    g = f.compose_power(3)
    assert g.support() == [-6, 3]
    z = 0.3 + 0.4j
    assert g(z) == pytest.approx(f(z ** 3))


def test_eval_turns_array():
    f = monomial(2)
    ts = np.array([0.0, 0.25, 0.5])
    vals = f.eval_turns(ts)
    assert vals[0] == pytest.approx(1)
    assert vals[1] == pytest.approx(-1)
    assert vals[2] == pytest.approx(1)


def test_coefficient_norm_sq():
    f = LaurentPolynomial({0: Scalar.inv_sqrt(2), 2: Scalar.inv_sqrt(2)})
    assert f.coefficient_norm_sq() == Scalar(1)


def test_degree_and_equality():
    assert zero().degree() == 0
    assert constant(5).degree() == 0
    assert LaurentPolynomial({-7: 1, 3: 1}).degree() == 7
    assert one() == constant(1)
    assert monomial(1) != monomial(-1)
