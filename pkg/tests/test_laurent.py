import cmath

import numpy as np
import pytest

from msolab.errors import InputError
from msolab.laurent import (LaurentPolynomial, conj_function, inner_product,
                            involution_J, minus_part, monomial, multiply,
                            one, plus_part, project_band)

from conftest import assert_poly_close, random_poly

# -- multiply -----------------------------------------------------------------

def test_multiply_polynomial_identity():
    f = LaurentPolynomial({0: 1, 1: 1})
    g = LaurentPolynomial({0: 1, 1: -1})
    assert multiply(f, g).coeffs == {0: (1 + 0j), 2: (-1 + 0j)}


def test_multiply_inverse_monomials():
    assert multiply(monomial(-1), monomial(1)).coeffs == {0: (1 + 0j)}


def test_multiply_convolution_oracle():
    f = LaurentPolynomial({1: 1, -1: 2})
    out = multiply(f, monomial(2))
    assert out.coeffs == {3: (1 + 0j), 1: (2 + 0j)}


def test_multiply_band_and_tail_propagation():
    f = LaurentPolynomial({-2: 1, 3: 1}, tail_bound=1e-4)
    g = LaurentPolynomial({1: 2}, tail_bound=1e-5)
    h = multiply(f, g)
    assert h.band == (-1, 4)
    expected = 1e-4 * g.norm() + 1e-5 * f.norm() + 1e-4 * 1e-5
    assert h.tail_bound == pytest.approx(expected)


def test_multiply_commutes_and_associates(rng):
    f, g, h = (random_poly(rng, -4, 4) for _ in range(3))
    assert_poly_close(multiply(f, g), multiply(g, f), 1e-12)
    assert_poly_close(multiply(multiply(f, g), h),
                      multiply(f, multiply(g, h)), 1e-9)


def test_pointwise_multiplicativity(rng):
    f = random_poly(rng, -5, 5)
    g = random_poly(rng, -3, 6)
    fg = multiply(f, g)
    for k in range(16):
        zeta = cmath.exp(2j * cmath.pi * k / 16)
        assert fg.evaluate(zeta) == pytest.approx(
            f.evaluate(zeta) * g.evaluate(zeta), abs=1e-10)


# -- inner product ------------------------------------------------------------

def test_inner_product_examples():
    assert inner_product(monomial(1), monomial(1)) == 1
    assert inner_product(LaurentPolynomial({0: 1, 1: 1}),
                         LaurentPolynomial({0: 1, 1: -1})) == 0
    assert inner_product(monomial(1), one()) == 0


def test_inner_product_sesquilinear(rng):
    f, g = random_poly(rng), random_poly(rng)
    lam = 0.7 - 1.3j
    assert inner_product(f.scale(lam), g) == pytest.approx(
        lam * inner_product(f, g))
    assert inner_product(f, g.scale(lam)) == pytest.approx(
        np.conj(lam) * inner_product(f, g))
    assert inner_product(g, f) == pytest.approx(np.conj(inner_product(f, g)))


def test_parseval_against_quadrature(rng):
    # coefficient pairing == trapezoid quadrature of f * conj(g) over the
    # circle, exact for trig polynomials sampled densely enough
    f = random_poly(rng, -32, 32)
    g = random_poly(rng, -32, 32)
    n = 512
    quad = sum(f.evaluate(z) * np.conj(g.evaluate(z))
               for z in (cmath.exp(2j * cmath.pi * k / n) for k in range(n))) / n
    assert inner_product(f, g) == pytest.approx(quad, abs=1e-12 * max(1, f.norm() * g.norm()))


# -- band projections ---------------------------------------------------------

def test_projection_examples():
    f = LaurentPolynomial({-1: 1, 0: 1, 1: 1})
    assert plus_part(f).coeffs == {0: (1 + 0j), 1: (1 + 0j)}
    assert minus_part(monomial(-2)).coeffs == {-2: (1 + 0j)}
    assert minus_part(monomial(3)).is_zero()


def test_projection_idempotent_and_contractive(rng):
    f = random_poly(rng)
    p = project_band(f, -2, 3)
    assert_poly_close(project_band(p, -2, 3), p, 0)
    assert p.norm() <= f.norm() + 1e-15


def test_projection_self_adjoint(rng):
    f, g = random_poly(rng), random_poly(rng)
    assert inner_product(project_band(f, -3, 2), g) == pytest.approx(
        inner_product(f, project_band(g, -3, 2)), abs=1e-12)


def test_projection_rejects_empty_band():
    with pytest.raises(InputError):
        project_band(one(), 3, 1)


# -- involutions --------------------------------------------------------------

def test_involution_J_examples():
    assert involution_J(one()).coeffs == {-1: (1 + 0j)}
    assert involution_J(monomial(-2)).coeffs == {1: (1 + 0j)}


def test_involution_J_is_involution(rng):
    f = random_poly(rng)
    assert_poly_close(involution_J(involution_J(f)), f, 0)


def test_involution_J_antiunitary(rng):
    f, g = random_poly(rng), random_poly(rng)
    assert inner_product(involution_J(f), involution_J(g)) == pytest.approx(
        inner_product(g, f), abs=1e-12)


def test_involution_J_swaps_halves(rng):
    f = random_poly(rng, 0, 5)
    assert involution_J(f).hi <= -1
    g = random_poly(rng, -5, -1)
    assert involution_J(g).lo >= 0


def test_conj_function_examples():
    assert conj_function(monomial(1)).coeffs == {-1: (1 + 0j)}
    assert conj_function(LaurentPolynomial({0: 1, 1: 1j})).coeffs == \
        {0: (1 + 0j), -1: (0 - 1j)}


def test_conj_function_involution(rng):
    f = random_poly(rng)
    assert_poly_close(conj_function(conj_function(f)), f, 0)
    for k in range(8):
        zeta = cmath.exp(2j * cmath.pi * k / 8)
        assert conj_function(f).evaluate(zeta) == pytest.approx(
            np.conj(f.evaluate(zeta)))


# -- encoding and plumbing ------------------------------------------------------

def test_json_round_trip(rng):
    f = random_poly(rng)
    assert_poly_close(LaurentPolynomial.from_json(f.to_json()), f, 0)


def test_json_rejects_garbage():
    with pytest.raises(InputError):
        LaurentPolynomial.from_json({"nope": []})
    with pytest.raises(InputError):
        LaurentPolynomial.from_json({"coeffs": [["x", 1]]})


def test_zero_polynomial_behaviour():
    z = LaurentPolynomial()
    assert z.is_zero() and z.norm() == 0
    assert multiply(z, one()).is_zero()
    assert inner_product(z, one()) == 0
    assert (z + one()).coeffs == {0: (1 + 0j)}


def test_band_trimming():
    f = LaurentPolynomial({-3: 0.0, 0: 1.0, 5: 0.0})
    assert f.band == (0, 0)
