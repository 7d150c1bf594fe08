import numpy as np
import pytest

from msolab.laurent import LaurentPolynomial
from msolab.rng import Xoshiro256StarStar


def assert_poly_close(f, g, tol=1e-12):
    __tracebackhide__ = True
    d = (f - g).norm()
    if d > tol:
        raise AssertionError(f"polynomials differ by {d:.3e} > {tol:.1e}:"
                             f"\n  {f!r}\n  {g!r}")


def random_poly(r: Xoshiro256StarStar, lo=-6, hi=6, scale=1.0):
    return LaurentPolynomial({k: scale * r.complex_box()
                              for k in range(lo, hi + 1)})


@pytest.fixture
def rng():
    return Xoshiro256StarStar(20250809)


@pytest.fixture
def poly_stream(rng):
    def make(lo=-6, hi=6):
        return random_poly(rng, lo, hi)
    return make
