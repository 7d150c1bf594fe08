"""Banded Laurent arithmetic on the unit circle.

A value is a finite Fourier expansion sum_k c_k z^k held densely over its
band [lo, hi]; bands may be asymmetric and are trimmed to the outermost
nonzero coefficients. The inner product is the coefficient pairing
sum_k c_k(f) conj(c_k(g)), i.e. the normalized-measure integral of f g-bar
in Parseval form. Instances are immutable and all operations are pure.

`tail_bound` is bookkeeping, not enforced arithmetic: it carries an upper
bound on the L2 mass a truncation discarded upstream (0 for exact
polynomials) and only ever grows under arithmetic, so identity tests can
widen their tolerances by it.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from . import kernels
from .errors import InputError

_ZERO = np.zeros(0, dtype=np.complex128)


class LaurentPolynomial:
    __slots__ = ("_lo", "_data", "tail_bound", "_coeffs_cache")

    def __init__(self, coeffs: Mapping[int, complex] | None = None, *,
                 tail_bound: float = 0.0):
        if coeffs:
            lo = min(coeffs)
            hi = max(coeffs)
            data = np.zeros(hi - lo + 1, dtype=np.complex128)
            for k, c in coeffs.items():
                data[k - lo] = c
        else:
            lo, data = 0, _ZERO
        lo, data = _trim(lo, data)
        self._lo = lo
        self._data = data
        self.tail_bound = float(tail_bound)
        self._coeffs_cache = None

    @classmethod
    def _from_dense(cls, lo: int, data: np.ndarray,
                    tail_bound: float = 0.0) -> "LaurentPolynomial":
        p = cls.__new__(cls)
        lo, data = _trim(lo, np.ascontiguousarray(data, dtype=np.complex128))
        p._lo = lo
        p._data = data
        p.tail_bound = float(tail_bound)
        p._coeffs_cache = None
        return p

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1.0})

    @classmethod
    def monomial(cls, degree: int, coefficient: complex = 1.0) -> "LaurentPolynomial":
        return cls({degree: coefficient})

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, complex]:
        """Sparse degree -> coefficient view (zeros inside the band omitted)."""
        if self._coeffs_cache is None:
            self._coeffs_cache = {
                self._lo + i: complex(c)
                for i, c in enumerate(self._data) if c != 0
            }
        return dict(self._coeffs_cache)

    @property
    def lo(self) -> int:
        return self._lo

    @property
    def hi(self) -> int:
        return self._lo + len(self._data) - 1

    @property
    def band(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def coeff(self, k: int) -> complex:
        i = k - self._lo
        if 0 <= i < len(self._data):
            return complex(self._data[i])
        return 0j

    def is_zero(self) -> bool:
        return len(self._data) == 0

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self._data) ** 2))

    def norm(self) -> float:
        return self.norm_sq() ** 0.5

    def sup_on_band(self) -> float:
        return float(np.max(np.abs(self._data))) if len(self._data) else 0.0

    def evaluate(self, zeta: complex) -> complex:
        """Value at a point of the circle (or anywhere the series makes sense)."""
        acc = 0j
        for i, c in enumerate(self._data):
            acc += c * zeta ** (self._lo + i)
        return acc

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients over [lo, hi] as a contiguous array."""
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        src0 = max(self.lo, lo)
        src1 = min(self.hi, hi)
        if src0 <= src1:
            out[src0 - lo:src1 - lo + 1] = self._data[src0 - self._lo:src1 - self._lo + 1]
        return out

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self.is_zero():
            return LaurentPolynomial._from_dense(
                other._lo, other._data, self.tail_bound + other.tail_bound)
        if other.is_zero():
            return LaurentPolynomial._from_dense(
                self._lo, self._data, self.tail_bound + other.tail_bound)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        data = self.dense(lo, hi)
        data += other.dense(lo, hi)
        return LaurentPolynomial._from_dense(lo, data,
                                             self.tail_bound + other.tail_bound)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._from_dense(self._lo, -self._data, self.tail_bound)

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: complex) -> "LaurentPolynomial":
        return LaurentPolynomial._from_dense(self._lo, self._data * c,
                                             abs(c) * self.tail_bound)

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiplication by the monomial z^k."""
        return LaurentPolynomial._from_dense(self._lo + k, self._data,
                                             self.tail_bound)

    def conj(self) -> "LaurentPolynomial":
        return conj_function(self)

    # -- encoding -----------------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": [[k, c.real, c.imag] for k, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, obj) -> "LaurentPolynomial":
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise InputError("expected an object with a 'coeffs' list")
        coeffs: dict[int, complex] = {}
        for item in obj["coeffs"]:
            try:
                k, re, im = item
                coeffs[int(k)] = coeffs.get(int(k), 0j) + complex(float(re), float(im))
            except (TypeError, ValueError) as exc:
                raise InputError(f"bad coefficient entry {item!r}") from exc
        return cls(coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentPolynomial(0)"
        terms = ", ".join(f"{k}: {c:.6g}" for k, c in sorted(self.coeffs.items()))
        return f"LaurentPolynomial({{{terms}}})"


def _trim(lo: int, data: np.ndarray) -> tuple[int, np.ndarray]:
    nz = np.nonzero(data)[0]
    if len(nz) == 0:
        return 0, _ZERO
    a, b = nz[0], nz[-1]
    if a == 0 and b == len(data) - 1:
        return lo, data
    return lo + int(a), data[a:b + 1]


# -- module-level operations -------------------------------------------------

def multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """Coefficient convolution; realizes pointwise multiplication on the circle.

    The tail bound propagates as f.tail*|g| + g.tail*|f| + f.tail*g.tail.
    """
    tail = f.tail_bound * g.norm() + g.tail_bound * f.norm() \
        + f.tail_bound * g.tail_bound
    if f.is_zero() or g.is_zero():
        return LaurentPolynomial._from_dense(0, _ZERO, tail)
    if len(f._data) == 1:
        return LaurentPolynomial._from_dense(
            f.lo + g.lo, f._data[0] * g._data, tail)
    if len(g._data) == 1:
        return LaurentPolynomial._from_dense(
            f.lo + g.lo, g._data[0] * f._data, tail)
    data = kernels.convolve(f._data, g._data)
    return LaurentPolynomial._from_dense(f.lo + g.lo, data, tail)


def inner_product(f: LaurentPolynomial, g: LaurentPolynomial) -> complex:
    """Sesquilinear pairing sum_k c_k(f) conj(c_k(g))."""
    if f.is_zero() or g.is_zero():
        return 0j
    return kernels.inner_shifted(f._data, g._data, f.lo - g.lo)


def project_band(f: LaurentPolynomial, lo: int | None, hi: int | None) -> LaurentPolynomial:
    """Zero all coefficients outside [lo, hi]; None means unbounded."""
    if lo is not None and hi is not None and lo > hi:
        raise InputError(f"empty band [{lo}, {hi}]")
    a = f.lo if lo is None else max(f.lo, lo)
    b = f.hi if hi is None else min(f.hi, hi)
    if a > b or f.is_zero():
        return LaurentPolynomial._from_dense(0, _ZERO, f.tail_bound)
    return LaurentPolynomial._from_dense(
        a, f._data[a - f.lo:b - f.lo + 1].copy(), f.tail_bound)


def plus_part(f: LaurentPolynomial) -> LaurentPolynomial:
    """Projection onto nonnegative degrees (the analytic half)."""
    return project_band(f, 0, None)


def minus_part(f: LaurentPolynomial) -> LaurentPolynomial:
    """Projection onto strictly negative degrees."""
    return project_band(f, None, -1)


def involution_J(f: LaurentPolynomial) -> LaurentPolynomial:
    """The antilinear involution with coefficient rule (Jf)_j = conj(c_{-j-1}).

    Pointwise this is z-bar times the complex conjugate of the value; it swaps
    the analytic and antianalytic halves isometrically.
    """
    if f.is_zero():
        return LaurentPolynomial._from_dense(0, _ZERO, f.tail_bound)
    data = np.conjugate(f._data[::-1])
    return LaurentPolynomial._from_dense(-f.hi - 1, data, f.tail_bound)


def conj_function(f: LaurentPolynomial) -> LaurentPolynomial:
    """Complex conjugate of the boundary value: (f-bar)_k = conj(c_{-k})."""
    if f.is_zero():
        return LaurentPolynomial._from_dense(0, _ZERO, f.tail_bound)
    data = np.conjugate(f._data[::-1])
    return LaurentPolynomial._from_dense(-f.hi, data, f.tail_bound)


def distance(f: LaurentPolynomial, g: LaurentPolynomial) -> float:
    """L2 distance between two values."""
    return (f - g).norm()


zero = LaurentPolynomial.zero
one = LaurentPolynomial.one
monomial = LaurentPolynomial.monomial
