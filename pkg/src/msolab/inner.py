"""Finite Blaschke products: construction, expansion, model-space bases.

Only finite Blaschke products are accepted as inner functions, so every
model space is finite-dimensional and every operator identity downstream
becomes a finite linear-algebra statement. Zeros with modulus above 0.95
need an explicit opt-in because the expansion degree required for a given
tail cap grows like log(eps)/log(rho).
"""

from __future__ import annotations

import cmath
import functools
import math
import re
from typing import NamedTuple

import numpy as np

from .bases import OrthonormalBasis
from .errors import InputError, TruncationError
from .laurent import LaurentPolynomial

DEFAULT_TAIL_CAP = 1e-13
RHO_SOFT_LIMIT = 0.95
# margin added to the tail-derived expansion degree; keeps roundoff in the
# discarded range even when zeros cluster
_DEGREE_MARGIN = 8


class BlaschkeProduct:
    """c * prod (z - a_i)/(1 - conj(a_i) z) with all |a_i| < 1 and |c| = 1.

    Zero order is preserved (it fixes the Takenaka-Malmquist basis order and
    hence every matrix downstream). Instances are immutable and hashable.
    """

    __slots__ = ("zeros", "constant", "allow_near_boundary")

    def __init__(self, zeros, constant: complex = 1.0, *,
                 allow_near_boundary: bool = False):
        zeros = tuple(complex(a) for a in zeros)
        if len(zeros) == 0:
            raise InputError("constant inner function: at least one zero required")
        for a in zeros:
            if abs(a) >= 1.0:
                raise InputError(f"zero outside open disk: {a}")
            if abs(a) > RHO_SOFT_LIMIT and not allow_near_boundary:
                raise InputError(
                    f"zero {a} has modulus > {RHO_SOFT_LIMIT}; pass "
                    "allow_near_boundary=True to accept the expansion cost")
        constant = complex(constant)
        if abs(abs(constant) - 1.0) > 1e-14:
            raise InputError(f"constant must be unimodular, got |c|={abs(constant)}")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "allow_near_boundary", allow_near_boundary)

    def __setattr__(self, name, value):
        raise AttributeError("BlaschkeProduct is immutable")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def rho(self) -> float:
        return max(abs(a) for a in self.zeros)

    def is_monomial(self) -> bool:
        return all(a == 0 for a in self.zeros) and self.constant == 1.0

    def evaluate(self, zeta: complex) -> complex:
        """Exact rational evaluation."""
        value = self.constant
        for a in self.zeros:
            value *= (zeta - a) / (1.0 - a.conjugate() * zeta)
        return value

    def tail_bound_at(self, n: int) -> float:
        """Geometric bound on the L2 mass of the expansion beyond degree n."""
        rho = self.rho
        if rho == 0.0:
            return 0.0
        d = self.degree
        return d * rho ** max(n - d + 1, 0) / (1.0 - rho)

    def degree_for_cap(self, cap: float) -> int:
        """Smallest expansion degree whose tail bound meets the cap."""
        rho = self.rho
        if rho == 0.0:
            return self.degree
        d = self.degree
        n = d + math.ceil(math.log(cap * (1.0 - rho) / d) / math.log(rho))
        return max(n, d) + _DEGREE_MARGIN

    def __eq__(self, other):
        return (isinstance(other, BlaschkeProduct)
                and self.zeros == other.zeros
                and self.constant == other.constant)

    def __hash__(self):
        return hash((self.zeros, self.constant))

    def __repr__(self):
        if self.is_monomial():
            return f"BlaschkeProduct(z^{self.degree})"
        return f"BlaschkeProduct(zeros={list(self.zeros)}, constant={self.constant})"

    def short_name(self) -> str:
        if self.is_monomial():
            return f"z^{self.degree}"
        return f"blaschke[{self.degree}]"

    # -- encoding ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"zeros": [[a.real, a.imag] for a in self.zeros],
                "constant": [self.constant.real, self.constant.imag]}

    @classmethod
    def from_json(cls, obj) -> "BlaschkeProduct":
        if not isinstance(obj, dict) or "zeros" not in obj:
            raise InputError("expected an object with 'zeros'")
        try:
            zeros = [complex(float(re_), float(im)) for re_, im in obj["zeros"]]
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad zeros entry: {obj['zeros']!r}") from exc
        const = obj.get("constant", [1.0, 0.0])
        return cls(zeros, complex(float(const[0]), float(const[1])),
                   allow_near_boundary=bool(obj.get("allow_near_boundary", False)))

    @classmethod
    def parse(cls, spec) -> "BlaschkeProduct":
        """Accept the JSON encoding or the shorthand 'z^m'."""
        if isinstance(spec, BlaschkeProduct):
            return spec
        if isinstance(spec, dict):
            return cls.from_json(spec)
        if isinstance(spec, str):
            m = re.fullmatch(r"z(?:\^(\d+))?", spec.strip())
            if m:
                return cls([0.0] * int(m.group(1) or 1))
            raise InputError(f"cannot parse inner function spec {spec!r}")
        raise InputError(f"cannot parse inner function spec {spec!r}")


def monomial_inner(m: int) -> BlaschkeProduct:
    """z^m as a Blaschke product."""
    return BlaschkeProduct([0.0] * m)


@functools.lru_cache(maxsize=256)
def _expand_cached(B: BlaschkeProduct, n: int) -> LaurentPolynomial:
    # series of one factor (z-a)/(1-conj(a) z): b_0 = -a,
    # b_k = conj(a)^(k-1) (1-|a|^2) for k >= 1
    series = np.zeros(n + 1, dtype=np.complex128)
    series[0] = self_c = B.constant
    acc = np.array([self_c], dtype=np.complex128)
    for a in B.zeros:
        ac = a.conjugate()
        factor = np.zeros(n + 1, dtype=np.complex128)
        factor[0] = -a
        if n >= 1:
            scale = 1.0 - abs(a) ** 2
            factor[1:] = scale * (ac ** np.arange(n))
        acc = np.convolve(acc, factor)[:n + 1]
    series = acc
    return LaurentPolynomial._from_dense(0, series, B.tail_bound_at(n))


def expand(B: BlaschkeProduct, n: int | None = None, *,
           tail_cap: float | None = DEFAULT_TAIL_CAP) -> LaurentPolynomial:
    """Power-series coefficients c_0..c_n of B with band [0, n].

    When n is omitted it is chosen so the geometric tail bound meets the
    cap; an explicit n whose tail exceeds the cap is rejected with the
    degree that would be needed.
    """
    if n is None:
        if tail_cap is None:
            raise InputError("expand needs either a degree or a tail cap")
        n = B.degree_for_cap(tail_cap)
    n = int(n)
    if n < B.degree:
        raise InputError(f"expansion degree {n} below the product degree {B.degree}")
    if tail_cap is not None and B.tail_bound_at(n) > tail_cap:
        raise TruncationError(
            f"tail bound {B.tail_bound_at(n):.3e} at degree {n} exceeds the cap "
            f"{tail_cap:.1e}; degree {B.degree_for_cap(tail_cap)} would be needed",
            required_degree=B.degree_for_cap(tail_cap))
    return _expand_cached(B, n)


@functools.lru_cache(maxsize=128)
def _tm_basis_cached(B: BlaschkeProduct, n: int) -> tuple[LaurentPolynomial, ...]:
    # e_k = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z-a_j)/(1-conj(a_j) z)
    d = B.degree
    tail = B.tail_bound_at(n)
    kernel_parts = []
    running = np.array([1.0 + 0j])
    for k, a in enumerate(B.zeros):
        ac = a.conjugate()
        cauchy = ac ** np.arange(n + 1)  # 1/(1 - conj(a) z)
        vec = np.convolve(running, cauchy)[:n + 1] * math.sqrt(1.0 - abs(a) ** 2)
        kernel_parts.append(vec)
        factor = np.zeros(n + 1, dtype=np.complex128)
        factor[0] = -a
        factor[1:] = (1.0 - abs(a) ** 2) * (ac ** np.arange(n))
        running = np.convolve(running, factor)[:n + 1]
    V = np.vstack([np.pad(v, (0, n + 1 - len(v))) for v in kernel_parts])
    # one re-orthonormalization pass against the numerically computed Gram
    G = V @ V.conj().T
    L = np.linalg.cholesky(G)
    V = np.linalg.solve(L, V)
    return tuple(LaurentPolynomial._from_dense(0, V[k], tail) for k in range(d))


def tm_basis(B: BlaschkeProduct, n: int | None = None, *,
             tail_cap: float | None = DEFAULT_TAIL_CAP) -> OrthonormalBasis:
    """Takenaka-Malmquist orthonormal basis of the model space of B.

    Vector order follows the zero order; no re-sorting, so matrices are
    reproducible across runs.
    """
    if n is None:
        if tail_cap is None:
            raise InputError("tm_basis needs either a degree or a tail cap")
        n = B.degree_for_cap(tail_cap)
    n = int(n)
    if tail_cap is not None and B.tail_bound_at(n) > tail_cap:
        raise TruncationError(
            f"tail bound {B.tail_bound_at(n):.3e} at degree {n} exceeds the cap "
            f"{tail_cap:.1e}; degree {B.degree_for_cap(tail_cap)} would be needed",
            required_degree=B.degree_for_cap(tail_cap))
    return _tm_basis_wrapped(B, n)


@functools.lru_cache(maxsize=128)
def _tm_basis_wrapped(B: BlaschkeProduct, n: int) -> OrthonormalBasis:
    return OrthonormalBasis(f"K({B.short_name()})", _tm_basis_cached(B, n),
                            kind="model", inner=B)


class InnerCheck(NamedTuple):
    ok: bool
    deviation: float
    tail_bound: float


def verify_inner(B: BlaschkeProduct, samples: int = 256, tol: float = 1e-13, *,
                 expansion_degree: int | None = None) -> InnerCheck:
    """Max deviation of |B| from 1 over uniform circle samples.

    By default the exact rational form is evaluated. Passing an expansion
    degree evaluates the truncated power series instead, which fails (with
    the tail bound reported) whenever the discarded tail is visible.
    """
    if samples < 8:
        raise InputError("at least 8 samples required")
    if expansion_degree is None:
        values = [B.evaluate(cmath.exp(2j * cmath.pi * j / samples))
                  for j in range(samples)]
        tail = 0.0
    else:
        poly = expand(B, expansion_degree, tail_cap=None)
        values = [poly.evaluate(cmath.exp(2j * cmath.pi * j / samples))
                  for j in range(samples)]
        tail = poly.tail_bound
    deviation = max(abs(abs(v) - 1.0) for v in values)
    return InnerCheck(deviation <= tol, deviation, tail)
