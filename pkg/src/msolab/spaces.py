"""Projections and bases tied to a model space and its orthogonal complement.

The ambient decomposition is L2 = K(theta) + theta*H2 + H2minus, realized on
banded expansions. All subspace projections route through one primitive:
P_{theta H2} f = theta * P+(conj(theta) f). Finite sections of theta*H2 and
H2minus at depth M use the fixed vector order

    theta*z^k for k = 0..M,  then  zbar^k for k = 1..M+1,

and that order defines every block matrix in the package.
"""

from __future__ import annotations

import functools

import numpy as np

from .bases import OrthonormalBasis
from .errors import InputError
from .inner import DEFAULT_TAIL_CAP, BlaschkeProduct, expand, tm_basis
from .laurent import (LaurentPolynomial, conj_function, minus_part,
                      multiply, plus_part)

SUBSPACES = ("model", "thetaH2", "model_perp", "Hminus")

# kernel detection threshold for admissible-subspace computation: an order of
# magnitude above accumulated projection error, well below genuine singular
# values for rho <= 0.95
SHIFT_KERNEL_TOL = 1e-10


def project(theta: BlaschkeProduct, subspace: str, f: LaurentPolynomial, *,
            tail_cap: float | None = DEFAULT_TAIL_CAP) -> LaurentPolynomial:
    """Orthogonal projection of f onto the named subspace attached to theta."""
    if subspace not in SUBSPACES:
        raise InputError(f"unknown subspace {subspace!r}; expected one of {SUBSPACES}")
    if subspace == "Hminus":
        return minus_part(f)
    th = _expansion_for(theta, f, tail_cap)
    on_theta_h2 = multiply(th, plus_part(multiply(conj_function(th), f)))
    if subspace == "thetaH2":
        return on_theta_h2
    if subspace == "model":
        return plus_part(f) - on_theta_h2
    return minus_part(f) + on_theta_h2  # model_perp


def conjugation_C(theta: BlaschkeProduct, f: LaurentPolynomial, *,
                  tail_cap: float | None = DEFAULT_TAIL_CAP) -> LaurentPolynomial:
    """The antilinear involution f -> theta * zbar * conj(f).

    Isometric with reversed pairing order; preserves the model space and
    swaps theta*H2 with H2minus.
    """
    th = _expansion_for(theta, f, tail_cap)
    return multiply(th, conj_function(f).shift(-1))


def _expansion_for(theta: BlaschkeProduct, f: LaurentPolynomial,
                   tail_cap: float | None) -> LaurentPolynomial:
    # the expansion must cover the band of f on both sides so the projected
    # coefficients are exact up to the reported tail
    cap = DEFAULT_TAIL_CAP if tail_cap is None else tail_cap
    n = theta.degree_for_cap(cap)
    if not f.is_zero():
        n = max(n, f.hi + theta.degree + 2, -f.lo + theta.degree + 2)
    return expand(theta, n, tail_cap=None)


def model_basis(theta: BlaschkeProduct, *,
                tail_cap: float | None = DEFAULT_TAIL_CAP) -> OrthonormalBasis:
    return tm_basis(theta, tail_cap=tail_cap)


@functools.lru_cache(maxsize=256)
def _theta_h2_vectors(theta: BlaschkeProduct, M: int,
                      cap: float) -> tuple[LaurentPolynomial, ...]:
    th = expand(theta, max(theta.degree_for_cap(cap), M + theta.degree + 2),
                tail_cap=None)
    return tuple(th.shift(k) for k in range(M + 1))


@functools.lru_cache(maxsize=256)
def thetaH2_basis(theta: BlaschkeProduct, M: int, *, name: str = "theta",
                  tail_cap: float = DEFAULT_TAIL_CAP) -> OrthonormalBasis:
    """{theta z^k : 0 <= k <= M}; orthonormal since |theta| = 1 on the circle."""
    if M < 0:
        raise InputError("truncation depth must be nonnegative")
    vectors = _theta_h2_vectors(theta, M, tail_cap)
    return OrthonormalBasis(f"{name}H2@{M}", vectors, kind="thetaH2",
                            inner=theta, depth=M)


@functools.lru_cache(maxsize=256)
def hminus_basis(M: int) -> OrthonormalBasis:
    """{zbar^k : 1 <= k <= M+1}."""
    if M < 0:
        raise InputError("truncation depth must be nonnegative")
    vectors = tuple(LaurentPolynomial.monomial(-k) for k in range(1, M + 2))
    return OrthonormalBasis(f"Hminus@{M}", vectors, kind="Hminus", depth=M)


@functools.lru_cache(maxsize=256)
def basis_Kperp(theta: BlaschkeProduct, M: int, *, name: str = "theta",
                tail_cap: float = DEFAULT_TAIL_CAP) -> OrthonormalBasis:
    """Finite section of the complement of the model space: the theta*H2
    section followed by the H2minus section (this order is load-bearing)."""
    head = thetaH2_basis(theta, M, name=name, tail_cap=tail_cap)
    tail = hminus_basis(M)
    return OrthonormalBasis(f"Kperp({name})@{M}", head.vectors + tail.vectors,
                            kind="model_perp", inner=theta, depth=M)


_AMBIENT_OF = {"model": "model", "model_perp": "model_perp",
               "thetaH2": "thetaH2", "Hminus": "Hminus"}


def admissible_for_shift(V: OrthonormalBasis, *,
                         sv_tol: float = SHIFT_KERNEL_TOL,
                         tail_cap: float | None = DEFAULT_TAIL_CAP) -> OrthonormalBasis:
    """Orthonormal basis of {f in span V : z*f stays in the ambient space}.

    Computed generically as the kernel of (I - P_ambient) o M_z restricted to
    span V, with singular values below `sv_tol` treated as zero. For the
    truncated sections the top analytic layer is dropped first so that z*f
    also stays inside the truncation.
    """
    if V.kind not in _AMBIENT_OF:
        raise InputError(f"unsupported basis kind {V.kind!r}")
    candidates = list(V.vectors)
    if V.kind == "model_perp":
        M = V.depth
        candidates = candidates[:M] + candidates[M + 1:]
    elif V.kind == "thetaH2":
        candidates = candidates[:-1]
    if not candidates:
        return OrthonormalBasis(f"admissible[{V.label}]", (), kind="admissible",
                                inner=V.inner, depth=V.depth)

    residuals = []
    for v in candidates:
        zv = v.shift(1)
        if V.kind == "Hminus":
            res = zv - minus_part(zv)
        else:
            res = zv - project(V.inner, _AMBIENT_OF[V.kind], zv,
                               tail_cap=tail_cap)
        residuals.append(res)
    lo = min(r.lo for r in residuals if not r.is_zero()) if any(
        not r.is_zero() for r in residuals) else 0
    hi = max(r.hi for r in residuals if not r.is_zero()) if any(
        not r.is_zero() for r in residuals) else 0
    R = np.vstack([r.dense(lo, hi) for r in residuals])
    U, s, _ = np.linalg.svd(R, full_matrices=True)
    kernel_cols = [k for k in range(U.shape[1])
                   if k >= len(s) or s[k] < sv_tol]
    vectors = []
    for k in kernel_cols:
        acc = LaurentPolynomial.zero()
        for i, v in enumerate(candidates):
            c = complex(U[i, k].conjugate())
            if c != 0:
                acc = acc + v.scale(c)
        vectors.append(acc)
    return OrthonormalBasis(f"admissible[{V.label}]", vectors,
                            kind="admissible", inner=V.inner, depth=V.depth)
