"""Trace-class pairing and the rank-one/rank-two annihilator calculus.

A finite-rank operator t = sum_n f_n (x) g_n acts against an operator T
through the pairing <T, t> = sum_n <T f_n, g_n>. The generator families
produced here (the shifted-dyad differences and the six two-dyad families)
pair to zero against every compressed-multiplication operator; a block
operator violating one of the four membership conditions shows a nonzero
pairing against the matching family. Pairings are evaluated in section
coordinates, so the dyad vectors must lie in the section span (checked via
the membership defect).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .bases import OrthonormalBasis
from .errors import AdmissibilityError, DimensionError, InputError
from .inner import DEFAULT_TAIL_CAP, BlaschkeProduct, expand
from .laurent import (LaurentPolynomial, conj_function, inner_product,
                      minus_part, monomial, multiply, plus_part)
from .operators import BlockOperator, DenseComplexMatrix
from .spaces import project

MEMBERSHIP_TOL = 1e-8


class FiniteRankOperator:
    """A list of dyads (f, g) representing sum f_i (x) g_i; f_i live in the
    domain of the operators to be paired against, g_i in the codomain."""

    __slots__ = ("dyads",)

    def __init__(self, dyads):
        self.dyads = tuple((f, g) for f, g in dyads)

    @property
    def rank_bound(self) -> int:
        return len(self.dyads)

    def to_json(self) -> dict:
        return {"dyads": [{"f": f.to_json(), "g": g.to_json()}
                          for f, g in self.dyads]}

    @classmethod
    def from_json(cls, obj) -> "FiniteRankOperator":
        try:
            return cls([(LaurentPolynomial.from_json(d["f"]),
                         LaurentPolynomial.from_json(d["g"]))
                        for d in obj["dyads"]])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed finite-rank payload: {exc}") from exc

    def __repr__(self):
        return f"FiniteRankOperator(rank<={self.rank_bound})"


def pair(T, t: FiniteRankOperator, *,
         membership_tol: float = MEMBERSHIP_TOL) -> complex:
    """Trace pairing sum_n <T f_n, g_n> in the operator's coordinates.

    Raises when a dyad vector fails to lie in the matching section span
    (its mass would silently be dropped otherwise).
    """
    if isinstance(T, BlockOperator):
        dom, cod = T.domain_basis(), T.codomain_basis()
        mat = T.assemble()
    elif isinstance(T, DenseComplexMatrix):
        dom, cod = T.domain, T.codomain
        mat = T.entries
    else:
        raise InputError("pair expects a BlockOperator or DenseComplexMatrix")
    acc = 0j
    for f, g in t.dyads:
        x, dx = dom.coords_and_defect(f)
        y, dy = cod.coords_and_defect(g)
        for basis, vec, defect in ((dom, f, dx), (cod, g, dy)):
            if defect > membership_tol * max(1.0, vec.norm()):
                raise DimensionError(
                    f"dyad vector leaves the {basis.label} span by {defect:.2e}")
        acc += np.vdot(y, mat @ x)
    return complex(acc)


def gen_shift_pair(f: LaurentPolynomial, g: LaurentPolynomial, *,
                   domain: OrthonormalBasis | None = None,
                   codomain: OrthonormalBasis | None = None,
                   tol: float = 1e-10) -> FiniteRankOperator:
    """The two-dyad operator z f (x) z g - f (x) g.

    f and g must be shift-admissible in their spaces. With explicit bases the
    residual of z*vector outside the ambient space is checked; without them
    the orthogonality to zbar is checked, which is the admissibility
    criterion in the complement sections.
    """
    for name, vec, basis in (("f", f, domain), ("g", g, codomain)):
        if basis is not None:
            ambient = {"model": "model", "model_perp": "model_perp",
                       "thetaH2": "thetaH2", "Hminus": "Hminus"}[basis.kind]
            if ambient == "Hminus":
                res = (vec.shift(1) - minus_part(vec.shift(1))).norm()
            else:
                res = (vec.shift(1) - project(basis.inner, ambient,
                                              vec.shift(1))).norm()
            if res > tol * max(1.0, vec.norm()):
                raise AdmissibilityError(
                    f"{name} is not shift-admissible: residual {res:.2e}")
        elif abs(vec.coeff(-1)) > tol * max(1.0, vec.norm()):
            raise AdmissibilityError(
                f"{name} is not orthogonal to zbar "
                f"(coefficient {vec.coeff(-1):.2e})")
    return FiniteRankOperator([(f.shift(1), g.shift(1)), (-f, g)])


def gen_M(index: int, theta: BlaschkeProduct, alpha: BlaschkeProduct,
          h: LaurentPolynomial | None, g: LaurentPolynomial, *,
          tail_cap: float = DEFAULT_TAIL_CAP) -> FiniteRankOperator:
    """The six two-dyad families tied to the four membership conditions.

    h and g are analytic polynomials (h is ignored by families 5 and 6).
    Family <-> condition: 1 <-> the That sandwich, 2 <-> the TCheck
    coupling, 3/4 <-> the two Hankel intertwinings, 5/6 <-> the two corner
    identities.
    """
    if index not in (1, 2, 3, 4, 5, 6):
        raise InputError(f"family index {index} out of range 1..6")
    for name, vec in (("h", h), ("g", g)):
        if vec is not None and not vec.is_zero() and vec.lo < 0:
            raise InputError(f"{name} must be an analytic polynomial")
    th = expand(theta, tail_cap=tail_cap)
    al = expand(alpha, tail_cap=tail_cap)
    zbar_gbar = multiply(monomial(-1), conj_function(g))
    if index in (1, 2, 3, 4):
        if h is None:
            raise InputError(f"family {index} needs both h and g")
        zbar_hbar = multiply(monomial(-1), conj_function(h))
    if index == 1:
        a, b = multiply(th, h), multiply(al, g)
        return FiniteRankOperator([(a, b), (-a.shift(1), b.shift(1))])
    if index == 2:
        a = multiply(multiply(al, th), h)
        b = multiply(multiply(al, th), g)
        return FiniteRankOperator([(a, b), (-zbar_gbar, zbar_hbar)])
    if index == 3:
        a = multiply(th, h)
        return FiniteRankOperator([(a.shift(1), zbar_gbar),
                                   (-a, zbar_gbar.shift(-1))])
    if index == 4:
        b = multiply(al, g)
        return FiniteRankOperator([(zbar_hbar, b.shift(1)),
                                   (-zbar_hbar.shift(-1), b)])
    if index == 5:
        a = multiply(multiply(th, al), g.shift(1))
        return FiniteRankOperator([(th, zbar_gbar), (-a, al)])
    a = multiply(multiply(al, th), g.shift(1))
    return FiniteRankOperator([(th, a), (-zbar_gbar, al)])


class ProbeResult(NamedTuple):
    products: tuple
    nonzero: bool


def transitivity_probe(f: LaurentPolynomial, g: LaurentPolynomial, *,
                       tol: float = 1e-12) -> ProbeResult:
    """The product f * conj(g) and whether it certifies that f (x) g cannot
    annihilate the compressed-multiplication class (some coefficient above
    the threshold means it cannot)."""
    if f.is_zero() or g.is_zero():
        raise InputError("transitivity probe requires nonzero vectors")
    product = multiply(f, conj_function(g))
    return ProbeResult((product,), product.sup_on_band() > tol)


def dual_transitivity_probe(f: LaurentPolynomial, g: LaurentPolynomial,
                            theta: BlaschkeProduct, alpha: BlaschkeProduct, *,
                            tol: float = 1e-12,
                            tail_cap: float = DEFAULT_TAIL_CAP) -> ProbeResult:
    """Three products driving the rank-one argument on the complement
    sections: with f = zbar conj(f-) + theta f+ and g likewise,
    (f+ conj(g+), conj(f-) g-, theta f+ z g-) must all vanish for f (x) g to
    annihilate the class."""
    if f.is_zero() or g.is_zero():
        raise InputError("transitivity probe requires nonzero vectors")
    th = expand(theta, tail_cap=tail_cap)
    al = expand(alpha, tail_cap=tail_cap)
    f_plus = plus_part(multiply(conj_function(th), f))
    g_plus = plus_part(multiply(conj_function(al), g))
    f_minus = conj_function(minus_part(f).shift(1))
    g_minus = conj_function(minus_part(g).shift(1))
    p1 = multiply(f_plus, conj_function(g_plus))
    p2 = multiply(conj_function(f_minus), g_minus)
    p3 = multiply(multiply(th, f_plus), g_minus.shift(1))
    nonzero = any(p.sup_on_band() > tol for p in (p1, p2, p3))
    return ProbeResult((p1, p2, p3), nonzero)


def represent_functional(density: LaurentPolynomial, theta: BlaschkeProduct,
                         alpha: BlaschkeProduct, *,
                         tail_cap: float = DEFAULT_TAIL_CAP) -> FiniteRankOperator:
    """A rank-one operator t with <D_psi, t> = integral of psi * density for
    every polynomial symbol psi: shift the density analytic, then wrap both
    legs in theta*alpha."""
    if density.is_zero():
        return FiniteRankOperator([])
    n = max(0, -density.lo)
    h1 = density.shift(n)
    th = expand(theta, tail_cap=tail_cap)
    al = expand(alpha, tail_cap=tail_cap)
    wrap = multiply(th, al)
    return FiniteRankOperator([(multiply(wrap, h1), wrap.shift(n))])


def trace_norm(t: FiniteRankOperator) -> float:
    """Sum of singular values of the assembled finite-rank matrix."""
    if not t.dyads:
        return 0.0
    polys = [p for fg in t.dyads for p in fg]
    lo = min(p.lo for p in polys if not p.is_zero())
    hi = max(p.hi for p in polys if not p.is_zero())
    F = np.vstack([f.dense(lo, hi) for f, _ in t.dyads]).T
    G = np.vstack([g.dense(lo, hi) for _, g in t.dyads]).T
    # t = F G^H as a matrix in coefficient coordinates; reduce via QR
    qf, rf = np.linalg.qr(F)
    qg, rg = np.linalg.qr(G)
    s = np.linalg.svd(rf @ rg.conj().T, compute_uv=False)
    return float(np.sum(s))
