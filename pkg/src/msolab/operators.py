"""Operator matrices: compressions of multiplication operators to model
spaces and to the complements of model spaces.

A `DenseComplexMatrix` is the compression to model spaces (domain/codomain
Takenaka-Malmquist bases). A `BlockOperator` holds the four compressions of
an operator between complement sections in the fixed basis order of
spaces.basis_Kperp:

    [ That        GammaCheck ]   thetaH2@M -> alphaH2@M | Hminus@M -> alphaH2@M
    [ GammaHat    TCheck     ]   thetaH2@M -> Hminus@M  | Hminus@M -> Hminus@M

Entries are exact pairings (up to expansion tails), so truncation shows up
only structurally: identities involving products of blocks are reliable on
interior indices, at distance >= (symbol reach + deg theta + deg alpha)
from the truncation edge. Builders tag the symbol reach as `edge` so checks
can size that margin.
"""

from __future__ import annotations

import functools

import numpy as np

from .bases import OrthonormalBasis
from .errors import DimensionError, InputError
from .inner import DEFAULT_TAIL_CAP, BlaschkeProduct
from .laurent import (LaurentPolynomial, conj_function, minus_part, multiply,
                      plus_part)
from .spaces import basis_Kperp, conjugation_C, hminus_basis, model_basis, thetaH2_basis


class SymbolFunction:
    """A trigonometric-polynomial symbol with its analytic/antianalytic split.

    value = plus + minus, where plus has band in [0, inf) (the mean
    coefficient lives there) and minus in (-inf, -1].
    """

    __slots__ = ("value", "plus", "minus")

    def __init__(self, value: LaurentPolynomial):
        self.value = value
        self.plus = plus_part(value)
        self.minus = minus_part(value)

    @classmethod
    def parse(cls, obj) -> "SymbolFunction":
        if isinstance(obj, SymbolFunction):
            return obj
        if isinstance(obj, LaurentPolynomial):
            return cls(obj)
        if isinstance(obj, dict):
            return cls(LaurentPolynomial.from_json(obj))
        raise InputError(f"cannot parse symbol {obj!r}")

    @property
    def mean(self) -> complex:
        return self.value.coeff(0)

    @property
    def reach(self) -> int:
        """Largest |degree| carrying a coefficient; 0 for constants."""
        if self.value.is_zero():
            return 0
        return max(self.value.hi, -self.value.lo, 0)

    def conjugated(self) -> "SymbolFunction":
        return SymbolFunction(conj_function(self.value))

    def to_json(self) -> dict:
        return self.value.to_json()

    def __repr__(self):
        return f"SymbolFunction({self.value!r})"


class DenseComplexMatrix:
    """Matrix of an operator between two labeled orthonormal bases."""

    __slots__ = ("entries", "domain", "codomain")

    def __init__(self, entries: np.ndarray, domain: OrthonormalBasis,
                 codomain: OrthonormalBasis):
        entries = np.asarray(entries, dtype=np.complex128)
        if entries.shape != (codomain.dim, domain.dim):
            raise DimensionError(
                f"entries {entries.shape} do not match bases "
                f"({codomain.dim}, {domain.dim})")
        self.entries = entries
        self.domain = domain
        self.codomain = codomain

    @property
    def shape(self):
        return self.entries.shape

    def adjoint(self) -> "DenseComplexMatrix":
        return DenseComplexMatrix(self.entries.conj().T, self.codomain, self.domain)

    def to_json(self) -> dict:
        out = {"entries": _matrix_to_json(self.entries)}
        if self.domain.inner is not None:
            out["theta"] = self.domain.inner.to_json()
        if self.codomain.inner is not None:
            out["alpha"] = self.codomain.inner.to_json()
        return out

    def __repr__(self):
        return (f"DenseComplexMatrix({self.codomain.label!r} x "
                f"{self.domain.label!r}, shape={self.entries.shape})")


class BlockOperator:
    """The four compressions of an operator between complement sections.

    `edge` is the symbol reach used to size interior margins in checks; it is
    None for operators of unknown provenance (e.g. loaded from JSON without
    the optional metadata).
    """

    __slots__ = ("that", "gamma_check", "gamma_hat", "t_check",
                 "theta", "alpha", "M", "edge")

    def __init__(self, that, gamma_check, gamma_hat, t_check,
                 theta: BlaschkeProduct, alpha: BlaschkeProduct, M: int,
                 edge: int | None = None):
        n = M + 1
        self.that = np.asarray(that, dtype=np.complex128)
        self.gamma_check = np.asarray(gamma_check, dtype=np.complex128)
        self.gamma_hat = np.asarray(gamma_hat, dtype=np.complex128)
        self.t_check = np.asarray(t_check, dtype=np.complex128)
        for name, block in (("That", self.that), ("GammaCheck", self.gamma_check),
                            ("GammaHat", self.gamma_hat), ("TCheck", self.t_check)):
            if block.shape != (n, n):
                raise DimensionError(f"{name} has shape {block.shape}, expected {(n, n)}")
        self.theta = theta
        self.alpha = alpha
        self.M = int(M)
        self.edge = edge

    @property
    def dim(self) -> int:
        return 2 * (self.M + 1)

    def domain_basis(self) -> OrthonormalBasis:
        return basis_Kperp(self.theta, self.M)

    def codomain_basis(self) -> OrthonormalBasis:
        return basis_Kperp(self.alpha, self.M, name="alpha")

    def assemble(self) -> np.ndarray:
        top = np.hstack([self.that, self.gamma_check])
        bottom = np.hstack([self.gamma_hat, self.t_check])
        return np.vstack([top, bottom])

    def adjoint(self) -> "BlockOperator":
        return BlockOperator(
            that=self.that.conj().T,
            gamma_check=self.gamma_hat.conj().T,
            gamma_hat=self.gamma_check.conj().T,
            t_check=self.t_check.conj().T,
            theta=self.alpha, alpha=self.theta, M=self.M, edge=self.edge)

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (self.dim,):
            raise DimensionError(f"vector of length {x.shape} for dimension {self.dim}")
        return self.assemble() @ x

    def apply_poly(self, f: LaurentPolynomial) -> LaurentPolynomial:
        """Apply to a function lying in the domain section."""
        dom = self.domain_basis()
        return self.codomain_basis().reconstruct(self.assemble() @ dom.coords(f))

    def to_json(self) -> dict:
        out = {
            "theta": self.theta.to_json(),
            "alpha": self.alpha.to_json(),
            "M": self.M,
            "blocks": {
                "That": _matrix_to_json(self.that),
                "GammaCheck": _matrix_to_json(self.gamma_check),
                "GammaHat": _matrix_to_json(self.gamma_hat),
                "TCheck": _matrix_to_json(self.t_check),
            },
        }
        if self.edge is not None:
            out["edge"] = self.edge
        return out

    @classmethod
    def from_json(cls, obj) -> "BlockOperator":
        try:
            theta = BlaschkeProduct.from_json(obj["theta"])
            alpha = BlaschkeProduct.from_json(obj["alpha"])
            M = int(obj["M"])
            blocks = obj["blocks"]
            return cls(that=_matrix_from_json(blocks["That"]),
                       gamma_check=_matrix_from_json(blocks["GammaCheck"]),
                       gamma_hat=_matrix_from_json(blocks["GammaHat"]),
                       t_check=_matrix_from_json(blocks["TCheck"]),
                       theta=theta, alpha=alpha, M=M,
                       edge=obj.get("edge"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed block operator payload: {exc}") from exc

    def __repr__(self):
        return (f"BlockOperator(theta={self.theta.short_name()}, "
                f"alpha={self.alpha.short_name()}, M={self.M})")


def _matrix_to_json(a: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in a]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(float(v[0]), float(v[1])) for v in row]
                     for row in rows], dtype=np.complex128)


def _pairing_matrix(images, codomain: OrthonormalBasis) -> np.ndarray:
    """Entries <image_j, c_i> stacked into a (dim codomain, len images) matrix."""
    polys = list(images) + list(codomain.vectors)
    lo = min((p.lo for p in polys if not p.is_zero()), default=0)
    hi = max((p.hi for p in polys if not p.is_zero()), default=0)
    A = np.vstack([p.dense(lo, hi) for p in images])
    C = codomain.stacked(lo, hi)
    return C.conj() @ A.T


def build_tto(theta: BlaschkeProduct, alpha: BlaschkeProduct, phi, *,
              tail_cap: float = DEFAULT_TAIL_CAP) -> DenseComplexMatrix:
    """Compression of multiplication by phi from K(theta) to K(alpha)."""
    phi = SymbolFunction.parse(phi)
    dom = model_basis(theta, tail_cap=tail_cap)
    cod = model_basis(alpha, tail_cap=tail_cap)
    images = [multiply(phi.value, e) for e in dom.vectors]
    return DenseComplexMatrix(_pairing_matrix(images, cod), dom, cod)


def build_dtto(theta: BlaschkeProduct, alpha: BlaschkeProduct, phi, M: int, *,
               tail_cap: float = DEFAULT_TAIL_CAP) -> BlockOperator:
    """Compression of multiplication by phi between complement sections.

    Requires M >= reach(phi) + deg theta + deg alpha + 2 so that at least a
    few interior indices survive the truncation edge.
    """
    phi = SymbolFunction.parse(phi)
    guard = phi.reach + theta.degree + alpha.degree + 2
    if M < guard:
        raise InputError(f"M={M} below the guard depth {guard} for this symbol")
    dom = basis_Kperp(theta, M, tail_cap=tail_cap)
    cod_head = thetaH2_basis(alpha, M, name="alpha", tail_cap=tail_cap)
    cod_tail = hminus_basis(M)
    images = [multiply(phi.value, v) for v in dom.vectors]
    n = M + 1
    upper = _pairing_matrix(images, cod_head)
    lower = _pairing_matrix(images, cod_tail)
    return BlockOperator(that=upper[:, :n], gamma_check=upper[:, n:],
                         gamma_hat=lower[:, :n], t_check=lower[:, n:],
                         theta=theta, alpha=alpha, M=M, edge=phi.reach)


def split_blocks(full: np.ndarray, theta: BlaschkeProduct,
                 alpha: BlaschkeProduct, M: int,
                 edge: int | None = None) -> BlockOperator:
    """Cut a full matrix on the Kperp sections into its four blocks."""
    full = np.asarray(full, dtype=np.complex128)
    n = M + 1
    if full.shape != (2 * n, 2 * n):
        raise DimensionError(f"full matrix {full.shape} does not match M={M}")
    return BlockOperator(that=full[:n, :n], gamma_check=full[:n, n:],
                         gamma_hat=full[n:, :n], t_check=full[n:, n:],
                         theta=theta, alpha=alpha, M=M, edge=edge)


def apply(op, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product in the operator's domain coordinates."""
    if isinstance(op, BlockOperator):
        return op.apply(x)
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (op.entries.shape[1],):
        raise DimensionError(
            f"vector of length {x.shape} for domain dimension {op.entries.shape[1]}")
    return op.entries @ x


# -- canonical shift blocks --------------------------------------------------
#
# The compressions of multiplication by z / zbar to the truncated sections
# have exactly-known matrices for every inner function (unimodularity makes
# the cross terms vanish): on thetaH2 the shift moves theta z^k to
# theta z^{k+1}, on Hminus it moves zbar^{k+1} to zbar^k (z) or zbar^{k+2}
# (zbar), with the truncation killing the top layer. Tests cross-check these
# against the generic builder.

def that_shift(M: int, power: int = 1) -> np.ndarray:
    """Matrix of multiplication by z (power=1) or zbar (power=-1) compressed
    to a thetaH2 section of depth M."""
    if power == 1:
        return np.eye(M + 1, k=-1, dtype=np.complex128)
    if power == -1:
        return np.eye(M + 1, k=1, dtype=np.complex128)
    raise InputError("power must be +1 or -1")


def tcheck_shift(M: int, power: int = 1) -> np.ndarray:
    """Matrix of multiplication by z (power=1) or zbar (power=-1) compressed
    to the Hminus section of depth M."""
    if power == 1:
        return np.eye(M + 1, k=1, dtype=np.complex128)
    if power == -1:
        return np.eye(M + 1, k=-1, dtype=np.complex128)
    raise InputError("power must be +1 or -1")


@functools.lru_cache(maxsize=128)
def conjugation_corner_maps(theta: BlaschkeProduct, alpha: BlaschkeProduct,
                            M: int, tail_cap: float = DEFAULT_TAIL_CAP):
    """Matrices of the two antilinear corner maps linking the sections.

    W1 represents theta z^k -> P-( C_alpha(z^k) ) from thetaH2@M to Hminus@M;
    W2 represents zbar^(j+1) -> theta * C_alpha(zbar^(j+1)) from Hminus@M into
    the alphaH2@M section (the image theta*alpha*z^j lies in both sections;
    alphaH2 coordinates are the ones the adjoint of a That block consumes).
    Both act on coordinates via x -> W conj(x) (antilinear).
    """
    al_basis = thetaH2_basis(alpha, M, name="alpha", tail_cap=tail_cap)
    hm_basis = hminus_basis(M)
    th = _theta_expansion(theta, M, tail_cap)

    images1 = [minus_part(conjugation_C(alpha, LaurentPolynomial.monomial(k),
                                        tail_cap=tail_cap))
               for k in range(M + 1)]
    W1 = _pairing_matrix(images1, hm_basis)

    images2 = [multiply(th, conjugation_C(alpha, LaurentPolynomial.monomial(-(j + 1)),
                                          tail_cap=tail_cap))
               for j in range(M + 1)]
    W2 = _pairing_matrix(images2, al_basis)
    return W1, W2


@functools.lru_cache(maxsize=128)
def _theta_expansion(theta: BlaschkeProduct, M: int, cap: float) -> LaurentPolynomial:
    from .inner import expand
    return expand(theta, max(theta.degree_for_cap(cap), M + theta.degree + 2),
                  tail_cap=None)
