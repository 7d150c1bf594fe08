"""Labeled orthonormal bases of the subspaces the operators act between."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .laurent import LaurentPolynomial, inner_product


class OrthonormalBasis:
    """An ordered orthonormal family spanning one of the canonical subspaces.

    `kind` drives the logic ("model", "thetaH2", "Hminus", "model_perp",
    "admissible"); `label` is the human-readable tag used verbatim in JSON
    reports. `inner` is the Blaschke product the space is attached to (None
    for Hminus), `depth` the truncation M where applicable.
    """

    def __init__(self, label: str, vectors, *, kind: str, inner=None,
                 depth: int | None = None):
        self.label = label
        self.vectors = tuple(vectors)
        self.kind = kind
        self.inner = inner
        self.depth = depth

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    def band(self) -> tuple[int, int]:
        lo = min(v.lo for v in self.vectors)
        hi = max(v.hi for v in self.vectors)
        return lo, hi

    def stacked(self, lo: int | None = None, hi: int | None = None) -> np.ndarray:
        """Dense matrix with one basis vector per row over a common band."""
        if lo is None or hi is None:
            blo, bhi = self.band()
            lo = blo if lo is None else lo
            hi = bhi if hi is None else hi
        out = np.zeros((len(self.vectors), hi - lo + 1), dtype=np.complex128)
        for i, v in enumerate(self.vectors):
            out[i] = v.dense(lo, hi)
        return out

    def _stack(self):
        # dense matrix (and its conjugate) over the basis band, built once
        cached = getattr(self, "_stack_cache", None)
        if cached is None:
            lo, hi = self.band()
            V = self.stacked(lo, hi)
            cached = (lo, hi, V, V.conj(),
                      np.array([v.tail_bound for v in self.vectors]))
            self._stack_cache = cached
        return cached

    def gram(self) -> np.ndarray:
        _, _, v, vc, _ = self._stack()
        return v @ vc.T

    def gram_defect(self) -> float:
        g = self.gram()
        return float(np.max(np.abs(g - np.eye(len(self.vectors))))) if len(self.vectors) else 0.0

    def coords(self, f: LaurentPolynomial) -> np.ndarray:
        """Coefficient vector of the orthogonal projection of f onto the span."""
        if not self.vectors:
            return np.zeros(0, dtype=np.complex128)
        lo, hi, _, Vc, _ = self._stack()
        return Vc @ f.dense(lo, hi)

    def reconstruct(self, x) -> LaurentPolynomial:
        x = np.asarray(x, dtype=np.complex128)
        if len(x) != len(self.vectors):
            raise DimensionError(
                f"{len(x)} coordinates for a {len(self.vectors)}-dim basis")
        if not self.vectors:
            return LaurentPolynomial.zero()
        lo, _, V, _, tails = self._stack()
        return LaurentPolynomial._from_dense(lo, x @ V,
                                             float(np.abs(x) @ tails))

    def coords_and_defect(self, f: LaurentPolynomial):
        """Projection coordinates together with the norm of the residual
        component outside the span."""
        if not self.vectors:
            return np.zeros(0, dtype=np.complex128), f.norm()
        lo, hi, V, Vc, _ = self._stack()
        fv = f.dense(lo, hi)
        x = Vc @ fv
        res_sq = float(np.sum(np.abs(fv - x @ V) ** 2))
        # mass of f strictly outside the basis band, summed directly
        if not f.is_zero():
            if f.lo < lo:
                seg = f._data[:min(lo - f.lo, len(f._data))]
                res_sq += float(np.sum(np.abs(seg) ** 2))
            if f.hi > hi:
                start = max(0, hi + 1 - f.lo)
                res_sq += float(np.sum(np.abs(f._data[start:]) ** 2))
        return x, res_sq ** 0.5

    def membership_defect(self, f: LaurentPolynomial) -> float:
        """Norm of the component of f outside the span."""
        return self.coords_and_defect(f)[1]

    def __repr__(self) -> str:
        return f"OrthonormalBasis({self.label!r}, dim={self.dim})"
