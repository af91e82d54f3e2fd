"""The Ruelle transfer operator realized exactly on Laurent polynomials.

For a weight W = |m0|^2 the operator (R f)(z) = (1/N) sum_{w^N=z} W(w) f(w)
acts on Fourier coefficients by (Rf)^(m) = sum_b W^(Nm - b) f^(b).  Degrees
contract under R, so the operator leaves a finite coefficient block invariant;
that block is realized as a dense matrix whose peripheral spectrum drives the
support and cascade dichotomies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError, PreconditionError
from .laurent import LaurentPolynomial, one
from .scalars import Scalar, ZERO

PERIPHERAL_TOL = 1e-9
BLOCK_DIMENSION_CAP = 2001


def weight_from_filter(m0: LaurentPolynomial) -> LaurentPolynomial:
    """|m0|^2 as a Laurent polynomial: W^(k) = sum_j conj(a_j) a_{j+k}."""
    return m0.conj_reciprocal() * m0


def apply_haar_average(N: int, f: LaurentPolynomial, n: int) -> LaurentPolynomial:
    """n-fold transfer with unit weight: keeps exponents divisible by N^n and
    maps exponent N^n j to j."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    if n == 0:
        return f
    step = N ** n
    return LaurentPolynomial(
        {k // step: v for k, v in f.coeffs.items() if k % step == 0}
    )


class TransferOperator:
    """Transfer operator of scale N with weight W acting on Laurent polynomials."""

    def __init__(self, scale: int, weight: LaurentPolynomial):
        if scale < 2:
            raise PreconditionError("scale must be >= 2")
        self.scale = scale
        self.weight = weight
        self._wk_cache: dict[tuple[int, int], Scalar] = {}

    @classmethod
    def from_filter(cls, m0: LaurentPolynomial, scale: int) -> "TransferOperator":
        return cls(scale, weight_from_filter(m0))

    @property
    def is_exact(self) -> bool:
        return self.weight.is_exact

    @property
    def block_halfwidth(self) -> int:
        """Smallest D with R-invariance of coefficients in [-D, D]:
        deg(Rf) <= (deg f + deg W)/N forces D >= deg W/(N - 1)."""
        d = self.weight.degree()
        return -(-d // (self.scale - 1))

    def normalization_defect(self) -> float:
        """Max deviation of R(1) from 1 (0.0 when R(1) = 1 exactly)."""
        r1 = self.apply(one())
        diff = r1 - one()
        if diff.is_zero():
            return 0.0
        return max(abs(c.to_complex()) for c in diff.coeffs.values())

    def is_normalized(self, tol: float = 0.0) -> bool:
        return self.normalization_defect() <= tol

    def apply(self, f: LaurentPolynomial) -> LaurentPolynomial:
        """(Rf)^(m) = sum_b W^(Nm - b) f^(b), exact in the exact tier."""
        N = self.scale
        out: dict[int, Scalar] = {}
        for b, fb in f.coeffs.items():
            for k, wk in self.weight.coeffs.items():
                total = k + b
                if total % N:
                    continue
                m = total // N
                s = out.get(m)
                out[m] = wk * fb if s is None else s + wk * fb
        return LaurentPolynomial(out)

    def iterate_weight(self, n: int, support_cap: int = 10 ** 6) -> LaurentPolynomial:
        """The product weight W(z) W(z^N) ... W(z^(N^(n-1))), fully expanded."""
        if n < 1:
            raise PreconditionError("n must be >= 1")
        out = self.weight
        for j in range(1, n):
            out = out * self.weight.compose_power(self.scale ** j)
            if len(out.coeffs) > support_cap:
                raise CapExceededError(
                    f"iterated weight support exceeds cap {support_cap}"
                )
        return out

    def _iterate_coefficient(self, k: int, idx: int) -> Scalar:
        """Single Fourier coefficient of the k-fold product weight.

        Uses W^(k)(z) = W(z) W^(k-1)(z^N):
            coeff_k(idx) = sum_j W^(idx - N j) coeff_{k-1}(j);
        the needed indices contract like |j| <= (|idx| + deg W)/N, so the
        memoized recursion touches only a thin tube of (k, idx) pairs.
        """
        if k == 1:
            return self.weight[idx]
        bound = self.weight.degree() * (self.scale ** k - 1) // (self.scale - 1)
        if abs(idx) > bound:
            return ZERO
        key = (k, idx)
        hit = self._wk_cache.get(key)
        if hit is not None:
            return hit
        N = self.scale
        total = ZERO
        for w_exp, w in self.weight.coeffs.items():
            d = idx - w_exp
            if d % N:
                continue
            term = self._iterate_coefficient(k - 1, d // N)
            if not term.is_zero():
                total = total + w * term
        self._wk_cache[key] = total
        return total


@dataclass
class SpectralBlock:
    """Dense realization of the transfer operator on its invariant
    coefficient block [-D, D], with eigendata and peripheral flags."""

    scale: int
    halfwidth: int
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    fixes_constant: bool
    eigenvalue_one_multiplicity: int
    has_other_peripheral: bool
    eigenvalue_one_simple_exact: bool | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return 2 * self.halfwidth + 1


def _exact_rank(rows: list[list[Scalar]]) -> int:
    """Rank of a matrix of exact scalars by fraction-free-ish elimination."""
    rows = [list(r) for r in rows]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < n_rows and col < n_cols:
        pivot = next(
            (r for r in range(rank, n_rows) if not rows[r][col].is_zero()), None
        )
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, n_rows):
            factor = rows[r][col] / pv
            if factor.is_zero():
                continue
            rows[r] = [
                rows[r][c] - factor * rows[rank][c] for c in range(n_cols)
            ]
        rank += 1
        col += 1
    return rank


def spectral_block(op: TransferOperator) -> SpectralBlock:
    """Eigen-decomposition of the invariant block M[m, b] = W^(Nm - b)."""
    D = op.block_halfwidth
    dim = 2 * D + 1
    if dim > BLOCK_DIMENSION_CAP:
        raise CapExceededError(f"block dimension {dim} exceeds cap {BLOCK_DIMENSION_CAP}")
    N = op.scale
    idx = range(-D, D + 1)
    entries = [[op.weight[N * m - b] for b in idx] for m in idx]
    matrix = np.array([[e.to_complex() for e in row] for row in entries])
    eigenvalues, eigenvectors = np.linalg.eig(matrix)

    # R fixes the constant function iff the operator is normalized
    fixes_constant = op.apply(one()) == one()
    mult = int(np.sum(np.abs(eigenvalues - 1.0) <= PERIPHERAL_TOL))
    peripheral = np.abs(np.abs(eigenvalues) - 1.0) <= PERIPHERAL_TOL
    other = bool(np.any(peripheral & (np.abs(eigenvalues - 1.0) > PERIPHERAL_TOL)))

    simple_exact = None
    if op.is_exact:
        shifted = [
            [entries[i][j] - (Scalar(1) if i == j else ZERO) for j in range(dim)]
            for i in range(dim)
        ]
        simple_exact = _exact_rank(shifted) == dim - 1
    return SpectralBlock(
        scale=N,
        halfwidth=D,
        matrix=matrix,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        fixes_constant=fixes_constant,
        eigenvalue_one_multiplicity=mult,
        has_other_peripheral=other,
        eigenvalue_one_simple_exact=simple_exact,
    )
