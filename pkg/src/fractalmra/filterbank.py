"""Filter banks attached to a digit system.

The canonical low-pass filter of (N, S) is m0(z) = p^(-1/2) sum z^a over the
digits.  The bank is completed by gap-filling high-pass filters (monomials at
the unused digits) and detail-filling filters (p-th-root-of-unity modulations
of m0).  The module also provides the subsampled pairing

    <m, m'>_N (z) = (1/N) sum_{w^N = z} conj(m(w)) m'(w),

the polyphase unitarity defect, and the loop-group action A: m -> A(z^N) m(z)
with its connecting matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitaryError, PreconditionError, ScaleMismatchError
from .ifs import DigitSystem
from .laurent import LaurentPolynomial, monomial, one, zero
from .scalars import Scalar

UNITARITY_TOL = 1e-10


def canonical_lowpass(sys: DigitSystem) -> LaurentPolynomial:
    """Low-pass filter p^(-1/2) sum_i z^(a_i), exact in Q(sqrt(p))."""
    c = Scalar.inv_sqrt(sys.p)
    return LaurentPolynomial({a: c for a in sys.digits})


def detail_filters(sys: DigitSystem) -> list[LaurentPolynomial]:
    """The p-1 modulated filters p^(-1/2) sum_i eta^(k(i-1)) z^(a_i).

    Exact tier for p <= 2 (eta = -1); complex coefficients otherwise.
    """
    p = sys.p
    out = []
    for k in range(1, p):
        coeffs = {}
        for i, a in enumerate(sys.digits):
            if p == 2:
                c = Scalar.inv_sqrt(2)
                coeffs[a] = c if (k * i) % 2 == 0 else -c
            else:
                c = cmath.exp(2j * math.pi * k * i / p) / math.sqrt(p)
                coeffs[a] = Scalar.approx(c)
        out.append(LaurentPolynomial(coeffs))
    return out


@dataclass(frozen=True)
class FilterBank:
    """An N-tuple of filters (m_0, ..., m_{N-1}) over scale N."""

    scale: int
    filters: tuple[LaurentPolynomial, ...]

    def __post_init__(self):
        if len(self.filters) != self.scale:
            raise PreconditionError(
                f"bank over scale {self.scale} needs {self.scale} filters, "
                f"got {len(self.filters)}"
            )

    @property
    def is_exact(self) -> bool:
        return all(f.is_exact for f in self.filters)

    def reordered(self, perm) -> "FilterBank":
        """Permute the filters (ordering is a convention, not a property)."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.scale)):
            raise PreconditionError(f"not a permutation of 0..{self.scale - 1}: {perm}")
        return FilterBank(self.scale, tuple(self.filters[i] for i in perm))


def build_bank(sys: DigitSystem) -> FilterBank:
    """Canonical bank: low-pass, then gap monomials (ascending gap digit),
    then detail filters (ascending modulation index)."""
    filters = [canonical_lowpass(sys)]
    filters += [monomial(d) for d in sys.gap_digits]
    filters += detail_filters(sys)
    return FilterBank(sys.scale, tuple(filters))


def pairing(m: LaurentPolynomial, m2: LaurentPolynomial, N: int) -> LaurentPolynomial:
    """<m, m2>_N: the unique Laurent polynomial with
    (1/N) sum_{w^N=z} conj(m(w)) m2(w) = sum_n c_n z^n,
    c_n = sum_k conj(m^(k)) m2^(k + N n)."""
    out: dict[int, Scalar] = {}
    for k, a in m.coeffs.items():
        ac = a.conjugate()
        for k2, b in m2.coeffs.items():
            d = k2 - k
            if d % N:
                continue
            n = d // N
            s = out.get(n)
            out[n] = ac * b if s is None else s + ac * b
    return LaurentPolynomial(out)


def _gram(bank: FilterBank) -> list[list[LaurentPolynomial]]:
    return [
        [pairing(mi, mj, bank.scale) for mj in bank.filters] for mi in bank.filters
    ]


def unitarity_defect(bank: FilterBank, samples: int = 64) -> float:
    """Distance of the polyphase matrix from unitary.

    The pairing Gram G_ij = <m_i, m_j>_N equals the identity iff the bank is
    unitary.  For exact banks the Gram is checked coefficient-by-coefficient
    and a clean pass reports exactly 0.  Otherwise the defect is the larger of
    the maximal coefficient deviation and the maximal spectral norm of
    G(z) - I over `samples` points of the torus.
    """
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    N = bank.scale
    gram = _gram(bank)
    coeff_dev = 0.0
    exact_pass = bank.is_exact
    for i in range(N):
        for j in range(N):
            diff = gram[i][j] - (one() if i == j else zero())
            if diff.is_zero():
                continue
            exact_pass = False
            coeff_dev = max(
                coeff_dev, max(abs(c.to_complex()) for c in diff.coeffs.values())
            )
    if exact_pass:
        return 0.0
    ts = np.arange(samples) / samples
    sample_dev = 0.0
    values = [[gram[i][j].eval_turns(ts) for j in range(N)] for i in range(N)]
    for s in range(samples):
        g = np.array([[values[i][j][s] for j in range(N)] for i in range(N)])
        sample_dev = max(sample_dev, float(np.linalg.norm(g - np.eye(N), 2)))
    return max(coeff_dev, sample_dev)


@dataclass(frozen=True)
class LoopMatrix:
    """An N x N matrix of Laurent polynomials, acting on banks by
    m -> A(z^N) m(z)."""

    scale: int
    entries: tuple[tuple[LaurentPolynomial, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.scale or any(
            len(row) != self.scale for row in self.entries
        ):
            raise PreconditionError("loop matrix must be N x N")

    @classmethod
    def identity(cls, N: int) -> "LoopMatrix":
        return cls(
            N,
            tuple(
                tuple(one() if i == j else zero() for j in range(N)) for i in range(N)
            ),
        )

    @classmethod
    def diagonal(cls, diag) -> "LoopMatrix":
        diag = tuple(diag)
        N = len(diag)
        return cls(
            N,
            tuple(
                tuple(diag[i] if i == j else zero() for j in range(N))
                for i in range(N)
            ),
        )

    @property
    def is_exact(self) -> bool:
        return all(e.is_exact for row in self.entries for e in row)

    def unitarity_defect(self, samples: int = 64) -> float:
        """Distance of A(z) from unitary on the torus (0 when exactly unitary)."""
        N = self.scale
        coeff_dev = 0.0
        exact_pass = self.is_exact
        prods = {}
        for i in range(N):
            for j in range(N):
                acc = zero()
                for k in range(N):
                    acc = acc + self.entries[i][k] * self.entries[j][k].conj_reciprocal()
                diff = acc - (one() if i == j else zero())
                prods[i, j] = diff
                if not diff.is_zero():
                    exact_pass = False
                    coeff_dev = max(
                        coeff_dev,
                        max(abs(c.to_complex()) for c in diff.coeffs.values()),
                    )
        if exact_pass:
            return 0.0
        ts = np.arange(samples) / samples
        dev = coeff_dev
        for t in ts:
            d = np.array(
                [[prods[i, j].eval_turns(float(t)) for j in range(N)] for i in range(N)]
            )
            dev = max(dev, float(np.linalg.norm(d, 2)))
        return dev


def loop_apply(A: LoopMatrix, bank: FilterBank) -> FilterBank:
    """Transformed bank with components sum_k A_jk(z^N) m_k(z)."""
    if A.scale != bank.scale:
        raise ScaleMismatchError(
            f"loop matrix scale {A.scale} != bank scale {bank.scale}"
        )
    N = bank.scale
    out = []
    for j in range(N):
        acc = zero()
        for k in range(N):
            entry = A.entries[j][k]
            if entry.is_zero():
                continue
            acc = acc + entry.compose_power(N) * bank.filters[k]
        out.append(acc)
    return FilterBank(N, tuple(out))


def connecting_matrix(
    bank: FilterBank, bank2: FilterBank, tol: float = 1e-8
) -> LoopMatrix:
    """The unique loop matrix A with loop_apply(A, bank) = bank2,
    A_jk = <m_k, m'_j>_N.  Both banks must be unitary."""
    if bank.scale != bank2.scale:
        raise ScaleMismatchError("banks have different scales")
    for which, b in (("first", bank), ("second", bank2)):
        defect = unitarity_defect(b)
        if defect > tol:
            raise NotUnitaryError(f"{which} bank has unitarity defect {defect:.3e}")
    N = bank.scale
    entries = tuple(
        tuple(pairing(bank.filters[k], bank2.filters[j], N) for k in range(N))
        for j in range(N)
    )
    return LoopMatrix(N, entries)
