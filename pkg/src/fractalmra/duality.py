"""Spectral-set duality: dual digit sets, candidate spectra, and the
orthogonality structure of exponentials on the attractor.

A dual pair (S, B) makes the p x p matrix p^(-1/2) exp(2 pi i a b / N)
unitary; the induced candidate spectrum Lambda collects the base-N digit
strings over B.  Unitarity is decided exactly: column orthogonality reduces
to vanishing sums of N-th roots of unity, checked in Z[x]/Phi_N(x).

Throughout, attractors of one-dimensional systems with digits inside
{0, ..., N-1} are assumed to meet their nonzero integer translates in at
most boundary points, so exponential inner products on the attractor are
exactly the transform values B(n - n').
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceededError, PreconditionError
from .filterbank import canonical_lowpass
from .ifs import DEFAULT_TRANSFORM_DEPTH, DigitSystem, HutchinsonTransform

DUAL_TOL = 1e-10
LAMBDA_CAP = 10 ** 6
SIGNED_LAMBDA_DEPTH = 12


# -- exact vanishing of root-of-unity sums ----------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        coef = num[-1]
        q[shift] = coef
        for i, d in enumerate(den):
            num[shift + i] -= coef * d
        _poly_trim(num)
    return _poly_trim(q), num


def _cyclotomic(N: int, _cache={1: [-1, 1]}) -> list[int]:
    """Coefficients of the N-th cyclotomic polynomial (ascending)."""
    if N in _cache:
        return _cache[N]
    num = [0] * (N + 1)
    num[0], num[N] = -1, 1
    den = [1]
    for d in range(1, N):
        if N % d == 0:
            den = _poly_mul(den, _cyclotomic(d))
    q, r = _poly_divmod(num, den)
    if r:
        raise AssertionError(f"cyclotomic division left a remainder for N={N}")
    _cache[N] = q
    return q


def _root_sum_vanishes(exponents, N: int) -> bool:
    """Whether sum_j omega^(e_j) = 0 for omega a primitive N-th root of 1."""
    poly = [0] * N
    for e in exponents:
        poly[e % N] += 1
    _, r = _poly_divmod(_poly_trim(poly), _cyclotomic(N))
    return not r


# -- dual pairs --------------------------------------------------------------

@dataclass(frozen=True)
class SpectralPair:
    """A digit system with a candidate dual digit set and its verdict."""

    system: DigitSystem
    dual: tuple[int, ...]
    defect: float
    exact_unitary: bool

    @property
    def verdict(self) -> str:
        return "Dual" if self.defect <= DUAL_TOL else "NotDual"

    @property
    def is_dual(self) -> bool:
        return self.verdict == "Dual"

    def matrix(self) -> np.ndarray:
        sys = self.system
        p = sys.p
        return np.array(
            [
                [
                    np.exp(2j * math.pi * a * b / sys.scale) / math.sqrt(p)
                    for b in self.dual
                ]
                for a in sys.digits
            ]
        )


def dual_matrix(sys: DigitSystem, dual) -> SpectralPair:
    """Build M_N(S, B) and decide unitarity.

    Column orthogonality says sum_j omega^(a_j (b - b')) vanishes for every
    pair of distinct dual digits; that is decided exactly over the N-th
    cyclotomic field, with the numeric operator defect reported alongside.
    """
    dual = tuple(int(b) for b in dual)
    if len(dual) != sys.p:
        raise PreconditionError(
            f"dual set must have {sys.p} elements, got {len(dual)}"
        )
    if len(set(dual)) != len(dual):
        raise PreconditionError(f"dual digits must be distinct: {dual}")
    if 0 not in dual:
        raise PreconditionError("dual set must contain 0")
    N = sys.scale
    exact = True
    for i, b in enumerate(dual):
        for b2 in dual[i + 1:]:
            if not _root_sum_vanishes([a * (b2 - b) for a in sys.digits], N):
                exact = False
                break
        if not exact:
            break
    if exact:
        defect = 0.0
    else:
        pair = SpectralPair(sys, dual, 0.0, False)
        m = pair.matrix()
        defect = float(
            np.linalg.norm(m.conj().T @ m - np.eye(sys.p), 2)
        )
    return SpectralPair(sys, dual, defect, exact)


@dataclass(frozen=True)
class LambdaSet:
    """Sorted prefix of the candidate spectrum sum n_i N^i, n_i in B."""

    pair: SpectralPair
    prefix: tuple[int, ...]


def lambda_set(
    pair: SpectralPair, count: int, signed_depth: int = SIGNED_LAMBDA_DEPTH
) -> LambdaSet:
    """First `count` elements of Lambda_N(B) in increasing order.

    Nonnegative dual digits: breadth-first growth by digit position, exact.
    Signed dual digits make Lambda two-sided and non-monotone in string
    length, so only strings up to `signed_depth` digits are enumerated and
    the prefix collects the `count` elements of smallest magnitude, sorted
    ascending.
    """
    if not pair.is_dual:
        raise PreconditionError("lambda_set requires a Dual pair")
    if count < 1:
        raise PreconditionError("count must be >= 1")
    if count > LAMBDA_CAP:
        raise CapExceededError(f"count exceeds cap {LAMBDA_CAP}")
    N = pair.system.scale
    B = pair.dual
    if min(B) < 0:
        values = {0}
        layer = {0}
        for _ in range(signed_depth):
            layer = {b + N * t for t in layer for b in B}
            values |= layer
        nearest = sorted(values, key=lambda n: (abs(n), n))[:count]
        return LambdaSet(pair, tuple(sorted(nearest)))
    values = {0}
    depth = 0
    while True:
        depth += 1
        new = {b + N * t for t in values for b in B}
        grew = not new <= values
        values |= new
        ordered = sorted(values)
        if len(ordered) >= count and N ** depth > ordered[count - 1]:
            return LambdaSet(pair, tuple(ordered[:count]))
        if not grew:
            return LambdaSet(pair, tuple(ordered[:count]))


@dataclass(frozen=True)
class BCycle:
    """A cycle of the inverse branches xi -> (xi - b)/N, reported by its
    torus angles, the digit word that closes it, and |m0|^2 at the points."""

    angles: tuple[Fraction, ...]
    word: tuple[int, ...]
    values: tuple[float, ...]

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.angles)


@dataclass(frozen=True)
class BCycleReport:
    max_length: int
    cycles: tuple[BCycle, ...]
    trivial_only: bool


def b_cycles(
    pair: SpectralPair, K: int = 6, tol: float = 1e-9, word_cap: int = 10 ** 6
) -> BCycleReport:
    """Enumerate dual-digit cycles up to word length K.

    A word (b_1, ..., b_k) closes at xi_1 = (b_k + N b_{k-1} + ... +
    N^(k-1) b_1)/(N^k - 1); the cycle is kept when the canonical low-pass
    modulus |m0|^2 equals p (within tol) at every point."""
    if K < 1:
        raise PreconditionError("K must be >= 1")
    sys = pair.system
    N, p = sys.scale, sys.p
    if p ** K > word_cap:
        raise CapExceededError(f"p^K exceeds cap {word_cap}")
    m0 = canonical_lowpass(sys)

    def weight(theta: Fraction) -> float:
        return abs(m0.eval_turns(float(theta % 1))) ** 2

    seen: set[frozenset] = set()
    found: list[BCycle] = []
    words: list[tuple[int, ...]] = [()]
    for _ in range(K):
        words = [w + (b,) for w in words for b in pair.dual]
        for word in words:
            k = len(word)
            modulus = N ** k - 1
            # value of the word read with b_k in the units place
            c = 0
            for b in word:
                c = c * N + b
            angles = []
            rotated = word
            cs = c
            for _ in range(k):
                angles.append(Fraction(cs, modulus) % 1)
                # rotating the word multiplies the value by N mod (N^k - 1)
                cs = (cs * N) % modulus if modulus else 0
                rotated = rotated[1:] + rotated[:1]
            key = frozenset(angles)
            if key in seen:
                continue
            values = [weight(a) for a in angles]
            if all(abs(v - p) <= tol for v in values):
                seen.add(key)
                start = angles.index(min(angles))
                order = list(range(start, len(angles))) + list(range(start))
                found.append(
                    BCycle(
                        tuple(angles[i] for i in order),
                        word,
                        tuple(values[i] for i in order),
                    )
                )
    found.sort(key=lambda cyc: cyc.angles)
    trivial_only = all(c.is_trivial() for c in found)
    return BCycleReport(max_length=K, cycles=tuple(found), trivial_only=trivial_only)


# -- orthogonality of exponentials -------------------------------------------

def exponential_gram(
    sys: DigitSystem, exponents, depth: int = DEFAULT_TRANSFORM_DEPTH
) -> np.ndarray:
    """Gram matrix G_ij = B(n_j - n_i) of exponentials in L^2(C, mu)."""
    exponents = list(exponents)
    transform = HutchinsonTransform(sys, depth)
    n = len(exponents)
    gram = np.empty((n, n), dtype=complex)
    for i, a in enumerate(exponents):
        for j, b in enumerate(exponents):
            gram[i, j] = transform.value(b - a)
    return gram


def onb_defect(
    pair: SpectralPair,
    xi: float,
    count: int,
    depth: int = DEFAULT_TRANSFORM_DEPTH,
) -> list[float]:
    """Nondecreasing partial sums of |B(xi - n)|^2 over the spectrum prefix.

    The full sum equals 1 a.e. exactly when the exponentials form an ONB;
    each partial sum obeys the Bessel bound <= 1."""
    if not pair.is_dual:
        raise PreconditionError("onb_defect requires a Dual pair")
    prefix = lambda_set(pair, count).prefix
    transform = HutchinsonTransform(pair.system, depth)
    sums = []
    acc = 0.0
    for n in prefix:
        acc += abs(transform.value(xi - n)) ** 2
        sums.append(acc)
    return sums


def spectrum_sum(
    pair: SpectralPair,
    xi: float,
    count: int,
    depth: int = DEFAULT_TRANSFORM_DEPTH,
) -> float:
    """Truncated spectral sum F(xi) = sum over the Lambda prefix of
    |B(xi - n)|^2.

    The full sum is the canonical fixed point of the dual transfer operator,
    and equals 1 a.e. exactly when the exponentials form an ONB.  Truncations
    transport exactly: R_B applied to the sum over a finite P gives the sum
    over B + N P."""
    transform = HutchinsonTransform(pair.system, depth)
    prefix = lambda_set(pair, count).prefix
    return sum(abs(transform.value(xi - n)) ** 2 for n in prefix)


def frequency_sum(
    pair: SpectralPair,
    xi: float,
    frequencies,
    depth: int = DEFAULT_TRANSFORM_DEPTH,
) -> float:
    """sum_{n in frequencies} |B(xi - n)|^2 over an explicit frequency set."""
    transform = HutchinsonTransform(pair.system, depth)
    return sum(abs(transform.value(xi - n)) ** 2 for n in frequencies)


def dual_transfer_eval(pair: SpectralPair, f, xi, n: int = 1) -> float:
    """n-fold dual transfer operator by full branch expansion:

        (R_B f)(xi) = (1/p) sum_b |m0((xi - b)/N)|^2 f((xi - b)/N).

    Exact branch points when xi is a Fraction.  Unlike the torus-side
    operator, R_B does not preserve 1-periodicity."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    if n > 12:
        raise CapExceededError("branch expansion capped at n = 12")
    sys = pair.system
    N, p = sys.scale, sys.p
    m0 = canonical_lowpass(sys)

    def weight(eta) -> float:
        return abs(m0.eval_turns(float(eta))) ** 2

    def recurse(point, level: int) -> float:
        if level == 0:
            return float(f(point))
        total = 0.0
        for b in pair.dual:
            child = (point - b) / N
            total += weight(child) * recurse(child, level - 1)
        return total / p
    return recurse(Fraction(xi) if isinstance(xi, (int, Fraction)) else float(xi), n)
