"""Affine digit systems: attractor geometry, cylinder addressing, and the
Fourier transform of the Hutchinson measure.

A digit system (N, S) with S a set of distinct digits in {0, ..., N-1}
generates the iterated function system sigma_a(x) = (x + a)/N.  Its attractor
is a Cantor-type set of Hausdorff dimension log_N(#S); the middle-third
Cantor set is (3, {0, 2}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError, InvalidDigitError, PreconditionError

DEFAULT_TRANSFORM_DEPTH = 40


@dataclass(frozen=True, init=False)
class DigitSystem:
    """Scale N >= 2 together with a nonempty set of digits in {0, ..., N-1}."""

    scale: int
    digits: tuple[int, ...]

    def __init__(self, scale: int, digits):
        digits = tuple(sorted(int(d) for d in digits))
        if scale < 2:
            raise PreconditionError(f"scale must be >= 2, got {scale}")
        if not digits:
            raise PreconditionError("digit set must be nonempty")
        if len(set(digits)) != len(digits):
            raise InvalidDigitError(f"digits must be distinct: {digits}")
        if digits[0] < 0 or digits[-1] >= scale:
            raise InvalidDigitError(
                f"digits must lie in [0, {scale - 1}]: {digits}"
            )
        object.__setattr__(self, "scale", int(scale))
        object.__setattr__(self, "digits", digits)

    @property
    def p(self) -> int:
        """Number of digits (= number of IFS branches)."""
        return len(self.digits)

    @property
    def gap_digits(self) -> tuple[int, ...]:
        """Elements of {0, ..., N-1} not used by the system."""
        used = set(self.digits)
        return tuple(d for d in range(self.scale) if d not in used)

    def map_point(self, digit: int, x: Fraction) -> Fraction:
        """Apply the branch sigma_digit(x) = (x + digit)/N."""
        if digit not in self.digits:
            raise InvalidDigitError(f"{digit} is not a digit of {self}")
        return (x + digit) / self.scale

    def __str__(self):
        return f"({self.scale},{{{','.join(map(str, self.digits))}}})"


@dataclass(frozen=True, init=False)
class CylinderAddress:
    """A depth-n cylinder of the attractor, addressed by its digit word."""

    system: DigitSystem
    word: tuple[int, ...]

    def __init__(self, system: DigitSystem, word):
        word = tuple(int(a) for a in word)
        if not word:
            raise PreconditionError("cylinder word must have depth >= 1")
        for a in word:
            if a not in system.digits:
                raise InvalidDigitError(f"letter {a} not in digit set {system.digits}")
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "word", word)

    @property
    def depth(self) -> int:
        return len(self.word)


def hausdorff_dimension(sys: DigitSystem) -> float:
    """Dimension log_N(p) of the attractor and of the Hutchinson measure."""
    return math.log(sys.p) / math.log(sys.scale)


def cylinder_translate_index(addr: CylinderAddress) -> tuple[int, int]:
    """Map a cylinder to the (depth, translate) index of its basis vector.

    The depth-n cylinder with word (a_1, ..., a_n) is the scaled translate
    N^-n (C + l) with l = sum a_k N^(n-k); its indicator is the lattice basis
    vector at resolution n and translate l, up to the norm factor p^(-n/2).
    """
    n = addr.depth
    N = addr.system.scale
    l = 0
    for a in addr.word:
        l = l * N + a
    return n, l


def attractor_sample(sys: DigitSystem, depth: int, cap: int = 10 ** 6) -> list[Fraction]:
    """Left endpoints of all depth-n cylinders, as exact sorted rationals."""
    if depth < 0:
        raise PreconditionError("depth must be >= 0")
    if sys.p ** depth > cap:
        raise CapExceededError(f"p^depth = {sys.p ** depth} exceeds cap {cap}")
    points = [Fraction(0)]
    for level in range(1, depth + 1):
        scale = Fraction(1, sys.scale ** level)
        points = [x + a * scale for x in points for a in sys.digits]
    return sorted(points)


class HutchinsonTransform:
    """Truncated-product evaluation of B(k), the Fourier transform of the
    Hutchinson measure: B(k) = prod_j (1/p) sum_i exp(2 pi i a_i k / N^j).

    Values are cached per frequency; the truncation error after J factors is
    bounded a posteriori by exp(2 pi |k| a_max N^-J / (N-1)) - 1.
    """

    def __init__(self, system: DigitSystem, depth: int = DEFAULT_TRANSFORM_DEPTH):
        if depth < 1:
            raise PreconditionError("product depth must be >= 1")
        self.system = system
        self.depth = depth
        self._cache: dict = {}

    def value(self, k) -> complex:
        key = k
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        sys = self.system
        kf = float(k)
        out = 1.0 + 0j
        scale = 1.0
        for _ in range(self.depth):
            scale /= sys.scale
            phase = 2.0 * math.pi * kf * scale
            out *= sum(cmath.exp(1j * phase * a) for a in sys.digits) / sys.p
        self._cache[key] = out
        return out

    def tail_bound(self, k) -> float:
        """Upper bound on |B_truncated(k) - B(k)| from the dropped factors."""
        sys = self.system
        a_max = sys.digits[-1]
        geom = a_max * sys.scale ** (-self.depth) / (sys.scale - 1)
        return math.expm1(2.0 * math.pi * abs(float(k)) * geom)


def hutchinson_transform(sys: DigitSystem, k, depth: int = DEFAULT_TRANSFORM_DEPTH) -> complex:
    """B(k) as a truncated product of J refinement factors."""
    return HutchinsonTransform(sys, depth).value(k)
