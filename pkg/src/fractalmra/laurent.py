"""Sparse Laurent polynomials with Scalar coefficients.

These carry the low-pass/high-pass filters, the transfer-operator weights
|m0|^2, correlation functions of lattice vectors, and loop-matrix entries.
Coefficients are Scalars, so arithmetic is exact whenever the inputs are.
"""

from __future__ import annotations

import math

import numpy as np

from .scalars import Scalar, ZERO


class LaurentPolynomial:
    """Finitely supported map exponent -> coefficient, f(z) = sum a_k z^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Scalar.coerce(v)
                if not v.is_zero():
                    data[int(k)] = v
        self.coeffs = data

    # -- inspection ---------------------------------------------------------

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs.get(k, ZERO)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def items(self):
        return [(k, self.coeffs[k]) for k in sorted(self.coeffs)]

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.coeffs.values())

    def degree(self) -> int:
        """Largest absolute exponent in the support (0 for the zero polynomial)."""
        if not self.coeffs:
            return 0
        return max(abs(k) for k in self.coeffs)

    def coefficient_norm_sq(self) -> Scalar:
        """sum_k |a_k|^2 (Parseval norm on the torus)."""
        total = ZERO
        for c in self.coeffs.values():
            total = total + c.abs_sq()
        return total

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        data = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = data.get(k, ZERO) + v
            if s.is_zero():
                data.pop(k, None)
            else:
                data[k] = s
        out = LaurentPolynomial()
        out.coeffs = data
        return out

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial()
        out.coeffs = {k: -v for k, v in self.coeffs.items()}
        return out

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            c = Scalar.coerce(other)
            if c.is_zero():
                return LaurentPolynomial()
            out = LaurentPolynomial()
            out.coeffs = {k: v * c for k, v in self.coeffs.items()}
            return out
        data: dict[int, Scalar] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                s = data.get(k, ZERO) + v1 * v2
                if s.is_zero():
                    data.pop(k, None)
                else:
                    data[k] = s
        out = LaurentPolynomial()
        out.coeffs = data
        return out

    __rmul__ = __mul__

    def conj_reciprocal(self) -> "LaurentPolynomial":
        """The function z -> conj(f(z)) on |z| = 1, i.e. sum conj(a_k) z^-k."""
        out = LaurentPolynomial()
        out.coeffs = {-k: v.conjugate() for k, v in self.coeffs.items()}
        return out

    def compose_power(self, m: int) -> "LaurentPolynomial":
        """f(z^m)."""
        if m == 0:
            raise ValueError("compose_power requires a nonzero exponent")
        out = LaurentPolynomial()
        out.coeffs = {k * m: v for k, v in self.coeffs.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.items()))

    # -- evaluation ---------------------------------------------------------

    def __call__(self, z: complex) -> complex:
        return sum((v.to_complex() * z ** k for k, v in self.coeffs.items()), 0j)

    def eval_turns(self, t):
        """Evaluate at z = e^{2*pi*i*t}; t may be a float or a numpy array."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for k, v in self.coeffs.items():
            out += v.to_complex() * np.exp(2j * math.pi * k * t)
        if out.shape == ():
            return complex(out)
        return out

    # -- rendering ----------------------------------------------------------

    def term_strings(self) -> list[str]:
        parts = []
        for k, v in self.items():
            s = v.exact_str()
            if s is None:
                s = repr(v.to_complex())
            parts.append(f"({s})z^{k}" if k else f"({s})")
        return parts

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(self.term_strings())

    def __repr__(self):
        return f"LaurentPolynomial({{{', '.join(f'{k}: {v.exact_str() or v.to_complex()}' for k, v in self.items())}}})"


def zero() -> LaurentPolynomial:
    return LaurentPolynomial()


def constant(c) -> LaurentPolynomial:
    return LaurentPolynomial({0: c})


def one() -> LaurentPolynomial:
    return constant(1)


def monomial(k: int, c=1) -> LaurentPolynomial:
    return LaurentPolynomial({k: c})
