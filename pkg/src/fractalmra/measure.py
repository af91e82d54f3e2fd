"""Invariant measures of the transfer operator.

The Perron-Frobenius measure nu of a normalized weight is reached through its
Fourier coefficients nu^(n) = lim_k W^(k)-coefficient; no density object ever
exists (for the Cantor filters nu is singular).  The module computes moment
tables with stabilization metadata, detects cycles of theta -> N theta on
which the weight peaks, classifies the support (full vs atomic-on-cycles),
evaluates Wiener averages, Riesz-product partial samples, tail measures, and
compares two filters through their invariant measures.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    CapExceededError,
    CyclesFoundError,
    NotNormalizedError,
    PreconditionError,
)
from .laurent import LaurentPolynomial
from .scalars import Scalar, ZERO
from .transfer import (
    TransferOperator,
    apply_haar_average,
    spectral_block,
    weight_from_filter,
)

STABILIZED = "stabilized"
CONVERGED = "converged"
UNSETTLED = "unsettled"

DEFAULT_MAX_ITER = 64
DEFAULT_TOL = 1e-12
DEFAULT_CYCLE_LENGTH = 12
CYCLE_POINT_CAP = 10 ** 9


def _worker_count() -> int:
    raw = os.environ.get("FRACTALMRA_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise PreconditionError(f"FRACTALMRA_THREADS must be an integer: {raw!r}") from exc
    if n < 1:
        raise PreconditionError("FRACTALMRA_THREADS must be >= 1")
    return n


@dataclass(frozen=True)
class MomentEntry:
    """One Fourier coefficient of the invariant measure with its status."""

    n: int
    value: Scalar
    status: str
    iterations: int
    cesaro: bool = False


@dataclass
class MomentTable:
    """Moments nu^(n) for |n| <= range, symmetric under conjugation."""

    scale: int
    weight: LaurentPolynomial | None = None
    entries: dict[int, MomentEntry] = field(default_factory=dict)

    def covers(self, K: int) -> bool:
        return all(n in self.entries for n in range(-K, K + 1))

    def value(self, n: int) -> Scalar:
        entry = self.entries.get(n)
        if entry is None:
            raise PreconditionError(f"moment {n} not in table")
        return entry.value

    def rows(self) -> list[MomentEntry]:
        return [self.entries[n] for n in sorted(self.entries)]

    def unsettled(self) -> tuple[int, ...]:
        return tuple(
            n for n in sorted(self.entries) if self.entries[n].status == UNSETTLED
        )


def _stabilization_threshold(op: TransferOperator, idx: int) -> int | None:
    """Smallest k at which the iterate coefficient at idx provably equals its
    limit, or None when no such finite proof exists.

    Step k adds sum_{j!=0} W^(j) * coeff_k(idx - j N^k); every term vanishes
    once j_min N^k - |idx| exceeds the support bound deg W (N^k - 1)/(N - 1),
    and for j_min > deg W/(N - 1) that condition persists for all later k.
    Consecutive equal iterates alone can be accidental (a later product
    factor may still reach the index), so only this structural criterion
    upgrades a moment to stabilized.
    """
    W = op.weight
    if not (W[0].is_exact and W[0] == Scalar(1)):
        return None
    nonzero = [abs(k) for k in W.coeffs if k]
    if not nonzero:
        return 1
    j_min = min(nonzero)
    deg = W.degree()
    N = op.scale
    c = Fraction(deg, N - 1)
    if j_min < c:
        return None
    if j_min == c:
        return 1 if abs(idx) < c else None
    k = 1
    while j_min * N ** k - Fraction(deg * (N ** k - 1), N - 1) <= abs(idx):
        k += 1
    return k


def moment(
    op: TransferOperator,
    n: int,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> MomentEntry:
    """nu^(n) = lim_k (k-fold product weight coefficient at -n).

    Exact tier: stabilized once two consecutive iterates agree exactly at an
    index where the agreement is provably permanent.  Otherwise (and always
    in the approximate tier): converged once two consecutive deltas fall
    below tol.  If neither happens by max_iter the Cesaro mean of the
    iterates is returned, flagged unsettled.
    """
    if max_iter < 2:
        raise PreconditionError("max_iter must be >= 2")
    threshold = _stabilization_threshold(op, -n) if op.is_exact else None
    # deltas are uninformative while |n| still lies beyond the product
    # support deg W (N^k - 1)/(N - 1): the coefficient is structurally zero
    deg, N = op.weight.degree(), op.scale
    inside = 1
    if deg and n:
        while Fraction(deg * (N ** inside - 1), N - 1) < abs(n):
            inside += 1
    history: list[Scalar] = []
    prev_small = False
    for k in range(1, max_iter + 1):
        v = op._iterate_coefficient(k, -n)
        if history:
            prev = history[-1]
            if threshold is not None:
                if k > threshold:
                    if v != prev:
                        raise AssertionError(
                            f"stabilization proof violated at n={n}, k={k}"
                        )
                    return MomentEntry(n, v, STABILIZED, k)
            elif k > inside:
                small = abs(v.to_complex() - prev.to_complex()) < tol
                if small and prev_small:
                    return MomentEntry(n, v, CONVERGED, k)
                prev_small = small
        history.append(v)
    mean = ZERO
    for v in history:
        mean = mean + v
    mean = mean * Scalar(Fraction(1, len(history)))
    return MomentEntry(n, mean, UNSETTLED, max_iter, cesaro=True)


def moment_table(
    op: TransferOperator,
    moment_range: int,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> MomentTable:
    """Batch of moments for |n| <= moment_range, negatives by conjugation."""
    if moment_range < 0:
        raise PreconditionError("moment range must be >= 0")
    ns = list(range(moment_range + 1))
    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(lambda n: moment(op, n, max_iter, tol), ns))
    else:
        computed = [moment(op, n, max_iter, tol) for n in ns]
    table = MomentTable(scale=op.scale, weight=op.weight)
    for entry in computed:
        table.entries[entry.n] = entry
        if entry.n:
            table.entries[-entry.n] = MomentEntry(
                -entry.n,
                entry.value.conjugate(),
                entry.status,
                entry.iterations,
                entry.cesaro,
            )
    return table


@dataclass(frozen=True)
class Cycle:
    """A finite orbit of theta -> N theta mod 1; angles are exact fractions
    of a turn, values are |m0|^2 at the points."""

    angles: tuple[Fraction, ...]
    values: tuple[float, ...]

    @property
    def length(self) -> int:
        return len(self.angles)

    def is_trivial(self) -> bool:
        return self.angles == (Fraction(0),)


@dataclass(frozen=True)
class CycleReport:
    searched_length: int
    scale: int
    cycles: tuple[Cycle, ...]

    @property
    def verdict(self) -> str:
        return "CyclesFound" if self.cycles else "NoCycles"


def _orbit_from(j: int, modulus: int, N: int) -> list[int]:
    orbit = [j]
    cur = (j * N) % modulus
    while cur != j:
        orbit.append(cur)
        cur = (cur * N) % modulus
    return orbit


CYCLE_GRID_LIMIT = 2 * 10 ** 6


def _peak_angles(weight: LaurentPolynomial, N: int) -> list[float]:
    """Unit-circle roots of W - N, as angles in [0, 1).

    The weight satisfies W <= N wherever it is normalized, so every point of
    a qualifying orbit is a peak of W and hence a root of W - N."""
    diff = weight - LaurentPolynomial({0: N})
    if diff.is_zero():
        raise PreconditionError("weight is identically N; every orbit qualifies")
    d = max(-min(diff.coeffs), 0)
    top = max(diff.coeffs)
    coeffs = np.zeros(top + d + 1, dtype=complex)
    for k, v in diff.coeffs.items():
        coeffs[k + d] = v.to_complex()
    roots = np.roots(coeffs[::-1])
    angles = []
    for r in roots:
        if abs(abs(r) - 1.0) < 1e-6:
            angles.append(float(np.angle(r) / (2.0 * math.pi)) % 1.0)
    return sorted(set(angles))


def find_cycles(
    m0: LaurentPolynomial,
    N: int,
    L: int = DEFAULT_CYCLE_LENGTH,
    tol: float = 1e-9,
) -> CycleReport:
    """All orbits of theta -> N theta on which |m0|^2 stays within tol of N.

    Period-l points are exactly the rationals j/(N^l - 1).  Small levels are
    scanned with vectorized evaluation over the full grid; levels beyond the
    grid limit are searched only near the unit-circle roots of |m0|^2 - N,
    which every point of a qualifying orbit must approach within tol.
    Orbits are deduplicated across divisor lengths by their exact angle sets.
    """
    if L < 1:
        raise PreconditionError("cycle length must be >= 1")
    if N ** L - 1 > CYCLE_POINT_CAP:
        raise CapExceededError(f"N^L - 1 exceeds cap {CYCLE_POINT_CAP}")
    weight = weight_from_filter(m0)
    seen: set[frozenset] = set()
    cycles: list[Cycle] = []
    peak_angles: list[float] | None = None

    def consider(j: int, modulus: int, values=None):
        orbit = _orbit_from(j, modulus, N)
        if values is None:
            vals = {
                q: float(weight.eval_turns(q / modulus).real) for q in orbit
            }
        else:
            vals = {q: float(values[q]) for q in orbit}
        if any(abs(v - N) > tol for v in vals.values()):
            return
        key = frozenset(Fraction(q, modulus) for q in orbit)
        if key in seen:
            return
        seen.add(key)
        start = min(orbit, key=lambda q: Fraction(q, modulus))
        ordered = _orbit_from(start, modulus, N)
        cycles.append(
            Cycle(
                tuple(Fraction(q, modulus) for q in ordered),
                tuple(vals[q] for q in ordered),
            )
        )

    for ell in range(1, L + 1):
        modulus = N ** ell - 1
        if modulus <= CYCLE_GRID_LIMIT:
            thetas = np.arange(modulus) / modulus
            values = weight.eval_turns(thetas).real
            for j in np.flatnonzero(np.abs(values - N) <= tol):
                consider(int(j), modulus, values)
        else:
            if peak_angles is None:
                peak_angles = _peak_angles(weight, N)
            for theta in peak_angles:
                consider(round(theta * modulus) % modulus, modulus)
    cycles.sort(key=lambda c: c.angles)
    return CycleReport(searched_length=L, scale=N, cycles=tuple(cycles))


@dataclass(frozen=True)
class AtomicMeasure:
    """An extreme invariant measure supported on one cycle, uniform weights."""

    cycle: Cycle
    weights: tuple[Fraction, ...]


@dataclass
class SupportClassification:
    """Either full support (with its moment table) or atomic on cycles."""

    kind: str  # "full_support" | "atomic_on_cycles"
    moments: MomentTable | None
    cycle_report: CycleReport
    atoms: tuple[AtomicMeasure, ...]
    diagnostics: dict


def classify_support(
    m0: LaurentPolynomial,
    N: int,
    L: int = DEFAULT_CYCLE_LENGTH,
    tol: float = 1e-9,
    table_range: int = 16,
) -> SupportClassification:
    """Support dichotomy for the invariant measures of a normalized filter.

    No qualifying cycles: the invariant measure is unique (when 1 is a simple
    peripheral eigenvalue) with support the whole torus; its moment table is
    attached.  Cycles present: one extreme invariant measure per orbit,
    uniform on the orbit (the normalization forces weight N on cycle points
    and 0 on their sibling preimages).
    """
    op = TransferOperator.from_filter(m0, N)
    defect = op.normalization_defect()
    if defect > 1e-12:
        raise NotNormalizedError(
            f"filter is not transfer-normalized: R(1) deviates by {defect:.3e}"
        )
    report = find_cycles(m0, N, L, tol)
    block = spectral_block(op)
    diagnostics = {
        "eigenvalue_one_multiplicity": block.eigenvalue_one_multiplicity,
        "has_other_peripheral": block.has_other_peripheral,
        "eigenvalue_one_simple_exact": block.eigenvalue_one_simple_exact,
    }
    if not report.cycles:
        diagnostics["unique_invariant_measure"] = (
            block.eigenvalue_one_multiplicity == 1 and not block.has_other_peripheral
        )
        diagnostics["note"] = (
            "no cycles: invariant measure has full support; singular and "
            "non-atomic whenever the weight is non-constant"
        )
        table = moment_table(op, table_range)
        return SupportClassification(
            kind="full_support",
            moments=table,
            cycle_report=report,
            atoms=(),
            diagnostics=diagnostics,
        )
    atoms = tuple(
        AtomicMeasure(cycle, (Fraction(1, cycle.length),) * cycle.length)
        for cycle in report.cycles
    )
    diagnostics["note"] = (
        "cycles found: every invariant measure is a convex mixture of the "
        "uniform orbit measures listed"
    )
    return SupportClassification(
        kind="atomic_on_cycles",
        moments=None,
        cycle_report=report,
        atoms=atoms,
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class WienerRow:
    k: int
    partial_sum: Scalar
    ratio: Scalar | None


@dataclass(frozen=True)
class WienerProfile:
    rows: tuple[WienerRow, ...]
    unsettled: tuple[int, ...]


def wiener_profile(table: MomentTable, K: int) -> WienerProfile:
    """Partial sums s_k = sum_{j<=k} |nu^(j)|^2 and the Cesaro ratios s_k/k.

    A vanishing ratio limit certifies that the measure has no atoms."""
    if not table.covers(K):
        raise PreconditionError(f"moment table does not cover 0..{K}")
    unsettled = tuple(n for n in table.unsettled() if 0 <= n <= K)
    if unsettled:
        warnings.warn(
            f"wiener profile built from unsettled moments {unsettled}",
            stacklevel=2,
        )
    rows = []
    s = ZERO
    for k in range(K + 1):
        s = s + table.value(k).abs_sq()
        ratio = s * Scalar(Fraction(1, k)) if k else None
        rows.append(WienerRow(k, s, ratio))
    return WienerProfile(tuple(rows), unsettled)


def riesz_samples(n: int, grid: int) -> list[tuple[float, float]]:
    """Samples of the degree-n Riesz partial product
    (1/2pi) prod_{k=1..n} (1 + cos(2*3^k t)) on a uniform grid of [0, 2pi).

    This is a pre-limit object: the weak-* limit is the singular invariant
    measure of the Cantor-3 filter and has no density."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if grid < 2:
        raise PreconditionError("grid must be >= 2")
    t = 2.0 * math.pi * np.arange(grid) / grid
    vals = np.full(grid, 1.0 / (2.0 * math.pi))
    for k in range(1, n + 1):
        vals *= 1.0 + np.cos(2.0 * 3 ** k * t)
    return [(float(tt), float(v)) for tt, v in zip(t, vals)]


def tail_measure(
    table: MomentTable, N: int, n: int, f: LaurentPolynomial
) -> Scalar:
    """nu_n(f) = nu(R_1^n f): the tail of the product measure against f."""
    g = apply_haar_average(N, f, n)
    total = ZERO
    for j, c in g.coeffs.items():
        total = total + c * table.value(j)
    return total


@dataclass(frozen=True)
class FilterComparison:
    verdict: str  # "SameMeasure" | "DifferentMeasure"
    max_difference: float
    same_modulus: bool | None
    representations_disjoint: bool


def compare_filters(
    m0: LaurentPolynomial,
    m0b: LaurentPolynomial,
    N: int,
    R: int = 50,
    tol: float = 1e-10,
    L: int = DEFAULT_CYCLE_LENGTH,
) -> FilterComparison:
    """Compare the invariant measures of two cycle-free normalized filters.

    Equal moment tables mean equal measures (SameMeasure also reports whether
    |m0| = |m0b| as Laurent data, which equality of measures forces for
    cycle-free filters); distinct tables mean the associated wavelet
    representations are disjoint."""
    ops = []
    for name, m in (("first", m0), ("second", m0b)):
        op = TransferOperator.from_filter(m, N)
        defect = op.normalization_defect()
        if defect > 1e-12:
            raise NotNormalizedError(f"{name} filter not normalized ({defect:.3e})")
        report = find_cycles(m, N, L)
        if report.cycles:
            raise CyclesFoundError(
                f"{name} filter has cycles up to length {L}; the invariant "
                "measure is not unique -- use classify_support"
            )
        ops.append(op)
    table_a = moment_table(ops[0], R)
    table_b = moment_table(ops[1], R)
    max_diff = 0.0
    for n in range(-R, R + 1):
        diff = table_a.value(n) - table_b.value(n)
        if not diff.is_zero():
            max_diff = max(max_diff, abs(diff.to_complex()))
    if max_diff <= tol:
        wa = weight_from_filter(m0)
        wb = weight_from_filter(m0b)
        same_mod = wa == wb
        return FilterComparison("SameMeasure", max_diff, same_mod, False)
    return FilterComparison("DifferentMeasure", max_diff, None, True)
