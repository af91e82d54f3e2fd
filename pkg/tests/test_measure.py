import math
from fractions import Fraction

import pytest

from fractalmra.errors import CyclesFoundError, NotNormalizedError
from fractalmra.filterbank import canonical_lowpass
from fractalmra.ifs import DigitSystem
from fractalmra.laurent import LaurentPolynomial, monomial, one
from fractalmra.measure import (
    CONVERGED,
    STABILIZED,
    UNSETTLED,
    classify_support,
    compare_filters,
    find_cycles,
    moment,
    moment_table,
    riesz_samples,
    tail_measure,
    wiener_profile,
)
from fractalmra.scalars import Scalar
from fractalmra.transfer import TransferOperator

HALF = Scalar(Fraction(1, 2))
R2 = Scalar.inv_sqrt(2)


@pytest.fixture(scope="module")
def cantor3_op():
    return TransferOperator.from_filter(canonical_lowpass(DigitSystem(3, (0, 2))), 3)


@pytest.fixture(scope="module")
def cantor3_table(cantor3_op):
    return moment_table(cantor3_op, 729)


def stretched_haar():
    return LaurentPolynomial({0: R2, 3: R2})


def test_moment_examples(cantor3_op):
    assert moment(cantor3_op, 0).value == Scalar(1)
    assert moment(cantor3_op, 0).status == STABILIZED
    assert moment(cantor3_op, 1).value == Scalar(0)
    assert moment(cantor3_op, 4).value == Scalar(Fraction(1, 4))


def test_moment_oracle_full_expansion(cantor3_op):
    """Independent oracle: fully expanded sixth product weight."""
    full = cantor3_op.iterate_weight(6)
    for n in range(-8, 9):
        assert moment(cantor3_op, n).value == full[-n]


def test_moment_table_recursion_exact(cantor3_table):
    t = cantor3_table
    assert t.value(0) == Scalar(1)
    assert t.value(1) == Scalar(0)
    for n in range(-243, 244):
        assert t.value(3 * n) == t.value(n)
    for n in range(-242, 243):
        assert t.value(3 * n + 2) == t.value(n) * HALF
        assert t.value(3 * n - 2) == t.value(n) * HALF
    for k in range(-121, 121):
        assert t.value(2 * k + 1).is_zero()
    assert all(e.status == STABILIZED for e in t.rows())


def test_moment_table_small_values(cantor3_table):
    expected = {0: 1, 1: 0, 2: Fraction(1, 2), 3: 0, 4: Fraction(1, 4),
                5: 0, 6: Fraction(1, 2), 7: 0, 8: Fraction(1, 4)}
    for n, v in expected.items():
        assert cantor3_table.value(n) == Scalar(v)
        assert cantor3_table.value(-n) == Scalar(v)


def test_moment_symmetry_and_bound(cantor3_table):
    for e in cantor3_table.rows():
        assert cantor3_table.value(-e.n) == e.value.conjugate()
        assert abs(e.value.to_complex()) <= 1 + 1e-12


def test_haar_moments_converge_to_one(haar2):
    op = TransferOperator.from_filter(canonical_lowpass(haar2), 2)
    t = moment_table(op, 2, max_iter=20, tol=1e-3)
    for n in range(3):
        assert abs(t.value(n).to_complex() - 1) < 1e-3
        if n:
            assert t.entries[n].status == CONVERGED


def test_unit_weight_moments():
    op = TransferOperator(4, one())
    t = moment_table(op, 3)
    assert t.value(0) == Scalar(1)
    for n in range(1, 4):
        assert t.value(n).is_zero()


def test_unsettled_returns_cesaro(cantor3_op):
    entry = moment(cantor3_op, 700, max_iter=2)
    assert entry.status == UNSETTLED
    assert entry.cesaro


def test_invariance_under_transfer(cantor3_op, cantor3_table):
    for m in range(-20, 21):
        rf = cantor3_op.apply(monomial(m))
        lhs = Scalar(0)
        for j, c in rf.coeffs.items():
            lhs = lhs + c * cantor3_table.value(j)
        assert abs(lhs.to_complex() - cantor3_table.value(m).to_complex()) <= 1e-10


def test_gk_gram(cantor3_table):
    """<g_k | g_l> = (3/4) delta with g_k(z) = z^(2*3^k) - 1/2, from moments."""
    def gram(k, l):
        a, b = 2 * 3 ** k, 2 * 3 ** l
        return (
            cantor3_table.value(b - a)
            - cantor3_table.value(b) * HALF
            - cantor3_table.value(-a) * HALF
            + Scalar(Fraction(1, 4))
        )
    for k in range(6):
        for l in range(6):
            assert gram(k, l) == (Scalar(Fraction(3, 4)) if k == l else Scalar(0))


def test_wiener_profile(cantor3_table):
    profile = wiener_profile(cantor3_table, 729)
    rows = profile.rows
    assert rows[2].partial_sum == Scalar(Fraction(5, 4))
    assert not profile.unsettled
    # doubling chain s_{3^(n+1)} <= (5/2) s_{3^n}
    for n in range(5):
        assert rows[3 ** (n + 1)].partial_sum <= Scalar(Fraction(5, 2)) * rows[3 ** n].partial_sum
    # atom bound s_k/k <= (5/6)^floor(log3 k) * 5/2
    for k in range(1, 730):
        e = 0
        while 3 ** (e + 1) <= k:
            e += 1
        bound = Scalar(Fraction(5, 6) ** e * Fraction(5, 2))
        assert rows[k].ratio <= bound


def test_wiener_unit_weight():
    op = TransferOperator(3, one())
    profile = wiener_profile(moment_table(op, 64), 64)
    for row in profile.rows:
        assert row.partial_sum == Scalar(1)
    assert float(profile.rows[64].ratio.to_complex().real) == pytest.approx(1 / 64)


def test_riesz_samples():
    rows = riesz_samples(3, 16)
    assert rows[0][0] == 0.0
    assert rows[0][1] == pytest.approx(2 ** 3 / (2 * math.pi))
    one_sample = riesz_samples(1, 4)
    # t = pi/2: 1 + cos(3 pi) = 0
    assert one_sample[1][1] == pytest.approx(0.0, abs=1e-12)
    # Riemann mass: mean * 2 pi = 1 (no aliasing on a 3^8 grid at depth 6)
    deep = riesz_samples(6, 3 ** 8)
    mass = sum(v for _, v in deep) * 2 * math.pi / 3 ** 8
    assert mass == pytest.approx(1.0, abs=5e-2)


def test_tail_measure(cantor3_table):
    assert tail_measure(cantor3_table, 3, 2, one()) == Scalar(1)
    assert tail_measure(cantor3_table, 3, 1, monomial(6)) == HALF
    assert tail_measure(cantor3_table, 3, 1, monomial(1)).is_zero()


def test_find_cycles_examples(cantor3, haar2):
    haar_report = find_cycles(canonical_lowpass(haar2), 2, 8)
    assert haar_report.verdict == "CyclesFound"
    assert [c.angles for c in haar_report.cycles] == [(Fraction(0),)]
    assert haar_report.cycles[0].values[0] == pytest.approx(2.0)

    assert find_cycles(canonical_lowpass(cantor3), 3, 12).verdict == "NoCycles"

    stretched = find_cycles(stretched_haar(), 2, 8)
    assert [c.angles for c in stretched.cycles] == [
        (Fraction(0),),
        (Fraction(1, 3), Fraction(2, 3)),
    ]


def test_find_cycles_root_targeted_path_matches_grid(monkeypatch, haar2):
    """Levels beyond the grid limit search near the peaks of the weight and
    must find exactly the same orbits."""
    import fractalmra.measure as measure_mod

    for m0, N in ((stretched_haar(), 2), (canonical_lowpass(haar2), 2)):
        full = find_cycles(m0, N, 10)
        monkeypatch.setattr(measure_mod, "CYCLE_GRID_LIMIT", 10)
        hybrid = measure_mod.find_cycles(m0, N, 10)
        monkeypatch.undo()
        assert [c.angles for c in hybrid.cycles] == [c.angles for c in full.cycles]


def test_find_cycles_large_scale_default_length():
    # scale 6 at length 11 stays within the point cap thanks to the
    # root-targeted path; the full grid would hold ~4e8 points
    report = find_cycles(canonical_lowpass(DigitSystem(6, (0, 2, 4))), 6, 11)
    assert report.verdict == "NoCycles"


def test_classify_support_full(cantor3):
    cls = classify_support(canonical_lowpass(cantor3), 3)
    assert cls.kind == "full_support"
    assert cls.moments is not None
    assert cls.diagnostics["unique_invariant_measure"]
    assert cls.moments.value(2) == HALF


def test_classify_support_atomic(haar2):
    cls = classify_support(canonical_lowpass(haar2), 2)
    assert cls.kind == "atomic_on_cycles"
    assert len(cls.atoms) == 1
    assert cls.atoms[0].cycle.angles == (Fraction(0),)
    assert cls.atoms[0].weights == (Fraction(1),)


def test_classify_support_stretched_haar():
    cls = classify_support(stretched_haar(), 2)
    assert cls.kind == "atomic_on_cycles"
    assert len(cls.atoms) == 2
    weights = {atom.cycle.angles: atom.weights for atom in cls.atoms}
    assert weights[(Fraction(0),)] == (Fraction(1),)
    assert weights[(Fraction(1, 3), Fraction(2, 3))] == (Fraction(1, 2), Fraction(1, 2))


def test_atomic_measures_are_invariant():
    """nu(R f) = nu(f) for the orbit measures, on monomials |m| <= 6."""
    m0 = stretched_haar()
    op = TransferOperator.from_filter(m0, 2)
    cls = classify_support(m0, 2)
    for atom in cls.atoms:
        def nu(poly):
            total = 0j
            for theta, w in zip(atom.cycle.angles, atom.weights):
                total += float(w) * poly.eval_turns(float(theta))
            return total
        for m in range(-6, 7):
            f = monomial(m)
            assert abs(nu(op.apply(f)) - nu(f)) <= 1e-10


def test_atom_transport_monotone():
    """For cycle measures, nu({z^N}) >= nu({z}) on their support."""
    for m0, N in ((stretched_haar(), 2), (canonical_lowpass(DigitSystem(2, (0, 1))), 2)):
        cls = classify_support(m0, N)
        for atom in cls.atoms:
            mass = dict(zip(atom.cycle.angles, atom.weights))
            for theta, w in mass.items():
                image = (theta * N) % 1
                assert mass[image] >= w


def test_classify_rejects_unnormalized():
    bad = LaurentPolynomial({0: Fraction(1, 2), 1: Fraction(1, 2)})
    with pytest.raises(NotNormalizedError):
        classify_support(bad, 2)


def test_compare_filters_same(cantor3):
    m0 = canonical_lowpass(cantor3)
    report = compare_filters(m0, m0, 3)
    assert report.verdict == "SameMeasure"
    report2 = compare_filters(m0, monomial(3) * m0, 3, R=50)
    assert report2.verdict == "SameMeasure"
    assert report2.same_modulus
    assert not report2.representations_disjoint


def test_compare_filters_different(cantor3, haar2):
    # (1+z)/sqrt2 is transfer-normalized at N=3 as well, with a different measure
    other = canonical_lowpass(haar2)
    report = compare_filters(canonical_lowpass(cantor3), other, 3)
    assert report.verdict == "DifferentMeasure"
    assert report.representations_disjoint


def test_compare_filters_gates(cantor3):
    m0 = canonical_lowpass(cantor3)
    unnormalized = LaurentPolynomial({0: Fraction(1, 2), 1: Fraction(1, 2)})
    with pytest.raises(NotNormalizedError):
        compare_filters(m0, unnormalized, 3)
    with pytest.raises(CyclesFoundError):
        compare_filters(canonical_lowpass(DigitSystem(2, (0, 1))),
                        canonical_lowpass(DigitSystem(2, (0, 1))), 2)
