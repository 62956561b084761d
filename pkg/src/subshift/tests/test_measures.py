from fractions import Fraction

import pytest

from subshift.labeled_space import LabeledSpace
from subshift.language import DepthExceeded, InsufficientWindow
from subshift.measures import (
    EMPIRICAL,
    EXACT,
    NUMERIC,
    FrequencyPrecisionWarning,
    GeneratorSymbol,
    NotUniquelyCertified,
    empirical_frequencies,
    exact_measure,
    periodic_frequencies,
    pf_frequencies,
    shift_invariance_check,
    trace_eval,
    trace_report,
    tracial_property_check,
)
from subshift.seqgen import MorseProduct, MorseSpec, Substitution, periodic_window, thue_morse
from subshift.tests.utils import fibonacci, thue_morse_window

THUE_MORSE = Substitution.from_mapping({"0": "01", "1": "10"})


@pytest.fixture(scope="module")
def measure():
    return pf_frequencies(THUE_MORSE, 7)


class TestPerronFrobenius:
    def test_letter_frequencies(self, measure):
        assert measure.mode == EXACT
        assert measure("0") == Fraction(1, 2)
        assert measure("1") == Fraction(1, 2)

    def test_two_blocks(self, measure):
        assert measure("00") == Fraction(1, 6)
        assert measure("01") == Fraction(1, 3)
        assert measure("10") == Fraction(1, 3)
        assert measure("11") == Fraction(1, 6)

    def test_absent_words(self, measure):
        assert measure("000") == 0
        assert measure("") == 1
        with pytest.raises(DepthExceeded):
            measure("01101001")

    @pytest.mark.parametrize("length", range(1, 8))
    def test_normalization(self, measure, length):
        assert measure.normalization(length) == 1

    def test_kolmogorov_consistency(self, measure):
        assert measure.kolmogorov_defect() == 0

    def test_numeric_fallback(self):
        with pytest.warns(FrequencyPrecisionWarning):
            golden = pf_frequencies(fibonacci().substitution, 3)
        assert golden.mode == NUMERIC
        assert float(golden("0")) == pytest.approx(0.6180339887, abs=1e-9)
        assert golden("11") == 0
        assert golden.kolmogorov_defect() <= golden.tolerance

    def test_not_primitive(self):
        with pytest.raises(NotUniquelyCertified):
            pf_frequencies(Substitution.from_mapping({"0": "01", "1": "1"}), 2)


def test_periodic_frequencies():
    measure = periodic_frequencies("01", 3)
    assert measure("01") == Fraction(1, 2)
    assert measure("00") == 0
    assert measure("010") == Fraction(1, 2)
    assert measure.kolmogorov_defect() == 0


def test_exact_measure_dispatch():
    assert exact_measure(thue_morse(), 2)("00") == Fraction(1, 6)
    morse = MorseProduct(MorseSpec(("0110",), cycle=True))
    assert exact_measure(morse, 2)("0") == Fraction(1, 2)
    assert exact_measure(morse, 2, window_size=2**10)("00") == Fraction(1, 6)
    with pytest.raises(NotUniquelyCertified):
        exact_measure(MorseProduct(MorseSpec(("01", "011"))), 2)


def test_morse_window_outside_its_language_has_no_exact_measure():
    morse = MorseProduct(MorseSpec(("011",), cycle=True))
    assert morse.invariant_substitution() is not None
    with pytest.raises(NotUniquelyCertified, match="extra"):
        exact_measure(morse, 2)


class TestEmpirical:
    def test_agrees_with_exact(self, measure):
        empirical = empirical_frequencies(thue_morse_window(2**19), 6)
        assert empirical.mode == EMPIRICAL
        assert empirical.scan_length == 2**20
        for n in range(1, 7):
            for word in measure.words(n):
                assert abs(float(measure(word)) - empirical(word)) <= 1e-3, word

    def test_kolmogorov_defect_is_bounded(self):
        empirical = empirical_frequencies(thue_morse_window(), 5)
        assert empirical.kolmogorov_defect(5) <= 2 * 5 / empirical.scan_length

    def test_periodic(self):
        empirical = empirical_frequencies(periodic_window("01", 2**15), 2)
        assert abs(empirical("01") - 0.5) <= 1 / empirical.scan_length

    def test_window_too_short(self):
        with pytest.raises(InsufficientWindow):
            empirical_frequencies(periodic_window("01", 100), 2)


class TestShiftInvariance:
    def test_exact(self, measure):
        result = shift_invariance_check(measure, 6)
        assert result.passed
        assert result.detail["max_defect"] == 0

    def test_empirical(self):
        empirical = empirical_frequencies(thue_morse_window(), 5)
        result = shift_invariance_check(empirical, 4)
        assert result.passed
        assert result.detail["max_defect"] <= empirical.tolerance

    def test_fault_is_detected(self, measure):
        broken = measure.with_override("00", Fraction(1, 5))
        result = shift_invariance_check(broken, 6)
        assert not result.passed
        assert result.witness

    def test_needs_depth(self, measure):
        with pytest.raises(DepthExceeded):
            shift_invariance_check(measure, 7)


class TestTrace:
    def test_unit(self, measure):
        assert trace_eval(GeneratorSymbol(), measure) == 1

    def test_diagonal(self, measure):
        assert trace_eval(GeneratorSymbol("0", "", "0"), measure) == Fraction(1, 2)
        assert trace_eval(GeneratorSymbol("1", "0", "1"), measure) == Fraction(1, 3)

    def test_off_diagonal(self, measure):
        assert trace_eval(GeneratorSymbol("0", "", "1"), measure) == 0
        assert trace_eval(GeneratorSymbol("01", "1", "10"), measure) == 0

    def test_depth(self, measure):
        with pytest.raises(DepthExceeded):
            trace_eval(GeneratorSymbol("0110", "1001", "0110"), measure)

    def test_tracial_property(self, measure):
        result = tracial_property_check(measure, 3)
        assert result.passed, result.witness
        assert result.detail["max_defect"] == 0

    def test_measure_of_refined_sets(self, measure):
        space = LabeledSpace(measure.support())
        vertices = space.gen_vertex("01")
        assert measure.of(vertices) == measure.of(space.refine(vertices, 5))

    def test_report(self, measure):
        result = trace_report(measure, 2)
        assert result.passed
        assert result.detail["values"]["1"] == 1
        assert result.detail["mode"] == EXACT
