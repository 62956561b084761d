from django.test import SimpleTestCase

from subshift.seqgen import Substitution
from subshift.utils import (
    _clear_utility_caches,
    common_factors,
    shortlex,
    sorted_words,
    substitution_power_image,
)


class UtilsTests(SimpleTestCase):
    def test_shortlex(self):
        assert sorted_words({"10", "1", "0", "001", "01"}) == ["0", "1", "01", "10", "001"]
        assert shortlex("") < shortlex("0")

    def test_common_factors(self):
        assert common_factors(["0110", "1001"], 2) == {"01", "11", "10", "00"}
        assert common_factors(["0"], 2) == set()

    def test_substitution_power_image(self):
        sigma = Substitution.from_mapping({"0": "01", "1": "10"})
        assert substitution_power_image(sigma, "0", 0) == "0"
        assert substitution_power_image(sigma, "0", 3) == "01101001"
        assert substitution_power_image.cache_info().currsize >= 4

    def test_clear_caches(self):
        substitution_power_image(Substitution.from_mapping({"0": "01", "1": "10"}), "1", 2)
        _clear_utility_caches()
        assert substitution_power_image.cache_info().currsize == 0
