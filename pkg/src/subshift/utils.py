from functools import lru_cache


def shortlex(word):
    """Sort key ordering words by length, then lexicographically."""
    return (len(word), word)


def sorted_words(words):
    return sorted(words, key=shortlex)


@lru_cache(maxsize=None)
def substitution_power_image(substitution, symbol, k):
    """
    Return ``σ^k(symbol)``. Results are cached per substitution, so repeated
    window requests only pay for the longest iterate once.
    """
    if k == 0:
        return symbol
    previous = substitution_power_image(substitution, symbol, k - 1)
    return substitution.apply(previous)


def common_factors(words, length):
    """The set of length-``length`` factors of every word in ``words``."""
    found = set()
    for word in words:
        found.update(word[i : i + length] for i in range(len(word) - length + 1))
    return found


def _clear_utility_caches():
    """Clear all lru_cache caches in this module."""
    substitution_power_image.cache_clear()
