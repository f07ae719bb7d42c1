"""Reduced words in the free group on g generators and their counts."""

import logging
from collections.abc import Iterator

import numpy as np

from schottkit.moebius import MoebiusMap, compose
from schottkit.schottky.models import DepthLimitError, GroupWord, SchottkyData, letter_order

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000


def word_count(genus: int, n: int) -> int:
    """Number of reduced words of length exactly ``n``: 2g(2g-1)^(n-1), or 1 for n = 0."""
    if genus < 1:
        raise ValueError(f"genus must be >= 1, got {genus}")
    if n < 0:
        raise ValueError(f"word length must be >= 0, got {n}")
    if n == 0:
        return 1
    return 2 * genus * (2 * genus - 1) ** (n - 1)


def boundary_curve_count(genus: int, n: int) -> int:
    """Boundary curves of the exhaustion region W_n: 2g(2g-1)^n."""
    return word_count(genus, n + 1)


def copy_count(genus: int, n: int) -> int:
    """Copies of the fundamental domain in W_n: 1 + Σ_{k<n} 2g(2g-1)^k."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    return 1 + sum(boundary_curve_count(genus, k) for k in range(n))


def iter_words(genus: int, n: int) -> Iterator[GroupWord]:
    """Yield reduced words of length ``n`` in the fixed enumeration order."""
    order = letter_order(genus)
    if n == 0:
        yield GroupWord(())
        return

    def _extend(prefix: tuple[int, ...]) -> Iterator[GroupWord]:
        if len(prefix) == n:
            yield GroupWord(prefix)
            return
        for letter in order:
            if prefix and letter == -prefix[-1]:
                continue
            yield from _extend(prefix + (letter,))

    yield from _extend(())


def enumerate_words(
    genus: int,
    n: int,
    budget: int = DEFAULT_NODE_BUDGET,
) -> list[GroupWord]:
    """All reduced words of length exactly ``n``, each once.

    Args:
        genus: Number of free generators g
        n: Word length
        budget: Maximum number of words to materialize

    Returns:
        Words in lexicographic order of the letter sequence 1, -1, 2, -2, ...

    Raises:
        DepthLimitError: If 2g(2g-1)^(n-1) exceeds ``budget``
    """
    count = word_count(genus, n)
    if count > budget:
        raise DepthLimitError(count, budget)
    words = list(iter_words(genus, n))
    logger.debug(f"Enumerated {len(words)} reduced words (g={genus}, n={n})")
    return words


def random_reduced_word(genus: int, n: int, rng: np.random.Generator) -> GroupWord:
    """Uniformly random reduced word of length ``n``."""
    order = letter_order(genus)
    letters: list[int] = []
    for _ in range(n):
        choices = [x for x in order if not letters or x != -letters[-1]]
        letters.append(choices[int(rng.integers(len(choices)))])
    return GroupWord(tuple(letters))


def word_matrix(data: SchottkyData, word: GroupWord) -> MoebiusMap:
    """Precomposed map of ``word`` (leftmost letter applied last)."""
    result = MoebiusMap.identity()
    for letter in word.letters:
        result = compose(result, data.generator_for(letter))
    return result


def apply_word(data: SchottkyData, word: GroupWord, z: complex) -> complex:
    """Evaluate ``word`` at ``z`` one letter at a time, rightmost first."""
    for letter in reversed(word.letters):
        z = data.generator_for(letter)(z)
    return z
