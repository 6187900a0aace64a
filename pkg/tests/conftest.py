import pytest

from flipgraph import geometry, words


def all_words_up_to(max_size):
    """Canonical representatives of every cyclic word with both letters."""
    seen = {}
    for n in range(2, max_size + 1):
        for bits in range(1, (1 << n) - 1):
            letters = ["L" if (bits >> i) & 1 else "R" for i in range(n)]
            w = words.CyclicWord(letters)
            seen.setdefault(w.canonical, w)
    return list(seen.values())


_solve_cache = {}


def solved(word_text):
    """Cached (triangulation, solution) for a word."""
    if word_text not in _solve_cache:
        tri = words.build(word_text)
        _solve_cache[word_text] = (tri, geometry.solve_complete_structure(tri))
    return _solve_cache[word_text]


@pytest.fixture(scope="session")
def fig8():
    return solved("RL")
