"""Cyclic words in L, R and the layered monodromy triangulation.

A once-punctured torus bundle with Anosov monodromy is described, up to
cyclic rotation, by a word L^{a1} R^{b1} ... L^{an} R^{bn} with positive
exponents.  The bundle is triangulated by layering one tetrahedron per
letter: performing the letter at position i glues tetrahedron i to
tetrahedron i+1 (indices mod the word size) by

    L:  i(012) = i+1(312)   and   i(023) = i+1(013)
    R:  i(012) = i+1(013)   and   i(023) = i+1(123)

so each tetrahedron hands its faces 012 and 023 up to the next layer and
receives two faces from the layer below.
"""

import re
from dataclasses import dataclass

from .errors import EmptyWord, BadCharacter, SingleLetterWord
from .tri import FaceGluing, new_triangulation

#: vertex images for the two layering identifications, as full permutations
#: (face 012 and face 023 of the lower tetrahedron).
L_PERMS = ((3, 1, 2, 0), (0, 2, 1, 3))
R_PERMS = ((0, 1, 3, 2), (1, 0, 2, 3))

_TOKEN = re.compile(r"([LR])(?:\^(\d+))?")


class CyclicWord:
    """A cyclic sequence over {L, R} containing both letters.

    Equality and hashing are up to cyclic rotation.  ``letters`` keeps the
    rotation the user wrote; ``canonical`` starts at an L-run and is the
    rotation used for building, so equal words build identical (not merely
    isomorphic) triangulations.
    """

    def __init__(self, letters):
        letters = tuple(letters)
        if not letters:
            raise EmptyWord("empty word")
        for c in letters:
            if c not in ("L", "R"):
                raise BadCharacter("letter %r is not L or R" % (c,))
        if len(set(letters)) < 2:
            raise SingleLetterWord(
                "word %s has no letter change; the monodromy is not Anosov"
                % "".join(letters))
        self.letters = letters
        self.canonical = min(
            self._rotation(i)
            for i in range(len(letters))
            if letters[i] == "L" and letters[i - 1] == "R")

    def _rotation(self, i):
        return self.letters[i:] + self.letters[:i]

    @property
    def size(self):
        return len(self.letters)

    def exponents(self):
        """Run-length form of the canonical rotation: (letter, count) pairs,
        alternating and starting with L."""
        out = []
        for c in self.canonical:
            if out and out[-1][0] == c:
                out[-1][1] += 1
            else:
                out.append([c, 1])
        return [(c, k) for c, k in out]

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return "".join(self.letters)

    def __repr__(self):
        return "CyclicWord(%s)" % self


def parse_word(s):
    """Parse 'LLRR' or caret notation 'L^2R^2' (exponents >= 1)."""
    if not isinstance(s, str) or not s:
        raise EmptyWord("empty word")
    letters = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise BadCharacter("unexpected character %r in %r" % (s[pos], s))
        k = int(m.group(2)) if m.group(2) else 1
        if k < 1:
            raise BadCharacter("exponent must be positive in %r" % s)
        letters.extend(m.group(1) * k)
        pos = m.end()
    return CyclicWord(letters)


def as_word(w):
    return w if isinstance(w, CyclicWord) else parse_word(w)


def build(word):
    """The monodromy ideal triangulation of the bundle of ``word``.

    One tetrahedron per letter of the canonical rotation, glued by the
    layering identifications; tetrahedra are labeled A, B, C, ...
    """
    word = as_word(word)
    n = word.size
    letters = word.canonical
    gluings = []
    for i in range(n):
        j = (i + 1) % n
        p012, p023 = L_PERMS if letters[i] == "L" else R_PERMS
        gluings.append(FaceGluing((i, 3), (j, p012[3]), p012))
        gluings.append(FaceGluing((i, 1), (j, p023[1]), p023))
    return new_triangulation(gluings, n)


@dataclass(frozen=True)
class Fan:
    """Maximal block of tetrahedra strictly inside a letter run."""
    letter: str
    positions: tuple   # consecutive tetrahedron indices, layering order

    @property
    def size(self):
        return len(self.positions)


@dataclass(frozen=True)
class FanDecomposition:
    toggles: tuple     # tetrahedron indices where the letter changes
    fans: tuple        # one Fan per letter run (possibly empty runs omitted)
    runs: tuple        # (letter, start, length) per maximal run


def fan_decomposition(word):
    """Split the tetrahedra of ``build(word)`` into toggles and fans.

    Tetrahedron i is a toggle when the layers below and above it carry
    different letters, i.e. letters[i-1] != letters[i]; the run of
    tetrahedra between two consecutive toggles is a fan.
    """
    word = as_word(word)
    letters = word.canonical
    n = len(letters)
    starts = [i for i in range(n) if letters[i - 1] != letters[i]]
    toggles = tuple(starts)
    runs = []
    fans = []
    for k, s in enumerate(starts):
        end = starts[k + 1] if k + 1 < len(starts) else n + starts[0]
        length = end - s
        runs.append((letters[s], s, length))
        inside = tuple((s + j) % n for j in range(1, length))
        if inside:
            fans.append(Fan(letters[s], inside))
    return FanDecomposition(toggles, tuple(fans), tuple(runs))
