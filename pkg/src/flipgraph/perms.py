"""Permutations of {0,1,2,3}, stored as 4-tuples of images.

``compose(a, b)`` is "apply b, then a", so ``compose(a, b)[i] == a[b[i]]``.
"""

import itertools

IDENTITY = (0, 1, 2, 3)

#: All 24 permutations in lexicographic order (used for canonical traversals).
S4_LEX = tuple(itertools.permutations(range(4)))


def compose(a, b):
    return (a[b[0]], a[b[1]], a[b[2]], a[b[3]])


def invert(p):
    q = [0, 0, 0, 0]
    for i, v in enumerate(p):
        q[v] = i
    return tuple(q)


def parity(p):
    """0 for even permutations, 1 for odd ones."""
    inv = 0
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                inv += 1
    return inv & 1


def is_odd(p):
    return parity(p) == 1


#: The three fixed-point-free involutions; orientation-preserving as
#: symmetries of a tetrahedron.
DOUBLE_TRANSPOSITIONS = ((1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


#: Permutation enumeration used inside isomorphism signatures: lexicographic
#: by image tuple, matching the order the standard tools write.
S4_SIG = S4_LEX
S4_SIG_INDEX = {p: i for i, p in enumerate(S4_SIG)}
