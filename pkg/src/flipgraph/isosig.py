"""Isomorphism signatures: text encoding of triangulations up to isomorphism.

A signature is a base-64 string over the alphabet a..z A..Z 0..9 + -
holding four concatenated streams:

  [tetrahedron count] [gluing types] [destinations] [permutation indices]

Types are 2-bit values packed three per character, low bits first, one per
facet in traversal order (skipping facets whose gluing was already recorded
from the other side): 1 means "glued to the next unseen tetrahedron via the
identity permutation", 2 means "glued to an already-labeled tetrahedron",
whose index and gluing permutation (as an index into the sign-alternating
S4 table) are appended to the later streams.  The type stream ends once the
entries account for all 4n facets.

Only closed triangulations with at most 25 tetrahedra are supported.
``decode`` accepts any valid encoding (in particular signatures produced by
the standard software packages); ``encode`` emits the canonical one, so
equal outputs characterize isomorphic triangulations.
"""

from . import canon, perms, tri as tri_mod
from .errors import MalformedSignature, TooLarge

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
CHAR_VALUE = {c: i for i, c in enumerate(ALPHABET)}

MAX_TETRAHEDRA = 25


def encode_record(size, types, dests, gperms):
    """Serialize one traversal record to the signature alphabet."""
    if size > 63:
        raise TooLarge("%d tetrahedra exceed the one-character count range"
                       % size)
    chars = [ALPHABET[size]]
    for i in range(0, len(types), 3):
        block = types[i:i + 3]
        val = sum(t << (2 * j) for j, t in enumerate(block))
        chars.append(ALPHABET[val])
    for d in dests:
        chars.append(ALPHABET[d])
    for g in gperms:
        chars.append(ALPHABET[g])
    return "".join(chars)


def encode(tri):
    """Canonical signature of a triangulation (at most 25 tetrahedra)."""
    if tri.size > MAX_TETRAHEDRA:
        raise TooLarge("%d tetrahedra (limit %d)" % (tri.size, MAX_TETRAHEDRA))
    return canon.canonical_signature(tri)


def decode(s):
    """Rebuild the triangulation encoded by ``s``."""
    if not s:
        raise MalformedSignature("empty signature")
    vals = []
    for c in s:
        if c not in CHAR_VALUE:
            raise MalformedSignature("bad character %r" % c)
        vals.append(CHAR_VALUE[c])
    size = vals[0]
    if size == 0:
        raise MalformedSignature("empty triangulation")
    if size > MAX_TETRAHEDRA:
        raise MalformedSignature("%d tetrahedra exceed the supported range"
                                 % size)
    # -- type stream: stop once entries account for all 4*size facets
    types = []
    accounted = 0
    pos = 1
    sub = 0
    while accounted < 4 * size:
        if sub == 0:
            if pos >= len(vals):
                raise MalformedSignature("truncated type stream")
            cur = vals[pos]
            pos += 1
        t = (cur >> (2 * sub)) & 3
        sub = (sub + 1) % 3
        if t == 0:
            raise MalformedSignature("boundary facets are not supported")
        if t == 3:
            raise MalformedSignature("invalid gluing type 3")
        types.append(t)
        accounted += 2
    if accounted != 4 * size:
        raise MalformedSignature("type entries overshoot the facet count")
    n2 = sum(1 for t in types if t == 2)
    if len(vals) != pos + 2 * n2:
        raise MalformedSignature("signature length mismatch")
    dests = vals[pos:pos + n2]
    gperms = vals[pos + n2:]
    return _rebuild(size, types, dests, gperms)


def _rebuild(size, types, dests, gperms):
    glued = {}
    gluings = []
    it_types = iter(types)
    idx2 = 0
    next_unseen = 1
    for k in range(size):
        for f in range(4):
            if (k, f) in glued:
                continue
            t = next(it_types, None)
            if t is None:
                raise MalformedSignature("type stream exhausted early")
            if t == 1:
                if next_unseen >= size:
                    raise MalformedSignature("too many new-tetrahedron gluings")
                dest, p = next_unseen, perms.IDENTITY
                next_unseen += 1
            else:
                dest = dests[idx2]
                p = perms.S4_SIG[gperms[idx2]] if gperms[idx2] < 24 else None
                idx2 += 1
                if dest >= size or p is None:
                    raise MalformedSignature("destination or permutation "
                                             "out of range")
            f2 = p[f]
            if (dest, f2) in glued or (dest, f2) == (k, f):
                raise MalformedSignature("gluing is not an involution")
            glued[(k, f)] = True
            glued[(dest, f2)] = True
            gluings.append(tri_mod.FaceGluing((k, f), (dest, f2), p))
    if next_unseen < size:
        raise MalformedSignature("signature describes a disconnected "
                                 "triangulation")
    return tri_mod.new_triangulation(gluings, size)
