"""Combinatorial closed ideal triangulations.

Conventions, fixed once for the whole package:

* Face ``k`` of a tetrahedron is the face omitting vertex ``k``.
* A gluing carries the full permutation of {0,1,2,3} taking source vertex
  labels to destination vertex labels; it maps the omitted vertex of the
  source face to the omitted vertex of the destination face.
* All tetrahedra carry the reference orientation, so every stored gluing
  permutation is odd.  ``new_triangulation`` reorients tetrahedra to meet
  this convention and raises ``NonOrientable`` when that is impossible.
* Edge slots 0..5 of a tetrahedron are the vertex pairs
  01, 02, 03, 12, 13, 23 in that order.
"""

import json
from dataclasses import dataclass

from . import perms
from .errors import (InvolutionViolation, UngluedFace, NonOrientable,
                     InvalidEdgeIdentification)

EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
SLOT_OF_PAIR = {frozenset(p): i for i, p in enumerate(EDGE_PAIRS)}

#: slot -> index of the shape parameter (0 for z, 1 for z', 2 for z'')
#: living on that edge.  z sits on the pair {01, 23}, z' on {03, 12},
#: z'' on {02, 13}.
PARAM_OF_SLOT = (0, 2, 1, 1, 2, 0)

#: slot -> opposite slot (opposite edges carry the same parameter).
OPPOSITE_SLOT = (5, 4, 3, 2, 1, 0)


@dataclass(frozen=True)
class FaceGluing:
    """One face identification: (tet, face) -> (tet, face) via perm."""
    src: tuple
    dst: tuple
    perm: tuple

    def reversed(self):
        return FaceGluing(self.dst, self.src, perms.invert(self.perm))


@dataclass(frozen=True)
class EdgeClass:
    """An edge of the quotient complex.

    ``incidences`` lists (tet, slot, sign) triples; the sign records whether
    the slot's low-to-high vertex direction agrees with the class's reference
    direction, which is needed to transport edge directions through moves.
    """
    index: int
    incidences: tuple

    @property
    def degree(self):
        return len(self.incidences)

    def tets(self):
        return tuple(t for t, _, _ in self.incidences)


class Triangulation:
    """A closed, oriented ideal triangulation.

    Instances are immutable after construction and safe to share across
    threads; every operation in this package returns fresh values.
    """

    def __init__(self, size, gluing_map, labels=None):
        self.size = size
        self.gluings = gluing_map          # (tet, face) -> (tet, face, perm)
        self.labels = tuple(labels) if labels else default_labels(size)
        self._edges = None
        self._edge_lookup = None

    # -- gluing access ----------------------------------------------------

    def glued_to(self, tet, face):
        return self.gluings[(tet, face)]

    def gluing_list(self):
        """Each identification once, keyed by its lexicographically
        smaller side."""
        out = []
        for (t, f), (t2, f2, p) in sorted(self.gluings.items()):
            if (t, f) <= (t2, f2):
                out.append(FaceGluing((t, f), (t2, f2), p))
        return out

    # -- edges -------------------------------------------------------------

    @property
    def edges(self):
        if self._edges is None:
            self._edges = compute_edges(self)
            lookup = {}
            for e in self._edges:
                for t, s, sign in e.incidences:
                    lookup[(t, s)] = (e.index, sign)
            self._edge_lookup = lookup
        return self._edges

    def edge_at(self, tet, slot):
        """(edge class index, sign) of the given edge slot."""
        self.edges
        return self._edge_lookup[(tet, slot)]

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        return {
            "tets": self.size,
            "gluings": [
                {"src": list(g.src), "dst": list(g.dst), "perm": list(g.perm)}
                for g in self.gluing_list()
            ],
            "labels": list(self.labels),
        }

    def to_json(self, **kw):
        return json.dumps(self.to_json_dict(), **kw)

    def __repr__(self):
        return "Triangulation(%d tetrahedra)" % self.size


def default_labels(size):
    if size <= 26:
        return tuple(chr(ord("A") + i) for i in range(size))
    return tuple("T%d" % i for i in range(size))


def new_triangulation(gluings, size, labels=None):
    """Validate face gluings and build a Triangulation.

    ``gluings`` lists each identification exactly once (either side may be
    the source).  Tetrahedra are reoriented so that every stored permutation
    is odd; NonOrientable is raised when no such assignment exists.
    """
    if size < 1:
        raise UngluedFace("triangulation needs at least one tetrahedron")
    gmap = {}
    for g in gluings:
        for side in (g, g.reversed()):
            (t, f), (t2, f2), p = side.src, side.dst, side.perm
            if not (0 <= t < size and 0 <= t2 < size and 0 <= f < 4 and 0 <= f2 < 4):
                raise InvolutionViolation("gluing %s out of range" % (side,))
            if sorted(p) != [0, 1, 2, 3]:
                raise InvolutionViolation("%s is not a permutation" % (p,))
            if p[f] != f2:
                raise InvolutionViolation(
                    "perm %s does not map omitted vertex %d to %d" % (p, f, f2))
            if (t, f) == (t2, f2):
                raise InvolutionViolation(
                    "face (%d,%d) glued to itself" % (t, f))
            if (t, f) in gmap:
                raise InvolutionViolation(
                    "face (%d,%d) glued more than once" % (t, f))
            gmap[(t, f)] = (t2, f2, p)
    for t in range(size):
        for f in range(4):
            if (t, f) not in gmap:
                raise UngluedFace("face (%d,%d) is not glued" % (t, f))
    gmap, labels = _orient(size, gmap, labels)
    return Triangulation(size, gmap, labels)


def _orient(size, gmap, labels):
    """Flip tetrahedra so every gluing permutation is odd."""
    sign = [0] * size
    sign[0] = 1
    stack = [0]
    seen = 1
    while stack:
        t = stack.pop()
        for f in range(4):
            t2, _, p = gmap[(t, f)]
            want = sign[t] if perms.is_odd(p) else -sign[t]
            if sign[t2] == 0:
                sign[t2] = want
                seen += 1
                stack.append(t2)
            elif sign[t2] != want:
                raise NonOrientable("no consistent orientation assignment")
    if seen < size:
        raise NonOrientable("triangulation is not connected")
    if all(s == 1 for s in sign):
        return gmap, labels
    flip = perms.DOUBLE_TRANSPOSITIONS[0][:2] + (2, 3)  # (1,0,2,3)
    vperms = [flip if sign[t] < 0 else perms.IDENTITY for t in range(size)]
    return _relabel_map(size, gmap, list(range(size)), vperms), labels


def _relabel_map(size, gmap, tet_map, vperms):
    new = {}
    for (t, f), (t2, f2, p) in gmap.items():
        q = perms.compose(vperms[t2], perms.compose(p, perms.invert(vperms[t])))
        new[(tet_map[t], vperms[t][f])] = (tet_map[t2], vperms[t2][f2], q)
    return new


def relabel(tri, tet_map, vperms, labels=None):
    """Relabel tetrahedra and vertices.

    ``tet_map[t]`` is the new index of old tetrahedron ``t`` and
    ``vperms[t]`` takes its old vertex labels to new ones.  The result is
    re-validated, so an orientation-reversing relabeling is reoriented back
    to the all-odd convention.
    """
    gmap = _relabel_map(tri.size, tri.gluings, tet_map, vperms)
    gluings = []
    for (t, f), (t2, f2, p) in sorted(gmap.items()):
        if (t, f) <= (t2, f2):
            gluings.append(FaceGluing((t, f), (t2, f2), p))
    if labels is None:
        labels = [None] * tri.size
        for t in range(tri.size):
            labels[tet_map[t]] = tri.labels[t]
    return new_triangulation(gluings, tri.size, labels)


def compute_edges(tri):
    """Quotient the 6T edge slots by the face gluings.

    Union-find with a sign bit: each slot's canonical direction runs from
    its lower to its higher vertex, and unions record whether directions
    agree.  A slot identified with itself reversed would make the edge
    non-manifold and raises InvalidEdgeIdentification.
    """
    n = tri.size * 6
    parent = list(range(n))
    relsign = [1] * n   # sign of x relative to parent[x]

    def find(x):
        path = []
        root = x
        while parent[root] != root:
            path.append(root)
            root = parent[root]
        s = 1
        for y in reversed(path):   # nearest-to-root first
            s *= relsign[y]
            parent[y] = root
            relsign[y] = s
        return root, s

    def union(x, y, s):
        # constraint: direction(y) == s * direction(x)
        rx, sx = find(x)
        ry, sy = find(y)
        if rx == ry:
            if sx * s != sy:
                raise InvalidEdgeIdentification(
                    "edge slot identified with itself reversed")
            return
        parent[ry] = rx
        relsign[ry] = sx * s * sy

    for (t, f), (t2, f2, p) in tri.gluings.items():
        verts = [v for v in range(4) if v != f]
        for i in range(3):
            for j in range(i + 1, 3):
                u, v = verts[i], verts[j]
                a = t * 6 + SLOT_OF_PAIR[frozenset((u, v))]
                b = t2 * 6 + SLOT_OF_PAIR[frozenset((p[u], p[v]))]
                s = 1 if (u < v) == (p[u] < p[v]) else -1
                union(a, b, s)

    classes = {}
    for x in range(n):
        root, s = find(x)
        classes.setdefault(root, []).append((x // 6, x % 6, s))
    edges = []
    for idx, key in enumerate(sorted(classes, key=lambda r: min(classes[r]))):
        inc = sorted(classes[key])
        ref = inc[0][2]
        inc = tuple((t, s, sign * ref) for t, s, sign in inc)
        edges.append(EdgeClass(idx, inc))
    return edges


# -- JSON ------------------------------------------------------------------

def from_json_dict(data):
    gluings = [FaceGluing(tuple(g["src"]), tuple(g["dst"]), tuple(g["perm"]))
               for g in data["gluings"]]
    return new_triangulation(gluings, data["tets"], data.get("labels"))


def from_json(text):
    return from_json_dict(json.loads(text))


def load(path):
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def save(tri, path):
    with open(path, "w") as fh:
        json.dump(tri.to_json_dict(), fh, indent=1)
        fh.write("\n")


# -- paper-style gluing tables ---------------------------------------------

FACE_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def face_of_triple(triple):
    return ({0, 1, 2, 3} - set(triple)).pop()


def gluing_table(tri):
    """Render the gluing data as rows 'A: B(312) J(012) B(013) J(023)'.

    Row order follows tetrahedron indices; columns are the faces 012, 013,
    023, 123.  Each entry shows the destination tetrahedron label and the
    images of the ordered source triple.
    """
    rows = []
    for t in range(tri.size):
        cells = []
        for triple in FACE_TRIPLES:
            f = face_of_triple(triple)
            t2, _, p = tri.glued_to(t, f)
            cells.append("%s(%d%d%d)" % (tri.labels[t2], p[triple[0]],
                                         p[triple[1]], p[triple[2]]))
        rows.append((tri.labels[t], tuple(cells)))
    return rows
