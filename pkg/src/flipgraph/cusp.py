"""Cusp triangulations: vertex links, peripheral curves, developing maps.

Every (tetrahedron, vertex) pair contributes one triangle to the link of
the ideal vertices.  In the triangle at vertex v, corners are named by the
other three vertex labels u (the corner on edge {v,u}) and sides by the
three faces f != v (side f lies in face f, opposite corner f).  Face
gluings identify sides: side f of (t, v) meets side p(f) of (t2, p(v)).

With all tetrahedra positively oriented, the counterclockwise corner order
of the triangle at vertex v is the cyclic triple below, and the corner on
edge {v,u} carries the shape parameter of that edge, so corner parameters
run z, z', z'' counterclockwise and corner angles are their arguments.
"""

from dataclasses import dataclass

from .errors import NonTorusCusp, DegenerateShape
from .shapes import param_triple, is_degenerate
from .tri import SLOT_OF_PAIR, PARAM_OF_SLOT

#: vertex -> counterclockwise corner labels of its link triangle.
CCW_CORNERS = {0: (1, 3, 2), 1: (0, 2, 3), 2: (0, 3, 1), 3: (0, 1, 2)}


def corner_param_index(v, u):
    """Index (0,1,2 for z,z',z'') of the parameter at corner u of the
    triangle at vertex v."""
    return PARAM_OF_SLOT[SLOT_OF_PAIR[frozenset((v, u))]]


@dataclass(frozen=True)
class PeripheralCurve:
    """A closed walk through cusp triangles with its holonomy bookkeeping.

    ``steps`` lists (triangle, entry side, exit side); ``coeffs`` maps
    (tetrahedron, parameter index) to the integer exponent this curve puts
    on that log-parameter, and ``parity`` counts direction flips mod 2, so
    the holonomy derivative is (-1)^parity * exp(sum of coeff * log param).
    """
    steps: tuple
    coeffs: tuple      # ((tet, param index, exponent), ...)
    parity: int


class CuspTriangulation:
    """The triangulated vertex links of a triangulation."""

    def __init__(self, tri):
        self.tri = tri
        self.triangles = [(t, v) for t in range(tri.size) for v in range(4)]
        self._index = {tv: i for i, tv in enumerate(self.triangles)}

        # side gluings between cusp triangles
        self.side_glue = {}
        for (t, f), (t2, f2, p) in tri.gluings.items():
            for v in range(4):
                if v != f:
                    self.side_glue[((t, v), f)] = ((t2, p[v]), f2)

        self._corner_class = self._merge_corners()
        self.cusps = self._split_components()
        for c in self.cusps:
            if c["chi"] != 0:
                raise NonTorusCusp("cusp %d has Euler characteristic %d"
                                   % (c["index"], c["chi"]))
        for c in self.cusps:
            self._build_peripheral(c)

    # -- combinatorics ------------------------------------------------------

    def _merge_corners(self):
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        for ((t, v), f), ((t2, v2), f2) in self.side_glue.items():
            p = self.tri.glued_to(t, f)[2]
            for u in range(4):
                if u != v and u != f:
                    a, b = find((t, v, u)), find((t2, v2, p[u]))
                    if a != b:
                        parent[a] = b
        classes = {}
        out = {}
        for t in range(self.tri.size):
            for v in range(4):
                for u in range(4):
                    if u != v:
                        root = find((t, v, u))
                        out[(t, v, u)] = classes.setdefault(root, len(classes))
        self.n_vertices = len(classes)
        return out

    def corner_class(self, t, v, u):
        """Cusp-vertex id of the corner at edge {v,u} of (t,v)."""
        return self._corner_class[(t, v, u)]

    def _split_components(self):
        comp = {}
        cusps = []
        for seed in self.triangles:
            if seed in comp:
                continue
            idx = len(cusps)
            stack = [seed]
            comp[seed] = idx
            members = [seed]
            while stack:
                tv = stack.pop()
                t, v = tv
                for f in range(4):
                    if f == v:
                        continue
                    nb, _ = self.side_glue[(tv, f)]
                    if nb not in comp:
                        comp[nb] = idx
                        members.append(nb)
                        stack.append(nb)
            members.sort(key=self._index.get)
            verts = {self.corner_class(t, v, u)
                     for (t, v) in members for u in range(4) if u != v}
            faces = len(members)
            chi = len(verts) - (3 * faces) // 2 + faces
            cusps.append({"index": idx, "triangles": members,
                          "vertices": verts, "chi": chi})
        self.component_of = comp
        return cusps

    # -- peripheral curves ---------------------------------------------------

    def _build_peripheral(self, cusp):
        """Tree-cotree basis: BFS dual tree, primal tree on the leftover
        edges, and the two remaining edges give homology generators with
        intersection number +-1."""
        members = cusp["triangles"]
        root = members[0]
        parent = {root: None}     # triangle -> (parent triangle, side into parent)
        order = [root]
        tree_sides = set()
        qi = 0
        while qi < len(order):
            tv = order[qi]
            t, v = tv
            for f in sorted(x for x in range(4) if x != v):
                nb, f2 = self.side_glue[(tv, f)]
                if nb not in parent:
                    parent[nb] = (tv, f)
                    tree_sides.add((tv, f))
                    tree_sides.add((nb, f2))
                    order.append(nb)
            qi += 1

        # undirected non-tree edges, deterministic order
        nontree = []
        seen = set()
        for tv in members:
            for f in sorted(x for x in range(4) if x != tv[1]):
                if (tv, f) in tree_sides or (tv, f) in seen:
                    continue
                other = self.side_glue[(tv, f)]
                seen.add((tv, f))
                seen.add(other)
                nontree.append(((tv, f), other))

        # primal spanning tree over cusp vertices
        vparent = {}

        def vfind(x):
            while vparent.get(x, x) != x:
                vparent[x] = vparent.get(vparent[x], vparent[x])
                x = vparent[x]
            return x

        xedges = []
        primal = []
        for side_a, side_b in nontree:
            (t, v), f = side_a
            ends = [self.corner_class(t, v, u)
                    for u in range(4) if u != v and u != f]
            ra, rb = vfind(ends[0]), vfind(ends[1])
            if ra == rb:
                xedges.append((side_a, side_b))
            else:
                vparent[ra] = rb
                primal.append((side_a, side_b))
        if len(xedges) != 2:
            raise NonTorusCusp("expected 2 leftover edges on a torus, got %d"
                               % len(xedges))
        cusp["tree_parent"] = parent
        cusp["nontree"] = nontree
        cusp["xedges"] = xedges
        cusp["curves"] = tuple(self._curve_for(parent, a, b)
                               for a, b in xedges)

    def _tree_path(self, parent, src):
        path = [src]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]][0])
        return path

    def _curve_for(self, parent, side_a, side_b):
        """Closed dual walk crossing only the given non-tree edge: enter
        triangle A through it, run the dual tree path to B, cross back."""
        (tri_a, f_a), (tri_b, f_b) = side_a, side_b
        up_a = self._tree_path(parent, tri_a)
        up_b = self._tree_path(parent, tri_b)
        common = 0
        while (common < min(len(up_a), len(up_b))
               and up_a[len(up_a) - 1 - common] == up_b[len(up_b) - 1 - common]):
            common += 1
        # A up to the common ancestor, then back down to B
        join = up_a[:len(up_a) - common + 1] + up_b[:len(up_b) - common][::-1]
        steps = []
        entry = f_a
        for i, tv in enumerate(join):
            if i + 1 < len(join):
                nxt = join[i + 1]
                if parent[nxt] is not None and parent[nxt][0] == tv:
                    exit_side = parent[nxt][1]
                else:
                    ptv, f = parent[tv]
                    assert ptv == nxt
                    exit_side = self.side_glue[(ptv, f)][1]
                steps.append((tv, entry, exit_side))
                entry = self.side_glue[(tv, exit_side)][1]
            else:
                steps.append((tv, entry, f_b))
        return self._walk_bookkeeping(tuple(steps))

    def _walk_bookkeeping(self, steps):
        """Per-corner exponents and flip parity of a closed dual walk.

        Inside a triangle with ccw corners (X, Y, Z), turning around pivot X
        from the side opposite Z to the side opposite Y multiplies the
        developed edge vector by the corner parameter at X (its inverse for
        the reverse turn); carrying the vector across a side flips its sign
        whenever the pivot hops to the other end of the crossed edge.
        """
        coeffs = {}
        pivots = []
        for (t, v), entry, exit_side in steps:
            ccw = CCW_CORNERS[v]
            pivot = next(u for u in ccw if u != entry and u != exit_side)
            i = ccw.index(pivot)
            y, z = ccw[(i + 1) % 3], ccw[(i + 2) % 3]
            if (entry, exit_side) == (z, y):
                sign = 1
            elif (entry, exit_side) == (y, z):
                sign = -1
            else:
                raise AssertionError("sides do not share the pivot corner")
            key = (t, corner_param_index(v, pivot))
            coeffs[key] = coeffs.get(key, 0) + sign
            pivots.append(pivot)
        flips = 0
        for i, ((t, v), entry, exit_side) in enumerate(steps):
            p = self.tri.glued_to(t, exit_side)[2]
            if p[pivots[i]] != pivots[(i + 1) % len(steps)]:
                flips += 1
        coeffs = tuple(sorted((t, k, c) for (t, k), c in coeffs.items() if c))
        return PeripheralCurve(steps, coeffs, flips % 2)

    # -- counts ---------------------------------------------------------------

    def triangle_count(self, cusp_index=None):
        if cusp_index is None:
            return len(self.triangles)
        return len(self.cusps[cusp_index]["triangles"])


def cusp_triangulation(tri):
    """Vertex links of ``tri``; raises NonTorusCusp unless every cusp is a
    torus."""
    return CuspTriangulation(tri)


# -- developing into the Euclidean plane -------------------------------------


def _corner_params(shapes, t, v):
    """Corner label -> complex parameter for the link triangle at (t, v)."""
    triple = param_triple(shapes[t])
    return {u: triple[corner_param_index(v, u)] for u in range(4) if u != v}


def _place_first(shapes, tv):
    """Place a triangle with ccw corners at 0, 1 and its shape point."""
    t, v = tv
    a, b, c = CCW_CORNERS[v]
    p = _corner_params(shapes, t, v)
    return {a: 0j, b: 1 + 0j, c: p[a]}


def _third_corner(params, ccw, pos):
    """Fill in the one missing ccw corner from the other two.

    Uses pos[c] = pos[a] + p_a * (pos[b] - pos[a]) for ccw corners (a,b,c).
    """
    a, b, c = ccw
    if c not in pos:
        pos[c] = pos[a] + params[a] * (pos[b] - pos[a])
    elif a not in pos:
        pos[a] = (params[a] * pos[b] - pos[c]) / (params[a] - 1.0)
    else:
        pos[b] = pos[a] + (pos[c] - pos[a]) / params[a]
    return pos


class DevelopedCusp:
    """Planar development of one fundamental domain per cusp.

    ``coords[(t, v)]`` maps corner labels to complex coordinates of the
    breadth-first copy of that triangle.  ``holonomies[c]`` holds the two
    similarity transforms (a, b), z -> a z + b, attached to the tree-cotree
    generators of cusp c; for a complete structure both are translations
    (a = 1) and ``translations`` exposes their vectors.  The development is
    scale-normalized: the first triangle's longest side is the unit
    interval.
    """

    def __init__(self, cusp, shapes):
        self.cusp = cusp
        self.shapes = tuple(shapes)
        for z in self.shapes:
            if is_degenerate(z):
                raise DegenerateShape("cannot develop through shape %s" % z)
        self.coords = {}
        self.holonomies = []
        self.mismatches = []
        for c in cusp.cusps:
            self._develop_component(c)

    def _develop_component(self, comp):
        cuspt = self.cusp
        tri = cuspt.tri
        members = comp["triangles"]
        root = members[0]
        pos0 = _place_first(self.shapes, root)
        # scale-normalize: longest side of the seed triangle onto [0, 1]
        t, v = root
        ccw = CCW_CORNERS[v]
        sides = [(abs(pos0[ccw[(i + 1) % 3]] - pos0[ccw[i]]), i) for i in range(3)]
        _, i = max(sides)
        za, zb = pos0[ccw[i]], pos0[ccw[(i + 1) % 3]]
        self.coords[root] = {u: (z - za) / (zb - za) for u, z in pos0.items()}

        order = [root]
        seen = {root}
        qi = 0
        while qi < len(order):
            tv = order[qi]
            qi += 1
            t, v = tv
            here = self.coords[tv]
            for f in sorted(x for x in range(4) if x != v):
                (t2, v2), f2 = cuspt.side_glue[(tv, f)]
                p = tri.glued_to(t, f)[2]
                shared = [u for u in range(4) if u != v and u != f]
                implied = {p[u]: here[u] for u in shared}
                if (t2, v2) not in seen:
                    params = _corner_params(self.shapes, t2, v2)
                    self.coords[(t2, v2)] = _third_corner(
                        params, CCW_CORNERS[v2], dict(implied))
                    seen.add((t2, v2))
                    order.append((t2, v2))
                else:
                    # non-tree adjacency: the deck transform carrying the
                    # placed copy to the implied one
                    there = self.coords[(t2, v2)]
                    us = [p[u] for u in shared]
                    a = ((implied[us[1]] - implied[us[0]])
                         / (there[us[1]] - there[us[0]]))
                    b = implied[us[0]] - a * there[us[0]]
                    self.mismatches.append(((tv, f), ((t2, v2), f2), a, b))
        hols = []
        for side_a, side_b in comp["xedges"]:
            for rec in self.mismatches:
                if rec[0] in (side_a, side_b) or rec[1] in (side_a, side_b):
                    hols.append((rec[2], rec[3]))
                    break
        self.holonomies.append(tuple(hols))

    def translations(self, cusp_index=0):
        return tuple(b for _, b in self.holonomies[cusp_index])

    def triangle(self, tv):
        t, v = tv
        return [self.coords[tv][u] for u in CCW_CORNERS[v]]

    def side_lengths(self, tv):
        pts = self.triangle(tv)
        return sorted(abs(pts[(i + 1) % 3] - pts[i]) for i in range(3))

    def area(self, tv):
        a, b, c = self.triangle(tv)
        return ((b - a).conjugate() * (c - a)).imag / 2.0


def develop_cusp(cusp, shapes):
    """Develop every cusp of a converged (non-degenerate) solution."""
    if hasattr(shapes, "shapes"):
        shapes = shapes.shapes
    return DevelopedCusp(cusp, shapes)


def develop_walk(cusp, shapes, curve):
    """Develop a peripheral walk once around and return the closing
    similarity (a, b): the holonomy of the curve.

    Used to cross-validate the algebraic bookkeeping in PeripheralCurve:
    a == (-1)^parity * exp(sum coeff * log param) for any non-degenerate
    shape assignment, solution or not.
    """
    if hasattr(shapes, "shapes"):
        shapes = shapes.shapes
    tri = cusp.tri
    steps = curve.steps
    start = steps[0][0]
    pos = _place_first(shapes, start)
    current = start
    for (tv, entry, exit_side) in steps:
        assert tv == current
        t, v = tv
        (t2, v2), f2 = cusp.side_glue[(tv, exit_side)]
        p = tri.glued_to(t, exit_side)[2]
        shared = [u for u in range(4) if u != v and u != exit_side]
        implied = {p[u]: pos[u] for u in shared}
        params = _corner_params(shapes, t2, v2)
        pos = _third_corner(params, CCW_CORNERS[v2], dict(implied))
        current = (t2, v2)
    assert current == start
    first = _place_first(shapes, start)
    final = pos
    us = [u for u in range(4) if u != start[1]][:2]
    a = (final[us[1]] - final[us[0]]) / (first[us[1]] - first[us[0]])
    b = final[us[0]] - a * first[us[0]]
    return a, b


def curve_log_holonomy(shapes, curve):
    """(-1)^parity * exp(sum of coeff * log corner-parameter)."""
    if hasattr(shapes, "shapes"):
        shapes = shapes.shapes
    total = 1.0 + 0j
    for t, k, c in curve.coeffs:
        total *= param_triple(shapes[t])[k] ** c
    return total * (-1) ** curve.parity


# -- quadrilateral convexity (cusp view of 2-2 moves) -------------------------


def quad_is_strictly_convex(points, rel_tol=1e-9):
    """True iff the cyclic quadrilateral is strictly convex.

    Cross products at all four corners must carry the same sign, each
    exceeding rel_tol relative to the incident side lengths; a vanishing
    corner (flat tetrahedron on the 3-manifold side) fails the test.
    """
    n = len(points)
    sign = 0
    for i in range(n):
        a, b, c = points[i - 1], points[i], points[(i + 1) % n]
        u, v = b - a, c - b
        cross = (u.conjugate() * v).imag
        bound = rel_tol * abs(u) * abs(v)
        if abs(cross) <= bound:
            return False
        s = 1 if cross > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def develop_quad(cusp, shapes, tv, f):
    """Develop the two cusp triangles meeting along side f of ``tv`` and
    return the quadrilateral (off-corner, shared, off-corner, shared)."""
    if hasattr(shapes, "shapes"):
        shapes = shapes.shapes
    tri = cusp.tri
    t, v = tv
    here = _place_first(shapes, tv)
    (t2, v2), f2 = cusp.side_glue[(tv, f)]
    if (t2, v2) == (t, v):
        raise NonTorusCusp("side glues a cusp triangle to itself")
    p = tri.glued_to(t, f)[2]
    shared = [u for u in range(4) if u != v and u != f]
    implied = {p[u]: here[u] for u in shared}
    params = _corner_params(shapes, t2, v2)
    there = _third_corner(params, CCW_CORNERS[v2], dict(implied))
    x = here[f]            # corner opposite the shared side
    y = there[f2]
    return (x, here[shared[0]], y, here[shared[1]])


def quad_flip_geometric(developed, tv, f, rel_tol=1e-9):
    """True iff the 2-2 move across side f of cusp triangle ``tv`` is
    geometric, i.e. the union of the two developed triangles is strictly
    convex so the flipped diagonal is an interior Euclidean geodesic."""
    quad = develop_quad(developed.cusp, developed.shapes, tv, f)
    return quad_is_strictly_convex(quad, rel_tol)


def site_quads(cusp, shapes, tet, face):
    """The three cusp quadrilaterals induced by the face gluing
    (tet, face): one per vertex of the shared face."""
    quads = []
    for v in range(4):
        if v != face:
            quads.append(develop_quad(cusp, shapes, (tet, v), face))
    return quads


# -- fan geometry -------------------------------------------------------------


def develop_strip(cusp, shapes, tets):
    """Develop the cusp triangles of the given tetrahedra, restricted to
    adjacencies inside the set.  Returns one coords dict per connected
    component (each is an embedded disk for geometric fans)."""
    if hasattr(shapes, "shapes"):
        shapes = shapes.shapes
    tri = cusp.tri
    tets = set(tets)
    tris = [tv for tv in cusp.triangles if tv[0] in tets]
    out = []
    seen = set()
    for seed in tris:
        if seed in seen:
            continue
        coords = {seed: _place_first(shapes, seed)}
        seen.add(seed)
        queue = [seed]
        qi = 0
        while qi < len(queue):
            tv = queue[qi]
            qi += 1
            t, v = tv
            here = coords[tv]
            for f in sorted(x for x in range(4) if x != v):
                (t2, v2), f2 = cusp.side_glue[(tv, f)]
                if t2 not in tets or (t2, v2) in seen:
                    continue
                p = tri.glued_to(t, f)[2]
                shared = [u for u in range(4) if u != v and u != f]
                implied = {p[u]: here[u] for u in shared}
                params = _corner_params(shapes, t2, v2)
                coords[(t2, v2)] = _third_corner(params, CCW_CORNERS[v2],
                                                 dict(implied))
                seen.add((t2, v2))
                queue.append((t2, v2))
        out.append(coords)
    return out


#: the edge preserved along a run of equal letters (the fan's pivot axis):
#: layering by L carries edge {0,3} up the run, layering by R carries {0,1}.
RUN_AXIS = {"L": (0, 3), "R": (0, 1)}


def fan_chains(tri, word, shapes):
    """The developed central-vertex chains of every fan, both copies.

    For a run of k equal letters starting at position s, the k vertex links
    (t_i, side) at either end of the run's axis edge share the developed
    image of that end (the fan's node) and their opposite sides concatenate
    into the chain of fan vertices, ordered along the fan; its endpoints
    are the same cusp vertex one torus period apart.  Returns a list of
    (letter, start, side, points) tuples with k+1 points each.
    """
    from . import words as words_mod
    if hasattr(shapes, "shapes"):
        shapes = shapes.shapes
    word = words_mod.as_word(word)
    cuspt = cusp_triangulation(tri)
    n = word.size
    chains = []
    for letter, s, k in words_mod.fan_decomposition(word).runs:
        if k < 2:
            continue
        for side, node_corner in (RUN_AXIS[letter], RUN_AXIS[letter][::-1]):
            # the two ends of the axis see the layer diagonals offset by
            # one position; shift the far end's window to center its chain
            off = 0 if side == RUN_AXIS[letter][0] else 1
            tris = [((s + i + off) % n, side) for i in range(k)]
            coords = {tris[0]: _place_first(shapes, tris[0])}
            for i in range(k - 1):
                tv, nxt = tris[i], tris[i + 1]
                t, v = tv
                here = coords[tv]
                for f in range(4):
                    if f != v and cuspt.side_glue[(tv, f)][0] == nxt:
                        break
                else:
                    raise AssertionError("fan links are not adjacent")
                p = tri.glued_to(t, f)[2]
                shared = [u for u in range(4) if u != v and u != f]
                implied = {p[u]: here[u] for u in shared}
                params = _corner_params(shapes, *nxt)
                coords[nxt] = _third_corner(params, CCW_CORNERS[nxt[1]],
                                            dict(implied))
            node = cuspt.corner_class(tris[0][0], side, node_corner)

            def _non_node(tv):
                t, v = tv
                us = [u for u in range(4)
                      if u != v and cuspt.corner_class(t, v, u) != node]
                assert len(us) == 2, "fan link does not touch the node"
                return us

            def _same(a, b):
                return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))

            # consecutive star triangles share one non-node corner, whose
            # developed positions coincide exactly; walk the opposite sides
            u0, u1 = _non_node(tris[0])
            if k > 1:
                second = tris[1]
                nxt_pos = [coords[second][u] for u in range(4)
                           if u != second[1]]
                if any(_same(coords[tris[0]][u0], q) for q in nxt_pos):
                    u0, u1 = u1, u0
            pts = [coords[tris[0]][u0], coords[tris[0]][u1]]
            for tv in tris[1:]:
                a, b = (coords[tv][u] for u in _non_node(tv))
                pts.append(b if _same(a, pts[-1]) else a)
            chains.append((letter, s, side, pts))
    return chains


def chain_turn_signs(points, tol=1e-9):
    """Signs (+1, -1 or 0) of cross products of consecutive differences
    along a polyline, 0 when below tol relative to the segment lengths."""
    signs = []
    for i in range(len(points) - 2):
        u = points[i + 1] - points[i]
        v = points[i + 2] - points[i + 1]
        cross = (u.conjugate() * v).imag
        if abs(cross) <= tol * abs(u) * abs(v):
            signs.append(0)
        else:
            signs.append(1 if cross > 0 else -1)
    return signs


def single_inflection(signs):
    """True iff the nonzero signs are one block of +1s followed by one block
    of -1s (or the reverse), both nonempty: a single inflection."""
    core = [s for s in signs if s != 0]
    if not core or core[0] == 0:
        return False
    changes = sum(1 for a, b in zip(core, core[1:]) if a != b)
    return changes == 1


# -- figures ------------------------------------------------------------------

_PALETTE = ["#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
            "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
            "#9a6324", "#fffac8", "#800000", "#aaffc3", "#808000", "#ffd8b1",
            "#000075", "#808080"]


def write_svg(developed, path, size=800):
    """Render the developed fundamental domain, one color per tetrahedron."""
    tris = [(tv, developed.triangle(tv)) for tv in developed.coords]
    xs = [z.real for _, pts in tris for z in pts]
    ys = [z.imag for _, pts in tris for z in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    scale = (size - 20) / span

    def sx(z):
        return 10 + (z.real - x0) * scale

    def sy(z):
        return size - 10 - (z.imag - y0) * scale

    lines = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
             % (size, size)]
    for (t, v), pts in tris:
        color = _PALETTE[t % len(_PALETTE)]
        coords = " ".join("%.3f,%.3f" % (sx(z), sy(z)) for z in pts)
        lines.append('<polygon points="%s" fill="%s" fill-opacity="0.65" '
                     'stroke="white" stroke-width="1.2"/>' % (coords, color))
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
