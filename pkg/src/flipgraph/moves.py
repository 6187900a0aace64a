"""2-3 and 3-2 Pachner moves with exact shape transfer.

Combinatorial normal form for the bipyramid.  Given a face gluing between
distinct tetrahedra s and t, relabel s by an even permutation so its apex
(the vertex off the shared face) is 3 and the equator is x0 x1 x2 = labels
0 1 2; relabel t likewise, with the equator matched through the gluing as
x1 x0 x2 (one transposition: the two sides induce opposite orientations on
the face).  The 2-3 move replaces s, t by N0, N1, N2 where

    Ni = (0 = t-apex b, 1 = s-apex a, 2 = x_i, 3 = x_{i+1})   (i mod 3)

each keeping one equator edge {x_i, x_{i+1}} and sharing the new central
edge {a, b} = {0, 1}; Ni's face 2 glues to N_{i+1}'s face 3 by (0,1,3,2).

Shape transfer.  Dihedral angles add across the shared face, so the new
tetrahedron keeping equator edge e carries the product of the two old edge
parameters at e.  In normalized coordinates with z, w the s- and t-shapes:

    N0: z w        N1: z' w''        N2: z'' w'

which is the classical transfer r = z'w', u = wz'', v = zw'' applied to
the apex-edge parameters (z'', w''): both old tetrahedra meet the central
edge's quadrilateral there.  All transfers are validated a posteriori by
the residual of the new triangulation's gluing equations.

Bipyramid in normalized coordinates, with the central edge a--b vertical::

                 b = t-apex (t-label 3)        Ni vertex labels:
                /|\                              0 = b
               / | \         equator x0 x1 x2    1 = a
             x0--+--x1       (s-labels 0 1 2,    2 = x_i
               \ | /          t-labels 1 0 2)    3 = x_{i+1}
                \|/
                 a = s-apex (s-label 3)

N0 keeps equator edge {x0,x1}, N1 keeps {x1,x2}, N2 keeps {x2,x0}; each
new shape above sits on the central edge {a, b} = {0, 1} of its
tetrahedron, so r u v = 1 is that edge's gluing equation.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from . import geometry
from .config import DEFAULT_CONFIG
from .errors import (DegenerateInput, InconsistentTriple, InvalidSite,
                     RepeatedTetrahedron, SameTetrahedron, WrongDegree)
from .perms import compose, invert, is_odd
from .shapes import ShapeClass, classify_shape, param_triple, zp, zpp
from .tri import (EDGE_PAIRS, PARAM_OF_SLOT, SLOT_OF_PAIR, FaceGluing,
                  new_triangulation)

_Q01 = (1, 0, 2, 3)
_CYCLE = (0, 1, 3, 2)   # Ni face 2 -> N_{i+1} face 3


@dataclass(frozen=True)
class MoveSite:
    """A 2-3 site (face joining two tetrahedra) or 3-2 site (edge index)."""
    kind: str            # "2-3" or "3-2"
    face: tuple = None   # (tet, face) for 2-3
    edge: int = None     # edge class index for 3-2

    def __str__(self):
        if self.kind == "2-3":
            return "2-3@face(%d,%d)" % self.face
        return "3-2@edge(%d)" % self.edge


@dataclass(frozen=True)
class MoveOutcome:
    """A performed move: result plus index bookkeeping and shapes."""
    triangulation: object
    old_to_new: tuple    # old tet index -> new index (None for consumed tets)
    new_tets: tuple      # indices of the created tetrahedra
    shapes: tuple        # transferred shapes, or None if none were supplied


@dataclass(frozen=True)
class MoveResult:
    """Spec-facing outcome of classify_move."""
    triangulation: object
    shapes: object       # ShapeAssignment with the transferred shapes
    move_class: str      # Geometric | Flat | NegativelyOriented | Degenerate
    outcome: object      # the underlying MoveOutcome


# -- shape transfer ----------------------------------------------------------

def _check_not_degenerate(*zs):
    eps = DEFAULT_CONFIG.eps_deg
    for z in zs:
        if abs(z) <= eps or abs(z - 1.0) <= eps or 1.0 / abs(z) <= eps:
            raise DegenerateInput("shape %s too close to {0, 1, infinity}" % z)


def transfer_shapes_23(z, w):
    """Shapes (r, u, v) of the three tetrahedra created by a 2-3 move from
    tetrahedra with shapes z and w: r = z'w', u = wz'', v = zw''."""
    _check_not_degenerate(z, w)
    return (zp(z) * zp(w), w * zpp(z), z * zpp(w))


def transfer_shapes_32(r, u, v, eps=None):
    """The unique (z, w) with transfer_shapes_23(z, w) == (r, u, v).

    Solving r = z'w', u = wz'' for z gives z = (r-1)/(r(1-u)) and then
    w = uz/(z-1); requires r u v = 1 (the product identity of any
    transferred triple).
    """
    eps = DEFAULT_CONFIG.eps_res if eps is None else eps
    _check_not_degenerate(r, u, v)
    if abs(r * u * v - 1.0) > eps:
        raise InconsistentTriple("r*u*v = %s is not 1" % (r * u * v,))
    z = (r - 1.0) / (r * (1.0 - u))
    w = u * z / (z - 1.0)
    _check_not_degenerate(z, w)
    return z, w


# -- relabeling helpers -------------------------------------------------------

def _even_apex_map(apex):
    """Even permutation sending the apex to 3 and the equator to 0,1,2."""
    others = [v for v in range(4) if v != apex]
    img = [0, 0, 0, 0]
    img[apex] = 3
    for i, v in enumerate(others):
        img[v] = i
    p = tuple(img)
    if is_odd(p):
        img[others[0]], img[others[1]] = 1, 0
        p = tuple(img)
    return p


def _even_edge_map(pair, flip):
    """Even permutation sending the vertex pair to {0, 1} (reversed when
    flip is set) and the rest to {2, 3}."""
    a, b = pair
    others = [v for v in range(4) if v not in pair]
    img = [0, 0, 0, 0]
    img[a], img[b] = (1, 0) if flip else (0, 1)
    img[others[0]], img[others[1]] = 2, 3
    p = tuple(img)
    if is_odd(p):
        img[others[0]], img[others[1]] = 3, 2
        p = tuple(img)
    return p


def _normalized_shape(shape, relabel):
    """Shape parameter in relabeled coordinates (even relabelings only):
    the parameter at the preimage of edge {0, 1}."""
    inv = invert(relabel)
    slot = SLOT_OF_PAIR[frozenset((inv[0], inv[1]))]
    return param_triple(shape)[PARAM_OF_SLOT[slot]]


def _rewire(tri, removed, face_map, extra_gluings, new_size, old_to_new):
    """Rebuild the gluing list after a move.

    ``face_map`` sends each boundary face (old tet, old face) of the removed
    region to (new tet, new face, vertex map); gluings wholly outside are
    re-indexed, gluings into the region are composed with the vertex maps.
    """
    gluings = list(extra_gluings)
    done = set()
    for (a, fa), (b, fb, p) in tri.gluings.items():
        if ((a, fa) in done) or ((b, fb) in done):
            continue
        done.add((a, fa))
        done.add((b, fb))
        a_in, b_in = a in removed, b in removed
        if a_in and (a, fa) not in face_map:
            continue     # interior face of the removed region
        if a_in and b_in:
            na, nfa, ra = face_map[(a, fa)]
            nb, nfb, rb = face_map[(b, fb)]
            q = compose(rb, compose(p, invert(ra)))
            gluings.append(FaceGluing((na, nfa), (nb, nfb), q))
        elif a_in:
            na, nfa, ra = face_map[(a, fa)]
            q = compose(p, invert(ra))
            gluings.append(FaceGluing((na, nfa), (old_to_new[b], fb), q))
        elif b_in:
            nb, nfb, rb = face_map[(b, fb)]
            q = compose(rb, p)
            gluings.append(FaceGluing((old_to_new[a], fa), (nb, nfb), q))
        else:
            gluings.append(FaceGluing((old_to_new[a], fa),
                                      (old_to_new[b], fb), p))
    for g in gluings:
        assert is_odd(g.perm), "move produced an orientation-reversing gluing"
    return new_triangulation(gluings, new_size)


# -- the 2-3 move -------------------------------------------------------------

def two_three_full(tri, site, shapes=None):
    """Perform a 2-3 move, returning the MoveOutcome with index maps."""
    if site.kind != "2-3":
        raise InvalidSite("not a 2-3 site: %s" % (site,))
    s, fs = site.face
    if not (0 <= s < tri.size and 0 <= fs < 4):
        raise InvalidSite("face (%d,%d) out of range" % (s, fs))
    t, ft, p = tri.glued_to(s, fs)
    if s == t:
        raise SameTetrahedron("face (%d,%d) glues tetrahedron %d to itself"
                              % (s, fs, s))

    sig_s = _even_apex_map(fs)
    sig_t = compose(_Q01, compose(sig_s, invert(p)))
    assert not is_odd(sig_t) and sig_t[ft] == 3
    inv_s, inv_t = invert(sig_s), invert(sig_t)

    size = tri.size
    old_to_new = [None] * size
    k = 0
    for i in range(size):
        if i not in (s, t):
            old_to_new[i] = k
            k += 1
    base = size - 2
    new_tets = (base, base + 1, base + 2)

    # x-index of t-normalized equator labels: t-norm 0 = x1, 1 = x0, 2 = x2
    t_of_x = (1, 0, 2)

    face_map = {}
    internal = []
    for i in range(3):
        internal.append(FaceGluing((base + i, 2), (base + (i + 1) % 3, 3),
                                   _CYCLE))
        # s's face omitting x_i -> N_{i+1} face 0
        tau = [0, 0, 0, 0]
        tau[i], tau[(i + 1) % 3], tau[(i + 2) % 3], tau[3] = 0, 2, 3, 1
        rho = compose(tuple(tau), sig_s)
        face_map[(s, inv_s[i])] = (base + (i + 1) % 3, 0, rho)
        # t's face omitting x_i -> N_{i+1} face 1
        nu = [0, 0, 0, 0]
        nu[t_of_x[i]], nu[t_of_x[(i + 1) % 3]] = 1, 2
        nu[t_of_x[(i + 2) % 3]], nu[3] = 3, 0
        rho_t = compose(tuple(nu), sig_t)
        face_map[(t, inv_t[t_of_x[i]])] = (base + (i + 1) % 3, 1, rho_t)

    new_tri = _rewire(tri, {s, t}, face_map, internal, size + 1, old_to_new)

    new_shapes = None
    if shapes is not None:
        shapes = shapes.shapes if hasattr(shapes, "shapes") else shapes
        z = _normalized_shape(shapes[s], sig_s)
        w = _normalized_shape(shapes[t], sig_t)
        r, u, v = transfer_shapes_23(zpp(z), zpp(w))
        out = [None] * (size + 1)
        for i in range(size):
            if old_to_new[i] is not None:
                out[old_to_new[i]] = shapes[i]
        out[base], out[base + 1], out[base + 2] = r, u, v
        new_shapes = tuple(out)
    return MoveOutcome(new_tri, tuple(old_to_new), new_tets, new_shapes)


def two_three(tri, site):
    """Spec-facing 2-3 move: just the new triangulation."""
    return two_three_full(tri, site).triangulation


# -- the 3-2 move -------------------------------------------------------------

def _match_cycle(tri, edge):
    """Relabel the three tetrahedra around a degree-3 edge to the N-pattern.

    Tries both directions of the central edge on the first tetrahedron and
    follows face-2 gluings around; returns [(tet, relabel)] in cyclic order.
    """
    inc = sorted(edge.incidences)
    t0, s0 = inc[0][0], inc[0][1]
    for flip in (False, True):
        sig0 = _even_edge_map(EDGE_PAIRS[s0], flip)
        chain = [(t0, sig0)]
        ok = True
        for _ in range(2):
            tc, sigc = chain[-1]
            t2, f2, p = tri.glued_to(tc, invert(sigc)[2])
            if t2 in [c[0] for c in chain]:
                ok = False
                break
            sig2 = compose(_CYCLE, compose(sigc, invert(p)))
            if is_odd(sig2):
                ok = False
                break
            chain.append((t2, sig2))
        if not ok:
            continue
        # closing condition: N2 face 2 back onto N0 face 3 via the pattern
        t2, sig2 = chain[2]
        t_back, f_back, p_back = tri.glued_to(t2, invert(sig2)[2])
        if t_back != t0:
            continue
        if compose(sig0, compose(p_back, invert(sig2))) != _CYCLE:
            continue
        return chain
    raise InvalidSite("edge %d is not a 3-2 cycle" % edge.index)


def three_two_full(tri, site, shapes=None):
    """Perform a 3-2 move at a degree-3 edge with three distinct tetrahedra."""
    if site.kind != "3-2":
        raise InvalidSite("not a 3-2 site: %s" % (site,))
    edges = tri.edges
    if not (0 <= site.edge < len(edges)):
        raise InvalidSite("edge %d out of range" % site.edge)
    edge = edges[site.edge]
    if edge.degree != 3:
        raise WrongDegree("edge %d has degree %d" % (site.edge, edge.degree))
    if len(set(edge.tets())) != 3:
        raise RepeatedTetrahedron("edge %d does not meet three distinct "
                                  "tetrahedra" % site.edge)

    chain = _match_cycle(tri, edge)
    tets = [c[0] for c in chain]
    sigs = [c[1] for c in chain]
    invs = [invert(s) for s in sigs]

    size = tri.size
    old_to_new = [None] * size
    k = 0
    for i in range(size):
        if i not in tets:
            old_to_new[i] = k
            k += 1
    s_new, t_new = size - 3, size - 2

    t_of_x = (1, 0, 2)
    face_map = {}
    for i in range(3):
        # old Ni face 0 ({a, x_i, x_i+1}) -> s's face omitting x_{i+2}
        mu = [0, 0, 0, 0]
        mu[0], mu[1], mu[2], mu[3] = (i + 2) % 3, 3, i, (i + 1) % 3
        face_map[(tets[i], invs[i][0])] = (s_new, (i + 2) % 3,
                                           compose(tuple(mu), sigs[i]))
        # old Ni face 1 ({b, x_i, x_i+1}) -> t's face omitting x_{i+2}
        nu = [0, 0, 0, 0]
        nu[0], nu[1] = 3, t_of_x[(i + 2) % 3]
        nu[2], nu[3] = t_of_x[i], t_of_x[(i + 1) % 3]
        face_map[(tets[i], invs[i][1])] = (t_new, t_of_x[(i + 2) % 3],
                                           compose(tuple(nu), sigs[i]))

    internal = [FaceGluing((s_new, 3), (t_new, 3), _Q01)]
    new_tri = _rewire(tri, set(tets), face_map, internal, size - 1,
                      old_to_new)

    new_shapes = None
    if shapes is not None:
        shapes = shapes.shapes if hasattr(shapes, "shapes") else shapes
        r, u, v = (_normalized_shape(shapes[tets[i]], sigs[i])
                   for i in range(3))
        z_pp, w_pp = transfer_shapes_32(r, u, v)
        z, w = zp(z_pp), zp(w_pp)
        out = [None] * (size - 1)
        for i in range(size):
            if old_to_new[i] is not None:
                out[old_to_new[i]] = shapes[i]
        out[s_new], out[t_new] = z, w
        new_shapes = tuple(out)
    return MoveOutcome(new_tri, tuple(old_to_new), (s_new, t_new), new_shapes)


def three_two(tri, site):
    """Spec-facing 3-2 move: just the new triangulation."""
    return three_two_full(tri, site).triangulation


def apply_move(tri, site, shapes=None):
    if site.kind == "2-3":
        return two_three_full(tri, site, shapes)
    return three_two_full(tri, site, shapes)


# -- classification -----------------------------------------------------------

_SEVERITY = {ShapeClass.FLAT: 1, ShapeClass.NEGATIVELY_ORIENTED: 2,
             ShapeClass.DEGENERATE: 3}


def classify_move(tri, sol, site, cfg=DEFAULT_CONFIG, check=True):
    """Perform the move, transfer shapes, classify by the new tetrahedra.

    Geometric iff every created shape is positively oriented; otherwise the
    class names the worst created shape.  With ``check`` set, the
    transferred solution is verified against the new triangulation's
    equations in branch-insensitive product form, and a Newton re-solve
    seeded at the transferred shapes must stay put (the transfer, not the
    solver, is the authority for the classification).
    """
    out = apply_move(tri, site, sol)
    new_shapes = [out.shapes[i] for i in out.new_tets]
    classes = [classify_shape(z, cfg.eps_flat, cfg.eps_deg)
               for z in new_shapes]
    if all(c is ShapeClass.POSITIVELY_ORIENTED for c in classes):
        move_class = "Geometric"
    else:
        worst = max(classes, key=lambda c: _SEVERITY.get(c, 0))
        move_class = worst.value
    residual = float("nan")
    degenerate = any(c is ShapeClass.DEGENERATE for c in classes)
    if not degenerate:
        system = geometry.gluing_equations(out.triangulation)
        residual = system.product_residual(out.shapes)
        if check:
            assert residual <= max(cfg.eps_res, 1e3 * sol.residual + 1e-12), \
                "transferred shapes violate the new gluing equations"
            _seeded_recheck(out, system, cfg)
    sol_new = geometry.ShapeAssignment(tuple(out.shapes), residual,
                                       not degenerate, 0)
    return MoveResult(out.triangulation, sol_new, move_class, out)


def _seeded_recheck(out, system, cfg):
    """Newton seeded at the transferred shapes must not move away.

    Edge targets are rounded to the branch the transferred solution sits on
    (flat tetrahedra can shift principal-log windings by full turns), so a
    valid transfer is an exact fixed point of the iteration.
    """
    w0 = np.log(np.array([complex(z) for z in out.shapes]))
    targets = system.targets_at(w0)
    lhs = system.lhs(w0)
    for r in range(len(targets)):
        if system.kinds[r] == "edge":
            targets[r] = 2j * cmath.pi * round(lhs[r].imag / (2 * cmath.pi))
    w, res, okay, its = geometry._newton(system, w0, cfg, targets=targets)
    drift = float(np.max(np.abs(np.exp(w) - np.exp(w0))))
    assert its <= 2 and drift <= 1e-6, \
        "seeded re-solve moved away from the transferred shapes"
