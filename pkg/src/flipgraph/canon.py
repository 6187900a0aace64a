"""Canonical relabelings, isomorphism tests and automorphism groups.

The canonical form of a triangulation is computed by a breadth-first
traversal from a chosen (tetrahedron, vertex labeling) pair: tetrahedra are
renamed in discovery order and each newly discovered tetrahedron is
relabeled so that its discovery gluing becomes the identity permutation.
The traversal record (gluing types, destinations, permutation indices) is a
complete invariant of the pair, so its minimum over all starting pairs is a
complete isomorphism invariant of the triangulation.
"""

from . import perms


def traverse(tri, start, vperm):
    """Relabel from (start tetrahedron, vertex permutation).

    Returns (record, tet_map, vperms) where record is the comparable
    traversal tuple: types per first-seen facet, destination indices for
    gluings to already-seen tetrahedra, and permutation indices for those
    gluings.
    """
    n = tri.size
    tet_map = [None] * n
    vmaps = [None] * n
    tet_map[start] = 0
    vmaps[start] = vperm
    order = [start]
    types = []
    dests = []
    gperms = []
    done = set()
    k = 0
    while k < len(order):
        t = order[k]
        m = vmaps[t]
        minv = perms.invert(m)
        for f_new in range(4):
            f = minv[f_new]
            if (t, f) in done:
                continue
            t2, f2, p = tri.glued_to(t, f)
            done.add((t, f))
            done.add((t2, f2))
            if tet_map[t2] is None:
                types.append(1)
                tet_map[t2] = len(order)
                vmaps[t2] = perms.compose(m, perms.invert(p))
                order.append(t2)
            else:
                types.append(2)
                dests.append(tet_map[t2])
                q = perms.compose(vmaps[t2], perms.compose(p, minv))
                gperms.append(perms.S4_SIG_INDEX[q])
        k += 1
    if len(order) < n:
        raise ValueError("triangulation is not connected")
    return (tuple(types), tuple(dests), tuple(gperms)), tet_map, vmaps


def canonical_record(tri):
    """Minimum traversal record over all starting pairs."""
    best = None
    for start in range(tri.size):
        for vperm in perms.S4_LEX:
            rec, _, _ = traverse(tri, start, vperm)
            if best is None or rec < best:
                best = rec
    return best


def canonical_signature(tri):
    """A string equal for two triangulations iff they are isomorphic."""
    from .isosig import encode_record
    return encode_record(tri.size, *canonical_record(tri))


def is_isomorphic(a, b):
    if a.size != b.size:
        return False
    return canonical_record(a) == canonical_record(b)


def isomorphisms(a, b):
    """All isomorphisms a -> b as (tet_map, vertex perms) pairs.

    ``tet_map[t]`` is the image in ``b`` of tetrahedron ``t`` of ``a`` and
    ``vperms[t]`` carries its vertex labels over.
    """
    if a.size != b.size:
        return []
    ref, ref_tets, ref_maps = traverse(a, 0, perms.IDENTITY)
    out = []
    for start in range(b.size):
        for vperm in perms.S4_LEX:
            rec, tet_map, vmaps = traverse(b, start, vperm)
            if rec != ref:
                continue
            # both traversals land on the same canonical copy; compose
            # a -> copy -> b
            amap = [None] * a.size
            avp = [None] * a.size
            binv = [None] * b.size
            for t in range(b.size):
                binv[tet_map[t]] = t
            for t in range(a.size):
                tb = binv[ref_tets[t]]
                amap[t] = tb
                avp[t] = perms.compose(perms.invert(vmaps[tb]), ref_maps[t])
            out.append((tuple(amap), tuple(avp)))
    return out


def automorphisms(tri):
    return isomorphisms(tri, tri)


def hyperelliptic_involution(tri):
    """The automorphism fixing every tetrahedron and acting by a
    fixed-point-free vertex involution, when one exists.

    Layered once-punctured torus bundle triangulations always carry one
    (the elliptic involution of the fiber); returns None otherwise.
    Found by seeding tetrahedron 0 with each double transposition and
    propagating through the gluings: preserving gluing (t,f)->(t2,f2,p)
    with tetrahedra fixed forces vperm[t2] = p' vperm[t] p^{-1}, where p'
    is the gluing permutation at the image face.
    """
    for seed in perms.DOUBLE_TRANSPOSITIONS:
        vperms = [None] * tri.size
        vperms[0] = seed
        stack = [0]
        ok = True
        while stack and ok:
            t = stack.pop()
            vp = vperms[t]
            for f in range(4):
                t2, f2, p = tri.glued_to(t, f)
                t2b, _, p2 = tri.glued_to(t, vp[f])
                if t2b != t2:
                    ok = False
                    break
                want = perms.compose(p2, perms.compose(vp, perms.invert(p)))
                if want not in perms.DOUBLE_TRANSPOSITIONS:
                    ok = False
                    break
                if vperms[t2] is None:
                    vperms[t2] = want
                    stack.append(t2)
                elif vperms[t2] != want:
                    ok = False
                    break
        if ok and all(vp is not None for vp in vperms):
            return tuple(range(tri.size)), tuple(vperms)
    return None
