"""Move enumeration, isolation certificates, flip-graph search, and the
flat-path re-geometrization of even monodromy words."""

from dataclasses import dataclass, field

from . import canon, geometry, moves, words
from .config import DEFAULT_CONFIG
from .errors import SequenceNotFound
from .geometry import TriClass
from .moves import MoveSite
from .shapes import ShapeClass, classify_shape


def enumerate_moves(tri):
    """All valid move sites, deterministically ordered: 2-3 sites (faces
    joining distinct tetrahedra, one per gluing) then 3-2 sites (degree-3
    edges meeting three distinct tetrahedra)."""
    sites = []
    for (a, fa), (b, fb, _) in sorted(tri.gluings.items()):
        if (a, fa) <= (b, fb) and a != b:
            sites.append(MoveSite("2-3", face=(a, fa)))
    for e in tri.edges:
        if e.degree == 3 and len(set(e.tets())) == 3:
            sites.append(MoveSite("3-2", edge=e.index))
    return sites


@dataclass(frozen=True)
class IsolationReport:
    signature: str
    triclass: str
    is_geometric: bool
    sites: tuple          # ((MoveSite, move class or None), ...)
    is_isolated: bool
    reason: str
    volume: float
    solution: object


def is_isolated(tri, cfg=DEFAULT_CONFIG):
    """Solve, then classify every available move of a geometric start.

    is_isolated is true iff the triangulation is geometric and no 2-3 or
    3-2 move is; a non-geometric start reports false with a reason rather
    than raising.
    """
    sol = geometry.solve_complete_structure(tri, cfg=cfg)
    cls = geometry.classify_triangulation(tri, sol, cfg)
    sig = canon.canonical_signature(tri)
    vol = geometry.volume(sol, cfg) if sol.converged else float("nan")
    if cls != TriClass.GEOMETRIC:
        return IsolationReport(sig, cls, False, (), False,
                               "NotGeometricInput: start classifies %s" % cls,
                               vol, sol)
    classified = []
    isolated = True
    for site in enumerate_moves(tri):
        res = moves.classify_move(tri, sol, site, cfg)
        classified.append((site, res.move_class))
        if res.move_class == "Geometric":
            isolated = False
    return IsolationReport(sig, cls, True, tuple(classified), isolated, "",
                           vol, sol)


@dataclass
class FlipNode:
    signature: str
    triclass: str
    size: int
    depth: int
    triangulation: object


@dataclass
class FlipGraph:
    nodes: dict = field(default_factory=dict)      # signature -> FlipNode
    arcs: list = field(default_factory=list)       # (sig, sig, site string)
    complete: bool = True
    filter: str = "all"


_FILTER_KEEP = {
    "all": (TriClass.GEOMETRIC, TriClass.ESSENTIAL_NOT_GEOMETRIC,
            TriClass.NOT_ESSENTIAL, TriClass.SOLVER_FAILED),
    "essential": (TriClass.GEOMETRIC, TriClass.ESSENTIAL_NOT_GEOMETRIC),
    "geometric": (TriClass.GEOMETRIC,),
}


def _classify_node(tri, seed, cfg):
    """Solve a node, preferring the transferred seed from its parent."""
    sol = None
    if seed is not None:
        sol = geometry.solve_complete_structure(tri, seed=seed, cfg=cfg)
    if sol is None or not sol.converged:
        fresh = geometry.solve_complete_structure(tri, cfg=cfg)
        if sol is None or fresh.converged:
            sol = fresh
    return sol, geometry.classify_triangulation(tri, sol, cfg)


def explore(start, depth, filt="all", cfg=DEFAULT_CONFIG, max_nodes=None):
    """Breadth-first search of the bistellar flip graph from ``start``.

    Nodes are deduplicated by canonical signature and classified by a fresh
    solve (seeded with transferred shapes when available).  Under the
    "geometric" filter only Geometric nodes are retained and expanded; under
    "essential", Geometric and EssentialNotGeometric ones.  Arcs are
    recorded in both directions.  Exceeding the depth or node budget
    returns the partial graph flagged incomplete.
    """
    if filt not in _FILTER_KEEP:
        raise ValueError("unknown filter %r" % filt)
    max_nodes = cfg.max_nodes if max_nodes is None else max_nodes
    graph = FlipGraph(filter=filt)
    sol0, cls0 = _classify_node(start, None, cfg)
    sig0 = canon.canonical_signature(start)
    graph.nodes[sig0] = FlipNode(sig0, cls0, start.size, 0, start)
    if cls0 not in _FILTER_KEEP[filt]:
        return graph
    frontier = [(sig0, start, sol0)]
    for d in range(depth):
        nxt = []
        for sig, tri, sol in frontier:
            for site in enumerate_moves(tri):
                if sol is not None and sol.converged:
                    out = moves.apply_move(tri, site, sol)
                    seed = out.shapes
                else:
                    out = moves.apply_move(tri, site, None)
                    seed = None
                child = out.triangulation
                csig = canon.canonical_signature(child)
                arc = (sig, csig, str(site))
                if csig in graph.nodes:
                    if arc not in graph.arcs:
                        graph.arcs.append(arc)
                        graph.arcs.append((csig, sig, str(site)))
                    continue
                if len(graph.nodes) >= max_nodes:
                    graph.complete = False
                    return graph
                csol, ccls = _classify_node(child, seed, cfg)
                if ccls not in _FILTER_KEEP[filt]:
                    continue
                graph.nodes[csig] = FlipNode(csig, ccls, child.size, d + 1,
                                             child)
                graph.arcs.append(arc)
                graph.arcs.append((csig, sig, str(site)))
                nxt.append((csig, child, csol))
        frontier = nxt
    if frontier:
        graph.complete = False
    return graph


def write_dot(graph, path):
    """GraphViz rendering of a flip graph, colored by classification."""
    colors = {TriClass.GEOMETRIC: "palegreen",
              TriClass.ESSENTIAL_NOT_GEOMETRIC: "orange",
              TriClass.NOT_ESSENTIAL: "tomato",
              TriClass.SOLVER_FAILED: "gray"}
    lines = ["graph flips {", '  node [style=filled];']
    for sig, node in graph.nodes.items():
        lines.append('  "%s" [label="%s\\n%s (%d tets)", fillcolor=%s];'
                     % (sig, sig, node.triclass, node.size,
                        colors.get(node.triclass, "white")))
    seen = set()
    for a, b, site in graph.arcs:
        if (b, a) in seen:
            continue
        seen.add((a, b))
        lines.append('  "%s" -- "%s" [label="%s"];' % (a, b, site))
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# -- Lemma 4.1: re-geometrizing through flat tetrahedra ----------------------


def _even_word_exponents(word):
    runs = words.fan_decomposition(word).runs
    if len(runs) != 2:
        return None
    (l1, s1, k1), (l2, s2, k2) = runs
    if l1 != "L" or k1 % 2 or k2 % 2:
        return None
    return k1 // 2, k2 // 2     # (M, N) for L^{2M} R^{2N}


def _flat_count(shapes, tets, cfg):
    return sum(1 for i in tets
               if classify_shape(shapes[i], cfg.eps_flat, cfg.eps_deg)
               is ShapeClass.FLAT)


def regeometrize(word, fan="L", cfg=DEFAULT_CONFIG):
    """Two 2-3 moves then a 3-2 move from the monodromy triangulation of
    L^{2M} R^{2N} to a geometric triangulation with one more tetrahedron.

    The search is bounded: the first move must join two of the three fan
    tetrahedra around the chosen fan's middle (positions M, M+1, M+2 above
    the L-toggle, or the mirror positions in the R-fan), later moves must
    touch those tetrahedra or ones created on the way.  A triple is
    accepted when the first move creates exactly one flat tetrahedron, the
    intermediate triangulations are essential, and the final one solves
    geometric from scratch; the audited move list is returned with it.
    """
    word = words.as_word(word)
    mn = _even_word_exponents(word)
    if mn is None:
        raise SequenceNotFound(
            "word %s is not of the form L^{2M}R^{2N}" % word)
    m, n = mn
    if fan == "L":
        core = [m, m + 1, m + 2]
    elif fan == "R":
        core = [2 * m + n + i for i in range(3)]
    else:
        raise ValueError("fan must be 'L' or 'R'")
    size = word.size
    core = [c % size for c in core]

    tri = words.build(word)
    sol = geometry.solve_complete_structure(tri, cfg=cfg)
    if geometry.classify_triangulation(tri, sol, cfg) != TriClass.GEOMETRIC:
        raise SequenceNotFound("start does not solve geometric")

    for site1 in enumerate_moves(tri):
        if site1.kind != "2-3":
            continue
        a, fa = site1.face
        b = tri.glued_to(a, fa)[0]
        if a not in core or b not in core:
            continue
        res1 = moves.classify_move(tri, sol, site1, cfg)
        out1 = res1.outcome
        if res1.move_class != "Flat":
            continue
        if _flat_count(out1.shapes, out1.new_tets, cfg) != 1:
            continue
        cls1 = geometry.classify_triangulation(
            out1.triangulation, res1.shapes, cfg)
        if cls1 != TriClass.ESSENTIAL_NOT_GEOMETRIC:
            continue
        allowed1 = {out1.old_to_new[c] for c in core} | set(out1.new_tets)
        allowed1.discard(None)
        tri1 = out1.triangulation
        for site2 in enumerate_moves(tri1):
            if site2.kind != "2-3":
                continue
            a2, fa2 = site2.face
            b2 = tri1.glued_to(a2, fa2)[0]
            if a2 not in allowed1 and b2 not in allowed1:
                continue
            res2 = moves.classify_move(tri1, res1.shapes, site2, cfg,
                                       check=False)
            out2 = res2.outcome
            if res2.move_class == "Degenerate":
                continue
            cls2 = geometry.classify_triangulation(
                out2.triangulation, res2.shapes, cfg)
            if cls2 not in (TriClass.GEOMETRIC,
                            TriClass.ESSENTIAL_NOT_GEOMETRIC):
                continue
            allowed2 = ({out2.old_to_new[c] for c in allowed1}
                        | set(out2.new_tets))
            allowed2.discard(None)
            tri2 = out2.triangulation
            for site3 in enumerate_moves(tri2):
                if site3.kind != "3-2":
                    continue
                edge = tri2.edges[site3.edge]
                if not set(edge.tets()) & allowed2:
                    continue
                try:
                    res3 = moves.classify_move(tri2, res2.shapes, site3, cfg,
                                               check=False)
                except Exception:
                    continue
                if res3.move_class != "Geometric":
                    continue
                final = res3.triangulation
                fsol = res3.shapes
                if geometry.classify_triangulation(final, fsol, cfg) \
                        != TriClass.GEOMETRIC:
                    continue
                if final.size != size + 1:
                    continue
                if canon.is_isomorphic(final, tri):
                    continue
                fresh = geometry.solve_complete_structure(final, cfg=cfg)
                if geometry.classify_triangulation(final, fresh, cfg) \
                        != TriClass.GEOMETRIC:
                    continue
                audit = [(site1, cls1), (site2, cls2),
                         (site3, TriClass.GEOMETRIC)]
                return final, audit
    raise SequenceNotFound("no flat-path re-geometrization found for %s "
                           "within the bounded search" % word)
