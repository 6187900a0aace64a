"""Monodromy ideal triangulations of once-punctured torus bundles:
complete hyperbolic structures, Pachner moves with exact shape transfer,
and the geometric bistellar flip graph."""

from .canon import (automorphisms, canonical_signature,
                    hyperelliptic_involution, is_isomorphic, isomorphisms)
from .config import RunConfig, load_config
from .cusp import (cusp_triangulation, develop_cusp, quad_flip_geometric,
                   quad_is_strictly_convex)
from .explorer import (FlipGraph, IsolationReport, enumerate_moves,
                       explore, is_isolated, regeometrize)
from .geometry import (EquationSystem, ShapeAssignment, TriClass,
                       classify_triangulation, gluing_equations,
                       solve_complete_structure, volume)
from .isosig import decode, encode
from .moves import (MoveResult, MoveSite, classify_move, three_two,
                    transfer_shapes_23, transfer_shapes_32, two_three)
from .shapes import ShapeClass, classify_shape, lobachevsky
from .tri import (EdgeClass, FaceGluing, Triangulation, compute_edges,
                  gluing_table, new_triangulation, relabel)
from .words import CyclicWord, build, fan_decomposition, parse_word

__version__ = "0.1.0"

__all__ = [
    "CyclicWord", "EdgeClass", "EquationSystem", "FaceGluing", "FlipGraph",
    "IsolationReport", "MoveResult", "MoveSite", "RunConfig",
    "ShapeAssignment", "ShapeClass", "TriClass", "Triangulation",
    "automorphisms", "build", "canonical_signature", "classify_move",
    "classify_shape", "classify_triangulation", "compute_edges",
    "cusp_triangulation", "decode", "develop_cusp", "encode",
    "enumerate_moves", "explore", "fan_decomposition", "gluing_equations",
    "gluing_table", "hyperelliptic_involution", "is_isolated",
    "is_isomorphic", "isomorphisms", "load_config", "lobachevsky",
    "new_triangulation", "parse_word", "quad_flip_geometric",
    "quad_is_strictly_convex", "regeometrize", "relabel",
    "solve_complete_structure", "three_two", "transfer_shapes_23",
    "transfer_shapes_32", "two_three", "volume",
]
