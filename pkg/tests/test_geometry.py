"""Gluing equations, the Newton solver, classification, volume."""

import cmath

import mpmath
import numpy as np
from hypothesis import given, settings, strategies as st

from flipgraph import geometry, isosig, words
from flipgraph.geometry import TriClass
from flipgraph.shapes import (REGULAR, ShapeClass, classify_shape,
                              lobachevsky, param_triple)
from conftest import solved

FIG8_SHAPE = complex(0.5, 0.8660254037844386)
FIG8_VOLUME = 2.029883212819307


def bloch_wigner(z):
    """Independent volume oracle: D(z) = Im Li2(z) + arg(1-z) log|z|."""
    z = mpmath.mpc(z)
    return float(mpmath.im(mpmath.polylog(2, z))
                 + mpmath.arg(1 - z) * mpmath.log(abs(z)))


def test_frozen_figure8_volume_against_dilogarithm():
    assert abs(2 * bloch_wigner(FIG8_SHAPE) - FIG8_VOLUME) < 1e-12


def test_lobachevsky_sum_equals_bloch_wigner():
    for z in (FIG8_SHAPE, 0.3 + 0.9j, -0.25 + 0.43j, 1.7 + 2.2j):
        total = sum(lobachevsky(cmath.phase(p)) for p in param_triple(z))
        assert abs(total - bloch_wigner(z)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3,
                          allow_nan=False, allow_infinity=False))
def test_shape_triple_product(z):
    if min(abs(z), abs(z - 1)) < 1e-3:
        return
    z0, z1, z2 = param_triple(z)
    assert abs(z0 * z1 * z2 + 1) < 1e-9 * max(1.0, abs(z0 * z1 * z2))


def test_classify_shape_cases():
    assert classify_shape(FIG8_SHAPE) is ShapeClass.POSITIVELY_ORIENTED
    assert classify_shape(2.0 + 0j) is ShapeClass.FLAT
    assert classify_shape(1 + 1e-14 + 0j) is ShapeClass.DEGENERATE
    assert classify_shape(1e-12 + 0j) is ShapeClass.DEGENERATE
    assert classify_shape(1e12 + 5j) is ShapeClass.DEGENERATE
    assert classify_shape(0.5 - 0.5j) is ShapeClass.NEGATIVELY_ORIENTED


def test_equation_structure_rl():
    t = words.build("RL")
    system = geometry.gluing_equations(t)
    assert system.n_edges == 2
    assert len(system.coeffs) == 4      # 2 edges + 2 completeness rows
    # per-tetrahedron exponent budget across edge rows is (2,2,2)
    edge_sum = system.coeffs[:2].sum(axis=0)
    assert (edge_sum == 2).all()


def test_per_tet_budget_all_words():
    for w in ("R^2L^2", "L^4R^6", "R^3L^2"):
        t = words.build(w)
        system = geometry.gluing_equations(t)
        assert (system.coeffs[:system.n_edges].sum(axis=0) == 2).all()


def test_figure8_solution(fig8):
    t, sol = fig8
    assert sol.converged and sol.residual <= 1e-10
    for z in sol.shapes:
        assert abs(z - FIG8_SHAPE) < 1e-6
    assert abs(geometry.volume(sol) - FIG8_VOLUME) < 1e-5
    assert geometry.classify_triangulation(t, sol) == TriClass.GEOMETRIC


def test_solver_determinism():
    t = words.build("R^4L^6")
    a = geometry.solve_complete_structure(t)
    b = geometry.solve_complete_structure(t)
    assert a.shapes == b.shapes and a.residual == b.residual
    assert a.iterations == b.iterations


def test_exact_seed_converges_immediately():
    t, sol = solved("R^2L^2")
    again = geometry.solve_complete_structure(t, seed=sol)
    assert again.converged and again.iterations <= 2
    assert max(abs(a - b) for a, b in zip(again.shapes, sol.shapes)) <= 1e-12


def test_seeded_solver_failure_passthrough():
    t = words.build("R^2L^2")
    bad = geometry.ShapeAssignment((1j,) * 4, 1.0, False, 50)
    assert geometry.classify_triangulation(t, bad) == TriClass.SOLVER_FAILED


def test_jacobian_against_central_differences():
    t = words.build("R^2L^3")
    system = geometry.gluing_equations(t)
    w = np.full(t.size, cmath.log(REGULAR), dtype=complex)
    jac = system.jacobian(w)
    h = 1e-7
    for j in range(t.size):
        e = np.zeros(t.size, dtype=complex)
        e[j] = h
        fd = (system.lhs(w + e) - system.lhs(w - e)) / (2 * h)
        scale = np.maximum(np.abs(jac[:, j]), 1.0)
        assert (np.abs(fd - jac[:, j]) / scale <= 1e-6).all()


def test_hoffman_triangulations_solve_geometric():
    for sig in ("fLLQccecddehqrwwn", "fLLQcacdedejbqqww"):
        t = isosig.decode(sig)
        sol = geometry.solve_complete_structure(t)
        assert geometry.classify_triangulation(t, sol) == TriClass.GEOMETRIC
        assert all(classify_shape(z) is ShapeClass.POSITIVELY_ORIENTED
                   for z in sol.shapes)
        assert abs(geometry.volume(sol) - FIG8_VOLUME) < 1e-6


def test_volume_nonnegative_and_flat_contributes_zero():
    from flipgraph.shapes import tetrahedron_volume
    assert tetrahedron_volume(2.0 + 0j) == 0.0
    assert tetrahedron_volume(FIG8_SHAPE) > 1.0
    assert abs(tetrahedron_volume(FIG8_SHAPE.conjugate())
               + tetrahedron_volume(FIG8_SHAPE)) < 1e-12


def test_theorem_family_geometric():
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            t, sol = solved("R^%dL^%d" % (2 * n, 2 * m))
            assert geometry.classify_triangulation(t, sol) == \
                TriClass.GEOMETRIC, (n, m)


def test_completeness_targets_fixed_at_seed():
    t = words.build("RL")
    system = geometry.gluing_equations(t)
    w = np.full(t.size, cmath.log(REGULAR), dtype=complex)
    tg = system.targets_at(w)
    assert all(tg[r] == 2j * cmath.pi for r in range(system.n_edges))
    for r in range(system.n_edges, len(tg)):
        ratio = (tg[r] / (1j * cmath.pi)).real
        assert abs(ratio - round(ratio)) < 1e-12
