"""Thurston gluing equations and the complete-structure Newton solver.

The system is held in logarithmic form.  With w_t = log z_t as variables,

    log z   = w
    log z'  = -log(1 - e^w)
    log z'' =  log(1 - e^{-w})

are analytic wherever z stays off the real axis, and each row is an
integer combination of these three per tetrahedron:

  * one row per edge class with fixed target 2 pi i (angles wind once), and
  * two rows per cusp, the log-holonomy of the tree-cotree peripheral
    curves, whose integer multiple-of-pi-i target is fixed from the seed at
    the start of each solve attempt and never re-derived mid-iteration.

The full redundant system is solved by least-squares Newton steps; it is
consistent at the complete structure, so the step is exact there.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from . import cusp as cusp_mod
from .config import DEFAULT_CONFIG
from .shapes import (REGULAR, ShapeClass, classify_shape, lobachevsky,
                     param_triple, tetrahedron_volume)
from .tri import PARAM_OF_SLOT

TWO_PI_I = 2j * cmath.pi


class TriClass:
    GEOMETRIC = "Geometric"
    ESSENTIAL_NOT_GEOMETRIC = "EssentialNotGeometric"
    NOT_ESSENTIAL = "NotEssential"
    SOLVER_FAILED = "SolverFailed"


@dataclass(frozen=True)
class ShapeAssignment:
    """A candidate solution: one shape per tetrahedron plus solve metadata."""
    shapes: tuple
    residual: float
    converged: bool
    iterations: int

    def __iter__(self):
        return iter(self.shapes)


class EquationSystem:
    """Edge and completeness rows as integer exponent triples."""

    def __init__(self, tri, cusps):
        self.tri = tri
        self.cusps = cusps
        n = tri.size
        rows = []
        labels = []
        parities = []
        kinds = []
        for e in tri.edges:
            a = np.zeros((n, 3), dtype=int)
            for t, slot, _ in e.incidences:
                a[t, PARAM_OF_SLOT[slot]] += 1
            rows.append(a)
            labels.append("edge %d" % e.index)
            parities.append(0)
            kinds.append("edge")
        for c in cusps.cusps:
            for j, curve in enumerate(c["curves"]):
                a = np.zeros((n, 3), dtype=int)
                for t, k, coeff in curve.coeffs:
                    a[t, k] += coeff
                rows.append(a)
                labels.append("cusp %d curve %d" % (c["index"], j))
                parities.append(curve.parity)
                kinds.append("completeness")
        self.coeffs = np.stack(rows)          # (R, n, 3)
        self.labels = labels
        self.kinds = kinds
        self.parities = np.array(parities)
        self.n_edges = sum(1 for k in kinds if k == "edge")

    # -- evaluation ----------------------------------------------------------

    @staticmethod
    def log_params(w):
        z = np.exp(w)
        return np.stack([w, -np.log(1.0 - z), np.log(1.0 - 1.0 / z)], axis=-1)

    def lhs(self, w):
        return np.einsum("rtk,tk->r", self.coeffs, self.log_params(w))

    def jacobian(self, w):
        z = np.exp(w)
        dlog = np.stack([np.ones_like(z), z / (1.0 - z), 1.0 / (z - 1.0)],
                        axis=-1)
        return np.einsum("rtk,tk->rt", self.coeffs, dlog)

    def targets_at(self, w_seed):
        """Row targets with completeness branch integers fixed at the seed."""
        lhs = self.lhs(w_seed)
        tg = np.empty(len(self.coeffs), dtype=complex)
        for r in range(len(self.coeffs)):
            if self.kinds[r] == "edge":
                tg[r] = TWO_PI_I
            else:
                p = self.parities[r]
                k = round((lhs[r].imag - cmath.pi * p) / (2 * cmath.pi))
                tg[r] = 1j * cmath.pi * p + TWO_PI_I * k
        return tg

    def residual(self, w, targets):
        return np.max(np.abs(self.lhs(w) - targets))

    def product_residual(self, shapes):
        """Branch-insensitive defect: |product form - (+-1)| per row, maxed.

        This is the right residual for transferred solutions containing flat
        tetrahedra, where fixed-branch logarithms pick up 2 pi i offsets.
        """
        logs = np.array([[cmath.log(p) for p in param_triple(z)]
                         for z in shapes])
        lhs = np.einsum("rtk,tk->r", self.coeffs, logs)
        want = np.where(self.parities % 2 == 1, -1.0, 1.0)
        return float(np.max(np.abs(np.exp(lhs) - want)))


def gluing_equations(tri, cusps=None):
    """Edge rows plus two completeness rows per cusp.

    Raises NonTorusCusp (from the cusp module) if some vertex link is not a
    torus.
    """
    if cusps is None:
        cusps = cusp_mod.cusp_triangulation(tri)
    return EquationSystem(tri, cusps)


def _newton(system, w0, cfg, targets=None):
    if targets is None:
        targets = system.targets_at(w0)
    w = w0.copy()
    f = system.lhs(w) - targets
    norm = np.linalg.norm(f)
    for it in range(1, cfg.max_iter + 1):
        res = np.max(np.abs(f))
        if res <= cfg.eps_res:
            return w, float(res), True, it - 1
        jac = system.jacobian(w)
        step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        lam = 1.0
        for _ in range(12):
            w_try = w + lam * step
            f_try = system.lhs(w_try) - targets
            n_try = np.linalg.norm(f_try)
            if n_try < norm or not np.isfinite(norm):
                break
            lam /= 2.0
        else:
            break
        w, f, norm = w_try, f_try, n_try
    res = float(np.max(np.abs(f)))
    return w, res, bool(res <= cfg.eps_res), cfg.max_iter


def _angle_structure_seed(tri, system):
    """Log-shapes of the volume-maximizing angle structure, or None.

    Positive angle structures form a convex polytope cut out by the per-tet
    (sum pi) and per-edge (sum 2 pi) linear conditions; total volume is
    strictly concave there and its interior maximum is the complete
    structure.  An interior point comes from maximizing the minimum angle
    (LP); damped Newton in reduced coordinates then climbs the volume.
    Globally convergent for geometric triangulations, so it makes an ideal
    seed whenever plain Newton stalls.
    """
    n = tri.size
    n_edge = system.n_edges
    rows = np.zeros((n + n_edge, 3 * n))
    rhs = np.empty(n + n_edge)
    for i in range(n):
        rows[i, 3 * i:3 * i + 3] = 1.0
        rhs[i] = math.pi
    for r in range(n_edge):
        rows[n + r] = system.coeffs[r].reshape(-1)
        rhs[n + r] = 2.0 * math.pi

    # interior point: maximize the minimum angle subject to the constraints
    c = np.zeros(3 * n + 1)
    c[-1] = -1.0
    a_eq = np.hstack([rows, np.zeros((rows.shape[0], 1))])
    a_ub = np.hstack([-np.eye(3 * n), np.ones((3 * n, 1))])
    lp = linprog(c, A_ub=a_ub, b_ub=np.zeros(3 * n), A_eq=a_eq, b_eq=rhs,
                 bounds=[(None, None)] * (3 * n) + [(0, None)],
                 method="highs")
    if not lp.success or lp.x[-1] < 1e-6:
        return None
    a = lp.x[:-1]

    _, sv, vt = np.linalg.svd(rows)
    null = vt[int((sv > 1e-9).sum()):].T
    if null.shape[1] == 0:
        return None
    for _ in range(100):
        grad = null.T @ np.array([-math.log(2.0 * math.sin(x)) for x in a])
        if np.linalg.norm(grad) < 1e-11:
            break
        hess = null.T @ ((-1.0 / np.tan(a))[:, None] * null)
        try:
            step = np.linalg.solve(-hess + 1e-12 * np.eye(len(grad)), grad)
        except np.linalg.LinAlgError:
            step = grad
        da = null @ step
        lam = 1.0
        shrink = da < 0
        if shrink.any():
            lam = min(1.0, 0.9 * float(np.min(-a[shrink] / da[shrink])))
        vol0 = sum(lobachevsky(x) for x in a)
        for _ in range(40):
            a_try = a + lam * da
            if (a_try > 0).all() and sum(lobachevsky(x)
                                         for x in a_try) >= vol0 - 1e-15:
                break
            lam /= 2.0
        else:
            break
        a = a_try
    z = np.array([math.sin(a[3 * i + 1]) / math.sin(a[3 * i + 2])
                  * cmath.exp(1j * a[3 * i]) for i in range(n)])
    return np.log(z)


def solve_complete_structure(tri, seed=None, cfg=DEFAULT_CONFIG, system=None):
    """Newton-solve the full redundant system for the complete structure.

    The default seed makes every tetrahedron regular.  The retry schedule is
    deterministic: on stall, one attempt restarts from the volume-maximizing
    angle structure, the rest from fixed-seed pseudo-random perturbations
    (magnitude cfg.perturbation); completeness branch targets are re-derived
    at each fresh seed, never mid-iteration.  The best attempt is reported,
    with converged=False if none reaches cfg.eps_res.
    """
    if system is None:
        system = gluing_equations(tri)
    if seed is not None:
        seed_shapes = seed.shapes if hasattr(seed, "shapes") else tuple(seed)
        w_seed = np.array([cmath.log(z) for z in seed_shapes])
    else:
        w_seed = np.full(tri.size, cmath.log(REGULAR), dtype=complex)

    best = None
    for attempt in range(cfg.retries + 1):
        if attempt == 0:
            w0 = w_seed
        elif attempt == 1:
            w0 = _angle_structure_seed(tri, system)
            if w0 is None:
                continue
        else:
            rng = np.random.default_rng(cfg.rng_seed + attempt)
            w0 = w_seed + cfg.perturbation * (
                rng.standard_normal(tri.size)
                + 1j * rng.standard_normal(tri.size))
        w, res, ok, its = _newton(system, w0, cfg)
        if best is None or res < best[1]:
            best = (w, res, ok, its)
        if ok:
            break
    w, res, ok, its = best
    return ShapeAssignment(tuple(complex(z) for z in np.exp(w)),
                           float(res), ok, its)


def classify_triangulation(tri, sol, cfg=DEFAULT_CONFIG):
    """Geometric / EssentialNotGeometric / NotEssential / SolverFailed."""
    if not sol.converged:
        return TriClass.SOLVER_FAILED
    classes = [classify_shape(z, cfg.eps_flat, cfg.eps_deg) for z in sol.shapes]
    if any(c is ShapeClass.DEGENERATE for c in classes):
        return TriClass.NOT_ESSENTIAL
    if all(c is ShapeClass.POSITIVELY_ORIENTED for c in classes):
        return TriClass.GEOMETRIC
    return TriClass.ESSENTIAL_NOT_GEOMETRIC


def volume(sol, cfg=DEFAULT_CONFIG):
    """Total hyperbolic volume of a converged solution."""
    return sum(tetrahedron_volume(z, cfg.eps_flat, cfg.eps_deg)
               for z in sol.shapes)
