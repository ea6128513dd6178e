"""Graded homology and reduction of FloerData onto its homology.

Representatives are picked degree by degree: seed an exact solver with a
canonical basis of the boundary space, then sweep the canonical kernel basis
and keep each cycle's reduced remainder.  The choices depend only on the
generator order, so repeated runs agree entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .complexes import DEGREE_MOD, FloerData, GradedComplex, require_valid
from .linalg import (LinearSolver, RatMatrix, Vector, dot, image_basis,
                     kernel_basis, outer)


class DescentObstruction(ValueError):
    """u does not descend to homology because delta_prime . delta != 0."""


class DegreeMismatch(ValueError):
    """Functional and class live in incompatible degrees."""


@dataclass
class GradedVectorSpace:
    """Homology presented by residue: dimensions and cycle representatives.

    representatives[r] is a list of chain vectors (over the original
    generators), one per homology class in degree r.
    """

    dims: dict
    representatives: dict

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def nonzero_dims(self) -> dict:
        return {r: n for r, n in sorted(self.dims.items()) if n}


def _restrict_columns(m: RatMatrix, cols: list) -> RatMatrix:
    entries = {}
    for local, c in enumerate(cols):
        for r, v in m.column(c).items():
            entries[(r, local)] = v
    return RatMatrix(m.rows, len(cols), entries)


def cycle_basis(cx: GradedComplex, residue: int) -> list:
    """Canonical basis of the degree-residue cycles, as chain vectors."""
    cols = cx.indices_in_degree(residue)
    if not cols:
        return []
    sub = _restrict_columns(cx.differential, cols)
    local = kernel_basis(sub)
    return [{cols[i]: v for i, v in vec.items()} for vec in local]


def boundary_basis(cx: GradedComplex, residue: int) -> list:
    """Canonical basis of the boundaries landing in the given degree."""
    cols = cx.indices_in_degree((residue + 1) % DEGREE_MOD)
    if not cols:
        return []
    sub = _restrict_columns(cx.differential, cols)
    return image_basis(sub)


def homology(cx: GradedComplex) -> GradedVectorSpace:
    """Graded homology with reduced cycle representatives per degree."""
    dims = {}
    reps = {}
    for r in range(DEGREE_MOD):
        solver = LinearSolver()
        for b in boundary_basis(cx, r):
            solver.add(b)
        chosen = []
        for z in cycle_basis(cx, r):
            reduced = solver.add(z)
            if reduced is not None:
                chosen.append(reduced)
        dims[r] = len(chosen)
        reps[r] = chosen
    return GradedVectorSpace(dims=dims, representatives=reps)


def pair(f: Vector, x: Vector, degrees: Optional[dict] = None) -> Fraction:
    """Evaluate a functional on a class.

    When degrees are supplied (index -> residue), the supports of f and x
    must sit in one common residue; mixed or disagreeing supports raise
    DegreeMismatch.  The duality convention pairs a degree-r functional with
    degree-r classes, so this is the check that both sides match.
    """
    if degrees is not None:
        seen = {degrees[i] for i in f} | {degrees[i] for i in x}
        if len(seen) > 1:
            raise DegreeMismatch("supports span degrees %s" % sorted(seen))
    return dot(f, x)


def _homology_solvers(cx: GradedComplex, space: GradedVectorSpace) -> dict:
    """Per-residue solvers seeded with boundaries, then representatives.

    express() coefficients with id >= the boundary count give the coordinates
    of a cycle in the chosen homology basis.
    """
    solvers = {}
    for r in range(DEGREE_MOD):
        solver = LinearSolver()
        nb = 0
        for b in boundary_basis(cx, r):
            solver.add(b)
            nb += 1
        for h in space.representatives[r]:
            solver.add(h)
        solvers[r] = (solver, nb)
    return solvers


def class_coordinates(cx: GradedComplex, space: GradedVectorSpace, solvers: dict,
                      cycle: Vector, residue: int) -> Vector:
    """Coordinates of a cycle's class in the degree-residue representative basis."""
    solver, nb = solvers[residue]
    expr = solver.express(cycle)
    if expr is None:
        raise ValueError("vector is not a cycle in degree %d" % residue)
    return {i - nb: v for i, v in expr.items() if i >= nb}


def reduce_to_homology(data: FloerData) -> FloerData:
    """Carry (u, delta, delta_prime) onto homology; differential becomes zero.

    Requires the composite delta_prime . delta to vanish, which by the chain
    relation makes u commute with the differential so that it descends.  The
    result is again valid FloerData and reducing twice is the identity.
    """
    require_valid(data)
    cx = data.complex
    composite = outer(data.delta_prime, data.delta, cx.size, cx.size)
    if not composite.is_zero():
        key = sorted(composite.entries)[0]
        raise DescentObstruction(
            "delta_prime . delta != 0 (e.g. %s -> %s), u does not descend"
            % (cx.names[key[1]], cx.names[key[0]]))

    space = homology(cx)
    solvers = _homology_solvers(cx, space)

    order = []  # (residue, position) in generator order
    names = []
    degrees = []
    base = {}
    for r in range(DEGREE_MOD):
        for i, _ in enumerate(space.representatives[r]):
            base[(r, i)] = len(order)
            order.append((r, i))
            names.append("h%d_%d" % (r, i))
            degrees.append(r)

    u_entries = {}
    for (r, i) in order:
        col = base[(r, i)]
        image = data.u.apply(space.representatives[r][i])
        target = (r - 4) % DEGREE_MOD
        coords = class_coordinates(cx, space, solvers, image, target)
        for j, v in coords.items():
            u_entries[(base[(target, j)], col)] = v

    delta0 = {}
    for (r, i) in order:
        val = dot(data.delta, space.representatives[r][i])
        if val:
            delta0[base[(r, i)]] = val

    delta_prime0 = {}
    if data.delta_prime:
        coords = class_coordinates(cx, space, solvers, dict(data.delta_prime), 4)
        delta_prime0 = {base[(4, j)]: v for j, v in coords.items()}

    n = len(order)
    reduced = FloerData(
        complex=GradedComplex(tuple(names), tuple(degrees), RatMatrix.zero(n, n)),
        u=RatMatrix(n, n, u_entries),
        delta=delta0,
        delta_prime=delta_prime0,
        kind=data.kind,
    )
    return reduced


def euler_characteristic_mod2(dims: dict) -> int:
    """Alternating sum of graded dimensions by residue parity."""
    return sum(n if r % 2 == 0 else -n for r, n in dims.items())
