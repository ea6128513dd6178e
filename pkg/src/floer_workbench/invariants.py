"""Numerical invariants of reduced data: the two phi readings and h.

phi has two equivalent faces on a class psi: the dimension of the span of
the even u-iterates of psi, and the least k with (u^2 - 4)^k psi = 0.  They
agree whenever (u^2 - 4) is nilpotent on the cyclic subspace generated by
psi, which phi_filtration checks and reports through NotNilpotent.

h compares two spans built from the boundary functionals of reduced data:
the even u-pullbacks of delta against the even u-iterates of delta_prime(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complexes import FloerData
from .linalg import LinearSolver, RatMatrix, Vector, dot


class NotNilpotent(ValueError):
    """(u^2 - 4) fails to be nilpotent where the filtration reading needs it."""


def _u_squared(u0: RatMatrix) -> RatMatrix:
    return u0 @ u0


def _n_map(u0: RatMatrix) -> RatMatrix:
    return _u_squared(u0) - RatMatrix.identity(u0.rows).scale(4)


def nilpotency_order(m: RatMatrix) -> int:
    """Least k >= 0 with m^k = 0; NotNilpotent if there is none."""
    if m.rows != m.cols:
        raise ValueError("nilpotency of a non-square matrix")
    power = RatMatrix.identity(m.rows)
    for k in range(m.rows + 1):
        if power.is_zero():
            return k
        power = power @ m
    # A nilpotent matrix vanishes by the ambient dimension, so this is final.
    raise NotNilpotent("matrix power %d is still nonzero" % (m.rows + 1,))


def _span_of_iterates(op: RatMatrix, start: Vector) -> int:
    """Krylov span dimension; stops at the first dependent iterate."""
    solver = LinearSolver()
    current = dict(start)
    while solver.add(current) is not None:
        current = op.apply(current)
    return solver.dim


def phi_span(u0: RatMatrix, psi: Vector) -> int:
    """dim span{psi, u^2 psi, u^4 psi, ...}.

    The iteration stops at the first dependent vector; the span is invariant
    under u^2 from that point on.
    """
    return _span_of_iterates(_u_squared(u0), psi)


def phi_filtration(u0: RatMatrix, psi: Vector) -> int:
    """Least k with (u^2 - 4)^k psi = 0.

    Raises NotNilpotent when no k up to the ambient dimension works, which
    is exactly failure of nilpotency on the cyclic subspace of psi.
    """
    n_map = _n_map(u0)
    current = dict(psi)
    k = 0
    while current:
        if k > u0.rows:
            raise NotNilpotent("(u^2 - 4)^k psi never vanishes")
        current = n_map.apply(current)
        k += 1
    return k


@dataclass
class PhiReport:
    mode: str                       # "vector" or "functional"
    span_dim: int
    nilpotent_on_cycle: bool
    filtration_order: Optional[int]  # None when the gate fails
    agree: Optional[bool]            # None when the gate fails

    @property
    def phi(self) -> int:
        return self.span_dim


def phi_report(u0: RatMatrix, psi: Vector, mode: str = "vector") -> PhiReport:
    """Both phi readings plus the nilpotency gate, in one report.

    For the functional reading pass mode="functional" with u0 already
    transposed and psi the functional written as a vector.
    """
    span = phi_span(u0, psi)
    try:
        order = phi_filtration(u0, psi)
    except NotNilpotent:
        return PhiReport(mode, span, False, None, None)
    return PhiReport(mode, span, True, order, span == order)


@dataclass
class HReport:
    dim_functional_span: int   # span of delta under even u-pullbacks
    dim_vector_span: int       # span of delta_prime(1) under even u-iterates
    h: int
    mutual_triviality: bool    # at least one of the two spans is zero


def h_invariant(data: FloerData) -> HReport:
    """h = (functional span) - (vector span) on reduced data.

    Requires a zero differential; reduce first otherwise.  The two spans
    cannot both be nonzero for data coming out of reduce_to_homology, and
    the report carries that flag.
    """
    if not data.complex.differential.is_zero():
        raise ValueError("h_invariant needs reduced data (zero differential)")
    u2t = _u_squared(data.u).transpose()
    dim_f = _span_of_iterates(u2t, data.delta) if data.delta else 0
    u2 = _u_squared(data.u)
    dim_v = _span_of_iterates(u2, data.delta_prime) if data.delta_prime else 0
    return HReport(
        dim_functional_span=dim_f,
        dim_vector_span=dim_v,
        h=dim_f - dim_v,
        mutual_triviality=(dim_f == 0 or dim_v == 0),
    )


def triangular_independence(f: Vector, alpha: Vector, u0: RatMatrix) -> int:
    """Certified lower bound for dim span{f, f u^2, f u^4, ...}.

    Evaluates e_j = f(u^(2j) alpha).  If e_j = 0 for all j < t and e_t != 0,
    the first t + 1 pullbacks of f are triangularly independent against the
    iterates of alpha, so the span has dimension at least t + 1.  Returns
    that bound, or 0 when every evaluation up to the ambient dimension
    vanishes.
    """
    u2 = _u_squared(u0)
    current = dict(alpha)
    for j in range(u0.rows + 1):
        if dot(f, current):
            return j + 1
        current = u2.apply(current)
    return 0
