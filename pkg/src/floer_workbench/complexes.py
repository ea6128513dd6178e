"""Z/8-graded chain complexes with a degree -4 map and boundary functionals.

The central object is FloerData: a graded complex together with an
endomorphism u of degree -4, a functional delta supported on degree-1
generators, and a distinguished degree-4 vector delta_prime.  The four pieces
are tied together by the chain relation

    d u - u d + (1/2) delta_prime . delta = 0

where delta_prime . delta is the rank-one composite C_1 -> Q -> C_4.  Data
flagged as admissible must carry vanishing delta and delta_prime, in which
case u commutes with the differential on the nose.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .linalg import RatMatrix, Vector, dot, outer

DEGREE_MOD = 8
DUAL_DEGREE_SUM = 5
DELTA_DEGREE = 1
DELTA_PRIME_DEGREE = 4


class Kind(enum.Enum):
    HOMOLOGY_SPHERE = "homology_sphere"
    ADMISSIBLE = "admissible"


@dataclass(frozen=True)
class GradedComplex:
    """Finite free complex over Q with generators graded mod 8.

    Column j of the differential is the boundary of generator j.  The
    constructor checks shape, name uniqueness, and degree range; homological
    laws (degree -1 homogeneity, squaring to zero) are the validator's job.
    """

    names: tuple
    degrees: tuple
    differential: RatMatrix

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        n = len(self.names)
        if len(self.degrees) != n:
            raise ValueError("names and degrees disagree in length")
        if len(set(self.names)) != n:
            raise ValueError("duplicate generator names")
        for name in self.names:
            if not name or any(ch.isspace() for ch in name):
                raise ValueError("generator names must be nonempty and contain no spaces")
        for d in self.degrees:
            if not isinstance(d, int) or not 0 <= d < DEGREE_MOD:
                raise ValueError("degrees must be integers in [0, %d)" % DEGREE_MOD)
        if self.differential.rows != n or self.differential.cols != n:
            raise ValueError("differential shape does not match generator count")

    @property
    def size(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError("no generator named %r" % (name,)) from None

    def dims_by_degree(self) -> dict:
        dims = {}
        for d in self.degrees:
            dims[d] = dims.get(d, 0) + 1
        return {d: dims[d] for d in sorted(dims)}

    def indices_in_degree(self, r: int) -> list:
        r %= DEGREE_MOD
        return [i for i, d in enumerate(self.degrees) if d == r]


@dataclass(frozen=True, eq=True)
class FloerData:
    """A graded complex plus (u, delta, delta_prime, kind)."""

    complex: GradedComplex
    u: RatMatrix
    delta: dict = field(default_factory=dict)        # functional, index -> Fraction
    delta_prime: dict = field(default_factory=dict)  # vector, index -> Fraction
    kind: Kind = Kind.HOMOLOGY_SPHERE

    def __post_init__(self):
        n = self.complex.size
        if self.u.rows != n or self.u.cols != n:
            raise ValueError("u shape does not match generator count")
        from .linalg import vector as _vec
        object.__setattr__(self, "delta", _vec(self.delta))
        object.__setattr__(self, "delta_prime", _vec(self.delta_prime))
        for v in (self.delta, self.delta_prime):
            for idx in v:
                if not isinstance(idx, int) or not 0 <= idx < n:
                    raise ValueError("functional/vector index out of range")

    @property
    def size(self) -> int:
        return self.complex.size


@dataclass
class Violation:
    invariant: str
    detail: str

    def __str__(self):
        return "%s: %s" % (self.invariant, self.detail)


@dataclass
class ValidationReport:
    ok: bool
    violations: list

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


class InvalidDataError(ValueError):
    """Raised when an operation requires data that fails validation."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(str(report))


def _entry_names(cx: GradedComplex, key) -> str:
    r, c = key
    return "%s <- %s" % (cx.names[r], cx.names[c])


def _degree_check(cx: GradedComplex, m: RatMatrix, shift: int, label: str, out: list):
    bad = []
    for (r, c) in sorted(m.entries):
        if cx.degrees[r] != (cx.degrees[c] + shift) % DEGREE_MOD:
            bad.append(_entry_names(cx, (r, c)))
    if bad:
        out.append(Violation(label, "entries off degree: " + ", ".join(bad[:6])))


def _matrix_zero_check(cx: GradedComplex, m: RatMatrix, label: str, detail: str, out: list):
    if not m.is_zero():
        keys = sorted(m.entries)[:6]
        shown = ", ".join("(%s) = %s" % (_entry_names(cx, k), m.entries[k]) for k in keys)
        out.append(Violation(label, "%s; nonzero at %s" % (detail, shown)))


def u_chain_residual(data: FloerData) -> RatMatrix:
    """d u - u d + (1/2) delta_prime . delta, which must vanish."""
    n = data.size
    d = data.complex.differential
    composite = outer(data.delta_prime, data.delta, n, n)
    return d @ data.u - data.u @ d + composite.scale(Fraction(1, 2))


def validate(data: FloerData) -> ValidationReport:
    """Check every structural law of FloerData; report all failures at once."""
    cx = data.complex
    out = []
    d = cx.differential
    _degree_check(cx, d, -1, "differential-degree", out)
    _matrix_zero_check(cx, d @ d, "differential-squares-to-zero", "d o d != 0", out)
    _degree_check(cx, data.u, -4, "u-degree", out)

    bad = sorted(i for i in data.delta if cx.degrees[i] != DELTA_DEGREE)
    if bad:
        out.append(Violation("delta-support",
                             "delta must live on degree-%d generators, found %s"
                             % (DELTA_DEGREE, ", ".join(cx.names[i] for i in bad[:6]))))
    bad = sorted(i for i in data.delta_prime if cx.degrees[i] != DELTA_PRIME_DEGREE)
    if bad:
        out.append(Violation("delta-prime-support",
                             "delta_prime must live in degree %d, found %s"
                             % (DELTA_PRIME_DEGREE, ", ".join(cx.names[i] for i in bad[:6]))))

    pulled = d.apply_functional(data.delta)
    if pulled:
        names = ", ".join(cx.names[i] for i in sorted(pulled)[:6])
        out.append(Violation("delta-annihilates-boundaries", "delta o d != 0 at " + names))
    bd = d.apply(data.delta_prime)
    if bd:
        names = ", ".join(cx.names[i] for i in sorted(bd)[:6])
        out.append(Violation("delta-prime-is-cycle", "d(delta_prime) != 0 at " + names))

    _matrix_zero_check(cx, u_chain_residual(data), "u-chain-relation",
                       "d u - u d + (1/2) delta_prime . delta != 0", out)

    if data.kind is Kind.ADMISSIBLE:
        if data.delta or data.delta_prime:
            out.append(Violation("admissible-triviality",
                                 "admissible data must have delta = 0 and delta_prime = 0"))
        _matrix_zero_check(cx, d @ data.u - data.u @ d, "admissible-commutation",
                           "admissible data needs d u = u d", out)

    return ValidationReport(ok=not out, violations=out)


def require_valid(data: FloerData) -> None:
    report = validate(data)
    if not report.ok:
        raise InvalidDataError(report)


def dualize(data: FloerData, dual_degree_sum: int = DUAL_DEGREE_SUM) -> FloerData:
    """Regrade by k -> (dual_degree_sum - k) mod 8 and transpose everything.

    The differential transposes, u transposes with a sign flip, and delta
    and delta_prime trade places (a vector becomes a functional on the dual
    and vice versa).  The sign on u is forced: transposing the chain
    relation d u - u d + (1/2) delta_prime . delta = 0 reverses the
    commutator but not the correction term, so without the flip the dual of
    data with both delta and delta_prime nonzero would violate the relation.
    Even powers of u are all that any invariant reads, so the flip is
    otherwise invisible.  Applying dualize twice returns the original data
    exactly.  The default degree sum 5 is the one under which the
    degree-1/degree-4 support conventions for delta and delta_prime are
    swapped into each other; other sums only make sense for data whose
    delta and delta_prime vanish.
    """
    cx = data.complex
    degrees = tuple((dual_degree_sum - d) % DEGREE_MOD for d in cx.degrees)
    dual_cx = GradedComplex(cx.names, degrees, cx.differential.transpose())
    return FloerData(
        complex=dual_cx,
        u=data.u.transpose().scale(-1),
        delta=dict(data.delta_prime),
        delta_prime=dict(data.delta),
        kind=data.kind,
    )


def structurally_equal(a: FloerData, b: FloerData) -> bool:
    """Equality after sorting generators by (degree, name); names ignored.

    Used to compare data that should agree up to relabeling, such as the
    dual of one builtin fixture against another.
    """
    if a.size != b.size or a.kind is not b.kind:
        return False

    def normal(d: FloerData):
        order = sorted(range(d.size), key=lambda i: (d.complex.degrees[i], d.complex.names[i]))
        pos = {old: new for new, old in enumerate(order)}

        def remap_matrix(m: RatMatrix) -> RatMatrix:
            return RatMatrix(m.rows, m.cols,
                             {(pos[r], pos[c]): v for (r, c), v in m.entries.items()})

        def remap_vec(v: Vector) -> Vector:
            return {pos[i]: val for i, val in v.items()}

        degrees = tuple(d.complex.degrees[i] for i in order)
        return (degrees, remap_matrix(d.complex.differential).entries,
                remap_matrix(d.u).entries, remap_vec(d.delta), remap_vec(d.delta_prime))

    return normal(a) == normal(b)


def evaluate_functional(f: Vector, v: Vector) -> Fraction:
    return dot(f, v)
