"""Negative-definite E8-block lattice: membership, classes mod 2, counts.

The lattice is n orthogonal copies of E8 carrying the negative of the usual
form.  A block vector belongs to E8 when its eight coordinates are either
all integers or all odd multiples of 1/2, with an even coordinate sum; this
is the span of the vectors e_i + e_j together with (e_1 + ... + e_8)/2.

Coordinates are stored doubled, as plain integers, so half-integers stay
exact and the inner loops never touch Fraction.  In doubled units the
squared length of a block is sum(c_i^2) = 4 * |v^2|.

Enumeration of a class mod 2*lattice is per block: v = w + 2e with e in E8
pins every coordinate parity, and once the first coordinate of e is chosen
the integer/half-integer type of e is pinned too, so the backtracking walks
coordinates in steps of 4 under a running norm budget.  Blocks are then
combined under an exact total-norm target.  The final list is sorted by
coordinates, so the output is independent of how the search was split
across workers.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .linalg import rational

BLOCK = 8


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeVector:
    blocks: int
    doubled: tuple  # 8 * blocks integers, each = 2 * coordinate

    def __post_init__(self):
        if self.blocks < 1:
            raise LatticeError("need at least one block")
        if len(self.doubled) != BLOCK * self.blocks:
            raise LatticeError("expected %d doubled coordinates, got %d"
                               % (BLOCK * self.blocks, len(self.doubled)))
        coerced = []
        for c in self.doubled:
            if isinstance(c, bool) or not isinstance(c, int):
                raise LatticeError("doubled coordinates must be integers")
            coerced.append(c)
        object.__setattr__(self, "doubled", tuple(coerced))

    @property
    def coords(self) -> tuple:
        return tuple(Fraction(c, 2) for c in self.doubled)

    def block(self, b: int) -> tuple:
        return self.doubled[BLOCK * b:BLOCK * (b + 1)]

    def sort_key(self) -> tuple:
        return self.doubled


def from_coords(coords) -> LatticeVector:
    """Build a vector from exact rational coordinates (multiples of 1/2)."""
    vals = [rational(c) for c in coords]
    if len(vals) % BLOCK:
        raise LatticeError("coordinate count must be a multiple of 8")
    doubled = []
    for v in vals:
        d = 2 * v
        if d.denominator != 1:
            raise LatticeError("coordinate %s is not a multiple of 1/2" % (v,))
        doubled.append(int(d))
    return LatticeVector(len(vals) // BLOCK, tuple(doubled))


def zero(blocks: int) -> LatticeVector:
    return LatticeVector(blocks, (0,) * (BLOCK * blocks))


def concat(*vectors: LatticeVector) -> LatticeVector:
    doubled = ()
    blocks = 0
    for v in vectors:
        doubled += v.doubled
        blocks += v.blocks
    return LatticeVector(blocks, doubled)


W0 = from_coords((1, 1, 1, 1, 0, 0, 0, 0))
ROOT = from_coords((1, 1, 0, 0, 0, 0, 0, 0))
HALF_SUM = from_coords((Fraction(1, 2),) * 8)

_NAMED = {"zero": None, "w0": W0, "root": ROOT, "halfsum": HALF_SUM}


def parse_vector(spec: str, blocks: Optional[int] = None) -> LatticeVector:
    """Read 'w0', 'w0^3', 'zero' (needs blocks), or comma-separated coords."""
    spec = spec.strip()
    if "," in spec:
        return from_coords(part.strip() for part in spec.split(","))
    name, _, power = spec.partition("^")
    if name not in _NAMED:
        raise LatticeError("unknown vector name %r (have: %s, or coordinates)"
                           % (name, ", ".join(sorted(_NAMED))))
    reps = 1
    if power:
        reps = int(power)
        if reps < 1:
            raise LatticeError("power must be >= 1")
    if name == "zero":
        return zero(reps if power else (blocks or 1))
    base = _NAMED[name]
    return concat(*([base] * reps))


def _block_ok(block: tuple) -> bool:
    parity = block[0] % 2
    if any(c % 2 != parity for c in block):
        return False
    return sum(block) % 4 == 0


def is_member(v: LatticeVector) -> bool:
    return all(_block_ok(v.block(b)) for b in range(v.blocks))


def require_member(v: LatticeVector) -> None:
    if not is_member(v):
        raise LatticeError("vector is not in the lattice")


def norm(v: LatticeVector) -> Fraction:
    """Negative-definite squared length, -sum(coords^2)."""
    require_member(v)
    return -Fraction(sum(c * c for c in v.doubled), 4)


def same_class(v: LatticeVector, w: LatticeVector) -> bool:
    """True when (v - w) / 2 lies in the lattice."""
    require_member(v)
    require_member(w)
    if v.blocks != w.blocks:
        raise LatticeError("block counts differ")
    half = []
    for a, b in zip(v.doubled, w.doubled):
        d = a - b
        if d % 2:
            return False
        half.append(d // 2)
    return all(_block_ok(tuple(half[BLOCK * b:BLOCK * (b + 1)]))
               for b in range(v.blocks))


@dataclass(frozen=True)
class W2Class:
    """A class mod twice the lattice, held by a representative."""
    representative: LatticeVector

    def __post_init__(self):
        require_member(self.representative)

    def __eq__(self, other):
        return (isinstance(other, W2Class)
                and self.representative.blocks == other.representative.blocks
                and same_class(self.representative, other.representative))

    def __hash__(self):
        return hash(self.representative.blocks)


# ---------------------------------------------------------------------------
# enumeration


def _block_class_members(wb: tuple, budget_q: int) -> dict:
    """Members of the class of one block with doubled norm <= budget_q.

    Returns {doubled_norm: [blocks...]} with each inner list in ascending
    coordinate order.  v = w + 2e with e in E8, so coordinate i runs over
    c = wb[i] + 4t once the integer/half-integer type of e is fixed by the
    first coordinate.
    """
    found = {}

    def descend(pos, remaining, parity, prefix, half_sum):
        if pos == BLOCK:
            if half_sum % 4 == 0:
                q = budget_q - remaining
                found.setdefault(q, []).append(tuple(prefix))
            return
        base = wb[pos]
        bound = math.isqrt(remaining)
        if parity is None:
            # both types of e are still possible at the first coordinate
            c = -bound + ((base + bound) % 2)
            while c * c <= remaining:
                d = (c - base) // 2
                descend(pos + 1, remaining - c * c, d % 2, prefix + [c],
                        half_sum + d)
                c += 2
            return
        # parity of (c - base)/2 pinned: c = base + 2*parity (mod 4)
        c = -bound + ((base + 2 * parity + bound) % 4)
        while c * c <= remaining:
            d = (c - base) // 2
            descend(pos + 1, remaining - c * c, parity, prefix + [c],
                    half_sum + d)
            c += 4
    descend(0, budget_q, None, [], 0)
    return {q: sorted(vs) for q, vs in sorted(found.items())}


def _block_class_min(wb: tuple) -> int:
    """Least doubled norm in the class of one block."""
    own = sum(c * c for c in wb)
    members = _block_class_members(wb, own)
    return min(members)


def _worker_count(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("FLOER_WORKBENCH_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def congruent_vectors(w: LatticeVector, workers: Optional[int] = None) -> list:
    """All v with v^2 = w^2 and v congruent to w mod twice the lattice.

    Complete by the definiteness of the form; sorted by coordinates, so the
    answer does not depend on the worker count.
    """
    require_member(w)
    target = sum(c * c for c in w.doubled)
    mins = [_block_class_min(w.block(b)) for b in range(w.blocks)]
    total_min = sum(mins)
    if total_min > target:
        return []
    per_block = []
    for b in range(w.blocks):
        budget = target - (total_min - mins[b])
        per_block.append(_block_class_members(w.block(b), budget))
    suffix_min = [0] * (w.blocks + 1)
    for b in range(w.blocks - 1, -1, -1):
        suffix_min[b] = suffix_min[b + 1] + mins[b]

    def combine(b, remaining, head, out):
        if b == w.blocks:
            if remaining == 0:
                out.append(head)
            return
        groups = per_block[b]
        if b == w.blocks - 1:
            for vec in groups.get(remaining, ()):
                out.append(head + vec)
            return
        for q, vecs in groups.items():
            if q + suffix_min[b + 1] > remaining:
                break
            for vec in vecs:
                combine(b + 1, remaining - q, head + vec, out)

    first = [(q, vec) for q, vecs in per_block[0].items() for vec in vecs
             if q + suffix_min[1] <= target]
    nworkers = _worker_count(workers)

    def run_chunk(chunk):
        out = []
        for q, vec in chunk:
            combine(1, target - q, vec, out)
        return out

    if nworkers == 1 or len(first) < 2:
        results = run_chunk(first)
    else:
        chunks = [first[i::nworkers] for i in range(nworkers)]
        results = []
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            for part in pool.map(run_chunk, chunks):
                results.extend(part)
    results.sort()
    return [LatticeVector(w.blocks, tup) for tup in results]


def is_extremal(w: LatticeVector) -> bool:
    """Minimality of |w^2| within the class of w mod twice the lattice.

    Blocks are orthogonal, so the class minimum is the sum of the per-block
    class minima.
    """
    require_member(w)
    own = sum(c * c for c in w.doubled)
    return sum(_block_class_min(w.block(b)) for b in range(w.blocks)) == own


@dataclass
class EtaResult:
    vectors: tuple
    count: Fraction


def eta(w: LatticeVector, sign_rule: Optional[Callable] = None,
        workers: Optional[int] = None, keep_vectors: bool = True) -> EtaResult:
    """Signed count of the vectors congruent to w with the same norm.

    The sign rule is pluggable; the default weights every vector +1, and
    every assertion made downstream (nonzeroness, multiplicativity) is
    insensitive to the choice.
    """
    require_member(w)
    if not is_extremal(w):
        warnings.warn("eta evaluated at a non-extremal vector", stacklevel=2)
    vectors = congruent_vectors(w, workers=workers)
    if sign_rule is None:
        count = Fraction(len(vectors))
    else:
        count = Fraction(0)
        for v in vectors:
            count += Fraction(sign_rule(v))
    return EtaResult(vectors=tuple(vectors) if keep_vectors else (),
                     count=count)


def min_charge_k(w: LatticeVector) -> int:
    """The index -w^2/2 - 1; needs even norm at most -2."""
    value = norm(w)
    if value > -2:
        raise LatticeError("norm must be at most -2, got %s" % (value,))
    k2 = -value / 2 - 1
    if k2.denominator != 1:
        raise LatticeError("norm must be even, got %s" % (value,))
    return int(k2)
