import random
from fractions import Fraction

import pytest

from floer_workbench.complexes import (
    FloerData,
    GradedComplex,
    Kind,
    validate,
)
from floer_workbench.fixtures import builtin, random_admissible, random_valid
from floer_workbench.homology import (
    DegreeMismatch,
    DescentObstruction,
    boundary_basis,
    class_coordinates,
    cycle_basis,
    euler_characteristic_mod2,
    homology,
    pair,
    reduce_to_homology,
)
from floer_workbench.linalg import RatMatrix, kernel_basis, rank, vec_add, vector


def random_graded_complex(rng, size):
    """A complex with a genuinely nonzero differential: pick degrees, then
    fill admissible entries (degree drop of one) with sparse rationals and
    square-zero enforced by nilpotent staircase layering."""
    degrees = tuple(rng.randrange(8) for _ in range(size))
    entries = {}
    # staircase: only map generator j to i < j, which combined with the
    # degree filter keeps d o d = 0 achievable by rejection
    for _ in range(200):
        entries = {}
        for j in range(size):
            for i in range(size):
                if i == j:
                    continue
                if degrees[i] != (degrees[j] - 1) % 8:
                    continue
                if rng.random() < 0.3:
                    entries[(i, j)] = Fraction(rng.randint(-2, 2))
        m = RatMatrix(size, size, {k: v for k, v in entries.items() if v})
        if (m @ m).is_zero():
            return GradedComplex(tuple("g%d" % k for k in range(size)),
                                 degrees, m)
    raise AssertionError("rejection sampling failed")


def test_p_plus_dims():
    space = homology(builtin("Pplus").complex)
    assert space.nonzero_dims() == {0: 1, 4: 1}


def test_acyclic_pair():
    cx = GradedComplex(("a", "b"), (1, 0),
                       RatMatrix(2, 2, {(1, 0): Fraction(1)}))
    assert homology(cx).total_dim == 0


def test_dims_match_rank_nullity_oracle():
    rng = random.Random(912)
    for _ in range(10):
        cx = random_graded_complex(rng, 12)
        space = homology(cx)
        d = cx.differential
        for r in range(8):
            cols = cx.indices_in_degree(r)
            cols_up = cx.indices_in_degree(r + 1)
            # dim ker(d restricted to degree r) - dim im(d from degree r+1)
            sub = RatMatrix(cx.size, len(cols),
                            {(i, k): d[(i, j)] for k, j in enumerate(cols)
                             for i in range(cx.size) if (i, j) in d.entries})
            up = RatMatrix(cx.size, len(cols_up),
                           {(i, k): d[(i, j)] for k, j in enumerate(cols_up)
                            for i in range(cx.size) if (i, j) in d.entries})
            expected = len(kernel_basis(sub)) - rank(up)
            assert space.dims[r] == expected


def test_cycles_and_boundaries_nest():
    rng = random.Random(33)
    cx = random_graded_complex(rng, 10)
    for r in range(8):
        cycles = cycle_basis(cx, r)
        bounds = boundary_basis(cx, r)
        assert len(bounds) <= len(cycles)
        for b in bounds:
            assert cx.differential.apply(b) == {}


def test_reduce_fixed_point_and_idempotence():
    data = builtin("Pplus")
    reduced = reduce_to_homology(data)
    assert reduced.complex.differential.is_zero()
    assert homology(reduced.complex).nonzero_dims() == {0: 1, 4: 1}
    again = reduce_to_homology(reduced)
    assert again.complex.degrees == reduced.complex.degrees
    assert again.u == reduced.u
    assert again.delta == reduced.delta
    assert again.delta_prime == reduced.delta_prime


def test_reduce_output_validates():
    rng = random.Random(4242)
    reduced_count = obstructed = 0
    for _ in range(30):
        data = random_valid(rng)
        try:
            reduced = reduce_to_homology(data)
        except DescentObstruction:
            obstructed += 1
            continue
        reduced_count += 1
        assert validate(reduced).ok, str(validate(reduced))
        assert reduced.complex.differential.is_zero()
        assert (homology(data.complex).nonzero_dims()
                == homology(reduced.complex).nonzero_dims())
    assert reduced_count >= 10
    assert obstructed >= 1


def test_reduce_preserves_parity_euler():
    rng = random.Random(555)
    for _ in range(15):
        data = random_valid(rng)
        try:
            reduced = reduce_to_homology(data)
        except DescentObstruction:
            continue
        assert (euler_characteristic_mod2(homology(data.complex).dims)
                == euler_characteristic_mod2(reduce_dims(reduced)))


def reduce_dims(data: FloerData) -> dict:
    return homology(data.complex).dims


def test_descent_obstruction_raised():
    # valid sphere with a nonzero composite delta_prime o delta: u is not a
    # chain map (the correction term carries the relation), so reduction
    # must refuse rather than descend u
    cx = GradedComplex(("a1", "b4", "c5"), (1, 4, 5),
                       RatMatrix(3, 3, {(1, 2): Fraction(-1)}))
    data = FloerData(cx, RatMatrix(3, 3, {(2, 0): Fraction(1)}),
                     vector({0: 2}), vector({1: 1}), Kind.HOMOLOGY_SPHERE)
    assert validate(data).ok
    with pytest.raises(DescentObstruction):
        reduce_to_homology(data)


def test_delta_kills_boundaries_after_reduction():
    rng = random.Random(808)
    for _ in range(10):
        data = random_valid(rng)
        d = data.complex.differential
        pulled = d.apply_functional(data.delta)
        assert pulled == {}


def test_pair_kronecker_and_bilinearity():
    f = vector({2: 1})
    assert pair(f, vector({2: 1})) == 1
    assert pair(f, vector({1: 1})) == 0
    assert pair({}, vector({0: 5})) == 0
    rng = random.Random(99)
    for _ in range(10):
        x = vector({rng.randrange(4): Fraction(rng.randint(-3, 3))})
        c = Fraction(rng.randint(1, 5))
        assert pair(f, {k: c * v for k, v in x.items()}) == c * pair(f, x)


def test_pair_degree_guard():
    degrees = {0: 1, 1: 4}
    with pytest.raises(DegreeMismatch):
        pair(vector({0: 1}), vector({1: 1}), degrees=degrees)
    # matching degrees pass through
    assert pair(vector({0: 1}), vector({0: 2}), degrees={0: 1}) == 2


def test_class_coordinates_identifies_homologous_cycles():
    rng = random.Random(19)
    for _ in range(20):
        data = random_valid(rng)
        cx = data.complex
        space = homology(cx)
        from floer_workbench.homology import _homology_solvers
        solvers = _homology_solvers(cx, space)
        for r in range(8):
            cycles = cycle_basis(cx, r)
            bounds = boundary_basis(cx, r)
            if not cycles or not bounds:
                continue
            z = cycles[0]
            z_moved = vec_add(z, bounds[0])
            a = class_coordinates(cx, space, solvers, z, r)
            b = class_coordinates(cx, space, solvers, z_moved, r)
            assert a == b
            break


def test_homology_dim_bounded_by_generators():
    rng = random.Random(64)
    for _ in range(10):
        data = random_admissible(rng)
        space = homology(data.complex)
        assert space.total_dim <= data.size
        if data.complex.differential.is_zero():
            assert space.total_dim == data.size
