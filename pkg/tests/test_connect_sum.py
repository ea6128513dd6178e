import itertools
import random
from fractions import Fraction

import pytest

from floer_workbench.connect_sum import (
    DEFAULT_SIGNS,
    SignConfig,
    SignSearchError,
    build_pair_cycle,
    build_triple_cycle,
    connected_sum_complex,
    disjoint_union_complex,
    extended_u,
    kernel_symmetry_check,
    product_functional,
    sign_search,
    triple_cycle_condition,
    verify_sum_bound,
)
from floer_workbench.fixtures import builtin, random_admissible, random_homology_sphere
from floer_workbench.homology import homology, reduce_to_homology
from floer_workbench.linalg import (
    RatMatrix,
    kernel_basis,
    rank,
    vec_add,
    vec_scale,
    vector,
)


def ladder(k):
    return builtin("NilpotentLadder:%d" % k)


def unit_functional(data, name):
    return {data.complex.index_of(name): Fraction(1)}


# ---------------------------------------------------------------------------
# shape and differential structure


def test_sphere_pair_has_four_summands():
    built = connected_sum_complex(builtin("Pplus"), builtin("Pplus"))
    assert built.shape == (1, 2, 3, 4)
    assert built.total.size == 12  # 4 + 2 + 2 + 4
    d = built.total.differential
    assert (d @ d).is_zero()


def test_mixed_pair_drops_one_theta_summand():
    sphere = builtin("Pplus")
    adm = ladder(1)
    left = connected_sum_complex(adm, sphere)   # theta of the left is absent
    assert left.shape == (1, 2, 4)
    right = connected_sum_complex(sphere, adm)  # theta of the right is absent
    assert right.shape == (1, 3, 4)
    for built in (left, right):
        d = built.total.differential
        assert (d @ d).is_zero()


def test_admissible_pair_keeps_only_tensor_summands():
    built = connected_sum_complex(ladder(1), ladder(2))
    assert built.shape == (1, 4)
    d = built.total.differential
    assert (d @ d).is_zero()


def test_shifted_summand_degrees():
    a = builtin("Pplus")
    built = connected_sum_complex(a, a)
    cx = built.total
    for idx in built.indices_with_tag(4):
        base = cx.names[idx].split(".", 1)[1]
        l_name, r_name = base.split(".")
        dl = a.complex.degrees[a.complex.index_of(l_name)]
        dr = a.complex.degrees[a.complex.index_of(r_name)]
        assert cx.degrees[idx] == (dl + dr + 3) % 8


def test_p_plus_pair_homology_dims():
    built = connected_sum_complex(builtin("Pplus"), builtin("Pplus"))
    assert homology(built.total).nonzero_dims() == {0: 2, 4: 2}


def test_model_iteration_grows_linearly():
    sphere = builtin("Pplus")
    for n in (1, 2, 3):
        built = connected_sum_complex(builtin("nPplusModel:%d" % n), sphere)
        dims = homology(built.total).nonzero_dims()
        assert dims == {0: n + 1, 4: n + 1}


def test_stabilization_preserves_homology():
    """Summing with the 2-generator sphere model never changes dims."""
    rng = random.Random(1001)
    for u_param in (0, 1, 2):
        sphere = builtin("Pplus", u_param=u_param)
        for _ in range(7):
            y = random_admissible(rng)
            before = homology(y.complex).nonzero_dims()
            built = connected_sum_complex(y, sphere)
            assert homology(built.total).nonzero_dims() == before


# ---------------------------------------------------------------------------
# sign families


def test_sign_config_validation():
    with pytest.raises(ValueError):
        SignConfig(2, 1, 1, 1, 1)
    assert DEFAULT_SIGNS.as_tuple() == (1, 1, 1, 1, -1)


def test_sign_search_on_delta_free_pair_accepts_everything():
    # with delta = 0 on both factors the two constraint products never
    # activate, so the whole family squares to zero
    accepted = sign_search(builtin("Pplus"), builtin("Pplus"))
    assert len(accepted) == 32
    assert accepted[0] == SignConfig(1, 1, 1, 1, 1)
    assert DEFAULT_SIGNS in accepted


def test_sign_search_with_active_constraints():
    rng = random.Random(321)
    found = 0
    for _ in range(12):
        a = random_homology_sphere(rng)
        b = random_homology_sphere(rng)
        if not (a.delta and a.delta_prime and b.delta and b.delta_prime):
            continue
        found += 1
        accepted = sign_search(a, b)
        assert len(accepted) == 8
        assert DEFAULT_SIGNS in accepted
        for cfg in accepted:
            s12, s13, s14, s24, s34 = cfg.as_tuple()
            assert s12 * s24 == s14
            assert s13 * s34 == -s14
    assert found >= 5


def test_dims_invariant_across_accepted_signs():
    rng = random.Random(555)
    inputs = []
    for _ in range(6):
        inputs.append((random_admissible(rng), builtin("Pplus")))
    for _ in range(4):
        inputs.append((random_homology_sphere(rng),
                       random_homology_sphere(rng)))
    for a, b in inputs:
        accepted = sign_search(a, b)
        assert accepted
        dims_seen = set()
        for cfg in accepted:
            built = connected_sum_complex(a, b, signs=cfg)
            d = built.total.differential
            assert (d @ d).is_zero()
            dims_seen.add(tuple(sorted(homology(built.total).dims.items())))
        assert len(dims_seen) == 1


def test_rejected_signs_fail_square_zero():
    rng = random.Random(88)
    a = b = None
    while True:
        a = random_homology_sphere(rng)
        b = random_homology_sphere(rng)
        if a.delta and a.delta_prime and b.delta and b.delta_prime:
            break
    accepted = set(cfg.as_tuple() for cfg in sign_search(a, b))
    for tup in itertools.product((1, -1), repeat=5):
        if tup in accepted:
            built = connected_sum_complex(a, b, signs=SignConfig(*tup))
            d = built.total.differential
            assert (d @ d).is_zero()
        else:
            with pytest.raises(SignSearchError):
                connected_sum_complex(a, b, signs=SignConfig(*tup))


# ---------------------------------------------------------------------------
# disjoint union


def union_dims_oracle(a, b):
    """Graded ker/coker dimensions of the cross map on factor homologies."""
    ra, rb = reduce_to_homology(a), reduce_to_homology(b)
    na, nb = ra.size, rb.size
    pairs = [(i, j) for i in range(na) for j in range(nb)]
    deg = {p: (ra.complex.degrees[p[0]] + rb.complex.degrees[p[1]]) % 8
           for p in pairs}
    phi_entries = {}
    for col, (i, j) in enumerate(pairs):
        for r in range(na):
            c = ra.u[(r, i)]
            if c:
                phi_entries[(pairs.index((r, j)), col)] = \
                    phi_entries.get((pairs.index((r, j)), col), Fraction(0)) + c
        for r in range(nb):
            c = rb.u[(r, j)]
            if c:
                key = (pairs.index((i, r)), col)
                phi_entries[key] = phi_entries.get(key, Fraction(0)) - c
    phi = RatMatrix(len(pairs), len(pairs),
                    {k: v for k, v in phi_entries.items() if v})

    def graded_block(rows_deg, cols_deg):
        cols = [k for k, p in enumerate(pairs) if deg[p] == cols_deg]
        rows = [k for k, p in enumerate(pairs) if deg[p] == rows_deg]
        sub = RatMatrix(len(rows), len(cols),
                        {(ri, ci): phi[(r, c)]
                         for ci, c in enumerate(cols)
                         for ri, r in enumerate(rows) if (r, c) in phi.entries})
        return sub, len(cols), len(rows)

    dims = {}
    for r in range(8):
        ker_block, ncols, _ = graded_block((r - 4) % 8, r)
        ker_dim = len(kernel_basis(ker_block))
        coker_block, _, nrows = graded_block((r - 3) % 8, (r + 1) % 8)
        coker_dim = nrows - rank(coker_block)
        if ker_dim + coker_dim:
            dims[r] = ker_dim + coker_dim
    return dims


def test_union_requires_admissible():
    with pytest.raises(ValueError):
        disjoint_union_complex(builtin("Pplus"), ladder(1))


def test_union_homology_matches_kernel_cokernel_oracle():
    rng = random.Random(777)
    for _ in range(50):
        a = random_admissible(rng)
        b = random_admissible(rng)
        built = disjoint_union_complex(a, b)
        d = built.total.differential
        assert (d @ d).is_zero()
        assert homology(built.total).nonzero_dims() == union_dims_oracle(a, b)


def test_extended_u_is_chain_map():
    rng = random.Random(31)
    for _ in range(15):
        built = disjoint_union_complex(random_admissible(rng),
                                       random_admissible(rng))
        ue = extended_u(built)
        d = built.total.differential
        assert (d @ ue - ue @ d).is_zero()


def test_extended_u_squares_to_four_on_p_type_factors():
    # with u^2 = 4 on both factors the extended action satisfies
    # (u~)^2 = 4 on the plain tensor summand
    data = ladder(1)
    n_map = data.u @ data.u - RatMatrix.identity(data.size).scale(4)
    assert (n_map @ n_map).is_zero()  # order 1: u^2 = 4 exactly
    built = disjoint_union_complex(data, data)
    ue = extended_u(built)
    sq = ue @ ue
    four = RatMatrix.identity(built.total.size).scale(4)
    for idx in built.indices_with_tag(1):
        col = sq.column(idx)
        assert col == four.column(idx)


def test_extended_u_rejects_other_shapes():
    built = connected_sum_complex(builtin("Pplus"), builtin("Pplus"))
    with pytest.raises(ValueError):
        extended_u(built)


def test_kernel_symmetry_on_reduced_cycles():
    rng = random.Random(2024)
    checked = 0
    for _ in range(12):
        a = reduce_to_homology(random_admissible(rng))
        b = reduce_to_homology(random_admissible(rng))
        built = disjoint_union_complex(a, b)
        from floer_workbench.homology import cycle_basis
        for r in range(8):
            for z in cycle_basis(built.total, r):
                assert kernel_symmetry_check(built, z)
                checked += 1
    assert checked >= 40


def test_kernel_symmetry_rejects_non_cycles():
    a = reduce_to_homology(ladder(2))
    built = disjoint_union_complex(a, a)
    # a pure tensor chain outside ker of the cross map is not a cycle here
    target = None
    ue_cols = built.total.differential
    for idx in built.indices_with_tag(1):
        z = {idx: Fraction(1)}
        if ue_cols.apply(z):
            target = z
            break
    assert target is not None
    with pytest.raises(ValueError):
        kernel_symmetry_check(built, target)


def test_kernel_symmetry_accepts_empty_chain():
    built = disjoint_union_complex(ladder(1), ladder(1))
    assert kernel_symmetry_check(built, {})


# ---------------------------------------------------------------------------
# pairing machinery


def test_product_functional_halves_the_product():
    a = builtin("TrefoilLikeSynthetic")
    fa = unit_functional(a, "y1")
    alpha = build_pair_cycle(a, a, vector({a.complex.index_of("y1"): 1}),
                             vector({a.complex.index_of("y1"): 1}), 1)
    value = product_functional(a, a, fa, fa, alpha)
    assert value == Fraction(1, 2)


def test_product_functional_requires_kernel_membership():
    # z1 (x) z1 is not in the kernel of u (x) I - I (x) u': the u image of
    # z1 lands on the w side, so the two placements cannot cancel
    a = ladder(2)
    fa = unit_functional(a, "z2")
    bad = {(0, 0): Fraction(1)}
    with pytest.raises(ValueError):
        product_functional(a, a, fa, fa, bad)


def test_pair_cycle_lands_in_kernel():
    for k, kp in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        a, b = ladder(k), ladder(kp)
        n = max(k, kp)
        wa = vector({a.complex.index_of("z1"): 1})
        wb = vector({b.complex.index_of("z1"): 1})
        alpha = build_pair_cycle(a, b, wa, wb, n)
        assert alpha, "empty cycle for orders %d, %d" % (k, kp)
        # membership in ker(u x 1 - 1 x u): flatten the tensor-index cycle
        # into the plain-tensor summand, where the union differential is
        # exactly the cross map into the shifted summand
        built = disjoint_union_complex(a, b)
        flat = {i * b.size + j: v for (i, j), v in alpha.items()}
        assert built.total.differential.apply(flat) == {}


def test_triple_cycle_condition_exact():
    for n, ks in [(1, (1, 1, 1)), (2, (2, 2, 2)), (2, (1, 2, 2))]:
        a, b, c = (ladder(k) for k in ks)
        wa = vector({a.complex.index_of("z1"): 1})
        wb = vector({b.complex.index_of("z1"): 1})
        wc = vector({c.complex.index_of("z1"): 1})
        alpha = build_triple_cycle(a, b, c, wa, wb, wc, n)
        assert alpha
        assert triple_cycle_condition(a, b, c, alpha)


def test_verify_pair_bound_values():
    # level = k + k' - n - 1 with n = max order; the pairing must be half
    # the product of the two witness evaluations
    for k, kp in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3)]:
        a, b = ladder(k), ladder(kp)
        result = verify_sum_bound(a, b, fa=unit_functional(a, "z%d" % k),
                                  fb=unit_functional(b, "z%d" % kp))
        assert result.mode == "pair"
        assert result.orders == (k, kp)
        assert result.level == k + kp - result.n - 1
        assert result.cycle_ok
        assert result.product_matches
        assert result.pairing == Fraction(1, 2) * result.witness_values[0] \
            * result.witness_values[1]
        assert result.nonzero


def test_verify_triple_bound_sweep():
    """Criterion sweep: k, k', k'' <= 3 and n <= 2 with every factor's
    nilpotency order at most n; applicable exactly when the level
    k + k' + k'' - 2n - 1 is non-negative."""
    applicable = inapplicable = 0
    for n in (1, 2):
        for ks in itertools.product((1, 2, 3), repeat=3):
            if max(ks) > n:
                continue  # (u^2-4)^n != 0 on some factor
            a, b, c = (ladder(k) for k in ks)
            functionals = dict(zip(
                ("fa", "fb", "fc"),
                (unit_functional(d, "z%d" % k) for d, k in ((a, ks[0]),
                                                            (b, ks[1]),
                                                            (c, ks[2])))))
            level = sum(ks) - 2 * n - 1
            if level < 0:
                inapplicable += 1
                with pytest.raises(ValueError):
                    verify_sum_bound(a, b, c, n=n, **functionals)
                continue
            applicable += 1
            result = verify_sum_bound(a, b, c, n=n, **functionals)
            assert result.mode == "triple"
            assert result.level == level
            assert result.cycle_ok
            assert result.product_matches
            assert result.nonzero
            expected = Fraction(1, 4) * result.witness_values[0] \
                * result.witness_values[1] * result.witness_values[2]
            assert result.pairing == expected
    assert applicable == 5
    assert inapplicable == 4


def test_triple_example_pattern():
    # three order-1 factors at n = 1: level 0 and a positive pairing
    a = builtin("TrefoilLikeSynthetic")
    result = verify_sum_bound(a, a, a)
    assert result.n == 1
    assert result.level == 0
    assert result.pairing == 1
    assert result.witness_values == (4, 1, 1)
    assert result.nonzero


def test_sum_bound_rejects_negative_level():
    a, b, c = ladder(1), ladder(1), ladder(2)
    with pytest.raises(ValueError):
        verify_sum_bound(a, b, c, n=2,
                         fa=unit_functional(a, "z1"),
                         fb=unit_functional(b, "z1"),
                         fc=unit_functional(c, "z2"))


def test_sum_bound_reduces_inputs_first():
    # a sphere input with a differential must be reduced internally
    rng = random.Random(606)
    a = builtin("TrefoilLikeSynthetic")
    result = verify_sum_bound(a, a)
    assert result.pairing == Fraction(1, 2)
