from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import steiner_factor
from steinerlike.errors import HypothesisFailed, NotAbelian, NotSteiner
from steinerlike.extension import build_extension, is_direct_product, spec_from_weighted
from steinerlike.fischer import affine_covering, is_restricted_fischer
from steinerlike.identities import brute_check
from steinerlike.steiner import loop_from_sts
from steinerlike.tables import named_group
from steinerlike.weighted import (AbelianTwist, ConstantT, DirectWithZ2, FourPointAbelian,
                                  FourPointNonabelian, NonabelianFischer, Unstructured,
                                  WeightedSteinerLoop, analyze_weight_group, check_core_identity,
                                  check_square_identity, factor_table, prescribed_diag)

# Fano blocks from the Skolem construction: {1,2,4} with e is a subloop of index 2
U = (1, 2, 4)


def oracle_core(s, a, h, diag):
    """h(x)h(y)h(x)h(xy) == f(x,x) for distinct non-identity x, y, in plain Python."""
    m = lambda *xs: _prod(a, xs)
    n = s.order
    return all(m(h[x], h[y], h[x], h[s.table[x, y]]) == diag[x]
               for x, y in product(range(1, n), repeat=2) if x != y)


def _prod(a, xs):
    acc = 0
    for x in xs:
        acc = int(a.table[acc, x])
    return acc


def full(values):
    return [0] + list(values)


class TestFactorTable:
    def test_trivial_weights(self, klein_loop, s3):
        w = WeightedSteinerLoop(klein_loop, s3, [0, 0, 0], [0, 0, 0])
        assert not factor_table(w).any()

    def test_transpositions_do_not_commute(self, klein_loop, s3):
        w = WeightedSteinerLoop(klein_loop, s3, [1, 2, 5], [0, 0, 0])
        f = factor_table(w)
        assert f[1, 2] == s3.table[1, 2] and f[2, 1] == s3.table[2, 1]
        assert f[1, 2] != f[2, 1]

    @given(st.lists(st.integers(0, 5), min_size=14, max_size=14))
    def test_matches_oracle(self, vals):
        from steinerlike.steiner import fano
        s, a = fano(), named_group("S3")
        h, diag = vals[:7], vals[7:]
        w = WeightedSteinerLoop(s, a, h, diag)
        oracle = steiner_factor(s.table.tolist(), a.table.tolist(), full(h), full(diag))
        assert factor_table(w).tolist() == oracle

    def test_rejects_non_steiner(self, z4):
        with pytest.raises(NotSteiner):
            WeightedSteinerLoop(z4, z4, [0, 0, 0], [0, 0, 0])

    def test_mapping_input(self, klein_loop, z4):
        w = WeightedSteinerLoop(klein_loop, z4, {"1": 1, "2": 2, "3": 3}, {1: 0, 2: 0, 3: 0})
        assert w.h.tolist() == [0, 1, 2, 3]
        with pytest.raises(ValueError):
            WeightedSteinerLoop(klein_loop, z4, {"1": 1}, [0, 0, 0])


class TestCoreIdentity:
    @pytest.mark.parametrize("t", range(8))
    def test_constant_t_with_t4(self, fano_loop, z8, t):
        w = WeightedSteinerLoop(fano_loop, z8, [t] * 7, [4 * t % 8] * 7)
        assert check_core_identity(w)

    @given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
    def test_four_point_abelian_formula(self, a_, b, c):
        from steinerlike.steiner import klein
        z8 = named_group("Z8")
        diag = [(2 * a_ + b + c) % 8, (a_ + 2 * b + c) % 8, (a_ + b + 2 * c) % 8]
        w = WeightedSteinerLoop(klein(), z8, [a_, b, c], diag)
        assert check_core_identity(w)

    def test_mismatch_has_witness(self, fano_loop, z8):
        w = WeightedSteinerLoop(fano_loop, z8, [1] * 7, [4] * 6 + [5])
        chk = check_core_identity(w)
        assert not chk
        x, y = chk.witness
        assert not oracle_core(fano_loop, z8, w.h, w.diag)
        assert x == 7 or fano_loop.table[x, y] == 7

    @given(st.lists(st.integers(0, 5), min_size=3, max_size=3))
    def test_prescribed_diag_agrees_with_oracle(self, h):
        from steinerlike.steiner import klein
        s, a = klein(), named_group("S3")
        diag = prescribed_diag(s, a, h)
        assert bool(check_core_identity(WeightedSteinerLoop(s, a, h, diag[1:]))) == \
            oracle_core(s, a, full(h), diag)


class TestSquareIdentity:
    def test_constant(self, fano_loop, z8):
        w = WeightedSteinerLoop(fano_loop, z8, [3] * 7, [12 % 8] * 7)
        assert check_square_identity(w)

    @pytest.mark.parametrize("rx, ry", list(product((0, 4), repeat=2)))
    def test_involution_twist(self, klein_loop, z8, rx, ry):
        # h = (1, 1, 1) on x, y, xy: f(x,x) = a^2 b c rho_x, f(xy,xy) = a b c^2 rho_x rho_y
        w = WeightedSteinerLoop(klein_loop, z8, [1, 1, 1], [(4 + rx) % 8, (4 + ry) % 8,
                                                            (4 + rx + ry) % 8])
        assert check_square_identity(w)

    def test_twist_must_multiply(self, klein_loop, z8):
        w = WeightedSteinerLoop(klein_loop, z8, [1, 1, 1], [0, 4, 4])
        assert not check_square_identity(w)

    def test_perturbed(self, klein_loop, z8):
        w = WeightedSteinerLoop(klein_loop, z8, [1, 1, 1], [5, 4, 4])
        assert not check_square_identity(w)

    def test_needs_abelian(self, klein_loop, s3):
        with pytest.raises(NotAbelian):
            check_square_identity(WeightedSteinerLoop(klein_loop, s3, [1, 2, 5], [0, 0, 0]))


class TestClassification:
    def test_constant_t(self, fano_loop, z8):
        an = analyze_weight_group(WeightedSteinerLoop(fano_loop, z8, [1] * 7, [4] * 7))
        assert an.classification == ConstantT(1, 4)
        assert len(an.d_group) == 8

    def test_direct_with_z2(self, fano_loop):
        a = named_group("Z4xZ2")
        t, omega = 2, 1                     # (1, 0) and (0, 1)
        tw = a.prod(t, omega)
        h = [t if p in U else tw for p in range(1, 8)]
        diag = [0 if p in U else omega for p in range(1, 8)]
        w = WeightedSteinerLoop(fano_loop, a, h, diag)
        an = analyze_weight_group(w)
        assert isinstance(an.classification, DirectWithZ2)
        c = an.classification
        assert (c.t, c.omega, c.subloop, c.d_is_direct) == (t, omega, (0, 1, 2, 4), True)
        assert brute_check(build_extension(spec_from_weighted(w)), "right_alternative")

    def test_direct_with_z2_omega_inside_t(self, fano_loop, z4):
        w = WeightedSteinerLoop(fano_loop, z4, [2, 2, 0, 2, 0, 0, 0], [0, 0, 2, 0, 2, 2, 2])
        c = analyze_weight_group(w).classification
        assert isinstance(c, DirectWithZ2) and not c.d_is_direct

    def test_abelian_twist(self, fano_loop):
        a = named_group("Z2^2")
        w = WeightedSteinerLoop(fano_loop, a, [3, 2, 1, 2, 1, 0, 0], [0, 1, 2, 1, 2, 3, 3])
        an = analyze_weight_group(w)
        c = an.classification
        assert isinstance(c, AbelianTwist)
        assert len(c.image) == 4
        # the twist is a homomorphism S -> A
        om = np.array(c.omegas)
        assert (om[fano_loop.table] == a.table[om[:, None], om[None, :]]).all()
        assert brute_check(build_extension(spec_from_weighted(w)), "right_alternative")

    def test_nonabelian_fischer(self):
        _, weights, ws = affine_covering(1, 2)
        s = loop_from_sts(ws.sts)
        w = WeightedSteinerLoop(s, ws.g, weights[1:], [0] * 9)
        c = analyze_weight_group(w).classification
        assert isinstance(c, NonabelianFischer)
        assert c.u == 0 and c.u_in_d
        assert is_restricted_fischer(c.quotient.g, c.quotient.e_set)

    def test_four_point_abelian(self, klein_loop, z8):
        w = WeightedSteinerLoop(klein_loop, z8, [1, 2, 3], [7, 0, 1])
        assert analyze_weight_group(w).classification == FourPointAbelian(1, 2, 3, 6)

    def test_four_point_nonabelian_found_by_search(self, klein_loop, s3):
        # exhaustive search for weights with D = S3 satisfying the core identity
        found = []
        for h in product(range(6), repeat=3):
            diag = prescribed_diag(klein_loop, s3, h)
            if not oracle_core(klein_loop, s3, full(h), diag):
                continue
            w = WeightedSteinerLoop(klein_loop, s3, h, diag[1:])
            an = analyze_weight_group(w)
            if len(an.d_group) == 6 and w.f_central:
                found.append(an.classification)
        assert found
        assert all(isinstance(c, FourPointNonabelian) for c in found)
        assert all(len(c.k_group) == 3 for c in found)

    def test_unstructured_or_raise(self, fano_loop, z8):
        w = WeightedSteinerLoop(fano_loop, z8, [1] * 7, [0] * 7)
        assert isinstance(analyze_weight_group(w).classification, Unstructured)
        with pytest.raises(HypothesisFailed):
            analyze_weight_group(w, require=True)


class TestInvariants:
    @given(st.lists(st.integers(0, 5), min_size=3, max_size=3), st.data())
    def test_k_central_gives_abelian_d(self, h, data):
        from steinerlike.steiner import klein
        s3 = named_group("S3")
        diag = data.draw(st.lists(st.integers(0, 5), min_size=3, max_size=3))
        w = WeightedSteinerLoop(klein(), s3, h, diag)
        if w.k_central:
            assert analyze_weight_group(w).d_abelian

    @given(st.lists(st.integers(0, 3), min_size=7, max_size=7))
    def test_large_s_squares_equal(self, h):
        from steinerlike.steiner import fano
        s, a = fano(), named_group("Z4")
        w = WeightedSteinerLoop(s, a, h, prescribed_diag(s, a, h)[1:])
        an = analyze_weight_group(w)
        if an.core_identity.holds:
            assert an.h_squares_equal

    def test_direct_product_small_cases(self, klein_loop, z4):
        # h = omega of order 2, diag = e over |S| = 4 gives f = 1
        w = WeightedSteinerLoop(klein_loop, z4, [2, 2, 2], [0, 0, 0])
        assert is_direct_product(spec_from_weighted(w))
