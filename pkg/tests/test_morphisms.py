from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rows
from steinerlike.extension import ExtensionSpec, build_extension, spec_from_weighted
from steinerlike.morphisms import (MorphismWitness, automorphism_group, check_iso_equation,
                                   find_isomorphisms, first_isomorphism, loop_automorphisms)
from steinerlike.steiner import klein
from steinerlike.tables import direct_product, make_group, named_group
from steinerlike.weighted import WeightedSteinerLoop


def oracle_automorphisms(t):
    n = len(t)
    out = []
    for p in permutations(range(1, n)):
        phi = (0,) + p
        if all(phi[t[x][y]] == t[phi[x]][phi[y]] for x in range(n) for y in range(n)):
            out.append(phi)
    return out


def twisted(spec, rho):
    """f2 = rho(xy) rho(x)^-1 rho(y)^-1 f1 over an abelian A, so rho maps spec onto f2."""
    a, s = spec.a, spec.s
    t, inv = a.table, a.inverse
    rho = np.asarray(rho)
    f2 = t[t[t[rho[s.table], inv[rho][:, None]], inv[rho][None, :]], spec.f]
    return ExtensionSpec(s, a, f2)


def verified(w, spec1, spec2):
    phi = w.point_map(spec1)
    t1, t2 = build_extension(spec1).table, build_extension(spec2).table
    return len(set(phi.tolist())) == len(phi) and (phi[t1] == t2[np.ix_(phi, phi)]).all()


@pytest.fixture(scope="module")
def z4_spec():
    return spec_from_weighted(WeightedSteinerLoop(klein(), named_group("Z4"), [1, 2, 3], [2, 0, 2]))


class TestLoopAutomorphisms:
    def test_klein(self, klein_loop):
        auts = loop_automorphisms(klein_loop)
        assert len(auts) == 6
        assert sorted(tuple(a.tolist()) for a in auts) == oracle_automorphisms(rows(klein_loop.table))

    def test_fano(self, fano_loop):
        assert len(loop_automorphisms(fano_loop)) == 168

    def test_s3_inner(self, s3):
        assert len(loop_automorphisms(s3)) == len(oracle_automorphisms(rows(s3.table))) == 6

    def test_z8(self, z8):
        assert len(loop_automorphisms(z8)) == 4


class TestIsoEquation:
    def test_identity_witness(self, z4_spec):
        n, na = 4, 4
        w = MorphismWitness(np.arange(n), np.arange(na), np.zeros(n, int))
        assert check_iso_equation(w, z4_spec, z4_spec)

    def test_homomorphic_rho(self, klein_loop, z4):
        # rho: S -> {0, 2} is a homomorphism into the centre, so f is unchanged
        spec = spec_from_weighted(WeightedSteinerLoop(klein_loop, z4, [1, 1, 1], [0, 0, 0]))
        w = MorphismWitness(np.arange(4), np.arange(4), np.array([0, 2, 2, 0]))
        assert check_iso_equation(w, spec, spec)
        assert verified(w, spec, spec)

    def test_non_automorphism_rejected(self, z4_spec):
        w = MorphismWitness(np.array([0, 1, 2, 2]), np.arange(4), np.zeros(4, int))
        assert check_iso_equation(w, z4_spec, z4_spec).witness == ("alpha_s",)


class TestFindIsomorphisms:
    def test_twisted_pair_isomorphic(self, z4_spec):
        other = twisted(z4_spec, [0, 1, 0, 0])
        assert not (other.f == z4_spec.f).all()
        found = find_isomorphisms(z4_spec, other)
        assert found and all(verified(w, z4_spec, other) for w in found)
        assert any(w.rho.any() for w in found)
        assert [w.key() for w in found] == [w.key() for w in find_isomorphisms(z4_spec, other, prune=False)]

    @given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
    def test_any_twist_is_found(self, z4_spec, vals):
        rho = [0] + vals
        other = twisted(z4_spec, rho)
        found = find_isomorphisms(z4_spec, other)
        assert any(w.rho.tolist() == rho and not (w.alpha_s - np.arange(4)).any()
                   and not (w.alpha_a - np.arange(4)).any() for w in found)

    def test_commutator_obstruction(self, klein_loop, s3):
        a = spec_from_weighted(WeightedSteinerLoop(klein_loop, s3, [1, 2, 5], [0, 0, 0]))
        b = spec_from_weighted(WeightedSteinerLoop(klein_loop, s3, [1, 1, 1], [0, 0, 0]))
        assert find_isomorphisms(a, b) == [] == find_isomorphisms(a, b, prune=False)
        assert first_isomorphism(build_extension(a), build_extension(b)) is None

    def test_left_alternative_same_h(self, klein_loop, z4):
        # central f with the same h: identity-inducing isomorphism
        a = spec_from_weighted(WeightedSteinerLoop(klein_loop, z4, [2, 2, 2], [0, 0, 0]))
        found = find_isomorphisms(a, a)
        assert any(not w.rho.any() and (w.alpha_s == np.arange(4)).all()
                   and (w.alpha_a == np.arange(4)).all() for w in found)

    def test_self_equals_automorphism_group(self, z4_spec):
        assert [w.key() for w in find_isomorphisms(z4_spec, z4_spec)] == \
            [w.key() for w in automorphism_group(z4_spec).full]

    def test_size_mismatch(self, z4_spec, klein_loop, s3):
        assert find_isomorphisms(z4_spec, ExtensionSpec(klein_loop, s3, np.zeros((4, 4), int))) == []


class TestAutomorphismGroup:
    def test_psi_hom_s_to_z2(self, klein_loop):
        z2 = make_group("cyclic", n=2)
        spec = spec_from_weighted(WeightedSteinerLoop(klein_loop, z2, [1, 1, 1], [0, 0, 0]))
        rep = automorphism_group(spec)
        assert len(rep.psi) == 4
        assert rep.psi_elementary_abelian and rep.psi_meets_sigma_trivially
        assert rep.kernels_contain_derived
        assert rep.sigma_pairs == {"forward": True, "converse": True, "pairs_equal": True}
        assert all(verified(w, spec, spec) for w in rep.full)
        # the full group is the abstract automorphism group of Z2^3 fixing the slice: 4 * 6
        assert rep.order == 24

    def test_direct_product_trivial_centre(self, klein_loop, s3):
        rep = automorphism_group(ExtensionSpec(klein_loop, s3, np.zeros((4, 4), int)))
        assert len(rep.psi) == 1
        assert rep.order == 6 * 6

    def test_sigma_sublists(self, z4_spec):
        rep = automorphism_group(z4_spec)
        assert all(not w.rho.any() for w in rep.sigma)
        keys = [w.key() for w in rep.sigma]
        assert all(w.key() in keys for w in rep.sigma1 + rep.sigma2)

    def test_prune_does_not_change(self, z4_spec):
        assert [w.key() for w in automorphism_group(z4_spec).full] == \
            [w.key() for w in automorphism_group(z4_spec, prune=False).full]


class TestFirstIsomorphism:
    def test_direct_product_order(self, klein_loop):
        z2 = make_group("cyclic", n=2)
        l = build_extension(ExtensionSpec(klein_loop, z2, np.zeros((4, 4), int)))
        assert first_isomorphism(l, named_group("Z2^3")) is not None
        assert first_isomorphism(l, named_group("Z8")) is None

    def test_map_is_isomorphism(self, klein_loop, z4):
        spec = ExtensionSpec(klein_loop, z4, np.zeros((4, 4), int))
        l1 = build_extension(spec)
        l2 = direct_product(z4, klein_loop)
        phi = first_isomorphism(l1, l2)
        assert (phi[l1.table] == l2.table[np.ix_(phi, phi)]).all()
