import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import surfep as s
from surfep.errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotSplit,
    NotSurjective,
)
from surfep.groups import automorphism_list, make_hom


def full_subgroup(group):
    return s.subgroup_closure(group, list(group.elements()))


class TestMakeGroup:
    def test_trivial(self):
        g = s.make_group([[0]])
        assert g.order == 1 and g.identity == 0

    def test_c2_self_inverse(self):
        g = s.make_group([[0, 1], [1, 0]])
        assert g.inv == (0, 1)

    def test_s3_from_permutations(self):
        # build the composition table from the 3-element permutations and
        # check the resulting group is closed of order 6
        perms = list(itertools.permutations(range(3)))
        index = {p: i for i, p in enumerate(perms)}
        table = [
            [index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms
        ]
        g = s.make_group(table)
        assert g.order == 6
        assert {g.mul[a][b] for a in range(6) for b in range(6)} == set(range(6))

    def test_not_associative_names_witness(self):
        # a "subtraction mod 3" table: has a right identity only
        table = [[(a - b) % 3 for b in range(3)] for a in range(3)]
        with pytest.raises((NotAssociative, NoIdentity)):
            s.make_group(table)

    def test_no_identity(self):
        # both rows read as the identity row but neither column does
        table = [[0, 1], [0, 1]]
        with pytest.raises(NoIdentity):
            s.make_group(table)

    def test_no_inverse(self):
        # constant rows: 0 is a left zero, no identity either way
        with pytest.raises((NoIdentity, NoInverse, NotAssociative)):
            s.make_group([[0, 0], [0, 1]])


class TestDirectProduct:
    def test_c2_c2_is_v4(self):
        c2 = s.cyclic_group(2)
        dp = s.direct_product(c2, c2)
        assert dp.group.order == 4
        involutions = [
            a for a in dp.group.elements()
            if a != dp.group.identity and dp.group.mul[a][a] == dp.group.identity
        ]
        assert len(involutions) == 3

    def test_trivial_times_s3(self, cat):
        dp = s.direct_product(s.trivial_group(), cat["S3"])
        assert dp.group.mul == cat["S3"].mul

    def test_c2_c3_element_orders(self):
        dp = s.direct_product(s.cyclic_group(2), s.cyclic_group(3))
        orders = [dp.group.element_order(a) for a in dp.group.elements()]
        assert all(o in (1, 2, 3, 6) for o in orders)
        assert 6 in orders
        assert all(
            dp.group.power(a, 6) == dp.group.identity for a in dp.group.elements()
        )


class TestSemidirectProduct:
    def test_trivial_action_gives_direct_product(self):
        c2 = s.cyclic_group(2)
        sd = s.semidirect_product(c2, c2, s.trivial_action(c2, c2))
        assert sd.group.order == 4
        assert all(
            sd.group.mul[a][b] == sd.group.mul[b][a]
            for a in range(4) for b in range(4)
        )
        assert sd.alpha.map == (0, 1, 0, 1)
        assert sd.gamma.map == (0, 1)

    def test_inversion_action_gives_s3(self):
        c3, c2 = s.cyclic_group(3), s.cyclic_group(2)
        sd = s.semidirect_product(c3, c2, s.inversion_action(c2, c3))
        assert sd.group.order == 6
        witness = any(
            sd.group.mul[a][b] != sd.group.mul[b][a]
            for a in range(6) for b in range(6)
        )
        assert witness

    def test_trivial_kernel(self, cat):
        triv = s.trivial_group()
        sd = s.semidirect_product(triv, cat["S3"], s.trivial_action(cat["S3"], triv))
        assert sd.group.order == 6
        assert sd.gamma.is_surjective

    def test_kernel_and_section_intersect_trivially(self, cat):
        c4, c2 = s.cyclic_group(4), s.cyclic_group(2)
        sd = s.semidirect_product(c4, c2, s.inversion_action(c2, c4))
        ker = s.kernel(sd.alpha)
        assert set(ker.members) == set(sd.embed_k.map)
        overlap = set(ker.members) & set(sd.gamma.map)
        assert overlap == {sd.group.identity}


class TestSubgroupClosure:
    def test_empty_seeds(self, cat):
        assert s.subgroup_closure(cat["S3"], []).members == (cat["S3"].identity,)

    def test_s3_generated_by_transposition_and_cycle(self, cat):
        s3 = cat["S3"]
        transposition = next(a for a in s3.elements() if s3.element_order(a) == 2)
        cycle = next(a for a in s3.elements() if s3.element_order(a) == 3)
        assert s.subgroup_closure(s3, [transposition, cycle]).order == 6

    def test_v4_involution(self, cat):
        assert s.subgroup_closure(cat["V4"], [1]).order == 2

    @given(st.integers(0, 5), st.integers(0, 5))
    def test_idempotent(self, a, b):
        s3 = s.symmetric_group_3()
        first = s.subgroup_closure(s3, [a, b])
        again = s.subgroup_closure(s3, list(first.members))
        assert first.members == again.members


class TestKernelImage:
    def test_identity_hom(self, cat):
        h = s.make_hom(cat["S3"], cat["S3"], list(range(6)))
        assert s.kernel(h).is_trivial
        assert s.image(h).order == 6

    def test_v4_projection(self):
        c2 = s.cyclic_group(2)
        dp = s.direct_product(c2, c2)
        assert s.kernel(dp.proj1).order == 2
        assert s.image(dp.proj1).order == 2

    def test_c6_reduction_kernel(self):
        c6, c2 = s.cyclic_group(6), s.cyclic_group(2)
        h = s.make_hom(c6, c2, [a % 2 for a in range(6)])
        ker = s.kernel(h)
        assert ker.members == (0, 2, 4)


class TestFindSection:
    def test_identity_map(self, cat):
        h = s.make_hom(cat["S3"], cat["S3"], list(range(6)))
        assert s.find_section(h).map == tuple(range(6))

    def test_v4_projection_section(self):
        c2 = s.cyclic_group(2)
        dp = s.direct_product(c2, c2)
        gamma = s.find_section(dp.proj2)
        assert all(dp.proj2.map[gamma.map[b]] == b for b in range(2))
        # lexicographically first: identity goes to 0, generator to element 1
        assert gamma.map == (0, 1)

    def test_c4_to_c2_not_split(self):
        c4, c2 = s.cyclic_group(4), s.cyclic_group(2)
        h = s.make_hom(c4, c2, [a % 2 for a in range(4)])
        with pytest.raises(NotSplit):
            s.find_section(h)

    def test_not_surjective(self):
        c2, c4 = s.cyclic_group(2), s.cyclic_group(4)
        h = s.make_hom(c2, c4, [0, 2])
        with pytest.raises(NotSurjective):
            s.find_section(h)

    def test_section_property_elementwise(self, cat):
        c3, c2 = s.cyclic_group(3), s.cyclic_group(2)
        sd = s.semidirect_product(c3, c2, s.inversion_action(c2, c3))
        gamma = s.find_section(sd.alpha)
        assert all(sd.alpha.map[gamma.map[b]] == b for b in c2.elements())


class TestMinimalGenerators:
    def test_trivial(self, cat):
        sub = s.subgroup_closure(cat["S3"], [])
        assert s.minimal_generator_count(sub) == (0, ())

    def test_c6_is_cyclic(self, cat):
        count, witness = s.minimal_generator_count(full_subgroup(cat["C6"]))
        assert count == 1
        assert s.subgroup_closure(cat["C6"], list(witness)).order == 6

    @pytest.mark.parametrize("name", ["V4", "S3"])
    def test_rank_two(self, cat, name):
        count, witness = s.minimal_generator_count(full_subgroup(cat[name]))
        assert count == 2
        closed = s.subgroup_closure(cat[name], list(witness))
        assert closed.order == cat[name].order

    def test_witness_generates_exactly(self, cat):
        sub = s.subgroup_closure(cat["D4"], [1])
        count, witness = s.minimal_generator_count(sub)
        assert s.subgroup_closure(cat["D4"], list(witness)).members == sub.members
        assert (count == 0) == sub.is_trivial


class TestGroupProperties:
    @settings(max_examples=60)
    @given(st.sampled_from(["C2", "C4", "V4", "C6", "S3", "D4", "Q8"]),
           st.randoms(use_true_random=False))
    def test_axioms_on_catalog(self, name, rnd):
        g = s.catalog()[name]
        for _ in range(10):
            a, b, c = (rnd.randrange(g.order) for _ in range(3))
            assert g.mul[g.mul[a][b]][c] == g.mul[a][g.mul[b][c]]
            assert g.mul[a][g.inv[a]] == g.identity
            assert g.mul[g.inv[a]][a] == g.identity

    def test_automorphisms_of_v4(self, cat):
        assert len(automorphism_list(cat["V4"])) == 6

    def test_automorphisms_of_c4(self):
        assert len(automorphism_list(s.cyclic_group(4))) == 2

    def test_hom_validation_catches_bad_map(self, cat):
        c4 = s.cyclic_group(4)
        with pytest.raises(Exception):
            make_hom(c4, s.cyclic_group(2), [0, 1, 1, 0])

    def test_permutation_group_first_discovery_order(self):
        grp, elems = s.group_from_permutations([(1, 2, 0)])
        assert grp.order == 3
        assert elems[0] == (0, 1, 2)

    def test_subgroup_as_group_roundtrip(self, cat):
        s3 = cat["S3"]
        cycle = next(a for a in s3.elements() if s3.element_order(a) == 3)
        sub = s.subgroup_closure(s3, [cycle])
        grp, incl = sub.as_group()
        assert grp.order == 3
        assert all(incl.map[i] in sub.members for i in grp.elements())
