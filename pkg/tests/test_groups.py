import random
from itertools import combinations

import pytest

from pds_forge import (
    DomainError,
    GroupMismatchError,
    GroupSpec,
    build_plane,
    element_order,
    lmt_orbits,
    sylow,
)


Z2355 = GroupSpec((2, 2, 2, 5, 5, 5))


def test_canonical_form_is_isomorphism_invariant():
    assert GroupSpec((125, 8)) == GroupSpec((8, 125))
    assert GroupSpec((5, 2, 5, 2, 5, 2)) == Z2355
    assert GroupSpec((4, 2)) != GroupSpec((8,))
    assert GroupSpec.parse("2,2,2,5,5,5") == Z2355


def test_spec_rejects_non_prime_powers():
    with pytest.raises(DomainError):
        GroupSpec((6,))
    with pytest.raises(DomainError):
        GroupSpec((1, 2))


def test_compose_inverse_order_examples():
    a = Z2355.element((1, 0, 0, 0, 0, 0))
    b = Z2355.element((1, 0, 0, 1, 0, 0))
    assert (a * b).coords == (0, 0, 0, 1, 0, 0)
    e = Z2355.identity
    assert e.inverse() == e
    assert element_order(b) == 10
    assert element_order(e) == 1


def test_mismatched_groups_raise():
    with pytest.raises(GroupMismatchError):
        Z2355.identity * GroupSpec((13,)).identity


def test_index_rank_roundtrip_and_identity_zero():
    assert Z2355.identity.index == 0
    for i in (0, 1, 7, 124, 999):
        assert Z2355.index_of(Z2355.coords_of(i)) == i
    # most-significant factor first: last coordinate varies fastest
    assert Z2355.coords_of(1) == (0, 0, 0, 0, 0, 1)


def test_group_laws_on_random_triples():
    rng = random.Random(7)
    elems = list(Z2355.elements())
    for _ in range(50):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert (a ** a.order()).index == 0


def test_lmt_orbits_z13():
    part = lmt_orbits(GroupSpec((13,)))
    assert len(part.orbits) == 2
    assert part.orbits[0] == (0,)
    assert len(part.orbits[1]) == 12


def test_lmt_orbits_z2_4():
    part = lmt_orbits(GroupSpec((2, 2, 2, 2)))
    assert len(part.orbits) == 16
    assert all(len(orb) == 1 for orb in part.orbits)


def test_lmt_orbits_z5_squared_against_enumeration():
    spec = GroupSpec((5, 5))
    part = lmt_orbits(spec)
    non_id = [orb for orb in part.orbits if orb != (0,)]
    assert len(non_id) == 6 and all(len(orb) == 4 for orb in non_id)
    # independent oracle: g ~ h iff h is a coprime power of g
    from math import gcd

    for orb in non_id:
        g = orb[0]
        o = spec.order_of_idx(g)
        expected = sorted({spec.power_idx(g, s) for s in range(1, o) if gcd(s, o) == 1})
        assert list(orb) == expected


@pytest.mark.parametrize("factors", [(13,), (2, 2, 2, 2), (5, 5), (8, 9), (2, 2, 2, 5, 5, 5)])
def test_orbit_partition_properties(factors):
    spec = GroupSpec(factors)
    part = lmt_orbits(spec)
    all_members = [i for orb in part.orbits for i in orb]
    assert sorted(all_members) == list(range(spec.order))
    for orb in part.orbits:
        inv = sorted(spec.inverse_idx(i) for i in orb)
        assert inv == list(orb)
        orders = {spec.order_of_idx(i) for i in orb}
        assert len(orders) == 1


def test_sylow_examples():
    sub, emb = sylow(Z2355, 2)
    assert sub == GroupSpec((2, 2, 2))
    assert len(emb) == 8
    assert all(Z2355.order_of_idx(i) in (1, 2) for i in emb)
    sub5, _ = sylow(Z2355, 5)
    assert sub5 == GroupSpec((5, 5, 5))
    sub13, emb13 = sylow(GroupSpec((13,)), 13)
    assert sub13 == GroupSpec((13,)) and list(emb13) == list(range(13))
    with pytest.raises(DomainError):
        sylow(Z2355, 3)


@pytest.mark.parametrize("p,n", [(2, 7), (5, 31)])
def test_build_plane_counts(p, n):
    design = build_plane(p)
    assert len(design.points) == n == len(design.lines)
    assert design.incidence.sum(axis=0).tolist() == [p + 1] * n
    assert design.incidence.sum(axis=1).tolist() == [p + 1] * n
    assert all(len(pt) == p for pt in design.points)
    assert all(len(ln) == p * p for ln in design.lines)


def test_build_plane_p7_every_pair_on_one_line():
    design = build_plane(7)
    n = len(design.points)
    for i, j in combinations(range(n), 2):
        common = (design.incidence[i] & design.incidence[j]).sum()
        assert common == 1


def test_build_plane_rejects_composite():
    with pytest.raises(DomainError):
        build_plane(6)
