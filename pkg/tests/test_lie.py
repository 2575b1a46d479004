import itertools

import numpy as np
import pytest

from lierack.errors import InvalidType, NotTabulated
from lierack.gf import field_of_order
from lierack.lie import (TorusElem, WeylWord, build_root_system, cartan_matrix, center_table, eval_root,
                         generated_torus_group, is_central, is_minus_one, longest_element, phi_t,
                         reflect_torus, weyl_act_torus)

ROOT_COUNTS = {("A", n): n * (n + 1) for n in range(1, 9)}
ROOT_COUNTS.update({("B", n): 2 * n * n for n in range(2, 9)})
ROOT_COUNTS.update({("C", n): 2 * n * n for n in range(3, 9)})
ROOT_COUNTS.update({("D", n): 2 * n * (n - 1) for n in range(4, 9)})
ROOT_COUNTS.update({("G", 2): 12, ("F", 4): 48, ("E", 6): 72, ("E", 7): 126, ("E", 8): 240})

MINUS_ONE = {("A", 1), ("G", 2), ("F", 4), ("E", 7), ("E", 8)} | {("B", n) for n in range(2, 9)} | \
    {("C", n) for n in range(3, 9)} | {("D", n) for n in (4, 6, 8)}


@pytest.mark.parametrize("kind,rank", sorted(ROOT_COUNTS))
def test_root_counts_and_w0(kind, rank):
    rs = build_root_system(kind, rank)
    assert len(rs.roots) == ROOT_COUNTS[(kind, rank)]
    w0 = longest_element(rs)
    assert len(w0) == rs.n_pos  # reduced word for w0 has length |Phi+|
    assert is_minus_one(rs) == ((kind, rank) in MINUS_ONE)


def test_a2_roots():
    rs = build_root_system("A", 2)
    assert {tuple(r) for r in rs.positives} == {(1, 0), (0, 1), (1, 1)}


def test_b3_highest_short_root():
    rs = build_root_system("B", 3)
    assert len(rs.roots) == 18
    least = min(rs.form(r, r) for r in rs.positives)
    short = [r for r in rs.positives if rs.form(r, r) == least]
    assert max(short, key=sum).tolist() == [1, 1, 1]


def test_invalid_types():
    with pytest.raises(InvalidType):
        cartan_matrix("H", 3)
    with pytest.raises(InvalidType):
        cartan_matrix("E", 5)


def test_identity_torus_is_central():
    rs = build_root_system("C", 2)
    F = field_of_order(5)
    t = TorusElem.identity(F, 2)
    assert all(eval_root(rs, r, t) == 1 for r in rs.roots)
    assert phi_t(rs, t).roots == tuple(range(len(rs.roots)))


def test_b3_root_value_is_cartan_power():
    rs = build_root_system("B", 3)
    F = field_of_order(5)
    t = TorusElem.of(F, [1, 1, -1])
    a23 = int(rs.cartan[2, 1])  # <alpha_3^vee, alpha_2>
    assert eval_root(rs, [0, 1, 0], t) == F(-1) ** a23


@pytest.mark.parametrize("kind,rank,q", [(k, r, q) for q in (3, 5, 7, 9)
                                        for k, r in (("B", 2), ("B", 3), ("C", 3), ("C", 4), ("D", 4),
                                                     ("D", 5), ("D", 6), ("E", 6), ("E", 7))])
def test_split_center_generators_are_central(kind, rank, q):
    entry = center_table(kind, rank, q)
    rs = build_root_system(kind, rank)
    assert all(is_central(rs, z) for z in entry.generators)
    if entry.generators:
        F = entry.generators[0].field
        assert len(generated_torus_group(entry.generators, F, rank)) == entry.order


@pytest.mark.parametrize("rank,q", [(r, q) for r in range(1, 6) for q in (2, 3, 4, 5, 7, 9)])
def test_twisted_a_center(rank, q):
    entry = center_table("2A", rank, q)
    from math import gcd
    assert entry.order == gcd(q + 1, rank + 1)
    rs = build_root_system("A", rank)
    assert all(is_central(rs, z) for z in entry.generators)


def test_b_center_and_3d4():
    assert center_table("B", 3, 3).order == 2
    assert center_table("3D", 4, 3).order == 1
    with pytest.raises(NotTabulated):
        center_table("B", 3, 4)


def test_phi_t_sp4_two_eigenvalue_groups():
    rs = build_root_system("C", 2)
    F = field_of_order(5)
    # coroot coordinates of diag(a, b, b^-1, a^-1)-type elements with alpha_1(t) != 1
    found = {phi_t(rs, TorusElem.of(F, v)).type_name for v in itertools.product(range(1, 5), repeat=2)}
    assert "A1xA1" in found


def test_phi_t_b3_type_b2():
    rs = build_root_system("B", 3)
    F = field_of_order(5)
    xi = F.primitive_root_of_unity(4)
    t = TorusElem(F, (F(-1), F(-1), xi))
    assert phi_t(rs, t).type_name == "B2"


def test_weyl_action_identity_and_w0_inverts_c2():
    rs = build_root_system("C", 2)
    F = field_of_order(5)
    w0 = longest_element(rs)
    for v in itertools.product(range(1, 5), repeat=2):
        t = TorusElem.of(F, v)
        assert weyl_act_torus(rs, WeylWord(()), t) == t
        assert weyl_act_torus(rs, w0, t) == t.inverse()


def test_noncentral_torus_has_moving_simple_reflection():
    rs = build_root_system("C", 2)
    F = field_of_order(5)
    for v in itertools.product(range(1, 5), repeat=2):
        t = TorusElem.of(F, v)
        if is_central(rs, t):
            continue
        assert any(reflect_torus(rs, i, t) != t and eval_root(rs, rs.roots[rs.simple[i]], t) != 1
                   for i in range(2))


def test_2d_odd_rank_entry_is_a_proper_subgroup_when_q_is_3_mod_4():
    # 2D3 = 2A3: Z(SU4(3)) has gcd(4, 3^3 + 1) = 4 elements, the tabulated generator has order 2
    from lierack.grp import make_group
    assert len(make_group("su4:3").center_codes) == 4
    assert center_table("2A", 3, 3).order == 4
    assert center_table("2D", 3, 3).order == 2
