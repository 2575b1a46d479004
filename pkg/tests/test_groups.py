import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lierack.errors import CapExceeded, UnsupportedSpec
from lierack.gf import field_of_order
from lierack.grp import (GroupSpec, Matrix, centralizer, conj_orbit, conjugacy_classes, enumerate_group,
                         is_conjugate, make_group, subgroup)
from lierack.jordan import element_kind, jordan_partition, p_decompose


def _brute_sl2(p):
    return [(a, b, c, d) for a, b, c, d in itertools.product(range(p), repeat=4) if (a * d - b * c) % p == 1]


def test_spec_parsing():
    s = GroupSpec.parse("su3:4/z")
    assert (s.family, s.n, s.q, s.mod_center) == ("SU", 3, 4, True)
    assert str(s) == "su3:4/z"
    with pytest.raises(UnsupportedSpec):
        GroupSpec.parse("xx3:4")


@pytest.mark.parametrize("spec,order", [("sl2:2", 6), ("sl2:3", 24), ("su3:2", 216), ("sl2:5", 120)])
def test_small_orders(spec, order):
    G = make_group(spec)
    assert G.spec.order_formula() == order
    assert len(enumerate_group(G)) == order


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_group(make_group("sp4:3"), cap=1000)


def test_generators_are_members():
    for spec in ("sl3:3", "sp4:5", "su3:3", "su4:2", "sp6:3"):
        G = make_group(spec)
        assert all(G.contains(g) for g in G.generators)


def test_central_quotient_rep():
    G = make_group("sp4:3/z")
    x = G.matrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]])
    assert G.rep(x) == G.rep(-x)
    assert G.rep(G.identity()) == G.identity()


def test_transvection_class_in_sl27():
    p = 7
    els = _brute_sl2(p)
    x = (1, 1, 0, 1)
    def mul(a, b):
        return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)
    cent = sum(1 for g in els if mul(g, x) == mul(x, g))
    G = make_group("sl2:7")
    O = conj_orbit(G.generators, G.matrix([[1, 1], [0, 1]]))
    assert len(O) == len(els) // cent == 24


def test_self_conjugation_orbit():
    G = make_group("sl2:5")
    x = G.matrix([[1, 1], [0, 1]])
    assert len(conj_orbit([x], x)) == 1


@pytest.mark.parametrize("spec", ["sl2:7", "su3:2", "sp4:3", "sp4:3/z", "su3:3/z"])
def test_class_equation(spec):
    G = make_group(spec)
    classes = conjugacy_classes(G)
    assert sum(c.size for c in classes) == G.order_bound
    assert all(G.order_bound % c.size == 0 for c in classes)
    assert [(c.size, c.rep.key) for c in classes] == sorted((c.size, c.rep.key) for c in classes)


def test_orbit_stabilizer_sp43():
    G = make_group("sp4:3")
    for c in conjugacy_classes(G):
        assert c.size * centralizer(G, c.rep).order == G.order_bound


def test_su32_semisimple_regular():
    G = make_group("su3:2")
    for c in conjugacy_classes(G):
        if element_kind(c.rep, G) == "semisimple":
            C = centralizer(G, c.rep)
            assert C.order == 9 and C.is_abelian()


@pytest.mark.parametrize("spec", ["su3:2", "su4:2"])
def test_single_transvection_class(spec):
    G = make_group(spec)
    n = G.n
    count = 0
    for c in conjugacy_classes(G):
        d = p_decompose(c.rep)
        if d.semisimple.is_identity() and not c.rep.is_identity():
            count += jordan_partition(c.rep) == (2,) + (1,) * (n - 2)
    assert count == 1


def test_centralizer_of_central_is_everything():
    G = make_group("sl2:5")
    assert centralizer(G, -G.identity()).order == 120


def test_block_subgroup_in_centralizer_sp43():
    G = make_group("sp4:3")
    M = G.matrix
    g0 = M([[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    def g(a, b, c):
        return M([[1, 0, a, b], [0, 1, c, a], [0, 0, 1, 0], [0, 0, 0, 1]])
    H = subgroup(G, [g(1, 0, 0), g(0, 1, 0), g(0, 0, 1)])
    C = centralizer(G, g0)
    assert H.order == 27 and H.is_abelian()
    assert all(C.contains(h) for h in H.elements)


def test_is_conjugate_label_pair_sl25():
    G = make_group("sl2:5")
    a = G.matrix([[1, 1], [0, 1]])
    sigma = G.matrix([[0, 1], [-1, 0]])
    b = sigma.conj(a)
    assert is_conjugate(G, a, b)
    assert not is_conjugate(G, a, G.matrix([[1, 2], [0, 1]]))


def test_product_group_blocks():
    P = make_group("sl2:3*sl2:3")
    G = make_group("sl2:3")
    x, y = G.generators[0], G.generators[1]
    m = P.block_diag([x, y])
    assert P.blocks(m) == [x, y]
    assert P.contains(m)


def _random_elements(spec, k, seed):
    G = make_group(spec)
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        w = G.identity()
        for _ in range(rng.randint(1, 30)):
            w = w @ rng.choice(G.generators)
        out.append(w)
    return G, out


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["sp4:3", "su3:3", "sl3:4", "sp4:5"]), st.integers(0, 10_000))
def test_group_closure_properties(spec, seed):
    G, (a, b) = _random_elements(spec, 2, seed)
    assert G.contains(a @ b) and G.contains(a.inv())
    assert (a @ b).inv() == b.inv() @ a.inv()
    assert a.conj(b).order() == b.order()
    assert a.conj(b).det() == b.det()
