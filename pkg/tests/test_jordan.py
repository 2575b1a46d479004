import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lierack.errors import NotUnipotent
from lierack.gf import make_field
from lierack.grp import Matrix, enumerate_group, make_group
from lierack.jordan import (decomposition_exponents, element_kind, format_partition, jordan_partition,
                            p_decompose, p_decompose_batch, split_order)


def test_split_order():
    assert split_order(360, 3) == (9, 40)
    assert split_order(7, 7) == (7, 1)


@pytest.mark.parametrize("n,p", [(12, 2), (12, 3), (9, 3), (10, 5), (1, 2), (7, 3)])
def test_decomposition_exponents(n, p):
    es, eu = decomposition_exponents(n, p)
    pa, m = split_order(n, p)
    # g_s = g^es has order m, g_u = g^eu has order pa
    assert es % pa == 0 % pa and es % m == 1 % m
    assert eu % pa == 1 % pa and eu % m == 0 % m


def test_unipotent_and_semisimple_inputs():
    F = make_field(3)
    u = Matrix.from_rows(F, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    d = p_decompose(u)
    assert d.semisimple.is_identity() and d.unipotent == u
    t = Matrix.diag(F, [2, 2, 1])
    d = p_decompose(t)
    assert d.semisimple == t and d.unipotent.is_identity()


def test_su3_mixed_element_decomposes_as_printed():
    G = make_group("su3:3")
    F = G.field
    lam = next(l for l in F.units() if l ** 4 == 1 and l ** 3 != 1 and G.contains(Matrix.diag(F, [l, l ** -2, l])))
    t = Matrix.diag(F, [lam, lam ** -2, lam])
    c = next(c for c in F.units() if c + c ** 3 == 0)  # I + c e13 is unitary for trace-zero c
    u = Matrix.identity(F, 3) + Matrix.unit(F, 3, 1, 3, c)
    x = t @ u
    assert G.contains(x)
    d = p_decompose(x)
    assert d.semisimple == t
    assert d.unipotent == u
    assert element_kind(x, G) == "mixed"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_transvection_partition(n):
    F = make_field(3)
    u = Matrix.identity(F, n) + Matrix.unit(F, n, 1, n)
    assert jordan_partition(u) == (2,) + (1,) * (n - 2)
    assert format_partition(list(jordan_partition(u))) == f"(2,1^{n - 2})" if n > 3 else "(2,1)"


def test_partition_edge_cases():
    F = make_field(2)
    assert jordan_partition(Matrix.identity(F, 4)) == (1, 1, 1, 1)
    regular = Matrix.from_rows(F, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]) @ Matrix.from_rows(F, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    assert jordan_partition(regular) == (3,)
    with pytest.raises(NotUnipotent):
        jordan_partition(Matrix.diag(make_field(3), [2, 2]))


def test_su32_has_no_mixed_elements():
    G = make_group("su3:2")
    E = enumerate_group(G)
    assert all(element_kind(Matrix(G.space, a), G) != "mixed" for a in E.matrices())


@pytest.mark.parametrize("spec", ["sp4:3", "su3:3"])
def test_batch_decomposition_matches_scalar(spec):
    G = make_group(spec)
    X = enumerate_group(G).matrices()
    rng = np.random.default_rng(0)
    idx = rng.choice(len(X), 200, replace=False)
    S, U, orders = p_decompose_batch(G.space, X[idx])
    for k, i in enumerate(idx):
        d = p_decompose(Matrix(G.space, X[i]))
        assert np.array_equal(S[k], d.semisimple.a) and np.array_equal(U[k], d.unipotent.a)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["sp4:3", "su3:3", "sl3:4", "sp4:5", "su4:2"]), st.integers(0, 10_000))
def test_decomposition_invariants(spec, seed):
    G = make_group(spec)
    rng = random.Random(seed)
    g = G.identity()
    for _ in range(rng.randint(1, 25)):
        g = g @ rng.choice(G.generators)
    d = p_decompose(g)
    s, u, p = d.semisimple, d.unipotent, G.field.p
    assert s @ u == g and s.commutes(u)
    assert s.order() % p != 0
    o = u.order()
    while o % p == 0:
        o //= p
    assert o == 1
    assert G.contains(s) and G.contains(u)
