import itertools
import json

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lierack.braiding import (BraidingMatrix, RootOfUnity, Whitelist, braiding_from_subrack, canonical_form,
                              diagram, is_connected, lemma_uno_decide, printed_forms, product_identities,
                              sp4_3_data, subrack_forms)
from lierack.errors import WhitelistMissing

roots = st.builds(lambda e: RootOfUnity(3, e), st.integers(-10, 10))


@given(roots, roots, roots)
def test_roots_form_a_group(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * a.inverse()).is_one()
    assert a ** 3 == RootOfUnity(3, 0)


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        RootOfUnity(3, 1) * RootOfUnity(4, 1)


@pytest.fixture(scope="module", params=[1, -1])
def forms(request):
    return subrack_forms(sp4_3_data(request.param))


def test_table_matches_print(forms):
    assert np.array_equal(forms, printed_forms())
    assert all(v["holds"] for v in product_identities(forms).values())


def test_trivial_character_is_all_ones():
    Q = braiding_from_subrack(sp4_3_data(1), (0, 0, 0))
    assert all(Q[i, j].is_one() for i in range(4) for j in range(4))


def test_small_diagram_oracle():
    # zeta = (1, 2, 0): zeta1 = zeta0^2, so W is disconnected and W' = {x0, x1} has labels zeta0, zeta0, zeta0
    Q = braiding_from_subrack(sp4_3_data(1), (1, 2, 0))
    assert not is_connected(diagram(Q, [1, 2, 3]))
    assert canonical_form(diagram(Q, [0, 1])) == ((1, 1), ((0, 1, 1),))


def test_edgeless_diagram():
    Q = BraidingMatrix(np.diag([1, 2, 1]))
    D = diagram(Q)
    assert D.number_of_edges() == 0
    assert not is_connected(D)
    assert canonical_form(D) == ((1, 1, 2), ())


@given(st.lists(st.integers(0, 2), min_size=9, max_size=9), st.permutations([0, 1, 2]))
def test_canonical_form_ignores_vertex_order(entries, perm):
    E = np.array(entries).reshape(3, 3)
    Q = BraidingMatrix(E)
    P = BraidingMatrix(E[np.ix_(perm, perm)])
    assert canonical_form(diagram(Q)) == canonical_form(diagram(P))


def test_path_and_triangle_differ():
    path = nx.Graph()
    tri = nx.Graph()
    for D in (path, tri):
        for i in range(3):
            D.add_node(i, label=1)
        D.add_edge(0, 1, label=2)
        D.add_edge(1, 2, label=2)
    tri.add_edge(0, 2, label=2)
    assert canonical_form(path) != canonical_form(tri)


def test_whitelist_knows_cartan_a2():
    wl = Whitelist.load()
    D = nx.Graph()
    D.add_node(0, label=1)
    D.add_node(1, label=1)
    D.add_edge(0, 1, label=2)
    assert wl.lookup(D).startswith("A2")


def test_missing_coverage_raises(tmp_path):
    doc = json.loads(json.dumps(Whitelist.load().doc))
    doc["coverage"]["ranks"] = [2]
    p = tmp_path / "wl.json"
    p.write_text(json.dumps(doc))
    wl = Whitelist.load(p)
    with pytest.raises(WhitelistMissing):
        lemma_uno_decide(whitelist=wl)
    with pytest.raises(WhitelistMissing):
        wl.require(2, 5)


def test_decision_all_infinite():
    res = lemma_uno_decide()
    assert res["ok"] and res["infinite"] == res["total"] == 27
    assert res["diagonal_is_zeta0"]
    for row in res["tuples"]:
        if row["zeta"][0] == 0:
            assert row["reason"] == "q_ii = 1"
        elif not row["W_connected"]:
            assert row["zeta1_eq_zeta0_sq"]
    zetas = [tuple(r["zeta"]) for r in res["tuples"]]
    assert zetas == list(itertools.product(range(3), repeat=3))
