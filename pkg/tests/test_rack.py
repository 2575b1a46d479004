import copy
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lierack.errors import HypothesisFailed
from lierack.grp import Matrix, make_group
from lierack.rack import (ClassRack, CollapseCertificate, check_type_C, check_type_D, check_type_F,
                          kthulhu_scan, lemma_tecnico0, product_type_D, verify_certificate)


@pytest.fixture(scope="module")
def psl27_unipotent():
    G = make_group("sl2:7/z")
    return ClassRack(G, G.matrix([[1, 1], [0, 1]]))


@pytest.fixture(scope="module")
def psp43_transvection():
    G = make_group("sp4:3/z")
    return ClassRack(G, G.matrix([[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23), st.integers(0, 23))
def test_self_distributive(i, j, k):
    G = make_group("sl2:7/z")
    O = ClassRack(G, G.matrix([[1, 1], [0, 1]]))
    assert len(O) == 24
    assert O.op(i, O.op(j, k)) == O.op(O.op(i, j), O.op(i, k))
    assert O.op(i, i) == i
    assert sorted(O.perm(i)) == list(range(len(O)))


def test_conjugators_reach_members(psp43_transvection):
    O = psp43_transvection
    G = O.ambient
    rep = O.rep
    for i in range(len(O)):
        assert G.same_coset(O.conjugator(i).conj(rep), O.member(i))


def test_psl27_class_2_is_negative(psl27_unipotent):
    O = psl27_unipotent
    d = check_type_D(O)
    f = check_type_F(O)
    c = check_type_C(O)
    assert d.certificate is None and d.flag == "complete"
    assert f.certificate is None and f.flag == "complete"
    assert c.certificate is None and c.flag == "heuristic-negative"


def test_central_class_negative():
    G = make_group("sl2:5")
    O = ClassRack(G, -G.identity())
    v = kthulhu_scan(O)
    assert v.certificate is None
    assert v.flags["D"] == "complete" and v.flags["F"] == "complete"


def test_sp43_transvection_class_is_rack_negative(psp43_transvection):
    # the class of I + e14: no D or F witness exists, which is why a braiding argument is needed
    v = kthulhu_scan(psp43_transvection, run_all=True)
    assert v.flags["D"] == "complete" and v.flags["F"] == "complete"
    assert v.certificate is None or v.certificate.kind == "C"


def test_lemma_tecnico0_requires_distinct_parts():
    G = make_group("sp6:3/z")
    t = G.matrix(np.diag([2, 1, 1, 1, 1, 2]).tolist())
    assert lemma_tecnico0(t, t, G) is None


def test_printed_su34_pair_validates():
    G = make_group("su3:4/z")
    F = G.field
    l = next(l for l in F.units() if l ** 5 == 1 and l ** 3 != 1)
    a = next(a for a in F.units() if a ** 5 != 1)
    eta = next(e for e in F.elements() if e + e ** 4 == 1)
    r = G.matrix([[l, 0, l], [0, l ** -2, 0], [0, 0, l]])
    y = G.matrix([[a, a ** 3, eta * a ** -4], [0, a ** 3, a ** -4], [0, 0, a ** -4]])
    cert = CollapseCertificate("D", "su3:4/z", [r, y.conj(r)], [y], {}, "constructed", True)
    rep = verify_certificate(cert)
    assert rep.ok, rep.failed


def _su42_pairs():
    G = make_group("su4:2")
    M = G.matrix
    x1 = M([[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    sigma = M([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]])
    sigma2 = M([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    return G, x1, sigma.conj(x1), sigma, sigma2.conj(x1), sigma2


def test_product_type_D_su42():
    G, x1, x2, a, y2, b = _su42_pairs()
    cert = product_type_D(G, G, x1, x2, x1, y2, a, b)
    assert cert.kind == "D" and cert.checks["orbits_disjoint"]
    assert verify_certificate(cert).ok


def test_product_type_D_rejects_singleton():
    G, x1, x2, a, _, _ = _su42_pairs()
    with pytest.raises(HypothesisFailed):
        product_type_D(G, G, x1, x2, x1, x1)


@pytest.fixture(scope="module")
def psp43_certificate():
    G = make_group("sp4:3/z")
    M = G.matrix
    r = M([[1, 0, 0, 1], [0, 2, 1, 0], [0, 0, 2, 0], [0, 0, 0, 1]])
    sigma = M([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    xa1 = M([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]])
    g = xa1 @ sigma
    cert = CollapseCertificate("D", "sp4:3/z", [G.rep(r), G.rep(g.conj(r))], [g], {}, "constructed", True)
    return cert


def test_certificate_json_roundtrip(psp43_certificate):
    obj = json.loads(json.dumps(psp43_certificate.to_json()))
    back = CollapseCertificate.from_json(obj)
    assert back.witnesses == psp43_certificate.witnesses
    assert verify_certificate(obj).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 1), st.integers(0, 3), st.integers(0, 3), st.integers(1, 2))
def test_tampering_is_detected(psp43_certificate, which, i, j, delta):
    obj = psp43_certificate.to_json()
    name = ["r", "s"][which]
    bad = copy.deepcopy(obj)
    entry = bad[name]["rows"][i][j]
    entry["c"] = [(entry["c"][0] + delta) % 3]
    rep = verify_certificate(bad)
    assert not rep.ok
    assert rep.failed


def test_swapped_witness_names_check(psp43_certificate):
    obj = psp43_certificate.to_json()
    obj["s"] = obj["r"]
    rep = verify_certificate(obj)
    assert rep.failed == ["same_class[1]"]
