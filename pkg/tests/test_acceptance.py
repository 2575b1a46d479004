"""One test per acceptance criterion; each prints a single pass/fail line (also echoed in the summary)."""

import argparse
import time
from collections import Counter
from math import gcd

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from lierack.braiding import lemma_uno_decide
from lierack.cli import survey
from lierack.grp import Matrix, conjugacy_classes, enumerate_group, make_group
from lierack.jordan import batch_orders, jordan_partition, p_decompose_batch
from lierack.lie import build_root_system, center_table, generated_torus_group, is_central, is_minus_one
from lierack.rack import ClassRack, check_type_C, check_type_D, check_type_F, verify_certificate
from lierack.witness import run_all, run_witness


def report(n, ok, seconds, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def survey_args():
    return argparse.Namespace(enum_cap=10**6, orbit_cap=10**6, pair_budget=None, seed=0)


def test_criterion_1_braiding_table():
    t = time.perf_counter()
    res = lemma_uno_decide()
    dt = time.perf_counter() - t
    ok = (res["matches_printed_table"] and all(v["holds"] for v in res["products"].values())
          and res["infinite"] == res["total"] == 27 and dt < 1)
    report(1, ok, dt, f"{res['infinite']}/{res['total']} infinite")


def test_criterion_2_fast_witnesses():
    t = time.perf_counter()
    reps = run_all("fast")
    dt = time.perf_counter() - t
    bad = [f"{r.id}: {r.failed}" for r in reps if not r.ok]
    report(2, not bad and dt < 30, dt, f"{len(reps) - len(bad)}/{len(reps)} witnesses pass {bad or ''}")


def test_criterion_3_mixed_classes_certified():
    t = time.perf_counter()
    lines = []
    ok = True
    for spec in ("sp4:3/z", "su3:3/z"):
        rep = survey(spec, True, survey_args())
        mixed = [c for c in rep["classes"] if c["kind"] == "mixed"]
        good = [c for c in mixed if c.get("certificate") and c["certificate"]["kind"] in "CDF"
                and verify_certificate(c["certificate"]).ok]
        ok &= bool(mixed) and len(good) == len(mixed) and rep["size_sum_ok"]
        lines.append(f"{spec} {len(good)}/{len(mixed)}")
    dt = time.perf_counter() - t
    report(3, ok and dt < 600, dt, "certified mixed classes: " + ", ".join(lines))


def test_criterion_4_su32_no_mixed():
    t = time.perf_counter()
    rep = survey("su3:2", False, survey_args())
    dt = time.perf_counter() - t
    mixed = rep["kind_counts"].get("mixed", 0)
    report(4, mixed == 0 and rep["size_sum_ok"] and dt < 10, dt, f"{mixed} mixed classes")


def test_criterion_5_kthulhu_negatives():
    t = time.perf_counter()
    found = []
    for q in (7, 9):
        G = make_group(f"sl2:{q}/z")
        O = ClassRack(G, G.matrix([[1, 1], [0, 1]]))
        d, f, c = check_type_D(O), check_type_F(O), check_type_C(O)
        if d.certificate or d.flag != "complete":
            found.append(f"PSL2({q}) D {d.flag}")
        if f.certificate or f.flag != "complete":
            found.append(f"PSL2({q}) F {f.flag}")
        if c.certificate or c.flag != "heuristic-negative":
            found.append(f"PSL2({q}) C certificate" if c.certificate else f"PSL2({q}) C {c.flag}")
    dt = time.perf_counter() - t
    report(5, not found and dt < 120, dt, "; ".join(found) or "no D, F or C witnesses")


def _table_entries():
    for q in (2, 3, 4, 5, 7, 9):
        if q % 2:
            for kind, ranks in (("B", range(2, 9)), ("C", range(3, 9)), ("D", range(4, 9)),
                                ("E", (6, 7)), ("2D", range(4, 9))):
                for r in ranks:
                    yield kind, r, q
        for r in range(1, 9):
            yield "2A", r, q
        if q % 3 == 2:
            yield "2E", 6, q
        yield "3D", 4, q


def test_criterion_6_lie_data():
    t = time.perf_counter()
    minus_one = {("A", 1), ("E", 7), ("E", 8), ("F", 4), ("G", 2)}
    types = [("A", r) for r in range(1, 9)] + [("B", r) for r in range(2, 9)] + \
        [("C", r) for r in range(3, 9)] + [("D", r) for r in range(4, 9)] + \
        [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    bad = []
    for kind, r in types:
        want = (kind, r) in minus_one or kind in "BC" or (kind == "D" and r % 2 == 0)
        if is_minus_one(build_root_system(kind, r)) != want:
            bad.append(f"w0 {kind}{r}")
    n = 0
    for kind, r, q in _table_entries():
        e = center_table(kind, r, q)
        rs = build_root_system(kind.lstrip("23"), r)
        size = len(generated_torus_group(e.generators, e.generators[0].field, r)) if e.generators else 1
        if not all(is_central(rs, z) for z in e.generators) or size != e.order:
            bad.append(f"center {kind}{r} q={q}")
        n += 1
    dt = time.perf_counter() - t
    report(6, not bad and dt < 10, dt, f"{len(types)} types, {n} center entries {bad or ''}")


def _sl_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q ** i - 1
    return o


def _su_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q ** i - (-1) ** i
    return o


def _sp_order(m, q):
    o = q ** (m * m)
    for i in range(1, m + 1):
        o *= q ** (2 * i) - 1
    return o


def test_criterion_7_group_orders():
    t = time.perf_counter()
    cases = [(f"sl2:{q}", _sl_order(2, q)) for q in (2, 3, 4, 5, 7, 8, 9)]
    cases += [(f"su3:{q}", _su_order(3, q)) for q in (2, 3, 4)]
    cases += [("su4:2", _su_order(4, 2)), ("sp4:3", _sp_order(2, 3))]
    bad = [spec for spec, want in cases if len(enumerate_group(make_group(spec), cap=10**6)) != want]
    a, b = make_group("sp4:3/z"), make_group("su4:2/z")
    sa = Counter(c.size for c in conjugacy_classes(a))
    sb = Counter(c.size for c in conjugacy_classes(b))
    same = sum(sa.values()) > 0 and sa == sb and sum(k * v for k, v in sa.items()) == 25920
    dt = time.perf_counter() - t
    report(7, not bad and same and dt < 300, dt,
           f"{len(cases) - len(bad)}/{len(cases)} orders, class-size multisets {'equal' if same else 'differ'}")


def _decomposition_laws(spec):
    G = make_group(spec)
    sp = G.space
    p = G.field.p
    X = enumerate_group(G, cap=10**6).matrices()
    S, U, orders = p_decompose_batch(sp, X)
    I = np.broadcast_to(Matrix.identity(G.field, sp.n).a, X.shape)
    keys = sp.keys
    ok = np.array_equal(keys(sp.mul(S, U)), keys(X))
    ok &= np.array_equal(keys(sp.mul(S, U)), keys(sp.mul(U, S)))
    so, uo = batch_orders(sp, S), batch_orders(sp, U)
    ok &= bool(np.all(so % p != 0))
    ok &= bool(np.all(uo == p ** np.round(np.log(uo) / np.log(p)).astype(np.int64)))
    # uniqueness: the parts of a semisimple (unipotent) element are itself and 1
    S2, U2, _ = p_decompose_batch(sp, S)
    S3, U3, _ = p_decompose_batch(sp, U)
    ok &= np.array_equal(keys(S2), keys(S)) and np.array_equal(keys(U2), keys(I))
    ok &= np.array_equal(keys(S3), keys(I)) and np.array_equal(keys(U3), keys(U))
    return bool(ok), len(X)


def test_criterion_8_decomposition_laws():
    t = time.perf_counter()
    res = {spec: _decomposition_laws(spec) for spec in ("sp4:3", "su3:3")}
    parts = {}
    for n in (3, 4, 5):
        F = make_group(f"sl{n}:3").field
        parts[n] = jordan_partition(Matrix.identity(F, n) + Matrix.unit(F, n, 1, n, 1))
    ok_parts = all(parts[n] == (2,) + (1,) * (n - 2) for n in parts)
    dt = time.perf_counter() - t
    ok = all(v[0] for v in res.values()) and ok_parts and dt < 120
    report(8, ok, dt, ", ".join(f"{s}: {n} elements" for s, (_, n) in res.items()) + f", partitions {parts}")


@pytest.mark.slow
def test_criterion_9_su43_literal_non_conjugacy():
    t = time.perf_counter()
    rep = run_witness("W-SU4", slow=True, abort=False)
    dt = time.perf_counter() - t
    slow = [r for r in rep.results if r.tag == "slow"]
    ok = bool(slow) and all(r.passed for r in slow) and dt < 1800
    detail = "; ".join(f"{r.claim}: {r.values.get('per_z')}" for r in slow if not r.passed)
    report(9, ok, dt, detail)
