"""The unipotent class of PSL2(q) for q = 5, 7, 9, 11 run through the three detectors.

q = 7 comes out negative on every test.  q = 9 has a type C witness, which is shown in full.
"""

from lierack.grp import make_group
from lierack.rack import ClassRack, check_type_C, check_type_D, check_type_F

for q in (5, 7, 9, 11):
    G = make_group(f"sl2:{q}/z")
    O = ClassRack(G, G.matrix([[1, 1], [0, 1]]))
    res = {name: fn(O) for name, fn in (("D", check_type_D), ("F", check_type_F), ("C", check_type_C))}
    line = ", ".join(f"{k}: {'found' if r.certificate else r.flag}" for k, r in res.items())
    print(f"PSL2({q}) class of size {len(O)}: {line}")
    c = res["C"].certificate
    if c is not None and q == 9:
        r, s = c.witnesses[:2]
        print("  r =", r.a.tolist(), " s =", s.a.tolist(), " orbits", c.checks.get("orbit_sizes"))
