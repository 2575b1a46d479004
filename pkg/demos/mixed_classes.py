"""Walk through the mixed classes of PSp4(3): rack size, certificate kind, replay."""

from lierack.grp import conjugacy_classes, make_group
from lierack.jordan import element_kind, p_decompose
from lierack.rack import ClassRack, kthulhu_scan, verify_certificate

G = make_group("sp4:3/z")
classes = conjugacy_classes(G)
print(f"{G.spec}: {sum(c.size for c in classes)} elements, {len(classes)} classes")

for c in classes:
    if element_kind(c.rep, G) != "mixed":
        continue
    d = p_decompose(c.rep)
    v = kthulhu_scan(ClassRack(G, c.rep))
    cert = v.certificate
    ok = verify_certificate(cert).ok
    print(f"size {c.size:5d}  semisimple order {d.semisimple.order():2d}  "
          f"type {cert.kind}  orbits {cert.checks.get('orbit_sizes')}  replay {'ok' if ok else 'FAILED'}")
