"""
Command-line front end: class surveys, single-class verdicts, the witness
catalog, the braiding case analysis, Lie data lookups and certificate replay.

Exit codes: 0 success, 1 a claim or verification failed, 2 usage error.
Group specs look like ``sp4:3``, ``su3:4/z`` (``/z``: modulo the center).
"""

import argparse
import json
import sys
import time

from . import __version__
from .braiding import lemma_uno_decide
from .errors import ClaimFailed, LieRackError, UnknownWitness
from .grp import ENUM_CAP, ORBIT_CAP, Matrix, conjugacy_classes, make_group
from .jordan import element_kind, p_decompose, unipotent_label
from .lie import build_root_system, center_table, generated_torus_group, is_central, is_minus_one, longest_element
from .rack import ClassRack, kthulhu_scan, verify_certificate
from .witness import run_all, run_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj, out=None):
    text = json.dumps(obj, indent=1, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config(args) -> dict:
    return {"enum_cap": args.enum_cap, "orbit_cap": args.orbit_cap,
            "pair_budget": args.pair_budget, "seed": args.seed, "version": __version__}


# --- survey / classify -------------------------------------------------------------

def class_entry(G, rep: Matrix, size: int, scan: bool, args) -> dict:
    kind = element_kind(rep, G)
    entry = {"representative": rep.a.tolist(), "size": size, "kind": kind}
    if kind == "unipotent":
        entry["label"] = unipotent_label(p_decompose(rep).unipotent, G.spec.family)
    if scan:
        O = ClassRack(G, rep, args.orbit_cap)
        v = kthulhu_scan(O, args.pair_budget, args.seed)
        entry.update(v.to_json())
        entry["verified"] = verify_certificate(v.certificate).ok if v.certificate else None
    return entry


def survey(spec: str, mixed_only: bool, args) -> dict:
    G = make_group(spec)
    classes = conjugacy_classes(G, args.enum_cap)
    total = sum(c.size for c in classes)
    rows = []
    for c in classes:  # already sorted by (size, canonical rep)
        kind = element_kind(c.rep, G)
        if mixed_only and kind != "mixed":
            continue
        rows.append(class_entry(G, c.rep, c.size, kind == "mixed", args))
    counts = {}
    for c in classes:
        k = element_kind(c.rep, G)
        counts[k] = counts.get(k, 0) + 1
    return {"group": str(G.spec), "config": _config(args), "field_order": G.field.q, "order": G.order_bound,
            "class_count": len(classes), "kind_counts": dict(sorted(counts.items())),
            "size_sum": total, "size_sum_ok": total == G.order_bound,
            "mixed_certified": all(r.get("verified") for r in rows if r["kind"] == "mixed"),
            "classes": rows}


def _load_matrix(path, field) -> Matrix:
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, list):
        return Matrix.from_rows(field, obj)
    return Matrix.from_json(obj, field)


def cmd_survey(args):
    t = time.perf_counter()
    rep = survey(args.group, args.mixed_only, args)
    if args.timing:
        rep["seconds"] = round(time.perf_counter() - t, 3)
    _dump(rep, args.out)
    ok = rep["size_sum_ok"] and rep["mixed_certified"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args):
    G = make_group(args.group)
    x = _load_matrix(args.rep, G.field)
    if not G.contains(x):
        raise UsageError(f"representative is not in {G.spec}")
    x = G.rep(x)
    O = ClassRack(G, x, args.orbit_cap)
    entry = class_entry(G, x, len(O), True, args)
    entry.update(group=str(G.spec), config=_config(args), field_order=G.field.q)
    _dump(entry, args.out)
    return EXIT_OK if entry["verified"] is not False else EXIT_FAIL


# --- witnesses --------------------------------------------------------------------------

def cmd_witness(args):
    if args.all == bool(args.id):
        raise UsageError("give a witness id or --all")
    if args.id:
        try:
            rep = run_witness(args.id, slow=args.slow, abort=True)
        except ClaimFailed as err:
            print(f"FAILED {err}", file=sys.stderr)
            return EXIT_FAIL
        reports = [rep]
    else:
        reports = run_all(args.filter or ("all" if args.slow else "fast"))
    lines = [line for r in reports for line in r.json_lines()]
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + ("\n" if text else ""))
    elif text:
        print(text)
    for r in reports:
        print(f"{r.id}: {'pass' if r.ok else 'FAIL ' + '; '.join(r.failed)}", file=sys.stderr)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# --- braiding, lie, verify ---------------------------------------------------------------

def cmd_braiding(args):
    res = lemma_uno_decide()
    _dump(res, args.out)
    print(f"infinite: {res['infinite']}/{res['total']}", file=sys.stderr)
    return EXIT_OK if res["ok"] else EXIT_FAIL


def cmd_lie(args):
    if args.what == "w0":
        rs = build_root_system(args.type, args.rank)
        w0 = longest_element(rs)
        _dump({"type": f"{args.type}{args.rank}", "w0": list(w0.letters), "length": len(w0),
               "positive_roots": rs.n_pos, "is_minus_one": is_minus_one(rs)})
        return EXIT_OK
    if args.q is None:
        raise UsageError("lie centers needs --q")
    twisted = args.type[0] in "23"
    letter = args.type[1:] if twisted else args.type
    entry = center_table(args.type, args.rank, args.q)
    rs = build_root_system(letter, args.rank)
    central = [is_central(rs, t) for t in entry.generators]
    field = entry.generators[0].field if entry.generators else None
    size = len(generated_torus_group(entry.generators, field, args.rank)) if field else 1
    out = {"type": f"{args.type}{args.rank}", "q": args.q, "label": entry.label, "order": entry.order,
           "generators": [[x.code for x in t.exponents] for t in entry.generators],
           "generators_central": central, "generated_order": size}
    _dump(out)
    return EXIT_OK if all(central) and size == entry.order else EXIT_FAIL


def cmd_verify(args):
    try:
        with open(args.certificate) as fh:
            obj = json.load(fh)
        rep = verify_certificate(obj)
    except (LieRackError, KeyError, ValueError, TypeError, IndexError) as err:
        print(f"verify: certificate could not be read: {err}", file=sys.stderr)
        _dump({"ok": False, "failed": ["parse"], "error": str(err)})
        return EXIT_FAIL
    _dump({"ok": rep.ok, "failed": rep.failed,
           "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in rep.checks]})
    if not rep.ok:
        print("verify: failed " + ", ".join(rep.failed), file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


# --- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--enum-cap", type=int, default=ENUM_CAP)
    common.add_argument("--orbit-cap", type=int, default=ORBIT_CAP)
    common.add_argument("--pair-budget", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    p = argparse.ArgumentParser(prog="lierack", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("survey", parents=[common], help="classify every conjugacy class of a group")
    s.add_argument("--group", required=True, help="e.g. sp4:3/z")
    s.add_argument("--mixed-only", action="store_true")
    s.add_argument("--timing", action="store_true", help="add wall time (breaks byte-identical output)")
    s.set_defaults(fn=cmd_survey)

    c = sub.add_parser("classify", parents=[common], help="verdict for one class")
    c.add_argument("--group", required=True)
    c.add_argument("--rep", required=True, help="JSON matrix: rows of ints or a saved matrix object")
    c.set_defaults(fn=cmd_classify)

    w = sub.add_parser("witness", help="replay the witness catalog")
    wsub = w.add_subparsers(dest="action", required=True)
    wr = wsub.add_parser("run", parents=[common])
    wr.add_argument("id", nargs="?")
    wr.add_argument("--all", action="store_true")
    wr.add_argument("--slow", action="store_true", help="include the slow claims")
    wr.add_argument("--filter", choices=["fast", "slow", "all", "none"])
    wr.set_defaults(fn=cmd_witness)

    b = sub.add_parser("braiding", parents=[common], help="diagonal braiding case analysis")
    b.add_argument("which", choices=["lemma-uno"])
    b.set_defaults(fn=cmd_braiding)

    lp = sub.add_parser("lie", help="root system data")
    lp.add_argument("what", choices=["centers", "w0"])
    lp.add_argument("--type", required=True, help="A..G, or 2A / 2D / 3D / 2E for twisted centers")
    lp.add_argument("--rank", type=int, required=True)
    lp.add_argument("--q", type=int, default=None)
    lp.set_defaults(fn=cmd_lie)

    v = sub.add_parser("verify", help="replay a certificate from its JSON")
    v.add_argument("certificate")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UnknownWitness as err:
        print(f"lierack: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, LieRackError, ValueError) as err:
        print(f"lierack: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
