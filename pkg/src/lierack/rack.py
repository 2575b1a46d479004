"""
Conjugacy classes as racks, and searches for type C, D and F witnesses.

A ``ClassRack`` materialises a class O (of G, or of G/Z when the ambient group
is taken modulo its center) together with a conjugator t_i for every member,
t_i ▷ rep = member i.  The rack acts on itself by permutations of member
indices, so every subgroup orbit the detectors need, O_r^<r,s> and friends, is a
closure of a few index permutations.

Search is exhaustive up to conjugation: any pair (r, s) can be moved so that r is
the class representative, and s then only matters up to the centralizer of r.
We never compute C(r) itself; Schreier elements built from the conjugators give a
subgroup of it, whose orbits refine the true ones, so picking one s per orbit
still covers every pair.

Every certificate is replayed by ``verify_certificate`` from its matrices alone,
using matrix-level orbit BFS rather than the index permutations used here.
"""

import itertools
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BudgetExhausted, CapExceeded, HypothesisFailed
from .grp import ORBIT_CAP, Matrix, conj_orbit, make_group
from .jordan import p_decompose

PAIR_ORBIT_CAP = 100_000
F_EXHAUSTIVE_LIMIT = 60
SCHREIER_SAMPLE = 32


class ClassRack:
    """The conjugacy class of rep in ambient, with x ▷ y = x y x^-1."""

    def __init__(self, ambient, rep: Matrix, cap: int = ORBIT_CAP):
        self.ambient = ambient
        self.space = ambient.space
        self.canon = ambient.canonicalizer()
        self.mod_center = bool(self.canon)
        self._build(rep, cap)
        self._perms = {}
        self._gen_perms = None

    def _canon(self, X):
        return X if self.canon is None else self.canon(X)

    def _build(self, rep, cap):
        sp = self.space
        gens = [(g.a, sp.inv(g.a)) for g in self.ambient.generators]
        frontier = self._canon(np.asarray(rep.a)[None])
        conjs = sp.eye[None]
        seen = sp.keys(frontier)
        all_m, all_t = [frontier], [conjs]
        while len(frontier):
            imgs = np.concatenate([sp.conj(g, frontier, gi) for g, gi in gens])
            ts = np.concatenate([sp.mul(g, conjs) for g, _ in gens])
            imgs = self._canon(imgs)
            k, first = np.unique(sp.keys(imgs), return_index=True)
            mask = ~np.isin(k, seen, assume_unique=True)
            frontier, conjs = imgs[first[mask]], ts[first[mask]]
            seen = np.union1d(seen, k[mask])
            all_m.append(frontier)
            all_t.append(conjs)
            if len(seen) > cap:
                raise CapExceeded(f"class exceeded {cap} members")
        mats = np.concatenate(all_m)
        ts = np.concatenate(all_t)
        order = np.argsort(sp.keys(mats), kind="stable")
        self.matrices = mats[order]
        self.conjugators = ts[order]
        self.keys = sp.keys(self.matrices)
        rk = sp.keys(self._canon(np.asarray(rep.a)[None]))[0]
        self.rep_index = int(np.searchsorted(self.keys, rk))
        self.rep = Matrix(sp, self.matrices[self.rep_index])

    # --- basic rack structure -----------------------------------------------
    def __len__(self):
        return len(self.keys)

    @property
    def size(self):
        return len(self.keys)

    def member(self, i: int) -> Matrix:
        return Matrix(self.space, self.matrices[i])

    def conjugator(self, i: int) -> Matrix:
        return Matrix(self.space, self.conjugators[i])

    def index(self, x) -> int:
        a = x.a if isinstance(x, Matrix) else np.asarray(x)
        k = self.space.keys(self._canon(a[None]))[0]
        i = int(np.searchsorted(self.keys, k))
        if i >= len(self.keys) or self.keys[i] != k:
            return -1
        return i

    def __contains__(self, x) -> bool:
        return self.index(x) >= 0

    def _lookup(self, X) -> np.ndarray:
        k = self.space.keys(self._canon(X))
        idx = np.searchsorted(self.keys, k)
        idx = np.minimum(idx, len(self.keys) - 1)
        if not (self.keys[idx] == k).all():
            raise AssertionError("conjugation left the class")
        return idx

    def action(self, g) -> np.ndarray:
        """Index permutation y -> g ▷ y for a group element g."""
        a = g.a if isinstance(g, Matrix) else np.asarray(g)
        return self._lookup(self.space.conj(a, self.matrices))

    def perm(self, i: int) -> np.ndarray:
        """Left translation y -> member_i ▷ y."""
        if i not in self._perms:
            self._perms[i] = self.action(self.matrices[i])
        return self._perms[i]

    def op(self, i: int, j: int) -> int:
        return int(self.perm(i)[j])

    def commute(self, i: int, j: int) -> bool:
        """Members commute (modulo the center when the rack is a quotient class)."""
        return self.op(i, j) == j

    def is_abelian(self) -> bool:
        return all(self.commute(self.rep_index, j) for j in range(len(self)))

    # --- orbits -------------------------------------------------------------
    def orbit(self, gens, start: int, cap: int = PAIR_ORBIT_CAP) -> np.ndarray | None:
        """O_start under <members gens>, as sorted indices; None past the cap."""
        perms = [self.perm(g) for g in gens]
        seen = np.zeros(len(self), dtype=bool)
        seen[start] = True
        frontier = np.array([start])
        count = 1
        while len(frontier):
            nxt = np.unique(np.concatenate([p[frontier] for p in perms]))
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            count += len(nxt)
            if count > cap:
                return None
            frontier = nxt
        return np.flatnonzero(seen)

    def orbit_labels(self, gens) -> np.ndarray:
        """Component label of every member under <members gens>."""
        perms = [self.perm(g) for g in gens]
        return _components(len(self), perms)

    def symmetry_orbits(self) -> np.ndarray:
        """Labels of orbits of a subgroup of C(rep) acting on the class."""
        sp = self.space
        if self._gen_perms is None:
            self._gen_perms = [self.action(g) for g in self.ambient.generators]
        sample = range(min(len(self), SCHREIER_SAMPLE))
        elems = []
        for x in sample:
            tx = self.conjugators[x]
            for g, gp in zip(self.ambient.generators, self._gen_perms):
                y = int(gp[x])
                h = sp.mul(sp.mul(sp.inv(self.conjugators[y]), g.a), tx)
                elems.append(h)
        if not elems:
            return np.arange(len(self))
        H = np.stack(elems)
        keys = sp.keys(self._canon(H))
        _, first = np.unique(keys, return_index=True)
        H = H[np.sort(first)]
        perms = [self.action(h) for h in H]
        labels = _components(len(self), perms)
        rep_label = labels[self.rep_index]
        if not (labels == rep_label).sum() == 1:
            raise AssertionError("Schreier elements do not fix the representative")
        return labels


def _components(n, perms) -> np.ndarray:
    if not perms:
        return np.arange(n)
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate(perms)
    g = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(g, directed=True, connection="weak")
    return labels


def _first_per_label(labels) -> list[int]:
    _, first = np.unique(labels, return_index=True)
    return sorted(int(i) for i in first)


# --- certificates ---------------------------------------------------------------

@dataclass
class CollapseCertificate:
    kind: str  # "C", "D" or "F"
    group: str
    witnesses: list  # [r, s] or [r1, r2, r3, r4]
    conjugators: list  # conjugators[i] ▷ witnesses[0] = witnesses[i+1]
    checks: dict
    phase: str = "exhaustive"
    mod_center: bool = False

    def to_json(self) -> dict:
        out = {"kind": self.kind, "group": self.group}
        names = ["r", "s"] if len(self.witnesses) == 2 else ["r1", "r2", "r3", "r4"]
        for name, w in zip(names, self.witnesses):
            out[name] = w.to_json()
        out["conjugators"] = {name: g.to_json() for name, g in zip(names[1:], self.conjugators)}
        if self.kind == "C":
            out["subgroup_generators"] = names
        out["checks"] = self.checks
        out["phase"] = self.phase
        out["mod_center"] = self.mod_center
        return out

    @classmethod
    def from_json(cls, obj) -> "CollapseCertificate":
        names = ["r", "s"] if "r" in obj else ["r1", "r2", "r3", "r4"]
        G = make_group(obj["group"], verify=False)
        wit = [Matrix.from_json(obj[n], G.field) for n in names]
        conj = [Matrix.from_json(obj["conjugators"][n], G.field) for n in names[1:]]
        return cls(obj["kind"], obj["group"], wit, conj, obj.get("checks", {}),
                   obj.get("phase", "exhaustive"), bool(obj.get("mod_center", False)))


@dataclass
class ScanResult:
    """Outcome of one detector: a certificate or None, with how much was searched."""

    kind: str
    certificate: CollapseCertificate | None
    complete: bool
    examined: int = 0
    abandoned: int = 0
    note: str = ""

    @property
    def flag(self) -> str:
        if self.certificate is not None:
            return "found"
        if self.kind == "C":
            return "heuristic-negative"
        return "complete" if self.complete else "partial"


def _orbit_sizes_ok(a, b):
    a, b = len(a), len(b)
    return min(a, b) > 2 or max(a, b) > 4


def _make_cert(O: ClassRack, kind, idxs, checks, phase):
    wit = [O.member(i) for i in idxs]
    r_conj = O.conjugator(idxs[0])
    conj = []
    for i in idxs[1:]:
        # t_i t_r^-1 sends witnesses[0] to witnesses[i]
        conj.append(O.conjugator(i) @ r_conj.inv())
    return CollapseCertificate(kind, str(O.ambient.spec), wit, conj, checks, phase, O.mod_center)


def _pair_candidates(O: ClassRack, symmetry: bool):
    r = O.rep_index
    if not symmetry:
        return [(i, j) for i in range(len(O)) for j in range(len(O)) if i != j]
    return [(r, j) for j in _first_per_label(O.symmetry_orbits()) if j != r]


def _squares_differ(O: ClassRack, pairs) -> np.ndarray:
    """(rs)^2 != (sr)^2 (modulo the center) for each (r, s) index pair, in one batch."""
    if not pairs:
        return np.zeros(0, dtype=bool)
    sp = O.space
    P = np.array(pairs)
    R, S = O.matrices[P[:, 0]], O.matrices[P[:, 1]]
    rs, sr = sp.mul(R, S), sp.mul(S, R)
    a, b = sp.mul(rs, rs), sp.mul(sr, sr)
    ka, kb = sp.keys(O._canon(a)), sp.keys(O._canon(b))
    return ka != kb


def _scan_pairs(O: ClassRack, want: str, budget, symmetry: bool, orbit_cap: int):
    """Shared D/C pair scan; want is "D" or "C"."""
    if len(O) == 1:
        return ScanResult(want, None, True, note="singleton class")
    pairs = _pair_candidates(O, symmetry)
    if want == "D":
        keep = _squares_differ(O, pairs)
    else:
        keep = np.array([not O.commute(i, j) for i, j in pairs], dtype=bool)
    cands = [pq for pq, k in zip(pairs, keep) if k]
    examined = abandoned = 0
    for i, j in cands:
        if budget is not None and examined >= budget:
            raise BudgetExhausted(f"type {want} scan stopped after {examined} pairs")
        examined += 1
        oi = O.orbit([i, j], i, orbit_cap)
        oj = O.orbit([i, j], j, orbit_cap)
        if oi is None or oj is None:
            abandoned += 1
            continue
        if np.intersect1d(oi, oj).size:
            continue
        if want == "C" and not _orbit_sizes_ok(oi, oj):
            continue
        checks = {"orbits_disjoint": True, "orbit_sizes": [int(len(oi)), int(len(oj))]}
        if want == "D":
            checks = {"rs2_ne_sr2": True, **checks}
        else:
            checks = {"rs_ne_sr": True, **checks, "size_condition": True}
        cert = _make_cert(O, want, [i, j], checks, "exhaustive")
        return ScanResult(want, cert, True, examined, abandoned)
    return ScanResult(want, None, abandoned == 0, examined, abandoned)


def check_type_D(O: ClassRack, budget=None, symmetry: bool = True,
                 orbit_cap: int = PAIR_ORBIT_CAP) -> ScanResult:
    """Pairs r, s in O with (rs)^2 != (sr)^2 and disjoint <r,s>-orbits.

    With symmetry=True, r is the class representative and s runs over orbit
    representatives of (a subgroup of) its centralizer; otherwise every ordered
    pair is tried.  Either way a negative with no abandoned pair is complete.
    """
    return _scan_pairs(O, "D", budget, symmetry, orbit_cap)


def check_type_C(O: ClassRack, budget=None, symmetry: bool = True,
                 orbit_cap: int = PAIR_ORBIT_CAP) -> ScanResult:
    """Type C with H = <r, s>; negatives are heuristic since larger H are not searched."""
    return _scan_pairs(O, "C", budget, symmetry, orbit_cap)


def check_type_F(O: ClassRack, budget=None, symmetry: bool = True, seed: int = 0,
                 exhaustive_limit: int = F_EXHAUSTIVE_LIMIT) -> ScanResult:
    """Four pairwise non-commuting members with pairwise distinct <r1..r4>-orbits."""
    n = len(O)
    if n < 4:
        return ScanResult("F", None, True, note="fewer than 4 members")
    if n <= max(exhaustive_limit, 0):
        return _scan_quadruples_exhaustive(O, budget, symmetry)
    return _scan_quadruples_random(O, budget or 20_000, seed)


def _noncommuting_table(O: ClassRack, rows) -> np.ndarray:
    """nc[a, j] = member rows[a] does not commute with member j."""
    ar = np.arange(len(O))
    return np.stack([O.perm(i) != ar for i in rows])


def _scan_quadruples_exhaustive(O: ClassRack, budget, symmetry):
    n = len(O)
    nc = _noncommuting_table(O, range(n))
    if symmetry:
        r1 = O.rep_index
        firsts = [(r1, j) for j in _first_per_label(O.symmetry_orbits()) if j != r1 and nc[r1, j]]
    else:
        firsts = [(i, j) for i in range(n) for j in range(i + 1, n) if nc[i, j]]
    examined = 0
    for a, b in firsts:
        rest = [k for k in range(n) if nc[a, k] and nc[b, k] and (not symmetry or k != b)]
        if not symmetry:
            rest = [k for k in rest if k > b]
        for c, d in itertools.combinations(rest, 2):
            if not nc[c, d]:
                continue
            if budget is not None and examined >= budget:
                raise BudgetExhausted(f"type F scan stopped after {examined} quadruples")
            examined += 1
            labels = O.orbit_labels([a, b, c, d])
            if len({labels[a], labels[b], labels[c], labels[d]}) == 4:
                sizes = [int((labels == labels[x]).sum()) for x in (a, b, c, d)]
                checks = {"pairwise_noncommuting": True, "orbits_pairwise_disjoint": True,
                          "orbit_sizes": sizes}
                return ScanResult("F", _make_cert(O, "F", [a, b, c, d], checks, "exhaustive"), True, examined)
    return ScanResult("F", None, True, examined)


def _scan_quadruples_random(O: ClassRack, budget, seed):
    rng = random.Random(seed)
    n = len(O)
    r1 = O.rep_index
    nc1 = O.perm(r1) != np.arange(n)
    pool = np.flatnonzero(nc1)
    examined = 0
    if len(pool) < 3:
        return ScanResult("F", None, True, note="representative commutes with almost everything")
    while examined < budget:
        b, c, d = (int(x) for x in rng.sample(list(pool), 3))
        examined += 1
        if O.commute(b, c) or O.commute(b, d) or O.commute(c, d):
            continue
        labels = O.orbit_labels([r1, b, c, d])
        if len({labels[r1], labels[b], labels[c], labels[d]}) == 4:
            sizes = [int((labels == labels[x]).sum()) for x in (r1, b, c, d)]
            checks = {"pairwise_noncommuting": True, "orbits_pairwise_disjoint": True,
                      "orbit_sizes": sizes}
            return ScanResult("F", _make_cert(O, "F", [r1, b, c, d], checks, f"random(seed={seed})"),
                              False, examined)
    return ScanResult("F", None, False, examined, note="random phase exhausted its budget")


# --- verdicts -------------------------------------------------------------------

@dataclass
class Verdict:
    certificate: CollapseCertificate | None
    flags: dict = field(default_factory=dict)  # per type: found / complete / partial / heuristic-negative / skipped
    mod_center: bool = False

    @property
    def collapses(self) -> bool:
        return self.certificate is not None

    @property
    def label(self) -> str:
        if self.certificate is not None:
            return f"type {self.certificate.kind}"
        if self.flags.get("D") == "complete" and self.flags.get("F") == "complete":
            return "kthulhu candidate"
        return "inconclusive"

    def to_json(self) -> dict:
        return {"verdict": self.label, "flags": self.flags, "mod_center": self.mod_center,
                "certificate": self.certificate.to_json() if self.certificate else None}


def kthulhu_scan(O: ClassRack, pair_budget=None, seed: int = 0, run_all: bool = False) -> Verdict:
    """D, then C on <r,s>, then F; stops at the first certificate unless run_all."""
    flags = {}
    cert = None
    for kind, fn in (("D", check_type_D), ("C", check_type_C), ("F", check_type_F)):
        if cert is not None and not run_all:
            flags[kind] = "skipped"
            continue
        kwargs = {"seed": seed} if kind == "F" else {}
        try:
            res = fn(O, pair_budget, **kwargs)
        except BudgetExhausted:
            flags[kind] = "partial" if kind != "C" else "heuristic-negative"
            continue
        flags[kind] = res.flag
        if res.certificate is not None and cert is None:
            cert = res.certificate
    return Verdict(cert, flags, O.mod_center)


# --- mixed-part hypothesis check and product racks ------------------------------

def lemma_tecnico0(y: Matrix, z: Matrix, group, p: int | None = None, conjugator: Matrix | None = None):
    """If y_s z_u != z_u y_s and z_s y_u != y_u z_s, return the derived facts (and a type C
    certificate when y, z are conjugate via `conjugator` with disjoint <y,z>-orbits)."""
    dy, dz = p_decompose(y, p), p_decompose(z, p)

    def commute(a, b):
        return group.same_coset(a @ b, b @ a)

    h1 = not commute(dy.semisimple, dz.unipotent)
    h2 = not commute(dz.semisimple, dy.unipotent)
    if not (h1 and h2):
        return None
    oy = conj_orbit([y, z], y, PAIR_ORBIT_CAP, group)
    oz = conj_orbit([y, z], z, PAIR_ORBIT_CAP, group)
    out = {"ys_zu_ne": True, "zs_yu_ne": True,
           "yz_ne_zy": not commute(y, z),
           "orbit_sizes": [len(oy), len(oz)],
           "orbits_disjoint": not np.isin(oy.keys, oz.keys).any()}
    if not out["yz_ne_zy"] or min(out["orbit_sizes"]) < 3:
        raise AssertionError("mixed-part hypotheses held but the derived inequalities failed")
    out["certificate"] = None
    if conjugator is not None and group.contains(conjugator) and group.same_coset(conjugator.conj(y), z) \
            and out["orbits_disjoint"]:
        checks = {"rs_ne_sr": True, "orbits_disjoint": True, "orbit_sizes": out["orbit_sizes"],
                  "size_condition": True}
        out["certificate"] = CollapseCertificate("C", str(group.spec), [group.rep(y), group.rep(z)],
                                                 [conjugator], checks, "constructed", bool(group.canonicalizer()))
    return out


def product_type_D(G1, G2, x1: Matrix, x2: Matrix, y1: Matrix, y2: Matrix,
                   a: Matrix | None = None, b: Matrix | None = None) -> CollapseCertificate:
    """Type D for X1 x X2 from (x1 x2)^2 != (x2 x1)^2 in X1 and commuting y1 != y2 in X2.

    a ▷ x1 = x2 in G1 and b ▷ y1 = y2 in G2 are the conjugators witnessing that the
    pairs lie in one class each (found by orbit search when omitted).
    """
    if G1.same_coset(x1 @ x2 @ x1 @ x2, x2 @ x1 @ x2 @ x1):
        raise HypothesisFailed("x1x2", "(x1 x2)^2 = (x2 x1)^2")
    if G2.same_coset(y1, y2):
        raise HypothesisFailed("y1y2", "y1 = y2")
    if not G2.same_coset(y1 @ y2, y2 @ y1):
        raise HypothesisFailed("y1y2", "y1 and y2 do not commute")
    a = a or _find_conjugator(G1, x1, x2)
    b = b or _find_conjugator(G2, y1, y2)
    if a is None:
        raise HypothesisFailed("x1x2", "x1 and x2 are not conjugate")
    if b is None:
        raise HypothesisFailed("y1y2", "y1 and y2 are not conjugate")
    P = make_group(f"{G1.spec}*{G2.spec}", verify=False)
    r = P.block_diag([x1, y1])
    s = P.block_diag([x2, y2])
    g = P.block_diag([a, b])
    Or = conj_orbit([r, s], r, PAIR_ORBIT_CAP, P)
    Os = conj_orbit([r, s], s, PAIR_ORBIT_CAP, P)
    checks = {"rs2_ne_sr2": True, "orbits_disjoint": not np.isin(Or.keys, Os.keys).any(),
              "orbit_sizes": [len(Or), len(Os)]}
    if not checks["orbits_disjoint"]:
        raise AssertionError("product orbits meet although y1 != y2 commute")
    return CollapseCertificate("D", P.spec, [P.rep(r), P.rep(s)], [g], checks, "constructed",
                               bool(P.canonicalizer()))


def _find_conjugator(G, x, y):
    O = ClassRack(G, x)
    i = O.index(y)
    if i < 0:
        return None
    return O.conjugator(i) @ O.conjugator(O.index(x)).inv()


# --- replay ------------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    checks: list  # (name, passed, detail)

    @property
    def failed(self):
        return [c[0] for c in self.checks if not c[1]]


def verify_certificate(cert, orbit_cap: int = PAIR_ORBIT_CAP) -> VerifyReport:
    """Re-derive every defining condition from the stored matrices alone."""
    if isinstance(cert, dict):
        cert = CollapseCertificate.from_json(cert)
    G = make_group(cert.group, verify=False)
    out = []

    def check(name, ok, detail=""):
        out.append((name, bool(ok), detail))

    W, T = cert.witnesses, cert.conjugators
    for i, w in enumerate(W):
        check(f"member[{i}]", G.contains(w), "witness lies in the group")
    for i, t in enumerate(T):
        check(f"conjugator[{i}]", G.contains(t), "conjugator lies in the group")
        if out[-1][1]:
            check(f"same_class[{i + 1}]", G.same_coset(t.conj(W[0]), W[i + 1]),
                  "conjugator sends the first witness to this one")
    if not all(c[1] for c in out):
        return VerifyReport(False, out)  # later checks presuppose invertible members

    def commute(a, b):
        return G.same_coset(a @ b, b @ a)

    orbits = [conj_orbit(W, w, orbit_cap, G) for w in W]
    sizes = [len(o) for o in orbits]
    disjoint = all(not np.isin(orbits[i].keys, orbits[j].keys).any()
                   for i in range(len(W)) for j in range(i + 1, len(W)))
    if cert.kind == "D":
        r, s = W
        check("rs2_ne_sr2", not G.same_coset((r @ s) ** 2, (s @ r) ** 2))
        check("orbits_disjoint", disjoint)
    elif cert.kind == "C":
        r, s = W
        check("rs_ne_sr", not commute(r, s))
        check("orbits_disjoint", disjoint)
        check("size_condition", _orbit_sizes_ok(range(sizes[0]), range(sizes[1])),
              f"orbit sizes {sizes}")
    elif cert.kind == "F":
        check("pairwise_noncommuting", all(not commute(W[i], W[j]) for i in range(4) for j in range(i + 1, 4)))
        check("orbits_pairwise_disjoint", disjoint)
    else:
        check("kind", False, f"unknown certificate kind {cert.kind!r}")
    stored = cert.checks.get("orbit_sizes")
    if stored is not None:
        check("orbit_sizes", list(stored) == sizes, f"stored {stored}, recomputed {sizes}")
    return VerifyReport(all(c[1] for c in out), out)
