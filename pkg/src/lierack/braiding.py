"""
Diagonal braidings on abelian subracks, their generalized Dynkin diagrams, and
the case analysis for the Sp4(3) class of I + eta*e14 with characters of order 3.

Roots of unity are exponents modulo N.  The braiding attached to conjugators
x_0..x_3 and a character rho of an abelian group H containing the x_i > g0 is

    q_ij = rho(x_j^-1 x_i > g0).

Characters are given by their values zeta_0, zeta_1, zeta_2 on the first three
orbit elements; the fourth value is forced by the relation among the orbit
elements.  Linear forms in the exponents of (zeta_0, zeta_1, zeta_2) give the
symbolic version of every entry.
"""

import itertools
import json
from dataclasses import dataclass
from importlib import resources

import networkx as nx
import numpy as np

from .errors import CharacterIllDefined, NotAbelian, WhitelistMissing
from .grp import Matrix, make_group

N_DEFAULT = 3


@dataclass(frozen=True)
class RootOfUnity:
    order: int
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.order != self.order:
            raise ValueError("roots of unity of different orders")
        return RootOfUnity(self.order, self.exponent + other.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __repr__(self):
        return f"z{self.order}^{self.exponent}"


class BraidingMatrix:
    """n x n matrix of roots of unity of order N, stored as an exponent array."""

    def __init__(self, exponents, N: int = N_DEFAULT):
        self.N = N
        self.exponents = np.asarray(exponents, dtype=np.int64) % N
        self.n = self.exponents.shape[0]

    def __getitem__(self, ij) -> RootOfUnity:
        return RootOfUnity(self.N, int(self.exponents[ij]))

    def product(self, i: int, j: int) -> RootOfUnity:
        return self[i, j] * self[j, i]

    def restrict(self, idx) -> "BraidingMatrix":
        idx = list(idx)
        return BraidingMatrix(self.exponents[np.ix_(idx, idx)], self.N)

    def __eq__(self, other):
        return isinstance(other, BraidingMatrix) and self.N == other.N and \
            np.array_equal(self.exponents, other.exponents)

    def tolist(self):
        return self.exponents.tolist()


def diagram(Q: BraidingMatrix, nodes=None) -> nx.Graph:
    """Generalized Dynkin diagram: vertex labels q_ii, an edge labelled q_ij q_ji wherever that is not 1."""
    nodes = list(range(Q.n)) if nodes is None else list(nodes)
    D = nx.Graph()
    for i in nodes:
        D.add_node(i, label=Q[i, i].exponent)
    for i, j in itertools.combinations(nodes, 2):
        c = Q.product(i, j)
        if not c.is_one():
            D.add_edge(i, j, label=c.exponent)
    return D


def is_connected(D: nx.Graph) -> bool:
    return D.number_of_nodes() > 0 and nx.is_connected(D)


def canonical_form(D: nx.Graph) -> tuple:
    """Least (vertex labels, labelled edges) over all orderings of the vertices."""
    nodes = list(D.nodes)
    best = None
    for perm in itertools.permutations(range(len(nodes))):
        pos = {v: perm[k] for k, v in enumerate(nodes)}
        verts = [0] * len(nodes)
        for v in nodes:
            verts[pos[v]] = D.nodes[v]["label"]
        edges = sorted((min(pos[a], pos[b]), max(pos[a], pos[b]), d["label"]) for a, b, d in D.edges(data=True))
        key = (tuple(verts), tuple(edges))
        if best is None or key < best:
            best = key
    return best


def _entry_graph(entry) -> nx.Graph:
    D = nx.Graph()
    for i, lab in enumerate(entry["vertices"]):
        D.add_node(i, label=lab)
    for i, j, lab in entry["edges"]:
        D.add_edge(i, j, label=lab)
    return D


class Whitelist:
    """Connected diagrams of finite-dimensional Nichols algebras, keyed by canonical form."""

    def __init__(self, doc: dict):
        self.doc = doc
        self.coverage = doc.get("coverage")
        self.forms = {}
        for e in doc.get("entries", []):
            self.forms[canonical_form(_entry_graph(e))] = f"{e['name']} (q^{e.get('q_exponent', 1)})"

    @classmethod
    def load(cls, path=None) -> "Whitelist":
        if path is None:
            with resources.files("lierack.data").joinpath("braiding_whitelist.json").open() as fh:
                return cls(json.load(fh))
        with open(path) as fh:
            return cls(json.load(fh))

    def require(self, rank: int, N: int):
        cov = self.coverage
        if not cov or cov.get("N") != N or rank not in cov.get("ranks", []):
            raise WhitelistMissing(f"whitelist has no coverage for rank {rank} at N = {N}")

    def lookup(self, D: nx.Graph, N: int = N_DEFAULT):
        self.require(D.number_of_nodes(), N)
        return self.forms.get(canonical_form(D))


# --- the Sp4(3) class of g0 = I + eta e14 -----------------------------------------

@dataclass
class SubrackData:
    group: object
    g0: Matrix
    conjugators: list  # x_0 .. x_3
    H_generators: list  # generators of the ambient abelian group H


def sp4_3_data(eta: int = 1) -> SubrackData:
    G = make_group("sp4:3")
    M = G.matrix
    g0 = M([[1, 0, 0, eta], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    x1 = M([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    u = M([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]])

    def g(X):
        return M([[1, 0, X[0][0], X[0][1]], [0, 1, X[1][0], X[1][1]], [0, 0, 1, 0], [0, 0, 0, 1]])

    H = [g([[1, 0], [0, 1]]), g([[0, 1], [0, 0]]), g([[0, 0], [1, 0]])]
    return SubrackData(G, g0, [G.identity(), x1, u @ x1, u @ u @ x1], H)


def _coords(h: Matrix) -> np.ndarray:
    """Coordinates of [[I, X], [0, I]] (the upper right block, flattened); None if h has another shape."""
    a = h.a
    k = a.shape[0] // 2
    eye = np.eye(k, dtype=a.dtype)
    if not (np.array_equal(a[:k, :k], eye) and np.array_equal(a[k:, k:], eye) and not a[k:, :k].any()):
        return None
    return a[:k, k:].reshape(-1).astype(np.int64)


def _solve_mod_p(B: np.ndarray, v: np.ndarray, p: int):
    """c with c @ B = v over F_p (B rows are basis vectors), or None."""
    rows, cols = B.shape
    aug = np.concatenate([B.T % p, (v % p)[:, None]], axis=1).astype(np.int64)
    piv, r = [], 0
    for c in range(rows):
        nz = [i for i in range(r, cols) if aug[i, c]]
        if not nz:
            continue
        aug[[r, nz[0]]] = aug[[nz[0], r]]
        aug[r] = (aug[r] * pow(int(aug[r, c]), -1, p)) % p
        for i in range(cols):
            if i != r and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[r]) % p
        piv.append(c)
        r += 1
    if aug[r:, -1].any():
        return None
    sol = np.zeros(rows, dtype=np.int64)
    for i, c in enumerate(piv):
        sol[c] = aug[i, -1]
    return sol


def subrack_forms(data: SubrackData) -> np.ndarray:
    """4 x 4 x 3 array: q_ij as a linear form in the exponents of (zeta_0, zeta_1, zeta_2)."""
    G, g0, xs = data.group, data.g0, data.conjugators
    p = G.field.p
    orbit = [x.conj(g0) for x in xs]
    for h in orbit:
        if not all(h.commutes(k) for k in orbit + data.H_generators):
            raise NotAbelian("orbit elements and H do not commute")
    for a, b in itertools.combinations(data.H_generators, 2):
        if not a.commutes(b):
            raise NotAbelian("H is not abelian")
    coords = [_coords(h) for h in orbit]
    if any(c is None for c in coords):
        raise CharacterIllDefined("an orbit element is outside the unipotent block group")
    basis = np.stack(coords[:3]) % p
    if _solve_mod_p(basis[:2], basis[2], p) is not None or _solve_mod_p(basis[:1], basis[1], p) is not None:
        raise CharacterIllDefined("zeta_0, zeta_1, zeta_2 are not independent")
    rel = (basis.sum(axis=0) + coords[3]) % p
    if rel.any():
        raise CharacterIllDefined("the four orbit elements do not multiply to 1")
    n = len(xs)
    forms = np.zeros((n, n, 3), dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        h = xs[j].inv().conj(xs[i].conj(g0))
        c = _coords(h)
        if c is None or not all(h.commutes(k) for k in data.H_generators):
            raise NotAbelian(f"x_{j}^-1 x_{i} > g0 is not in H")
        sol = _solve_mod_p(basis, c, p)
        if sol is None:
            raise CharacterIllDefined(f"x_{j}^-1 x_{i} > g0 is outside the span of the orbit")
        forms[i, j] = sol
    return forms % N_DEFAULT


def braiding_from_subrack(data: SubrackData, zeta) -> BraidingMatrix:
    """q_ij = rho(x_j^-1 x_i > g0) for the character with exponents zeta = (e0, e1, e2) mod 3."""
    e = np.asarray(zeta, dtype=np.int64) % N_DEFAULT
    return BraidingMatrix(subrack_forms(data) @ e, N_DEFAULT)


# the displayed table: entry k stands for zeta_k, and zeta_3 = zeta_0^2 zeta_1^2 zeta_2^2
PRINTED_INDEX = [[0, 1, 1, 1], [1, 0, 3, 2], [2, 2, 0, 3], [3, 3, 2, 0]]
ZETA_FORMS = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1), 3: (2, 2, 2)}
PRINTED_PRODUCTS = {(0, 1): (0, 2, 0), (0, 2): (0, 1, 1), (0, 3): (2, 0, 2),
                    (1, 2): (2, 2, 0), (1, 3): (2, 2, 0), (2, 3): (2, 2, 0)}


def printed_forms() -> np.ndarray:
    return np.array([[ZETA_FORMS[k] for k in row] for row in PRINTED_INDEX], dtype=np.int64)


def product_identities(forms: np.ndarray) -> dict:
    """q_ij q_ji as a form, checked against the displayed products."""
    out = {}
    for (i, j), want in PRINTED_PRODUCTS.items():
        got = tuple(int(v) for v in (forms[i, j] + forms[j, i]) % N_DEFAULT)
        out[f"q{i}{j}q{j}{i}"] = {"form": list(got), "expected": list(want), "holds": got == tuple(want)}
    return out


def _fmt_form(f) -> str:
    parts = [f"z{k}" + (f"^{int(c)}" if c != 1 else "") for k, c in enumerate(f) if c]
    return "*".join(parts) if parts else "1"


def lemma_uno_decide(data: SubrackData | None = None, whitelist: Whitelist | None = None) -> dict:
    """Verdict for every character (zeta_0, zeta_1, zeta_2) in mu_3^3 of the Sp4(3) class of I + e14."""
    wl = whitelist or Whitelist.load()
    wl.require(2, N_DEFAULT)
    wl.require(3, N_DEFAULT)
    forms = subrack_forms(data or sp4_3_data(1))
    printed = printed_forms()
    rows = []
    for e in itertools.product(range(N_DEFAULT), repeat=3):
        Q = BraidingMatrix(forms @ np.array(e), N_DEFAULT)
        row = {"zeta": list(e), "q": Q.tolist()}
        if Q[0, 0].is_one():
            row.update(verdict="infinite", reason="q_ii = 1")
        else:
            W = diagram(Q, [1, 2, 3])
            if is_connected(W):
                hit = wl.lookup(W)
                row.update(W_connected=True, W_form=canonical_form(W), whitelist_hit=hit)
                row.update(verdict="infinite" if hit is None else "unresolved",
                           reason="connected diagram not in rank-3 whitelist" if hit is None
                           else f"rank-3 diagram matches {hit}")
            else:
                forced = e[1] == (2 * e[0]) % N_DEFAULT
                W2 = diagram(Q, [0, 1])
                hit = wl.lookup(W2) if is_connected(W2) else "disconnected"
                ok = forced and hit is None
                row.update(W_connected=False, zeta1_eq_zeta0_sq=forced, W2_form=canonical_form(W2),
                           whitelist_hit=hit, verdict="infinite" if ok else "unresolved",
                           reason="rank-2 diagram not in whitelist" if ok else "disconnected case not settled")
        rows.append(row)
    tally = sum(r["verdict"] == "infinite" for r in rows)
    return {
        "table": [[_fmt_form(f) for f in row] for row in forms],
        "matches_printed_table": bool(np.array_equal(forms, printed)),
        "diagonal_is_zeta0": all(tuple(forms[i, i]) == (1, 0, 0) for i in range(len(forms))),
        "products": product_identities(forms),
        "tuples": rows,
        "infinite": tally,
        "total": len(rows),
        "ok": tally == len(rows) and bool(np.array_equal(forms, printed))
              and all(v["holds"] for v in product_identities(forms).values()),
    }
