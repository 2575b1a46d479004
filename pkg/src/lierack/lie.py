"""
Root systems of types A-G, Weyl group actions, torus characters and center tables.

Conventions (Bourbaki numbering): the Cartan matrix is a[i][j] = <alpha_i^vee, alpha_j>,
roots are integer vectors in the basis of simple roots, and a torus element of the
simply connected group is written in coroot coordinates,

    t = prod_j alpha_j^vee(xi_j),   alpha(t) = prod_j xi_j^<alpha, alpha_j^vee>.

Weyl group elements are words in the simple reflections and act on the root list
by permutations; W itself is never enumerated.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

import networkx as nx
import numpy as np

from .errors import InvalidType, NotTabulated
from .gf import Field, FieldElem, field_of_order

KINDS = "ABCDEFG"

# (arm lengths of the branch node) -> E rank
_E_ARMS = {(1, 2, 2): 6, (1, 2, 3): 7, (1, 2, 4): 8}


def cartan_matrix(kind: str, rank: int) -> np.ndarray:
    """Bourbaki Cartan matrix a[i][j] = <alpha_i^vee, alpha_j>."""
    _check_type(kind, rank)
    n = rank
    a = 2 * np.eye(n, dtype=np.int64)

    def bond(i, j, aij=-1, aji=-1):  # 1-indexed
        a[i - 1, j - 1] = aij
        a[j - 1, i - 1] = aji

    if kind in "ABC":
        for i in range(1, n):
            bond(i, i + 1)
        if kind == "B":
            bond(n - 1, n, -1, -2)
        elif kind == "C":
            bond(n - 1, n, -2, -1)
    elif kind == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif kind == "E":
        bond(1, 3)
        bond(3, 4)
        bond(2, 4)
        for i in range(4, n):
            bond(i, i + 1)
    elif kind == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    else:  # G2, alpha_1 short
        bond(1, 2, -3, -1)
    return a


def _check_type(kind, rank):
    ok = {"A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 3,
          "E": 6 <= rank <= 8, "F": rank == 4, "G": rank == 2}
    if kind not in ok or not ok[kind]:
        raise InvalidType(f"no root system of type {kind}{rank}")


def _symmetrizer(a: np.ndarray) -> np.ndarray:
    """d with d_i a_ij = d_j a_ji, normalised so the shortest simple root has d = 1."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = 1.0
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i, j] and d[j] is None:
                    d[j] = d[i] * a[i, j] / a[j, i]
                    stack.append(j)
    d = np.array(d)
    return np.rint(d / d.min()).astype(np.int64)


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: np.ndarray
    roots: np.ndarray  # all roots, positives first, each row in the simple-root basis
    n_pos: int
    sym: np.ndarray  # symmetrizer d_i, so (alpha_i, alpha_j) = d_i a_ij

    def __repr__(self):
        return f"RootSystem({self.kind}{self.rank}, {len(self.roots)} roots)"

    def __hash__(self):
        return hash((self.kind, self.rank))

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.kind, self.rank) == (other.kind, other.rank)

    @property
    def name(self):
        return f"{self.kind}{self.rank}"

    @property
    def positives(self) -> np.ndarray:
        return self.roots[: self.n_pos]

    @property
    def simple(self) -> list[int]:
        return [self.index(np.eye(self.rank, dtype=np.int64)[i]) for i in range(self.rank)]

    def index(self, root) -> int:
        return self._index[tuple(int(v) for v in root)]

    @property
    def _index(self):
        return _root_index(self)

    def form(self, x, y) -> int:
        """Invariant bilinear form, integral with the shortest simple roots of length 1."""
        B = self.sym[:, None] * self.cartan
        return int(np.asarray(x) @ B @ np.asarray(y))

    def pairing(self, root, i: int) -> int:
        """<root, alpha_i^vee> (i 0-indexed)."""
        return int(np.asarray(root) @ self.cartan[i])

    @property
    def highest_root(self) -> int:
        return int(np.argmax(self.roots[: self.n_pos].sum(axis=1)))

    @property
    def highest_short_root(self) -> int | None:
        lengths = [self.form(r, r) for r in self.positives]
        if len(set(lengths)) == 1:
            return None
        short = min(lengths)
        cand = [i for i in range(self.n_pos) if lengths[i] == short]
        return max(cand, key=lambda i: self.roots[i].sum())

    def is_long(self, root) -> bool:
        lengths = {self.form(r, r) for r in self.positives}
        return self.form(root, root) == max(lengths)

    def to_json(self) -> dict:
        return {"type": self.name, "cartan": self.cartan.tolist(),
                "roots": self.roots.tolist(), "n_positive": self.n_pos,
                "w0": list(longest_element(self).letters)}


@lru_cache(maxsize=None)
def _root_index(rs: RootSystem):
    return {tuple(int(v) for v in r): i for i, r in enumerate(rs.roots)}


@lru_cache(maxsize=None)
def build_root_system(kind: str, rank: int) -> RootSystem:
    """All roots by closing the simple roots under the simple reflections."""
    kind = kind.upper()
    a = cartan_matrix(kind, rank)
    simple = [tuple(int(v) for v in row) for row in np.eye(rank, dtype=np.int64)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            rv = np.array(r)
            for i in range(rank):
                c = int(rv @ a[i])
                img = rv.copy()
                img[i] -= c
                t = tuple(int(v) for v in img)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    pos = sorted((r for r in seen if all(v >= 0 for v in r)), key=lambda r: (sum(r), tuple(-v for v in r)))
    neg = [tuple(-v for v in r) for r in pos]
    if len(pos) + len(neg) != len(seen):
        raise AssertionError("closure produced a root that is neither positive nor negative")
    roots = np.array(pos + neg, dtype=np.int64)
    return RootSystem(kind, rank, a, roots, len(pos), _symmetrizer(a))


# --- Weyl group ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _reflection_perms(rs: RootSystem) -> np.ndarray:
    """perms[i][k] = index of s_i(root k)."""
    out = np.empty((rs.rank, len(rs.roots)), dtype=np.int64)
    for i in range(rs.rank):
        c = rs.roots @ rs.cartan[i]
        imgs = rs.roots.copy()
        imgs[:, i] -= c
        out[i] = [rs.index(r) for r in imgs]
    return out


@dataclass(frozen=True)
class WeylWord:
    """s_{i1} s_{i2} ... s_{ik} with 0-indexed letters; acts right-to-left."""

    letters: tuple[int, ...]

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.letters + other.letters)

    def inverse(self) -> "WeylWord":
        return WeylWord(tuple(reversed(self.letters)))

    def permutation(self, rs: RootSystem) -> np.ndarray:
        """p with w(root k) = root p[k]."""
        perms = _reflection_perms(rs)
        p = np.arange(len(rs.roots))
        for i in reversed(self.letters):
            p = perms[i][p]
        return p

    def act_root(self, rs: RootSystem, root) -> np.ndarray:
        return rs.roots[self.permutation(rs)[rs.index(root)]]

    def equals(self, other: "WeylWord", rs: RootSystem) -> bool:
        return bool(np.array_equal(self.permutation(rs), other.permutation(rs)))


def longest_element(rs: RootSystem) -> WeylWord:
    """A reduced word for w0: append s_i while w(alpha_i) is still positive."""
    perms = _reflection_perms(rs)
    simple = rs.simple
    letters = []
    p = np.arange(len(rs.roots))  # permutation of w
    while True:
        i = next((i for i in range(rs.rank) if p[simple[i]] < rs.n_pos), None)
        if i is None:
            return WeylWord(tuple(letters))
        letters.append(i)
        p = p[perms[i]]


def is_minus_one(rs: RootSystem) -> bool:
    p = longest_element(rs).permutation(rs)
    return bool(np.array_equal(rs.roots[p], -rs.roots))


# --- torus elements ---------------------------------------------------------

@dataclass(frozen=True)
class TorusElem:
    """prod_i alpha_i^vee(xi_i) in the simply connected torus."""

    field: Field
    exponents: tuple[FieldElem, ...]

    def __post_init__(self):
        if any(x.code == 0 for x in self.exponents):
            raise ValueError("torus coordinates must be nonzero")

    @classmethod
    def of(cls, field: Field, values) -> "TorusElem":
        return cls(field, tuple(field(v) for v in values))

    @classmethod
    def identity(cls, field: Field, rank: int) -> "TorusElem":
        return cls(field, (field.one,) * rank)

    def __mul__(self, other: "TorusElem") -> "TorusElem":
        return TorusElem(self.field, tuple(a * b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, e: int) -> "TorusElem":
        return TorusElem(self.field, tuple(a**e for a in self.exponents))

    def inverse(self) -> "TorusElem":
        return self ** -1

    def is_identity(self) -> bool:
        return all(x.code == 1 for x in self.exponents)

    def order(self) -> int:
        return lcm(*(x.order() for x in self.exponents))

    def __repr__(self):
        return "T(" + ", ".join(map(repr, self.exponents)) + ")"


def eval_root(rs: RootSystem, root, t: TorusElem) -> FieldElem:
    """alpha(t) = prod_j xi_j^<alpha, alpha_j^vee>."""
    val = t.field.one
    for j, xi in enumerate(t.exponents):
        val = val * xi ** rs.pairing(root, j)
    return val


def is_central(rs: RootSystem, t: TorusElem) -> bool:
    return all(eval_root(rs, rs.roots[i], t).code == 1 for i in rs.simple)


def reflect_torus(rs: RootSystem, i: int, t: TorusElem) -> TorusElem:
    """s_i(t): xi_i -> xi_i^-1 prod_{j != i} xi_j^(-a_ji); other coordinates fixed."""
    xs = list(t.exponents)
    new = xs[i] ** -1
    for j in range(rs.rank):
        if j != i:
            new = new * xs[j] ** int(-rs.cartan[j, i])
    xs[i] = new
    return TorusElem(t.field, tuple(xs))


def weyl_act_torus(rs: RootSystem, w: WeylWord, t: TorusElem) -> TorusElem:
    for i in reversed(w.letters):
        t = reflect_torus(rs, i, t)
    return t


# --- Phi_t -------------------------------------------------------------------

@dataclass(frozen=True)
class SubSystem:
    """A closed subsystem: its roots (indices into the ambient list), base and components."""

    ambient: RootSystem
    roots: tuple[int, ...]
    base: tuple[int, ...]
    components: tuple[tuple[str, tuple[int, ...]], ...]  # (type name, base indices)

    @property
    def type_name(self) -> str:
        if not self.components:
            return "empty"
        names = sorted((c[0] for c in self.components), key=lambda s: (s[0], int(s[1:])))
        return "x".join(names)

    def __len__(self):
        return len(self.roots)


def identify_type(a: np.ndarray) -> str:
    """Name of a connected Cartan matrix, e.g. "B3" (B2 and C2 are both reported as B2)."""
    n = len(a)
    if n == 1:
        return "A1"
    g = nx.Graph()
    g.add_nodes_from(range(n))
    multi = {}
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j]:
                g.add_edge(i, j)
                multi[(i, j)] = int(a[i, j] * a[j, i])
    if not nx.is_connected(g) or not nx.is_tree(g):
        raise InvalidType("not the Cartan matrix of an irreducible root system")
    top = max(multi.values())
    if top == 3:
        return "G2"
    if top == 2:
        if n == 2:
            return "B2"
        (i, j), = [e for e, m in multi.items() if m == 2]
        if g.degree[i] == 2 and g.degree[j] == 2:
            return "F4"
        end, other = (i, j) if g.degree[i] == 1 else (j, i)
        # the end node is short in B: <end^vee, other> = -2
        return f"B{n}" if a[end, other] == -2 else f"C{n}"
    degs = dict(g.degree)
    branch = [v for v in g if degs[v] == 3]
    if not branch:
        return f"A{n}"
    b = branch[0]
    h = g.copy()
    h.remove_node(b)
    arms = tuple(sorted(len(c) for c in nx.connected_components(h)))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms in _E_ARMS:
        return f"E{_E_ARMS[arms]}"
    raise InvalidType(f"unrecognised diagram with arms {arms}")


def closed_subsystem(rs: RootSystem, indices) -> SubSystem:
    idx = sorted(set(int(i) for i in indices))
    pos = [i for i in idx if i < rs.n_pos]
    posset = {tuple(rs.roots[i]) for i in pos}
    base = []
    for i in pos:
        r = rs.roots[i]
        if not any(tuple(r - rs.roots[j]) in posset for j in pos if j != i):
            base.append(i)
    k = len(base)
    a = np.array([[_coroot_pairing(rs, base[i], base[j]) for j in range(k)] for i in range(k)],
                 dtype=np.int64).reshape(k, k)
    g = nx.Graph()
    g.add_nodes_from(range(k))
    g.add_edges_from((i, j) for i in range(k) for j in range(k) if i < j and a[i, j])
    comps = []
    for c in sorted(nx.connected_components(g), key=min):
        c = sorted(c)
        sub = a[np.ix_(c, c)]
        comps.append((identify_type(sub), tuple(base[i] for i in c)))
    return SubSystem(rs, tuple(idx), tuple(base), tuple(comps))


def _coroot_pairing(rs: RootSystem, i: int, j: int) -> int:
    """<beta_i^vee, beta_j> = 2 (beta_i, beta_j) / (beta_i, beta_i) for roots given by index."""
    x, y = rs.roots[i], rs.roots[j]
    return 2 * rs.form(x, y) // rs.form(x, x)


def phi_t(rs: RootSystem, t: TorusElem) -> SubSystem:
    """{alpha : alpha(t) = 1} with its base and the types of its irreducible components."""
    keep = [i for i, r in enumerate(rs.roots) if eval_root(rs, r, t).code == 1]
    return closed_subsystem(rs, keep)


# --- centers ----------------------------------------------------------------

@dataclass(frozen=True)
class CenterEntry:
    generators: tuple[TorusElem, ...]
    order: int  # order of the group they generate, as printed
    label: str


def _parse_kind(kind: str, twisted):
    """("2A", False) and ("A", True) both mean twisted A; returns (letter, twist order)."""
    kind = kind.upper()
    order = 1
    if kind[0] in "23":
        order = int(kind[0])
        kind = kind[1:]
    if twisted is True:
        order = max(order, 2)
    elif isinstance(twisted, int) and twisted > 1:
        order = twisted
    return kind, order


def graph_automorphism(kind: str, rank: int, order: int) -> list[int]:
    """Index permutation of the diagram automorphism used by the Steinberg endomorphism."""
    ident = list(range(rank))
    if order == 1:
        return ident
    if kind == "A":
        return ident[::-1]
    if kind == "D" and order == 2:
        return ident[:-2] + [rank - 1, rank - 2]
    if kind == "D" and order == 3 and rank == 4:
        return [2, 1, 3, 0]
    if kind == "E" and rank == 6:
        return [5, 1, 4, 3, 2, 0]
    raise InvalidType(f"no order-{order} diagram automorphism of {kind}{rank}")


def steinberg_torus_map(rs: RootSystem, t: TorusElem, q: int, order: int) -> TorusElem:
    """F(t) for F = graph automorphism composed with Fr_q, in coroot coordinates."""
    perm = graph_automorphism(rs.kind, rs.rank, order)
    xs = [None] * rs.rank
    for i, x in enumerate(t.exponents):
        xs[perm[i]] = x**q
    return TorusElem(t.field, tuple(xs))


def center_table(kind: str, rank: int, q: int, twisted=False) -> CenterEntry:
    """Generators of Z(G_sc^F) as tabulated for q odd (split) and for the Steinberg groups."""
    kind, order = _parse_kind(kind, twisted)
    _check_type(kind, rank)
    p_odd = q % 2 == 1
    if order == 1:
        if not p_odd:
            raise NotTabulated(f"{kind}{rank} centers are tabulated for odd q only")
        F = field_of_order(q)
        m1 = F(-1)
        one = F.one

        def elem(vals):
            return TorusElem(F, tuple(vals))

        if kind == "B":
            return CenterEntry((elem([one] * (rank - 1) + [m1]),), 2, "<a_l(-1)>")
        if kind == "C" and rank > 2:
            return CenterEntry((elem([m1 if i % 2 == 0 else one for i in range(rank)]),), 2,
                               "<prod_{i odd} a_i(-1)>")
        if kind == "D" and rank % 2 == 0:
            g1 = elem([m1 if i % 2 == 0 else one for i in range(rank)])
            g2 = elem([one] * (rank - 2) + [m1, m1])
            return CenterEntry((g1, g2), 4, "<prod_{i odd} a_i(-1), a_{l-1}(-1) a_l(-1)>")
        if kind == "D" and q % 4 == 1:
            z = F.primitive_root_of_unity(4)
            vals = [m1 if i % 2 == 0 else one for i in range(rank - 2)] + [z, z**3]
            return CenterEntry((elem(vals),), 4, "<prod_{i odd <= l-2} a_i(-1) a_{l-1}(z) a_l(z^3)>")
        if kind == "D":
            return CenterEntry((elem([one] * (rank - 2) + [m1, m1]),), 2, "<a_{l-1}(-1) a_l(-1)>")
        if kind == "E" and rank == 6:
            if q % 3 == 1:
                w = F.primitive_root_of_unity(3)
                vals = [w, one, w**2, one, w, w**2]
                return CenterEntry((elem(vals),), 3, "<a_1(w) a_3(w^2) a_5(w) a_6(w^2)>")
            return CenterEntry((), 1, "1")
        if kind == "E" and rank == 7:
            vals = [one] * 7
            for i in (1, 4, 6):
                vals[i] = m1
            return CenterEntry((elem(vals),), 2, "<a_2(-1) a_5(-1) a_7(-1)>")
        raise NotTabulated(f"{kind}{rank} is not in the split center table")
    if kind == "D" and order == 2:
        if not p_odd:
            raise NotTabulated("2D centers are tabulated for odd q only")
        F = field_of_order(q * q)
        vals = [F.one] * (rank - 2) + [F(-1), F(-1)]
        return CenterEntry((TorusElem(F, tuple(vals)),), 2, "<a_{l-1}(-1) a_l(-1)>")
    if kind == "A" and order == 2:
        F = field_of_order(q * q)
        d = gcd(q + 1, rank + 1)
        z = F.primitive_root_of_unity(d)
        gen = TorusElem(F, tuple(z ** (i + 1) for i in range(rank)))
        return CenterEntry((gen,), d, "<prod_i a_i(z^i)>, d = (q+1, l+1)")
    if kind == "E" and rank == 6 and order == 2:
        if q % 3 != 2:
            raise NotTabulated("2E6 center is tabulated for q = 2 mod 3")
        F = field_of_order(q * q)
        w = F.primitive_root_of_unity(3)
        vals = [w, F.one, w**2, F.one, w, w**2]
        return CenterEntry((TorusElem(F, tuple(vals)),), 3, "<a_1(w) a_3(w^2) a_5(w) a_6(w^2)>")
    if kind == "D" and rank == 4 and order == 3:
        return CenterEntry((), 1, "1")
    raise NotTabulated(f"{order}{kind}{rank} is not in the Steinberg center table")


def generated_torus_group(gens, field: Field, rank: int) -> set:
    """All products of the generators (as exponent-code tuples)."""
    start = tuple([1] * rank)
    seen = {start}
    frontier = [TorusElem.identity(field, rank)]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                u = t * g
                key = tuple(x.code for x in u.exponents)
                if key not in seen:
                    seen.add(key)
                    nxt.append(u)
        frontier = nxt
    return seen
