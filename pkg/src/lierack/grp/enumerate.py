"""Closures, conjugation orbits, conjugacy classes and centralizers by batched BFS."""

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import CapExceeded, UnsupportedSpec
from .groups import ENUM_CAP, ORBIT_CAP, GroupHandle
from .matrix import Matrix, MatrixSpace


class ElementSet:
    """A set of group elements stored as sorted keys (canonical reps when mod_center)."""

    def __init__(self, space: MatrixSpace, keys):
        self.space = space
        self.keys = np.asarray(keys)

    def __len__(self):
        return len(self.keys)

    def index(self, keys) -> np.ndarray:
        """Positions of keys in the set, -1 where absent."""
        keys = np.asarray(keys)
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        found = self.keys[pos] == keys
        return np.where(found, pos, -1)

    def matrices(self, idx=None) -> np.ndarray:
        k = self.keys if idx is None else self.keys[idx]
        return self.space.from_keys(k)

    def __contains__(self, m: Matrix) -> bool:
        return bool(self.index([m.key])[0] >= 0)

    def __iter__(self):
        for a in self.matrices():
            yield Matrix(self.space, a)


def _canon_fn(group):
    return None if group is None else group.canonicalizer()


def closure_keys(space, gens, seeds, canon=None, cap=ENUM_CAP) -> np.ndarray:
    """Sorted keys of the closure of seeds under right multiplication by gens."""
    n = space.n
    gens_a = np.stack([g.a for g in gens]) if gens else np.zeros((0, n, n), dtype=space.dtype)
    frontier = np.asarray(seeds)
    if canon is not None:
        frontier = canon(frontier)
    seen, first = np.unique(space.keys(frontier), return_index=True)
    frontier = frontier[first]
    while len(frontier) and len(gens_a):
        prods = space.mul(frontier[:, None], gens_a[None]).reshape(-1, n, n)
        if canon is not None:
            prods = canon(prods)
        k, first = np.unique(space.keys(prods), return_index=True)
        mask = ~np.isin(k, seen, assume_unique=True)
        frontier = prods[first[mask]]
        seen = np.union1d(seen, k[mask])
        if len(seen) > cap:
            raise CapExceeded(f"closure exceeded {cap} elements")
    return seen


def enumerate_group(group: GroupHandle, cap: int = ENUM_CAP) -> ElementSet:
    """All elements (canonical quotient reps when mod_center), sorted by key; cached on the handle."""
    if group.spec.family in ("GL", "GU"):
        raise UnsupportedSpec("GL and GU are ambient groups for conjugation only")
    if group.order_bound > cap:
        raise CapExceeded(f"|{group.spec}| = {group.order_bound} exceeds the enumeration cap {cap}")
    if group._elements is None:
        sp = group.space
        keys = closure_keys(sp, group.generators, sp.eye[None], _canon_fn(group), cap)
        group._elements = ElementSet(sp, keys)
    return group._elements


def subgroup_keys(group: GroupHandle, gens, cap: int = ENUM_CAP) -> np.ndarray:
    sp = group.space
    return closure_keys(sp, gens, sp.eye[None], _canon_fn(group), cap)


class OrbitSearch:
    """Frontier-batched BFS of a conjugation orbit."""

    def __init__(self, space, gens, x, canon=None):
        self.space = space
        self.canon = canon
        self.pairs = [(g.a, space.inv(g.a)) for g in gens]
        start = np.asarray(x.a if isinstance(x, Matrix) else x)[None]
        if canon is not None:
            start = canon(start)
        self.seen = space.keys(start)
        self.frontier = start
        self.layer_keys = self.seen

    @property
    def done(self):
        return len(self.frontier) == 0

    def step(self):
        sp = self.space
        if not self.pairs:
            self.frontier = self.frontier[:0]
            self.layer_keys = self.seen[:0]
            return self.layer_keys
        imgs = np.concatenate([sp.mul(sp.mul(g, self.frontier), gi) for g, gi in self.pairs])
        if self.canon is not None:
            imgs = self.canon(imgs)
        k, first = np.unique(sp.keys(imgs), return_index=True)
        mask = ~np.isin(k, self.seen, assume_unique=True)
        self.frontier = imgs[first[mask]]
        self.layer_keys = k[mask]
        self.seen = np.union1d(self.seen, self.layer_keys)
        return self.layer_keys


def orbit_keys(space, gens, x, cap=ORBIT_CAP, canon=None) -> np.ndarray:
    search = OrbitSearch(space, gens, x, canon)
    while not search.done:
        search.step()
        if len(search.seen) > cap:
            raise CapExceeded(f"orbit exceeded {cap} elements")
    return search.seen


def conj_orbit(gens, x: Matrix, cap: int = ORBIT_CAP, group: GroupHandle | None = None) -> ElementSet:
    """O_x under conjugation by <gens> (modulo the center when group.mod_center)."""
    sp = x.space
    return ElementSet(sp, orbit_keys(sp, gens, x, cap, _canon_fn(group)))


def is_conjugate(group: GroupHandle, a: Matrix, b: Matrix, cap: int = ORBIT_CAP) -> bool:
    """Bidirectional orbit search; raises CapExceeded when inconclusive."""
    sp = group.space
    canon = _canon_fn(group)
    A = OrbitSearch(sp, group.generators, a, canon)
    B = OrbitSearch(sp, group.generators, b, canon)
    if np.isin(A.seen, B.seen).any():
        return True
    while True:
        if A.done or B.done:
            return False
        side, other = (A, B) if len(A.seen) <= len(B.seen) else (B, A)
        new = side.step()
        if np.isin(new, other.seen).any():
            return True
        if len(A.seen) + len(B.seen) > cap:
            raise CapExceeded(f"conjugacy search exceeded {cap} nodes")


@dataclass
class ConjClass:
    rep: Matrix
    keys: np.ndarray

    @property
    def size(self):
        return len(self.keys)

    def members(self) -> ElementSet:
        return ElementSet(self.rep.space, self.keys)


def conjugacy_classes(group: GroupHandle, cap: int = ENUM_CAP) -> list[ConjClass]:
    """Classes sorted by (size, least key); the least key is the representative."""
    E = enumerate_group(group, cap)
    if getattr(group, "_classes", None) is not None:
        return group._classes
    sp = group.space
    X = E.matrices()
    N = len(E)
    rows, cols = [], []
    for g in group.generators:
        img = group.canon_keys(sp.conj(g.a, X)) if group.mod_center else sp.keys(sp.conj(g.a, X))
        idx = E.index(img)
        assert (idx >= 0).all()
        rows.append(np.arange(N))
        cols.append(idx)
    graph = coo_matrix((np.ones(N * len(rows), dtype=np.int8),
                        (np.concatenate(rows), np.concatenate(cols))), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")
    order = np.argsort(labels, kind="stable")
    splits = np.flatnonzero(np.diff(labels[order])) + 1
    classes = []
    for block in np.split(order, splits):
        keys = E.keys[np.sort(block)]
        classes.append(ConjClass(Matrix(sp, sp.from_keys(keys[:1])[0]), keys))
    classes.sort(key=lambda c: (c.size, c.rep.key))
    group._classes = classes
    return classes


class Subgroup:
    """A subgroup of an enumerable group, with its element keys and a spanning generator set."""

    def __init__(self, ambient: GroupHandle, keys, generators):
        self.ambient = ambient
        self.space = ambient.space
        self.elements = ElementSet(ambient.space, keys)
        self.generators = list(generators)

    @property
    def order(self):
        return len(self.elements)

    def contains(self, m: Matrix) -> bool:
        return self.ambient.rep(m) in self.elements

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.ambient.same_coset(a @ b, b @ a) for a in gens for b in gens)


def spanning_generators(group: GroupHandle, keys) -> list[Matrix]:
    """Greedy generating subset of the subgroup with the given (sorted) element keys."""
    sp = group.space
    gens = []
    span = sp.keys(sp.eye[None])
    mats = sp.from_keys(keys)
    for k, a in zip(keys, mats):
        if np.isin(k, span):
            continue
        gens.append(Matrix(sp, a))
        span = subgroup_keys(group, gens)
        if len(span) == len(keys):
            break
    return gens


def centralizer(group: GroupHandle, x: Matrix, cap: int = ENUM_CAP) -> Subgroup:
    """{h : h x = x h} (h x h^-1 in Z x when mod_center)."""
    E = enumerate_group(group, cap)
    if group.is_central(x):
        return Subgroup(group, E.keys, group.generators)
    sp = group.space
    X = E.matrices()
    left = sp.mul(X, x.a)
    right = sp.mul(x.a, X)
    if group.mod_center:
        mask = group.canon_keys(left) == group.canon_keys(right)
    else:
        mask = sp.keys(left) == sp.keys(right)
    keys = E.keys[mask]
    return Subgroup(group, keys, spanning_generators(group, keys))


def subgroup(group: GroupHandle, gens, cap: int = ENUM_CAP) -> Subgroup:
    return Subgroup(group, subgroup_keys(group, gens, cap), gens)
