"""Group specifications, classical matrix groups and their generators."""

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from ..errors import NonScalarCenter, UnsupportedSpec
from ..gf import Field, field_of_order, is_prime, prime_factors
from .matrix import Matrix, matrix_space

FAMILIES = ("SL", "Sp", "SU", "GL", "GU")
ENUM_CAP = 2_000_000
ORBIT_CAP = 10_000_000
# SU generator sets are checked against the order formula up to this size
SU_VERIFY_LIMIT = 100_000


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    q: int
    mod_center: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedSpec(f"unknown family {self.family!r}")
        if self.n < 1:
            raise UnsupportedSpec("dimension must be positive")
        ps = prime_factors(self.q) if self.q > 1 else []
        if len(ps) != 1 or not is_prime(ps[0]):
            raise UnsupportedSpec(f"q={self.q} is not a prime power")
        if self.family == "Sp" and self.n % 2:
            raise UnsupportedSpec("Sp needs even n")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``<family><n>:<q>[/z]``, e.g. ``sp4:3/z`` or ``su3:4``."""
        m = re.fullmatch(r"\s*(sl|sp|su|gl|gu)(\d+):(\d+)(/z)?\s*", text.lower())
        if not m:
            raise UnsupportedSpec(f"bad group spec {text!r}; expected e.g. sp4:3/z")
        fam = {"sl": "SL", "sp": "Sp", "su": "SU", "gl": "GL", "gu": "GU"}[m.group(1)]
        return cls(fam, int(m.group(2)), int(m.group(3)), bool(m.group(4)))

    def __str__(self):
        return f"{self.family.lower()}{self.n}:{self.q}" + ("/z" if self.mod_center else "")

    @property
    def unitary(self) -> bool:
        return self.family in ("SU", "GU")

    @property
    def field_order(self) -> int:
        return self.q**2 if self.unitary else self.q

    def order_formula(self) -> int:
        """|G| of the full matrix group (before any central quotient)."""
        n, q = self.n, self.q
        if self.family in ("SL", "GL"):
            o = q ** (n * (n - 1) // 2)
            for i in range(2, n + 1):
                o *= q**i - 1
            return o * (q - 1) if self.family == "GL" else o
        if self.family == "Sp":
            l = n // 2
            o = q ** (l * l)
            for i in range(1, l + 1):
                o *= q ** (2 * i) - 1
            return o
        o = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            o *= q**i - (-1) ** i
        return o * (q + 1) if self.family == "GU" else o

    def center_order_formula(self) -> int:
        n, q = self.n, self.q
        return {"SL": gcd(n, q - 1), "Sp": gcd(2, q - 1), "SU": gcd(n, q + 1),
                "GL": q - 1, "GU": q + 1}[self.family]

    def with_center(self, mod_center: bool) -> "GroupSpec":
        return GroupSpec(self.family, self.n, self.q, mod_center)


def antidiag(field: Field, n: int) -> Matrix:
    return Matrix.from_rows(field, [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])


def symplectic_form(field: Field, n: int) -> Matrix:
    """[[0, J], [-J, 0]] with J the antidiagonal of ones."""
    l = n // 2
    rows = [[0] * n for _ in range(n)]
    for i in range(l):
        rows[i][n - 1 - i] = 1
        rows[l + i][l - 1 - i] = -1
    return Matrix.from_rows(field, rows)


def _basis_codes(field: Field):
    """An F_p-basis of the field (the monomials 1, x, ..., x^(m-1))."""
    return [field.p**k for k in range(field.m)]


def _span_basis(field: Field, elems):
    """A greedy F_p-basis of the additive span of elems (as FieldElems)."""
    basis, span = [], {0}
    for e in elems:
        if e.code in span:
            continue
        basis.append(e)
        new = set(span)
        for s in span:
            x = field.from_code(s)
            for c in range(1, field.p):
                new.add((x + e * c).code)
        span = new
    return basis


class GroupHandle:
    """A finite matrix group: generators, membership predicate, optional scalar center."""

    def __init__(self, spec: GroupSpec, generators, form=None, verify=True):
        self.spec = spec
        self.field = field_of_order(spec.field_order)
        self.space = matrix_space(self.field, spec.n)
        self.form = form
        self.generators = list(generators)
        self.verified_order = None
        for g in self.generators:
            if not self.contains(g):
                raise UnsupportedSpec(f"generator {g} fails membership in {spec}")
        self._elements = None

    def __repr__(self):
        return f"GroupHandle({self.spec})"

    @property
    def n(self):
        return self.spec.n

    @property
    def mod_center(self):
        return self.spec.mod_center

    @property
    def frob_exp(self) -> int:
        """k with q = p^k, i.e. the Frobenius power used by the unitary form."""
        return self.field.m // 2 if self.spec.unitary else self.field.m

    @property
    def order_bound(self) -> int:
        o = self.spec.order_formula()
        return o // len(self.center_codes) if self.mod_center else o

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.n)

    def matrix(self, rows) -> Matrix:
        return Matrix.from_rows(self.field, rows)

    # --- membership --------------------------------------------------------
    def steinberg_map(self, A: Matrix) -> Matrix:
        """(a_ij) -> J ^t(a_ij)^(-q) J."""
        J = antidiag(self.field, self.n)
        return J @ A.frob(self.frob_exp).inv().T @ J

    def contains(self, A: Matrix) -> bool:
        if A.space is not self.space:
            return False
        fam = self.spec.family
        d = A.det()
        if d.code == 0:
            return False
        if fam == "GL":
            return True
        if fam == "SL":
            return d.code == 1
        if fam == "Sp":
            return A.T @ self.form @ A == self.form
        # unitary: A^(q)T J A = J, i.e. A is fixed by the Steinberg map
        J = self.form
        if A.frob(self.frob_exp).T @ J @ A != J:
            return False
        return fam == "GU" or d.code == 1

    def contains_batch(self, X) -> np.ndarray:
        return np.array([self.contains(Matrix(self.space, x)) for x in X], dtype=bool)

    # --- center and quotient ----------------------------------------------
    @cached_property
    def center_codes(self) -> tuple[int, ...]:
        """Codes c with c*I in the group (1 first)."""
        sp = self.space
        out = [c for c in range(1, self.field.q) if self.contains(Matrix(sp, sp.scalar(c)))]
        return tuple(sorted(out))

    def center(self) -> list[Matrix]:
        return [Matrix(self.space, self.space.scalar(c)) for c in self.center_codes]

    def is_central(self, A: Matrix) -> bool:
        return any(np.array_equal(A.a, self.space.scalar(c)) for c in self.center_codes)

    def canon_keys(self, X) -> np.ndarray:
        """Keys of the canonical quotient representatives (identity map without mod_center)."""
        sp = self.space
        if not self.mod_center or len(self.center_codes) == 1:
            return sp.keys(X)
        ks = np.stack([sp.keys(sp.smul(c, X)) for c in self.center_codes])
        return ks.min(axis=0)

    def canon(self, X) -> np.ndarray:
        sp = self.space
        if not self.mod_center or len(self.center_codes) == 1:
            return np.asarray(X)
        cands = np.stack([sp.smul(c, X) for c in self.center_codes])
        ks = np.stack([sp.keys(c) for c in cands])
        best = ks.argmin(axis=0)
        X = np.asarray(X)
        return cands[best, np.arange(len(best))] if X.ndim == 3 else cands[best[0]]

    def canonicalizer(self):
        """The canon map when the quotient is nontrivial, else None."""
        if not self.mod_center or len(self.center_codes) == 1:
            return None
        return self.canon

    def central_quotient_rep(self, x: Matrix) -> Matrix:
        """The least scalar multiple z x over the center."""
        if self.spec.family in ("GL", "GU"):
            raise NonScalarCenter("central quotients are only defined for SL, Sp and SU")
        sp = self.space
        best = min((sp.smul(c, x.a) for c in self.center_codes), key=sp.key)
        return Matrix(sp, best)

    def same_coset(self, a: Matrix, b: Matrix) -> bool:
        """a = b, or a = z b for a central z when mod_center."""
        if not self.mod_center:
            return a == b
        return any(np.array_equal(a.a, self.space.smul(c, b.a)) for c in self.center_codes)

    def rep(self, x: Matrix) -> Matrix:
        return self.central_quotient_rep(x) if self.mod_center else x

    # --- enumeration (implemented in enumerate.py) ------------------------
    def elements(self, cap: int = ENUM_CAP):
        from .enumerate import enumerate_group
        return enumerate_group(self, cap)


def _sl_generators(field, n):
    gens = []
    for i in range(1, n):
        for b in _basis_codes(field):
            x = Matrix.identity(field, n) + Matrix.unit(field, n, i, i + 1, field.from_code(b))
            gens += [x, x.T]
    return gens


def _sp_generators(field, n):
    l = n // 2
    I = Matrix.identity(field, n)
    gens = []
    for b in _basis_codes(field):
        c = field.from_code(b)
        for i in range(1, l):
            x = I + Matrix.unit(field, n, i, i + 1, c) - Matrix.unit(field, n, n - i, n + 1 - i, c)
            gens += [x, x.T]
        x = I + Matrix.unit(field, n, l, l + 1, c)
        gens += [x, x.T]
    return gens


def su_root_elements(field, n, q):
    """Unitriangular elements of the simple twisted root subgroups of SU(n,q) for the form J."""
    I = Matrix.identity(field, n)
    J = antidiag(field, n)
    k = field.m // 2

    def unitary(A):
        return A.frob(k).T @ J @ A == J

    trace0 = [e for e in field.elements() if (e + e**q).code == 0]
    trace0_basis = _span_basis(field, trace0)
    basis = [field.from_code(b) for b in _basis_codes(field)]
    m = n // 2
    gens = []
    for i in range(1, m):
        for xi in basis:
            gens.append(I + Matrix.unit(field, n, i, i + 1, xi) - Matrix.unit(field, n, n - i, n + 1 - i, xi**q))
    if n % 2 == 0:
        for eta in trace0_basis:
            gens.append(I + Matrix.unit(field, n, m, m + 1, eta))
    elif n > 1:
        for eta in trace0_basis:
            gens.append(I + Matrix.unit(field, n, m, m + 2, eta))
        for xi in basis:
            base = I + Matrix.unit(field, n, m, m + 1, xi) - Matrix.unit(field, n, m + 1, m + 2, xi**q)
            for eta in field.elements():
                A = base + Matrix.unit(field, n, m, m + 2, eta)
                if unitary(A):
                    gens.append(A)
                    break
    assert all(unitary(g) for g in gens)
    return gens


class ProductGroup:
    """G_1 x ... x G_k realised block-diagonally over a common field."""

    def __init__(self, factors):
        fields = {f.field for f in factors}
        if len(fields) != 1:
            raise UnsupportedSpec("product factors must share the field of definition")
        self.factors = list(factors)
        self.field = factors[0].field
        self.sizes = [f.n for f in factors]
        self.n = sum(self.sizes)
        self.space = matrix_space(self.field, self.n)
        self.spec = "*".join(str(f.spec) for f in factors)
        self.generators = [self.embed(i, g) for i, f in enumerate(factors) for g in f.generators]
        self._elements = None

    def __repr__(self):
        return f"ProductGroup({self.spec})"

    @property
    def mod_center(self):
        return any(f.mod_center for f in self.factors)

    def _offsets(self):
        out, o = [], 0
        for n in self.sizes:
            out.append(o)
            o += n
        return out

    def embed(self, i: int, g: Matrix) -> Matrix:
        a = np.array(self.space.eye)
        o = self._offsets()[i]
        a[o:o + g.n, o:o + g.n] = g.a
        return Matrix(self.space, a)

    def block_diag(self, blocks) -> Matrix:
        a = np.zeros((self.n, self.n), dtype=self.space.dtype)
        for o, b in zip(self._offsets(), blocks):
            a[o:o + b.n, o:o + b.n] = b.a
        return Matrix(self.space, a)

    def blocks(self, A: Matrix) -> list[Matrix]:
        out = []
        for f, o in zip(self.factors, self._offsets()):
            out.append(Matrix(f.space, A.a[o:o + f.n, o:o + f.n]))
        return out

    def identity(self) -> Matrix:
        return Matrix(self.space, self.space.eye)

    def contains(self, A: Matrix) -> bool:
        if A.space is not self.space:
            return False
        if not np.array_equal(self.block_diag(self.blocks(A)).a, A.a):
            return False
        return all(f.contains(b) for f, b in zip(self.factors, self.blocks(A)))

    def is_central(self, A: Matrix) -> bool:
        return all(f.is_central(b) for f, b in zip(self.factors, self.blocks(A)))

    def same_coset(self, a: Matrix, b: Matrix) -> bool:
        return all(f.same_coset(x, y) for f, x, y in zip(self.factors, self.blocks(a), self.blocks(b)))

    def rep(self, x: Matrix) -> Matrix:
        return self.block_diag([f.rep(b) for f, b in zip(self.factors, self.blocks(x))])

    def canon(self, X):
        X = np.array(X)
        single = X.ndim == 2
        if single:
            X = X[None]
        for f, o in zip(self.factors, self._offsets()):
            X[:, o:o + f.n, o:o + f.n] = f.canon(X[:, o:o + f.n, o:o + f.n])
        return X[0] if single else X

    def canonicalizer(self):
        return self.canon if any(f.canonicalizer() for f in self.factors) else None

    def canon_keys(self, X):
        return self.space.keys(self.canon(X))


def make_group(spec, verify: bool = True):
    """Build the matrix group for a spec (or a spec string such as ``"sp4:3/z"``).

    A product of specs joined by ``*`` (e.g. ``"su4:2*su4:2"``) gives a ProductGroup.
    """
    if isinstance(spec, str) and "*" in spec:
        return ProductGroup([make_group(part, verify) for part in spec.split("*")])
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    field = field_of_order(spec.field_order)
    n = spec.n
    fam = spec.family
    if fam in ("SL", "GL"):
        gens = _sl_generators(field, n)
        if fam == "GL":
            gens.append(Matrix.diag(field, [field.generator] + [1] * (n - 1)))
        return GroupHandle(spec, gens)
    if fam == "Sp":
        return GroupHandle(spec, _sp_generators(field, n), form=symplectic_form(field, n))
    if n < 2 and fam == "SU":
        gens = []
    else:
        us = su_root_elements(field, n, spec.q)
        gens = us + [u.T for u in us]
    if fam == "GU":
        g = field.generator
        gens.append(Matrix.diag(field, [g] + [1] * (n - 2) + [g ** (-spec.q)]))
    G = GroupHandle(spec, gens, form=antidiag(field, n))
    if fam == "SU" and verify and spec.order_formula() <= SU_VERIFY_LIMIT:
        full = G if not spec.mod_center else make_group(spec.with_center(False), verify=False)
        got = len(full.elements())
        if got != spec.order_formula():
            raise UnsupportedSpec(f"generators of {spec} span {got} elements, expected {spec.order_formula()}")
        G.verified_order = got
    return G
