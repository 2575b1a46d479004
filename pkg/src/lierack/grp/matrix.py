"""
Matrices over GF(q), single and batched.

A matrix is an array of field codes (see ``gf``).  ``MatrixSpace`` holds the
arithmetic for one (field, n) pair and works on stacks of shape (..., n, n),
so closures and orbits can move whole BFS frontiers at once.  Over a prime
field a product is an integer matmul mod p; over an extension field it goes
through the add/mul tables.

Every matrix has an integer *key*: its row-major codes read as digits in base
q, first entry most significant.  Keys therefore sort exactly like the byte
serialization of the entries, and the least key is the canonical
representative wherever one is needed.  When q^(n^2) does not fit in int64 the
key falls back to a Python int (object arrays; slower but exact).
"""

from functools import lru_cache

import numpy as np

from ..errors import FieldMismatch
from ..gf import Field, FieldElem, from_json as scalar_from_json, make_field

_CHUNK = 1 << 15


class MatrixSpace:
    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.q = field.q
        self.prime = field.m == 1
        self.dtype = np.uint8 if field.q <= 256 else np.uint16
        self.int_keys = field.q ** (n * n) < 2**62
        self._weights = None
        if self.int_keys:
            self._weights = np.array([field.q ** (n * n - 1 - k) for k in range(n * n)], dtype=np.int64)
        add, mul, neg, inv, _, _ = field.tables
        self.add_t, self.mul_t, self.neg_t, self.inv_t = add, mul, neg, inv
        self.eye = np.eye(n, dtype=self.dtype)

    def __repr__(self):
        return f"MatrixSpace({self.field}, {self.n})"

    def __reduce__(self):
        return (matrix_space, (self.field, self.n))

    # --- batched arithmetic ------------------------------------------------
    def mul(self, A, B):
        """Products A @ B over GF(q), broadcasting over leading axes."""
        A = np.asarray(A)
        B = np.asarray(B)
        if self.prime:
            return ((A.astype(np.int64) @ B.astype(np.int64)) % self.q).astype(self.dtype)
        shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2])
        if len(shape) == 1 and shape[0] > _CHUNK:
            A = np.broadcast_to(A, shape + A.shape[-2:])
            B = np.broadcast_to(B, shape + B.shape[-2:])
            return np.concatenate([self.mul(A[i:i + _CHUNK], B[i:i + _CHUNK])
                                   for i in range(0, shape[0], _CHUNK)])
        terms = self.mul_t[A[..., :, :, None], B[..., None, :, :]]
        acc = terms[..., :, 0, :]
        for k in range(1, self.n):
            acc = self.add_t[acc, terms[..., :, k, :]]
        return acc.astype(self.dtype)

    def conj(self, g, X, g_inv=None):
        """g X g^-1 for a single g and a stack X."""
        if g_inv is None:
            g_inv = self.inv(g)
        return self.mul(self.mul(g, X), g_inv)

    def add(self, A, B):
        if self.prime:
            return ((A.astype(np.int64) + B) % self.q).astype(self.dtype)
        return self.add_t[A, B].astype(self.dtype)

    def neg(self, A):
        return self.neg_t[A].astype(self.dtype)

    def sub(self, A, B):
        return self.add(A, self.neg(B))

    def smul(self, c: int, A):
        """Scalar multiple by the field element with code c."""
        return self.mul_t[c, A].astype(self.dtype)

    def frob(self, A, k: int = 1):
        return self.field.frob_map(k)[A].astype(self.dtype)

    def transpose(self, A):
        return np.swapaxes(A, -1, -2)

    def scalar(self, c: int):
        return (self.eye * c).astype(self.dtype)

    def is_scalar_multiple(self, A, B):
        """Codes c with A = c B (empty if none)."""
        return [c for c in range(1, self.q) if np.array_equal(A, self.smul(c, B))]

    # --- keys --------------------------------------------------------------
    def keys(self, A):
        A = np.asarray(A)
        flat = A.reshape(-1, self.n * self.n)
        if self.int_keys:
            return flat.astype(np.int64) @ self._weights
        out = np.empty(len(flat), dtype=object)
        q = self.q
        for i, row in enumerate(flat.tolist()):
            k = 0
            for v in row:
                k = k * q + v
            out[i] = k
        return out

    def key(self, A) -> int:
        return int(self.keys(A)[0])

    def from_keys(self, keys):
        keys = np.asarray(keys)
        nn = self.n * self.n
        out = np.empty((len(keys), nn), dtype=self.dtype)
        if self.int_keys:
            k = keys.astype(np.int64).copy()
            for j in range(nn - 1, -1, -1):
                out[:, j] = k % self.q
                k //= self.q
        else:
            for i, kk in enumerate(keys.tolist()):
                for j in range(nn - 1, -1, -1):
                    kk, out[i, j] = divmod(kk, self.q)
        return out.reshape(-1, self.n, self.n)

    # --- single-matrix linear algebra -------------------------------------
    def _rref(self, A):
        """Row reduction on a copy; returns (rank, det code, reduced rows) for square inputs."""
        M = [list(map(int, row)) for row in np.asarray(A)]
        rows, cols = len(M), len(M[0])
        add, mul, neg, inv = self.add_t, self.mul_t, self.neg_t, self.inv_t
        det, r = 1, 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if M[i][c]), None)
            if piv is None:
                det = 0
                continue
            if piv != r:
                M[r], M[piv] = M[piv], M[r]
                det = int(neg[det])
            pv = M[r][c]
            det = int(mul[det, pv])
            ip = int(inv[pv])
            M[r] = [int(mul[ip, v]) for v in M[r]]
            for i in range(rows):
                if i != r and M[i][c]:
                    f = int(neg[M[i][c]])
                    M[i] = [int(add[a, mul[f, b]]) for a, b in zip(M[i], M[r])]
            r += 1
            if r == rows:
                break
        if r < min(rows, cols):
            det = 0
        return r, det, M

    def rank(self, A) -> int:
        return self._rref(A)[0]

    def det(self, A) -> int:
        return self._rref(A)[1] if len(A) == len(A[0]) else 0

    def inv(self, A):
        n = self.n
        aug = np.concatenate([np.asarray(A), self.eye], axis=1)
        r, _, M = self._rref(aug)
        left = np.array([row[:n] for row in M])
        if r < n or not np.array_equal(left, self.eye):
            raise ZeroDivisionError("singular matrix")
        return np.array([row[n:] for row in M], dtype=self.dtype)

    def power(self, A, e: int):
        if e < 0:
            return self.power(self.inv(A), -e)
        result, base = self.eye.copy(), np.asarray(A)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def order(self, A, cap: int = 10**6) -> int:
        """Multiplicative order by iteration."""
        X = np.asarray(A)
        P = X
        for k in range(1, cap + 1):
            if np.array_equal(P, self.eye):
                return k
            P = self.mul(P, X)
        raise ArithmeticError("order exceeds cap")


@lru_cache(maxsize=None)
def matrix_space(field: Field, n: int) -> MatrixSpace:
    return MatrixSpace(field, n)


class Matrix:
    """An immutable n x n matrix over a finite field."""

    __slots__ = ("space", "a", "_key")

    def __init__(self, space: MatrixSpace, a):
        a = np.array(a, dtype=space.dtype)
        a.setflags(write=False)
        self.space = space
        self.a = a
        self._key = None

    # construction
    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        """Rows of ints (read in the prime field) or FieldElems."""
        n = len(rows)
        codes = [[field(v).code for v in row] for row in rows]
        if any(len(r) != n for r in codes):
            raise ValueError("matrix must be square")
        return cls(matrix_space(field, n), codes)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        sp = matrix_space(field, n)
        return cls(sp, sp.eye)

    @classmethod
    def diag(cls, field: Field, entries) -> "Matrix":
        n = len(entries)
        rows = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(field, rows)

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int, c=1) -> "Matrix":
        """c * e_{i,j}, 1-indexed."""
        rows = [[0] * n for _ in range(n)]
        rows[i - 1][j - 1] = c
        return cls.from_rows(field, rows)

    def _wrap(self, a):
        return Matrix(self.space, a)

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def key(self) -> int:
        if self._key is None:
            self._key = self.space.key(self.a)
        return self._key

    def _check(self, other):
        if not isinstance(other, Matrix):
            return False
        if other.space is not self.space:
            raise FieldMismatch(f"{self.space} vs {other.space}")
        return True

    # arithmetic
    def __matmul__(self, other):
        if not self._check(other):
            return NotImplemented
        return self._wrap(self.space.mul(self.a, other.a))

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return self._wrap(self.space.add(self.a, other.a))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self._wrap(self.space.sub(self.a, other.a))

    def __neg__(self):
        return self._wrap(self.space.neg(self.a))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self._wrap(self.space.smul(self.field(c).code, self.a))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self._wrap(self.space.power(self.a, int(e)))

    def inv(self) -> "Matrix":
        return self._wrap(self.space.inv(self.a))

    @property
    def T(self) -> "Matrix":
        return self._wrap(self.a.T)

    def frob(self, k: int = 1) -> "Matrix":
        return self._wrap(self.space.frob(self.a, k))

    def conj(self, other: "Matrix") -> "Matrix":
        """self ▷ other = self other self^-1."""
        return self @ other @ self.inv()

    def det(self) -> FieldElem:
        return self.field.from_code(self.space.det(self.a))

    def rank(self) -> int:
        return self.space.rank(self.a)

    def order(self) -> int:
        return self.space.order(self.a)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.a, self.space.eye))

    def commutes(self, other: "Matrix") -> bool:
        return self @ other == other @ self

    # access
    def __getitem__(self, ij) -> FieldElem:
        """Entry (i, j), 1-indexed as in printed matrices."""
        i, j = ij
        return self.field.from_code(int(self.a[i - 1, j - 1]))

    def rows(self):
        f = self.field
        return [[f.from_code(int(v)) for v in row] for row in self.a]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.space is other.space and bool(np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.field.q, self.n, self.key))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        if self.field.m == 1:
            body = "; ".join(" ".join(str(int(v)) for v in row) for row in self.a)
        else:
            body = "; ".join(" ".join(str(int(v)) for v in row) for row in self.a)
            body += f" (codes in {self.field})"
        return f"Matrix[{body}]"

    # wire format
    def to_json(self) -> dict:
        return {"n": self.n, "q": self.field.q,
                "rows": [[e.to_json() for e in row] for row in self.rows()]}

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> "Matrix":
        n = obj["n"]
        rows = obj["rows"]
        if field is None:
            first = next((v for row in rows for v in row if isinstance(v, dict)), None)
            if first is None:
                from ..gf import field_of_order
                field = field_of_order(obj["q"])
            else:
                field = make_field(first["p"], first["m"])
        if field.q != obj.get("q", field.q):
            raise FieldMismatch(f"matrix declares q={obj['q']} but entries lie in {field}")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix JSON has wrong shape")
        return cls.from_rows(field, [[scalar_from_json(v, field) for v in row] for row in rows])


def stack(mats) -> np.ndarray:
    return np.stack([m.a for m in mats])
