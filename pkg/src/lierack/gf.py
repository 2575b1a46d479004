"""
Finite fields GF(p^m) in a fixed polynomial basis.

An element of GF(p^m) = GF(p)[x]/(f) is stored as its coefficient vector
(c_0, ..., c_{m-1}) over GF(p).  Internally every element also has an integer
*code* c_0 + c_1 p + ... + c_{m-1} p^(m-1); the code of a prime-field element
is just its residue, so integer literals such as ``2`` read naturally as
prime-field elements.  The matrix layer works on codes and uses the addition
and multiplication tables of the field, which are built lazily.

The modulus f is the least monic irreducible polynomial of degree m, where
polynomials are ordered by the code of their low coefficients.  This keeps
serialized elements reproducible from (p, m) alone.

Wire format of a scalar: ``{"p": 3, "m": 2, "c": [1, 2]}`` (little-endian).
"""

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DegreeOutOfRange, FieldMismatch, NoIrreducibleFound, NotPrime

MAX_DEGREE = 6
# fields up to this size get dense add/mul tables
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), little-endian coefficient lists -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    """Remainder of a modulo the monic polynomial f."""
    a = _trim(a)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1]
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _monic_polys(p, d):
    """All monic polynomials of degree d, in code order of the low coefficients."""
    for low in product(range(p), repeat=d):
        yield list(reversed(low)) + [1]


def is_irreducible(f, p) -> bool:
    """Trial division by every monic polynomial of degree at most deg(f)/2."""
    d = len(f) - 1
    if d <= 0:
        return False
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(p, k):
            if not _poly_mod(f, g, p):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise NoIrreducibleFound(f"no irreducible polynomial of degree {m} over GF({p})")


class Field:
    """GF(p^m) with a fixed modulus.  Obtain instances through make_field."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self._tables = None
        self._frob = {}
        self.generator = self.from_code(self._find_generator())

    def __repr__(self):
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return (make_field, (self.p, self.m))

    # codes <-> coefficient vectors
    def coeffs(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // p**i) % p for i in range(self.m))

    def code_of(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise FieldMismatch(f"{len(coeffs)} coefficients for {self}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    # slow scalar arithmetic on codes, used before tables exist
    def _mul_codes(self, a, b):
        prod_ = _poly_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        return self.code_of(_poly_mod(prod_, self.modulus, self.p))

    def _pow_code(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_codes(result, base)
            base = self._mul_codes(base, base)
            e >>= 1
        return result

    def _find_generator(self):
        if self.q == 2:
            return 1
        n = self.q - 1
        rs = prime_factors(n)
        for g in range(1, self.q):
            if all(self._pow_code(g, n // r) != 1 for r in rs):
                return g
        raise NoIrreducibleFound("multiplicative group is not cyclic: modulus not irreducible")

    # dense tables
    @property
    def tables(self):
        """(add, mul, neg, inv, log, exp) as numpy arrays over codes."""
        if self._tables is None:
            if self.q > TABLE_LIMIT:
                raise DegreeOutOfRange(f"{self} is too large for dense tables")
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        q, p, m = self.q, self.p, self.m
        codes = np.arange(q)
        digits = np.stack([(codes // p**i) % p for i in range(m)], axis=1)
        weights = p ** np.arange(m)
        add = (((digits[:, None, :] + digits[None, :, :]) % p) * weights).sum(axis=2)
        neg = (((-digits) % p) * weights).sum(axis=1)
        exp = np.zeros(q - 1, dtype=np.int64)
        g, x = self.generator.code, 1
        for i in range(q - 1):
            exp[i] = x
            x = self._mul_codes(x, g)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = np.zeros((q, q), dtype=np.int64)
        nz = codes[1:]
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(-log[nz]) % (q - 1)]
        for t in (add, mul, neg, inv, log, exp):
            t.setflags(write=False)
        return add.astype(np.int64), mul, neg.astype(np.int64), inv, log, exp

    def frob_map(self, k: int = 1) -> np.ndarray:
        """Code table of a -> a^(p^k)."""
        k %= self.m
        if k not in self._frob:
            e = self.p**k
            self._frob[k] = np.array([self._pow_code(a, e) for a in range(self.q)], dtype=np.int64)
        return self._frob[k]

    # element constructors
    def from_code(self, code: int) -> "FieldElem":
        return FieldElem(self, int(code))

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise FieldMismatch(f"{value!r} is not in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, int(value) % self.p)
        return FieldElem(self, self.code_of(value))

    @property
    def zero(self):
        return FieldElem(self, 0)

    @property
    def one(self):
        return FieldElem(self, 1)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    def units(self):
        return [FieldElem(self, c) for c in range(1, self.q)]

    def roots_of_unity(self, n: int):
        """All x with x^n = 1."""
        return [x for x in self.units() if x**n == self.one]

    def primitive_root_of_unity(self, n: int) -> "FieldElem":
        """An element of exact order n (a power of the stored generator)."""
        if (self.q - 1) % n:
            raise FieldMismatch(f"{self} has no element of order {n}")
        return self.generator ** ((self.q - 1) // n)


class FieldElem:
    """An element of a finite field; immutable."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @property
    def coeffs(self):
        return self.field.coeffs(self.code)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _tab(self):
        f = self.field
        return f.tables if f.q <= TABLE_LIMIT else None

    def _add(self, a, b):
        t = self._tab()
        if t is not None:
            return int(t[0][a, b])
        f = self.field
        return f.code_of([(x + y) for x, y in zip(f.coeffs(a), f.coeffs(b))])

    def _mul(self, a, b):
        t = self._tab()
        if t is not None:
            return int(t[1][a, b])
        return self.field._mul_codes(a, b)

    def _neg(self, a):
        f = self.field
        return f.code_of([-x for x in f.coeffs(a)])

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self._add(self.code, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, self._neg(self.code))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self._add(self.code, self._neg(b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self._mul(self.code, b))

    __rmul__ = __mul__

    def inverse(self):
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero")
        t = self._tab()
        if t is not None:
            return FieldElem(self.field, int(t[3][self.code]))
        return FieldElem(self.field, self.field._pow_code(self.code, self.field.q - 2))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FieldElem(self.field, b).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        if self.code == 0:
            return self.field.one if e == 0 else self
        e %= self.field.q - 1
        t = self._tab()
        if t is not None:
            log, exp = t[4], t[5]
            return FieldElem(self.field, int(exp[(int(log[self.code]) * e) % (self.field.q - 1)]))
        return FieldElem(self.field, self.field._pow_code(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.m == 1:
            return str(self.code)
        return f"<{self.field} {list(self.coeffs)}>"

    def order(self) -> int:
        """Multiplicative order."""
        if self.code == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.field.q - 1
        k = n
        for r in prime_factors(n):
            while k % r == 0 and (self ** (k // r)).code == 1:
                k //= r
        return k

    def to_json(self):
        return {"p": self.field.p, "m": self.field.m, "c": list(self.coeffs)}


@lru_cache(maxsize=None)
def _make_field(p: int, m: int) -> Field:
    return Field(p, m, least_irreducible(p, m))


def make_field(p: int, m: int = 1) -> Field:
    """GF(p^m) with the least irreducible modulus; the same object on every call."""
    p, m = int(p), int(m)
    if not is_prime(p):
        raise NotPrime(p)
    if not 1 <= m <= MAX_DEGREE:
        raise DegreeOutOfRange(m)
    return _make_field(p, m)


def field_of_order(q: int) -> Field:
    """GF(q) for a prime power q."""
    for p in prime_factors(q):
        m, r = 0, q
        while r % p == 0:
            r //= p
            m += 1
        if r == 1:
            return make_field(p, m)
    raise NotPrime(f"{q} is not a prime power")


def frobenius(a: FieldElem, k: int = 1) -> FieldElem:
    """a -> a^(p^k)."""
    f = a.field
    if f.q <= TABLE_LIMIT:
        return FieldElem(f, int(f.frob_map(k)[a.code]))
    return a ** (f.p ** (k % f.m))


def hermitian_pairs(field_q2: Field, q: int):
    """All (xi, eta) in GF(q^2)^2 with eta^q + eta = xi^(q+1)."""
    if field_q2.q != q * q:
        raise FieldMismatch(f"{field_q2} is not GF({q}^2)")
    elems = field_q2.elements()
    out = []
    for xi in elems:
        rhs = xi ** (q + 1)
        for eta in elems:
            if eta**q + eta == rhs:
                out.append((xi, eta))
    return out


def fixed_field(big: Field, k: int) -> list[FieldElem]:
    """Elements of big fixed by a -> a^(p^k), i.e. the subfield GF(p^gcd(k,m))."""
    fm = big.frob_map(k)
    return [big.from_code(c) for c in range(big.q) if fm[c] == c]


def embedding(small: Field, big: Field) -> np.ndarray:
    """Code map of a field embedding small -> big (sends x to the least root of small's modulus)."""
    if small.p != big.p or big.m % small.m:
        raise FieldMismatch(f"{small} does not embed in {big}")
    f = small.modulus
    root = None
    for c in range(big.q):
        x = big.from_code(c)
        val = big.zero
        for coef in reversed(f):
            val = val * x + coef
        if val.code == 0:
            root = x
            break
    powers = [root**i for i in range(small.m)]
    out = np.zeros(small.q, dtype=np.int64)
    for c in range(small.q):
        val = big.zero
        for ci, pw in zip(small.coeffs(c), powers):
            val = val + pw * ci
        out[c] = val.code
    return out


def embed(a: FieldElem, big: Field) -> FieldElem:
    return big.from_code(int(embedding(a.field, big)[a.code]))


def to_json(a: FieldElem) -> dict:
    return a.to_json()


def from_json(obj, field: Field | None = None) -> FieldElem:
    """Parse the scalar wire format; a bare int is read in the prime field of `field`."""
    if isinstance(obj, int):
        if field is None:
            raise FieldMismatch("bare integer scalar needs a field")
        return field(obj)
    f = make_field(obj["p"], obj["m"])
    if field is not None and f is not field:
        raise FieldMismatch(f"scalar from {f} where {field} expected")
    c = obj["c"]
    if any(not 0 <= v < f.p for v in c) or len(c) > f.m:
        raise FieldMismatch(f"bad coefficient vector {c} for {f}")
    return f(c)
