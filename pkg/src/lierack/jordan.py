"""Chevalley-Jordan (p-) decomposition and unipotent Jordan types."""

from dataclasses import dataclass

import numpy as np

from .errors import NotUnipotent
from .grp.matrix import Matrix, MatrixSpace


@dataclass(frozen=True)
class PDecomposition:
    semisimple: Matrix  # p-regular part g_s
    unipotent: Matrix  # p-part g_u
    p: int
    order: int

    @property
    def parts(self):
        return self.semisimple, self.unipotent


def split_order(n: int, p: int) -> tuple[int, int]:
    """n = p^a * m with p not dividing m; returns (p^a, m)."""
    pa = 1
    while n % p == 0:
        n //= p
        pa *= p
    return pa, n


def decomposition_exponents(n: int, p: int) -> tuple[int, int]:
    """(e_s, e_u) with g_s = g^e_s and g_u = g^e_u for an element of order n."""
    pa, m = split_order(n, p)
    if pa == 1:
        return 1, 0
    if m == 1:
        return 0, 1
    # e_u = m m' with m m' = 1 mod p^a; e_s = p^a k with p^a k = 1 mod m
    e_u = m * pow(m, -1, pa)
    e_s = pa * pow(pa, -1, m)
    return e_s % n, e_u % n


def p_decompose(g: Matrix, p: int | None = None) -> PDecomposition:
    """g = g_s g_u with g_s of order prime to p, g_u of p-power order, both powers of g."""
    p = p or g.field.p
    n = g.order()
    e_s, e_u = decomposition_exponents(n, p)
    return PDecomposition(g**e_s, g**e_u, p, n)


def batch_orders(space: MatrixSpace, X, cap: int = 10_000) -> np.ndarray:
    """Multiplicative orders of a stack of invertible matrices."""
    X = np.asarray(X)
    orders = np.zeros(len(X), dtype=np.int64)
    P = X.copy()
    nn = space.n * space.n
    eye = space.eye.reshape(nn)
    for k in range(1, cap + 1):
        todo = orders == 0
        if not todo.any():
            return orders
        hit = todo & (P.reshape(len(X), nn) == eye).all(axis=1)
        orders[hit] = k
        live = orders == 0
        if live.any():
            P[live] = space.mul(P[live], X[live])
    raise ArithmeticError("element order exceeds cap")


def batch_power(space: MatrixSpace, X, exps) -> np.ndarray:
    """X[i] ** exps[i] by square-and-multiply on the whole stack."""
    X = np.asarray(X)
    exps = np.asarray(exps, dtype=np.int64).copy()
    out = np.broadcast_to(space.eye, X.shape).copy()
    base = X.copy()
    while (exps > 0).any():
        odd = (exps & 1).astype(bool)
        if odd.any():
            out[odd] = space.mul(out[odd], base[odd])
        exps >>= 1
        live = exps > 0
        if live.any():
            base[live] = space.mul(base[live], base[live])
    return out


def p_decompose_batch(space: MatrixSpace, X, p: int | None = None):
    """(g_s stack, g_u stack, orders) for a stack of matrices."""
    p = p or space.field.p
    orders = batch_orders(space, X)
    e = np.array([decomposition_exponents(int(n), p) for n in orders], dtype=np.int64).reshape(-1, 2)
    return batch_power(space, X, e[:, 0]), batch_power(space, X, e[:, 1]), orders


def jordan_partition(u: Matrix) -> tuple[int, ...]:
    """Jordan block sizes of a unipotent matrix, largest first, from the ranks of (u-1)^k."""
    n = u.n
    N = u - Matrix.identity(u.field, n)
    ranks = [n]
    P = Matrix.identity(u.field, n)
    for _ in range(n):
        P = P @ N
        ranks.append(P.rank())
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotUnipotent("u - 1 is not nilpotent")
    # blocks of size >= k: ranks[k-1] - ranks[k]
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    parts = []
    for k in range(1, len(ge)):
        parts += [k] * (ge[k - 1] - ge[k])
    return tuple(sorted(parts, reverse=True))


def format_partition(parts) -> str:
    """(2, 1, 1) -> "(2,1^2)"."""
    out = []
    for k in sorted(set(parts), reverse=True):
        c = parts.count(k)
        out.append(str(k) if c == 1 else f"{k}^{c}")
    return "(" + ",".join(out) + ")"


def unipotent_label(u: Matrix, family: str) -> dict:
    parts = jordan_partition(u)
    return {"partition": list(parts), "label": format_partition(list(parts)),
            "ambiguous": family == "Sp" and u.field.p == 2}


def element_kind(g: Matrix, group) -> str:
    """"central", "semisimple", "unipotent" or "mixed" (mixed: g_s noncentral and g_u != 1)."""
    if group.is_central(g):
        return "central"
    d = p_decompose(g)
    if d.unipotent.is_identity():
        return "semisimple"
    if group.is_central(d.semisimple):
        return "unipotent"
    return "mixed"


is_mixed = element_kind
