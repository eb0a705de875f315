"""Slow, loop-only reference computations used as independent test oracles.

Nothing here imports numpy or the library's tensor code: inputs are nested
lists of Fractions and every formula is written out index by index.
"""

from fractions import Fraction
from itertools import product


def to_lists(arr):
    if hasattr(arr, "tolist"):
        arr = arr.tolist()
    if isinstance(arr, list):
        return [to_lists(a) for a in arr]
    return Fraction(arr)


def inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def levi_civita(c, g):
    """``G[i][j][k]`` with ``nabla_{b_i} b_j = sum_k G[i][j][k] b_k`` (Koszul, invariant fields)."""
    d = len(g)
    gi = inverse(g)

    def gb(i, j, k):  # g([b_i, b_j], b_k)
        return sum(c[i][j][m] * g[m][k] for m in range(d))

    low = [[[(gb(i, j, k) - gb(j, k, i) + gb(k, i, j)) / 2 for k in range(d)] for j in range(d)] for i in range(d)]
    return [[[sum(low[i][j][k] * gi[k][l] for k in range(d)) for l in range(d)] for j in range(d)] for i in range(d)]


def apply_connection(G, x, y):
    d = len(G)
    return [sum(x[i] * y[j] * G[i][j][k] for i in range(d) for j in range(d)) for k in range(d)]


def basis(d, i):
    return [Fraction(int(k == i)) for k in range(d)]


def curvature(c, g, G):
    """``R[i][j][k][l] = g(D_i D_j b_k - D_j D_i b_k - D_[b_i,b_j] b_k, b_l)`` with constant frame."""
    d = len(g)
    e = [basis(d, i) for i in range(d)]
    R = [[[[Fraction(0)] * d for _ in range(d)] for _ in range(d)] for _ in range(d)]
    for i, j, k in product(range(d), repeat=3):
        a = apply_connection(G, e[i], apply_connection(G, e[j], e[k]))
        b = apply_connection(G, e[j], apply_connection(G, e[i], e[k]))
        br = c[i][j]
        cc = apply_connection(G, br, e[k])
        v = [a[m] - b[m] - cc[m] for m in range(d)]
        for l in range(d):
            R[i][j][k][l] = sum(v[m] * g[m][l] for m in range(d))
    return R


def ricci(R, g, phi=None):
    """``rho(x,y) = g^{ab} R(b_a, x, y, b_b)``; with ``phi`` the last slot is ``phi b_b``."""
    d = len(g)
    gi = inverse(g)

    def last(a, x, y, b):
        if phi is None:
            return R[a][x][y][b]
        return sum(R[a][x][y][m] * phi[m][b] for m in range(d))

    return [[sum(gi[a][b] * last(a, x, y, b) for a in range(d) for b in range(d)) for y in range(d)] for x in range(d)]


def trace(S, g):
    gi = inverse(g)
    d = len(g)
    return sum(gi[a][b] * S[a][b] for a in range(d) for b in range(d))


def fundamental(c, g, phi, G):
    """``F[x][y][z] = g((D_x phi) y, z)`` on basis vectors, ``phi[a][i]`` = a-th component of phi(b_i)."""
    d = len(g)
    e = [basis(d, i) for i in range(d)]

    def phi_v(v):
        return [sum(phi[a][i] * v[i] for i in range(d)) for a in range(d)]

    F = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for x, y, z in product(range(d), repeat=3):
        dphi_y = [
            p - q for p, q in zip(apply_connection(G, e[x], phi_v(e[y])), phi_v(apply_connection(G, e[x], e[y])))
        ]
        F[x][y][z] = sum(dphi_y[m] * g[m][z] for m in range(d))
    return F


def nonzero(nested, prefix=()):
    if isinstance(nested, list):
        out = []
        for i, sub in enumerate(nested):
            out += nonzero(sub, prefix + (i,))
        return out
    return [(prefix, nested)] if nested != 0 else []
