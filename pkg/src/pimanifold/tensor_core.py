"""Exact rational tensors on a fixed left-invariant frame.

Every scalar is a :class:`fractions.Fraction`; tensors are dense numpy object
arrays of fractions.  Components are indexed with all contravariant indices
first, then all covariant ones, so a (1,2)-tensor ``Q`` with
``Q(b_i, b_j) = sum_k Q[k, i, j] b_k`` is stored as ``Q.components[k, i, j]``.
"""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimMismatch, MissingMetric, NotSymmetric, SingularMetric, SlotMismatch

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_LETTERS = "abcdefghijklmnopqrstuvw"


def to_rational(value) -> Fraction:
    """Convert ints, fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: silently importing binary rounding error would defeat
    the point of exact identity checks.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_array(values, shape=None) -> np.ndarray:
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_rational(arr[idx])
    if shape is not None and out.shape != tuple(shape):
        raise DimMismatch(f"expected shape {tuple(shape)}, got {out.shape}")
    return out


def zeros(shape) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def identity_matrix(dim: int) -> np.ndarray:
    out = zeros((dim, dim))
    for i in range(dim):
        out[i, i] = ONE
    return out


def basis_vector(dim: int, i: int) -> np.ndarray:
    v = zeros(dim)
    v[i] = ONE
    return v


def einsum(spec: str, *operands) -> np.ndarray:
    """``numpy.einsum`` on object arrays, normalised back to Fractions."""
    res = np.einsum(spec, *operands)
    return rational_array(res)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = rational_array(arr)
    arr.flags.writeable = False
    return arr


class Tensor:
    """Dense frame-indexed tensor of type (contravariant_rank, covariant_rank)."""

    __slots__ = ("components", "contravariant_rank", "covariant_rank", "dim")

    def __init__(self, components, contravariant_rank: int = 0, covariant_rank: int = 0, dim: int | None = None):
        comps = _frozen(components)
        rank = contravariant_rank + covariant_rank
        if contravariant_rank < 0 or covariant_rank < 0:
            raise ValueError("ranks must be non-negative")
        if comps.ndim != rank:
            raise DimMismatch(f"components have {comps.ndim} axes, rank is {rank}")
        if rank == 0:
            if dim is None:
                raise ValueError("dim is required for rank-0 tensors")
        else:
            if dim is None:
                dim = comps.shape[0]
            if any(n != dim for n in comps.shape):
                raise DimMismatch(f"all axes must have length {dim}, got {comps.shape}")
        if dim <= 0:
            raise ValueError("dim must be positive")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "contravariant_rank", contravariant_rank)
        object.__setattr__(self, "covariant_rank", covariant_rank)
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    # construction helpers
    @classmethod
    def zeros(cls, dim: int, contravariant_rank: int = 0, covariant_rank: int = 0) -> "Tensor":
        return cls(zeros((dim,) * (contravariant_rank + covariant_rank)), contravariant_rank, covariant_rank, dim)

    @classmethod
    def scalar(cls, value, dim: int) -> "Tensor":
        return cls(np.array(to_rational(value), dtype=object), 0, 0, dim)

    @classmethod
    def vector(cls, values) -> "Tensor":
        return cls(rational_array(values), 1, 0)

    @classmethod
    def form(cls, values) -> "Tensor":
        return cls(rational_array(values), 0, 1)

    @classmethod
    def covariant(cls, values) -> "Tensor":
        arr = rational_array(values)
        return cls(arr, 0, arr.ndim)

    @classmethod
    def identity(cls, dim: int) -> "Tensor":
        return cls(identity_matrix(dim), 1, 1)

    # introspection
    @property
    def rank(self) -> int:
        return self.contravariant_rank + self.covariant_rank

    @property
    def type(self) -> tuple[int, int]:
        return (self.contravariant_rank, self.covariant_rank)

    @property
    def value(self) -> Fraction:
        if self.rank != 0:
            raise SlotMismatch("only rank-0 tensors have a scalar value")
        return self.components[()]

    def __getitem__(self, idx):
        return self.components[idx]

    def is_zero(self) -> bool:
        return not any(self.components.flat)

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Nonzero components as ``(index_tuple, value)`` pairs in index order."""
        return [(idx, self.components[idx]) for idx in np.ndindex(self.components.shape) if self.components[idx]]

    def max_abs(self) -> Fraction:
        return max((abs(v) for v in self.components.flat), default=ZERO)

    def witness(self) -> tuple[int, ...] | None:
        """First index tuple (in index order) attaining the largest absolute value."""
        best, where = ZERO, None
        for idx, v in self.nonzero():
            if abs(v) > best:
                best, where = abs(v), idx
        return where

    # arithmetic
    def _check_compatible(self, other: "Tensor") -> None:
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if self.dim != other.dim or self.type != other.type:
            raise DimMismatch(f"type {self.type}/dim {self.dim} vs type {other.type}/dim {other.dim}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        return Tensor(self.components + other.components, *self.type, dim=self.dim)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        return Tensor(self.components - other.components, *self.type, dim=self.dim)

    def __neg__(self) -> "Tensor":
        return Tensor(-self.components, *self.type, dim=self.dim)

    def __mul__(self, scalar) -> "Tensor":
        if isinstance(scalar, Tensor):
            return NotImplemented
        return Tensor(self.components * to_rational(scalar), *self.type, dim=self.dim)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.type == other.type
            and bool(np.all(self.components == other.components))
        )

    def __hash__(self):
        return hash((self.dim, self.type, tuple(self.components.flat)))

    def __repr__(self) -> str:
        nz = self.nonzero()
        shown = ", ".join(f"{idx}: {v}" for idx, v in nz[:6])
        more = ", ..." if len(nz) > 6 else ""
        return f"Tensor(type={self.type}, dim={self.dim}, nonzero={{{shown}{more}}})"

    def permute(self, *order: int) -> "Tensor":
        """Reorder covariant slots; ``order`` lists the old covariant slot for each new one."""
        if self.contravariant_rank:
            raise SlotMismatch("permute is defined for covariant tensors only")
        if sorted(order) != list(range(self.covariant_rank)):
            raise SlotMismatch(f"{order} is not a permutation of the covariant slots")
        return Tensor(np.transpose(self.components, order), 0, self.covariant_rank, dim=self.dim)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    if a.dim != b.dim:
        raise DimMismatch("tensor product of different dimensions")
    pa, qa = a.type
    pb, qb = b.type
    la = _LETTERS[: a.rank]
    lb = _LETTERS[a.rank : a.rank + b.rank]
    out = la[:pa] + lb[:pb] + la[pa:] + lb[pb:]
    return Tensor(einsum(f"{la},{lb}->{out}", a.components, b.components), pa + pb, qa + qb, dim=a.dim)


@dataclass(frozen=True, eq=False)
class MetricPair:
    """A nondegenerate symmetric (0,2)-tensor together with its exact inverse."""

    g: Tensor
    g_inv: Tensor

    def __post_init__(self):
        if self.g.type != (0, 2) or self.g_inv.type != (2, 0):
            raise SlotMismatch("metric must be (0,2) and its inverse (2,0)")
        if self.g.dim != self.g_inv.dim:
            raise DimMismatch("metric and inverse have different dimensions")
        g, gi = self.g.components, self.g_inv.components
        if not (np.all(g == g.T) and np.all(gi == gi.T)):
            raise NotSymmetric("metric pair must be symmetric")
        if not np.all(einsum("ij,jk->ik", g, gi) == identity_matrix(self.g.dim)):
            raise SingularMetric("g_inv is not the inverse of g")

    @property
    def dim(self) -> int:
        return self.g.dim

    def __eq__(self, other):
        if not isinstance(other, MetricPair):
            return NotImplemented
        return self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def inner(self, x, y) -> Fraction:
        """g(x, y) for component vectors x, y."""
        return multilinear(self.g.components, x, y)


def matrix_inverse(matrix) -> np.ndarray:
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = matrix.shape[0]
    aug = np.concatenate([rational_array(matrix), identity_matrix(n)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] != 0), None)
        if pivot is None:
            raise SingularMetric("metric has zero determinant")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, n:]


def metric_inverse(g: Tensor) -> MetricPair:
    """Exact inverse of a symmetric (0,2)-tensor by Gauss-Jordan elimination."""
    if g.type != (0, 2):
        raise SlotMismatch(f"metric must be a (0,2)-tensor, got {g.type}")
    comps = g.components
    if not np.all(comps == comps.T):
        raise NotSymmetric("g(i,j) != g(j,i)")
    inv = matrix_inverse(comps)
    return MetricPair(g, Tensor(inv, 2, 0))


def inertia(matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Computed by exact symmetric Gaussian elimination (congruence), so the
    result is Sylvester's inertia without any eigenvalue computation.
    """
    a = rational_array(matrix).copy()
    n = a.shape[0]
    if a.shape != (n, n) or not np.all(a == a.T):
        raise NotSymmetric("inertia needs a square symmetric matrix")
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i, i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i, j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j makes a[i, i] = 2 a[i, j] != 0
            a[i, :] = a[i, :] + a[j, :]
            a[:, i] = a[:, i] + a[:, j]
            piv = i
        if piv != k:
            a[[k, piv], :] = a[[piv, k], :]
            a[:, [k, piv]] = a[:, [piv, k]]
        p = a[k, k]
        for r in range(k + 1, n):
            if a[r, k] != 0:
                f = a[r, k] / p
                a[r, :] = a[r, :] - f * a[k, :]
                a[:, r] = a[:, r] - f * a[:, k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, n - pos - neg


def contract(t: Tensor, slot_a: int, slot_b: int, metric: MetricPair | None = None) -> Tensor:
    """Trace a tensor over two index slots.

    Slots are positions in the full index list (contravariant slots first).  A
    mixed pair is traced directly; a same-type pair is traced through the
    metric, i.e. with ``g^{ij}`` for two covariant slots.
    """
    r = t.rank
    if not (0 <= slot_a < r and 0 <= slot_b < r) or slot_a == slot_b:
        raise SlotMismatch(f"invalid slots {slot_a}, {slot_b} for rank {r}")
    p = t.contravariant_rank
    a_up, b_up = slot_a < p, slot_b < p
    letters = list(_LETTERS[:r])
    keep = [letters[i] for i in range(r) if i not in (slot_a, slot_b)]
    new_p = p - int(a_up) - int(b_up)
    if a_up != b_up:
        letters[slot_b] = letters[slot_a]
        comps = einsum(f"{''.join(letters)}->{''.join(keep)}", t.components)
    else:
        if metric is None:
            raise MissingMetric("contracting two slots of the same type needs a metric")
        if metric.dim != t.dim:
            raise DimMismatch("metric dimension differs from tensor dimension")
        m = metric.g_inv.components if not a_up else metric.g.components
        spec = f"{''.join(letters)},{letters[slot_a]}{letters[slot_b]}->{''.join(keep)}"
        comps = einsum(spec, t.components, m)
    return Tensor(comps, new_p, r - 2 - new_p, dim=t.dim)


def sharp(form: Tensor, metric: MetricPair) -> Tensor:
    """Metric dual vector of a 1-form: ``form(.) = g(sharp, .)``."""
    if form.type != (0, 1):
        raise SlotMismatch(f"sharp expects a (0,1)-tensor, got {form.type}")
    return Tensor(einsum("ab,b->a", metric.g_inv.components, form.components), 1, 0)


def flat(vector: Tensor, metric: MetricPair) -> Tensor:
    if vector.type != (1, 0):
        raise SlotMismatch(f"flat expects a (1,0)-tensor, got {vector.type}")
    return Tensor(einsum("ab,a->b", metric.g.components, vector.components), 0, 1)


def lower_last(t: Tensor, metric: MetricPair) -> Tensor:
    """Lower the (single) contravariant index into a new last covariant slot.

    ``T(x, y, z) = g(T(x, y), z)`` for a (1,2)-tensor ``T``.
    """
    if t.contravariant_rank != 1:
        raise SlotMismatch("lower_last expects exactly one contravariant index")
    q = t.covariant_rank
    cov = _LETTERS[1 : 1 + q]
    comps = einsum(f"a{cov},az->{cov}z", t.components, metric.g.components)
    return Tensor(comps, 0, q + 1, dim=t.dim)


def raise_last(t: Tensor, metric: MetricPair) -> Tensor:
    """Inverse of :func:`lower_last`."""
    if t.contravariant_rank != 0 or t.covariant_rank < 1:
        raise SlotMismatch("raise_last expects a covariant tensor")
    q = t.covariant_rank
    cov = _LETTERS[1:q]
    comps = einsum(f"{cov}z,za->a{cov}", t.components, metric.g_inv.components)
    return Tensor(comps, 1, q - 1, dim=t.dim)


def kulkarni_nomizu(S: Tensor, P: Tensor) -> Tensor:
    """(S (owedge) P)(x,y,z,w) = S(x,z)P(y,w) - S(y,z)P(x,w) + S(y,w)P(x,z) - S(x,w)P(y,z)."""
    if S.type != (0, 2) or P.type != (0, 2):
        raise SlotMismatch("Kulkarni-Nomizu product needs two (0,2)-tensors")
    if S.dim != P.dim:
        raise DimMismatch("Kulkarni-Nomizu factors have different dimensions")
    s, p = S.components, P.components
    comps = (
        einsum("xz,yw->xyzw", s, p)
        - einsum("yz,xw->xyzw", s, p)
        + einsum("yw,xz->xyzw", s, p)
        - einsum("xw,yz->xyzw", s, p)
    )
    return Tensor(comps, 0, 4, dim=S.dim)


@dataclass(frozen=True, eq=False)
class Connection:
    """Affine connection coefficients in the frame: ``D_{b_i} b_j = sum_k gamma[i, j, k] b_k``."""

    gamma: np.ndarray
    label: str = "other"

    def __post_init__(self):
        arr = _frozen(self.gamma)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise DimMismatch(f"connection coefficients must be d x d x d, got {arr.shape}")
        object.__setattr__(self, "gamma", arr)

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return self.gamma.shape == other.gamma.shape and bool(np.all(self.gamma == other.gamma))

    def __hash__(self):
        return hash(tuple(self.gamma.flat))

    def apply(self, x, y) -> np.ndarray:
        """D_x y for constant-coefficient vector fields x, y."""
        return einsum("i,j,ijk->k", rational_array(x), rational_array(y), self.gamma)

    def difference(self, other: "Connection") -> Tensor:
        """The (1,2)-tensor ``self - other`` with components ``[k, i, j]``."""
        if self.dim != other.dim:
            raise DimMismatch("connections of different dimensions")
        return Tensor(np.transpose(self.gamma - other.gamma, (2, 0, 1)), 1, 2)

    @classmethod
    def zero(cls, dim: int, label: str = "other") -> "Connection":
        return cls(zeros((dim, dim, dim)), label)


def covariant_derivative(t: Tensor, conn: Connection) -> Tensor:
    """Covariant derivative of a left-invariant tensor field.

    Frame components are constant, so only the connection terms survive.  The
    direction becomes the first covariant slot of the result:
    ``(D t)[..., i, j1, ..., jq] = (D_{b_i} t)(b_{j1}, ..., b_{jq})``.
    """
    if conn.dim != t.dim:
        raise DimMismatch("connection and tensor dimensions differ")
    p, q = t.type
    letters = _LETTERS[: p + q]
    direction, dummy = "y", "z"
    out = letters[:p] + direction + letters[p:]
    total = zeros((t.dim,) * (p + q + 1))
    for s in range(p + q):
        replaced = letters[:s] + dummy + letters[s + 1 :]
        if s < p:
            spec = f"{direction}{dummy}{letters[s]},{replaced}->{out}"
            total = total + einsum(spec, conn.gamma, t.components)
        else:
            spec = f"{direction}{letters[s]}{dummy},{replaced}->{out}"
            total = total - einsum(spec, conn.gamma, t.components)
    return Tensor(total, p, q + 1, dim=t.dim)


def multilinear(components: np.ndarray, *vectors) -> Fraction:
    """Evaluate a covariant tensor on vectors, skipping zero coefficients."""
    if len(vectors) != components.ndim:
        raise SlotMismatch(f"{components.ndim} arguments expected, got {len(vectors)}")
    supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
    total = ZERO
    for combo in itertools.product(*supports):
        c = components[tuple(i for i, _ in combo)]
        if c:
            for _, coeff in combo:
                c = c * coeff
            total += c
    return total


def tabulate(dim: int, rank: int, fn) -> np.ndarray:
    """Array ``A[i1..ir] = fn(b_i1, ..., b_ir)`` over all frame-vector tuples."""
    frame = [basis_vector(dim, i) for i in range(dim)]
    out = zeros((dim,) * rank)
    for idx in np.ndindex(out.shape):
        out[idx] = to_rational(fn(*(frame[i] for i in idx)))
    return out


def tabulate_vectors(dim: int, rank: int, fn) -> np.ndarray:
    """Array ``A[k, i1..ir]`` holding the frame components of ``fn(b_i1, ..., b_ir)``."""
    frame = [basis_vector(dim, i) for i in range(dim)]
    out = zeros((dim,) * (rank + 1))
    for idx in np.ndindex((dim,) * rank):
        out[(slice(None),) + idx] = rational_array(fn(*(frame[i] for i in idx)))
    return out
