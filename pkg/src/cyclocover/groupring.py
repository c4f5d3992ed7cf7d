"""Arithmetic in Z[y_0, ..., y_{m-1}] / (y_i^d - 1) and its distinguished elements.

Elements are dense coefficient vectors indexed by exponent tuples
(e_0, ..., e_{m-1}) in (Z/d)^m, ordered lexicographically with e_0 slowest.
This index order is part of the wire format: every matrix produced here is
reproducible bit for bit.

Matrices act on the right of row vectors, so mult_matrix(a) sends the
coefficient row of x to the coefficient row of a*x.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import Submodule


@dataclass(frozen=True)
class RingShape:
    """Shape (d, m): m tensor factors of Z[y]/(y^d - 1); ambient rank d**m."""

    d: int
    m: int

    def __post_init__(self):
        assert self.d >= 2 and self.m >= 0

    @property
    def ambient_rank(self):
        return self.d**self.m

    def index_of(self, exps):
        assert len(exps) == self.m
        i = 0
        for e in exps:
            i = i * self.d + (e % self.d)
        return i

    def exps_of(self, index):
        out = []
        for _ in range(self.m):
            out.append(index % self.d)
            index //= self.d
        return tuple(reversed(out))

    def all_exps(self):
        return itertools.product(range(self.d), repeat=self.m)


@dataclass(frozen=True)
class GroupRingElement:
    shape: RingShape
    coeffs: tuple

    def __post_init__(self):
        assert len(self.coeffs) == self.shape.ambient_rank

    @classmethod
    def from_dict(cls, shape, terms):
        coeffs = [0] * shape.ambient_rank
        for exps, c in terms.items():
            coeffs[shape.index_of(exps)] += c
        return cls(shape, tuple(coeffs))

    @classmethod
    def one(cls, shape):
        return cls.monomial(shape, (0,) * shape.m)

    @classmethod
    def monomial(cls, shape, exps):
        coeffs = [0] * shape.ambient_rank
        coeffs[shape.index_of(exps)] = 1
        return cls(shape, tuple(coeffs))

    @classmethod
    def generator(cls, shape, k):
        """The generator y_k."""
        exps = [0] * shape.m
        exps[k] = 1
        return cls.monomial(shape, tuple(exps))

    def _require_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch: %s vs %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._require_same_shape(other)
        return GroupRingElement(
            self.shape, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._require_same_shape(other)
        return GroupRingElement(
            self.shape, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return GroupRingElement(self.shape, tuple(-a for a in self.coeffs))

    def scaled(self, c):
        return GroupRingElement(self.shape, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        """Exact product; exponents reduce mod d componentwise (convolution)."""
        self._require_same_shape(other)
        shape = self.shape
        out = [0] * shape.ambient_rank
        support = [
            (shape.exps_of(i), c) for i, c in enumerate(self.coeffs) if c
        ]
        for j, cb in enumerate(other.coeffs):
            if not cb:
                continue
            eb = shape.exps_of(j)
            for ea, ca in support:
                k = shape.index_of(tuple(x + y for x, y in zip(ea, eb)))
                out[k] += ca * cb
        return GroupRingElement(shape, tuple(out))

    def is_zero(self):
        return not any(self.coeffs)

    def augmentation(self):
        """epsilon: sum of coefficients (each group element maps to 1)."""
        return sum(self.coeffs)

    def bar(self):
        """The anti-involution y_k -> y_k^{-1} on every generator."""
        shape = self.shape
        out = [0] * shape.ambient_rank
        for i, c in enumerate(self.coeffs):
            if c:
                exps = shape.exps_of(i)
                out[shape.index_of(tuple(-e for e in exps))] += c
        return GroupRingElement(shape, tuple(out))

    def embed(self, extra_factors):
        """Tensor with 1: same element viewed in shape (d, m + extra_factors)."""
        assert extra_factors >= 0
        shape = RingShape(self.shape.d, self.shape.m + extra_factors)
        step = self.shape.d**extra_factors
        out = [0] * shape.ambient_rank
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * step] = c
        return GroupRingElement(shape, tuple(out))

    def mult_matrix(self):
        """The d^m x d^m matrix of x -> self*x in the fixed monomial basis."""
        shape = self.shape
        n = shape.ambient_rank
        support = [(shape.exps_of(i), c) for i, c in enumerate(self.coeffs) if c]
        rows = []
        for j in range(n):
            eb = shape.exps_of(j)
            row = [0] * n
            for ea, ca in support:
                row[shape.index_of(tuple(x + y for x, y in zip(ea, eb)))] += ca
            rows.append(row)
        return rows


def phi(d, n):
    """(y_0 - 1)(y_1 - y_0) ... (y_n - y_{n-1}) in shape (d, n+1).

    The conventions phi(-1) = 1 (in shape (d, 0)) and y_{-1} = 1 make the
    degenerate base cases of the tower work out.
    """
    assert n >= -1
    shape = RingShape(d, n + 1)
    acc = GroupRingElement.one(shape)
    prev = GroupRingElement.one(shape)  # y_{-1} := 1
    for k in range(n + 1):
        yk = GroupRingElement.generator(shape, k)
        acc = acc * (yk - prev)
        prev = yk
    return acc


def u_elem(d, m, k=None):
    """u_k = sum of all powers of y_k in shape (d, m); k defaults to m-1."""
    assert m >= 1
    if k is None:
        k = m - 1
    shape = RingShape(d, m)
    coeffs = [0] * shape.ambient_rank
    exps = [0] * m
    for j in range(d):
        exps[k] = j
        coeffs[shape.index_of(tuple(exps))] = 1
    return GroupRingElement(shape, tuple(coeffs))


def one_minus_y(d, m, k=None):
    """1 - y_k in shape (d, m); k defaults to m-1."""
    assert m >= 1
    if k is None:
        k = m - 1
    shape = RingShape(d, m)
    return GroupRingElement.one(shape) - GroupRingElement.generator(shape, k)


def ideal_basis(generators):
    """Z-basis (canonical Hermite form) of the ideal generated by the inputs.

    Spans all monomial multiples of the generators, so the result is closed
    under multiplication by every y_i.
    """
    if not generators:
        raise ValueError("need at least one generator")
    shape = generators[0].shape
    for g in generators[1:]:
        if g.shape != shape:
            raise ValueError("shape mismatch among generators")
    rows = []
    for g in generators:
        support = [(shape.exps_of(i), c) for i, c in enumerate(g.coeffs) if c]
        for mono in shape.all_exps():
            row = [0] * shape.ambient_rank
            for ea, ca in support:
                row[shape.index_of(tuple(x + y for x, y in zip(ea, mono)))] += ca
            rows.append(row)
    return Submodule.from_rows(shape.ambient_rank, rows)
