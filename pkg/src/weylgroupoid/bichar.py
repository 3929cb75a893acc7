"""Bicharacters, generalized Dynkin diagrams and local reflection data.

A bicharacter on Z^n is stored as the n x n matrix q[i][j] = chi(a_i, a_j) of
``CycScalar`` values; bi-multiplicativity extends it to arbitrary integer
vectors.  Twist-equivalence (same diagonal, same products q_ij*q_ji) is
captured by :class:`ObjectKey`, the vertex-object datum of the Weyl groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exactnum import CycScalar, ScalarWorkspace, q_number_is_zero, solve_pow_eq


class InfiniteType(ValueError):
    """An N_ij needed by a reflection is infinite."""


@dataclass(frozen=True)
class Bicharacter:
    q: tuple[tuple[CycScalar, ...], ...]

    def __post_init__(self):
        n = len(self.q)
        rows = tuple(tuple(row) for row in self.q)
        if any(len(row) != n for row in rows):
            raise ValueError("bicharacter matrix must be square")
        object.__setattr__(self, "q", rows)

    @property
    def rank(self) -> int:
        return len(self.q)

    @property
    def space(self) -> ScalarWorkspace:
        return self.q[0][0].space

    def value(self, lam, mu) -> CycScalar:
        """chi(lam, mu) for integer vectors, expanded bi-multiplicatively."""
        out = self.space.one()
        for a, la in enumerate(lam):
            if not la:
                continue
            for b, mb in enumerate(mu):
                if mb:
                    out = out * self.q[a][b] ** (int(la) * int(mb))
        return out

    def product(self, i: int, j: int) -> CycScalar:
        return self.q[i][j] * self.q[j][i]


@dataclass(frozen=True)
class ObjectKey:
    """Twist-equivalence class datum: diagonal plus products for i < j."""

    diag: tuple[CycScalar, ...]
    offdiag: tuple[CycScalar, ...]  # row-major pairs (0,1), (0,2), ..., (n-2,n-1)

    @property
    def rank(self) -> int:
        return len(self.diag)

    def product(self, i: int, j: int) -> CycScalar:
        if i == j:
            return self.diag[i] ** 2
        if i > j:
            i, j = j, i
        n = self.rank
        idx = i * n - i * (i + 1) // 2 + (j - i - 1)
        return self.offdiag[idx]

    def short_hash(self) -> str:
        import hashlib

        h = hashlib.sha256(repr(self).encode()).hexdigest()
        return h[:8]


@dataclass(frozen=True)
class DynkinDiagram:
    """Vertex labels q_ii; edges {i, j} carrying q_ij*q_ji wherever it is != 1."""

    vertices: tuple[CycScalar, ...]
    edges: tuple[tuple[int, int, CycScalar], ...]

    @staticmethod
    def from_key(key: ObjectKey) -> DynkinDiagram:
        n = key.rank
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                p = key.product(i, j)
                if not p.is_one:
                    edges.append((i, j, p))
        return DynkinDiagram(tuple(key.diag), tuple(edges))

    def is_connected(self) -> bool:
        n = len(self.vertices)
        adj = {i: set() for i in range(n)}
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n


def n_ij(chi: Bicharacter, i: int, j: int, cap: int = 8) -> int | None:
    """Least k >= 0 with (k+1)_{q_ii} = 0 or q_ii^k * q_ij * q_ji = 1.

    None means infinite.  ``cap`` is kept for interface compatibility; both
    branches are solved exactly, so finite answers beyond the cap are still
    returned and None is an exact verdict.
    """
    if i == j:
        raise ValueError("n_ij needs i != j")
    qii = chi.q[i][i]
    prod = chi.product(i, j)
    candidates = []
    order = qii.mult_order()
    if order is not None and order > 1:
        candidates.append(order - 1)  # (k+1)_{q_ii} = 0 at k+1 = order
    k2 = solve_pow_eq(qii, prod, None)
    if k2 is not None:
        candidates.append(k2)
    return min(candidates) if candidates else None


def n_matrix(chi: Bicharacter) -> list[list[int | None]]:
    n = chi.rank
    return [[0 if i == j else n_ij(chi, i, j) for j in range(n)] for i in range(n)]


def reflection_s_i(chi: Bicharacter, i: int) -> np.ndarray:
    """Matrix of s_i: a_i -> -a_i, a_j -> a_j + N_ij a_i (columns = images)."""
    n = chi.rank
    s = np.eye(n, dtype=np.int64)
    s[i, i] = -1
    for j in range(n):
        if j == i:
            continue
        nij = n_ij(chi, i, j)
        if nij is None:
            raise InfiniteType(f"N_{i+1},{j+1} is infinite")
        s[i, j] = nij
    return s


def tau_i(chi: Bicharacter, i: int) -> Bicharacter:
    """(tau_i chi)(a_k, a_l) = chi(s_i a_k, s_i a_l); raw matrix, not normalized."""
    s = reflection_s_i(chi, i)
    n = chi.rank
    cols = [s[:, k] for k in range(n)]
    return Bicharacter(
        tuple(tuple(chi.value(cols[k], cols[l]) for l in range(n)) for k in range(n))
    )


def object_key(chi: Bicharacter) -> ObjectKey:
    n = chi.rank
    diag = tuple(chi.q[i][i] for i in range(n))
    off = tuple(chi.product(i, j) for i in range(n) for j in range(i + 1, n))
    return ObjectKey(diag, off)


def normalize(key: ObjectKey) -> Bicharacter:
    """Canonical twist-equivalence representative: upper-triangular products."""
    n = key.rank
    one = key.diag[0].space.one()
    q = [[one] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = key.diag[i]
        for j in range(i + 1, n):
            q[i][j] = key.product(i, j)
    return Bicharacter(tuple(tuple(row) for row in q))


def restrict(chi: Bicharacter, subset) -> tuple[Bicharacter, tuple[int, ...]]:
    """Submatrix on the given index subset; returns (restriction, index map).

    index map sends new index k to the original index subset[k].
    """
    idx = tuple(subset)
    if not idx:
        raise ValueError("restriction needs a nonempty index set")
    sub = tuple(tuple(chi.q[a][b] for b in idx) for a in idx)
    return Bicharacter(sub), idx


def relabel(chi: Bicharacter, f) -> Bicharacter:
    """q'[f(i)][f(j)] = q[i][j] for a permutation f of the index set."""
    n = chi.rank
    f = tuple(f)
    if sorted(f) != list(range(n)):
        raise ValueError("relabeling must be a permutation of range(rank)")
    q = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            q[f[i]][f[j]] = chi.q[i][j]
    return Bicharacter(tuple(tuple(row) for row in q))


def is_cartan_type(chi: Bicharacter) -> tuple[bool, str | None]:
    """Cartan-type test: q_ii != 1 and q_ii^N_ij * q_ij * q_ji = 1 for i != j.

    On success also returns the finite type label of the matrix [-N_ij]
    (diagonal 2), or None when that matrix is not of finite type.
    """
    from .cartan import classify_cartan_matrix

    n = chi.rank
    a = 2 * np.eye(n, dtype=int)
    for i in range(n):
        if chi.q[i][i].is_one:
            return False, None
        for j in range(n):
            if i == j:
                continue
            nij = n_ij(chi, i, j)
            if nij is None:
                return False, None
            if not (chi.q[i][i] ** nij * chi.product(i, j)).is_one:
                return False, None
            a[i, j] = -nij
    return True, classify_cartan_matrix(a)
