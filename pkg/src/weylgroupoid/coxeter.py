"""Finite Coxeter systems, exact enumeration, and the inductive
coset-splicing Hamilton circuit construction.

Group elements are matrices of the geometric representation
f(s)(y) = y - (y, x_s) x_s with (x_s, x_t) = -2cos(pi/Psi(s,t)), computed
exactly over Z[zeta_2L], L = lcm of the Coxeter matrix entries.  The
representation is faithful, so matrix equality is element equality for every
finite type including H3, H4 and I2(m).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from . import cartan
from .exactnum import CyclotomicRing, get_ring


class InfiniteGroup(ValueError):
    """The classification says |W| is infinite."""


class NotFound(RuntimeError):
    """No generator ordering with the required commutations exists."""


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CoxeterSystem:
    """Coxeter matrix Psi: symmetric, 1 on the diagonal, >= 2 off it."""

    psi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        psi = tuple(tuple(int(x) for x in row) for row in self.psi)
        n = len(psi)
        for i in range(n):
            if psi[i][i] != 1:
                raise ValueError("Psi(s,s) must be 1")
            for j in range(n):
                if psi[i][j] != psi[j][i]:
                    raise ValueError("Psi must be symmetric")
                if i != j and psi[i][j] < 2:
                    raise ValueError("Psi(s,t) must be >= 2 off the diagonal")
        object.__setattr__(self, "psi", psi)

    @property
    def n(self) -> int:
        return len(self.psi)

    def matrix(self) -> np.ndarray:
        return np.array(self.psi, dtype=int)

    def classify(self):
        return cartan.classify_coxeter_matrix(self.matrix())

    def order(self) -> int | None:
        """|W| by classification; None when infinite."""
        return cartan.coxeter_order(self.matrix())

    def is_finite(self) -> bool:
        return self.order() is not None

    @staticmethod
    def from_cartan(a: np.ndarray) -> CoxeterSystem:
        m = cartan.cartan_matrix_to_coxeter(a)
        if m is None:
            raise ValueError("Cartan matrix has a wild bond")
        return CoxeterSystem(tuple(tuple(int(x) for x in row) for row in m))

    @staticmethod
    def from_type(name: str) -> CoxeterSystem:
        """Parse 'A4', 'B3', 'I2:7', 'H3', or products like 'A2xA1'."""
        blocks = []
        for part in name.replace("×", "x").split("x"):
            part = part.strip()
            if not part:
                raise ValueError(f"bad type string {name!r}")
            if part[0].upper() == "I":
                body = part[1:].lstrip("2").lstrip(":_(").rstrip(")")
                m = int(body)
                blocks.append(np.array([[1, m], [m, 1]]))
                continue
            family, rank = part[0].upper(), int(part[1:])
            if family == "H":
                if rank not in (2, 3, 4):
                    raise ValueError(f"no finite type H{rank}")
                b = 3 * np.ones((rank, rank), dtype=int) - 2 * np.eye(rank, dtype=int)
                for i in range(rank):
                    for j in range(rank):
                        if abs(i - j) > 1:
                            b[i, j] = 2
                b[0, 1] = b[1, 0] = 5
                blocks.append(b)
                continue
            a = cartan.standard_cartan_matrix(family, rank)
            m = cartan.cartan_matrix_to_coxeter(a)
            blocks.append(m)
        n = sum(b.shape[0] for b in blocks)
        psi = 2 * np.ones((n, n), dtype=int) - np.eye(n, dtype=int)
        at = 0
        for b in blocks:
            k = b.shape[0]
            psi[at : at + k, at : at + k] = b
            at += k
        return CoxeterSystem(tuple(tuple(int(x) for x in row) for row in psi))


# -- geometric representation --------------------------------------------------


def geometric_ring(cs: CoxeterSystem) -> CyclotomicRing:
    ell = 1
    for i in range(cs.n):
        for j in range(i + 1, cs.n):
            ell = lcm(ell, cs.psi[i][j])
    return get_ring(2 * ell)


def reflection_matrices(cs: CoxeterSystem) -> list[np.ndarray]:
    """f(s) for each generator, as (n, n, deg) integer tensors over Z[zeta]."""
    ring = geometric_ring(cs)
    n = cs.n
    # bilinear form (x_i, x_j) = -2cos(pi/Psi(i,j)); diagonal (x,x) = 2
    form = np.zeros((n, n, ring.degree), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i == j:
                form[i, j, 0] = 2
            else:
                form[i, j] = ring.minus_two_cos_pi_over(cs.psi[i][j])
    mats = []
    for s in range(n):
        m = ring.identity_matrix(n)
        for t in range(n):
            m[s, t] -= form[t, s]  # f(s)(x_t) = x_t - (x_t, x_s) x_s
        mats.append(m)
    return mats


class CoxeterGraph:
    """Cayley graph of (W, S): index-based, exact element matrices."""

    def __init__(self, cs: CoxeterSystem):
        self.cs = cs
        self.mats: list[np.ndarray] = []
        self.adj: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return self.cs.n

    @property
    def nvertices(self) -> int:
        return len(self.mats)

    def edge_label(self, u: int, v: int) -> int | None:
        for i in range(self.rank):
            if self.adj[u, i] == v:
                return i
        return None


def enumerate_group(cs: CoxeterSystem, cap: int = 2_000_000) -> CoxeterGraph:
    """BFS over exact matrices; generators ascending, FIFO frontier."""
    order = cs.order()
    if order is None:
        raise InfiniteGroup(f"Coxeter system {cs.psi} is infinite")
    if order > cap:
        raise CapExceeded(f"|W| = {order} exceeds cap {cap}")
    ring = geometric_ring(cs)
    gens = reflection_matrices(cs)
    n = cs.n

    g = CoxeterGraph(cs)
    ident = ring.identity_matrix(n)
    g.mats.append(ident)
    index = {ident.tobytes(): 0}
    adj_rows = [[-1] * n]
    head = 0
    while head < len(g.mats):
        v = head
        head += 1
        for i in range(n):
            if adj_rows[v][i] >= 0:
                continue
            m2 = ring.mat_mul(gens[i], g.mats[v])
            key = m2.tobytes()
            w = index.get(key)
            if w is None:
                w = len(g.mats)
                index[key] = w
                g.mats.append(m2)
                adj_rows.append([-1] * n)
            adj_rows[v][i] = w
            adj_rows[w][i] = v
    g.adj = np.array(adj_rows, dtype=np.int64)
    assert g.nvertices == order, "enumeration disagrees with classification"
    return g


# -- generator ordering and the circuit construction ---------------------------


def generator_ordering(cs: CoxeterSystem) -> tuple[int, ...]:
    """An ordering s_hat with s_hat[-1] commuting with all but s_hat[-2].

    The last generator is a diagram leaf (or an isolated vertex); ties break
    toward the highest index.  Raises NotFound when no vertex has degree <= 1
    (cannot happen for finite systems).
    """
    n = cs.n
    if n < 3:
        return tuple(range(n))
    deg = [
        sum(1 for j in range(n) if j != i and cs.psi[i][j] > 2) for i in range(n)
    ]
    leaves = [i for i in range(n) if deg[i] <= 1]
    if not leaves:
        raise NotFound("no diagram leaf; ordering does not exist")
    last = max(leaves)
    nbrs = [j for j in range(n) if j != last and cs.psi[last][j] > 2]
    second = nbrs[0] if nbrs else max(j for j in range(n) if j != last)
    rest = [j for j in range(n) if j not in (last, second)]
    return tuple(rest + [second, last])


def _subsystem(cs: CoxeterSystem, keep: list[int]) -> CoxeterSystem:
    return CoxeterSystem(tuple(tuple(cs.psi[a][b] for b in keep) for a in keep))


def csw_circuit(cs: CoxeterSystem) -> tuple[int, ...]:
    """Hamilton circuit word of the Cayley graph of a finite Coxeter system.

    The word is in application order (first letter = first reflection applied
    to the identity); left-multiplying along it visits every element exactly
    once and returns to the identity.  Recursive: rank-2 base circuit, then
    coset splicing along the ordering's last generator.
    """
    if not cs.is_finite():
        raise InfiniteGroup(f"Coxeter system {cs.psi} is infinite")
    n = cs.n
    if n == 1:
        return (0, 0)
    if n == 2:
        return (0, 1) * cs.psi[0][1]

    from . import hamilton

    shat = generator_ordering(cs)
    sub = _subsystem(cs, list(shat[: n - 1]))
    sub_word = csw_circuit(sub)  # labels are positions 0..n-2 in shat
    word_in_parent = tuple(shat[c] for c in sub_word)

    graph = enumerate_group(cs)
    extraction = shat[n - 1]
    part = _partition_minus_label(graph, extraction)
    block_cycles = {}
    for b, rep in enumerate(part["reps"]):
        cycle = _walk_cycle(graph, rep, word_in_parent)
        block_cycles[b] = [cycle]
    merged = hamilton.splice_cycles(
        graph.adj,
        extraction,
        part["block_of"],
        block_cycles,
        start_block=part["block_of"][0],
        m_of=lambda v, i, j: hamilton.plaquette_m(graph.adj, v, i, j),
    )
    word = hamilton.cycle_to_word(graph.adj, merged)
    return word


def _walk_cycle(graph: CoxeterGraph, start: int, word) -> list[int]:
    cyc = [start]
    for c in word[:-1]:
        cyc.append(int(graph.adj[cyc[-1], c]))
    return cyc


def _partition_minus_label(graph, label: int) -> dict:
    nv = graph.nvertices
    n = graph.rank
    block_of = np.full(nv, -1, dtype=np.int64)
    reps = []
    for v0 in range(nv):
        if block_of[v0] >= 0:
            continue
        b = len(reps)
        reps.append(v0)
        stack = [v0]
        block_of[v0] = b
        while stack:
            u = stack.pop()
            for i in range(n):
                if i == label:
                    continue
                w = int(graph.adj[u, i])
                if block_of[w] < 0:
                    block_of[w] = b
                    stack.append(w)
    return {"block_of": block_of, "reps": reps}
