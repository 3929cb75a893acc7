"""Weyl groupoid enumeration: objects, Cayley graph, roots, axiom checks.

The Cayley graph of a bicharacter chi has as vertices the composed reflection
matrices s_{(i_k,...,i_1)} (elements of GL_n(Z)) reachable from the identity,
and an i-labeled edge between w and s_i w.  Vertex identity is exact integer
matrix equality; each vertex also records the object (twist class) it maps
the base object to.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bichar
from .bichar import Bicharacter, InfiniteType, ObjectKey


class CapExceeded(RuntimeError):
    """Enumeration grew past the configured cap (not finite within bounds)."""


class InconsistentGroupoid(RuntimeError):
    """The same matrix was reached with two different target objects."""


DEFAULT_VERTEX_CAP = 1_000_000
DEFAULT_OBJECT_CAP = 10_000


@dataclass(frozen=True)
class Morphism:
    """A Cayley-graph vertex: integer matrix with source/target objects."""

    matrix: np.ndarray
    source: ObjectKey
    target: ObjectKey
    witness: tuple[int, ...]  # one generator word, application order

    def key(self) -> bytes:
        return self.matrix.tobytes()


@dataclass
class _ObjectData:
    key: ObjectKey
    chi: Bicharacter
    s: list[np.ndarray] = field(default_factory=list)  # reflection matrices
    tau: list[int] = field(default_factory=list)  # object id reached by tau_i
    nmat: np.ndarray | None = None


class CayleyGraph:
    """Connected component of the Weyl groupoid through one base object.

    Internals are index-based: ``adj[v, i]`` is the vertex reached from v by
    generator i, ``obj_of[v]`` the target-object id of v, ``mats[v]`` /
    ``invs[v]`` the exact matrix and its inverse.
    """

    def __init__(self, base: ObjectKey, objects: list[_ObjectData]):
        self.base = base
        self._objects = objects
        self.mats: list[np.ndarray] = []
        self.invs: list[np.ndarray] = []
        self.obj_of: list[int] = []
        self.witness: list[tuple[int, ...]] = []
        self.adj: np.ndarray | None = None

    # -- basic shape ----------------------------------------------------

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def nvertices(self) -> int:
        return len(self.mats)

    @property
    def nedges(self) -> int:
        return self.nvertices * self.rank // 2

    @property
    def objects(self) -> list[ObjectKey]:
        return [od.key for od in self._objects]

    def object_bicharacter(self, oid: int) -> Bicharacter:
        return self._objects[oid].chi

    def object_id(self, key: ObjectKey) -> int:
        return self.objects.index(key)

    def vertex(self, v: int) -> Morphism:
        return Morphism(
            self.mats[v], self.base, self._objects[self.obj_of[v]].key, self.witness[v]
        )

    def edges(self):
        """Canonically ordered edge list (u, v, label) with u < v."""
        out = []
        for u in range(self.nvertices):
            for i in range(self.rank):
                v = int(self.adj[u, i])
                if u < v:
                    out.append((u, v, i))
        return out

    def edge_label(self, u: int, v: int) -> int | None:
        for i in range(self.rank):
            if self.adj[u, i] == v:
                return i
        return None

    def reflection(self, oid: int, i: int) -> np.ndarray:
        return self._objects[oid].s[i]

    def tau_obj(self, oid: int, i: int) -> int:
        return self._objects[oid].tau[i]


def _close_objects(chi: Bicharacter, cap: int) -> list[_ObjectData]:
    """BFS closure of the object set under the tau-bar involutions."""
    base_key = bichar.object_key(chi)
    table: dict[ObjectKey, int] = {base_key: 0}
    objects = [_ObjectData(base_key, bichar.normalize(base_key))]
    frontier = [0]
    while frontier:
        oid = frontier.pop(0)
        od = objects[oid]
        n = od.chi.rank
        od.nmat = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            s = bichar.reflection_s_i(od.chi, i)
            od.s.append(s)
            od.nmat[i] = s[i]
            od.nmat[i, i] = 0
            key = bichar.object_key(bichar.tau_i(od.chi, i))
            if key not in table:
                if len(objects) >= cap:
                    raise CapExceeded(f"more than {cap} objects")
                table[key] = len(objects)
                objects.append(_ObjectData(key, bichar.normalize(key)))
                frontier.append(table[key])
            od.tau.append(table[key])
    return objects


def objects(chi: Bicharacter, cap: int = DEFAULT_OBJECT_CAP) -> list[ObjectKey]:
    """All twist classes reachable from chi by tau operations (BFS order)."""
    return [od.key for od in _close_objects(chi, cap)]


# NB: shadows the builtin inside this module; module code indexes with range().
def enumerate(chi: Bicharacter, vertex_cap: int = DEFAULT_VERTEX_CAP) -> CayleyGraph:
    """Breadth-first closure of the reflection matrices from the identity.

    Deterministic: FIFO frontier, generators ascending.  Raises CapExceeded
    when the vertex count would pass ``vertex_cap`` and InfiniteType when a
    reflection does not exist.
    """
    objs = _close_objects(chi, DEFAULT_OBJECT_CAP)
    g = CayleyGraph(objs[0].key, objs)
    n = chi.rank

    ident = np.eye(n, dtype=np.int64)
    index: dict[bytes, int] = {ident.tobytes(): 0}
    g.mats.append(ident)
    g.invs.append(ident)
    g.obj_of.append(0)
    g.witness.append(())
    adj_rows: list[list[int]] = [[-1] * n]

    head = 0
    while head < len(g.mats):
        v = head
        head += 1
        oid = g.obj_of[v]
        od = objs[oid]
        for i in range(n):
            if adj_rows[v][i] >= 0:
                continue
            m2 = od.s[i] @ g.mats[v]
            key = m2.tobytes()
            w = index.get(key)
            oid2 = od.tau[i]
            if w is None:
                if len(g.mats) >= vertex_cap:
                    raise CapExceeded(f"more than {vertex_cap} vertices")
                w = len(g.mats)
                index[key] = w
                m2.setflags(write=False)
                g.mats.append(m2)
                # s_i(tau_i b)^-1 = s_i(b), so inv(m2) = inv(m) @ s_i(b)
                inv2 = g.invs[v] @ od.s[i]
                inv2.setflags(write=False)
                g.invs.append(inv2)
                g.obj_of.append(oid2)
                g.witness.append(g.witness[v] + (i,))
                adj_rows.append([-1] * n)
            elif g.obj_of[w] != oid2:
                raise InconsistentGroupoid(
                    f"matrix reached with objects {g.obj_of[w]} and {oid2}"
                )
            adj_rows[v][i] = w
            adj_rows[w][i] = v
    g.adj = np.array(adj_rows, dtype=np.int64)
    return g


# -- roots --------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystem:
    object: ObjectKey
    positive: tuple[tuple[int, ...], ...]


def _base_positive_roots(g: CayleyGraph) -> set[tuple[int, ...]]:
    n = g.rank
    pos = set()
    for inv in g.invs:
        for j in range(n):
            col = inv[:, j]
            if all(col >= 0):
                pos.add(tuple(int(x) for x in col))
    return pos


def roots(g: CayleyGraph, a: ObjectKey) -> RootSystem:
    """Positive roots at object a: transport the base roots along any
    morphism landing on a (single backward pass, no per-vertex inversion)."""
    base_pos = _base_positive_roots(g)
    if a == g.base:
        chosen = base_pos
    else:
        oid = g.object_id(a)
        v = next(v for v in range(g.nvertices) if g.obj_of[v] == oid)
        m = g.mats[v]
        chosen = set()
        for r in base_pos:
            img = m @ np.array(r, dtype=np.int64)
            if all(img >= 0):
                chosen.add(tuple(int(x) for x in img))
            else:
                chosen.add(tuple(int(x) for x in -img))
    return RootSystem(a, tuple(sorted(chosen)))


def m_ij(chi_or_key, i: int, j: int) -> int:
    """Dihedral order datum m^a_ij = |R+(a) & (Z+ a_i + Z+ a_j)| via the
    rank-2 restriction."""
    if i == j:
        raise ValueError("m_ij needs i != j")
    if isinstance(chi_or_key, ObjectKey):
        chi = bichar.normalize(chi_or_key)
    else:
        chi = chi_or_key
    sub, _ = bichar.restrict(chi, (i, j) if i < j else (j, i))
    g = enumerate(sub)
    return g.nvertices // 2


def plaquette_order(g: CayleyGraph, v: int, i: int, j: int) -> int:
    """m at the object of v for the pair {i, j}, by walking the (i,j)-cycle."""
    cur, steps, use_i = v, 0, True
    while True:
        cur = int(g.adj[cur, i if use_i else j])
        use_i = not use_i
        steps += 1
        if cur == v and steps % 2 == 0:
            return steps // 2


# -- axiom verification -------------------------------------------------------


@dataclass
class AxiomReport:
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _run(self, cond: bool, msg: str) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(msg)


def verify_axioms(g: CayleyGraph) -> AxiomReport:
    """Check the Cartan-scheme and root-system axioms on a built graph.

    Covers: tau involutivity, C-matrix constancy, (R1)-(R3) on computed
    roots, (R4) braid closure at length 2 m^a_ij, root transport of the
    rank-1 reflections, even vertex count and the degree/handshake laws.
    Returns a structured report; never raises.
    """
    rep = AxiomReport()
    n = g.rank
    nobj = len(g.objects)

    for oid in range(nobj):
        for i in range(n):
            rep._run(
                g.tau_obj(g.tau_obj(oid, i), i) == oid,
                f"tau_{i+1}^2 != id at object {oid}",
            )
            s1 = g.reflection(oid, i)
            s2 = g.reflection(g.tau_obj(oid, i), i)
            rep._run(
                bool(np.array_equal(s2 @ s1, np.eye(n, dtype=np.int64))),
                f"s_{i+1}(tau_i a) s_{i+1}(a) != id at object {oid}",
            )
        cm = g._objects[oid].nmat
        for i in range(n):
            cm2 = g._objects[g.tau_obj(oid, i)].nmat
            rep._run(
                bool(np.array_equal(cm2[i], cm[i])),
                f"Cartan row {i+1} changes under tau_{i+1} at object {oid}",
            )

    rsets = {}
    for oid in range(nobj):
        rsets[oid] = set(roots(g, g.objects[oid]).positive)

    sizes = {len(r) for r in rsets.values()}
    rep._run(len(sizes) == 1, f"|R+| differs across objects: {sorted(sizes)}")

    simple = {tuple(int(x) for x in row) for row in np.eye(n, dtype=int)}
    for oid in range(nobj):
        pos = rsets[oid]
        rep._run(simple <= pos, f"simple roots missing from R+ at object {oid}")
        for i in range(n):
            multiples = {r for r in pos if all(r[k] == 0 for k in range(n) if k != i)}
            rep._run(
                multiples == {tuple(int(x) for x in np.eye(n, dtype=int)[i])},
                f"(R2) fails at object {oid}, i={i+1}",
            )
            s = g.reflection(oid, i)
            image = set()
            for r in pos:
                img = s @ np.array(r, dtype=np.int64)
                image.add(tuple(int(x) for x in (img if all(img >= 0) else -img)))
            rep._run(
                image == rsets[g.tau_obj(oid, i)],
                f"(R3) fails at object {oid}, i={i+1}",
            )
            # root transport with a_i removed (Prop. on preserved roots)
            ei = tuple(int(x) for x in np.eye(n, dtype=int)[i])
            image2 = set()
            for r in pos - {ei}:
                img = s @ np.array(r, dtype=np.int64)
                image2.add(tuple(int(x) for x in img))
            rep._run(
                image2 == rsets[g.tau_obj(oid, i)] - {ei},
                f"positive-root transport fails at object {oid}, i={i+1}",
            )

    # (R4): braid closure on matrices and objects
    for oid in range(nobj):
        key = g.objects[oid]
        for i in range(n):
            for j in range(i + 1, n):
                m = m_ij(key, i, j)
                mat = np.eye(n, dtype=np.int64)
                cur = oid
                for t in range(2 * m):
                    gen = i if t % 2 == 0 else j
                    mat = g.reflection(cur, gen) @ mat
                    cur = g.tau_obj(cur, gen)
                rep._run(
                    cur == oid and bool(np.array_equal(mat, np.eye(n, dtype=np.int64))),
                    f"(R4) braid of length 2*{m} does not close at object {oid}, pair ({i+1},{j+1})",
                )

    rep._run(g.nvertices % 2 == 0, f"|V| = {g.nvertices} is odd")
    rep._run(
        bool((g.adj >= 0).all()), "some vertex is missing a generator edge"
    )
    deg_ok = all(
        len({int(g.adj[v, i]) for i in range(n)}) == n for v in range(g.nvertices)
    )
    rep._run(deg_ok, "repeated neighbor: two generators give the same edge")
    return rep


# -- coset partition ----------------------------------------------------------


@dataclass(frozen=True)
class CosetPartition:
    extracted: int
    blocks: tuple[tuple[int, ...], ...]  # vertex indices, each block BFS-sorted
    representatives: tuple[int, ...]  # BFS-minimal vertex per block
    rep_objects: tuple[ObjectKey, ...]  # i-complete tau-representative subset

    def block_of(self) -> np.ndarray:
        size = sum(len(b) for b in self.blocks)
        out = np.full(size, -1, dtype=np.int64)
        for b in range(len(self.blocks)):
            for v in self.blocks[b]:
                out[v] = b
        return out


def coset_partition(g: CayleyGraph, i: int) -> CosetPartition:
    """Connected components of g minus all i-labeled edges.

    Blocks appear in order of their BFS-minimal vertex; the representative
    objects form an i-complete tau-representative subset of the object set.
    """
    n = g.rank
    seen = [False] * g.nvertices
    blocks, reps = [], []
    for v0 in range(g.nvertices):
        if seen[v0]:
            continue
        comp, stack = [], [v0]
        seen[v0] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for gen in range(n):
                if gen == i:
                    continue
                w = int(g.adj[u, gen])
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        blocks.append(tuple(sorted(comp)))
        reps.append(v0)
    return CosetPartition(
        i,
        tuple(blocks),
        tuple(reps),
        tuple(g.objects[g.obj_of[r]] for r in reps),
    )


def labeled_graphs_isomorphic(adj_a: np.ndarray, adj_b: np.ndarray) -> bool:
    """Synchronized BFS isomorphism of generator-labeled regular graphs.

    Both arrays have shape (|V|, n) with adj[v, i] the i-neighbor of v; the
    map fixing vertex 0 and commuting with every generator either extends
    uniquely to everything or does not exist.
    """
    adj_a = np.asarray(adj_a)
    adj_b = np.asarray(adj_b)
    if adj_a.shape != adj_b.shape:
        return False
    nv, n = adj_a.shape
    to_b = np.full(nv, -1, dtype=np.int64)
    to_b[0] = 0
    seen_b = {0}
    frontier = [0]
    while frontier:
        va = frontier.pop(0)
        vb = int(to_b[va])
        for i in range(n):
            wa, wb = int(adj_a[va, i]), int(adj_b[vb, i])
            if to_b[wa] < 0:
                if wb in seen_b:
                    return False
                to_b[wa] = wb
                seen_b.add(wb)
                frontier.append(wa)
            elif to_b[wa] != wb:
                return False
    return bool((to_b >= 0).all())


# -- exports ------------------------------------------------------------------


def graph_to_json(g: CayleyGraph) -> dict:
    """Canonical JSON document for a graph; byte-stable across runs."""
    return {
        "base": [str(s) for s in g.base.diag] + [str(s) for s in g.base.offdiag],
        "rank": g.rank,
        "vertices": [
            {
                "matrix": [[int(x) for x in row] for row in g.mats[v]],
                "object": int(g.obj_of[v]),
            }
            for v in range(g.nvertices)
        ],
        "objects": [
            {
                "diag": [str(s) for s in key.diag],
                "products": [str(s) for s in key.offdiag],
            }
            for key in g.objects
        ],
        "edges": [
            {"u": u, "v": v, "label": label + 1} for (u, v, label) in g.edges()
        ],
    }


def graph_to_dot(g: CayleyGraph) -> str:
    """DOT text; vertices labeled by the object-key short hash."""
    lines = ["graph cayley {"]
    for v in range(g.nvertices):
        key = g.objects[g.obj_of[v]]
        lines.append(f'  v{v} [label="{key.short_hash()}"];')
    for u, v, label in g.edges():
        lines.append(f'  v{u} -- v{v} [label="{label + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
