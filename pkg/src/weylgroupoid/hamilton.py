"""Hamilton circuits: representation, verification, splicing, backtracking.

A circuit is a generator word in application order based at an object: the
walk w_0 = id, w_t = s_{j_t} w_{t-1} must visit every vertex exactly once
and close.  The coset-splicing engine is generic over any generator-labeled
adjacency array and is instantiated both for Coxeter groups and for Weyl
groupoids; the backtracking searcher is the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bichar, groupoid
from .bichar import Bicharacter, ObjectKey
from .groupoid import CayleyGraph


class LengthMismatch(ValueError):
    pass


class BadStep(ValueError):
    pass


class VertexNotOnWalk(ValueError):
    pass


class SpliceStuck(RuntimeError):
    """No admissible commuting joint connects the covered part to some block."""


class NotFoundError(RuntimeError):
    """All find_circuit stages failed; carries per-stage diagnostics."""


DEFAULT_BUDGET = 50_000_000
CONNECTIVITY_STRIDE = 8


@dataclass(frozen=True)
class CircuitMap:
    """Base object plus the generator word (0-based, application order)."""

    base: ObjectKey
    word: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)


@dataclass
class CircuitReport:
    valid: bool
    length: int
    special: bool = False
    convenient: tuple[int, ...] = ()
    method: str = "file"
    reason: str = ""


# -- verification ---------------------------------------------------------------


def walk_vertices(g: CayleyGraph, word) -> list[int]:
    """Vertex sequence of the walk from the identity; BadStep on a bad label."""
    cur = 0
    out = [0]
    for j in word:
        if not 0 <= j < g.rank:
            raise BadStep(f"generator {j} out of range")
        cur = int(g.adj[cur, j])
        out.append(cur)
    return out


def verify(g: CayleyGraph, c: CircuitMap) -> CircuitReport:
    """Simulate the walk; check the Hamilton circuit conditions and compute
    the special / i-convenient predicates.

    A rank-1 graph (two vertices, one edge) legitimately reuses its single
    edge; vertex distinctness is the defining requirement.
    """
    k = len(c.word)
    if k != g.nvertices:
        return CircuitReport(
            False, k, method="file", reason=f"word length {k} != |V| {g.nvertices}"
        )
    if c.base != g.base:
        return CircuitReport(False, k, reason="circuit based at a different object")
    try:
        walk = walk_vertices(g, c.word)
    except BadStep as e:
        return CircuitReport(False, k, reason=str(e))
    if walk[-1] != 0:
        return CircuitReport(False, k, reason="walk does not close")
    if len(set(walk[:-1])) != k:
        return CircuitReport(False, k, reason="walk repeats a vertex")

    # special: step pairs (object after step t, label of step t) cover all
    pairs = {(g.obj_of[walk[t + 1]], c.word[t]) for t in range(k)}
    nobj = len(g.objects)
    special = len(pairs) == nobj * g.rank

    convenient = []
    if k % 2 == 0:
        for i in range(g.rank):
            for r in (0, 1):
                if all(c.word[t] == i for t in range(r, k, 2)):
                    convenient.append(i)
                    break
    return CircuitReport(True, k, special, tuple(convenient), method="file")


def transform(g: CayleyGraph, c: CircuitMap, rotate_to, reflect: bool = False) -> CircuitMap:
    """Rotate (and optionally reverse) the circuit so its walk starts at the
    given vertex, re-based at that vertex's object.

    ``rotate_to`` is a vertex index of g or a matrix.  Validity is preserved:
    the edge set is unchanged.
    """
    walk = walk_vertices(g, c.word)[:-1]
    if isinstance(rotate_to, (int, np.integer)):
        target = int(rotate_to)
    else:
        target = None
        key = np.asarray(rotate_to, dtype=np.int64).tobytes()
        for v in range(g.nvertices):
            if g.mats[v].tobytes() == key:
                target = v
                break
        if target is None:
            raise VertexNotOnWalk("matrix is not a vertex of the graph")
    try:
        pos = walk.index(target)
    except ValueError:
        raise VertexNotOnWalk(f"vertex {target} is not on the walk") from None
    word = c.word[pos:] + c.word[:pos]
    if reflect:
        word = tuple(reversed(word))
    return CircuitMap(g.objects[g.obj_of[target]], word)


# -- generic splice engine -------------------------------------------------------


def plaquette_m(adj: np.ndarray, v: int, i: int, j: int, cap: int = 4096) -> int:
    """Half-length of the alternating (i, j) cycle through v."""
    cur, steps, use_i = v, 0, True
    while steps < cap:
        cur = int(adj[cur, i if use_i else j])
        use_i = not use_i
        steps += 1
        if cur == v and steps % 2 == 0:
            return steps // 2
    raise RuntimeError("plaquette walk did not close")


def cycle_to_word(adj: np.ndarray, cycle: list[int]) -> tuple[int, ...]:
    """Labels of consecutive steps of a closed vertex cycle."""
    n = adj.shape[1]
    word = []
    for t in range(len(cycle)):
        u, v = cycle[t], cycle[(t + 1) % len(cycle)]
        for i in range(n):
            if adj[u, i] == v:
                word.append(i)
                break
        else:
            raise BadStep(f"no edge between {u} and {v}")
    return tuple(word)


def splice_cycles(
    adj: np.ndarray,
    extraction: int,
    block_of: np.ndarray,
    block_cycles: dict[int, list[list[int]]],
    start_block: int,
    m_of,
) -> list[int]:
    """Merge per-block Hamilton cycles into one via commuting joints.

    Greedy: scan the current cycle for a step v -(j)-> v' with j != the
    extraction generator, whose vertex v has its extraction-neighbor u in an
    uncovered block, such that the pair braid order at v is 2 (so u' = s_j u
    is the extraction-neighbor of v') and the block cycle of u contains the
    edge {u, u'}.  Replace the step by v -> u -> (block path) -> u' -> v'.
    Deterministic: lowest position first, first block cycle that fits.
    Raises SpliceStuck when no joint exists.
    """
    nblocks = len(block_cycles)
    cycle = list(block_cycles[start_block][0])
    covered = {start_block}

    # positions of each vertex inside each block cycle
    pos_in = {
        (b, ci): {v: t for t, v in enumerate(bc)}
        for b, cycs in block_cycles.items()
        for ci, bc in enumerate(cycs)
    }

    while len(covered) < nblocks:
        spliced = False
        k = len(cycle)
        for t in range(k):
            v, v2 = cycle[t], cycle[(t + 1) % k]
            u = int(adj[v, extraction])
            if u == v2:
                continue  # this step is an extraction edge
            b = int(block_of[u])
            if b in covered:
                continue
            # label of the step being replaced
            j = next(i for i in range(adj.shape[1]) if adj[v, i] == v2)
            if m_of(v, extraction, j) != 2:
                continue
            u2 = int(adj[u, j])
            if int(adj[v2, extraction]) != u2:
                continue
            for ci, bc in enumerate(block_cycles[b]):
                table = pos_in[(b, ci)]
                if u not in table:
                    continue
                p, size = table[u], len(bc)
                if bc[(p + 1) % size] == u2:
                    path = [bc[(p - s) % size] for s in range(size)]
                elif bc[(p - 1) % size] == u2:
                    path = [bc[(p + s) % size] for s in range(size)]
                else:
                    continue
                cycle = cycle[: t + 1] + path + cycle[t + 1 :]
                covered.add(b)
                spliced = True
                break
            if spliced:
                break
        if not spliced:
            raise SpliceStuck(
                f"{nblocks - len(covered)} of {nblocks} blocks unreachable through "
                f"commuting joints (extraction generator {extraction + 1})"
            )
    return cycle


def splice_groupoid(
    g: CayleyGraph, i: int, sub_circuits: dict[int, CircuitMap | list[CircuitMap]]
) -> CircuitMap:
    """Splice block circuits of the partition g minus i-edges into a circuit.

    ``sub_circuits`` maps each block representative vertex to one or two
    Hamilton circuits of that block (words over the full index set, based at
    the representative's object, walked from the representative).  The result
    is verified before being returned.
    """
    part = groupoid.coset_partition(g, i)
    block_of = part.block_of()
    block_cycles: dict[int, list[list[int]]] = {}
    for b, rep in enumerate(part.representatives):
        circuits = sub_circuits[rep]
        if isinstance(circuits, CircuitMap):
            circuits = [circuits]
        cycles = []
        for c in circuits:
            cyc = [rep]
            for lab in c.word[:-1]:
                cyc.append(int(g.adj[cyc[-1], lab]))
            if len(set(cyc)) != len(part.blocks[b]) or int(
                g.adj[cyc[-1], c.word[-1]]
            ) != rep:
                raise BadStep(f"sub-circuit of block {b} is not a Hamilton cycle")
            cycles.append(cyc)
        block_cycles[b] = cycles

    m_cache: dict[tuple[int, int, int], int] = {}

    def m_of(v: int, gen_i: int, gen_j: int) -> int:
        key = (g.obj_of[v], gen_i, gen_j)
        if key not in m_cache:
            m_cache[key] = plaquette_m(g.adj, v, gen_i, gen_j)
        return m_cache[key]

    merged = splice_cycles(
        g.adj, i, block_of, block_cycles, int(block_of[0]), m_of
    )
    # rotate so the walk starts at the identity vertex
    p = merged.index(0)
    merged = merged[p:] + merged[:p]
    word = cycle_to_word(g.adj, merged)
    c = CircuitMap(g.base, word)
    rep = verify(g, c)
    if not rep.valid:
        raise SpliceStuck(f"spliced walk failed verification: {rep.reason}")
    return c


# -- backtracking oracle ---------------------------------------------------------


@dataclass(frozen=True)
class Requirement:
    special: bool = False
    convenient: int | None = None  # 0-based generator

    @staticmethod
    def parse(text: str | None) -> Requirement | None:
        """'special', 'convenient:i' (1-based), or combined with '+'."""
        if not text:
            return None
        special = False
        convenient = None
        for part in text.split("+"):
            part = part.strip()
            if part == "special":
                special = True
            elif part.startswith("convenient"):
                convenient = int(part.split(":", 1)[1]) - 1
            else:
                raise ValueError(f"unknown requirement {part!r}")
        return Requirement(special, convenient)


@dataclass
class SearchResult:
    status: str  # "found" | "exhausted" | "budget"
    circuit: CircuitMap | None
    expansions: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def backtrack_search(
    g,
    require: Requirement | None = None,
    budget: int = DEFAULT_BUDGET,
    start: int = 0,
) -> SearchResult:
    """Depth-first Hamilton circuit search with pruning.

    Pruning: visited set; incremental dead-end cut (any unvisited vertex must
    keep two available endpoints among unvisited ones, the head and the
    start); connectivity of the unvisited region every few steps.  Found
    circuits are filtered against ``require``; the search continues past
    non-conforming circuits.  "exhausted" is a proof of non-existence,
    "budget" is not.  When ``require`` asks for i-convenience the search is
    split into the two parity classes with the i-steps forced, which is
    complete for that requirement.

    ``g`` needs only ``nvertices``, ``rank`` and ``adj``; CayleyGraph and
    CoxeterGraph both qualify, as do synthetic stub graphs in tests.
    """
    if require is not None and require.convenient is not None:
        total = 0
        for parity in (0, 1):
            res = _dfs(g, require, budget - total, start, parity)
            total += res.expansions
            if res.found:
                return SearchResult("found", res.circuit, total)
            if res.status == "budget":
                return SearchResult("budget", None, total)
        return SearchResult("exhausted", None, total)
    return _dfs(g, require, budget, start, None)


def _dfs(g, require, budget, start, forced_parity) -> SearchResult:
    nv = g.nvertices
    n = g.rank
    adj = g.adj
    forced = require.convenient if (require and require.convenient is not None) else None

    if nv == 1:
        return SearchResult("exhausted", None, 0)
    visited = np.zeros(nv, dtype=bool)
    visited[start] = True
    # unvisited-neighbor counts (multigraph edges counted once per generator)
    unv_count = np.zeros(nv, dtype=np.int64)
    nbr_sets = [None] * nv

    def nbrs(v: int) -> set[int]:
        if nbr_sets[v] is None:
            nbr_sets[v] = {int(adj[v, i]) for i in range(n)}
        return nbr_sets[v]

    for v in range(nv):
        unv_count[v] = sum(1 for w in nbrs(v) if w != start)

    path = [start]
    labels: list[int] = []
    expansions = 0
    # stack of per-depth candidate iterators
    def candidates(v: int, depth: int):
        if forced is not None and depth % 2 == (forced_parity or 0):
            yield forced, int(adj[v, forced])
            return
        for i in range(n):
            w = int(adj[v, i])
            if forced is not None and i == forced:
                continue  # forced letters live on their own parity only
            yield i, w

    stack = [candidates(start, 0)]

    def available_ok(head: int) -> bool:
        # every unvisited vertex needs >= 2 endpoints among unvisited+head+start
        for w in nbrs(head) | nbrs(path[-2] if len(path) > 1 else head):
            if visited[w]:
                continue
            avail = unv_count[w] + (head in nbrs(w)) + (start in nbrs(w))
            if avail < 2:
                return False
        return True

    def unvisited_connected(head: int) -> bool:
        rest = np.flatnonzero(~visited)
        if rest.size == 0:
            return True
        seen = {int(rest[0])}
        stack2 = [int(rest[0])]
        while stack2:
            u = stack2.pop()
            for w in nbrs(u):
                if not visited[w] and w not in seen:
                    seen.add(w)
                    stack2.append(w)
        if len(seen) != rest.size:
            return False
        return head in {x for u in seen for x in nbrs(u)} or visited.all()

    while stack:
        if expansions >= budget:
            return SearchResult("budget", None, expansions)
        try:
            i, w = next(stack[-1])
        except StopIteration:
            stack.pop()
            if labels:
                dead = path.pop()
                visited[dead] = False
                for x in nbrs(dead):
                    unv_count[x] += 1
                labels.pop()
            continue
        expansions += 1
        head = path[-1]
        if len(path) == nv:
            if w == start:
                word = tuple(labels) + (i,)
                if _satisfies(g, word, require):
                    return SearchResult("found", _as_circuit(g, word), expansions)
            continue
        if visited[w]:
            continue
        visited[w] = True
        for x in nbrs(w):
            unv_count[x] -= 1
        path.append(w)
        labels.append(i)
        ok = available_ok(w)
        if ok and len(path) % CONNECTIVITY_STRIDE == 0:
            ok = unvisited_connected(w)
        if ok:
            stack.append(candidates(w, len(labels)))
        else:
            visited[w] = False
            for x in nbrs(w):
                unv_count[x] += 1
            path.pop()
            labels.pop()
    return SearchResult("exhausted", None, expansions)


def _satisfies(g, word, require: Requirement | None) -> bool:
    if require is None:
        return True
    if isinstance(g, CayleyGraph):
        rep = verify(g, CircuitMap(g.base, word))
        if require.special and not rep.special:
            return False
        if require.convenient is not None and require.convenient not in rep.convenient:
            return False
        return rep.valid
    # plain labeled graphs carry no object structure: special degenerates to
    # label coverage, convenience to the parity condition
    if require.special and len(set(word)) != g.rank:
        return False
    if require.convenient is not None:
        k = len(word)
        if k % 2:
            return False
        if not any(
            all(word[t] == require.convenient for t in range(r, k, 2)) for r in (0, 1)
        ):
            return False
    return True


def _as_circuit(g, word) -> CircuitMap:
    base = g.base if isinstance(g, CayleyGraph) else None
    return CircuitMap(base, tuple(word))


# -- the auto pipeline -----------------------------------------------------------


def find_circuit(
    chi: Bicharacter,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
    _graph: CayleyGraph | None = None,
) -> tuple[CircuitMap, CircuitReport]:
    """Construct a Hamilton circuit of the Cayley graph of chi.

    auto pipeline: (1) quasi-Cartan-type graphs replay the Coxeter
    construction of the matching type; (2) otherwise look for an extraction
    generator decoupled from all but one neighbor at every object, solve the
    blocks recursively, and splice; (3) fall back to backtracking.
    """
    g = _graph if _graph is not None else groupoid.enumerate(chi)
    diagnostics: list[str] = []

    if strategy in ("auto", "csw"):
        got = _try_quasi_cartan(chi, g, diagnostics)
        if got is not None:
            return got
        if strategy == "csw":
            raise NotFoundError("; ".join(diagnostics))
    if strategy in ("auto", "splice"):
        got = _try_splice(chi, g, budget, diagnostics)
        if got is not None:
            return got
        if strategy == "splice":
            raise NotFoundError("; ".join(diagnostics))
    if strategy in ("auto", "backtrack"):
        res = backtrack_search(g, None, budget)
        if res.found:
            rep = verify(g, res.circuit)
            rep.method = "backtrack"
            return res.circuit, rep
        diagnostics.append(f"backtrack: {res.status} after {res.expansions} expansions")
    raise NotFoundError("; ".join(diagnostics))


def _constant_coxeter_matrix(g: CayleyGraph) -> np.ndarray | None:
    """Coxeter matrix shared by all objects, or None if the scheme varies."""
    mats = {od.nmat.tobytes() for od in g._objects}
    if len(mats) != 1:
        return None
    from .cartan import cartan_matrix_to_coxeter

    nmat = g._objects[0].nmat
    a = 2 * np.eye(g.rank, dtype=int) - np.array(nmat, dtype=int)
    np.fill_diagonal(a, 2)
    return cartan_matrix_to_coxeter(a)


def _try_quasi_cartan(chi, g, diagnostics) -> tuple[CircuitMap, CircuitReport] | None:
    from . import coxeter as cox
    from .cartan import coxeter_order

    if g.rank < 2:
        c = CircuitMap(g.base, (0,) * g.nvertices)
        rep = verify(g, c)
        rep.method = "csw"
        return (c, rep) if rep.valid else None
    m = _constant_coxeter_matrix(g)
    if m is None:
        diagnostics.append("csw: Cartan scheme is not constant")
        return None
    if coxeter_order(m) != g.nvertices:
        diagnostics.append("csw: scheme matrix is not of matching finite type")
        return None
    cs = cox.CoxeterSystem(tuple(tuple(int(x) for x in row) for row in m))
    word = cox.csw_circuit(cs)
    c = CircuitMap(g.base, word)
    rep = verify(g, c)
    if not rep.valid:
        diagnostics.append(f"csw: transported word failed: {rep.reason}")
        return None
    rep.method = "csw"
    return c, rep


def _try_splice(chi, g, budget, diagnostics) -> tuple[CircuitMap, CircuitReport] | None:
    n = g.rank
    if n < 3:
        if n == 2:
            c = CircuitMap(g.base, (0, 1) * (g.nvertices // 2))
            rep = verify(g, c)
            if rep.valid:
                rep.method = "splice"
                return c, rep
        diagnostics.append("splice: needs rank >= 3")
        return None
    candidates = []
    for i in range(n):
        coupled = set()
        for key in g.objects:
            for k in range(n):
                if k != i and not key.product(i, k).is_one:
                    coupled.add(k)
        if len(coupled) <= 1:
            candidates.append(i)
    if not candidates:
        diagnostics.append("splice: no extraction generator is decoupled enough")
        return None
    for i in candidates:
        try:
            part = groupoid.coset_partition(g, i)
            keep = [k for k in range(n) if k != i]
            subs: dict[int, CircuitMap] = {}
            for rep_v in part.representatives:
                key = g.objects[g.obj_of[rep_v]]
                sub_chi, idx = bichar.restrict(bichar.normalize(key), keep)
                sub_circ, _ = find_circuit(sub_chi, "auto", budget)
                lifted = tuple(idx[c] for c in sub_circ.word)
                subs[rep_v] = CircuitMap(key, lifted)
            c = splice_groupoid(g, i, subs)
            rep = verify(g, c)
            rep.method = "splice"
            return c, rep
        except (SpliceStuck, NotFoundError, BadStep) as e:
            diagnostics.append(f"splice(i={i + 1}): {e}")
            continue
    return None
