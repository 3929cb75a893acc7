#!/usr/bin/env python3
"""Search for rank-4 bicharacters matching the target (|V|, |objects|) pairs.

Not part of the library: a one-off reconstruction aid for the hand-encoded
data file.  Candidates come from structured families (signature families with
D-type tails) and from small value alphabets on chain/branch diagram shapes.
"""

import itertools
import sys

import numpy as np

sys.path.insert(0, "src")

from weylgroupoid import bichar, groupoid
from weylgroupoid.bichar import Bicharacter, InfiniteType
from weylgroupoid.exactnum import ScalarWorkspace
from weylgroupoid.groupoid import CapExceeded

TARGETS = {
    (576, 6): "row 9",
    (360, 10): "row 14 wk(4)",
    (1440, 12): "row 17 ufo(5)",
    (480, 10): "row 18 g(3,3)",
    (960, 10): "row 20 g(4,3)",
    (2688, 7): "row 21 g(3,6)",
    (2304, 16): "row 22 ufo(6)",
}


def counts(chi, vcap=6000, ocap=40):
    try:
        objs = groupoid.objects(chi, cap=ocap)
        g = groupoid.enumerate(chi, vertex_cap=vcap)
        return g.nvertices, len(objs)
    except (CapExceeded, InfiniteType):
        return None


def upper(space, diag, edges):
    """Build the upper-triangular bicharacter: edges is {(i,j): scalar}."""
    n = len(diag)
    one = space.one()
    q = [[one] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = diag[i]
    for (i, j), val in edges.items():
        q[i][j] = val
    return Bicharacter(tuple(tuple(r) for r in q))


def d_tail_signature_family():
    """Rank-4 signature families with a D-type branch tail:
    roots e1-e2, e2-e3, e3-e4, e3+e4, lambda(ei,ei) = +-1."""
    space = ScalarWorkspace(2, ("q",))
    q = space.param("q")
    eps = np.eye(4, dtype=int)
    roots = [eps[0] - eps[1], eps[1] - eps[2], eps[2] - eps[3], eps[2] + eps[3]]
    found = []
    for signs in itertools.product((1, -1), repeat=4):
        s = np.array(signs)

        def lam(u, v):
            return int(np.sum(u * v * s))

        diag = []
        for r in roots:
            l = lam(r, r)
            v = q**l
            if l == 0:
                v = v * space.minus_one()
            diag.append(v)
        edges = {}
        for i in range(4):
            for j in range(i + 1, 4):
                l = lam(roots[i], roots[j])
                if l:
                    edges[(i, j)] = q ** (2 * l)
        chi = upper(space, diag, edges)
        c = counts(chi)
        if c:
            found.append((signs, c))
    return found


def chain_edges(vals3):
    return {(0, 1): vals3[0], (1, 2): vals3[1], (2, 3): vals3[2]}


def branch_edges(vals3):
    # center at vertex 1 (0-based): 0-1, 1-2, 1-3
    return {(0, 1): vals3[0], (1, 2): vals3[1], (1, 3): vals3[2]}


def branch3_edges(vals3):
    # center at vertex 2: 0-1, 1-2, 2-3 is the chain; star at 2: 0-2? no:
    # shape: 1-2, 2-3, 2-4 in 1-based = (0,1),(1,2),(1,3) already covered;
    # this one: (0,1),(1,2),(2,3) chain handled separately.
    return None


def rank2_admissible(space, alphabet_diag, alphabet_edge):
    ok = set()
    for d1, e, d2 in itertools.product(alphabet_diag, alphabet_edge, alphabet_diag):
        chi = upper(space, [d1, d2], {(0, 1): e})
        try:
            g = groupoid.enumerate(chi, vertex_cap=80)
        except (CapExceeded, InfiniteType):
            continue
        ok.add((d1, e, d2))
    return ok


def alphabet_search(space, alphabet_diag, alphabet_edge, shapes=("chain", "branch")):
    ok2 = rank2_admissible(space, alphabet_diag, alphabet_edge)
    print(f"  admissible rank-2 triples: {len(ok2)}", flush=True)
    hits = []
    tried = 0
    for shape in shapes:
        for diag in itertools.product(alphabet_diag, repeat=4):
            for ev in itertools.product(alphabet_edge, repeat=3):
                if shape == "chain":
                    pairs = [(0, 1), (1, 2), (2, 3)]
                else:
                    pairs = [(0, 1), (1, 2), (1, 3)]
                if any(
                    (diag[i], e, diag[j]) not in ok2
                    for (i, j), e in zip(pairs, ev)
                ):
                    continue
                tried += 1
                chi = upper(space, list(diag), dict(zip(pairs, ev)))
                try:
                    objs = groupoid.objects(chi, cap=30)
                except (CapExceeded, InfiniteType):
                    continue
                nob = len(objs)
                if nob not in {t[1] for t in TARGETS}:
                    continue
                try:
                    g = groupoid.enumerate(chi, vertex_cap=3500)
                except (CapExceeded, InfiniteType):
                    continue
                key = (g.nvertices, nob)
                if key in TARGETS:
                    hits.append((TARGETS[key], shape, diag, ev, key))
                    print(
                        f"  HIT {TARGETS[key]}: {shape} diag={[str(x) for x in diag]} "
                        f"edges={[str(x) for x in ev]} -> {key}",
                        flush=True,
                    )
    print(f"  candidates fully enumerated: {tried}", flush=True)
    return hits


def main():
    which = sys.argv[1] if len(sys.argv) > 1 else "all"

    if which in ("all", "dtail"):
        print("== D-tail signature families ==", flush=True)
        for signs, c in d_tail_signature_family():
            tag = TARGETS.get(c, "")
            print(f"  signs={signs}: (|V|, objects) = {c} {tag}", flush=True)

    if which in ("all", "zeta"):
        print("== zeta_3 alphabet (M=6, no free parameter) ==", flush=True)
        space = ScalarWorkspace(6)
        vals = [space.zeta(k) for k in range(1, 6)]
        alphabet_search(space, vals, vals)

    if which in ("all", "q"):
        print("== q alphabet (M=2, one parameter) ==", flush=True)
        space = ScalarWorkspace(2, ("q",))
        q = space.param("q")
        minus = space.minus_one()
        diag = [q, q**-1, q**2, q**-2, q**3, q**-3, minus]
        edge = [q, q**-1, q**2, q**-2, q**3, q**-3, minus * q, minus * q**-1]
        alphabet_search(space, diag, edge)


if __name__ == "__main__":
    main()
