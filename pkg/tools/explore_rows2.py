#!/usr/bin/env python3
"""Cascaded reconstruction search for the unprinted rank-4 table rows.

Assembles candidate rank-4 generalized Dynkin diagrams from admissible rank-2
bonds and rank-3 sub-diagrams over a mixed alphabet (zeta_6 powers times
small q powers), over chain / star / triangle+pendant / 4-cycle shapes, and
matches (|V|, |objects|) against the targets extracted from the figures.
"""

import itertools
import sys
from collections import defaultdict

sys.path.insert(0, "src")

from weylgroupoid import groupoid
from weylgroupoid.bichar import Bicharacter, InfiniteType
from weylgroupoid.exactnum import ScalarWorkspace
from weylgroupoid.groupoid import CapExceeded

TARGETS = {
    (360, 10): "row14-wk4",
    (1440, 12): "row17-ufo5",
    (2688, 7): "row21-g36",
    (2304, 16): "row22-ufo6",
}
OBJ_TARGETS = {10, 12, 7, 16}

SPACE = ScalarWorkspace(6, ("q",))
ONE = SPACE.one()


def upper(diag, edges):
    n = len(diag)
    q = [[ONE] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = diag[i]
    for (i, j), val in edges.items():
        q[i][j] = val
    return Bicharacter(tuple(tuple(r) for r in q))


def alphabet(bmax=2):
    vals = []
    for a in range(6):
        for b in range(-bmax, bmax + 1):
            vals.append(SPACE.scalar(a, (b,)))
    return vals


def finite(chi, ocap, vcap):
    try:
        groupoid.objects(chi, cap=ocap)
        g = groupoid.enumerate(chi, vertex_cap=vcap)
        return g
    except (CapExceeded, InfiniteType):
        return None


def main():
    vals = alphabet(2)
    diag_vals = [v for v in vals if not v.is_one]
    edge_vals = [v for v in vals if not v.is_one]
    print(f"alphabet: {len(diag_vals)} diag, {len(edge_vals)} edge", flush=True)

    # rank-2 admissibility
    ok2 = set()
    for d1, e, d2 in itertools.product(diag_vals, edge_vals, diag_vals):
        if finite(upper([d1, d2], {(0, 1): e}), 24, 100) is not None:
            ok2.add((d1, e, d2))
    print(f"admissible bonds: {len(ok2)}", flush=True)
    # index: extensions of a given diagonal
    ext = defaultdict(list)
    for d1, e, d2 in ok2:
        ext[d1].append((e, d2))

    # rank-3 chains d1-e1-d2-e2-d3
    ok3 = []
    for d1, e1, d2 in ok2:
        for e2, d3 in ext[d2]:
            chi = upper([d1, d2, d3], {(0, 1): e1, (1, 2): e2})
            if finite(chi, 26, 1600) is not None:
                ok3.append((d1, e1, d2, e2, d3))
    print(f"admissible rank-3 chains: {len(ok3)}", flush=True)
    chains_by_prefix = defaultdict(list)
    for d1, e1, d2, e2, d3 in ok3:
        chains_by_prefix[(d1, e1, d2)].append((e2, d3))

    seen_keys = set()
    hits = []

    def check(diag, edges, shape):
        chi = upper(list(diag), edges)
        try:
            objs = groupoid.objects(chi, cap=30)
        except (CapExceeded, InfiniteType):
            return
        if len(objs) not in OBJ_TARGETS:
            return
        g = finite(chi, 31, 3500)
        if g is None:
            return
        key = (g.nvertices, len(objs))
        if key in TARGETS:
            sig = (TARGETS[key], frozenset(objs))
            if sig in seen_keys:
                return
            seen_keys.add(sig)
            hits.append((TARGETS[key], shape, diag, edges, key))
            print(
                f"HIT {TARGETS[key]} [{shape}] diag={[str(x) for x in diag]} "
                f"edges={[(i, j, str(v)) for (i, j), v in sorted(edges.items())]} -> {key}",
                flush=True,
            )

    ok3set = set(ok3)

    # chains: ok3 chain + one more bond whose tail rank-3 is also admissible
    print("== chains ==", flush=True)
    n = 0
    for d1, e1, d2, e2, d3 in ok3:
        for e3, d4 in ext[d3]:
            if (d2, e2, d3, e3, d4) not in ok3set:
                continue
            n += 1
            check(
                (d1, d2, d3, d4),
                {(0, 1): e1, (1, 2): e2, (2, 3): e3},
                "chain",
            )
    print(f"chains assembled: {n}", flush=True)

    # stars: center c at position 1; every leaf pair forms an ok3 chain
    print("== stars ==", flush=True)
    n = 0
    for l1, e1, c in ok2:
        for e2, l2 in ext[c]:
            if (l1, e1, c, e2, l2) not in ok3set:
                continue
            for e3, l3 in ext[c]:
                if (l1, e1, c, e3, l3) not in ok3set:
                    continue
                if (l2, e2, c, e3, l3) not in ok3set:
                    continue
                n += 1
                check(
                    (l1, c, l2, l3),
                    {(0, 1): e1, (1, 2): e2, (1, 3): e3},
                    "star",
                )
    print(f"stars assembled: {n}", flush=True)

    print(f"total hits: {len(hits)}")


if __name__ == "__main__":
    main()
