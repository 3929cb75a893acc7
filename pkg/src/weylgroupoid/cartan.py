"""Finite Cartan/Coxeter classification helpers.

Recognizes finite-type generalized Cartan matrices and Coxeter matrices by
matching connected components of the diagram against the classical series
A, B, C, D, E, F, G, H and I2(m).  Used by the bicharacter layer (Cartan-type
detection), the Coxeter layer (finiteness test) and the catalog (standard
matrices).
"""

from __future__ import annotations

import numpy as np

# Coxeter label m(i,j) attached to a bond with Cartan product a_ij * a_ji.
_BOND_TO_M = {0: 2, 1: 3, 2: 4, 3: 6}

# Orders of the irreducible finite Coxeter groups, keyed by (family, rank).
_FACTORIAL = [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800]


def coxeter_group_order(family: str, rank: int, m: int = 0) -> int:
    if family == "A":
        return _FACTORIAL[rank + 1]
    if family in ("B", "C"):
        return 2**rank * _FACTORIAL[rank]
    if family == "D":
        return 2 ** (rank - 1) * _FACTORIAL[rank]
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    if family == "F":
        return 1152
    if family == "G":
        return 12
    if family == "H":
        return {2: 10, 3: 120, 4: 14400}[rank]
    if family == "I":
        return 2 * m
    raise ValueError(f"unknown family {family!r}")


def _components(n: int, bonded) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for v in range(n):
        if seen[v]:
            continue
        comp, stack = [], [v]
        seen[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in range(n):
                if not seen[w] and bonded(u, w):
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_coxeter_component(m: np.ndarray, comp: list[int]) -> tuple[str, int, int] | None:
    """Classify one connected component of a Coxeter matrix.

    Returns (family, rank, m) with m only meaningful for I2, or None if the
    component is not of finite type.
    """
    k = len(comp)
    sub = m[np.ix_(comp, comp)]
    if k == 1:
        return ("A", 1, 0)
    if k == 2:
        label = int(sub[0, 1])
        if label == 3:
            return ("A", 2, 0)
        if label == 4:
            return ("B", 2, 0)
        if label == 5:
            return ("H", 2, 5)
        if label == 6:
            return ("G", 2, 6)
        return ("I", 2, label)

    deg = [sum(1 for j in range(k) if j != i and sub[i, j] > 2) for i in range(k)]
    if any(d > 3 for d in deg) or sum(1 for d in deg if d == 3) > 1:
        return None

    labels = sorted(int(sub[i, j]) for i in range(k) for j in range(i + 1, k) if sub[i, j] > 2)
    if len(labels) != k - 1 and len(labels) != k:
        return None
    if len(labels) == k:  # a cycle: affine, never finite
        return None

    branch = [i for i in range(k) if deg[i] == 3]
    if not branch:
        # a path; walk it from one end
        ends = [i for i in range(k) if deg[i] == 1]
        if len(ends) != 2:
            return None
        order = [ends[0]]
        prev = -1
        while len(order) < k:
            cur = order[-1]
            nxt = [j for j in range(k) if j != prev and j != cur and sub[cur, j] > 2]
            if len(nxt) != 1:
                return None
            prev = cur
            order.append(nxt[0])
        path = [int(sub[order[t], order[t + 1]]) for t in range(k - 1)]
        if path[0] > path[-1]:
            path.reverse()
        if all(x == 3 for x in path):
            return ("A", k, 0)
        if path == [3] * (k - 2) + [4]:
            return ("B", k, 0)
        if path == [3] * (k - 2) + [5] and k in (3, 4):
            return ("H", k, 0)
        if k == 4 and path == [3, 4, 3]:
            return ("F", 4, 0)
        return None

    # one branch node: D or E, all labels must be 3
    if any(x != 3 for x in labels):
        return None
    b = branch[0]
    arms = []
    for start in (j for j in range(k) if sub[b, j] > 2 and j != b):
        arm, prev, cur = 1, b, start
        while deg[cur] != 1:
            nxt = [j for j in range(k) if j != prev and j != cur and sub[cur, j] > 2]
            if len(nxt) != 1:
                return None
            prev, cur = cur, nxt[0]
            arm += 1
        arms.append(arm)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", k, 0)
    if arms == [1, 2, 2] or arms == [1, 2, 3] or arms == [1, 2, 4]:
        return ("E", k, 0)
    return None


def classify_coxeter_matrix(m: np.ndarray) -> list[tuple[str, int, int]] | None:
    """Split a Coxeter matrix into components and classify each.

    Returns the list of (family, rank, m) per component, or None if any
    component fails to be of finite type.
    """
    m = np.asarray(m)
    n = m.shape[0]
    comps = _components(n, lambda u, v: m[u, v] > 2)
    out = []
    for comp in comps:
        c = _classify_coxeter_component(m, comp)
        if c is None:
            return None
        out.append(c)
    return out


def coxeter_order(m: np.ndarray) -> int | None:
    """Order of the Coxeter group with matrix m, or None if infinite."""
    comps = classify_coxeter_matrix(m)
    if comps is None:
        return None
    total = 1
    for family, rank, label in comps:
        total *= coxeter_group_order(family, rank, label)
    return total


def cartan_matrix_to_coxeter(a: np.ndarray) -> np.ndarray | None:
    """Coxeter matrix of a generalized Cartan matrix, None when a bond is wild."""
    a = np.asarray(a)
    n = a.shape[0]
    m = np.ones((n, n), dtype=int)
    for i in range(n):
        for j in range(i + 1, n):
            bond = int(a[i, j]) * int(a[j, i])
            if (a[i, j] == 0) != (a[j, i] == 0):
                return None
            if bond not in _BOND_TO_M:
                return None
            m[i, j] = m[j, i] = _BOND_TO_M[bond]
    return m


def classify_cartan_matrix(a: np.ndarray) -> str | None:
    """Finite-type label of a generalized Cartan matrix, e.g. ``"B3"`` or
    ``"A2xA1"``, or None if not of finite type.

    Distinguishes B from C by the short-root position (row with entry -2).
    """
    a = np.asarray(a)
    n = a.shape[0]
    if not all(a[i, i] == 2 for i in range(n)):
        return None
    if any(a[i, j] > 0 for i in range(n) for j in range(n) if i != j):
        return None
    m = cartan_matrix_to_coxeter(a)
    if m is None:
        return None
    comps = _components(n, lambda u, v: m[u, v] > 2)
    names = []
    for comp in comps:
        c = _classify_coxeter_component(m, comp)
        if c is None or c[0] in ("H", "I"):
            return None
        family, rank, _ = c
        if family == "B":
            # double bond: the short root has -2 pointing *into* it
            sub = a[np.ix_(comp, comp)]
            pair = [
                (i, j)
                for i in range(rank)
                for j in range(rank)
                if i != j and sub[i, j] == -2
            ]
            if len(pair) != 1:
                return None
            i2, _ = pair[0]
            ends = [
                i
                for i in range(rank)
                if sum(1 for j in range(rank) if j != i and sub[i, j] != 0) == 1
            ]
            # type B: the -2 row sits at a diagram end (its column is the long
            # neighbour); type C: the -2 row is the interior neighbour.
            family = "B" if i2 in ends or rank == 2 else "C"
        names.append((family, rank))
    names.sort(key=lambda fr: (-fr[1], fr[0]))
    return "x".join(f"{f}{r}" for f, r in names)


# Standard Cartan matrices and minimal symmetrizations -----------------------


def standard_cartan_matrix(family: str, rank: int) -> np.ndarray:
    """Cartan matrix of the given finite type, rows a_ij = 2(ai,aj)/(ai,ai)."""
    family = family.upper()
    a = 2 * np.eye(rank, dtype=int)
    chain = {
        "A": range(rank - 1),
        "B": range(rank - 1),
        "C": range(rank - 1),
        "F": range(rank - 1),
        "G": range(rank - 1),
        "D": range(rank - 2),
        "E": range(rank - 2),
    }
    if family not in chain:
        raise ValueError(f"unknown family {family!r}")
    bad = (
        (family == "A" and rank < 1)
        or (family in ("B", "C") and rank < 2)
        or (family == "D" and rank < 3)
        or (family == "E" and rank not in (6, 7, 8))
        or (family == "F" and rank != 4)
        or (family == "G" and rank != 2)
    )
    if bad:
        raise ValueError(f"no finite type {family}{rank}")
    for i in chain[family]:
        a[i, i + 1] = a[i + 1, i] = -1
    if family == "D":
        a[rank - 3, rank - 1] = a[rank - 1, rank - 3] = -1
    if family == "E":
        # chain 0..rank-2, extra node attached to position 2
        a[2, rank - 1] = a[rank - 1, 2] = -1
    if family == "B":  # last root short
        a[rank - 1, rank - 2] = -2
    if family == "C":  # last root long
        a[rank - 2, rank - 1] = -2
    if family == "F":
        a[2, 1] = -2
    if family == "G":
        a[1, 0] = -3
    return a


def minimal_symmetrizer(a: np.ndarray) -> np.ndarray:
    """Smallest positive integers d with diag(d) @ a symmetric."""
    a = np.asarray(a)
    n = a.shape[0]
    from fractions import Fraction

    d = [Fraction(0)] * n
    for comp in _components(n, lambda u, v: a[u, v] != 0):
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for v in comp:
                if v != u and a[u, v] != 0 and d[v] == 0:
                    d[v] = d[u] * a[u, v] / a[v, u]
                    stack.append(v)
        denom = 1
        for v in comp:
            denom = denom * d[v].denominator // np.gcd(denom, d[v].denominator)
        for v in comp:
            d[v] *= denom
        g = 0
        for v in comp:
            g = np.gcd(g, d[v].numerator)
        for v in comp:
            d[v] /= int(g)
    return np.array([int(x) for x in d], dtype=int)
