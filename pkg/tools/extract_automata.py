#!/usr/bin/env python3
"""Extract object-transition tables from the circuit figures in paper.md.

Each printed letter s^x_i means: the walk steps by generator i and lands in
object x.  Consecutive letters therefore give tau_i(previous object) = x,
yielding the object automaton of the groupoid, useful to validate candidate
reconstructions of the unprinted q-matrices.
"""

import re
import sys

TOKEN = re.compile(
    r"s\^\{?(?:\{\\bar\{([a-z])\}\}|\{\\bar ([a-z])\}|([a-z]))\}?\^?_\{?([0-9])\}?"
    r"(?:\^\\prime)?"
)
# also handle primed forms s^{\bar{c}}^\prime etc. appear as {\bar{c}}^\prime inside braces


def tokens(text):
    # normalize: drop TeX plumbing that interferes
    text = text.replace("\\cdot", " ")
    out = []
    i = 0
    # handle \bar and prime variants: s^{\bar{a}}_4, s^{{\bar{a}}}_4, s^{\bar{a}^\prime}_4 ...
    pat = re.compile(
        r"s\^\{+\\bar\{([a-z])\}\}*(\^\\prime|\\prime)?\}*_([0-9])"
        r"|s\^\{?([a-z])(\^\\prime|\\prime)?\}?_([0-9])"
    )
    for m in pat.finditer(text):
        if m.group(1):
            obj = m.group(1) + "bar" + ("p" if m.group(2) else "")
            gen = int(m.group(3))
        else:
            obj = m.group(4) + ("p" if m.group(5) else "")
            gen = int(m.group(6))
        out.append((obj, gen))
    return out


def automaton(seq):
    table = {}
    conflicts = []
    for t in range(1, len(seq)):
        prev_obj = seq[t - 1][0]
        obj, gen = seq[t]
        key = (prev_obj, gen)
        if key in table and table[key] != obj:
            conflicts.append((key, table[key], obj))
        table[key] = obj
    # close cyclically
    key = (seq[-1][0], seq[0][1])
    if key in table and table[key] != seq[0][0]:
        conflicts.append((key, table[key], seq[0][0]))
    table[key] = seq[0][0]
    return table, conflicts


def main(path, start, end, subs=""):
    text = "\n".join(open(path).read().splitlines()[start - 1 : end])
    seq = tokens(text)
    submap = dict(p.split("=") for p in subs.split(",") if p)
    seq = [(submap.get(o, o), g) for o, g in seq]
    objs = sorted({o for o, _ in seq})
    print(f"letters: {len(seq)}  objects: {len(objs)} {objs}")
    table, conflicts = automaton(seq)
    if conflicts:
        print(f"CONFLICTS: {len(conflicts)}")
        for c in conflicts[:10]:
            print("  ", c)
    gens = sorted({g for _, g in seq})
    for o in objs:
        row = []
        for g in gens:
            row.append(table.get((o, g), "?"))
        print(f"  tau[{o}]: " + " ".join(f"{g}->{r}" for g, r in zip(gens, row)))
    # involution check
    bad = [
        (o, g)
        for (o, g), r in table.items()
        if table.get((r, g)) not in (None, o)
    ]
    print("involution violations:", bad[:10])


if __name__ == "__main__":
    main(
        sys.argv[1],
        int(sys.argv[2]),
        int(sys.argv[3]),
        sys.argv[4] if len(sys.argv) > 4 else "",
    )
