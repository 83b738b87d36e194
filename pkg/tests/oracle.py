"""Slow, independent reference implementations used to cross-check the library.

Nothing here imports the enumeration or closure code under test; structures
are plain tuples and isomorphism is tested by trying every bijection.
"""

from itertools import permutations, product


def all_orders(n):
    """Partial orders on range(n) as frozensets of pairs (reflexive pairs included)."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = {(i, i) for i in range(n)}
    out = []
    for bits in product((0, 1), repeat=len(off)):
        rel = diag | {p for p, b in zip(off, bits) if b}
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            out.append(frozenset(rel))
    return out


def monoid_tables(n):
    """All associative tables on range(n) with two-sided identity 0."""
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    for vals in product(range(n), repeat=len(cells)):
        m = {(0, j): j for j in range(n)}
        m.update({(i, 0): i for i in range(n)})
        m.update(dict(zip(cells, vals)))
        if all(m[m[a, b], c] == m[a, m[b, c]] for a in range(n) for b in range(n) for c in range(n)):
            yield m


def compatible(m, rel, n):
    return all((m[c, a], m[c, b]) in rel and (m[a, c], m[b, c]) in rel
               for a, b in rel for c in range(n))


def pomonoid_iso(x, y, n):
    (m1, r1), (m2, r2) = x, y
    for rest in permutations(range(1, n)):
        p = (0,) + rest
        if all(p[m1[a, b]] == m2[p[a], p[b]] for a in range(n) for b in range(n)) and \
                {(p[a], p[b]) for a, b in r1} == set(r2):
            return True
    return False


def count_pomonoids(n, trivial_only=False):
    reps = []
    orders = [frozenset((i, i) for i in range(n))] if trivial_only else all_orders(n)
    for m in monoid_tables(n):
        for rel in orders:
            if compatible(m, rel, n) and not any(pomonoid_iso((m, rel), r, n) for r in reps):
                reps.append((m, rel))
    return len(reps)


def count_sposets(mul, sleq, k, size):
    """Left S-posets of the given size over the pomonoid (mul dict, order set on range(k))."""
    maps = list(product(range(size), repeat=size))
    reps = []
    for acts in product(maps, repeat=k - 1):
        act = (tuple(range(size)),) + acts
        if any(act[mul[s, t]][x] != act[s][act[t][x]] for s in range(k) for t in range(k)
               for x in range(size)):
            continue
        for rel in all_orders(size):
            if not all((act[s][a], act[s][b]) in rel for a, b in rel for s in range(k)):
                continue
            if not all((act[u][x], act[v][x]) in rel for u, v in sleq for x in range(size)):
                continue
            if not any(_sposet_iso((act, rel), r, size) for r in reps):
                reps.append((act, rel))
    return len(reps)


def _sposet_iso(x, y, size):
    (a1, r1), (a2, r2) = x, y
    for p in permutations(range(size)):
        if all(p[a1[s][v]] == a2[s][p[v]] for s in range(len(a1)) for v in range(size)) and \
                {(p[a], p[b]) for a, b in r1} == set(r2):
            return True
    return False


def tensor_relation(A, B):
    """Pair preorder of A (x) B by naive saturation over explicit pair sets."""
    S = A.monoid
    pairs = [(a, b) for a in A.elements for b in B.elements]
    rel = {(p, q) for p in pairs for q in pairs if A.le(p[0], q[0]) and B.le(p[1], q[1])}
    for a, s, b in product(A.elements, S.elements, B.elements):
        rel.add(((A.a(s, a), b), (a, B.a(s, b))))
        rel.add(((a, B.a(s, b)), (A.a(s, a), b)))
    changed = True
    while changed:
        changed = False
        for p, q in list(rel):
            for q2, r in list(rel):
                if q == q2 and (p, r) not in rel:
                    rel.add((p, r))
                    changed = True
    return rel


def all_maps_pomorphisms(A, B):
    """Every action- and order-preserving map, by listing all |B|^|A| functions."""
    out = []
    for img in product(B.elements, repeat=A.size):
        if all(img[A.a(s, x)] == B.a(s, img[x]) for s in A.monoid.elements for x in A.elements) and \
                all(B.le(img[x], img[y]) for x in A.elements for y in A.elements if A.le(x, y)):
            out.append(img)
    return out
