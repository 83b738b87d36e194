"""Recognition of free and projective left S-posets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import LEFT, SPoset, StructureError


@dataclass(frozen=True)
class Generator:
    idempotent: int
    element: int
    # images[k] = (k-th element of Se, in ascending order) acting on ``element``
    images: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Decomposition:
    components: tuple[tuple[int, ...], ...]
    generators: tuple[Optional[Generator], ...]

    @property
    def projective(self) -> bool:
        return all(g is not None for g in self.generators)


def _components(A: SPoset) -> list[tuple[int, ...]]:
    parent = list(A.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for x in A.elements:
        for y in A.elements:
            if A.leq[x][y]:
                union(x, y)
        for row in A.act:
            union(x, row[x])
    groups: dict[int, list[int]] = {}
    for x in A.elements:
        groups.setdefault(find(x), []).append(x)
    return [tuple(g) for g in sorted(groups.values())]


def _present(A: SPoset, comp, e: int, c: int) -> Optional[Generator]:
    """Check that ``se -> s*c`` is an isomorphism from ``Se`` onto ``comp``."""
    S = A.monoid
    Se = sorted(S.left_principal(e))
    image = {}
    for s in S.elements:
        se, sc = S.mul[s][e], A.act[s][c]
        if image.setdefault(se, sc) != sc:
            return None
    if sorted(image.values()) != sorted(comp):
        return None
    for u in Se:
        for v in Se:
            if S.leq[u][v] != A.leq[image[u]][image[v]]:
                return None
    return Generator(e, c, tuple((u, image[u]) for u in Se))


def _find_generator(A: SPoset, comp, idempotents) -> Optional[Generator]:
    comp_set = set(comp)
    cands = [c for c in comp if A.orbit(c) == comp_set]
    for e in idempotents:
        if len(A.monoid.left_principal(e)) != len(comp):
            continue
        for c in cands:
            g = _present(A, comp, e, c)
            if g is not None:
                return g
    return None


def decompose(A: SPoset) -> Decomposition:
    """Split ``A`` into components joined by comparability and the action.

    A component gets a generator when it is isomorphic to ``Se`` for an
    idempotent ``e`` (identity tried first).
    """
    if A.side != LEFT:
        raise StructureError("decomposition is implemented for left S-posets")
    S = A.monoid
    idem = [S.one] + [e for e in S.idempotents if e != S.one]
    comps = _components(A)
    gens = tuple(_find_generator(A, comp, idem) for comp in comps)
    return Decomposition(tuple(comps), gens)


def is_projective(A: SPoset) -> tuple[bool, Decomposition]:
    d = decompose(A)
    return d.projective, d


def is_free(A: SPoset) -> tuple[bool, int]:
    """Whether ``A`` is free, with the basis size (0 when not free)."""
    S = A.monoid
    comps = _components(A)
    for comp in comps:
        if _find_generator(A, comp, [S.one]) is None:
            return False, 0
    return True, len(comps)
