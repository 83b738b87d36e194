"""Least order congruences generated by a relation, and their quotients."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Map,
    SPoset,
    StructureError,
    enumerate_pomorphisms,
    iter_pomorphisms,
    masks_to_matrix,
    morphism_kind,
    transitive_closure,
    NOT_POMORPHISM,
)


@dataclass(frozen=True)
class QuotientSPoset:
    base: SPoset
    classes: tuple[tuple[int, ...], ...]
    quotient: SPoset
    projection: Map
    preorder: tuple[int, ...]  # bitmask rows of Q on the base carrier

    def class_of(self, x: int) -> int:
        return self.projection.images[x]

    def related(self, x: int, y: int) -> bool:
        return bool(self.preorder[x] >> y & 1)


def action_stable_preorder(B: SPoset, pairs) -> list[int]:
    """Least preorder containing ``leq(B)`` and ``pairs``, closed under the action.

    Iterates transitive closure and action closure to a fixed point.
    """
    n = B.size
    masks = list(B.leq_masks)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise StructureError(f"pair {(a, b)} out of range")
        masks[a] |= 1 << b
    act = B.act
    while True:
        transitive_closure(masks)
        changed = False
        for x in range(n):
            row = masks[x]
            for y in range(n):
                if not row >> y & 1:
                    continue
                for r in act:
                    sx, sy = r[x], r[y]
                    if not masks[sx] >> sy & 1:
                        masks[sx] |= 1 << sy
                        changed = True
        if not changed:
            return masks


def quotient_by_preorder(B: SPoset, masks: list[int]) -> QuotientSPoset:
    """Factor ``B`` by ``Q`` intersected with its converse.

    Class representatives are least indices, and classes are numbered in
    order of their representatives.
    """
    n = B.size
    cls = [-1] * n
    classes = []
    for x in range(n):
        if cls[x] != -1:
            continue
        members = tuple(y for y in range(n) if masks[x] >> y & 1 and masks[y] >> x & 1)
        for y in members:
            cls[y] = len(classes)
        classes.append(members)
    k = len(classes)
    reps = [c[0] for c in classes]
    act = tuple(tuple(cls[row[r]] for r in reps) for row in B.act)
    qmasks = [sum(1 << j for j in range(k) if masks[reps[i]] >> reps[j] & 1) for i in range(k)]
    names = tuple("[" + B.names[r] + "]" for r in reps)
    quotient = SPoset(B.monoid, B.side, act, masks_to_matrix(qmasks, k), names)
    return QuotientSPoset(B, tuple(classes), quotient, Map(B, quotient, tuple(cls)), tuple(masks))


def order_congruence(B: SPoset, R=()) -> QuotientSPoset:
    """The quotient of ``B`` by the least order congruence putting ``a`` below ``b`` for ``(a, b)`` in ``R``."""
    return quotient_by_preorder(B, action_stable_preorder(B, R))


def check_universal_property(q: QuotientSPoset, R, C: SPoset) -> bool:
    """Check the factorisation property of ``q`` against every pomorphism into ``C``.

    Also requires the projection to be a surjective pomorphism sending each
    pair of ``R`` to an ordered pair of classes.
    """
    B, Q = q.base, q.quotient
    proj = q.projection
    if morphism_kind(proj) == NOT_POMORPHISM or not proj.surjective:
        return False
    if any(not Q.leq[proj(a)][proj(b)] for a, b in R):
        return False
    betas = enumerate_pomorphisms(Q, C)
    for alpha in iter_pomorphisms(B, C):
        f = alpha.images
        if any(not C.leq[f[a]][f[b]] for a, b in R):
            continue
        matches = sum(1 for beta in betas if proj.compose(beta).images == f)
        if matches != 1:
            return False
    return True
