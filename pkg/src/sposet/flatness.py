"""Flatness of left S-posets.

Ideal-based variants (PWF, WF, PWPF, WPF) are decided exactly.  Flatness
and po-flatness quantify over all skeletons, so they are only checked up
to a skeleton length bound through the standard quotients of free right
S-posets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from .congruence import QuotientSPoset, order_congruence
from .core import (
    LEFT,
    RIGHT,
    Map,
    Pomonoid,
    SPoset,
    StructureError,
    masks_to_matrix,
    right_ideals,
    sub_sposet,
)
from .tensor import (
    Skeleton,
    connected_by_skeleton,
    eval_skeleton_formula,
    induced_tensor_map,
    iter_skeletons,
    tensor_leq,
    tensor_product,
)

IDEAL_VARIANTS = ("PWF", "WF", "PWPF", "WPF")


@dataclass(frozen=True)
class FlatnessVerdict:
    variant: str
    holds: bool
    bound: Optional[int] = None  # skeleton length exhausted; None means exact
    failing_instance: Optional[tuple] = None

    @property
    def bounded(self) -> bool:
        return self.bound is not None

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if not self.holds:
            return "false"
        return f"bounded-true({self.bound})" if self.bounded else "true"


@dataclass(frozen=True)
class StandardQuotient:
    skeleton: Skeleton
    free: SPoset
    relations: tuple[tuple[int, int], ...]
    quotient: QuotientSPoset
    marked: tuple[int, int]
    sub: SPoset
    inclusion: Map
    marked_sub: tuple[int, int]


def free_right(S: Pomonoid, generators: Iterable[str]) -> SPoset:
    """Disjoint union of copies ``gS``; ``(g, s)`` is encoded as ``g*|S| + s``."""
    gens = list(generators)
    k, n = len(gens), S.size
    act = tuple(tuple(g * n + S.mul[s][t] for g in range(k) for s in S.elements)
                for t in S.elements)
    masks = []
    for g in range(k):
        for s in S.elements:
            masks.append(sum(1 << (g * n + t) for t in S.elements if S.leq[s][t]))
    names = tuple(f"{gen}{S.names[s]}" if s != S.one else gen
                  for gen in gens for s in S.elements)
    return SPoset(S, RIGHT, act, masks_to_matrix(masks, k * n), names)


def _chain_relations(S, half, chain):
    n = S.size
    return [(chain[i] * n + half[2 * i], chain[i + 1] * n + half[2 * i + 1])
            for i in range(len(half) // 2)]


@lru_cache(maxsize=4096)
def build_standard_quotient(S: Pomonoid, sk: Skeleton) -> StandardQuotient:
    m, nn = sk.m, sk.n
    if sk.doubled:
        gens = ["x"] + [f"x{i}" for i in range(2, m + 1)] + ["x'"] + [f"y{j}" for j in range(2, nn + 1)]
        x, x2 = 0, m
        forward = [x] + list(range(1, m)) + [x2]
        backward = [x2] + list(range(m + 1, m + nn)) + [x]
        rel = _chain_relations(S, sk.first, forward) + _chain_relations(S, sk.second, backward)
    else:
        gens = ["x"] + [f"x{i}" for i in range(2, m + 1)] + ["x'"]
        x, x2 = 0, m
        rel = _chain_relations(S, sk.first, list(range(m + 1)))
    F = free_right(S, gens)
    q = order_congruence(F, rel)
    size = S.size
    marked = (q.class_of(x * size + S.one), q.class_of(x2 * size + S.one))
    Q = q.quotient
    sub, inc = sub_sposet(Q, Q.orbit(marked[0]) | Q.orbit(marked[1]))
    pos = {c: i for i, c in enumerate(inc.images)}
    return StandardQuotient(sk, F, tuple(rel), q, marked, sub, inc,
                            (pos[marked[0]], pos[marked[1]]))


def _check_left(B: SPoset):
    if B.side != LEFT:
        raise StructureError("flatness is a property of left S-posets")


def check_ideal_flatness(B: SPoset, variant: str) -> FlatnessVerdict:
    """Exact check against inclusions of (principal) right ideals into ``S``.

    Plain variants need the induced tensor map to be one-one, po-variants
    an order embedding.
    """
    _check_left(B)
    if variant not in IDEAL_VARIANTS:
        raise ValueError(f"unknown ideal flatness variant {variant!r}")
    S = B.monoid
    principal = variant.startswith("PW")
    po = variant.endswith("PF")
    ideals = right_ideals(S, principal_only=principal)
    whole = next(I for I in ideals if len(I.elements) == S.size)
    target = tensor_product(whole.poset, B)
    for I in ideals:
        if I is whole:
            continue
        source = tensor_product(I.poset, B)
        f = induced_tensor_map(I.inclusion, B, source, target)
        if po:
            ok = f.reflects_order()
        else:
            ok = f.injective
        if not ok:
            bad = _offending_pair(f, po)
            return FlatnessVerdict(variant, False, None,
                                   (tuple(sorted(I.elements)),
                                    tuple(source.classes[i][0] for i in bad)))
    return FlatnessVerdict(variant, True)


def _offending_pair(f: Map, po: bool):
    A, T = f.source, f.target
    for i, j in product(A.elements, repeat=2):
        if i == j:
            continue
        fi, fj = f.images[i], f.images[j]
        if po and T.leq[fi][fj] and not A.leq[i][j]:
            return (i, j)
        if not po and fi == fj:
            return (i, j)
    raise AssertionError("no offending pair found")


def _premise_pairs(B: SPoset, sk: Skeleton):
    kind = "gamma" if sk.doubled else "gamma_leq"
    for b, b2 in product(B.elements, repeat=2):
        ok, _ = eval_skeleton_formula(kind, sk, B, (b, b2))
        if ok:
            yield b, b2


def _connected_in(T, p, q, doubled):
    if doubled:
        return tensor_leq(T, p, q) and tensor_leq(T, q, p)
    return tensor_leq(T, p, q)


def check_flat_bounded(B: SPoset, po: bool = False, max_len: int = 6) -> FlatnessVerdict:
    """Search for a skeleton of length at most ``max_len`` witnessing non-flatness.

    Doubled skeletons test flatness, single skeletons po-flatness.  A
    failure is ``(skeleton, (b, b'))``: the marked pairs connect over the
    standard quotient but not over ``[x]S u [x']S``.
    """
    _check_left(B)
    doubled = not po
    if max_len < (2 if po else 4):
        raise ValueError("skeleton bound too small for the requested check")
    S = B.monoid
    variant = "PF" if po else "F"
    for sk in iter_skeletons(S, max_len, doubled=doubled):
        pairs = list(_premise_pairs(B, sk))
        if not pairs:
            continue
        sq = build_standard_quotient(S, sk)
        T = tensor_product(sq.sub, B)
        u, u2 = sq.marked_sub
        for b, b2 in pairs:
            if not _connected_in(T, (u, b), (u2, b2), doubled):
                return FlatnessVerdict(variant, False, None, (sk, (b, b2)))
    return FlatnessVerdict(variant, True, max_len)


def replacement_skeleton_search(S: Pomonoid, sk: Skeleton, B_family, bound: int) -> list[Skeleton]:
    """Skeletons (length at most ``bound``) of tossings over ``[x]S u [x']S``.

    Collected over every ``B`` in the family and every premise pair whose
    marked pairs connect over the sub-S-poset.  Completeness is relative
    to the family and the bound.
    """
    found: set[Skeleton] = set()
    order: list[Skeleton] = []
    if not B_family:
        return []
    sq = build_standard_quotient(S, sk)
    W = sq.sub
    u, u2 = sq.marked_sub
    candidates = list(iter_skeletons(S, bound, doubled=sk.doubled))
    for B in B_family:
        _check_left(B)
        T = tensor_product(W, B)
        for b, b2 in _premise_pairs(B, sk):
            if not _connected_in(T, (u, b), (u2, b2), sk.doubled):
                continue
            for U in candidates:
                if U not in found and connected_by_skeleton(W, B, (u, b), (u2, b2), U):
                    found.add(U)
                    order.append(U)
    rank = {U: i for i, U in enumerate(candidates)}
    return sorted(order, key=rank.__getitem__)
