"""Finitary conditions on a pomonoid and the axiom sentences they yield.

Covers the sets ``R<=(s,t) = {(u,v) : su <= tv}`` and
``r<=(s,t) = {u : su <= tu}``, their generators and dominating sets, the
sentence families for (EP), (PWP), (Pw), (PWPw) and (W), and e-good
factorisations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .core import LEFT, Pomonoid
from .logic import (
    And,
    Exists,
    Forall,
    Implies,
    Not,
    Or,
    Sentence,
    eq,
    le,
    t,
)

AXIOM_CLASSES = ("PiS", "EP", "Pw", "PWP", "PWPw", "W")


@dataclass(frozen=True)
class WitnessSets:
    kind: str
    members: tuple
    generators: tuple = ()
    dominating: tuple = ()
    order: str = ""  # quasi-order used to pick ``generators`` or ``dominating``

    @property
    def empty(self) -> bool:
        return not self.members


def maximal_representatives(items, above):
    """Least member of each maximal class of the quasi-order ``above(x, y)``.

    ``above(x, y)`` means ``y`` is below ``x``.  Every item lies below some
    returned representative.
    """
    items = list(items)
    reps = []
    for x in items:
        beaten = any(above(y, x) and not above(x, y) for y in items)
        if beaten:
            continue
        if any(above(r, x) and above(x, r) for r in reps):
            continue
        reps.append(x)
    return tuple(reps)


def relation_pairs(S: Pomonoid, s: int, t_: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u, v in product(S.elements, repeat=2)
                 if S.leq[S.mul[s][u]][S.mul[t_][v]])


def relation_sets(S: Pomonoid, s: int, t_: int) -> tuple[WitnessSets, WitnessSets]:
    """``R<=(s,t)`` and ``r<=(s,t)`` with minimal generating sets under the right action."""
    mul = S.mul
    R = relation_pairs(S, s, t_)
    r = tuple(u for u in S.elements if S.leq[mul[s][u]][mul[t_][u]])

    def pair_above(g, x):
        return any((mul[g[0]][h], mul[g[1]][h]) == x for h in S.elements)

    def elem_above(g, x):
        return any(mul[g][h] == x for h in S.elements)

    return (WitnessSets("R", R, maximal_representatives(R, pair_above), (), "divisibility"),
            WitnessSets("r", r, maximal_representatives(r, elem_above), (), "divisibility"))


def dominates(S: Pomonoid, g, x) -> bool:
    """``g = (u, v)`` dominates ``x = (x0, x1)``: some ``h`` has ``x0 <= u h`` and ``v h <= x1``."""
    mul, leq = S.mul, S.leq
    return any(leq[x[0]][mul[g[0]][h]] and leq[mul[g[1]][h]][x[1]] for h in S.elements)


def w_pairs(S: Pomonoid, s: int, t_: int) -> tuple[tuple[int, int], ...]:
    """The pairs ``(su, tv)`` with ``su <= tv``, deduplicated, ascending."""
    mul, leq = S.mul, S.leq
    return tuple(sorted({(mul[s][u], mul[t_][v]) for u, v in product(S.elements, repeat=2)
                         if leq[mul[s][u]][mul[t_][v]]}))


def dominating_set(S: Pomonoid, kind: str, s: int, t_: Optional[int] = None) -> WitnessSets:
    """Minimal dominating sets for ``Pw(s,t)``, ``PWPw(s)`` or ``W(s,t)``."""
    if kind == "PWPw":
        t_ = s
    elif t_ is None:
        raise ValueError(f"{kind} needs two monoid elements")
    if kind in ("Pw", "PWPw"):
        members = relation_pairs(S, s, t_)
    elif kind == "W":
        members = w_pairs(S, s, t_)
    else:
        raise ValueError(f"unknown domination kind {kind!r}")
    dom = maximal_representatives(members, lambda g, x: dominates(S, g, x))
    return WitnessSets(kind, members, (), dom, "domination")


# --------------------------------------------------------------------------
# sentences


def _disj(parts):
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def _conj(parts):
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def pis_sentences(S: Pomonoid) -> list[Sentence]:
    E = S.elements
    out = [Forall(("x",), eq(t("x", S.one), t("x")))]
    for s, u in product(E, repeat=2):
        out.append(Forall(("x",), eq(t("x", s, u), t("x", S.mul[s][u]))))
    for s in E:
        out.append(Forall(("x", "y"), Implies(le(t("x"), t("y")), le(t("x", s), t("y", s)))))
    for u, v in product(E, repeat=2):
        if S.leq[u][v]:
            out.append(Forall(("x",), le(t("x", u), t("x", v))))
    return out


def _negative(s, t_) -> Sentence:
    return Forall(("x", "y"), Not(le(t("x", s), t("y", t_))))


def _omega(s, t_, dom, coeff_left=False) -> Sentence:
    if coeff_left:
        body = _disj(_conj((le(t("x", s), t("z", p)), le(t("z", q), t("y", t_)))) for p, q in dom)
    else:
        body = _disj(_conj((le(t("x"), t("z", u)), le(t("z", v), t("y")))) for u, v in dom)
    return Forall(("x", "y"), Implies(le(t("x", s), t("y", t_)), Exists(("z",), body)))


def ep_sentence(S: Pomonoid, s: int, t_: int) -> Sentence:
    R, _ = relation_sets(S, s, t_)
    if R.empty:
        return Forall(("x",), Not(le(t("x", s), t("x", t_))))
    body = _disj(_conj((eq(t("x"), t("z", u)), eq(t("x"), t("z", v)))) for u, v in R.generators)
    return Forall(("x",), Implies(le(t("x", s), t("x", t_)), Exists(("z",), body)))


def pwp_sentence(S: Pomonoid, s: int) -> Sentence:
    R, _ = relation_sets(S, s, s)
    body = _disj(_conj((eq(t("x"), t("z", u)), eq(t("y"), t("z", v)))) for u, v in R.generators)
    return Forall(("x", "y"), Implies(le(t("x", s), t("y", s)), Exists(("z",), body)))


def emit_axioms(S: Pomonoid, which: str) -> list[Sentence]:
    """Sentences whose models among left S-posets are exactly the given class.

    ``PiS`` gives the S-poset axioms themselves.  The others are indexed by
    ``(s, t)`` in lexicographic order (by ``s`` alone for PWP and PWPw).
    """
    E = S.elements
    if which == "PiS":
        return pis_sentences(S)
    if which == "EP":
        return [ep_sentence(S, s, t_) for s, t_ in product(E, repeat=2)]
    if which == "PWP":
        return [pwp_sentence(S, s) for s in E]
    if which == "PWPw":
        return [_omega(s, s, dominating_set(S, "PWPw", s).dominating) for s in E]
    if which == "Pw":
        out = []
        for s, t_ in product(E, repeat=2):
            D = dominating_set(S, "Pw", s, t_)
            out.append(_negative(s, t_) if D.empty else _omega(s, t_, D.dominating))
        return out
    if which == "W":
        out = []
        for s, t_ in product(E, repeat=2):
            D = dominating_set(S, "W", s, t_)
            out.append(_negative(s, t_) if D.empty else _omega(s, t_, D.dominating, True))
        return out
    raise ValueError(f"unknown axiom class {which!r}; expected one of {', '.join(AXIOM_CLASSES)}")


def ep_vacuous_within(S: Pomonoid, s: int, t_: int, max_size: int = 3) -> bool:
    """True when no enumerated (EP) S-poset up to ``max_size`` has ``sa <= ta``.

    Bound-relative: larger S-posets are not examined.
    """
    from .conditions import check_condition
    from .search import enumerate_sposets

    _, r = relation_sets(S, s, t_)
    if not r.empty:
        return False  # S itself has s u <= t u
    for m in range(1, max_size + 1):
        for B in enumerate_sposets(S, m, LEFT):
            if any(B.leq[B.act[s][a]][B.act[t_][a]] for a in B.elements) and check_condition(B, "EP"):
                return False
    return True


# --------------------------------------------------------------------------
# e-good factorisations


def e_good_check(S: Pomonoid, a: int, x: int, y: int, e: int) -> bool:
    """Whether ``a = x y`` is an e-good factorisation of ``a`` through ``x``."""
    if S.mul[e][e] != e:
        raise ValueError(f"{S.names[e]} is not idempotent")
    if S.mul[x][y] != a:
        raise ValueError(f"{S.names[a]} != {S.names[x]}*{S.names[y]}")
    Se = S.left_principal(e)
    for w, z in product(S.elements, repeat=2):
        if S.mul[w][z] == y and S.mul[x][w] == e and S.left_principal(w) == Se:
            return False
    return True


@dataclass(frozen=True)
class StarResult:
    holds: bool
    minimal_sets: dict  # idempotent -> tuple of x
    through: dict       # (e, a) -> tuple of x admitting an e-good factorisation
    failure: Optional[tuple] = None  # (e, a) with no e-good factorisation


def star_condition(S: Pomonoid) -> StarResult:
    """Condition (*) with the least covering set ``f`` for each idempotent ``e != 1``."""
    through = {}
    minimal = {}
    failure = None
    for e in S.idempotents:
        if e == S.one:
            continue
        for a in S.elements:
            xs = tuple(sorted({x for x, y in product(S.elements, repeat=2)
                               if S.mul[x][y] == a and e_good_check(S, a, x, y, e)}))
            through[(e, a)] = xs
            if not xs and failure is None:
                failure = (e, a)
        if any(not through[(e, a)] for a in S.elements):
            continue
        for k in range(1, S.size + 1):
            hit = next((f for f in combinations(S.elements, k)
                        if all(set(f) & set(through[(e, a)]) for a in S.elements)), None)
            if hit is not None:
                minimal[e] = hit
                break
    return StarResult(failure is None, minimal, through, failure)
