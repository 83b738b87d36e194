"""Interpolation conditions on left S-posets.

Each checker scans every premise instance and searches witnesses in the
order ``(b'', u, u')`` (or ``(b'', p, p')``), so witness tables are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .core import LEFT, SPoset, StructureError

CONDITIONS = ("P", "E", "SF", "EP", "Pw", "W", "U_literal", "U_amended", "PWP", "PWPw")


@dataclass(frozen=True)
class Verdict:
    condition: str
    holds: bool
    counterexample: Optional[tuple] = None
    witness_table: dict = field(default_factory=dict, compare=False, repr=False)

    def __bool__(self):
        return self.holds


def _left(B: SPoset):
    if B.side != LEFT:
        raise StructureError("conditions are stated for left S-posets")


def _scan(name, premises, search) -> Verdict:
    table = {}
    for prem in premises:
        w = search(*prem)
        if w is None:
            return Verdict(name, False, prem, table)
        table[prem] = w
    return Verdict(name, True, None, table)


def check_condition(B: SPoset, c: str) -> Verdict:
    """Decide condition ``c`` for ``B``.

    Premise tuples are ``(s, b, s', b')`` for two-element conditions and
    ``(s, s', b)`` for (E)/(EP); witnesses are ``(b'', u, u')`` or
    ``(b'', p, p')``.
    """
    _left(B)
    if c not in CONDITIONS:
        raise ValueError(f"unknown condition {c!r}; expected one of {', '.join(CONDITIONS)}")
    S = B.monoid
    E, X = list(S.elements), list(B.elements)
    mul, sle = S.mul, S.leq
    act, ble = B.act, B.leq

    if c == "SF":
        for part in ("P", "E"):
            v = check_condition(B, part)
            if not v:
                return Verdict("SF", False, (part,) + v.counterexample, v.witness_table)
        return Verdict("SF", True)

    def two_premise():
        return [(s, b, s2, b2) for s, b, s2, b2 in product(E, X, E, X)
                if ble[act[s][b]][act[s2][b2]]]

    def one_premise():
        return [(s, s2, b) for s, s2, b in product(E, E, X) if ble[act[s][b]][act[s2][b]]]

    def same_coeff():
        return [(s, b, s, b2) for s, b, b2 in product(E, X, X) if ble[act[s][b]][act[s][b2]]]

    if c == "P":
        def search(s, b, s2, b2):
            for b3, u, u2 in product(X, E, E):
                if act[u][b3] == b and act[u2][b3] == b2 and sle[mul[s][u]][mul[s2][u2]]:
                    return (b3, u, u2)
        return _scan(c, two_premise(), search)

    if c == "Pw":
        def search(s, b, s2, b2):
            for b3, u, u2 in product(X, E, E):
                if (sle[mul[s][u]][mul[s2][u2]] and ble[b][act[u][b3]]
                        and ble[act[u2][b3]][b2]):
                    return (b3, u, u2)
        return _scan(c, two_premise(), search)

    if c == "E":
        def search(s, s2, b):
            for b3, u in product(X, E):
                if act[u][b3] == b and sle[mul[s][u]][mul[s2][u]]:
                    return (b3, u)
        return _scan(c, one_premise(), search)

    if c == "EP":
        def search(s, s2, b):
            for b3, u, u2 in product(X, E, E):
                if act[u][b3] == b and act[u2][b3] == b and sle[mul[s][u]][mul[s2][u2]]:
                    return (b3, u, u2)
        return _scan(c, one_premise(), search)

    if c == "PWP":
        def search(s, b, s2, b2):
            for b3, u, u2 in product(X, E, E):
                if act[u][b3] == b and act[u2][b3] == b2 and sle[mul[s][u]][mul[s][u2]]:
                    return (b3, u, u2)
        return _scan(c, same_coeff(), search)

    if c == "PWPw":
        def search(s, b, s2, b2):
            for b3, u, u2 in product(X, E, E):
                if (ble[b][act[u][b3]] and ble[act[u2][b3]][b2]
                        and sle[mul[s][u]][mul[s][u2]]):
                    return (b3, u, u2)
        return _scan(c, same_coeff(), search)

    ideal = {s: sorted(S.right_principal(s)) for s in E}

    if c == "W":
        def search(s, b, s2, b2):
            sb, sb2 = act[s][b], act[s2][b2]
            for b3 in X:
                for p, p2 in product(ideal[s], ideal[s2]):
                    if sle[p][p2] and ble[sb][act[p][b3]] and ble[act[p2][b3]][sb2]:
                        return (b3, p, p2)
        return _scan(c, two_premise(), search)

    # (U): the literal premise s b = s b' with s' free, or the amended s b = s' b'
    if c == "U_literal":
        premises = [(s, b, s2, b2) for s, b, s2, b2 in product(E, X, E, X)
                    if act[s][b] == act[s][b2]]
    else:
        premises = [(s, b, s2, b2) for s, b, s2, b2 in product(E, X, E, X)
                    if act[s][b] == act[s2][b2]]

    def search(s, b, s2, b2):
        sb = act[s][b]
        if sb != act[s2][b2]:
            return None
        for b3 in X:
            for p, p2 in product(ideal[s], ideal[s2]):
                if sle[p][p2] and act[p][b3] == sb and act[p2][b3] == sb:
                    return (b3, p, p2)
    return _scan(c, premises, search)


def witness_holds(B: SPoset, c: str, premise: tuple, witness: tuple) -> bool:
    """Re-check a single witness against the condition's conclusion."""
    S = B.monoid
    mul, sle, act, ble = S.mul, S.leq, B.act, B.leq
    if c in ("E", "EP"):
        s, s2, b = premise
        if c == "E":
            b3, u = witness
            return act[u][b3] == b and sle[mul[s][u]][mul[s2][u]]
        b3, u, u2 = witness
        return act[u][b3] == b == act[u2][b3] and sle[mul[s][u]][mul[s2][u2]]
    s, b, s2, b2 = premise
    b3, u, u2 = witness
    if c == "P":
        return act[u][b3] == b and act[u2][b3] == b2 and sle[mul[s][u]][mul[s2][u2]]
    if c == "Pw":
        return sle[mul[s][u]][mul[s2][u2]] and ble[b][act[u][b3]] and ble[act[u2][b3]][b2]
    if c == "PWP":
        return act[u][b3] == b and act[u2][b3] == b2 and sle[mul[s][u]][mul[s][u2]]
    if c == "PWPw":
        return ble[b][act[u][b3]] and ble[act[u2][b3]][b2] and sle[mul[s][u]][mul[s][u2]]
    p, p2 = u, u2
    in_ideals = p in S.right_principal(s) and p2 in S.right_principal(s2) and sle[p][p2]
    if c == "W":
        return in_ideals and ble[act[s][b]][act[p][b3]] and ble[act[p2][b3]][act[s2][b2]]
    if c in ("U_literal", "U_amended"):
        sb = act[s][b]
        return in_ideals and act[p][b3] == sb and act[p2][b3] == sb and act[s2][b2] == sb
    raise ValueError(f"no witness format for {c!r}")


def condition_implications(B: SPoset) -> dict[str, bool]:
    """Truth value of every condition for ``B``."""
    sig = {c: check_condition(B, c).holds for c in CONDITIONS if c != "SF"}
    sig["SF"] = sig["P"] and sig["E"]
    return {c: sig[c] for c in CONDITIONS}
