"""Small named pomonoids and S-posets used throughout the tests and CLI."""

from __future__ import annotations

from .core import LEFT, RIGHT, Pomonoid, SPoset, reflexive_transitive_closure, trivial_sposet


def trivial_monoid() -> Pomonoid:
    """T1 = {1}."""
    return Pomonoid.from_tables([[0]], 0, names=("1",))


def z2() -> Pomonoid:
    """Z2 = {1, g} with g*g = 1, trivially ordered."""
    return Pomonoid.from_tables([[0, 1], [1, 0]], 0, names=("1", "g"))


def u2(order: str = "e<1") -> Pomonoid:
    """U2 = {1, e} with e*e = e; ``order`` is ``"e<1"``, ``"1<e"`` or ``"trivial"``."""
    pairs = {"e<1": [(1, 0)], "1<e": [(0, 1)], "trivial": []}[order]
    return Pomonoid.from_tables([[0, 1], [1, 1]], 0, pairs, names=("1", "e"))


def chain(S: Pomonoid, n: int = 2, side: str = LEFT) -> SPoset:
    """An ``n``-element chain with trivial action."""
    leq = reflexive_transitive_closure(n, [(i, i + 1) for i in range(n - 1)])
    return trivial_sposet(S, side, leq, tuple("abcdefgh"[:n]))


def antichain(S: Pomonoid, n: int = 2, side: str = LEFT) -> SPoset:
    leq = reflexive_transitive_closure(n, [])
    return trivial_sposet(S, side, leq, tuple("abcdefgh"[:n]))


def point(S: Pomonoid, side: str = LEFT) -> SPoset:
    """The one-element S-poset."""
    return trivial_sposet(S, side, ((True,),), ("o",))


__all__ = ["trivial_monoid", "z2", "u2", "chain", "antichain", "point", "LEFT", "RIGHT"]
