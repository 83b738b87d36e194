"""Enumeration of small pomonoids and S-posets, implication audit, counterexample search."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Optional

from .conditions import CONDITIONS, check_condition
from .core import LEFT, Pomonoid, SPoset
from .flatness import IDEAL_VARIANTS, check_flat_bounded, check_ideal_flatness
from .structure import is_free, is_projective

log = logging.getLogger(__name__)

MONOID_CAP = 4
SPOSET_CAP = 4


class CapExceeded(ValueError):
    pass


@lru_cache(maxsize=None)
def partial_orders(n: int) -> tuple[tuple[int, ...], ...]:
    """All partial orders on ``n`` labelled points, as bitmask rows."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in range(1 << len(off)):
        masks = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off):
            if bits >> k & 1:
                masks[i] |= 1 << j
        if any(masks[i] >> j & 1 and masks[j] >> i & 1 for i, j in off):
            continue
        if all(masks[j] & ~masks[i] == 0 for i in range(n) for j in range(n) if masks[i] >> j & 1):
            out.append(tuple(masks))
    return tuple(out)


def _is_associative(mul, n):
    for a in range(n):
        ra = mul[a]
        for b in range(n):
            rab = mul[ra[b]]
            rb = mul[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return False
    return True


def _compatible_pomonoid(mul, masks, n):
    for a in range(n):
        for b in range(n):
            if a == b or not masks[a] >> b & 1:
                continue
            for c in range(n):
                if not masks[mul[c][a]] >> mul[c][b] & 1:
                    return False
                if not masks[mul[a][c]] >> mul[b][c] & 1:
                    return False
    return True


def _canonical_pomonoid(mul, masks, n):
    best = None
    for rest in permutations(range(1, n)):
        p = (0,) + rest  # p[old] = new
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        tab = tuple(p[mul[inv[i]][inv[j]]] for i in range(n) for j in range(n))
        leq = tuple(bool(masks[inv[i]] >> inv[j] & 1) for i in range(n) for j in range(n))
        key = (tab, leq)
        if best is None or key < best:
            best = key
    return best


def enumerate_pomonoids(n: int, orders: str = "all", cap: int = MONOID_CAP) -> list[Pomonoid]:
    """Pomonoids of order ``n`` up to isomorphism (identity at index 0).

    ``orders="trivial"`` keeps only discrete orders.  Each class is
    represented by its lexicographically least table.
    """
    if n > cap:
        raise CapExceeded(f"pomonoid size {n} exceeds cap {cap}")
    if n < 1:
        return []
    free_cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    poset_masks = partial_orders(n) if orders == "all" else (tuple(1 << i for i in range(n)),)
    seen = set()
    for values in product(range(n), repeat=len(free_cells)):
        mul = [list(range(n)) if i == 0 else [i] + [0] * (n - 1) for i in range(n)]
        for (i, j), v in zip(free_cells, values):
            mul[i][j] = v
        if not _is_associative(mul, n):
            continue
        for masks in poset_masks:
            if _compatible_pomonoid(mul, masks, n):
                seen.add(_canonical_pomonoid(mul, masks, n))
    out = []
    names = ("1",) + tuple(f"s{i}" for i in range(1, n))
    for tab, leq in sorted(seen):
        mul = tuple(tuple(tab[i * n:(i + 1) * n]) for i in range(n))
        order = tuple(tuple(leq[i * n:(i + 1) * n]) for i in range(n))
        out.append(Pomonoid(mul, 0, order, names))
    return out


# --------------------------------------------------------------------------
# S-posets


def _generators(S: Pomonoid) -> list[int]:
    """A small generating set, picked greedily in index order."""
    gens: list[int] = []
    reached = {S.one}
    while len(reached) < S.size:
        best = None
        for g in S.elements:
            if g in reached:
                continue
            cl = _closure(S, gens + [g])
            if best is None or len(cl) > len(best[1]):
                best = (g, cl)
        gens.append(best[0])
        reached = best[1]
    return gens


def _closure(S, gens):
    reached = {S.one}
    frontier = [S.one]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = S.mul[x][g]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return reached


def _compose(f, g):
    # f after g
    return tuple(f[x] for x in g)


def action_tables(S: Pomonoid, m: int, side: str = LEFT):
    """Every action table of ``S`` on ``m`` points (``act[s][x]``)."""
    ident = tuple(range(m))
    maps = list(product(range(m), repeat=m))
    gens = _generators(S)

    # per-generator filter: powers must respect the monoid's relations among powers
    def power_ok(g, f):
        seen_elem = {S.one: ident}
        x, fx = S.one, ident
        for _ in range(S.size + 1):
            x = S.mul[x][g]
            fx = _compose(fx, f) if side == LEFT else _compose(f, fx)
            if x in seen_elem:
                if seen_elem[x] != fx:
                    return False
            else:
                seen_elem[x] = fx
        return True

    choices = [[f for f in maps if power_ok(g, f)] for g in gens]
    for combo in product(*choices):
        table: dict[int, tuple] = {S.one: ident}
        frontier = [S.one]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, fg in zip(gens, combo):
                y = S.mul[x][g]
                # left: (x g) a = x (g a) ; right: a (x g) = (a x) g
                fy = _compose(table[x], fg) if side == LEFT else _compose(fg, table[x])
                if y in table:
                    if table[y] != fy:
                        ok = False
                        break
                else:
                    table[y] = fy
                    frontier.append(y)
        if not ok:
            continue
        act = tuple(table[s] for s in S.elements)
        if _action_law(S, act, side):
            yield act


def _action_law(S, act, side):
    for s, t in product(S.elements, repeat=2):
        st = act[S.mul[s][t]]
        comp = _compose(act[s], act[t]) if side == LEFT else _compose(act[t], act[s])
        if comp != st:
            return False
    return True


def _compatible_sposet(S, act, masks, m):
    for x in range(m):
        for y in range(m):
            if x != y and masks[x] >> y & 1:
                for row in act:
                    if not masks[row[x]] >> row[y] & 1:
                        return False
    for u in S.elements:
        for v in S.elements:
            if u != v and S.leq[u][v]:
                for x in range(m):
                    if not masks[act[u][x]] >> act[v][x] & 1:
                        return False
    return True


def _canonical_sposet(act, masks, m):
    best = None
    for p in permutations(range(m)):
        inv = [0] * m
        for old, new in enumerate(p):
            inv[new] = old
        a = tuple(p[row[inv[y]]] for row in act for y in range(m))
        leq = tuple(bool(masks[inv[x]] >> inv[y] & 1) for x in range(m) for y in range(m))
        key = (a, leq)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=256)
def _enumerate_sposets(S: Pomonoid, m: int, side: str) -> tuple[SPoset, ...]:
    seen = set()
    for act in action_tables(S, m, side):
        for masks in partial_orders(m):
            if _compatible_sposet(S, act, masks, m):
                seen.add(_canonical_sposet(act, masks, m))
    out = []
    k = S.size
    for a, leq in sorted(seen):
        act = tuple(tuple(a[s * m:(s + 1) * m]) for s in range(k))
        order = tuple(tuple(leq[x * m:(x + 1) * m]) for x in range(m))
        out.append(SPoset(S, side, act, order, tuple(f"b{i}" for i in range(m))))
    return tuple(out)


def enumerate_sposets(S: Pomonoid, m: int, side: str = LEFT, cap: int = SPOSET_CAP) -> list[SPoset]:
    """S-posets on ``m`` points up to isomorphism, lexicographically least tables."""
    if m > cap:
        raise CapExceeded(f"S-poset size {m} exceeds cap {cap}")
    if m < 1:
        return []
    return list(_enumerate_sposets(S, m, side))


def enumerate_up_to(S: Pomonoid, max_size: int, side: str = LEFT, cap: int = SPOSET_CAP):
    for m in range(1, max_size + 1):
        yield from enumerate_sposets(S, m, side, cap)


def estimate_sposet_work(S: Pomonoid, m: int) -> int:
    """Rough candidate count (action tables times orders) for progress messages."""
    return (m ** m) ** max(len(_generators(S)), 1) * len(partial_orders(m))


# --------------------------------------------------------------------------
# class membership and the implication audit

EXACT_CLASSES = CONDITIONS + IDEAL_VARIANTS + ("Fr", "Pr")
BOUNDED_CLASSES = ("F", "PF")

# (antecedent classes, consequent, note); composite arrows name the skipped node
ARROWS = (
    (("Fr",), "Pr", ""),
    (("Pr",), "SF", ""),
    (("SF",), "P", ""),
    (("SF",), "E", ""),
    (("P", "E"), "SF", ""),
    (("P",), "PWP", "via WP"),
    (("P",), "Pw", ""),
    (("PWP",), "PWPw", ""),
    (("Pw",), "PWPw", "via WPw"),
    (("P",), "EP", ""),
    (("E",), "EP", ""),
    (("Pw",), "WPF", "via PF"),
    (("PWPw",), "PWPF", ""),
    (("WPF",), "PWPF", ""),
    (("WPF",), "WF", ""),
    (("PWPF",), "PWF", ""),
    (("WF",), "PWF", ""),
    (("WPF",), "W", "decomposition"),
    (("PWPF", "W"), "WPF", "decomposition"),
    (("Pw",), "!PF_fail", "bounded"),
    (("Pw",), "!F_fail", "via PF, bounded"),
    (("SF",), "!F_fail", "bounded"),
)


def memberships(B: SPoset, skeleton_bound: int = 4) -> dict[str, bool]:
    out = {c: check_condition(B, c).holds for c in CONDITIONS if c != "SF"}
    out["SF"] = out["P"] and out["E"]
    for v in IDEAL_VARIANTS:
        out[v] = check_ideal_flatness(B, v).holds
    out["Fr"] = is_free(B)[0]
    out["Pr"] = is_projective(B)[0]
    if skeleton_bound:
        out["F_fail"] = not check_flat_bounded(B, po=False, max_len=max(skeleton_bound, 4)).holds
        out["PF_fail"] = not check_flat_bounded(B, po=True, max_len=skeleton_bound).holds
    return out


def member(B: SPoset, name: str) -> bool:
    if name in CONDITIONS:
        return check_condition(B, name).holds
    if name in IDEAL_VARIANTS:
        return check_ideal_flatness(B, name).holds
    if name == "Fr":
        return is_free(B)[0]
    if name == "Pr":
        return is_projective(B)[0]
    raise ValueError(f"class {name!r} is not decidable here; choose from {', '.join(EXACT_CLASSES)}")


def _value(sig, name):
    if name.startswith("!"):
        return not sig[name[1:]]
    return sig[name]


def arrow_label(arrow) -> str:
    ante, cons, note = arrow
    s = " & ".join(ante) + " => " + cons
    return f"{s} ({note})" if note else s


@dataclass
class AuditReport:
    instances_checked: int = 0
    violations: list = field(default_factory=list)          # (arrow label, B)
    strictness_witnesses: dict = field(default_factory=dict)  # arrow label -> B
    signatures: list = field(default_factory=list)           # (B, signature)

    @property
    def ok(self) -> bool:
        return not self.violations


def _signature_job(args):
    B, bound = args
    return memberships(B, bound)


def implication_audit(S: Pomonoid, m: int, skeleton_bound: int = 4, jobs: int = 1,
                      family: Optional[list[SPoset]] = None) -> AuditReport:
    """Check every implemented arrow on all left S-posets of size up to ``m``."""
    Bs = list(family) if family is not None else list(enumerate_up_to(S, m))
    log.info("auditing %d S-posets over %s", len(Bs), S.describe())
    jobs_in = [(B, skeleton_bound) for B in Bs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            sigs = list(pool.map(_signature_job, jobs_in, chunksize=8))
    else:
        sigs = [_signature_job(j) for j in jobs_in]
    report = AuditReport(instances_checked=len(Bs))
    for B, sig in zip(Bs, sigs):
        report.signatures.append((B, sig))
        for arrow in ARROWS:
            ante, cons, note = arrow
            needed = [a for a in ante + (cons,) if a.lstrip("!") in sig]
            if len(needed) != len(ante) + 1:
                continue
            label = arrow_label(arrow)
            lhs = all(_value(sig, a) for a in ante)
            rhs = _value(sig, cons)
            if lhs and not rhs:
                report.violations.append((label, B))
            if "bounded" not in note and rhs and not lhs:
                report.strictness_witnesses.setdefault(label, B)
    return report


def counterexample_search(S: Pomonoid, m: int, stronger: str, weaker: str,
                          side: str = LEFT) -> Optional[SPoset]:
    """Least enumerated ``B`` in ``weaker`` but not in ``stronger``."""
    for name in (stronger, weaker):
        if name not in EXACT_CLASSES:
            raise ValueError(f"class {name!r} is not implemented; choose from {', '.join(EXACT_CLASSES)}")
    for B in enumerate_up_to(S, m, side):
        if member(B, weaker) and not member(B, stronger):
            return B
    return None
