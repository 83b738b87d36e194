"""Finite pomonoids, S-posets over them, and maps between S-posets.

Elements are dense indices ``0..size-1``.  Orders are full boolean
matrices.  An :class:`SPoset` stores its action as ``act[s][a]``; for a
right S-poset that entry means ``a*s``, for a left one ``s*a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterator, Optional, Sequence

LEFT = "left"
RIGHT = "right"

Matrix = tuple[tuple[bool, ...], ...]


class StructureError(ValueError):
    """Raised when tables have inconsistent dimensions or bad indices."""


# --------------------------------------------------------------------------
# relation helpers


def rows_to_masks(leq: Sequence[Sequence[bool]]) -> list[int]:
    return [sum(1 << j for j, v in enumerate(row) if v) for row in leq]


def masks_to_matrix(masks: Sequence[int], n: int) -> Matrix:
    return tuple(tuple(bool(m >> j & 1) for j in range(n)) for m in masks)


def transitive_closure(masks: list[int]) -> list[int]:
    """Warshall's algorithm on bitmask rows (in place, also returned)."""
    n = len(masks)
    for k in range(n):
        bit = 1 << k
        row_k = masks[k]
        for i in range(n):
            if masks[i] & bit:
                masks[i] |= row_k
    return masks


def reflexive_transitive_closure(n: int, pairs) -> Matrix:
    masks = [1 << i for i in range(n)]
    for a, b in pairs:
        masks[a] |= 1 << b
    return masks_to_matrix(transitive_closure(masks), n)


def discrete_order(n: int) -> Matrix:
    return tuple(tuple(i == j for j in range(n)) for i in range(n))


def is_partial_order(leq: Matrix) -> bool:
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            return False
    for i, j in combinations(range(n), 2):
        if leq[i][j] and leq[j][i]:
            return False
    masks = rows_to_masks(leq)
    return transitive_closure(list(masks)) == masks


def order_pairs(leq: Matrix, strict: bool = False) -> list[tuple[int, int]]:
    n = len(leq)
    return [(i, j) for i in range(n) for j in range(n)
            if leq[i][j] and not (strict and i == j)]


def covers(leq: Matrix) -> list[tuple[int, int]]:
    """Hasse diagram edges of a partial order."""
    n = len(leq)
    strict = order_pairs(leq, strict=True)
    return [(i, j) for i, j in strict
            if not any(leq[i][k] and leq[k][j] for k in range(n) if k not in (i, j))]


# --------------------------------------------------------------------------
# validation reports


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} at {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}


class _Collector:
    # keeps the first witness for each axiom name
    def __init__(self):
        self.found: dict[str, tuple] = {}

    def add(self, axiom, *witness):
        self.found.setdefault(axiom, witness)

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(Violation(k, w) for k, w in self.found.items()))


# --------------------------------------------------------------------------
# pomonoids


def _default_names(n: int, one: Optional[int] = None) -> tuple[str, ...]:
    names = []
    k = 0
    for i in range(n):
        if i == one:
            names.append("1")
        else:
            names.append(f"s{k}")
            k += 1
    return tuple(names)


@dataclass(frozen=True)
class Pomonoid:
    mul: tuple[tuple[int, ...], ...]
    one: int
    leq: Matrix
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.mul)
        if n == 0:
            raise StructureError("a pomonoid needs at least one element")
        if any(len(row) != n for row in self.mul):
            raise StructureError("multiplication table is not square")
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise StructureError("order matrix does not match the table size")
        if not 0 <= self.one < n:
            raise StructureError(f"identity index {self.one} out of range")
        for row in self.mul:
            for v in row:
                if not 0 <= v < n:
                    raise StructureError(f"table entry {v} out of range")
        if not self.names:
            object.__setattr__(self, "names", _default_names(n, self.one))
        elif len(self.names) != n or len(set(self.names)) != n:
            raise StructureError("element names must be distinct, one per element")

    @classmethod
    def from_tables(cls, mul, one, leq_pairs=(), names=()):
        """Build from raw lists; ``leq_pairs`` is closed reflexively and transitively."""
        mul = tuple(tuple(int(v) for v in row) for row in mul)
        n = len(mul)
        for a, b in leq_pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise StructureError(f"order pair {(a, b)} out of range")
        leq = reflexive_transitive_closure(n, leq_pairs)
        return cls(mul, one, leq, tuple(names))

    @property
    def size(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    def __repr__(self):
        return f"Pomonoid({self.describe()})"

    def describe(self) -> str:
        strict = [f"{self.names[a]}<{self.names[b]}" for a, b in covers(self.leq)]
        return "{" + ",".join(self.names) + "}" + (" " + ",".join(strict) if strict else "")

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        return self.names.index(name)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in self.elements if self.mul[e][e] == e)

    @cached_property
    def ordered_elements(self) -> tuple[int, ...]:
        """Identity first, then the remaining indices ascending."""
        return (self.one,) + tuple(a for a in self.elements if a != self.one)

    def right_principal(self, a: int) -> frozenset[int]:
        return frozenset(self.mul[a][s] for s in self.elements)

    def left_principal(self, a: int) -> frozenset[int]:
        return frozenset(self.mul[s][a] for s in self.elements)

    def l_related(self, a: int, b: int) -> bool:
        return self.left_principal(a) == self.left_principal(b)

    def with_order(self, leq: Matrix) -> "Pomonoid":
        return Pomonoid(self.mul, self.one, leq, self.names)


def validate_pomonoid(S: Pomonoid) -> ValidationReport:
    """Check every associativity, identity, order and compatibility instance.

    Table dimensions are checked at construction time and raise
    :class:`StructureError`; this function only reports axiom failures.
    """
    out = _Collector()
    E = S.elements
    mul, leq = S.mul, S.leq
    for a, b, c in product(E, repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            out.add("associativity", a, b, c)
            break
    for a in E:
        if mul[S.one][a] != a or mul[a][S.one] != a:
            out.add("identity", a)
    for a in E:
        if not leq[a][a]:
            out.add("reflexivity", a)
    for a, b in combinations(E, 2):
        if leq[a][b] and leq[b][a]:
            out.add("antisymmetry", a, b)
    for a, b, c in product(E, repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            out.add("transitivity", a, b, c)
    for a, b in order_pairs(leq, strict=True):
        for c in E:
            if not leq[mul[c][a]][mul[c][b]]:
                out.add("left compatibility", a, b, c)
            if not leq[mul[a][c]][mul[b][c]]:
                out.add("right compatibility", a, b, c)
    return out.report()


# --------------------------------------------------------------------------
# S-posets


@dataclass(frozen=True)
class SPoset:
    monoid: Pomonoid
    side: str
    act: tuple[tuple[int, ...], ...]
    leq: Matrix
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise StructureError(f"side must be 'left' or 'right', not {self.side!r}")
        if len(self.act) != self.monoid.size:
            raise StructureError("action table needs one row per monoid element")
        n = len(self.leq)
        if n == 0:
            raise StructureError("an S-poset needs at least one element")
        if any(len(row) != n for row in self.leq):
            raise StructureError("order matrix is not square")
        for row in self.act:
            if len(row) != n:
                raise StructureError("action rows must have one entry per carrier element")
            for v in row:
                if not 0 <= v < n:
                    raise StructureError(f"action entry {v} out of range")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"a{i}" for i in range(n)))
        elif len(self.names) != n or len(set(self.names)) != n:
            raise StructureError("carrier names must be distinct, one per element")

    @classmethod
    def from_tables(cls, monoid, side, act, leq_pairs=(), names=()):
        act = tuple(tuple(int(v) for v in row) for row in act)
        n = len(act[0]) if act else 0
        for a, b in leq_pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise StructureError(f"order pair {(a, b)} out of range")
        return cls(monoid, side, act, reflexive_transitive_closure(n, leq_pairs), tuple(names))

    @property
    def size(self) -> int:
        return len(self.leq)

    @property
    def elements(self) -> range:
        return range(len(self.leq))

    def __repr__(self):
        strict = [f"{self.names[a]}<{self.names[b]}" for a, b in covers(self.leq)]
        return (f"SPoset({self.side}, {{{','.join(self.names)}}}"
                + (" " + ",".join(strict) if strict else "") + ")")

    def __lt__(self, other):
        return (self.size, self.act, self.leq) < (other.size, other.act, other.leq)

    def a(self, s: int, x: int) -> int:
        """The action of ``s`` on ``x`` (``s*x`` or ``x*s`` by side)."""
        return self.act[s][x]

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        return self.names.index(name)

    @cached_property
    def leq_masks(self) -> tuple[int, ...]:
        return tuple(rows_to_masks(self.leq))

    @cached_property
    def geq_masks(self) -> tuple[int, ...]:
        n = self.size
        return tuple(sum(1 << i for i in range(n) if self.leq[i][j]) for j in range(n))

    def orbit(self, x: int) -> frozenset[int]:
        """``Sx`` (left) or ``xS`` (right)."""
        return frozenset(row[x] for row in self.act)

    def is_closed(self, subset) -> bool:
        subset = set(subset)
        return all(row[x] in subset for row in self.act for x in subset)


def validate_sposet(A: SPoset) -> ValidationReport:
    """Check every instance of the defining sentences of S-posets.

    Identity law, the action law (named after phi_{s,t}), monotonicity in
    the element (theta_s), monotonicity in the coefficient (psi_{u,v}) and
    the partial-order axioms.
    """
    S = A.monoid
    out = _Collector()
    act, leq = A.act, A.leq
    X = A.elements
    for x in X:
        if act[S.one][x] != x:
            out.add("identity", x)
    for s, t in product(S.elements, repeat=2):
        st = S.mul[s][t]
        for x in X:
            # left: s(tx) = (st)x ; right: (xs)t = x(st)
            lhs = act[s][act[t][x]] if A.side == LEFT else act[t][act[s][x]]
            if lhs != act[st][x]:
                out.add(f"phi[{S.names[s]},{S.names[t]}]", x)
    for x in X:
        if not leq[x][x]:
            out.add("reflexivity", x)
    for x, y in combinations(X, 2):
        if leq[x][y] and leq[y][x]:
            out.add("antisymmetry", x, y)
    for x, y, z in product(X, repeat=3):
        if leq[x][y] and leq[y][z] and not leq[x][z]:
            out.add("transitivity", x, y, z)
    for s in S.elements:
        for x, y in order_pairs(leq, strict=True):
            if not leq[act[s][x]][act[s][y]]:
                out.add(f"theta[{S.names[s]}]", x, y)
    for u, v in order_pairs(S.leq, strict=True):
        for x in X:
            if not leq[act[u][x]][act[v][x]]:
                out.add(f"psi[{S.names[u]},{S.names[v]}]", x)
    return out.report()


# --------------------------------------------------------------------------
# constructions


def regular(S: Pomonoid, side: str = LEFT) -> SPoset:
    """``S`` acting on itself by multiplication."""
    if side == LEFT:
        act = S.mul
    else:
        act = tuple(tuple(S.mul[a][s] for a in S.elements) for s in S.elements)
    return SPoset(S, side, act, S.leq, S.names)


def trivial_sposet(S: Pomonoid, side: str = LEFT, leq: Optional[Matrix] = None,
                   names=()) -> SPoset:
    """A poset with every monoid element acting as the identity."""
    leq = leq if leq is not None else ((True,),)
    n = len(leq)
    act = tuple(tuple(range(n)) for _ in S.elements)
    return SPoset(S, side, act, leq, tuple(names))


def sub_sposet(A: SPoset, subset) -> tuple[SPoset, "Map"]:
    """The sub-S-poset on an action-closed subset, with its inclusion map."""
    keep = sorted(set(subset))
    if not keep:
        raise StructureError("sub-S-poset must be non-empty")
    if not A.is_closed(keep):
        raise StructureError("subset is not closed under the action")
    pos = {x: i for i, x in enumerate(keep)}
    act = tuple(tuple(pos[row[x]] for x in keep) for row in A.act)
    leq = tuple(tuple(A.leq[x][y] for y in keep) for x in keep)
    sub = SPoset(A.monoid, A.side, act, leq, tuple(A.names[x] for x in keep))
    return sub, Map(sub, A, tuple(keep))


def disjoint_union(*parts: SPoset) -> SPoset:
    """Disjoint union with pieces pairwise incomparable."""
    if not parts:
        raise StructureError("need at least one S-poset")
    S, side = parts[0].monoid, parts[0].side
    offsets, total = [], 0
    for P in parts:
        if P.monoid != S or P.side != side:
            raise StructureError("disjoint union needs a common monoid and side")
        offsets.append(total)
        total += P.size
    act = tuple(
        tuple(off + P.act[s][x] for P, off in zip(parts, offsets) for x in P.elements)
        for s in S.elements
    )
    masks = [0] * total
    for P, off in zip(parts, offsets):
        for x in P.elements:
            masks[off + x] = P.leq_masks[x] << off
    names = tuple(f"{P.names[x]}.{k}" if len(parts) > 1 else P.names[x]
                  for k, P in enumerate(parts) for x in P.elements)
    return SPoset(S, side, act, masks_to_matrix(masks, total), names)


def principal_left(S: Pomonoid, e: int) -> SPoset:
    """``Se`` as a left S-poset."""
    sub, _ = sub_sposet(regular(S, LEFT), S.left_principal(e))
    return sub


def with_extra_order(A: SPoset, pairs) -> SPoset:
    leq = reflexive_transitive_closure(A.size, order_pairs(A.leq) + list(pairs))
    return SPoset(A.monoid, A.side, A.act, leq, A.names)


def relabel(A: SPoset, perm: Sequence[int]) -> SPoset:
    """Image of ``A`` under the carrier bijection ``x -> perm[x]``."""
    n = A.size
    inv = [0] * n
    for x, px in enumerate(perm):
        inv[px] = x
    act = tuple(tuple(perm[row[inv[y]]] for y in range(n)) for row in A.act)
    leq = tuple(tuple(A.leq[inv[x]][inv[y]] for y in range(n)) for x in range(n))
    names = tuple(A.names[inv[y]] for y in range(n))
    return SPoset(A.monoid, A.side, act, leq, names)


# --------------------------------------------------------------------------
# maps


NOT_POMORPHISM = "not-pomorphism"
POMORPHISM = "pomorphism"
EMBEDDING = "embedding"
ISOMORPHISM = "isomorphism"


@dataclass(frozen=True)
class Map:
    source: SPoset
    target: SPoset
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise StructureError("map needs one image per source element")
        if any(not 0 <= y < self.target.size for y in self.images):
            raise StructureError("map image out of range")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Map") -> "Map":
        """``self`` followed by ``other``."""
        return Map(self.source, other.target, tuple(other.images[y] for y in self.images))

    def inverse(self) -> "Map":
        if len(set(self.images)) != self.source.size or self.source.size != self.target.size:
            raise StructureError("map is not a bijection")
        inv = [0] * self.target.size
        for x, y in enumerate(self.images):
            inv[y] = x
        return Map(self.target, self.source, tuple(inv))

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def surjective(self) -> bool:
        return len(set(self.images)) == self.target.size

    def preserves_action(self) -> bool:
        A, B, f = self.source, self.target, self.images
        return all(f[A.act[s][x]] == B.act[s][f[x]] for s in A.monoid.elements for x in A.elements)

    def preserves_order(self) -> bool:
        A, B, f = self.source, self.target, self.images
        return all(B.leq[f[x]][f[y]] for x, y in order_pairs(A.leq, strict=True))

    def reflects_order(self) -> bool:
        A, B, f = self.source, self.target, self.images
        return all(A.leq[x][y] or not B.leq[f[x]][f[y]]
                   for x in A.elements for y in A.elements)


def identity_map(A: SPoset) -> Map:
    return Map(A, A, tuple(A.elements))


def morphism_kind(f: Map) -> str:
    A, B = f.source, f.target
    if A.monoid != B.monoid or A.side != B.side:
        raise StructureError("maps must join S-posets over one monoid and side")
    if not (f.preserves_action() and f.preserves_order()):
        return NOT_POMORPHISM
    if not f.reflects_order():
        return POMORPHISM
    if f.surjective:
        return ISOMORPHISM
    return EMBEDDING


def _check_compatible(A: SPoset, B: SPoset):
    if A.monoid != B.monoid:
        raise StructureError("S-posets are over different pomonoids")
    if A.side != B.side:
        raise StructureError("S-posets act on different sides")


def iter_pomorphisms(A: SPoset, B: SPoset, bijective: bool = False,
                     reflect: bool = False) -> Iterator[Map]:
    """Backtracking over images in carrier order with action propagation."""
    _check_compatible(A, B)
    S = A.monoid
    n = A.size
    if bijective and n != B.size:
        return
    img = [-1] * n
    used = [False] * B.size

    def assign(x, y, trail):
        # set img[x] = y and propagate along the action; False on conflict
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            cur = img[u]
            if cur == v:
                continue
            if cur != -1:
                return False
            if bijective and used[v]:
                return False
            img[u] = v
            if bijective:
                used[v] = True
            trail.append(u)
            for s in S.elements:
                stack.append((A.act[s][u], B.act[s][v]))
        return True

    def consistent(trail):
        for u in trail:
            fu = img[u]
            for w in A.elements:
                fw = img[w]
                if fw == -1:
                    continue
                if A.leq[u][w] and not B.leq[fu][fw]:
                    return False
                if A.leq[w][u] and not B.leq[fw][fu]:
                    return False
                if reflect:
                    if B.leq[fu][fw] and not A.leq[u][w]:
                        return False
                    if B.leq[fw][fu] and not A.leq[w][u]:
                        return False
        return True

    def undo(trail):
        for u in trail:
            if bijective:
                used[img[u]] = False
            img[u] = -1

    def rec(x):
        while x < n and img[x] != -1:
            x += 1
        if x == n:
            yield Map(A, B, tuple(img))
            return
        for y in B.elements:
            trail = []
            if assign(x, y, trail) and consistent(trail):
                yield from rec(x + 1)
            undo(trail)

    yield from rec(0)


def enumerate_pomorphisms(A: SPoset, B: SPoset) -> list[Map]:
    return list(iter_pomorphisms(A, B))


def _invariant(A: SPoset, x: int):
    below = bin(A.geq_masks[x]).count("1")
    above = bin(A.leq_masks[x]).count("1")
    fixed = sum(1 for row in A.act if row[x] == x)
    return (below, above, fixed, len(A.orbit(x)))


def isomorphic(A: SPoset, B: SPoset) -> Optional[Map]:
    """An isomorphism ``A -> B`` if one exists, else ``None``.

    Elements are only matched when their up/down-set sizes, fixed-point
    counts and orbit sizes agree.
    """
    _check_compatible(A, B)
    if A.size != B.size:
        return None
    inv_a = [_invariant(A, x) for x in A.elements]
    inv_b = [_invariant(B, y) for y in B.elements]
    if sorted(inv_a) != sorted(inv_b):
        return None
    for f in iter_pomorphisms(A, B, bijective=True, reflect=True):
        if all(inv_a[x] == inv_b[f.images[x]] for x in A.elements):
            return f
    return None


# --------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    elements: frozenset[int]
    generator: Optional[int]
    poset: SPoset = field(repr=False)
    inclusion: Map = field(repr=False)


def right_ideals(S: Pomonoid, principal_only: bool = False) -> list[Ideal]:
    """Non-empty right ideals ``I`` (``IS`` contained in ``I``) with inclusions into ``S``.

    ``generator`` is the least ``a`` with ``aS = I`` when the ideal is
    principal.
    """
    SS = regular(S, RIGHT)
    principal: dict[frozenset, int] = {}
    for a in S.elements:
        principal.setdefault(S.right_principal(a), a)
    if principal_only:
        candidates = sorted(principal, key=lambda I: (len(I), sorted(I)))
    else:
        candidates = []
        for k in range(1, S.size + 1):
            for subset in combinations(S.elements, k):
                if SS.is_closed(subset):
                    candidates.append(frozenset(subset))
    out = []
    for I in candidates:
        sub, inc = sub_sposet(SS, I)
        out.append(Ideal(I, principal.get(I), sub, inc))
    return out
