"""Tensor products of a right and a left S-poset, with tossing certificates.

A pair ``(a, b)`` of ``A x B`` is encoded as ``a * |B| + b``.  The tensor
order is the least preorder containing the product order and both
directions of ``(a*s, b) ~ (a, s*b)``; no action closure is needed because
``A x B`` carries the trivial action.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional

from .core import (
    LEFT,
    RIGHT,
    Map,
    SPoset,
    StructureError,
    masks_to_matrix,
    morphism_kind,
    transitive_closure,
    NOT_POMORPHISM,
)

Pair = tuple[int, int]


class TossingFormatError(ValueError):
    """A certificate whose shape or indices do not fit the factors."""


@dataclass(frozen=True)
class TensorPoset:
    left_factor: SPoset
    right_factor: SPoset
    classes: tuple[tuple[Pair, ...], ...]
    leq: tuple[tuple[bool, ...], ...]
    pair_preorder: tuple[int, ...]

    def index(self, p: Pair) -> int:
        return p[0] * self.right_factor.size + p[1]

    def pair(self, i: int) -> Pair:
        return divmod(i, self.right_factor.size)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        out = [0] * (self.left_factor.size * self.right_factor.size)
        for k, members in enumerate(self.classes):
            for p in members:
                out[self.index(p)] = k
        return tuple(out)

    def class_of(self, p: Pair) -> int:
        return self.class_index[self.index(p)]

    @property
    def size(self) -> int:
        return len(self.classes)

    def as_sposet(self) -> SPoset:
        """The tensor poset as a left S-poset with the trivial action."""
        S = self.left_factor.monoid
        n = len(self.classes)
        A, B = self.left_factor, self.right_factor
        names = tuple(f"{A.names[a]}(x){B.names[b]}" for a, b in (c[0] for c in self.classes))
        return SPoset(S, LEFT, tuple(tuple(range(n)) for _ in S.elements), self.leq, names)


def _check_factors(A: SPoset, B: SPoset):
    if A.side != RIGHT or B.side != LEFT:
        raise StructureError("tensor product needs a right S-poset and a left S-poset")
    if A.monoid != B.monoid:
        raise StructureError("tensor factors must be over the same pomonoid")


def tensor_product(A: SPoset, B: SPoset) -> TensorPoset:
    _check_factors(A, B)
    nb = B.size
    N = A.size * nb
    masks = [0] * N
    for a, b in product(A.elements, B.elements):
        up_b = B.leq_masks[b]
        row = 0
        for a2 in A.elements:
            if A.leq[a][a2]:
                row |= up_b << (a2 * nb)
        masks[a * nb + b] = row
    for s in A.monoid.elements:
        for a, b in product(A.elements, B.elements):
            p = A.act[s][a] * nb + b      # (a*s, b)
            q = a * nb + B.act[s][b]      # (a, s*b)
            masks[p] |= 1 << q
            masks[q] |= 1 << p
    transitive_closure(masks)
    cls = [-1] * N
    classes = []
    for i in range(N):
        if cls[i] != -1:
            continue
        members = [j for j in range(N) if masks[i] >> j & 1 and masks[j] >> i & 1]
        for j in members:
            cls[j] = len(classes)
        classes.append(tuple(divmod(j, nb) for j in members))
    reps = [c[0][0] * nb + c[0][1] for c in classes]
    k = len(classes)
    qmasks = [sum(1 << j for j in range(k) if masks[reps[i]] >> reps[j] & 1) for i in range(k)]
    return TensorPoset(A, B, tuple(classes), masks_to_matrix(qmasks, k), tuple(masks))


def tensor_leq(T: TensorPoset, p: Pair, q: Pair) -> bool:
    A, B = T.left_factor, T.right_factor
    for x, y in (p, q):
        if not (0 <= x < A.size and 0 <= y < B.size):
            raise StructureError(f"pair {(x, y)} out of range")
    return bool(T.pair_preorder[T.index(p)] >> T.index(q) & 1)


def tensor_eq(T: TensorPoset, p: Pair, q: Pair) -> bool:
    return tensor_leq(T, p, q) and tensor_leq(T, q, p)


# --------------------------------------------------------------------------
# skeletons and certificates


@dataclass(frozen=True)
class Skeleton:
    first: tuple[int, ...]
    second: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        for half in (self.first, self.second):
            if half is None:
                continue
            if len(half) < 2 or len(half) % 2:
                raise StructureError("each skeleton half has even length of at least 2")

    @property
    def doubled(self) -> bool:
        return self.second is not None

    def __len__(self):
        return len(self.first) + len(self.second or ())

    @property
    def m(self) -> int:
        return len(self.first) // 2

    @property
    def n(self) -> int:
        return len(self.second) // 2 if self.second else 0

    def entries(self) -> tuple[int, ...]:
        return self.first + (self.second or ())

    def halves(self):
        return (self.first,) if self.second is None else (self.first, self.second)


def iter_skeletons(S, max_len: int, doubled: bool = False):
    """Skeletons up to ``max_len`` entries: by length, then split, then lexicographic."""
    E = list(S.elements)
    if not doubled:
        for L in range(2, max_len + 1, 2):
            for entries in product(E, repeat=L):
                yield Skeleton(entries)
        return
    for L in range(4, max_len + 1, 2):
        for m in range(1, L // 2):
            for entries in product(E, repeat=L):
                yield Skeleton(entries[:2 * m], entries[2 * m:])


@dataclass(frozen=True)
class TossingCertificate:
    """Rows of an (optionally double) ordered tossing.

    ``a_chain`` holds ``a_2..a_m`` followed by ``c_2..c_n``; ``b_chain``
    holds ``b_1..b_m`` followed by ``d_1..d_n``.
    """

    skeleton: Skeleton
    a_chain: tuple[int, ...]
    b_chain: tuple[int, ...]
    start: Pair
    end: Pair

    @property
    def doubled(self) -> bool:
        return self.skeleton.doubled

    def halves(self):
        """Per half: (start pair, end pair, skeleton half, full a sequence, b sequence)."""
        sk = self.skeleton
        m = sk.m
        (a, b), (a2, b2) = self.start, self.end
        out = [((a, b), (a2, b2), sk.first,
                (a,) + self.a_chain[:m - 1] + (a2,), self.b_chain[:m])]
        if sk.doubled:
            out.append(((a2, b2), (a, b), sk.second,
                        (a2,) + self.a_chain[m - 1:] + (a,), self.b_chain[m:]))
        return out

    def rows(self):
        """``[a_i, s_i, a_{i+1}, t_i, b_i]`` rows, one list per half."""
        out = []
        for _, _, half, aseq, bseq in self.halves():
            out.append([[aseq[i], half[2 * i], aseq[i + 1], half[2 * i + 1], bseq[i]]
                        for i in range(len(bseq))])
        return out


def _check_shape(A: SPoset, B: SPoset, cert: TossingCertificate):
    sk = cert.skeleton
    need_a = (sk.m - 1) + (sk.n - 1 if sk.doubled else 0)
    need_b = sk.m + sk.n
    if len(cert.a_chain) != need_a or len(cert.b_chain) != need_b:
        raise TossingFormatError(
            f"chain lengths {len(cert.a_chain)}/{len(cert.b_chain)} do not fit a skeleton "
            f"with {sk.m}+{sk.n} rows")
    S = A.monoid
    if any(not 0 <= s < S.size for s in sk.entries()):
        raise TossingFormatError("skeleton entry out of range")
    aa = cert.a_chain + (cert.start[0], cert.end[0])
    bb = cert.b_chain + (cert.start[1], cert.end[1])
    if any(not 0 <= x < A.size for x in aa) or any(not 0 <= y < B.size for y in bb):
        raise TossingFormatError("certificate element out of range")


def _half_holds(A, B, start, end, half, aseq, bseq) -> bool:
    (_, b), (_, b2) = start, end
    m = len(bseq)
    s = half[0::2]
    t = half[1::2]
    if not B.le(b, B.a(s[0], bseq[0])):
        return False
    for i in range(m):
        if not A.le(A.a(s[i], aseq[i]), A.a(t[i], aseq[i + 1])):
            return False
        nxt = B.a(s[i + 1], bseq[i + 1]) if i + 1 < m else b2
        if not B.le(B.a(t[i], bseq[i]), nxt):
            return False
    return True


def verify_tossing(A: SPoset, B: SPoset, cert: TossingCertificate) -> bool:
    _check_factors(A, B)
    _check_shape(A, B, cert)
    return all(_half_holds(A, B, *h) for h in cert.halves())


def _ordered_tossing(A: SPoset, B: SPoset, p: Pair, q: Pair):
    """Shortest rows ``(a_i, s_i, a_{i+1}, t_i, b_i)`` from ``p`` to ``q``.

    Breadth-first search over states ``(a_i, t_{i-1} b_{i-1})``; ``None``
    when no ordered tossing exists.
    """
    S = A.monoid
    order = S.ordered_elements
    a_end, b_end = q
    start = p
    parent: dict[Pair, Optional[tuple]] = {start: None}
    queue = deque([start])

    def unwind(state, last_row):
        rows = [last_row]
        while parent[state] is not None:
            prev, row = parent[state]
            rows.append(row)
            state = prev
        return rows[::-1]

    while queue:
        state = queue.popleft()
        alpha, beta = state
        cands = [beta] + [y for y in B.elements if y != beta]
        moves = []
        for s in order:
            a_s = A.a(s, alpha)
            for bi in cands:
                if not B.le(beta, B.a(s, bi)):
                    continue
                for t in order:
                    tb = B.a(t, bi)
                    if B.le(tb, b_end) and A.le(a_s, A.a(t, a_end)):
                        return unwind(state, (alpha, s, a_end, t, bi))
                    moves.append((s, a_s, bi, t, tb))
        for s, a_s, bi, t, tb in moves:
            for a2 in A.elements:
                nxt = (a2, tb)
                if nxt in parent or not A.le(a_s, A.a(t, a2)):
                    continue
                parent[nxt] = (state, (alpha, s, a2, t, bi))
                queue.append(nxt)
    return None


def extract_tossing(T: TensorPoset, p: Pair, q: Pair, doubled: bool = False
                    ) -> Optional[TossingCertificate]:
    """A shortest ordered tossing from ``p`` to ``q`` (and back, when ``doubled``)."""
    A, B = T.left_factor, T.right_factor
    fwd = _ordered_tossing(A, B, p, q)
    if fwd is None:
        return None
    halves = [fwd]
    if doubled:
        bwd = _ordered_tossing(A, B, q, p)
        if bwd is None:
            return None
        halves.append(bwd)
    sks = [tuple(x for r in rows for x in (r[1], r[3])) for rows in halves]
    a_chain = tuple(r[2] for rows in halves for r in rows[:-1])
    b_chain = tuple(r[4] for rows in halves for r in rows)
    skeleton = Skeleton(sks[0], sks[1] if doubled else None)
    return TossingCertificate(skeleton, a_chain, b_chain, tuple(p), tuple(q))


# --------------------------------------------------------------------------
# skeleton formulas


def _chain_search(k, domain, first_ok, link_ok, last_ok, direct):
    """Lexicographically least ``(v_1..v_k)`` meeting chained constraints."""
    if k == 0:
        return () if direct() else None
    good = [None] * k
    good[k - 1] = [z for z in domain if last_ok(z)]
    for i in range(k - 2, -1, -1):
        nxt = good[i + 1]
        good[i] = [z for z in domain if any(link_ok(i, z, y) for y in nxt)]
    witness = []
    for i in range(k):
        pool = good[i]
        if i == 0:
            pick = next((z for z in pool if first_ok(z)), None)
        else:
            prev = witness[-1]
            pick = next((z for z in pool if link_ok(i - 1, prev, z)), None)
        if pick is None:
            return None
        witness.append(pick)
    return tuple(witness)


def _epsilon_witness(X: SPoset, half, x, x2):
    s, t = half[0::2], half[1::2]
    m = len(s)
    act, le = X.a, X.le
    return _chain_search(
        m - 1, X.elements,
        first_ok=lambda z: le(act(s[0], x), act(t[0], z)),
        link_ok=lambda i, z, y: le(act(s[i + 1], z), act(t[i + 1], y)),
        last_ok=lambda z: le(act(s[m - 1], z), act(t[m - 1], x2)),
        direct=lambda: le(act(s[0], x), act(t[0], x2)),
    )


def _theta_witness(X: SPoset, half, x, x2):
    s, t = half[0::2], half[1::2]
    m = len(s)
    act, le = X.a, X.le
    return _chain_search(
        m, X.elements,
        first_ok=lambda z: le(x, act(s[0], z)),
        link_ok=lambda i, z, y: le(act(t[i], z), act(s[i + 1], y)),
        last_ok=lambda z: le(act(t[m - 1], z), x2),
        direct=lambda: False,
    )


FORMULA_SIDES = {
    "epsilon": RIGHT, "delta": RIGHT, "delta_leq": RIGHT,
    "theta": LEFT, "gamma": LEFT, "gamma_leq": LEFT,
}


def eval_skeleton_formula(kind: str, sk: Skeleton, X: SPoset, args):
    """Evaluate a skeleton formula; returns ``(truth, witness)``.

    ``epsilon``/``theta`` take the full argument list and return an empty
    witness.  The existential kinds take ``(x, x')`` and return the least
    witness tuple (both halves concatenated for ``delta``/``gamma``).
    """
    if kind not in FORMULA_SIDES:
        raise ValueError(f"unknown formula kind {kind!r}")
    if X.side != FORMULA_SIDES[kind]:
        raise StructureError(f"{kind} is evaluated in a {FORMULA_SIDES[kind]} S-poset")
    args = tuple(args)
    if kind in ("delta", "gamma") and not sk.doubled:
        raise ValueError(f"{kind} needs a doubled skeleton")
    if kind in ("epsilon", "theta", "delta_leq", "gamma_leq") and sk.doubled:
        raise ValueError(f"{kind} needs a single skeleton")
    m = sk.m
    if kind == "epsilon":
        if len(args) != m + 1:
            raise ValueError(f"epsilon with {m} rows takes {m + 1} arguments")
        return _chain_holds_epsilon(X, sk.first, args), ()
    if kind == "theta":
        if len(args) != m + 2:
            raise ValueError(f"theta with {m} rows takes {m + 2} arguments")
        return _chain_holds_theta(X, sk.first, args), ()
    if len(args) != 2:
        raise ValueError(f"{kind} takes two arguments")
    x, x2 = args
    finder = _epsilon_witness if kind.startswith("delta") else _theta_witness
    w1 = finder(X, sk.first, x, x2)
    if w1 is None:
        return False, None
    if not sk.doubled:
        return True, w1
    w2 = finder(X, sk.second, x2, x)
    if w2 is None:
        return False, None
    return True, w1 + w2


def _chain_holds_epsilon(X, half, args):
    s, t = half[0::2], half[1::2]
    return all(X.le(X.a(s[i], args[i]), X.a(t[i], args[i + 1])) for i in range(len(s)))


def _chain_holds_theta(X, half, args):
    s, t = half[0::2], half[1::2]
    m = len(s)
    x, xs, x2 = args[0], args[1:-1], args[-1]
    if not X.le(x, X.a(s[0], xs[0])):
        return False
    for i in range(m - 1):
        if not X.le(X.a(t[i], xs[i]), X.a(s[i + 1], xs[i + 1])):
            return False
    return X.le(X.a(t[m - 1], xs[m - 1]), x2)


def connected_by_skeleton(A: SPoset, B: SPoset, p: Pair, q: Pair, sk: Skeleton) -> bool:
    """Whether ``p`` reaches ``q`` by a tossing with skeleton ``sk``.

    A doubled skeleton asks for a double tossing (equality), a single one
    for an ordered tossing (inequality).
    """
    _check_factors(A, B)
    if sk.doubled:
        kinds = ("delta", "gamma")
    else:
        kinds = ("delta_leq", "gamma_leq")
    ok_a, _ = eval_skeleton_formula(kinds[0], sk, A, (p[0], q[0]))
    if not ok_a:
        return False
    ok_b, _ = eval_skeleton_formula(kinds[1], sk, B, (p[1], q[1]))
    return ok_b


# --------------------------------------------------------------------------
# functoriality


def induced_tensor_map(f: Map, B: SPoset, source: Optional[TensorPoset] = None,
                       target: Optional[TensorPoset] = None) -> Map:
    """``a (x) b -> f(a) (x) b`` between the tensor posets (as trivial-action S-posets)."""
    if morphism_kind(f) == NOT_POMORPHISM:
        raise StructureError("induced tensor map needs a pomorphism")
    src = source or tensor_product(f.source, B)
    tgt = target or tensor_product(f.target, B)
    images = []
    for members in src.classes:
        seen = {tgt.class_of((f.images[a], b)) for a, b in members}
        if len(seen) != 1:
            raise StructureError("induced map is not well defined")
        images.append(seen.pop())
    return Map(src.as_sposet(), tgt.as_sposet(), tuple(images))


def multiplication_is_isomorphism(B: SPoset) -> bool:
    """Whether ``s (x) b -> s*b`` is a well-defined order isomorphism ``S (x) B -> B``."""
    from .core import regular

    T = tensor_product(regular(B.monoid, RIGHT), B)
    images = []
    for members in T.classes:
        seen = {B.a(s, b) for s, b in members}
        if len(seen) != 1:
            return False
        images.append(seen.pop())
    if sorted(images) != list(B.elements):
        return False
    return all(T.leq[i][j] == B.le(images[i], images[j])
               for i in range(T.size) for j in range(T.size))
