"""First-order sentences over the language of S-posets.

Terms are a variable with a list of monoid coefficients.  For a left
S-poset ``Term((s, t), "x")`` reads ``s*t*x`` and means ``s(t(x))``; for a
right S-poset it reads ``x*s*t`` and means ``(x s) t``.

Text grammar::

    formula  := ("forall" | "exists") var ("," var)* "." formula | implies
    implies  := disj ("->" formula)?
    disj     := conj ("|" conj)*
    conj     := unary ("&" unary)*
    unary    := "~" unary | "(" formula ")" | "true" | "false" | atom
    atom     := term ("<=" | "=") term
    term     := name ("*" name)*          # last name is the variable (left side)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Union

from .core import LEFT, SPoset, StructureError


@dataclass(frozen=True)
class Term:
    coeffs: tuple[int, ...]
    var: str


@dataclass(frozen=True)
class Atom:
    rel: str  # "<=" or "="
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    ante: "Formula"
    cons: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: tuple[str, ...]
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Forall, Exists]
Sentence = Formula

TRUE = And(())
FALSE = Or(())


def t(var, *coeffs) -> Term:
    return Term(tuple(coeffs), var)


def le(a: Term, b: Term) -> Atom:
    return Atom("<=", a, b)


def eq(a: Term, b: Term) -> Atom:
    return Atom("=", a, b)


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.left.var, f.right.var}
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return set().union(*(free_vars(p) for p in f.parts)) if f.parts else set()
    if isinstance(f, Implies):
        return free_vars(f.ante) | free_vars(f.cons)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - set(f.vars)
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# evaluation


class UnboundVariable(StructureError):
    pass


def _term_value(A: SPoset, term: Term, env) -> int:
    try:
        x = env[term.var]
    except KeyError:
        raise UnboundVariable(f"variable {term.var!r} is not bound") from None
    coeffs = reversed(term.coeffs) if A.side == LEFT else term.coeffs
    for s in coeffs:
        x = A.act[s][x]
    return x


def holds(A: SPoset, f: Formula, env=None) -> bool:
    env = {} if env is None else env
    if isinstance(f, Atom):
        x, y = _term_value(A, f.left, env), _term_value(A, f.right, env)
        return A.leq[x][y] if f.rel == "<=" else x == y
    if isinstance(f, Not):
        return not holds(A, f.body, env)
    if isinstance(f, And):
        return all(holds(A, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(holds(A, p, env) for p in f.parts)
    if isinstance(f, Implies):
        return not holds(A, f.ante, env) or holds(A, f.cons, env)
    if isinstance(f, (Forall, Exists)):
        quant = all if isinstance(f, Forall) else any
        return quant(holds(A, f.body, {**env, **dict(zip(f.vars, vals))})
                     for vals in product(A.elements, repeat=len(f.vars)))
    raise TypeError(f"not a formula: {f!r}")


def fo_eval(A: SPoset, sentence: Formula) -> bool:
    """Truth of a closed sentence in the finite S-poset ``A``."""
    loose = free_vars(sentence)
    if loose:
        raise UnboundVariable(f"sentence has free variables {sorted(loose)}")
    return holds(A, sentence)


# --------------------------------------------------------------------------
# text form


_NAME = re.compile(r"[A-Za-z0-9_']+$")


def _term_text(term: Term, names, side) -> str:
    coeffs = [names[s] for s in term.coeffs]
    parts = coeffs + [term.var] if side == LEFT else [term.var] + coeffs
    return "*".join(parts)


def to_text(f: Formula, names, side: str = LEFT) -> str:
    for n in names:
        if not _NAME.match(n):
            raise ValueError(f"element name {n!r} cannot be written in sentence text")

    def wrap(g):
        s = go(g)
        return s if isinstance(g, (Atom, Not)) or g in (TRUE, FALSE) else f"({s})"

    def go(g):
        if isinstance(g, Atom):
            return f"{_term_text(g.left, names, side)} {g.rel} {_term_text(g.right, names, side)}"
        if g == TRUE:
            return "true"
        if g == FALSE:
            return "false"
        if isinstance(g, Not):
            return f"~{wrap(g.body)}" if not isinstance(g.body, Atom) else f"~({go(g.body)})"
        if isinstance(g, And):
            return " & ".join(wrap(p) for p in g.parts)
        if isinstance(g, Or):
            return " | ".join(wrap(p) for p in g.parts)
        if isinstance(g, Implies):
            return f"{wrap(g.ante)} -> {wrap(g.cons)}"
        if isinstance(g, (Forall, Exists)):
            q = "forall" if isinstance(g, Forall) else "exists"
            body = go(g.body) if isinstance(g.body, (Forall, Exists)) else f"({go(g.body)})"
            return f"{q} {', '.join(g.vars)}. {body}"
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


class SentenceSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(->|<=|[()~&|.,=*]|[A-Za-z0-9_']+)")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SentenceSyntaxError(f"unexpected character at column {pos + 1}: {text[pos:pos + 10]!r}")
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def parse_sentence(text: str, names, side: str = LEFT) -> Formula:
    """Inverse of :func:`to_text`."""
    toks = _tokenize(text)
    index = {n: i for i, n in enumerate(names)}
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise SentenceSyntaxError(f"unexpected end of sentence (wanted {expected or 'token'})")
        tok, col = toks[pos]
        if expected is not None and tok != expected:
            raise SentenceSyntaxError(f"expected {expected!r} at column {col + 1}, found {tok!r}")
        pos += 1
        return tok

    def formula():
        if peek() in ("forall", "exists"):
            q = take()
            vs = [take()]
            while peek() == ",":
                take(",")
                vs.append(take())
            take(".")
            body = formula()
            return (Forall if q == "forall" else Exists)(tuple(vs), body)
        left = disj()
        if peek() == "->":
            take("->")
            return Implies(left, formula())
        return left

    def disj():
        parts = [conj()]
        while peek() == "|":
            take("|")
            parts.append(conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj():
        parts = [unary()]
        while peek() == "&":
            take("&")
            parts.append(unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary():
        tok = peek()
        if tok == "~":
            take("~")
            return Not(unary())
        if tok == "(":
            take("(")
            f = formula()
            take(")")
            return f
        if tok == "true":
            take()
            return TRUE
        if tok == "false":
            take()
            return FALSE
        lhs = term()
        rel = peek()
        if rel not in ("<=", "="):
            raise SentenceSyntaxError(f"expected '<=' or '=' after term, found {rel!r}")
        take()
        return Atom(rel, lhs, term())

    def term():
        words = [take()]
        while peek() == "*":
            take("*")
            words.append(take())
        var, coeff_names = (words[-1], words[:-1]) if side == LEFT else (words[0], words[1:])
        try:
            coeffs = tuple(index[w] for w in coeff_names)
        except KeyError as exc:
            raise SentenceSyntaxError(f"unknown monoid element {exc.args[0]!r}") from None
        return Term(coeffs, var)

    f = formula()
    if pos != len(toks):
        raise SentenceSyntaxError(f"trailing input at column {toks[pos][1] + 1}")
    return f
