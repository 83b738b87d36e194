"""Command-line frontend.

Exit status: 0 when the requested computation finished and the property
holds (or nothing was asked of it), 1 when the property fails or a
counterexample was found, 2 on bad input.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from typing import Optional, Sequence

from . import documents as docs
from .axioms import (
    AXIOM_CLASSES,
    dominating_set,
    e_good_check,
    emit_axioms,
    relation_sets,
    star_condition,
)
from .conditions import CONDITIONS, check_condition
from .core import (
    LEFT,
    RIGHT,
    Pomonoid,
    SPoset,
    StructureError,
    covers,
    regular,
    validate_pomonoid,
    validate_sposet,
)
from .flatness import IDEAL_VARIANTS, check_flat_bounded, check_ideal_flatness
from .logic import SentenceSyntaxError, fo_eval, to_text
from .search import (
    EXACT_CLASSES,
    enumerate_pomonoids,
    enumerate_sposets,
    enumerate_up_to,
    estimate_sposet_work,
    implication_audit,
    counterexample_search,
)
from .structure import decompose, is_free
from .tensor import TossingFormatError, extract_tossing, tensor_product, verify_tossing

log = logging.getLogger("sposet")

OK, FAILS, BAD_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# helpers


def _load(path: str):
    return docs.load_structure(path)


def _monoid(path: str) -> Pomonoid:
    X = _load(path)
    return X if isinstance(X, Pomonoid) else X.monoid


def _sposet(path: str, side: str = LEFT) -> SPoset:
    """An S-poset file, or a pomonoid file read as its regular act on ``side``."""
    X = _load(path)
    if isinstance(X, Pomonoid):
        return regular(X, side)
    if X.side != side:
        raise InputError(f"{path} holds a {X.side} S-poset, a {side} one is needed")
    return X


def _element(names, token: str) -> int:
    if token in names:
        return names.index(token)
    try:
        i = int(token)
    except ValueError:
        raise InputError(f"unknown element {token!r}") from None
    if not 0 <= i < len(names):
        raise InputError(f"element index {i} out of range")
    return i


def _pair(A: SPoset, B: SPoset, token: str):
    parts = token.split(",")
    if len(parts) != 2:
        raise InputError(f"pair {token!r} must be written a,b")
    return _element(list(A.names), parts[0].strip()), _element(list(B.names), parts[1].strip())


def _emit(args, doc: dict, text: str):
    if args.format == "json":
        sys.stdout.write(docs.dumps(doc))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _sposet_summary(B: SPoset) -> dict:
    return docs.sposet_to_doc(B)


# --------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    try:
        text = open(args.file, encoding="utf-8").read()
    except OSError as exc:
        raise docs.DocumentError(f"cannot read {args.file}: {exc.strerror}") from None
    doc = docs.loads(text)
    if doc["kind"] == "pomonoid":
        X = docs.pomonoid_from_doc(doc, validate=False)
        rep = validate_pomonoid(X)
    elif doc["kind"] == "sposet":
        X = docs.sposet_from_doc(doc, os.path.dirname(os.path.abspath(args.file)), validate=False)
        rep = validate_sposet(X)
    else:
        raise InputError(f"cannot validate a {doc['kind']} document")
    result = {"ok": rep.ok, "violations": [[v.axiom, list(v.witness)] for v in rep.violations]}
    lines = ["valid"] if rep.ok else [f"violates {v}" for v in rep.violations]
    _emit(args, docs.report_doc("validate", result), "\n".join(lines))
    return OK if rep.ok else FAILS


def cmd_tensor(args) -> int:
    A = _sposet(args.left, RIGHT)
    B = _sposet(args.right, LEFT)
    if A.monoid != B.monoid:
        raise InputError("the factors are over different pomonoids")
    T = tensor_product(A, B)
    if args.certify:
        p, q = (_pair(A, B, tok) for tok in args.certify)
        cert = extract_tossing(T, p, q, doubled=args.doubled)
        if cert is None:
            rel = "=" if args.doubled else "<="
            _emit(args, docs.report_doc("tensor", {"related": False}),
                  f"{A.names[p[0]]}(x){B.names[p[1]]} {rel} {A.names[q[0]]}(x){B.names[q[1]]} fails")
            return FAILS
        doc = docs.certificate_to_doc(A, B, cert)
        if args.format == "json":
            sys.stdout.write(docs.dumps(doc))
        else:
            lines = [f"skeleton {' '.join(doc['skeleton'])}"]
            lines += ["  " + " ".join(r) for r in doc["rows"]]
            sys.stdout.write("\n".join(lines) + "\n")
        return OK
    classes = [[[A.names[a], B.names[b]] for a, b in cls] for cls in T.classes]
    order = [[i, j] for i in range(T.size) for j in range(T.size) if i != j and T.leq[i][j]]
    lines = [f"{len(classes)} classes"]
    lines += [f"  [{i}] " + " ".join(f"{a}(x){b}" for a, b in c) for i, c in enumerate(classes)]
    lines += [f"  [{i}] <= [{j}]" for i, j in order]
    _emit(args, docs.report_doc("tensor", {"classes": classes, "order": order}), "\n".join(lines))
    return OK


def cmd_verify(args) -> int:
    A = _sposet(args.left, RIGHT)
    B = _sposet(args.right, LEFT)
    doc = docs.loads(open(args.certificate, encoding="utf-8").read())
    cert = docs.certificate_from_doc(doc, A, B)
    ok = verify_tossing(A, B, cert)
    _emit(args, docs.report_doc("verify", {"verified": ok}), "verified" if ok else "rejected")
    return OK if ok else FAILS


def _premise_text(B: SPoset, c: str, premise) -> str:
    sn, bn = B.monoid.names, B.names
    if c in ("E", "EP"):
        s, s2, b = premise
        return f"s={sn[s]} s'={sn[s2]} b={bn[b]}"
    if c == "SF":
        return _premise_text(B, premise[0], premise[1:]) + f" (condition {premise[0]})"
    s, b, s2, b2 = premise
    return f"s={sn[s]} b={bn[b]} s'={sn[s2]} b'={bn[b2]}"


def cmd_check(args) -> int:
    B = _sposet(args.sposet)
    v = check_condition(B, args.condition)
    result = {"condition": v.condition, "holds": v.holds,
              "counterexample": list(v.counterexample) if v.counterexample else None}
    text = f"{v.condition}: holds" if v.holds else \
        f"{v.condition}: fails at {_premise_text(B, args.condition, v.counterexample)}"
    _emit(args, docs.report_doc("check", result), text)
    return OK if v.holds else FAILS


def cmd_flat(args) -> int:
    B = _sposet(args.sposet)
    if args.variant in IDEAL_VARIANTS:
        v = check_ideal_flatness(B, args.variant)
        fail = None
        if v.failing_instance:
            ideal, pairs = v.failing_instance
            fail = {"ideal": [B.monoid.names[i] for i in ideal], "pairs": [list(p) for p in pairs]}
    else:
        v = check_flat_bounded(B, po=args.variant == "PF", max_len=args.bound or args.skeleton_bound)
        fail = None
        if v.failing_instance:
            sk, (b, b2) = v.failing_instance
            fail = {"skeleton": [B.monoid.names[s] for s in sk.entries()], "doubled": sk.doubled,
                    "pair": [B.names[b], B.names[b2]]}
    result = {"variant": args.variant, "verdict": v.describe(), "failing_instance": fail}
    _emit(args, docs.report_doc("flat", result), f"{args.variant}: {v.describe()}"
          + (f" {fail}" if fail else ""))
    return OK if v.holds else FAILS


def cmd_classify(args) -> int:
    B = _sposet(args.sposet)
    d = decompose(B)
    free, basis = is_free(B)
    sn, bn = B.monoid.names, B.names
    comps = []
    for comp, g in zip(d.components, d.generators):
        comps.append({"elements": [bn[x] for x in comp],
                      "generator": None if g is None else {"idempotent": sn[g.idempotent],
                                                           "element": bn[g.element]}})
    result = {"free": free, "basis": basis, "projective": d.projective, "components": comps}
    kind = "free" if free else "projective" if d.projective else "neither"
    lines = [f"{kind}" + (f" (basis {basis})" if free else "")]
    for c in comps:
        g = c["generator"]
        lines.append(f"  {{{', '.join(c['elements'])}}}"
                     + (f" = S{g['idempotent']} via {g['element']}" if g else " no generator"))
    _emit(args, docs.report_doc("classify", result), "\n".join(lines))
    return OK


def cmd_axioms(args) -> int:
    S = _monoid(args.monoid)
    sentences = emit_axioms(S, args.cls)
    if args.eval is None:
        _emit(args, docs.sentences_to_doc(S, args.cls, sentences),
              "\n".join(to_text(f, S.names) for f in sentences))
        return OK
    B = _sposet(args.eval)
    if B.monoid != S:
        raise InputError("the S-poset is over a different pomonoid")
    truth = [fo_eval(B, f) for f in sentences]
    result = {"class": args.cls, "models": all(truth),
              "failing": [to_text(f, S.names) for f, ok in zip(sentences, truth) if not ok]}
    text = "all sentences hold" if all(truth) else \
        "\n".join(["fails:"] + ["  " + s for s in result["failing"]])
    _emit(args, docs.report_doc("axioms", result), text)
    return OK if all(truth) else FAILS


def cmd_relations(args) -> int:
    S = _monoid(args.monoid)
    n = S.names
    s = _element(list(n), args.s)
    t_ = _element(list(n), args.t) if args.t is not None else s
    R, r = relation_sets(S, s, t_)
    pairs = lambda xs: [[n[u], n[v]] for u, v in xs]  # noqa: E731
    result = {"R": pairs(R.members), "R_generators": pairs(R.generators),
              "r": [n[u] for u in r.members], "r_generators": [n[u] for u in r.generators]}
    for kind in ("Pw", "W"):
        result[f"{kind}_dominating"] = pairs(dominating_set(S, kind, s, t_).dominating)
    if s == t_:
        result["PWPw_dominating"] = pairs(dominating_set(S, "PWPw", s).dominating)
    lines = [f"{k}: {v}" for k, v in result.items()]
    _emit(args, docs.report_doc("relations", result), "\n".join(lines))
    return OK


def cmd_egood(args) -> int:
    S = _monoid(args.monoid)
    n = list(S.names)
    if args.star or args.a is None:
        res = star_condition(S)
        result = {"holds": res.holds,
                  "minimal_sets": {n[e]: [n[x] for x in f] for e, f in sorted(res.minimal_sets.items())},
                  "failure": None if res.failure is None else [n[x] for x in res.failure]}
        lines = [f"condition (*): {'holds' if res.holds else 'fails'}"]
        lines += [f"  e={e}: f={{{', '.join(f)}}}" for e, f in result["minimal_sets"].items()]
        if res.failure:
            lines.append(f"  no {n[res.failure[0]]}-good factorisation of {n[res.failure[1]]}")
        _emit(args, docs.report_doc("egood", result), "\n".join(lines))
        return OK if res.holds else FAILS
    if None in (args.x, args.y, args.e):
        raise InputError("--a needs --x, --y and --e")
    a, x, y, e = (_element(n, v) for v in (args.a, args.x, args.y, args.e))
    ok = e_good_check(S, a, x, y, e)
    _emit(args, docs.report_doc("egood", {"good": ok}),
          f"{n[a]} = {n[x]}*{n[y]} is {'' if ok else 'not '}{n[e]}-good")
    return OK if ok else FAILS


def cmd_enumerate(args) -> int:
    size = args.size
    if args.monoid is None:
        found = enumerate_pomonoids(size, orders=args.orders)
        out = [docs.pomonoid_to_doc(S) for S in found]
        text = [f"{len(found)} pomonoids of order {size}"]
        text += [f"  {S.describe()}" for S in found]
    else:
        S = _monoid(args.monoid)
        log.info("about %d candidates", estimate_sposet_work(S, size))
        found = enumerate_sposets(S, size, args.side)
        out = [docs.sposet_to_doc(B, monoid=args.monoid) for B in found]
        text = [f"{len(found)} {args.side} S-posets of size {size}"]
        text += [f"  act={[list(r) for r in B.act]} order={[list(p) for p in _covers(B)]}" for B in found]
    _emit(args, docs.report_doc("enumerate", {"count": len(out), "structures": out}), "\n".join(text))
    return OK


def _covers(B):
    return covers(B.leq)


def cmd_audit(args) -> int:
    S = _monoid(args.monoid)
    family = None
    if args.sample:
        pool = list(enumerate_up_to(S, args.max_size))
        rng = random.Random(args.seed)
        family = sorted(rng.sample(pool, min(args.sample, len(pool))), key=pool.index)
    rep = implication_audit(S, args.max_size, args.skeleton_bound, args.jobs, family)
    result = {
        "instances_checked": rep.instances_checked,
        "violations": [{"arrow": a, "instance": _sposet_summary(B)} for a, B in rep.violations],
        "strictness_witnesses": {a: _sposet_summary(B) for a, B in sorted(rep.strictness_witnesses.items())},
    }
    lines = [f"{rep.instances_checked} S-posets checked, {len(rep.violations)} violations"]
    lines += [f"  violated: {a}" for a, _ in rep.violations]
    lines += [f"  strict: {a}" for a in sorted(rep.strictness_witnesses)]
    _emit(args, docs.report_doc("audit", result), "\n".join(lines))
    return OK if rep.ok else FAILS


def cmd_search(args) -> int:
    S = _monoid(args.monoid)
    B = counterexample_search(S, args.max_size, args.stronger, args.weaker)
    result = {"stronger": args.stronger, "weaker": args.weaker,
              "counterexample": None if B is None else _sposet_summary(B)}
    if B is None:
        text = f"no S-poset of size <= {args.max_size} is {args.weaker} but not {args.stronger}"
    else:
        text = (f"{args.weaker} but not {args.stronger}: act={[list(r) for r in B.act]} "
                f"order={[list(p) for p in _covers(B)]}")
    _emit(args, docs.report_doc("search", result), text)
    return OK if B is None else FAILS


# --------------------------------------------------------------------------
# parser


def _common(defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without defaults, so a flag given
    # before the subcommand is not overwritten
    c = argparse.ArgumentParser(add_help=False, allow_abbrev=False)

    def d(value):
        return value if defaults else argparse.SUPPRESS

    c.add_argument("--max-size", type=int, default=d(3), help="largest S-poset to enumerate")
    c.add_argument("--skeleton-bound", type=int, default=d(4), help="longest skeleton to try")
    c.add_argument("--format", choices=("text", "json"), default=d("text"))
    c.add_argument("--seed", type=int, default=d(0), help="seed for sampled runs")
    c.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    c.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    p = argparse.ArgumentParser(prog="sposet", parents=[_common(True)], allow_abbrev=False,
                                description="Finite pomonoids, S-posets, tensor products and flatness.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, allow_abbrev=False)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check a pomonoid or S-poset document against its axioms")
    sp.add_argument("file")

    sp = add("tensor", cmd_tensor, "tensor product classes, or a tossing certificate")
    sp.add_argument("--left", required=True, help="right S-poset (or pomonoid for S itself)")
    sp.add_argument("--right", required=True, help="left S-poset (or pomonoid for S itself)")
    sp.add_argument("--certify", nargs=2, metavar=("P", "Q"), help="pairs a,b and a',b'")
    sp.add_argument("--doubled", action="store_true", help="certify equality instead of <=")

    sp = add("verify", cmd_verify, "re-check a tossing certificate")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--certificate", required=True)

    sp = add("check", cmd_check, "decide an interpolation condition")
    sp.add_argument("--condition", required=True, choices=CONDITIONS)
    sp.add_argument("--sposet", required=True)

    sp = add("flat", cmd_flat, "ideal flatness (exact) or flat/po-flat (bounded)")
    sp.add_argument("--variant", required=True, choices=IDEAL_VARIANTS + ("F", "PF"))
    sp.add_argument("--sposet", required=True)
    sp.add_argument("--bound", type=int, default=None, help="skeleton length bound for F and PF")

    sp = add("classify", cmd_classify, "free / projective recognition")
    sp.add_argument("--sposet", required=True)

    sp = add("axioms", cmd_axioms, "emit or evaluate axiom sentences")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--class", dest="cls", required=True, choices=AXIOM_CLASSES)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--emit", action="store_true", help="print the sentences (default)")
    g.add_argument("--eval", metavar="SPOSET", help="evaluate the sentences in an S-poset")

    sp = add("relations", cmd_relations, "R<=(s,t), r<=(s,t), generators and dominating sets")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--s", required=True)
    sp.add_argument("--t", default=None)

    sp = add("egood", cmd_egood, "e-good factorisations and condition (*)")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--star", action="store_true")
    for name in ("a", "x", "y", "e"):
        sp.add_argument(f"--{name}")

    sp = add("enumerate", cmd_enumerate, "pomonoids, or S-posets over a pomonoid, up to isomorphism")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--monoid", default=None)
    sp.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    sp.add_argument("--orders", choices=("all", "trivial"), default="all")

    sp = add("audit", cmd_audit, "check the implication diagram on every small S-poset")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--sample", type=int, default=0, help="check a seeded random sample of this size")

    sp = add("search", cmd_search, "smallest S-poset in one class but not another")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--stronger", required=True, choices=EXACT_CLASSES)
    sp.add_argument("--weaker", required=True, choices=EXACT_CLASSES)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except docs.ValidationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (docs.DocumentError, InputError, StructureError, TossingFormatError,
            SentenceSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
