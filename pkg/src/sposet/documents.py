"""JSON documents for pomonoids, S-posets, tossing certificates, sentences and reports.

Every document is a JSON object with a ``kind`` field.  Elements are
referred to by name.  Order relations may list any generating pairs; the
parser closes them and then validates.
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional, Union

from .core import (
    LEFT,
    RIGHT,
    Pomonoid,
    SPoset,
    StructureError,
    ValidationReport,
    covers,
    validate_pomonoid,
    validate_sposet,
)
from .logic import parse_sentence, to_text
from .tensor import Skeleton, TossingCertificate, TossingFormatError

KINDS = ("pomonoid", "sposet", "tossing", "sentences", "report")


class DocumentError(ValueError):
    """Malformed document: JSON syntax, missing fields or unknown names."""


class ValidationFailed(ValueError):
    def __init__(self, what: str, report: ValidationReport):
        self.report = report
        lines = "; ".join(str(v) for v in report.violations)
        super().__init__(f"{what} fails validation: {lines}")


def dumps(doc: dict) -> str:
    # insertion order is fixed by the serializers, so output is byte-stable
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}; expected one of {', '.join(KINDS)}")
    return doc


def _field(doc, key, kind=None):
    if key not in doc:
        raise DocumentError(f"{doc.get('kind', 'document')} document lacks field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return value


def _lookup(index: dict, name, what: str) -> int:
    try:
        return index[name]
    except (KeyError, TypeError):
        raise DocumentError(f"unknown {what} {name!r}") from None


def _names(doc) -> list[str]:
    names = _field(doc, "elements", list)
    if not names:
        raise StructureError("empty carrier")
    if len(set(names)) != len(names) or not all(isinstance(n, str) for n in names):
        raise DocumentError("element names must be distinct strings")
    return names


# --------------------------------------------------------------------------
# pomonoids and S-posets


def pomonoid_to_doc(S: Pomonoid) -> dict:
    n = S.names
    return {
        "kind": "pomonoid",
        "elements": list(n),
        "one": n[S.one],
        "mul": [[n[S.mul[a][b]] for b in S.elements] for a in S.elements],
        "leq": [[n[a], n[b]] for a, b in covers(S.leq)],
    }


def pomonoid_from_doc(doc: dict, validate: bool = True) -> Pomonoid:
    names = _names(doc)
    idx = {x: i for i, x in enumerate(names)}
    mul = _field(doc, "mul", list)
    if len(mul) != len(names) or any(not isinstance(r, list) or len(r) != len(names) for r in mul):
        raise StructureError(f"mul must be a {len(names)}x{len(names)} table")
    table = [[_lookup(idx, v, "element") for v in row] for row in mul]
    one = _lookup(idx, _field(doc, "one"), "element")
    pairs = [tuple(_lookup(idx, v, "element") for v in p) for p in _pairs(doc)]
    S = Pomonoid.from_tables(table, one, pairs, names)
    if validate:
        rep = validate_pomonoid(S)
        if not rep.ok:
            raise ValidationFailed("pomonoid", rep)
    return S


def _pairs(doc):
    pairs = doc.get("leq", [])
    if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
        raise DocumentError("leq must be a list of [lower, upper] pairs")
    return pairs


def sposet_to_doc(A: SPoset, monoid: Union[str, dict, None] = None) -> dict:
    n = A.names
    return {
        "kind": "sposet",
        "monoid": pomonoid_to_doc(A.monoid) if monoid is None else monoid,
        "side": A.side,
        "elements": list(n),
        "act": [[n[A.act[s][x]] for x in A.elements] for s in A.monoid.elements],
        "leq": [[n[a], n[b]] for a, b in covers(A.leq)],
    }


def sposet_from_doc(doc: dict, base_dir: Optional[str] = None, validate: bool = True,
                    monoid: Optional[Pomonoid] = None) -> SPoset:
    if monoid is None:
        ref = _field(doc, "monoid")
        if isinstance(ref, str):
            path = ref if base_dir is None else os.path.join(base_dir, ref)
            S = load_structure(path)
            if not isinstance(S, Pomonoid):
                raise DocumentError(f"{ref} is not a pomonoid document")
        elif isinstance(ref, dict):
            S = pomonoid_from_doc(ref)
        else:
            raise DocumentError("monoid must be an inline document or a path")
    else:
        S = monoid
    side = doc.get("side", LEFT)
    if side not in (LEFT, RIGHT):
        raise DocumentError(f"side must be 'left' or 'right', not {side!r}")
    names = _names(doc)
    idx = {x: i for i, x in enumerate(names)}
    act = _field(doc, "act", list)
    if len(act) != S.size or any(not isinstance(r, list) or len(r) != len(names) for r in act):
        raise StructureError(f"act must have {S.size} rows (monoid elements) of {len(names)} entries")
    table = [[_lookup(idx, v, "element") for v in row] for row in act]
    pairs = [tuple(_lookup(idx, v, "element") for v in p) for p in _pairs(doc)]
    A = SPoset.from_tables(S, side, table, pairs, names)
    if validate:
        rep = validate_sposet(A)
        if not rep.ok:
            raise ValidationFailed("S-poset", rep)
    return A


def parse_structure(text: str, base_dir: Optional[str] = None) -> Union[Pomonoid, SPoset]:
    """Parse a pomonoid or S-poset document, closing the order and validating."""
    doc = loads(text)
    if doc["kind"] == "pomonoid":
        return pomonoid_from_doc(doc)
    if doc["kind"] == "sposet":
        return sposet_from_doc(doc, base_dir)
    raise DocumentError(f"expected a pomonoid or sposet document, got {doc['kind']!r}")


def load_structure(path: str) -> Union[Pomonoid, SPoset]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return parse_structure(text, os.path.dirname(os.path.abspath(path)))


def serialize_structure(X: Union[Pomonoid, SPoset]) -> str:
    return dumps(pomonoid_to_doc(X) if isinstance(X, Pomonoid) else sposet_to_doc(X))


# --------------------------------------------------------------------------
# certificates


def certificate_to_doc(A: SPoset, B: SPoset, cert: TossingCertificate) -> dict:
    sn, an, bn = A.monoid.names, A.names, B.names
    rows = [[an[a], sn[s], an[a2], sn[t_], bn[b]]
            for half in cert.rows() for a, s, a2, t_, b in half]
    return {
        "kind": "tossing",
        "skeleton": [sn[s] for s in cert.skeleton.entries()],
        "rows": rows,
        "doubled": cert.doubled,
        "split": len(cert.skeleton.first),
        "start": [an[cert.start[0]], bn[cert.start[1]]],
        "end": [an[cert.end[0]], bn[cert.end[1]]],
    }


def certificate_from_doc(doc: dict, A: SPoset, B: SPoset) -> TossingCertificate:
    if doc.get("kind") != "tossing":
        raise DocumentError("expected a tossing document")
    S = A.monoid
    sidx = {x: i for i, x in enumerate(S.names)}
    aidx = {x: i for i, x in enumerate(A.names)}
    bidx = {x: i for i, x in enumerate(B.names)}
    entries = [_lookup(sidx, s, "monoid element") for s in _field(doc, "skeleton", list)]
    doubled = bool(doc.get("doubled", False))
    split = doc.get("split", len(entries) if not doubled else len(entries) // 2)
    try:
        sk = Skeleton(tuple(entries[:split]), tuple(entries[split:]) if doubled else None)
    except ValueError as exc:
        raise TossingFormatError(str(exc)) from None
    if not doubled and split != len(entries):
        raise TossingFormatError("single skeleton with a split point")
    start = _endpoint(doc, "start", aidx, bidx)
    end = _endpoint(doc, "end", aidx, bidx)
    rows = _field(doc, "rows", list)
    if len(rows) != sk.m + sk.n or any(not isinstance(r, list) or len(r) != 5 for r in rows):
        raise TossingFormatError(f"expected {sk.m + sk.n} rows of [a, s, a', t, b]")
    parsed = [(_lookup(aidx, r[0], "element"), _lookup(sidx, r[1], "monoid element"),
               _lookup(aidx, r[2], "element"), _lookup(sidx, r[3], "monoid element"),
               _lookup(bidx, r[4], "element")) for r in rows]
    a_chain, b_chain = [], []
    halves = [(parsed[:sk.m], sk.first, start[0], end[0])]
    if doubled:
        halves.append((parsed[sk.m:], sk.second, end[0], start[0]))
    for half_rows, half, a_first, a_last in halves:
        for i, (a, s, a2, t_, b) in enumerate(half_rows):
            if (s, t_) != (half[2 * i], half[2 * i + 1]):
                raise TossingFormatError(f"row {i + 1} coefficients disagree with the skeleton")
            if i == 0 and a != a_first:
                raise TossingFormatError("first row does not start at the start element")
            if i > 0 and a != half_rows[i - 1][2]:
                raise TossingFormatError(f"row {i + 1} does not continue row {i}")
            if i > 0:
                a_chain.append(a)
            b_chain.append(b)
        if half_rows[-1][2] != a_last:
            raise TossingFormatError("last row does not end at the end element")
    return TossingCertificate(sk, tuple(a_chain), tuple(b_chain), start, end)


def _endpoint(doc, key, aidx, bidx):
    p = _field(doc, key, list)
    if len(p) != 2:
        raise DocumentError(f"{key} must be [a, b]")
    return (_lookup(aidx, p[0], "element"), _lookup(bidx, p[1], "element"))


# --------------------------------------------------------------------------
# sentences and reports


def sentences_to_doc(S: Pomonoid, which: str, sentences, side: str = LEFT) -> dict:
    return {
        "kind": "sentences",
        "class": which,
        "side": side,
        "monoid": pomonoid_to_doc(S),
        "sentences": [to_text(f, S.names, side) for f in sentences],
    }


def sentences_from_doc(doc: dict):
    S = pomonoid_from_doc(_field(doc, "monoid", dict))
    side = doc.get("side", LEFT)
    return S, doc.get("class"), [parse_sentence(t, S.names, side) for t in _field(doc, "sentences", list)]


def report_doc(command: str, result: Any) -> dict:
    return {"kind": "report", "command": command, "result": result}
