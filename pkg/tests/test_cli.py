import json

import pytest

from sposet import documents as docs
from sposet.axioms import emit_axioms
from sposet.cli import main
from sposet.core import LEFT, RIGHT, regular
from sposet.search import enumerate_pomonoids, enumerate_up_to
from sposet.tensor import extract_tossing, tensor_product

U2_DOC = {"kind": "pomonoid", "elements": ["1", "e"], "one": "1",
          "mul": [["1", "e"], ["e", "e"]], "leq": [["e", "1"]]}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc) if isinstance(doc, dict) else doc)
        return str(p)
    out = {
        "u2": write("u2.json", U2_DOC),
        "t1": write("t1.json", {"kind": "pomonoid", "elements": ["1"], "one": "1", "mul": [["1"]]}),
    }
    out["chain2"] = write("chain2.json", {"kind": "sposet", "monoid": "t1.json", "side": "left",
                                          "elements": ["a", "b"], "act": [["a", "b"]], "leq": [["a", "b"]]})
    out["write"] = write
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


class TestDocuments:
    def test_parse_u2(self):
        S = docs.parse_structure(json.dumps(U2_DOC))
        assert S.names == ("1", "e") and S.leq == ((True, False), (True, True))

    def test_antisymmetry_after_closure(self):
        doc = dict(U2_DOC, leq=[["e", "1"], ["1", "e"]])
        with pytest.raises(docs.ValidationFailed) as err:
            docs.parse_structure(json.dumps(doc))
        assert "antisymmetry" in err.value.report.axioms()

    def test_empty_carrier(self):
        from sposet.core import StructureError
        with pytest.raises(StructureError):
            docs.parse_structure(json.dumps({"kind": "pomonoid", "elements": [], "one": "1", "mul": []}))

    def test_syntax_error_position(self):
        with pytest.raises(docs.DocumentError, match="line 2, column"):
            docs.parse_structure('{"kind": "pomonoid",\n "elements": [,]}')

    def test_round_trip_structures(self):
        for S in enumerate_pomonoids(2) + enumerate_pomonoids(3):
            assert docs.parse_structure(docs.serialize_structure(S)) == S
            for B in enumerate_up_to(S, 2, LEFT):
                assert docs.parse_structure(docs.serialize_structure(B)) == B

    def test_serialization_stable(self):
        S = enumerate_pomonoids(2)[1]
        assert docs.serialize_structure(S) == docs.serialize_structure(S)

    def test_round_trip_certificates(self):
        for S in enumerate_pomonoids(2):
            A, B = regular(S, RIGHT), regular(S, LEFT)
            T = tensor_product(A, B)
            for p in [(0, 0), (1, 1), (0, 1)]:
                for q in [(0, 0), (1, 0), (1, 1)]:
                    for doubled in (False, True):
                        c = extract_tossing(T, p, q, doubled)
                        if c is None:
                            continue
                        doc = json.loads(docs.dumps(docs.certificate_to_doc(A, B, c)))
                        assert docs.certificate_from_doc(doc, A, B) == c

    def test_round_trip_sentences(self):
        S = enumerate_pomonoids(2)[2]
        sents = emit_axioms(S, "Pw")
        doc = json.loads(docs.dumps(docs.sentences_to_doc(S, "Pw", sents)))
        S2, which, back = docs.sentences_from_doc(doc)
        assert S2 == S and which == "Pw" and back == sents

    def test_round_trip_report(self):
        d = docs.report_doc("audit", {"instances_checked": 3})
        assert docs.loads(docs.dumps(d)) == d


class TestCommands:
    def test_validate(self, files, capsys):
        assert run(capsys, "validate", files["u2"])[0] == 0

    def test_check_p_on_chain(self, files, capsys):
        code, out = run(capsys, "check", "--condition", "P", "--sposet", files["chain2"])
        assert code == 1 and "s=1 b=a s'=1 b'=b" in out.out

    def test_tensor_certify_diagonal(self, files, capsys):
        code, out = run(capsys, "--format", "json", "tensor", "--left", files["u2"], "--right", files["u2"],
                        "--certify", "0,0", "1,1")
        assert code == 0
        doc = json.loads(out.out)
        assert doc["kind"] == "tossing" and doc["skeleton"] == ["1", "1"]

    def test_certificates_reverify(self, files, capsys):
        for p, q, extra in [("1,1", "e,e", []), ("e,1", "1,e", ["--doubled"]), ("e,1", "1,e", [])]:
            code, out = run(capsys, "--format", "json", "tensor", "--left", files["u2"],
                            "--right", files["u2"], "--certify", p, q, *extra)
            if code != 0:
                continue
            cert = files["write"]("cert.json", out.out)
            code, _ = run(capsys, "verify", "--left", files["u2"], "--right", files["u2"],
                          "--certificate", cert)
            assert code == 0

    def test_tampered_certificate(self, files, capsys):
        code, out = run(capsys, "--format", "json", "tensor", "--left", files["u2"], "--right", files["u2"],
                        "--certify", "e,1", "e,e")
        doc = json.loads(out.out)
        doc["rows"][-1][4] = "1" if doc["rows"][-1][4] == "e" else "e"
        doc["end"] = ["1", "e"]
        cert = files["write"]("bad.json", doc)
        code, _ = run(capsys, "verify", "--left", files["u2"], "--right", files["u2"], "--certificate", cert)
        assert code in (1, 2)

    def test_audit(self, files, capsys):
        code, out = run(capsys, "audit", "--monoid", files["u2"], "--max-size", "3")
        assert code == 0 and "0 violations" in out.out

    def test_audit_sampled_reproducible(self, files, capsys):
        a = run(capsys, "--format", "json", "audit", "--monoid", files["u2"], "--max-size", "3",
                "--sample", "5", "--seed", "7")[1].out
        b = run(capsys, "--format", "json", "audit", "--monoid", files["u2"], "--max-size", "3",
                "--sample", "5", "--seed", "7")[1].out
        assert a == b and json.loads(a)["result"]["instances_checked"] == 5

    def test_search(self, files, capsys):
        assert run(capsys, "search", "--monoid", files["u2"], "--stronger", "Fr", "--weaker", "Pr")[0] == 1
        assert run(capsys, "search", "--monoid", files["u2"], "--stronger", "P", "--weaker", "P")[0] == 0

    def test_axioms(self, files, capsys):
        code, out = run(capsys, "axioms", "--monoid", files["u2"], "--class", "Pw", "--emit")
        assert code == 0 and len(out.out.splitlines()) == 4
        code, _ = run(capsys, "axioms", "--monoid", files["u2"], "--class", "Pw", "--eval", files["u2"])
        assert code == 0

    def test_misc(self, files, capsys):
        assert run(capsys, "classify", "--sposet", files["u2"])[0] == 0
        assert run(capsys, "relations", "--monoid", files["u2"], "--s", "e", "--t", "1")[0] == 0
        assert run(capsys, "egood", "--monoid", files["u2"], "--star")[0] == 0
        assert run(capsys, "egood", "--monoid", files["u2"], "--a", "e", "--x", "e", "--y", "1", "--e", "e")[0] == 0
        assert run(capsys, "flat", "--variant", "PF", "--sposet", files["chain2"])[0] == 0
        assert run(capsys, "flat", "--variant", "WF", "--sposet", files["chain2"])[0] == 0
        code, out = run(capsys, "enumerate", "--size", "2")
        assert code == 0 and out.out.startswith("4 pomonoids")

    def test_json_output_stable(self, files, capsys):
        a = run(capsys, "--format", "json", "enumerate", "--size", "2", "--monoid", files["u2"])[1].out
        b = run(capsys, "--format", "json", "enumerate", "--size", "2", "--monoid", files["u2"])[1].out
        assert a == b

    def test_input_errors(self, files, capsys):
        bad = files["write"]("bad.json", "{not json")
        assert run(capsys, "validate", bad)[0] == 2
        assert run(capsys, "check", "--condition", "P", "--sposet", "/nonexistent.json")[0] == 2
        with pytest.raises(SystemExit) as e:
            main(["frobnicate"])
        assert e.value.code == 2
        with pytest.raises(SystemExit) as e:
            main(["check", "--bogus"])
        assert e.value.code == 2
