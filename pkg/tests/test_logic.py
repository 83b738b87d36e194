import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sposet.axioms import AXIOM_CLASSES, emit_axioms
from sposet.core import RIGHT, regular
from sposet.library import u2
from sposet.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Exists,
    Forall,
    Implies,
    Not,
    Or,
    SentenceSyntaxError,
    Term,
    fo_eval,
    free_vars,
    holds,
    parse_sentence,
    to_text,
)
from sposet.search import enumerate_pomonoids

NAMES = ("1", "e")
VARS = ("x", "y", "z")

terms = st.builds(Term, st.lists(st.integers(0, 1), max_size=2).map(tuple), st.sampled_from(VARS))
atoms = st.builds(Atom, st.sampled_from(["<=", "="]), terms, terms)


def _formulas():
    return st.recursive(
        atoms,
        lambda inner: st.one_of(
            st.builds(Not, inner),
            st.lists(inner, min_size=2, max_size=3).map(lambda p: And(tuple(p))),
            st.lists(inner, min_size=2, max_size=3).map(lambda p: Or(tuple(p))),
            st.builds(Implies, inner, inner),
            st.builds(Forall, st.lists(st.sampled_from(VARS), min_size=1, max_size=2, unique=True).map(tuple), inner),
            st.builds(Exists, st.lists(st.sampled_from(VARS), min_size=1, max_size=2, unique=True).map(tuple), inner),
        ),
        max_leaves=6,
    )


class TestText:
    def test_known_form(self, U2):
        f = Forall(("x",), Atom("<=", Term((1,), "x"), Term((0,), "x")))
        assert to_text(f, U2.names) == "forall x. (e*x <= 1*x)"

    def test_right_terms(self, U2):
        f = Atom("=", Term((1, 0), "x"), Term((), "y"))
        assert to_text(f, U2.names, RIGHT) == "x*e*1 = y"
        assert parse_sentence("x*e*1 = y", U2.names, RIGHT) == f

    def test_constants(self):
        assert parse_sentence("true & false", NAMES) == And((TRUE, FALSE))

    @settings(max_examples=200, deadline=None)
    @given(_formulas())
    def test_round_trip(self, f):
        assert parse_sentence(to_text(f, NAMES), NAMES) == f

    @pytest.mark.parametrize("which", AXIOM_CLASSES)
    def test_emitted_round_trip(self, which):
        for S in enumerate_pomonoids(2):
            for f in emit_axioms(S, which):
                assert parse_sentence(to_text(f, S.names), S.names) == f

    def test_emission_is_stable(self, U2):
        a = [to_text(f, U2.names) for f in emit_axioms(U2, "W")]
        b = [to_text(f, U2.names) for f in emit_axioms(U2, "W")]
        assert a == b

    @pytest.mark.parametrize("bad", ["forall x (x <= x)", "x <=", "e*x <= q*x", "x <= x)", "x $ y"])
    def test_syntax_errors(self, bad):
        with pytest.raises(SentenceSyntaxError):
            parse_sentence(bad, NAMES)

    def test_bad_name(self):
        with pytest.raises(ValueError):
            to_text(Atom("=", Term((0,), "x"), Term((), "x")), ("a b",))


class TestEvaluation:
    def test_free_vars(self):
        f = Forall(("x",), Atom("<=", Term((), "x"), Term((), "y")))
        assert free_vars(f) == {"y"}

    @settings(max_examples=100, deadline=None)
    @given(_formulas())
    def test_negation(self, f):
        B = regular(u2("e<1"))
        env = {"x": 0, "y": 1, "z": 1}
        assert holds(B, Not(f), env) != holds(B, f, env)

    def test_eval_closed(self, U2):
        f = Exists(("x",), Forall(("y",), Atom("<=", Term((), "x"), Term((), "y"))))
        assert fo_eval(regular(U2), f)  # e is least
