from itertools import combinations, product

import pytest

from sposet.axioms import (
    dominates,
    dominating_set,
    e_good_check,
    emit_axioms,
    ep_vacuous_within,
    relation_sets,
    star_condition,
)
from sposet.conditions import check_condition
from sposet.core import LEFT, Pomonoid, SPoset, regular
from sposet.library import trivial_monoid, u2, z2
from sposet.logic import Forall, Implies, UnboundVariable, fo_eval, le, t
from sposet.search import enumerate_pomonoids, enumerate_up_to


# {1, a, b} with a*x = a and b*x = b, discretely ordered: R(a, b) is empty
LEFT_ZERO = Pomonoid.from_tables([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, names=("1", "a", "b"))


class TestRelationSets:
    def test_trivial(self, T1):
        R, r = relation_sets(T1, 0, 0)
        assert R.members == ((0, 0),) and R.generators == ((0, 0),)

    def test_u2_pairs(self, U2):
        R, _ = relation_sets(U2, 1, 0)
        assert len(R.members) == 4
        assert set(R.generators) == {(0, 0), (0, 1), (1, 0)}

    def test_u2_elements(self, U2):
        _, r = relation_sets(U2, 1, 0)
        assert r.members == (0, 1) and r.generators == (0,)

    def test_generators_generate(self):
        for S in enumerate_pomonoids(2) + enumerate_pomonoids(3):
            for s, t_ in product(S.elements, repeat=2):
                R, r = relation_sets(S, s, t_)
                span = {(S.mul[u][h], S.mul[v][h]) for u, v in R.generators for h in S.elements}
                assert span == set(R.members)
                assert {S.mul[u][h] for u in r.generators for h in S.elements} == set(r.members)


class TestDomination:
    def test_trivial(self, T1):
        assert dominating_set(T1, "Pw", 0, 0).dominating == ((0, 0),)

    @pytest.mark.parametrize("kind", ["Pw", "W", "PWPw"])
    def test_every_member_dominated(self, kind):
        for S in enumerate_pomonoids(2) + enumerate_pomonoids(3):
            for s, t_ in product(S.elements, repeat=2):
                if kind == "PWPw" and s != t_:
                    continue
                D = dominating_set(S, kind, s, t_)
                if kind == "W":
                    for x in D.members:
                        assert any(any(S.leq[x[0]][S.mul[p][z]] and S.leq[S.mul[q][z]][x[1]]
                                       for z in S.elements) for p, q in D.dominating)
                else:
                    assert all(any(dominates(S, g, x) for g in D.dominating) for x in D.members)

    def test_u2_pwpw(self, U2):
        D = dominating_set(U2, "PWPw", 1)
        assert len(D.members) == 4
        for u, v in D.members:
            assert any(dominates(U2, g, (u, v)) for g in D.dominating)

    def test_u2_trivial_one_e(self):
        D = dominating_set(u2("trivial"), "Pw", 0, 1)
        assert set(D.members) == {(1, 0), (1, 1)} and not D.empty

    def test_empty_flag(self):
        D = dominating_set(LEFT_ZERO, "Pw", 1, 2)
        assert D.empty and D.dominating == ()


class TestEmission:
    def test_pis_valid(self, T1):
        for B in enumerate_up_to(T1, 3):
            assert all(fo_eval(B, f) for f in emit_axioms(T1, "PiS"))

    def test_pis_matches_validation(self, U2):
        bad = SPoset.from_tables(U2, LEFT, [[0, 1], [1, 0]], [(0, 1)])
        assert not all(fo_eval(bad, f) for f in emit_axioms(U2, "PiS"))

    def test_u2_pw_positive(self, U2):
        sents = emit_axioms(U2, "Pw")
        assert len(sents) == 4
        assert all(isinstance(f, Forall) and isinstance(f.body, Implies) for f in sents)

    def test_u2_trivial_pw_one_e(self):
        S = u2("trivial")
        f = emit_axioms(S, "Pw")[1]  # rho = (1, e)
        assert isinstance(f.body, Implies)

    def test_psi(self, U2):
        assert fo_eval(regular(U2), Forall(("x",), le(t("x", 1), t("x", 0))))

    def test_unbound(self, U2):
        with pytest.raises(UnboundVariable):
            fo_eval(regular(U2), le(t("x"), t("y")))

    def test_unknown_class(self, U2):
        with pytest.raises(ValueError):
            emit_axioms(U2, "SF")

    @pytest.mark.parametrize("S", [trivial_monoid(), u2("trivial"), u2("e<1"), z2()],
                             ids=["T1", "U2", "U2le", "Z2"])
    def test_models_match_checkers(self, S):
        sents = {c: emit_axioms(S, c) for c in ("EP", "Pw", "PWP", "PWPw", "W")}
        for B in enumerate_up_to(S, 3):
            for c, ss in sents.items():
                assert all(fo_eval(B, f) for f in ss) == check_condition(B, c).holds, c

    def test_negative_branch(self):
        text = [f for f in emit_axioms(LEFT_ZERO, "Pw") if not isinstance(f.body, Implies)]
        assert len(text) == 2
        for B in enumerate_up_to(LEFT_ZERO, 3):
            for c in ("EP", "Pw", "W"):
                assert all(fo_eval(B, f) for f in emit_axioms(LEFT_ZERO, c)) == check_condition(B, c).holds

    def test_ep_vacuity(self, U2):
        assert not ep_vacuous_within(U2, 0, 0, 2)
        assert ep_vacuous_within(LEFT_ZERO, 1, 2, 2)


class TestEGood:
    def test_e_through_e(self, U2):
        assert e_good_check(U2, 1, 1, 0, 1)

    def test_e_through_one(self, U2):
        assert not e_good_check(U2, 1, 0, 1, 1)

    def test_precondition(self, U2):
        with pytest.raises(ValueError):
            e_good_check(U2, 0, 1, 1, 1)

    def test_star_trivial(self, T1):
        r = star_condition(T1)
        assert r.holds and r.minimal_sets == {}

    def test_star_u2(self, U2):
        r = star_condition(U2)
        assert r.holds
        f = r.minimal_sets[1]
        assert all(set(f) & set(r.through[(1, a)]) for a in U2.elements)

    def test_star_minimal(self):
        for S in enumerate_pomonoids(3):
            r = star_condition(S)
            for e, f in r.minimal_sets.items():
                smaller = len(f) - 1
                if smaller:
                    assert not any(all(set(g) & set(r.through[(e, a)]) for a in S.elements)
                                   for g in combinations(S.elements, smaller))
