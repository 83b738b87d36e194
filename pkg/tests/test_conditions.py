import pytest

from sposet.conditions import CONDITIONS, check_condition, condition_implications, witness_holds
from sposet.core import regular
from sposet.library import chain, point, trivial_monoid, u2
from sposet.search import enumerate_pomonoids, enumerate_up_to


def _family():
    for S in [trivial_monoid()] + enumerate_pomonoids(2):
        yield from enumerate_up_to(S, 3)


class TestExamples:
    def test_t1_everything_ep(self, T1):
        for B in enumerate_up_to(T1, 4):
            assert check_condition(B, "EP").holds

    def test_chain_over_t1(self, T1):
        B = chain(T1)
        v = check_condition(B, "P")
        assert not v.holds and v.counterexample == (0, 0, 0, 1)
        assert check_condition(B, "Pw").holds
        assert check_condition(B, "E").holds

    def test_groups_satisfy_pw(self, Z2):
        for B in enumerate_up_to(Z2, 4):
            assert check_condition(B, "Pw").holds

    @pytest.mark.parametrize("order", ["e<1", "1<e", "trivial"])
    def test_regular_act(self, order):
        sig = condition_implications(regular(u2(order)))
        for c in ("P", "E", "SF", "EP", "Pw", "W", "PWP", "PWPw"):
            assert sig[c], c

    def test_point_over_u2(self, U2):
        sig = condition_implications(point(U2))
        assert set(sig) == set(CONDITIONS)
        assert sig == condition_implications(point(U2))

    def test_unknown_condition(self, U2):
        with pytest.raises(ValueError):
            check_condition(regular(U2), "WP")


class TestImplications:
    def test_arrows(self):
        for B in _family():
            sig = condition_implications(B)
            assert not sig["P"] or sig["Pw"]
            assert not sig["P"] or sig["PWP"]
            assert not sig["Pw"] or sig["PWPw"]
            assert not sig["PWP"] or sig["PWPw"]
            assert sig["SF"] == (sig["P"] and sig["E"])
            assert not sig["E"] or sig["EP"]
            assert not sig["P"] or sig["EP"]

    def test_witness_tables_reverify(self):
        for B in _family():
            for c in CONDITIONS:
                if c == "SF":
                    continue
                v = check_condition(B, c)
                assert v.holds == (v.counterexample is None)
                for prem, w in v.witness_table.items():
                    assert witness_holds(B, c, prem, w), (c, prem, w)

    def test_witness_order_lexicographic(self, T1):
        v = check_condition(chain(T1, 3), "Pw")
        # (b'', u, u') scanned lexicographically: the least b'' comes first
        assert v.witness_table[(0, 0, 0, 2)] == (0, 0, 0)
