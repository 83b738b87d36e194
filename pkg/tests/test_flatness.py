import pytest

from sposet.core import regular
from sposet.flatness import (
    IDEAL_VARIANTS,
    build_standard_quotient,
    check_flat_bounded,
    check_ideal_flatness,
    replacement_skeleton_search,
)
from sposet.conditions import check_condition
from sposet.core import validate_sposet
from sposet.library import chain, trivial_monoid, u2
from sposet.search import enumerate_pomonoids, enumerate_up_to
from sposet.tensor import Skeleton, eval_skeleton_formula, iter_skeletons


class TestStandardQuotient:
    def test_trivial_doubled(self, T1):
        sq = build_standard_quotient(T1, Skeleton((0, 0), (0, 0)))
        assert sq.free.size == 2
        assert eval_skeleton_formula("delta", sq.skeleton, sq.quotient.quotient, sq.marked)[0]

    def test_u2_single(self, U2):
        sq = build_standard_quotient(U2, Skeleton((0, 0)))
        assert sq.free.size == 4
        x, x2 = sq.marked
        assert sq.quotient.quotient.leq[x][x2]

    def test_free_order(self, U2):
        sq = build_standard_quotient(U2, Skeleton((1, 0)))
        F, n = sq.free, U2.size
        for p in F.elements:
            for q in F.elements:
                same = p // n == q // n
                assert F.leq[p][q] == (same and U2.leq[p % n][q % n])

    @pytest.mark.parametrize("doubled", [False, True])
    def test_quotients_valid(self, U2, doubled):
        for sk in iter_skeletons(U2, 4, doubled=doubled):
            sq = build_standard_quotient(U2, sk)
            assert validate_sposet(sq.quotient.quotient).ok
            assert validate_sposet(sq.sub).ok


class TestIdealFlatness:
    @pytest.mark.parametrize("variant", IDEAL_VARIANTS)
    def test_regular(self, variant):
        for S in enumerate_pomonoids(2):
            assert check_ideal_flatness(regular(S), variant).holds

    def test_t1_weak(self, T1):
        for B in enumerate_up_to(T1, 4):
            assert check_ideal_flatness(B, "WF").holds
            assert check_ideal_flatness(B, "WPF").holds

    def test_po_implies_plain(self):
        for S in enumerate_pomonoids(2):
            for B in enumerate_up_to(S, 3):
                v = {k: check_ideal_flatness(B, k).holds for k in IDEAL_VARIANTS}
                assert not v["WPF"] or v["WF"]
                assert not v["PWPF"] or v["PWF"]
                assert not v["WF"] or v["PWF"]
                assert not v["WPF"] or v["PWPF"]

    def test_decompositions_u2(self, U2):
        for B in enumerate_up_to(U2, 3):
            v = {k: check_ideal_flatness(B, k).holds for k in IDEAL_VARIANTS}
            assert v["WPF"] == (v["PWPF"] and check_condition(B, "W").holds)
            assert v["WF"] == (v["PWF"] and check_condition(B, "U_amended").holds)

    def test_verdict_description(self, T1):
        assert check_ideal_flatness(chain(T1), "WF").describe() == "true"

    def test_unknown_variant(self, U2):
        with pytest.raises(ValueError):
            check_ideal_flatness(regular(U2), "XF")


class TestBoundedFlatness:
    @pytest.mark.parametrize("po", [False, True])
    def test_regular_bounded_true(self, po):
        for S in [trivial_monoid()] + enumerate_pomonoids(2):
            v = check_flat_bounded(regular(S), po=po, max_len=6)
            assert v.holds and v.bound == 6
            assert v.describe() == "bounded-true(6)"

    def test_chain_over_t1(self, T1):
        assert check_flat_bounded(chain(T1), po=False, max_len=6).holds
        assert check_flat_bounded(chain(T1), po=True, max_len=6).holds

    def test_bound_too_small(self, U2):
        with pytest.raises(ValueError):
            check_flat_bounded(regular(U2), po=False, max_len=2)

    def test_failure_reports_skeleton(self):
        S = u2("trivial")
        fails = [B for B in enumerate_up_to(S, 3) if not check_flat_bounded(B, po=True, max_len=4).holds]
        assert fails
        sk, pair = check_flat_bounded(fails[0], po=True, max_len=4).failing_instance
        assert isinstance(sk, Skeleton) and not sk.doubled and len(pair) == 2

    def test_pw_never_fails_po_flat(self):
        for S in enumerate_pomonoids(2):
            for B in enumerate_up_to(S, 3):
                if check_condition(B, "Pw").holds:
                    assert check_flat_bounded(B, po=True, max_len=4).holds


class TestReplacementSkeletons:
    def test_empty_family(self, U2):
        assert replacement_skeleton_search(U2, Skeleton((0, 0), (0, 0)), [], 4) == []

    def test_trivial_monoid(self, T1):
        found = replacement_skeleton_search(T1, Skeleton((0, 0), (0, 0)), list(enumerate_up_to(T1, 2)), 4)
        assert all(set(sk.entries()) == {0} for sk in found)

    def test_regular_family(self, U2):
        for sk in list(iter_skeletons(U2, 4, doubled=True))[:6]:
            found = replacement_skeleton_search(U2, sk, [regular(U2)], 6)
            assert found
