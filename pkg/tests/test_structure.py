from sposet.core import disjoint_union, principal_left, regular, relabel, with_extra_order
from sposet.library import chain
from sposet.search import enumerate_pomonoids, enumerate_up_to
from sposet.structure import decompose, is_free, is_projective


class TestDecompose:
    def test_regular(self, U2):
        d = decompose(regular(U2))
        assert len(d.components) == 1 and d.generators[0].idempotent == 0

    def test_s_plus_se(self, U2):
        d = decompose(disjoint_union(regular(U2), principal_left(U2, 1)))
        assert [g.idempotent for g in d.generators] == [0, 1]

    def test_chain_has_no_generator(self, T1):
        d = decompose(chain(T1))
        assert len(d.components) == 1 and d.generators == (None,)

    def test_components_closed_and_incomparable(self, U2):
        for B in enumerate_up_to(U2, 4):
            comps = decompose(B).components
            assert sorted(x for c in comps for x in c) == list(B.elements)
            for c in comps:
                assert B.is_closed(c)
                for c2 in comps:
                    if c2 is not c:
                        assert not any(B.le(x, y) for x in c for y in c2)

    def test_idempotent_on_component(self, U2):
        for B in enumerate_up_to(U2, 3):
            d = decompose(B)
            if len(d.components) == 1:
                assert decompose(B).components == d.components


class TestRecognition:
    def test_free_unions(self):
        for S in enumerate_pomonoids(2):
            for k in (1, 2, 3):
                A = disjoint_union(*[regular(S)] * k)
                assert is_free(A) == (True, k)
                assert is_projective(A)[0]

    def test_projective_unions(self):
        for S in enumerate_pomonoids(2) + enumerate_pomonoids(3)[:10]:
            parts = [principal_left(S, e) for e in S.idempotents]
            assert all(is_projective(P)[0] for P in parts)
            assert is_projective(disjoint_union(*parts))[0]

    def test_se_projective_not_free(self, U2):
        Se = principal_left(U2, 1)
        assert is_projective(Se)[0]
        assert not is_free(Se)[0]

    def test_chain_not_projective(self, T1):
        assert not is_projective(chain(T1))[0]

    def test_cross_order_breaks_projectivity(self, U2):
        A = disjoint_union(regular(U2), principal_left(U2, 1))
        assert not is_projective(with_extra_order(A, [(2, 0)]))[0]

    def test_free_implies_projective(self):
        for S in enumerate_pomonoids(2):
            for B in enumerate_up_to(S, 4):
                if is_free(B)[0]:
                    assert is_projective(B)[0]

    def test_invariant_under_relabelling(self, U2):
        A = disjoint_union(regular(U2), principal_left(U2, 1))
        B = relabel(A, (2, 0, 1))
        assert is_projective(B)[0] and not is_free(B)[0]
