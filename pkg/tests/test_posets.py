import pytest

from wilfkit import posets as P
from wilfkit import semigroups as NS


MCNUGGET_TIGHT = [(2, 2), (2, 3), (2, 5), (3, 4)]


class TestFromTightSet:
    def test_mcnugget_face_poset(self):
        poset = P.from_tight_set(6, MCNUGGET_TIGHT)
        assert isinstance(poset, P.KunzPoset)
        assert poset.minimal_elements == (2, 3)
        assert poset.maximal_elements == (1,)
        expected = {(2, 4), (2, 5), (3, 5), (2, 1), (5, 1), (3, 1), (4, 1)}
        assert set(poset.strict_pairs()) == expected

    def test_empty_tight_set_is_antichain(self):
        poset = P.from_tight_set(7, [])
        assert poset.minimal_elements == tuple(range(1, 7))
        assert poset.maximal_elements == tuple(range(1, 7))
        assert P.embedding_dimension(poset) == 7

    def test_generated_poset_from_partial_tight_set(self):
        # A non-saturated tight set still yields its generated poset; whether
        # it is the full tight set of a face is the caller's concern.
        poset = P.from_tight_set(8, [(1, 5), (3, 7)])
        assert isinstance(poset, P.KunzPoset)
        assert set(poset.strict_pairs()) == {(1, 6), (5, 6), (3, 2), (7, 2)}

    def test_invalid_pair(self):
        with pytest.raises(P.InvalidPair):
            P.from_tight_set(6, [(2, 4)])  # 2 + 4 = 6 is excluded
        with pytest.raises(P.InvalidPair):
            P.from_tight_set(6, [(0, 3)])

    def test_preorder_failure(self):
        # tight set of the C_6 point (1, 0, 1, 0, 1): contains a 1 <-> 3 cycle
        tight = [(1, 2), (1, 4), (2, 2), (2, 3), (2, 5), (3, 4), (4, 4), (4, 5)]
        res = P.from_tight_set(6, tight)
        assert isinstance(res, P.PreorderFailure)
        assert res.never_target == ()
        assert res.never_source == ()
        assert P.embedding_dimension(res) == 1
        assert P.poset_type(res) == 0
        maximal = res.condensation_maximal_residues
        assert maximal  # a finite preorder always has a sink class
        for f in maximal:
            # everything reachable from f reaches back
            for j in range(1, 6):
                if res.reach[f - 1] >> (j - 1) & 1:
                    assert res.reach[j - 1] >> (f - 1) & 1


class TestReadouts:
    def test_mcnugget_e_t(self):
        poset = P.from_tight_set(6, MCNUGGET_TIGHT)
        assert P.embedding_dimension(poset) == 3
        assert P.poset_type(poset) == 1

    def test_antichain_readout(self):
        poset = P.from_tight_set(9, [])
        assert P.embedding_dimension(poset) == 9
        assert P.poset_type(poset) == 8

    def test_m3_antichain(self):
        poset = P.from_tight_set(3, [])
        assert P.embedding_dimension(poset) == 3
        assert P.poset_type(poset) == 2


class TestKunzAxiom:
    def test_apery_poset_satisfies_axiom(self):
        S = NS.from_generators([6, 9, 20])
        assert P.check_kunz_axiom(NS.apery_poset(S))

    def test_antichain_satisfies_axiom(self):
        assert P.check_kunz_axiom(P.from_tight_set(5, []))

    def test_violating_relation(self):
        poset = P.KunzPoset.from_relations(5, [(1, 3)])
        # 1 <= 3 demands 2 = 3 - 1 <= 3, which is absent
        assert not P.check_kunz_axiom(poset)

    def test_axiom_holds_for_all_small_apery_posets(self):
        for S in NS.enumerate_by_genus(8):
            if S.multiplicity >= 3:
                assert P.check_kunz_axiom(NS.apery_poset(S))


class TestFromRelations:
    def test_antisymmetry_enforced(self):
        with pytest.raises(P.InvalidPair):
            P.KunzPoset.from_relations(5, [(1, 2), (2, 1)])

    def test_transitive_closure(self):
        poset = P.KunzPoset.from_relations(5, [(1, 2), (2, 3)])
        assert poset.leq(1, 3)
        assert poset.minimal_elements == (1, 4)
        assert poset.maximal_elements == (3, 4)
