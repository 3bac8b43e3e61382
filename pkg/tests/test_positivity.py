import pytest
from hypothesis import given, settings, strategies as st

from knotcert.braid import BraidWord, cable_braid, kn_braid, kn_plus_braid
from knotcert.errors import BraidError
from knotcert.positivity import (
    genus_kn,
    ito_obstruction,
    nonsharpness_suite,
    sharpness,
    skein_decomposition_check,
    verify_topterm,
)


def positive_words(max_strands=5, max_len=12):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1), min_size=1, max_size=max_len
        ).map(lambda ls: BraidWord(n, tuple(ls)))
    )


class TestSharpness:
    def test_hopf_is_sharp(self):
        rep = sharpness(BraidWord(2, (1, 1)))
        assert rep.sharp
        assert rep.bound == 2 + 2 - 2
        assert rep.p0_degree == 2

    def test_trefoil_is_sharp(self):
        rep = sharpness(BraidWord(2, (1, 1, 1)))
        assert rep.sharp
        assert rep.bound == 2 + 3 - 1

    def test_cable2_is_not_sharp(self):
        rep = sharpness(cable_braid(2))
        assert not rep.sharp
        assert rep.p0_degree < rep.bound

    def test_knplus3_is_not_sharp(self):
        assert not sharpness(kn_plus_braid(3), node_budget=2_000_000).sharp

    def test_negative_letters_rejected(self):
        with pytest.raises(BraidError):
            sharpness(BraidWord(2, (1, -1)))

    @settings(max_examples=80, deadline=None)
    @given(positive_words())
    def test_degree_never_exceeds_bound(self, b):
        rep = sharpness(b, node_budget=500_000)
        assert rep.p0_degree <= rep.bound

    @settings(max_examples=30, deadline=None)
    @given(positive_words(max_strands=4, max_len=8), st.integers(0, 20))
    def test_doubling_a_letter_keeps_bound_valid(self, b, k):
        """Repeating a crossing raises the bound by at most what it raises
        the degree structure: the inequality survives local stabilization."""
        t = k % len(b.letters)
        doubled = BraidWord(b.strands, b.letters[: t + 1] + b.letters[t:])
        rep = sharpness(doubled, node_budget=500_000)
        assert rep.p0_degree <= rep.bound


class TestIto:
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_odd_torus_braids_pass(self, k):
        b = BraidWord(2, (1,) * (2 * k + 1))
        verdict = ito_obstruction(b, genus=k)
        assert verdict.positive
        assert verdict.witness is None
        assert not verdict.genus_alexander_mismatch

    def test_k2_fails_with_witness(self):
        verdict = ito_obstruction(kn_braid(2), genus=6)
        assert not verdict.positive
        assert verdict.witness == (3, 0, -1)
        assert not verdict.genus_alexander_mismatch

    def test_k2_z0_top_term(self):
        verdict = ito_obstruction(kn_braid(2), genus=6)
        z0 = {a: c for a, z, c in verdict.tilde_poly.to_triples() if z == 0}
        assert max(z0) == 3 and z0[3] == -1

    def test_wrong_genus_flags_mismatch(self):
        verdict = ito_obstruction(BraidWord(2, (1, 1, 1)), genus=2)
        assert verdict.genus_alexander_mismatch


class TestGenusFormula:
    def test_values(self):
        assert genus_kn(2) == 6
        assert genus_kn(4) == 23
        assert genus_kn(6) == 52

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_odd_rejected(self, n):
        with pytest.raises(ValueError):
            genus_kn(n)


class TestFamilyClaims:
    def test_topterm_n2(self):
        rep = verify_topterm(2)
        assert rep.ok
        assert (rep.exponent, rep.coefficient) == (18, 1)

    def test_topterm_n3(self):
        rep = verify_topterm(3)
        assert rep.ok
        assert (rep.exponent, rep.coefficient) == (36, -1)

    def test_topterm_small_n_rejected(self):
        with pytest.raises(ValueError):
            verify_topterm(1)

    @pytest.mark.stretch
    def test_topterm_n5(self):
        rep = verify_topterm(5, node_budget=50_000_000)
        assert rep.ok
        assert (rep.exponent, rep.coefficient) == (90, -1)

    @pytest.mark.stretch
    def test_topterm_n6(self):
        rep = verify_topterm(6, node_budget=200_000_000)
        assert rep.ok
        assert (rep.exponent, rep.coefficient) == (126, 1)

    def test_decomposition_n2(self):
        rep = skein_decomposition_check(2)
        assert rep.holds
        assert rep.lhs == rep.rhs

    def test_decomposition_n3(self):
        assert skein_decomposition_check(3).holds

    def test_suite_through_n3(self):
        entries = nonsharpness_suite(3)
        by_label = {e.label: e for e in entries}
        assert by_label["trefoil control"].ok
        assert by_label["cable k=2"].ok
        assert by_label["cable k=3"].ok
        assert by_label["kn_plus n=3"].ok
        assert all(e.ok for e in entries)
